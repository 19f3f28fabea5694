//! Hand-skeleton data model: named joints, pose labels, timestamped frames,
//! and ordered traces.
//!
//! The joint set is deliberately minimal: nine named joints cover every
//! recognizer. Richer skeletons are expected to be down-sampled at ingestion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::geom::Vec3;

/// Which hand a stream or recognizer refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hand {
    Left,
    Right,
}

impl Hand {
    pub fn other(self) -> Hand {
        match self {
            Hand::Left => Hand::Right,
            Hand::Right => Hand::Left,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Hand::Left => "left",
            Hand::Right => "right",
        }
    }
}

/// The nine tracked joints. Ordering is the canonical serialization order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JointName {
    Wrist,
    Palm,
    ThumbTip,
    IndexTip,
    MiddleTip,
    RingTip,
    PinkyTip,
    IndexKnuckle,
    MiddleKnuckle,
}

impl JointName {
    pub const ALL: [JointName; 9] = [
        JointName::Wrist,
        JointName::Palm,
        JointName::ThumbTip,
        JointName::IndexTip,
        JointName::MiddleTip,
        JointName::RingTip,
        JointName::PinkyTip,
        JointName::IndexKnuckle,
        JointName::MiddleKnuckle,
    ];

    /// The five fingertips, thumb first.
    pub const FINGERTIPS: [JointName; 5] = [
        JointName::ThumbTip,
        JointName::IndexTip,
        JointName::MiddleTip,
        JointName::RingTip,
        JointName::PinkyTip,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            JointName::Wrist => "wrist",
            JointName::Palm => "palm",
            JointName::ThumbTip => "thumb_tip",
            JointName::IndexTip => "index_tip",
            JointName::MiddleTip => "middle_tip",
            JointName::RingTip => "ring_tip",
            JointName::PinkyTip => "pinky_tip",
            JointName::IndexKnuckle => "index_knuckle",
            JointName::MiddleKnuckle => "middle_knuckle",
        }
    }

    pub fn from_str(s: &str) -> Option<JointName> {
        JointName::ALL.into_iter().find(|j| j.as_str() == s)
    }
}

impl fmt::Display for JointName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Pose labels a hand may carry in a frame. A hand carries zero or more;
/// `None` is accepted on the wire but never produced by the classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PoseLabel {
    ThumbsUp,
    Pinch,
    Fist,
    Stop,
    IndexPoint,
    None,
}

impl PoseLabel {
    pub const ALL: [PoseLabel; 6] = [
        PoseLabel::ThumbsUp,
        PoseLabel::Pinch,
        PoseLabel::Fist,
        PoseLabel::Stop,
        PoseLabel::IndexPoint,
        PoseLabel::None,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PoseLabel::ThumbsUp => "ThumbsUp",
            PoseLabel::Pinch => "Pinch",
            PoseLabel::Fist => "Fist",
            PoseLabel::Stop => "Stop",
            PoseLabel::IndexPoint => "IndexPoint",
            PoseLabel::None => "None",
        }
    }

    pub fn from_str(s: &str) -> Option<PoseLabel> {
        PoseLabel::ALL.into_iter().find(|p| p.as_str() == s)
    }
}

impl fmt::Display for PoseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A required joint was absent from a hand.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("missing joint: {0}")]
pub struct MissingJointError(pub JointName);

#[derive(Debug, Error, PartialEq)]
pub enum FrameError {
    #[error("hand must include at least wrist and palm (missing {0})")]
    IncompleteHand(JointName),
    #[error("joint {0} has a non-finite coordinate")]
    NonFiniteJoint(JointName),
    #[error("frame timestamp must be finite and >= 0, got {0}")]
    BadTimestamp(f64),
    #[error("frame must contain at least one hand")]
    NoHands,
    #[error("timestamps must be strictly increasing ({prev} then {next})")]
    NonMonotone { prev: f64, next: f64 },
}

/// Positions for one hand's tracked joints.
///
/// Always contains at least wrist and palm; every stored joint is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct HandJoints {
    joints: BTreeMap<JointName, Vec3>,
}

impl HandJoints {
    pub fn new(joints: BTreeMap<JointName, Vec3>) -> Result<Self, FrameError> {
        for required in [JointName::Wrist, JointName::Palm] {
            if !joints.contains_key(&required) {
                return Err(FrameError::IncompleteHand(required));
            }
        }
        for (name, pos) in &joints {
            if !pos.is_finite() {
                return Err(FrameError::NonFiniteJoint(*name));
            }
        }
        Ok(Self { joints })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (JointName, Vec3)>) -> Result<Self, FrameError> {
        Self::new(pairs.into_iter().collect())
    }

    pub fn get(&self, name: JointName) -> Option<Vec3> {
        self.joints.get(&name).copied()
    }

    /// Like [`get`](Self::get) but reports which joint was absent.
    pub fn require(&self, name: JointName) -> Result<Vec3, MissingJointError> {
        self.get(name).ok_or(MissingJointError(name))
    }

    pub fn iter(&self) -> impl Iterator<Item = (JointName, Vec3)> + '_ {
        self.joints.iter().map(|(n, p)| (*n, *p))
    }

    pub fn len(&self) -> usize {
        self.joints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.joints.is_empty()
    }
}

/// Sum of the five fingertip-to-palm distances, meters.
pub fn palm_distance_sum(hand: &HandJoints) -> Result<f64, MissingJointError> {
    let palm = hand.require(JointName::Palm)?;
    let mut sum = 0.0;
    for tip in JointName::FINGERTIPS {
        sum += hand.require(tip)?.distance(palm);
    }
    Ok(sum)
}

/// One timestamped sample of the tracked hands.
#[derive(Debug, Clone, PartialEq)]
pub struct HandFrame {
    /// Seconds; strictly increasing within a trace.
    pub t: f64,
    pub left: Option<HandJoints>,
    pub right: Option<HandJoints>,
    pub left_poses: BTreeSet<PoseLabel>,
    pub right_poses: BTreeSet<PoseLabel>,
}

impl HandFrame {
    pub fn new(t: f64, left: Option<HandJoints>, right: Option<HandJoints>) -> Result<Self, FrameError> {
        if !t.is_finite() || t < 0.0 {
            return Err(FrameError::BadTimestamp(t));
        }
        if left.is_none() && right.is_none() {
            return Err(FrameError::NoHands);
        }
        Ok(Self {
            t,
            left,
            right,
            left_poses: BTreeSet::new(),
            right_poses: BTreeSet::new(),
        })
    }

    pub fn hand(&self, which: Hand) -> Option<&HandJoints> {
        match which {
            Hand::Left => self.left.as_ref(),
            Hand::Right => self.right.as_ref(),
        }
    }

    pub fn poses(&self, which: Hand) -> &BTreeSet<PoseLabel> {
        match which {
            Hand::Left => &self.left_poses,
            Hand::Right => &self.right_poses,
        }
    }

    pub fn poses_mut(&mut self, which: Hand) -> &mut BTreeSet<PoseLabel> {
        match which {
            Hand::Left => &mut self.left_poses,
            Hand::Right => &mut self.right_poses,
        }
    }
}

/// Nominal frame rate assumed when a trace carries no other timing hint.
pub const DEFAULT_RATE: f64 = 60.0;

/// An ordered sequence of hand frames with strictly increasing timestamps.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    frames: Vec<HandFrame>,
    pub nominal_rate: f64,
}

impl Trace {
    pub fn new(frames: Vec<HandFrame>) -> Result<Self, FrameError> {
        for pair in frames.windows(2) {
            if pair[1].t <= pair[0].t {
                return Err(FrameError::NonMonotone { prev: pair[0].t, next: pair[1].t });
            }
        }
        Ok(Self { frames, nominal_rate: DEFAULT_RATE })
    }

    pub fn frames(&self) -> &[HandFrame] {
        &self.frames
    }

    pub fn frames_mut(&mut self) -> &mut [HandFrame] {
        &mut self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Appends a frame, enforcing timestamp monotonicity.
    pub fn push(&mut self, frame: HandFrame) -> Result<(), FrameError> {
        if let Some(last) = self.frames.last() {
            if frame.t <= last.t {
                return Err(FrameError::NonMonotone { prev: last.t, next: frame.t });
            }
        }
        self.frames.push(frame);
        Ok(())
    }
}
