//! The five interaction recognizers: binary, linear, rotational, nonlinear,
//! and free.
//!
//! Every recognizer is a single-owner state machine fed timestamped frames
//! in order. Each starts in a setup phase where anchors (points, a grip
//! direction, a baseline) are captured from the tracked hand; each capture
//! is confirmed by a rising edge of a thumbs-up on the *other* hand, so a
//! held gesture cannot confirm two anchors. Once every anchor is captured
//! the recognizer is ready and per-frame stepping produces values and
//! events.
//!
//! Stepping is deterministic: identical configuration and frames yield an
//! identical event stream on every run.

mod binary;
mod free;
mod linear;
mod nonlinear;
mod rotational;

pub use binary::{BinaryRecognizer, BinaryState};
pub use free::FreeRecognizer;
pub use linear::LinearRecognizer;
pub use nonlinear::NonlinearRecognizer;
pub use rotational::RotationalRecognizer;

use thiserror::Error;

use crate::config::EngineConfig;
use crate::geom::{GeomError, Vec3};
use crate::hand::{Hand, HandFrame, MissingJointError, PoseLabel, Trace, DEFAULT_RATE};
use crate::pose::{classify, PoseThresholds};
use crate::smoothing::SmoothingError;
use crate::trace_io::fmt_f64;

/// Anchor pairs closer than this are rejected as degenerate.
pub const ANCHOR_EPS: f64 = 1e-4;

/// Minimum output change that produces a `ValueChanged` event.
pub const VALUE_EPS: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum RecognizerError {
    #[error(transparent)]
    MissingJoint(#[from] MissingJointError),
    #[error("tracked hand ({}) not present in frame", .0.as_str())]
    MissingHand(Hand),
    #[error("setup anchors are too close together")]
    DegenerateAnchors,
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Smoothing(#[from] SmoothingError),
}

/// Lifecycle phase. Setup advances only on confirmed anchor captures and is
/// never re-entered except through an explicit reset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Setup { captured: u8 },
    Ready,
    Engaged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecognizerKind {
    Binary,
    Linear,
    Rotational,
    Nonlinear,
    Free,
}

impl RecognizerKind {
    pub const ALL: [RecognizerKind; 5] = [
        RecognizerKind::Binary,
        RecognizerKind::Linear,
        RecognizerKind::Rotational,
        RecognizerKind::Nonlinear,
        RecognizerKind::Free,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RecognizerKind::Binary => "binary",
            RecognizerKind::Linear => "linear",
            RecognizerKind::Rotational => "rotational",
            RecognizerKind::Nonlinear => "nonlinear",
            RecognizerKind::Free => "free",
        }
    }

    pub fn from_str(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

/// A recognizer output: scalar for binary/linear/rotational/nonlinear,
/// a tracked point for free.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Scalar(f64),
    Point(Vec3),
}

impl Value {
    /// Distance between two outputs of the same shape.
    pub fn delta(self, other: Value) -> f64 {
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => (a - b).abs(),
            (Value::Point(a), Value::Point(b)) => a.distance(b),
            _ => f64::INFINITY,
        }
    }

    pub fn as_scalar(self) -> Option<f64> {
        match self {
            Value::Scalar(v) => Some(v),
            Value::Point(_) => None,
        }
    }

    pub fn as_point(self) -> Option<Vec3> {
        match self {
            Value::Point(p) => Some(p),
            Value::Scalar(_) => None,
        }
    }

    /// JSON fragment: a number, or `[x,y,z]` for points.
    pub fn to_json(self) -> String {
        match self {
            Value::Scalar(v) => fmt_f64(v),
            Value::Point(p) => {
                format!("[{},{},{}]", fmt_f64(p.x), fmt_f64(p.y), fmt_f64(p.z))
            }
        }
    }
}

/// Events emitted by recognizers. At most one per recognizer per frame;
/// phase transitions take precedence over value reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RecognizerEvent {
    SetupConfirmed { anchor: u8 },
    Activated,
    Deactivated,
    Engaged,
    Disengaged,
    ValueChanged(Value),
}

impl RecognizerEvent {
    pub fn name(&self) -> &'static str {
        match self {
            RecognizerEvent::SetupConfirmed { .. } => "setup_confirmed",
            RecognizerEvent::Activated => "activated",
            RecognizerEvent::Deactivated => "deactivated",
            RecognizerEvent::Engaged => "engaged",
            RecognizerEvent::Disengaged => "disengaged",
            RecognizerEvent::ValueChanged(_) => "value_changed",
        }
    }
}

/// Result of feeding one frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepResult {
    pub value: Value,
    pub event: Option<RecognizerEvent>,
}

/// Common interface over the five recognizers.
pub trait Recognizer {
    fn kind(&self) -> RecognizerKind;
    fn phase(&self) -> Phase;
    /// Current output; defined from construction (zero / origin before setup).
    fn value(&self) -> Value;
    /// Consumes one frame. Frames must arrive in strictly increasing
    /// timestamp order.
    fn step(&mut self, frame: &HandFrame) -> Result<StepResult, RecognizerError>;
    /// Returns to the setup phase, discarding anchors and filter state.
    fn reset(&mut self);
}

/// Builds a recognizer of the given kind from an engine configuration.
pub fn build_recognizer(kind: RecognizerKind, cfg: &EngineConfig) -> Box<dyn Recognizer> {
    match kind {
        RecognizerKind::Binary => Box::new(BinaryRecognizer::new(cfg.binary)),
        RecognizerKind::Linear => Box::new(LinearRecognizer::new(cfg.linear, cfg.aema)),
        RecognizerKind::Rotational => {
            Box::new(RotationalRecognizer::new(cfg.rotational, cfg.gain, cfg.aema))
        }
        RecognizerKind::Nonlinear => Box::new(NonlinearRecognizer::new(cfg.nonlinear, cfg.aema)),
        RecognizerKind::Free => Box::new(FreeRecognizer::new(cfg.free)),
    }
}

// ── shared step machinery ──────────────────────────────────

/// Rising-edge detector for the setup confirmation gesture on the
/// non-tracked hand.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct ConfirmEdge {
    prev_present: bool,
}

impl ConfirmEdge {
    /// True exactly on frames where the confirmation label appears after
    /// being absent.
    pub(crate) fn rising(&mut self, frame: &HandFrame, confirm_hand: Hand) -> bool {
        let present = frame.poses(confirm_hand).contains(&PoseLabel::ThumbsUp);
        let rising = present && !self.prev_present;
        self.prev_present = present;
        rising
    }

    pub(crate) fn reset(&mut self) {
        self.prev_present = false;
    }
}

/// Derives per-frame dt from timestamps; the first frame falls back to the
/// nominal 60 fps interval.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct FrameClock {
    prev_t: Option<f64>,
}

impl FrameClock {
    pub(crate) fn tick(&mut self, t: f64) -> f64 {
        let dt = match self.prev_t {
            Some(prev) => t - prev,
            None => 1.0 / DEFAULT_RATE,
        };
        self.prev_t = Some(t);
        dt
    }

    pub(crate) fn prev(&self) -> Option<f64> {
        self.prev_t
    }

    pub(crate) fn reset(&mut self) {
        self.prev_t = None;
    }
}

/// Tracks the last value surfaced in any event so `ValueChanged` fires on
/// accumulated drift beyond [`VALUE_EPS`], not only on per-frame jumps.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct ValueReporter {
    last: Option<Value>,
}

impl ValueReporter {
    /// Call when a phase event already carries the value.
    pub(crate) fn mark(&mut self, v: Value) {
        self.last = Some(v);
    }

    /// Emits `ValueChanged` when `v` drifted beyond the reporting epsilon.
    pub(crate) fn changed(&mut self, v: Value) -> Option<RecognizerEvent> {
        let moved = match self.last {
            Some(prev) => v.delta(prev) > VALUE_EPS,
            None => false,
        };
        if moved {
            self.last = Some(v);
            Some(RecognizerEvent::ValueChanged(v))
        } else {
            None
        }
    }

    pub(crate) fn reset(&mut self) {
        self.last = None;
    }
}

// ── replay over a whole trace ──────────────────────────────

/// One logged event with the output value at that frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogEntry {
    pub t: f64,
    pub kind: RecognizerKind,
    pub event: RecognizerEvent,
    pub value: Value,
}

impl LogEntry {
    /// Canonical line-record form:
    /// `{"t":…,"recognizer":…,"event":…,"value":…}`.
    pub fn to_json_line(&self) -> String {
        let value = match self.event {
            RecognizerEvent::SetupConfirmed { anchor } => anchor.to_string(),
            RecognizerEvent::ValueChanged(v) => v.to_json(),
            _ => self.value.to_json(),
        };
        format!(
            "{{\"t\":{},\"recognizer\":\"{}\",\"event\":\"{}\",\"value\":{}}}",
            fmt_f64(self.t),
            self.kind.as_str(),
            self.event.name(),
            value
        )
    }
}

#[derive(Debug, Error)]
#[error("frame {frame} (t={t}): {source}")]
pub struct ReplayError {
    pub frame: usize,
    pub t: f64,
    #[source]
    pub source: RecognizerError,
}

/// Feeds an entire trace through a recognizer, collecting the event log.
///
/// When `classify_with` is set, hands whose pose sets are empty are labeled
/// by the geometric classifier first (hands missing classifier joints are
/// left unlabeled rather than failing the replay).
pub fn run_trace(
    rec: &mut dyn Recognizer,
    trace: &Trace,
    classify_with: Option<&PoseThresholds>,
) -> Result<Vec<LogEntry>, ReplayError> {
    let mut log = Vec::new();
    for (i, frame) in trace.frames().iter().enumerate() {
        let step = if let Some(th) = classify_with {
            let mut labeled = frame.clone();
            for hand in [Hand::Left, Hand::Right] {
                if labeled.poses(hand).is_empty() {
                    if let Some(joints) = labeled.hand(hand) {
                        if let Ok(labels) = classify(joints, th) {
                            *labeled.poses_mut(hand) = labels;
                        }
                    }
                }
            }
            rec.step(&labeled)
        } else {
            rec.step(frame)
        }
        .map_err(|source| ReplayError { frame: i, t: frame.t, source })?;
        if let Some(event) = step.event {
            log.push(LogEntry { t: frame.t, kind: rec.kind(), event, value: step.value });
        }
    }
    Ok(log)
}
