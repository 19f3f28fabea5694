//! Geometric pose classification for traces that arrive without
//! pre-annotated labels.
//!
//! Pure distance heuristics on the minimal joint set: a finger counts as
//! curled when its tip sits within `curl_max` of the palm and extended
//! beyond `extend_min`; in between it is neither. No joint angles, no
//! learned models.

use std::collections::BTreeSet;

use crate::hand::{HandJoints, JointName, MissingJointError, PoseLabel};

/// Distance thresholds, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoseThresholds {
    pub curl_max: f64,
    pub extend_min: f64,
    pub pinch_max: f64,
}

impl PoseThresholds {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.curl_max > 0.0 && self.extend_min > 0.0 && self.pinch_max > 0.0) {
            return Err("pose thresholds must be positive".into());
        }
        if self.curl_max >= self.extend_min {
            return Err(format!(
                "pose.curl_max ({}) must be below pose.extend_min ({})",
                self.curl_max, self.extend_min
            ));
        }
        Ok(())
    }
}

impl Default for PoseThresholds {
    fn default() -> Self {
        Self { curl_max: 0.05, extend_min: 0.09, pinch_max: 0.02 }
    }
}

/// Labels `hand` with every pose whose rule matches. Requires the palm,
/// wrist, and all five fingertips.
pub fn classify(hand: &HandJoints, th: &PoseThresholds) -> Result<BTreeSet<PoseLabel>, MissingJointError> {
    hand.require(JointName::Wrist)?;
    let palm = hand.require(JointName::Palm)?;

    let mut curled = [false; 5];
    let mut extended = [false; 5];
    for (i, tip) in JointName::FINGERTIPS.into_iter().enumerate() {
        let d = hand.require(tip)?.distance(palm);
        curled[i] = d <= th.curl_max;
        extended[i] = d >= th.extend_min;
    }
    let [thumb_curled, index_curled, middle_curled, ring_curled, pinky_curled] = curled;
    let [thumb_ext, index_ext, ..] = extended;
    let others_curled = index_curled && middle_curled && ring_curled && pinky_curled;

    let mut labels = BTreeSet::new();
    if thumb_ext && others_curled {
        labels.insert(PoseLabel::ThumbsUp);
    }
    if thumb_curled && others_curled {
        labels.insert(PoseLabel::Fist);
    }
    if extended.iter().all(|&e| e) {
        labels.insert(PoseLabel::Stop);
    }
    if index_ext && middle_curled && ring_curled && pinky_curled {
        labels.insert(PoseLabel::IndexPoint);
    }
    let thumb = hand.require(JointName::ThumbTip)?;
    let index = hand.require(JointName::IndexTip)?;
    if thumb.distance(index) <= th.pinch_max {
        labels.insert(PoseLabel::Pinch);
    }
    Ok(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec3;
    use std::collections::BTreeMap;

    /// Builds a hand with each fingertip at the given distance from the palm,
    /// fanned out in distinct directions.
    fn hand_with_tip_distances(d: [f64; 5]) -> HandJoints {
        let palm = Vec3::new(0.1, 0.9, 0.4);
        let dirs = [
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.8, 0.6, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(-0.6, 0.8, 0.0),
            Vec3::new(-0.8, 0.6, 0.0),
        ];
        let mut joints = BTreeMap::new();
        joints.insert(JointName::Wrist, palm + Vec3::new(0.0, -0.08, 0.0));
        joints.insert(JointName::Palm, palm);
        for ((name, dir), dist) in JointName::FINGERTIPS.into_iter().zip(dirs).zip(d) {
            joints.insert(name, palm + dir.scale(dist));
        }
        HandJoints::new(joints).unwrap()
    }

    #[test]
    fn all_extended_is_stop() {
        let h = hand_with_tip_distances([0.10; 5]);
        let labels = classify(&h, &PoseThresholds::default()).unwrap();
        assert_eq!(labels, BTreeSet::from([PoseLabel::Stop]));
    }

    #[test]
    fn all_curled_is_fist() {
        let h = hand_with_tip_distances([0.03; 5]);
        let labels = classify(&h, &PoseThresholds::default()).unwrap();
        assert_eq!(labels, BTreeSet::from([PoseLabel::Fist]));
    }

    #[test]
    fn extended_thumb_over_curled_fingers_is_thumbs_up() {
        let h = hand_with_tip_distances([0.10, 0.03, 0.03, 0.03, 0.03]);
        let labels = classify(&h, &PoseThresholds::default()).unwrap();
        assert_eq!(labels, BTreeSet::from([PoseLabel::ThumbsUp]));
    }

    #[test]
    fn index_point() {
        let h = hand_with_tip_distances([0.03, 0.10, 0.03, 0.03, 0.03]);
        let labels = classify(&h, &PoseThresholds::default()).unwrap();
        assert!(labels.contains(&PoseLabel::IndexPoint));
        assert!(!labels.contains(&PoseLabel::ThumbsUp));
    }

    #[test]
    fn pinch_from_touching_tips() {
        let palm = Vec3::new(0.0, 1.0, 0.3);
        let mut joints = BTreeMap::new();
        joints.insert(JointName::Wrist, palm + Vec3::new(0.0, -0.08, 0.0));
        joints.insert(JointName::Palm, palm);
        joints.insert(JointName::ThumbTip, palm + Vec3::new(0.06, 0.0, 0.0));
        joints.insert(JointName::IndexTip, palm + Vec3::new(0.06, 0.015, 0.0));
        joints.insert(JointName::MiddleTip, palm + Vec3::new(0.0, 0.10, 0.0));
        joints.insert(JointName::RingTip, palm + Vec3::new(-0.02, 0.10, 0.0));
        joints.insert(JointName::PinkyTip, palm + Vec3::new(-0.04, 0.09, 0.0));
        let h = HandJoints::new(joints).unwrap();
        let labels = classify(&h, &PoseThresholds::default()).unwrap();
        assert!(labels.contains(&PoseLabel::Pinch));
    }

    #[test]
    fn between_thresholds_is_no_label() {
        // 7 cm: neither curled (<= 5 cm) nor extended (>= 9 cm).
        let h = hand_with_tip_distances([0.07; 5]);
        let labels = classify(&h, &PoseThresholds::default()).unwrap();
        assert!(labels.is_empty());
    }

    #[test]
    fn missing_tip_is_reported() {
        let palm = Vec3::ZERO;
        let joints: BTreeMap<_, _> = [
            (JointName::Wrist, palm),
            (JointName::Palm, palm + Vec3::new(0.0, 0.02, 0.0)),
        ]
        .into_iter()
        .collect();
        let h = HandJoints::new(joints).unwrap();
        assert_eq!(
            classify(&h, &PoseThresholds::default()).unwrap_err(),
            MissingJointError(JointName::ThumbTip)
        );
    }

    #[test]
    fn fist_and_stop_never_co_occur() {
        for d in [0.02, 0.05, 0.07, 0.09, 0.12] {
            let labels = classify(&hand_with_tip_distances([d; 5]), &PoseThresholds::default()).unwrap();
            assert!(!(labels.contains(&PoseLabel::Fist) && labels.contains(&PoseLabel::Stop)));
            assert!(!(labels.contains(&PoseLabel::Fist) && labels.contains(&PoseLabel::ThumbsUp)));
        }
    }
}
