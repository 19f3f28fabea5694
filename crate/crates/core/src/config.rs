//! Engine configuration: a flat key-value text file, one `key = value` per
//! line, dotted section prefixes, `#` comments.
//!
//! Every threshold and duration the recognizers use can be overridden here;
//! unset keys keep their defaults.

use std::fmt;

use thiserror::Error;

use crate::hand::{Hand, JointName, PoseLabel};
use crate::pose::PoseThresholds;
use crate::smoothing::{AemaConfig, GainConfig};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected \"key = value\", got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key \"{key}\"")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: invalid value for {key}: {msg}")]
    InvalidValue { line: usize, key: String, msg: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// How a binary recognizer decides its state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryMode {
    /// Two calibrated anchor points with a distance threshold.
    ObjectAnchored,
    /// Active while the tracked hand carries a pose label.
    GestureLabeled(PoseLabel),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryConfig {
    pub mode: BinaryMode,
    pub threshold: f64,
    pub tracked_joint: JointName,
    pub tracked_hand: Hand,
}

impl Default for BinaryConfig {
    fn default() -> Self {
        Self {
            mode: BinaryMode::ObjectAnchored,
            threshold: 0.01,
            tracked_joint: JointName::IndexTip,
            tracked_hand: Hand::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearConfig {
    pub line_threshold: f64,
    pub continuous: bool,
    pub tracked_joint: JointName,
    pub tracked_hand: Hand,
}

impl Default for LinearConfig {
    fn default() -> Self {
        Self {
            line_threshold: 0.03,
            continuous: true,
            tracked_joint: JointName::IndexTip,
            tracked_hand: Hand::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationalConfig {
    pub engage_radius: f64,
    pub tracked_hand: Hand,
}

impl Default for RotationalConfig {
    fn default() -> Self {
        Self { engage_radius: 0.05, tracked_hand: Hand::Right }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearConfig {
    pub tracked_hand: Hand,
}

impl Default for NonlinearConfig {
    fn default() -> Self {
        Self { tracked_hand: Hand::Right }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeConfig {
    pub tolerance: f64,
    pub dwell: f64,
    pub stationary_eps: f64,
    pub contact_joints: (JointName, JointName),
    pub tracked_hand: Hand,
}

impl Default for FreeConfig {
    fn default() -> Self {
        Self {
            tolerance: 0.02,
            dwell: 3.0,
            stationary_eps: 0.005,
            contact_joints: (JointName::IndexTip, JointName::ThumbTip),
            tracked_hand: Hand::Right,
        }
    }
}

/// The full engine configuration.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EngineConfig {
    pub binary: BinaryConfig,
    pub linear: LinearConfig,
    pub rotational: RotationalConfig,
    pub nonlinear: NonlinearConfig,
    pub free: FreeConfig,
    pub aema: AemaConfig,
    pub gain: GainConfig,
    pub pose: PoseThresholds,
}

impl EngineConfig {
    /// Identity-filter variant: AEMA alpha pinned to 1 and rotation gain
    /// pinned to 1, so outputs equal the raw geometric quantities.
    pub fn with_identity_filters(mut self) -> Self {
        self.aema = AemaConfig::IDENTITY;
        self.gain = GainConfig::IDENTITY;
        self
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = EngineConfig::default();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw_line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line,
                text: trimmed.to_string(),
            })?;
            cfg.apply(line, key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn apply(&mut self, line: usize, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = |msg: &dyn fmt::Display| ConfigError::InvalidValue {
            line,
            key: key.to_string(),
            msg: msg.to_string(),
        };
        let as_f64 = |v: &str| v.parse::<f64>().map_err(|e| bad(&e));
        let as_bool = |v: &str| v.parse::<bool>().map_err(|e| bad(&e));
        let as_hand = |v: &str| match v {
            "left" => Ok(Hand::Left),
            "right" => Ok(Hand::Right),
            other => Err(bad(&format!("expected left|right, got {other:?}"))),
        };
        let as_joint =
            |v: &str| JointName::from_str(v).ok_or_else(|| bad(&format!("unknown joint {v:?}")));
        let as_label =
            |v: &str| PoseLabel::from_str(v).ok_or_else(|| bad(&format!("unknown pose {v:?}")));

        match key {
            "binary.mode" => {
                self.binary.mode = match value {
                    "object_anchored" => BinaryMode::ObjectAnchored,
                    "gesture" => BinaryMode::GestureLabeled(PoseLabel::Pinch),
                    other => return Err(bad(&format!("expected object_anchored|gesture, got {other:?}"))),
                }
            }
            // Setting a label implies gesture mode, regardless of key order.
            "binary.label" => self.binary.mode = BinaryMode::GestureLabeled(as_label(value)?),
            "binary.threshold" => self.binary.threshold = as_f64(value)?,
            "binary.tracked_joint" => self.binary.tracked_joint = as_joint(value)?,
            "binary.tracked_hand" => self.binary.tracked_hand = as_hand(value)?,
            "linear.line_threshold" => self.linear.line_threshold = as_f64(value)?,
            "linear.continuous" => self.linear.continuous = as_bool(value)?,
            "linear.tracked_joint" => self.linear.tracked_joint = as_joint(value)?,
            "linear.tracked_hand" => self.linear.tracked_hand = as_hand(value)?,
            "rotational.engage_radius" => self.rotational.engage_radius = as_f64(value)?,
            "rotational.tracked_hand" => self.rotational.tracked_hand = as_hand(value)?,
            "nonlinear.tracked_hand" => self.nonlinear.tracked_hand = as_hand(value)?,
            "free.tolerance" => self.free.tolerance = as_f64(value)?,
            "free.dwell" => self.free.dwell = as_f64(value)?,
            "free.stationary_eps" => self.free.stationary_eps = as_f64(value)?,
            "free.contact_a" => self.free.contact_joints.0 = as_joint(value)?,
            "free.contact_b" => self.free.contact_joints.1 = as_joint(value)?,
            "free.tracked_hand" => self.free.tracked_hand = as_hand(value)?,
            "aema.alpha_min" => self.aema.alpha_min = as_f64(value)?,
            "aema.alpha_max" => self.aema.alpha_max = as_f64(value)?,
            "aema.k" => self.aema.k = as_f64(value)?,
            "gain.v_min" => self.gain.v_min = as_f64(value)?,
            "gain.v_max" => self.gain.v_max = as_f64(value)?,
            "gain.k" => self.gain.k = as_f64(value)?,
            "pose.curl_max" => self.pose.curl_max = as_f64(value)?,
            "pose.extend_min" => self.pose.extend_min = as_f64(value)?,
            "pose.pinch_max" => self.pose.pinch_max = as_f64(value)?,
            _ => return Err(ConfigError::UnknownKey { line, key: key.to_string() }),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let inv = |msg: String| ConfigError::Invalid(msg);
        if !(self.binary.threshold > 0.0) {
            return Err(inv("binary.threshold must be > 0".into()));
        }
        if !(self.linear.line_threshold > 0.0) {
            return Err(inv("linear.line_threshold must be > 0".into()));
        }
        if !(self.rotational.engage_radius > 0.0) {
            return Err(inv("rotational.engage_radius must be > 0".into()));
        }
        if !(self.free.tolerance > 0.0 && self.free.dwell > 0.0 && self.free.stationary_eps > 0.0) {
            return Err(inv("free.* thresholds must be > 0".into()));
        }
        if self.free.contact_joints.0 == self.free.contact_joints.1 {
            return Err(inv("free contact joints must differ".into()));
        }
        self.aema.validate().map_err(inv)?;
        self.gain.validate().map_err(inv)?;
        self.pose.validate().map_err(inv)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        EngineConfig::default().validate().unwrap();
    }

    #[test]
    fn parse_overrides_and_comments() {
        let text = "\
# tuning for a fast dial
gain.v_max = 3.5
linear.continuous = false
free.dwell = 2.0
binary.tracked_hand = left
";
        let cfg = EngineConfig::parse(text).unwrap();
        assert_eq!(cfg.gain.v_max, 3.5);
        assert!(!cfg.linear.continuous);
        assert_eq!(cfg.free.dwell, 2.0);
        assert_eq!(cfg.binary.tracked_hand, Hand::Left);
        // Untouched keys keep defaults.
        assert_eq!(cfg.linear.line_threshold, 0.03);
    }

    #[test]
    fn unknown_key_rejected() {
        let err = EngineConfig::parse("linear.speed = 3\n").unwrap_err();
        assert!(matches!(err, ConfigError::UnknownKey { line: 1, .. }));
    }

    #[test]
    fn syntax_error_reported_with_line() {
        let err = EngineConfig::parse("gain.v_max = 2\nnot a setting\n").unwrap_err();
        assert!(matches!(err, ConfigError::Syntax { line: 2, .. }));
    }

    #[test]
    fn invalid_ranges_rejected() {
        assert!(EngineConfig::parse("aema.alpha_min = 0.9\naema.alpha_max = 0.1\n").is_err());
        assert!(EngineConfig::parse("binary.threshold = 0\n").is_err());
        assert!(EngineConfig::parse("pose.curl_max = 0.2\n").is_err());
    }

    #[test]
    fn gesture_mode_with_label() {
        let cfg = EngineConfig::parse("binary.mode = gesture\nbinary.label = Fist\n").unwrap();
        assert_eq!(cfg.binary.mode, BinaryMode::GestureLabeled(PoseLabel::Fist));
    }
}
