//! Adaptive input filters.
//!
//! Two filters are provided. The adaptive exponential moving average (AEMA)
//! blends each raw sample with the previous output,
//!
//! ```text
//! s = alpha * raw + (1 - alpha) * s_prev,
//! alpha = lerp(alpha_min, alpha_max, clamp(k * |raw - s_prev| / dt, 0, 1))
//! ```
//!
//! so fast motion passes through nearly unfiltered while slow motion is
//! heavily smoothed. The adaptive gain scales per-frame rotation deltas by
//! a speed-dependent factor `v` in `[v_min, v_max]`: above one during fast
//! turns for coarse moves, below one during slow turns for fine-tuning.

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum SmoothingError {
    #[error("dt must be > 0")]
    NonPositiveDt,
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + (b - a) * t
}

/// AEMA parameters. `k` is seconds-per-unit: the input speed at which the
/// blend factor saturates at `alpha_max` is `1 / k` units per second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AemaConfig {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub k: f64,
}

impl AemaConfig {
    /// Pass-through configuration: output equals the raw input.
    pub const IDENTITY: AemaConfig = AemaConfig { alpha_min: 1.0, alpha_max: 1.0, k: 1.0 };

    pub fn validate(&self) -> Result<(), String> {
        if !(0.0..=1.0).contains(&self.alpha_min)
            || !(0.0..=1.0).contains(&self.alpha_max)
            || self.alpha_min > self.alpha_max
        {
            return Err(format!(
                "aema requires 0 <= alpha_min <= alpha_max <= 1, got {} and {}",
                self.alpha_min, self.alpha_max
            ));
        }
        if !(self.k > 0.0) {
            return Err(format!("aema.k must be > 0, got {}", self.k));
        }
        Ok(())
    }
}

impl Default for AemaConfig {
    fn default() -> Self {
        Self { alpha_min: 0.0, alpha_max: 1.0, k: 0.01 }
    }
}

/// AEMA filter state. The first sample passes through unchanged and seeds
/// the state, avoiding a startup transient toward an arbitrary default.
#[derive(Debug, Clone, Copy, Default)]
pub struct AemaState {
    s_prev: Option<f64>,
}

impl AemaState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_initialized(&self) -> bool {
        self.s_prev.is_some()
    }

    /// Last emitted value, if any sample has been seen.
    pub fn last(&self) -> Option<f64> {
        self.s_prev
    }

    /// Feeds one sample; returns the smoothed value and stores it.
    pub fn step(&mut self, raw: f64, dt: f64, cfg: &AemaConfig) -> Result<f64, SmoothingError> {
        if !(dt > 0.0) {
            return Err(SmoothingError::NonPositiveDt);
        }
        debug_assert!(raw.is_finite());
        let out = match self.s_prev {
            None => raw,
            Some(prev) => {
                let delta = (raw - prev).abs();
                let t = (cfg.k * delta / dt).clamp(0.0, 1.0);
                let alpha = lerp(cfg.alpha_min, cfg.alpha_max, t);
                alpha * raw + (1.0 - alpha) * prev
            }
        };
        self.s_prev = Some(out);
        Ok(out)
    }
}

/// Adaptive rotation gain parameters. `k` is seconds-per-radian: the
/// rotation speed at which the gain saturates at `v_max` is `1 / k` rad/s.
///
/// `v_min = v_max = 1` is the identity gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainConfig {
    pub v_min: f64,
    pub v_max: f64,
    pub k: f64,
}

impl GainConfig {
    pub const IDENTITY: GainConfig = GainConfig { v_min: 1.0, v_max: 1.0, k: 1.0 };

    pub fn validate(&self) -> Result<(), String> {
        if !(self.v_min > 0.0 && self.v_min <= 1.0 && self.v_max >= 1.0) {
            return Err(format!(
                "gain requires 0 < v_min <= 1 <= v_max, got {} and {}",
                self.v_min, self.v_max
            ));
        }
        if !(self.k > 0.0) {
            return Err(format!("gain.k must be > 0, got {}", self.k));
        }
        Ok(())
    }
}

impl Default for GainConfig {
    fn default() -> Self {
        Self { v_min: 0.5, v_max: 2.0, k: 0.1 }
    }
}

/// Scales a per-frame rotation delta by the speed-dependent gain. Sign is
/// preserved; `|result|` lies in `[v_min * |dtheta|, v_max * |dtheta|]`.
pub fn adaptive_scale(dtheta: f64, dt: f64, cfg: &GainConfig) -> Result<f64, SmoothingError> {
    if !(dt > 0.0) {
        return Err(SmoothingError::NonPositiveDt);
    }
    let t = (cfg.k * dtheta.abs() / dt).clamp(0.0, 1.0);
    let v = lerp(cfg.v_min, cfg.v_max, t);
    Ok(dtheta * v)
}
