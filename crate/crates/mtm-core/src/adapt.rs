//! Stochastic-approximation tuning of the proposal scale toward a target
//! acceptance rate.
//!
//! The scale parameter ℓ is updated on the log scale after every step:
//!
//! log ℓ_{m+1} = log ℓ_m + γ(m)·(α_m − target),   γ(m) = m^{−e}
//!
//! with learning exponent e = 0.6 by default, then clamped to
//! [ell_min, ell_max]. The feedback signal is the step's acceptance
//! *probability* α_m rather than the 0/1 accept indicator — same mean, less
//! noise. Default targets: 25% for the importance weight, 50% for the
//! locally balanced weights.

use crate::error::{Error, Result};
use crate::weights::WeightKind;

/// Tuning parameters for the scale adapter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptationConfig {
    /// Acceptance rate the adapter steers toward.
    pub target_rate: f64,
    /// Learning-rate decay exponent e in γ(m) = m^{−e}.
    pub learning_exponent: f64,
    /// Lower clamp on ℓ.
    pub ell_min: f64,
    /// Upper clamp on ℓ.
    pub ell_max: f64,
    /// Starting value of ℓ.
    pub initial_ell: f64,
}

impl Default for AdaptationConfig {
    fn default() -> Self {
        AdaptationConfig {
            target_rate: 0.25,
            learning_exponent: 0.6,
            ell_min: 1e-6,
            ell_max: 1e3,
            initial_ell: 2.38,
        }
    }
}

impl AdaptationConfig {
    /// Defaults for a weight kind: target 25% for `Gb`, 50% for the locally
    /// balanced kinds.
    pub fn for_weight(weight: WeightKind) -> Self {
        AdaptationConfig {
            target_rate: if weight.is_locally_balanced() {
                0.50
            } else {
                0.25
            },
            ..AdaptationConfig::default()
        }
    }

    /// Same config with a different target rate.
    pub fn with_target_rate(self, target_rate: f64) -> Self {
        AdaptationConfig {
            target_rate,
            ..self
        }
    }

    /// Same config with a different starting scale.
    pub fn with_initial_ell(self, initial_ell: f64) -> Self {
        AdaptationConfig {
            initial_ell,
            ..self
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.target_rate > 0.0 && self.target_rate < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "target rate {} outside (0,1)",
                self.target_rate
            )));
        }
        if !(self.learning_exponent > 0.0 && self.learning_exponent.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "learning exponent {} must be positive",
                self.learning_exponent
            )));
        }
        if !(self.ell_min > 0.0 && self.ell_min < self.ell_max && self.ell_max.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "scale clamps [{}, {}] must satisfy 0 < min < max < ∞",
                self.ell_min, self.ell_max
            )));
        }
        if !(self.initial_ell > 0.0 && self.initial_ell.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "initial scale {} must be positive",
                self.initial_ell
            )));
        }
        Ok(())
    }
}

/// One scale update: clamp(ℓ·exp(m^{−e}·(acc_prob − target)), min, max).
/// `m` is the 1-based step count, so the first update has γ(1) = 1.
pub fn update_scale(ell: f64, acc_prob: f64, m: u64, cfg: &AdaptationConfig) -> Result<f64> {
    cfg.validate()?;
    if !(ell > 0.0 && ell.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "scale ell={ell} must be positive"
        )));
    }
    if !(0.0..=1.0).contains(&acc_prob) {
        return Err(Error::InvalidConfig(format!(
            "acceptance probability {acc_prob} outside [0,1]"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidConfig("step count m starts at 1".into()));
    }
    let gamma = (m as f64).powf(-cfg.learning_exponent);
    Ok((ell * (gamma * (acc_prob - cfg.target_rate)).exp()).clamp(cfg.ell_min, cfg.ell_max))
}

/// Per-chain adapter state: the current ℓ and the step counter.
#[derive(Debug, Clone)]
pub struct ScaleAdapter {
    cfg: AdaptationConfig,
    ell: f64,
    m: u64,
}

impl ScaleAdapter {
    pub fn new(cfg: AdaptationConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(ScaleAdapter {
            ell: cfg.initial_ell.clamp(cfg.ell_min, cfg.ell_max),
            cfg,
            m: 1,
        })
    }

    /// ℓ to use for the next step.
    pub fn current_ell(&self) -> f64 {
        self.ell
    }

    /// 1-based index of the next observation.
    pub fn step_count(&self) -> u64 {
        self.m
    }

    pub fn config(&self) -> &AdaptationConfig {
        &self.cfg
    }

    /// Feed back a step's acceptance probability; returns the updated ℓ.
    pub fn observe(&mut self, acc_prob: f64) -> Result<f64> {
        self.ell = update_scale(self.ell, acc_prob, self.m, &self.cfg)?;
        self.m += 1;
        Ok(self.ell)
    }
}
