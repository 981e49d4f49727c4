//! The multiple-try transition kernel and chain execution.
//!
//! One step: (1) draw N candidates i.i.d. from N(x, σ²I); (2) select one with
//! probability proportional to g(π(y_i)/π(x)); (3) draw N−1 shadow points
//! i.i.d. from N(y_J, σ²I); (4) accept y_J with probability
//!
//! α = 1 ∧ [π(y_J)·w(y_J,x) / Σ_rev] / [π(x)·w(x,y_J) / Σ_fwd],
//!
//! where Σ_fwd sums the candidate weights w(x,y_i) and Σ_rev sums the shadow
//! weights w(y_J,z_i) plus w(y_J,x). The Gaussian proposal terms cancel by
//! symmetry, and everything is evaluated in log space (normalizing the two
//! sums by the shared count N would cancel exactly, so plain log-sum-exp is
//! used). With a single candidate the weight terms cancel algebraically and
//! the step is computed directly as plain Metropolis–Hastings, keeping N=1
//! runs bitwise identical to a plain-MH baseline.
//!
//! All randomness comes from per-(stage, iteration, index) streams of the
//! step's `RngKey`, so candidate and shadow evaluations can run on any
//! number of workers without changing a single bit of the trace.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::adapt::ScaleAdapter;
use crate::error::{Error, Result};
use crate::parallel::map_indexed;
use crate::rng::{RngKey, Stage, MAX_STREAM_INDEX, MAX_STREAM_ITERATION};
use crate::targets::Target;
use crate::weights::{log_sum_exp, select_candidate, WeightKind};

/// Proposal scale: a literal σ, or the dimension-scaled form σ = ℓ/d^τ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scale {
    /// Standard deviation of each proposal coordinate.
    Sigma(f64),
    /// σ = ell / dim^tau.
    Ell { ell: f64, tau: f64 },
}

impl Scale {
    /// Resolve the scale to a σ for dimension `dim`.
    pub fn sigma(&self, dim: usize) -> Result<f64> {
        if dim == 0 {
            return Err(Error::InvalidConfig("dimension must be positive".into()));
        }
        let sigma = match *self {
            Scale::Sigma(s) => s,
            Scale::Ell { ell, tau } => {
                if !(tau >= 0.0 && tau.is_finite()) {
                    return Err(Error::InvalidConfig(format!(
                        "scale decay exponent tau={tau} must be ≥ 0"
                    )));
                }
                ell / (dim as f64).powf(tau)
            }
        };
        if sigma > 0.0 && sigma.is_finite() {
            Ok(sigma)
        } else {
            Err(Error::InvalidConfig(format!(
                "proposal scale σ={sigma} must be positive"
            )))
        }
    }
}

/// Configuration of the multiple-try kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MtmConfig {
    /// Number of candidates N per step (N = 1 is plain Metropolis–Hastings).
    pub n_candidates: usize,
    /// Proposal scale.
    pub scale: Scale,
    /// Weight function used for candidate selection.
    pub weight: WeightKind,
    /// Worker threads for in-step candidate/shadow evaluation (1 = inline).
    pub parallel_workers: usize,
}

impl MtmConfig {
    pub fn new(n_candidates: usize, scale: Scale, weight: WeightKind) -> Self {
        MtmConfig {
            n_candidates,
            scale,
            weight,
            parallel_workers: 1,
        }
    }

    pub fn with_workers(self, parallel_workers: usize) -> Self {
        MtmConfig {
            parallel_workers,
            ..self
        }
    }

    /// Validate against a target dimension; returns the resolved σ.
    pub fn validate(&self, dim: usize) -> Result<f64> {
        if self.n_candidates == 0 {
            return Err(Error::InvalidConfig("need at least one candidate".into()));
        }
        if self.n_candidates as u64 > MAX_STREAM_INDEX as u64 + 1 {
            return Err(Error::InvalidConfig(format!(
                "candidate count {} exceeds the RNG stream budget",
                self.n_candidates
            )));
        }
        if self.parallel_workers == 0 {
            return Err(Error::InvalidConfig("worker count must be ≥ 1".into()));
        }
        self.scale.sigma(dim)
    }
}

/// Everything one transition produced. Rejected steps still carry the
/// selected proposal and its acceptance probability, which downstream
/// estimators (expected squared jumps, acceptance curves) need.
#[derive(Debug, Clone)]
pub struct MtmStepOutcome {
    /// The N candidate points, in draw order.
    pub candidates: Vec<Vec<f64>>,
    /// log w(x, y_i) for each candidate.
    pub candidate_log_weights: Vec<f64>,
    /// Index J of the selected candidate.
    pub selected_index: usize,
    /// The selected candidate y_J.
    pub proposal: Vec<f64>,
    /// The N−1 shadow points drawn around y_J (empty when N = 1).
    pub shadows: Vec<Vec<f64>>,
    /// log w(y_J, z_i) for each shadow, with log w(y_J, x) appended last
    /// (length N).
    pub shadow_log_weights: Vec<f64>,
    /// Acceptance probability α of this step.
    pub acc_prob: f64,
    /// Whether the proposal was accepted.
    pub accepted: bool,
    /// y_J if accepted, the previous state otherwise.
    pub next_state: Vec<f64>,
    /// log π(next_state), carried so chains never re-evaluate the target at
    /// the current state.
    pub next_log_density: f64,
}

pub(crate) fn gaussian_step(
    center: &[f64],
    sigma: f64,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Vec<f64> {
    center
        .iter()
        .map(|&c| {
            let z: f64 = rng.sample(StandardNormal);
            c + sigma * z
        })
        .collect()
}

/// One multiple-try transition from `x`.
pub fn mtm_step(
    x: &[f64],
    cfg: &MtmConfig,
    target: &Target,
    key: &RngKey,
    iteration: u64,
) -> Result<MtmStepOutcome> {
    let lp_x = target.log_density(x)?;
    mtm_step_given(x, lp_x, cfg, target, key, iteration)
}

/// The transition with log π(x) already known (chains thread it through so
/// each step costs exactly 2N−1 target evaluations).
pub(crate) fn mtm_step_given(
    x: &[f64],
    lp_x: f64,
    cfg: &MtmConfig,
    target: &Target,
    key: &RngKey,
    iteration: u64,
) -> Result<MtmStepOutcome> {
    let dim = target.dim();
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: x.len(),
        });
    }
    let sigma = cfg.validate(dim)?;
    if !lp_x.is_finite() {
        return Err(Error::NonFinite {
            context: "log-density at the current state",
        });
    }
    let n = cfg.n_candidates;

    // Candidates and their log-densities; the evaluation is the unit of
    // parallelism, keyed by candidate index.
    let drawn = map_indexed(cfg.parallel_workers, n, |i| -> Result<(Vec<f64>, f64)> {
        let mut rng = key.stream(Stage::Candidate, iteration, i as u32);
        let y = gaussian_step(x, sigma, &mut rng);
        let lp = target.log_density(&y)?;
        Ok((y, lp))
    });
    let mut candidates = Vec::with_capacity(n);
    let mut lp_cand = Vec::with_capacity(n);
    for r in drawn {
        let (y, lp) = r?;
        candidates.push(y);
        lp_cand.push(lp);
    }

    let mut accept_rng = key.stream(Stage::Accept, iteration, 0);

    if n == 1 {
        // Single candidate: the weight and normalization terms cancel, so
        // compute the plain Metropolis–Hastings ratio directly (bitwise
        // identical to a plain-MH implementation on the same streams).
        let proposal = candidates[0].clone();
        let lp_y = lp_cand[0];
        let r = lp_y - lp_x;
        let acc_prob = r.exp().min(1.0);
        let u: f64 = accept_rng.random();
        let accepted = u < acc_prob;
        let (next_state, next_log_density) = if accepted {
            (proposal.clone(), lp_y)
        } else {
            (x.to_vec(), lp_x)
        };
        return Ok(MtmStepOutcome {
            candidate_log_weights: vec![cfg.weight.log_g(r)?],
            shadow_log_weights: vec![cfg.weight.log_g(-r)?],
            candidates,
            selected_index: 0,
            proposal,
            shadows: Vec::new(),
            acc_prob,
            accepted,
            next_state,
            next_log_density,
        });
    }

    // Select a candidate by its weight.
    let mut lw_fwd = Vec::with_capacity(n);
    for &lp in &lp_cand {
        lw_fwd.push(cfg.weight.log_g(lp - lp_x)?);
    }
    let lse_fwd = log_sum_exp(&lw_fwd);
    let mut select_rng = key.stream(Stage::Select, iteration, 0);
    let selected_index = select_candidate(&lw_fwd, &mut select_rng)?;
    let proposal = candidates[selected_index].clone();
    let lp_y = lp_cand[selected_index];

    // Shadow points around the selected candidate.
    let shadow_drawn = map_indexed(
        cfg.parallel_workers,
        n - 1,
        |i| -> Result<(Vec<f64>, f64)> {
            let mut rng = key.stream(Stage::Shadow, iteration, i as u32);
            let z = gaussian_step(&proposal, sigma, &mut rng);
            let lp = target.log_density(&z)?;
            Ok((z, lp))
        },
    );
    let mut shadows = Vec::with_capacity(n - 1);
    let mut lw_rev = Vec::with_capacity(n);
    for r in shadow_drawn {
        let (z, lp) = r?;
        lw_rev.push(cfg.weight.log_g(lp - lp_y)?);
        shadows.push(z);
    }
    lw_rev.push(cfg.weight.log_g(lp_x - lp_y)?);
    let lse_rev = log_sum_exp(&lw_rev);

    // Acceptance ratio in log space; the selected candidate always has
    // positive weight, so every term here is finite.
    let log_alpha = (lp_y + lw_rev[n - 1] - lse_rev) - (lp_x + lw_fwd[selected_index] - lse_fwd);
    let acc_prob = log_alpha.exp().min(1.0);
    let u: f64 = accept_rng.random();
    let accepted = u < acc_prob;
    let (next_state, next_log_density) = if accepted {
        (proposal.clone(), lp_y)
    } else {
        (x.to_vec(), lp_x)
    };

    Ok(MtmStepOutcome {
        candidates,
        candidate_log_weights: lw_fwd,
        selected_index,
        proposal,
        shadows,
        shadow_log_weights: lw_rev,
        acc_prob,
        accepted,
        next_state,
        next_log_density,
    })
}

/// A realized chain: states plus per-step acceptance records, with the
/// adapted scale series and the RNG key that reproduces everything.
#[derive(Debug, Clone)]
pub struct ChainTrace {
    /// States X(0), …, X(M); length M+1.
    pub states: Vec<Vec<f64>>,
    /// Acceptance probability of each step; length M.
    pub acc_probs: Vec<f64>,
    /// Accept/reject decision of each step; length M.
    pub accepted: Vec<bool>,
    /// ℓ in effect at each step when adaptation is active; empty otherwise.
    pub scale_history: Vec<f64>,
    /// Root key of the chain's random streams.
    pub key: RngKey,
}

impl ChainTrace {
    pub fn n_steps(&self) -> usize {
        self.acc_probs.len()
    }

    /// Fraction of steps whose proposal was accepted.
    pub fn acceptance_rate(&self) -> f64 {
        if self.accepted.is_empty() {
            return 0.0;
        }
        self.accepted.iter().filter(|&&a| a).count() as f64 / self.accepted.len() as f64
    }

    /// Mean per-step acceptance probability.
    pub fn mean_acc_prob(&self) -> f64 {
        if self.acc_probs.is_empty() {
            return 0.0;
        }
        self.acc_probs.iter().sum::<f64>() / self.acc_probs.len() as f64
    }

    pub fn final_state(&self) -> &[f64] {
        self.states
            .last()
            .expect("trace always holds the initial state")
    }
}

/// Run `n_steps` transitions from `init`. With an adapter, the scale must be
/// given in the ℓ/τ form; the adapter's current ℓ is used for each step and
/// updated from the step's acceptance probability afterwards.
pub fn run_chain(
    init: &[f64],
    cfg: &MtmConfig,
    target: &Target,
    n_steps: usize,
    key: &RngKey,
    mut adapter: Option<&mut ScaleAdapter>,
) -> Result<ChainTrace> {
    if n_steps as u64 > MAX_STREAM_ITERATION {
        return Err(Error::InvalidConfig(format!(
            "chain length {n_steps} exceeds the RNG stream budget"
        )));
    }
    if adapter.is_some() && matches!(cfg.scale, Scale::Sigma(_)) {
        return Err(Error::InvalidConfig(
            "scale adaptation requires the ℓ/τ scale parameterization".into(),
        ));
    }
    let mut lp = target.log_density(init)?;
    let mut x = init.to_vec();
    let mut trace = ChainTrace {
        states: Vec::with_capacity(n_steps + 1),
        acc_probs: Vec::with_capacity(n_steps),
        accepted: Vec::with_capacity(n_steps),
        scale_history: Vec::new(),
        key: *key,
    };
    trace.states.push(x.clone());
    for m in 0..n_steps {
        let step_scale = match (&adapter, cfg.scale) {
            (Some(ad), Scale::Ell { tau, .. }) => {
                let ell = ad.current_ell();
                trace.scale_history.push(ell);
                Scale::Ell { ell, tau }
            }
            _ => cfg.scale,
        };
        let step_cfg = MtmConfig {
            scale: step_scale,
            ..*cfg
        };
        let out = mtm_step_given(&x, lp, &step_cfg, target, key, m as u64)?;
        if let Some(ad) = adapter.as_deref_mut() {
            ad.observe(out.acc_prob)?;
        }
        trace.acc_probs.push(out.acc_prob);
        trace.accepted.push(out.accepted);
        trace.states.push(out.next_state.clone());
        x = out.next_state;
        lp = out.next_log_density;
    }
    Ok(trace)
}
