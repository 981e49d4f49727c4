//! Multiple-try Metropolis sampling on product targets, with globally and
//! locally balanced candidate weights, closed-form ideal schemes, adaptive
//! scale tuning, and the asymptotic theory curves they are measured against.

pub mod adapt;
pub mod diagnostics;
pub mod error;
pub mod ideal;
pub mod kernel;
pub mod parallel;
pub mod rng;
pub mod sampler;
pub mod special;
pub mod targets;
pub mod theory;
pub mod weights;

pub use adapt::{update_scale, AdaptationConfig, ScaleAdapter};
pub use diagnostics::{
    convergence_time, esjd, expected_acceptance_at, stationary_acceptance_rate,
    weight_normalization_discrepancy, ConvergenceTime, EstimateWithError,
};
pub use error::{Error, Result};
pub use ideal::{
    gb_log_expected_weight, ideal_gb_acc_prob, ideal_gb_propose, ideal_gb_step,
    ideal_lb_sqrt_acc_prob, ideal_lb_sqrt_propose, ideal_lb_sqrt_step, ideal_step,
    lb_sqrt_log_expected_weight, lb_sqrt_log_normalizer, IdealConfig, IdealWeight,
};
pub use kernel::{mtm_step, run_chain, ChainTrace, MtmConfig, MtmStepOutcome, Scale};
pub use rng::{RngKey, Stage};
pub use sampler::{run_sampler_chain, SamplerSpec};
pub use targets::{norm, Target};
pub use theory::{
    candidate_schedule, gb_acceptance_bound, limiting_acceptance, optimize_speed, speed_curve,
    speed_measure, std_normal_cdf, tail_bound_curve, theta_curve, SpeedOptimum, TheoryCurve,
    TheoryCurveKind, GB_CRITICAL_TAU, SCHEDULE_CAP, SQRT_CRITICAL_TAU,
};
pub use weights::{log_mean_weight, log_sum_exp, select_candidate, softplus, WeightKind};
