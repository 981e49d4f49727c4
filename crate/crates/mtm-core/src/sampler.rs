//! A uniform facade over the transition kernels: finite-candidate
//! multiple-try Metropolis, plain random-walk Metropolis (its
//! single-candidate special case), and the two closed-form
//! infinite-candidate schemes for the product normal target.
//!
//! Estimators and the experiment harness accept a [`SamplerSpec`] so the
//! same driver code can sweep across kernels.

use crate::adapt::ScaleAdapter;
use crate::error::{Error, Result};
use crate::ideal::{ideal_step, IdealConfig, IdealWeight};
use crate::kernel::{mtm_step, run_chain, ChainTrace, MtmConfig, MtmStepOutcome, Scale};
use crate::rng::{RngKey, MAX_STREAM_ITERATION};
use crate::targets::Target;
use crate::weights::WeightKind;

/// Which transition kernel drives a chain or a Monte Carlo estimate.
#[derive(Debug, Clone, PartialEq)]
pub enum SamplerSpec {
    /// Finite-candidate multiple-try Metropolis.
    Mtm(MtmConfig),
    /// Plain random-walk Metropolis with proposal N(x, σ²I). This is the
    /// single-candidate special case of MTM and is implemented as exactly
    /// that, so the two agree bit for bit under a common key.
    PlainMh { sigma: f64 },
    /// Infinite-candidate limit of importance-weight MTM (closed form;
    /// product normal target only).
    IdealGb { sigma: f64 },
    /// Infinite-candidate limit of square-root-weight MTM (closed form;
    /// product normal target only).
    IdealLbSqrt { sigma: f64 },
}

impl SamplerSpec {
    /// Stable identifier used in configs and output rows.
    pub fn name(&self) -> &'static str {
        match self {
            SamplerSpec::Mtm(_) => "mtm",
            SamplerSpec::PlainMh { .. } => "plain-mh",
            SamplerSpec::IdealGb { .. } => "ideal-gb",
            SamplerSpec::IdealLbSqrt { .. } => "ideal-lb-sqrt",
        }
    }

    /// The finite-candidate configuration this sampler reduces to, if any.
    pub fn mtm_equivalent(&self) -> Option<MtmConfig> {
        match self {
            SamplerSpec::Mtm(cfg) => Some(*cfg),
            SamplerSpec::PlainMh { sigma } => {
                Some(MtmConfig::new(1, Scale::Sigma(*sigma), WeightKind::Gb))
            }
            _ => None,
        }
    }

    fn ideal_config(&self, dim: usize) -> Option<IdealConfig> {
        match self {
            SamplerSpec::IdealGb { sigma } => Some(IdealConfig::new(IdealWeight::Gb, *sigma, dim)),
            SamplerSpec::IdealLbSqrt { sigma } => {
                Some(IdealConfig::new(IdealWeight::Sqrt, *sigma, dim))
            }
            _ => None,
        }
    }

    /// One full transition cycle from `x`: propose, select where applicable,
    /// and resolve acceptance. Streams are derived from `key` and
    /// `iteration` exactly as in the underlying kernels.
    pub fn step(
        &self,
        x: &[f64],
        target: &Target,
        key: &RngKey,
        iteration: u64,
    ) -> Result<MtmStepOutcome> {
        if let Some(cfg) = self.mtm_equivalent() {
            return mtm_step(x, &cfg, target, key, iteration);
        }
        let cfg = self
            .ideal_config(x.len())
            .expect("non-MTM samplers always carry an ideal configuration");
        ideal_step(x, &cfg, target, key, iteration)
    }
}

/// Run a chain of `n_steps` transitions of `spec` from `init`.
///
/// Finite-candidate samplers delegate to [`run_chain`] and therefore
/// support scale adaptation; the closed-form infinite-candidate schemes
/// have no tunable candidate pool and reject an adapter.
pub fn run_sampler_chain(
    init: &[f64],
    spec: &SamplerSpec,
    target: &Target,
    n_steps: usize,
    key: &RngKey,
    adapter: Option<&mut ScaleAdapter>,
) -> Result<ChainTrace> {
    if let Some(cfg) = spec.mtm_equivalent() {
        return run_chain(init, &cfg, target, n_steps, key, adapter);
    }
    if adapter.is_some() {
        return Err(Error::InvalidConfig(
            "scale adaptation applies to the finite-candidate samplers only".to_string(),
        ));
    }
    if n_steps as u64 > MAX_STREAM_ITERATION {
        return Err(Error::InvalidConfig(format!(
            "n_steps {n_steps} exceeds the per-key stream budget"
        )));
    }
    target.check_state(init)?;
    let mut states = Vec::with_capacity(n_steps + 1);
    let mut acc_probs = Vec::with_capacity(n_steps);
    let mut accepted = Vec::with_capacity(n_steps);
    let mut x = init.to_vec();
    states.push(x.clone());
    for m in 0..n_steps {
        let outcome = spec.step(&x, target, key, m as u64)?;
        acc_probs.push(outcome.acc_prob);
        accepted.push(outcome.accepted);
        x = outcome.next_state;
        states.push(x.clone());
    }
    Ok(ChainTrace {
        states,
        acc_probs,
        accepted,
        scale_history: Vec::new(),
        key: *key,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adapt::AdaptationConfig;
    use crate::targets::norm;

    fn key(seed: u64) -> RngKey {
        RngKey::from_seed(seed)
    }

    #[test]
    fn sampler_names() {
        let cfg = MtmConfig::new(5, Scale::Ell { ell: 2.0, tau: 0.5 }, WeightKind::Sqrt);
        assert_eq!(SamplerSpec::Mtm(cfg).name(), "mtm");
        assert_eq!(SamplerSpec::PlainMh { sigma: 1.0 }.name(), "plain-mh");
        assert_eq!(SamplerSpec::IdealGb { sigma: 1.0 }.name(), "ideal-gb");
        assert_eq!(
            SamplerSpec::IdealLbSqrt { sigma: 1.0 }.name(),
            "ideal-lb-sqrt"
        );
    }

    #[test]
    fn plain_mh_matches_single_candidate_mtm_bitwise() {
        let target = Target::product_normal(2);
        let k = key(11);
        let init = [3.0, -1.0];
        let plain = run_sampler_chain(
            &init,
            &SamplerSpec::PlainMh { sigma: 0.7 },
            &target,
            50,
            &k,
            None,
        )
        .unwrap();
        let as_mtm = run_sampler_chain(
            &init,
            &SamplerSpec::Mtm(MtmConfig::new(1, Scale::Sigma(0.7), WeightKind::Gb)),
            &target,
            50,
            &k,
            None,
        )
        .unwrap();
        assert_eq!(plain.states, as_mtm.states);
        assert_eq!(plain.acc_probs, as_mtm.acc_probs);
        assert_eq!(plain.accepted, as_mtm.accepted);
    }

    #[test]
    fn sqrt_scheme_escapes_the_tail_while_importance_scheme_stalls() {
        let target = Target::product_normal(5);

        // Square-root weights keep accepting inward moves from deep in the
        // tail, so the chain reaches the typical set quickly.
        let spec = SamplerSpec::IdealLbSqrt { sigma: 0.5 };
        let trace = run_sampler_chain(&[10.0; 5], &spec, &target, 300, &key(7), None).unwrap();
        assert_eq!(trace.states.len(), 301);
        assert_eq!(trace.scale_history.len(), 0);
        let last = norm(trace.final_state());
        assert!(last < 5.0, "sqrt scheme stayed in the tail: ‖x‖ = {last}");

        // Importance weights reject inward moves started this far out with
        // overwhelming probability, so the same chain does not move at all.
        let spec = SamplerSpec::IdealGb { sigma: 0.5 };
        let trace = run_sampler_chain(&[10.0; 5], &spec, &target, 300, &key(7), None).unwrap();
        assert_eq!(trace.final_state(), &[10.0; 5]);
        assert_eq!(trace.acceptance_rate(), 0.0);
    }

    #[test]
    fn importance_scheme_mixes_from_the_typical_set() {
        let target = Target::product_normal(5);
        let spec = SamplerSpec::IdealGb { sigma: 0.5 };
        let trace = run_sampler_chain(&[0.0; 5], &spec, &target, 300, &key(9), None).unwrap();
        assert!(
            trace.acceptance_rate() > 0.3,
            "rate {}",
            trace.acceptance_rate()
        );
        assert!(norm(trace.final_state()) < 6.0);
    }

    #[test]
    fn ideal_steps_report_valid_probabilities() {
        let target = Target::product_normal(3);
        let spec = SamplerSpec::IdealLbSqrt { sigma: 0.8 };
        let out = spec.step(&[0.5, -0.5, 1.5], &target, &key(3), 0).unwrap();
        assert!(out.acc_prob > 0.0 && out.acc_prob <= 1.0);
        assert_eq!(out.proposal.len(), 3);
        assert_eq!(out.candidates.len(), 1);
        assert_eq!(out.selected_index, 0);
    }

    #[test]
    fn zero_step_ideal_chain_holds_only_the_start() {
        let target = Target::product_normal(2);
        let spec = SamplerSpec::IdealGb { sigma: 1.0 };
        let trace = run_sampler_chain(&[1.0, 2.0], &spec, &target, 0, &key(1), None).unwrap();
        assert_eq!(trace.states, vec![vec![1.0, 2.0]]);
        assert!(trace.acc_probs.is_empty());
    }

    #[test]
    fn adapter_is_rejected_outside_step_size_parameterization() {
        let target = Target::product_normal(2);
        let mut adapter = ScaleAdapter::new(AdaptationConfig::default()).unwrap();
        let err = run_sampler_chain(
            &[0.0, 0.0],
            &SamplerSpec::IdealGb { sigma: 1.0 },
            &target,
            5,
            &key(2),
            Some(&mut adapter),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidConfig(_)));

        let mut adapter = ScaleAdapter::new(AdaptationConfig::default()).unwrap();
        let err = run_sampler_chain(
            &[0.0, 0.0],
            &SamplerSpec::PlainMh { sigma: 1.0 },
            &target,
            5,
            &key(2),
            Some(&mut adapter),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidConfig(_)));
    }

    #[test]
    fn ideal_samplers_require_product_normal() {
        let target = Target::product_laplace(2);
        let spec = SamplerSpec::IdealGb { sigma: 1.0 };
        assert!(spec.step(&[0.0, 0.0], &target, &key(5), 0).is_err());
    }
}
