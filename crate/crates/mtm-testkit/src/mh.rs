//! Straight-line Metropolis re-implementations used as behavioral oracles.
//!
//! These share nothing with the library under test: normals come from
//! Box-Muller over raw uniforms, weights are evaluated in plain (non-log)
//! arithmetic, and the multiple-try acceptance ratio is written directly as
//! the textbook product of density and weight ratios.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random-walk MH acceptance probability for a symmetric proposal.
pub fn plain_mh_acc_prob(lp_x: f64, lp_y: f64) -> f64 {
    (lp_y - lp_x).exp().min(1.0)
}

/// Box-Muller standard normal (cosine branch) from two uniforms.
pub fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Runs a plain random-walk MH chain on the product standard normal target,
/// started from an exact draw. Returns (fraction of steps accepted, mean
/// acceptance probability).
pub fn run_plain_mh_product_normal(d: usize, sigma: f64, n_steps: usize, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lp = |v: &[f64]| -0.5 * v.iter().map(|t| t * t).sum::<f64>();
    let mut x: Vec<f64> = (0..d).map(|_| standard_normal(&mut rng)).collect();
    let mut lpx = lp(&x);
    let mut accepted = 0usize;
    let mut acc_sum = 0.0;
    for _ in 0..n_steps {
        let y: Vec<f64> = x
            .iter()
            .map(|&t| t + sigma * standard_normal(&mut rng))
            .collect();
        let lpy = lp(&y);
        let a = plain_mh_acc_prob(lpx, lpy);
        acc_sum += a;
        if rng.random::<f64>() < a {
            x = y;
            lpx = lpy;
            accepted += 1;
        }
    }
    (accepted as f64 / n_steps as f64, acc_sum / n_steps as f64)
}

/// Weight function applied to a density ratio in plain (non-log) space.
pub fn weight_plain(kind: &str, ratio: f64) -> f64 {
    match kind {
        "gb" => ratio,
        "sqrt" => ratio.sqrt(),
        "barker" => ratio / (1.0 + ratio),
        other => panic!("unknown weight kind {other}"),
    }
}

/// Acceptance probability of one multiple-try step, computed by the direct
/// ratio formula in plain arithmetic (adequate for moderate log-densities):
/// the selected candidate's density ratio times the ratio of reverse to
/// forward normalized weights.
pub fn mtm_acc_prob_reference(
    kind: &str,
    log_pi: &dyn Fn(&[f64]) -> f64,
    x: &[f64],
    candidates: &[Vec<f64>],
    selected: usize,
    shadows: &[Vec<f64>],
) -> f64 {
    assert_eq!(shadows.len() + 1, candidates.len());
    let lpx = log_pi(x);
    let y = &candidates[selected];
    let lpy = log_pi(y);
    let w_fwd: Vec<f64> = candidates
        .iter()
        .map(|c| weight_plain(kind, (log_pi(c) - lpx).exp()))
        .collect();
    let w_yx = weight_plain(kind, (lpx - lpy).exp());
    let denom_rev: f64 = shadows
        .iter()
        .map(|z| weight_plain(kind, (log_pi(z) - lpy).exp()))
        .sum::<f64>()
        + w_yx;
    let denom_fwd: f64 = w_fwd.iter().sum();
    let ratio = (lpy - lpx).exp() * (w_yx / denom_rev) / (w_fwd[selected] / denom_fwd);
    ratio.min(1.0)
}
