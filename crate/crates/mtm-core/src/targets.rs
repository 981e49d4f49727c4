//! Target distributions.
//!
//! Three kinds are supported: the product standard normal, the product
//! standard Laplace, and user-supplied black-box log-densities. Log-densities
//! are true (normalized) values for the analytic targets; black-box targets
//! are defined up to whatever constant the user's evaluator carries, which is
//! fine because every sampler in this crate consumes only differences of
//! log-densities.
//!
//! Black-box targets can carry an artificial per-evaluation cost (a thread
//! sleep) to emulate expensive likelihoods when benchmarking in-step
//! parallelism.
//!
//! Determinism: coordinate sums are evaluated in fixed left-to-right order,
//! so log-densities are bitwise reproducible across runs and worker counts.

use std::sync::Arc;
use std::time::Duration;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::rng::{RngKey, Stage};

/// Evaluator signature for black-box targets: a log-density up to a constant.
pub type LogDensityFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A target distribution on R^d.
#[derive(Clone)]
pub enum Target {
    /// d independent standard normal coordinates.
    ProductNormal { dim: usize },
    /// d independent standard Laplace coordinates (density e^{-|t|}/2).
    ProductLaplace { dim: usize },
    /// User-supplied log-density with an optional artificial evaluation cost.
    BlackBox {
        dim: usize,
        log_density: Arc<LogDensityFn>,
        eval_cost: Duration,
    },
}

impl std::fmt::Debug for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::ProductNormal { dim } => write!(f, "ProductNormal(d={dim})"),
            Target::ProductLaplace { dim } => write!(f, "ProductLaplace(d={dim})"),
            Target::BlackBox { dim, eval_cost, .. } => {
                write!(f, "BlackBox(d={dim}, cost={eval_cost:?})")
            }
        }
    }
}

impl Target {
    /// Product standard normal in dimension `dim`.
    pub fn product_normal(dim: usize) -> Self {
        Target::ProductNormal { dim }
    }

    /// Product standard Laplace in dimension `dim`.
    pub fn product_laplace(dim: usize) -> Self {
        Target::ProductLaplace { dim }
    }

    /// Black-box target from a log-density evaluator. `eval_cost` is slept
    /// on every evaluation (zero means no artificial cost).
    pub fn black_box(dim: usize, log_density: Arc<LogDensityFn>, eval_cost: Duration) -> Self {
        Target::BlackBox {
            dim,
            log_density,
            eval_cost,
        }
    }

    /// A black-box target with log-density identically zero (an improper
    /// flat surface); useful for exercising estimator mechanics where every
    /// candidate weight is constant.
    pub fn flat(dim: usize) -> Self {
        Target::black_box(dim, Arc::new(|_: &[f64]| 0.0), Duration::ZERO)
    }

    /// Dimension of the state space.
    pub fn dim(&self) -> usize {
        match self {
            Target::ProductNormal { dim }
            | Target::ProductLaplace { dim }
            | Target::BlackBox { dim, .. } => *dim,
        }
    }

    pub(crate) fn check_state(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        if !x.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "state coordinates",
            });
        }
        Ok(())
    }

    /// Log-density at `x` (normalized for the analytic targets). The value
    /// may be −∞ for states of zero density under a black-box target, but
    /// never NaN or +∞.
    pub fn log_density(&self, x: &[f64]) -> Result<f64> {
        self.check_state(x)?;
        match self {
            Target::ProductNormal { dim } => {
                let mut sum_sq = 0.0;
                for &t in x {
                    sum_sq += t * t;
                }
                Ok(-0.5 * sum_sq + normal_log_const(*dim))
            }
            Target::ProductLaplace { dim } => {
                let mut sum_abs = 0.0;
                for &t in x {
                    sum_abs += t.abs();
                }
                Ok(-sum_abs - (*dim as f64) * std::f64::consts::LN_2)
            }
            Target::BlackBox {
                log_density,
                eval_cost,
                ..
            } => {
                if !eval_cost.is_zero() {
                    std::thread::sleep(*eval_cost);
                }
                let v = log_density(x);
                if v.is_nan() || v == f64::INFINITY {
                    return Err(Error::NonFinite {
                        context: "black-box log-density",
                    });
                }
                Ok(v)
            }
        }
    }

    /// Exact draw from the target. Available for the analytic targets only.
    pub fn sample_exact(&self, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
        match self {
            Target::ProductNormal { dim } => Ok((0..*dim)
                .map(|_| rng.sample::<f64, _>(StandardNormal))
                .collect()),
            Target::ProductLaplace { dim } => Ok((0..*dim)
                .map(|_| {
                    let e: f64 = rng.sample(Exp1);
                    if rng.random::<bool>() {
                        e
                    } else {
                        -e
                    }
                })
                .collect()),
            Target::BlackBox { .. } => Err(Error::Unsupported(
                "exact sampling from a black-box target".into(),
            )),
        }
    }

    /// The radius q with P(‖X‖ ≤ q) = p under the target.
    ///
    /// For the product normal this is the square root of the chi-squared
    /// quantile (‖X‖² has d degrees of freedom) and `n_mc` is ignored. For
    /// the product Laplace no closed form is available, so the quantile is
    /// estimated from `n_mc` exact draws using a fixed internal seed derived
    /// from `(dim, p, n_mc)`; the result is deterministic for equal inputs.
    pub fn norm_percentile(&self, p: f64, n_mc: usize) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "percentile p={p} outside (0,1)"
            )));
        }
        match self {
            Target::ProductNormal { dim } => {
                let chi2 = ChiSquared::new(*dim as f64)
                    .map_err(|e| Error::InvalidConfig(format!("chi-squared setup: {e}")))?;
                Ok(chi2.inverse_cdf(p).sqrt())
            }
            Target::ProductLaplace { dim } => {
                if n_mc == 0 {
                    return Err(Error::InvalidConfig("n_mc must be positive".into()));
                }
                let key = RngKey::from_seed(0x6e6f_726d_7063_7449)
                    .child("norm-percentile", &[*dim as u64, p.to_bits(), n_mc as u64]);
                let mut norms = Vec::with_capacity(n_mc);
                for s in 0..n_mc {
                    let mut rng = key.stream(Stage::StateDraw, s as u64, 0);
                    let x = self.sample_exact(&mut rng)?;
                    norms.push(norm(&x));
                }
                norms.sort_by(|a, b| a.partial_cmp(b).expect("finite norms"));
                let idx = ((p * n_mc as f64).ceil() as usize).clamp(1, n_mc) - 1;
                Ok(norms[idx])
            }
            Target::BlackBox { .. } => Err(Error::Unsupported(
                "norm percentile of a black-box target".into(),
            )),
        }
    }
}

/// Euclidean norm with fixed left-to-right summation.
pub fn norm(x: &[f64]) -> f64 {
    let mut s = 0.0;
    for &t in x {
        s += t * t;
    }
    s.sqrt()
}

fn normal_log_const(dim: usize) -> f64 {
    -0.5 * (dim as f64) * (2.0 * std::f64::consts::PI).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_log_density_at_mode() {
        let t = Target::product_normal(1);
        let v = t.log_density(&[0.0]).unwrap();
        let expected = -0.5 * (2.0 * std::f64::consts::PI).ln();
        assert_eq!(v.to_bits(), expected.to_bits());
    }

    #[test]
    fn normal_log_density_quadratic_form() {
        let t = Target::product_normal(2);
        let diff = t.log_density(&[1.0, 1.0]).unwrap() - t.log_density(&[0.0, 0.0]).unwrap();
        assert!((diff + 1.0).abs() < 1e-14, "got {diff}");
    }

    #[test]
    fn laplace_log_density_exponent() {
        let t = Target::product_laplace(1);
        let diff = t.log_density(&[2.0]).unwrap() - t.log_density(&[0.0]).unwrap();
        assert!((diff + 2.0).abs() < 1e-14, "got {diff}");
    }

    #[test]
    fn log_density_rejects_bad_states() {
        let t = Target::product_normal(2);
        assert!(matches!(
            t.log_density(&[1.0]),
            Err(Error::DimensionMismatch {
                expected: 2,
                actual: 1
            })
        ));
        assert!(matches!(
            t.log_density(&[f64::NAN, 0.0]),
            Err(Error::NonFinite { .. })
        ));
        assert!(matches!(
            t.log_density(&[f64::INFINITY, 0.0]),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn exact_normal_draw_high_dim_mean() {
        let t = Target::product_normal(10_000);
        let mut rng = RngKey::from_seed(3).stream(Stage::StateDraw, 0, 0);
        let x = t.sample_exact(&mut rng).unwrap();
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        // 5 standard errors of the mean of 10^4 unit-variance coordinates.
        assert!(mean.abs() < 5.0 / (x.len() as f64).sqrt(), "mean {mean}");
    }

    #[test]
    fn exact_normal_draw_variance() {
        let t = Target::product_normal(1);
        let key = RngKey::from_seed(4);
        let n = 100_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for s in 0..n {
            let x = t
                .sample_exact(&mut key.stream(Stage::StateDraw, s, 0))
                .unwrap()[0];
            sum += x;
            sum_sq += x * x;
        }
        let var = sum_sq / n as f64 - (sum / n as f64).powi(2);
        assert!((var - 1.0).abs() < 0.05, "var {var}");
    }

    #[test]
    fn exact_laplace_draw_variance() {
        let t = Target::product_laplace(1);
        let key = RngKey::from_seed(5);
        let n = 100_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for s in 0..n {
            let x = t
                .sample_exact(&mut key.stream(Stage::StateDraw, s, 0))
                .unwrap()[0];
            sum += x;
            sum_sq += x * x;
        }
        let var = sum_sq / n as f64 - (sum / n as f64).powi(2);
        assert!((var - 2.0).abs() < 0.1, "var {var}");
    }

    #[test]
    fn black_box_has_no_exact_sampler() {
        let t = Target::flat(3);
        let mut rng = RngKey::from_seed(0).stream(Stage::StateDraw, 0, 0);
        assert!(matches!(
            t.sample_exact(&mut rng),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            t.norm_percentile(0.95, 100),
            Err(Error::Unsupported(_))
        ));
        assert_eq!(t.log_density(&[1.0, 2.0, 3.0]).unwrap(), 0.0);
    }

    #[test]
    fn norm_percentile_normal_d1() {
        // P(|X| <= q) = 0.95 for a standard normal: q = 1.959963984540054.
        let t = Target::product_normal(1);
        let q = t.norm_percentile(0.95, 1).unwrap();
        assert!((q - 1.959_963_984_540_054).abs() < 1e-3, "got {q}");
    }

    #[test]
    fn norm_percentile_monotone_in_p() {
        for t in [Target::product_normal(50), Target::product_laplace(50)] {
            let q50 = t.norm_percentile(0.5, 20_000).unwrap();
            let q95 = t.norm_percentile(0.95, 20_000).unwrap();
            assert!(q50 < q95, "{t:?}: {q50} vs {q95}");
        }
    }

    #[test]
    fn norm_percentile_rejects_bad_p() {
        let t = Target::product_normal(1);
        assert!(t.norm_percentile(0.0, 10).is_err());
        assert!(t.norm_percentile(1.0, 10).is_err());
        assert!(t.norm_percentile(-0.5, 10).is_err());
    }

    #[test]
    fn laplace_percentile_is_deterministic() {
        let t = Target::product_laplace(50);
        let a = t.norm_percentile(0.95, 10_000).unwrap();
        let b = t.norm_percentile(0.95, 10_000).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
