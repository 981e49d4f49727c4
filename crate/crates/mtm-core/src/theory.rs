//! Asymptotic acceptance and speed curves for product targets.
//!
//! For the d-dimensional product normal target with proposal scale
//! σ = ℓ / d^τ and candidate count N growing with d, the acceptance rate of
//! the multiple-try chain converges to an explicit limit ϑ(ℓ) that depends
//! only on the weight function and on whether the decay exponent τ sits at or
//! above a critical value:
//!
//! * importance weight (`Gb`): critical τ = 1/2, ϑ(ℓ) = 2Φ(−ℓ/2) at the
//!   critical exponent and ϑ = 1 above it;
//! * square-root weight (`Sqrt`): critical τ = 1/6, ϑ(ℓ) = 2Φ(−ℓ³/8) at the
//!   critical exponent and ϑ = 1 above it.
//!
//! Below the critical exponent the acceptance rate degenerates and no limit
//! curve is available; those inputs are rejected. No closed-form limit is
//! known for the Barker weight.
//!
//! The speed measure ℓ²·ϑ(ℓ) trades step size against acceptance; its
//! maximizer gives the optimal proposal scale in the limit.

use crate::error::{Error, Result};
use crate::special::erfc;
use crate::weights::WeightKind;

/// Critical scale-decay exponent for the importance weight.
pub const GB_CRITICAL_TAU: f64 = 0.5;
/// Critical scale-decay exponent for the square-root weight.
pub const SQRT_CRITICAL_TAU: f64 = 1.0 / 6.0;

/// Largest candidate count the schedule reports before saturating (2^53,
/// the largest exactly representable integer range in f64).
pub const SCHEDULE_CAP: u64 = 1 << 53;

/// Standard normal CDF, accurate to ~1e-15 relative in the bulk and
/// non-vanishing far into the tails (Φ(−38) is subnormal but positive).
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

fn critical_tau(weight: WeightKind) -> Result<f64> {
    match weight {
        WeightKind::Gb => Ok(GB_CRITICAL_TAU),
        WeightKind::Sqrt => Ok(SQRT_CRITICAL_TAU),
        WeightKind::Barker => Err(Error::Unsupported(
            "no closed-form limiting acceptance for the Barker weight".into(),
        )),
    }
}

/// Limiting acceptance rate ϑ(ℓ) for proposal scale σ = ℓ/d^τ as d → ∞.
///
/// Errors for τ below the weight's critical exponent (the chain degenerates
/// there) and for the Barker weight (no closed form).
pub fn limiting_acceptance(weight: WeightKind, tau: f64, ell: f64) -> Result<f64> {
    if !(ell > 0.0 && ell.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "scale parameter ell={ell} must be positive"
        )));
    }
    if !tau.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "decay exponent tau={tau} must be finite"
        )));
    }
    let critical = critical_tau(weight)?;
    if tau < critical {
        return Err(Error::InvalidConfig(format!(
            "tau={tau} below the critical exponent {critical} for weight `{}`",
            weight.name()
        )));
    }
    if tau > critical {
        return Ok(1.0);
    }
    Ok(match weight {
        WeightKind::Gb => 2.0 * std_normal_cdf(-ell / 2.0),
        WeightKind::Sqrt => 2.0 * std_normal_cdf(-ell.powi(3) / 8.0),
        WeightKind::Barker => unreachable!("rejected above"),
    })
}

/// Speed measure ℓ²·ϑ(ℓ): expected squared jump per coordinate in the
/// diffusion limit, up to a constant.
pub fn speed_measure(weight: WeightKind, tau: f64, ell: f64) -> Result<f64> {
    Ok(ell * ell * limiting_acceptance(weight, tau, ell)?)
}

/// Result of maximizing the speed measure over ℓ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedOptimum {
    /// Maximizing scale parameter.
    pub ell: f64,
    /// Limiting acceptance rate at the optimum.
    pub acceptance: f64,
    /// Speed measure at the optimum.
    pub speed: f64,
}

/// Maximize the speed measure at the weight's critical exponent over
/// ℓ ∈ [1e-3, 20], by golden-section search to an interval of width 1e-6.
///
/// Ties and flat stretches keep the left subinterval: the speed measure
/// underflows to exactly zero for large ℓ at critical τ, and preferring the
/// left side prevents the search from wandering into that flat tail.
pub fn optimize_speed(weight: WeightKind) -> Result<SpeedOptimum> {
    let tau = critical_tau(weight)?;
    let f = |ell: f64| speed_measure(weight, tau, ell);
    // Validate the inputs once up front so the search can unwrap.
    f(1.0)?;
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (1e-3, 20.0);
    let tol = 1e-6;
    let mut c1 = b - inv_phi * (b - a);
    let mut c2 = a + inv_phi * (b - a);
    let mut f1 = f(c1).expect("validated domain");
    let mut f2 = f(c2).expect("validated domain");
    while b - a > tol {
        if f1 >= f2 {
            // Maximum lies in [a, c2] (left preference on ties).
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - inv_phi * (b - a);
            f1 = f(c1).expect("validated domain");
        } else {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + inv_phi * (b - a);
            f2 = f(c2).expect("validated domain");
        }
    }
    let ell = 0.5 * (a + b);
    Ok(SpeedOptimum {
        ell,
        acceptance: limiting_acceptance(weight, tau, ell)?,
        speed: speed_measure(weight, tau, ell)?,
    })
}

/// Upper bound on the acceptance probability of the importance-weight chain
/// with unbounded candidate pool, at state x with ‖x‖ = `norm_x`, proposal
/// scale σ and dimension d:
///
/// exp(−‖x‖²(σ²+σ⁴) / [2(1+σ²)((1+σ²)²−σ²)]) · (1 − σ²/(1+σ²)²)^(−d/2).
///
/// The bound exceeds 1 near the mode but collapses exponentially in ‖x‖²,
/// which is what forces vanishing acceptance rates from the tails.
pub fn gb_acceptance_bound(norm_x: f64, sigma: f64, dim: usize) -> Result<f64> {
    if !(norm_x >= 0.0 && norm_x.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "norm_x={norm_x} must be non-negative"
        )));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "sigma={sigma} must be positive"
        )));
    }
    if dim == 0 {
        return Err(Error::InvalidConfig("dimension must be positive".into()));
    }
    let s2 = sigma * sigma;
    let one_plus = 1.0 + s2;
    let denom = 2.0 * one_plus * (one_plus * one_plus - s2);
    let decay = (-norm_x * norm_x * (s2 + s2 * s2) / denom).exp();
    let growth = (1.0 - s2 / (one_plus * one_plus)).powf(-(dim as f64) / 2.0);
    Ok(decay * growth)
}

/// Candidate count needed in dimension d for the acceptance limit to hold.
///
/// At or above τ = 1/2 polynomial growth with any margin ρ > 0 suffices:
/// N = ⌈d^{4τ(1+ρ)}⌉. Below it the pool must grow exponentially:
/// N = ⌈(1+ν)^d⌉ with ν > 0. Counts are capped at 2^53.
///
/// Floating-point powers that land within 1e-9 (relative) of an integer are
/// snapped to it before taking the ceiling, so exact powers like 10³ do not
/// round up from representation error.
pub fn candidate_schedule(tau: f64, dim: usize, rho: f64, nu: f64) -> Result<u64> {
    for (name, v) in [("rho", rho), ("nu", nu)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "growth margin {name}={v} must be positive"
            )));
        }
    }
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "decay exponent tau={tau} must be positive"
        )));
    }
    if dim == 0 {
        return Err(Error::InvalidConfig("dimension must be positive".into()));
    }
    let d = dim as f64;
    let log2_n = if tau >= 0.5 {
        4.0 * tau * (1.0 + rho) * d.log2()
    } else {
        d * (1.0 + nu).log2()
    };
    if log2_n >= 53.0 {
        return Ok(SCHEDULE_CAP);
    }
    let raw = log2_n.exp2();
    let nearest = raw.round();
    let snapped = if (raw - nearest).abs() <= 1e-9 * raw.max(1.0) {
        nearest
    } else {
        raw
    };
    Ok(snapped.ceil() as u64)
}

/// Which closed-form curve a [`TheoryCurve`] tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoryCurveKind {
    /// Limiting acceptance of the importance weight at its critical decay.
    ThetaGb,
    /// Limiting acceptance of the square-root weight at its critical decay.
    ThetaLb,
    /// ℓ²·ϑ for the importance weight.
    SpeedGb,
    /// ℓ²·ϑ for the square-root weight.
    SpeedLb,
    /// Tail acceptance bound as a function of ‖x‖ at fixed (σ, d).
    Prop2Bound,
}

impl TheoryCurveKind {
    pub fn name(&self) -> &'static str {
        match self {
            TheoryCurveKind::ThetaGb => "theta-gb",
            TheoryCurveKind::ThetaLb => "theta-lb",
            TheoryCurveKind::SpeedGb => "speed-gb",
            TheoryCurveKind::SpeedLb => "speed-lb",
            TheoryCurveKind::Prop2Bound => "tail-bound",
        }
    }
}

/// A tabulated closed-form curve: `values[i]` evaluated at `parameters[i]`
/// (an ℓ grid for the acceptance/speed curves, a ‖x‖ grid for the tail
/// bound).
#[derive(Debug, Clone, PartialEq)]
pub struct TheoryCurve {
    pub kind: TheoryCurveKind,
    pub parameters: Vec<f64>,
    pub values: Vec<f64>,
}

fn curve_weight(weight: WeightKind) -> Result<(TheoryCurveKind, TheoryCurveKind, f64)> {
    match weight {
        WeightKind::Gb => Ok((
            TheoryCurveKind::ThetaGb,
            TheoryCurveKind::SpeedGb,
            GB_CRITICAL_TAU,
        )),
        WeightKind::Sqrt => Ok((
            TheoryCurveKind::ThetaLb,
            TheoryCurveKind::SpeedLb,
            SQRT_CRITICAL_TAU,
        )),
        WeightKind::Barker => Err(Error::Unsupported(
            "no closed-form limiting acceptance for the bounded weight".to_string(),
        )),
    }
}

fn tabulate(
    kind: TheoryCurveKind,
    grid: &[f64],
    f: impl Fn(f64) -> Result<f64>,
) -> Result<TheoryCurve> {
    if grid.is_empty() {
        return Err(Error::EmptyInput("curve parameter grid"));
    }
    let mut values = Vec::with_capacity(grid.len());
    for &p in grid {
        let v = f(p)?;
        if !v.is_finite() {
            return Err(Error::NonFinite {
                context: "theory curve value",
            });
        }
        values.push(v);
    }
    Ok(TheoryCurve {
        kind,
        parameters: grid.to_vec(),
        values,
    })
}

/// Limiting acceptance curve over an ℓ grid, at the weight's critical decay
/// exponent.
pub fn theta_curve(weight: WeightKind, ell_grid: &[f64]) -> Result<TheoryCurve> {
    let (kind, _, tau) = curve_weight(weight)?;
    tabulate(kind, ell_grid, |ell| limiting_acceptance(weight, tau, ell))
}

/// Speed-measure curve ℓ²·ϑ over an ℓ grid, at the weight's critical decay
/// exponent.
pub fn speed_curve(weight: WeightKind, ell_grid: &[f64]) -> Result<TheoryCurve> {
    let (_, kind, tau) = curve_weight(weight)?;
    tabulate(kind, ell_grid, |ell| speed_measure(weight, tau, ell))
}

/// Tail acceptance bound over a ‖x‖ grid at fixed scale and dimension.
pub fn tail_bound_curve(norm_grid: &[f64], sigma: f64, dim: usize) -> Result<TheoryCurve> {
    tabulate(TheoryCurveKind::Prop2Bound, norm_grid, |norm_x| {
        gb_acceptance_bound(norm_x, sigma, dim)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_cdf_reference_values() {
        assert!((std_normal_cdf(0.0) - 0.5).abs() < 1e-15);
        assert!((std_normal_cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-12);
        assert!((2.0 * std_normal_cdf(-0.5) - 0.617_075_077_451_974_3).abs() < 1e-12);
        let deep = std_normal_cdf(-38.0);
        assert!(deep > 0.0 && deep < 1e-300, "got {deep:e}");
        assert!((std_normal_cdf(8.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn limiting_acceptance_regimes() {
        // At the critical exponent the curve is the closed form.
        let v = limiting_acceptance(WeightKind::Gb, 0.5, 1.0).unwrap();
        assert!((v - 0.617_075_077_451_974_3).abs() < 1e-12, "got {v}");
        let v = limiting_acceptance(WeightKind::Sqrt, 1.0 / 6.0, 2.0).unwrap();
        assert!((v - 2.0 * std_normal_cdf(-1.0)).abs() < 1e-15);
        // Above it every scale is accepted in the limit.
        assert_eq!(limiting_acceptance(WeightKind::Gb, 0.75, 5.0).unwrap(), 1.0);
        assert_eq!(
            limiting_acceptance(WeightKind::Sqrt, 0.5, 5.0).unwrap(),
            1.0
        );
        // Below it the chain degenerates.
        assert!(limiting_acceptance(WeightKind::Gb, 0.49, 1.0).is_err());
        assert!(limiting_acceptance(WeightKind::Sqrt, 0.1, 1.0).is_err());
        // No closed form for Barker.
        assert!(matches!(
            limiting_acceptance(WeightKind::Barker, 0.5, 1.0),
            Err(Error::Unsupported(_))
        ));
        assert!(limiting_acceptance(WeightKind::Gb, 0.5, 0.0).is_err());
        assert!(limiting_acceptance(WeightKind::Gb, 0.5, f64::INFINITY).is_err());
    }

    #[test]
    fn speed_is_ell_squared_above_critical() {
        for ell in [0.3, 1.7, 12.5] {
            let v = speed_measure(WeightKind::Sqrt, 0.5, ell).unwrap();
            assert_eq!(v.to_bits(), (ell * ell).to_bits());
        }
    }

    #[test]
    fn frozen_speed_optima_gb() {
        let opt = optimize_speed(WeightKind::Gb).unwrap();
        assert!((opt.ell - 2.381_202_496_9).abs() < 1e-4, "ell {}", opt.ell);
        assert!(
            (opt.acceptance - 0.233_810_161_3).abs() < 1e-6,
            "acc {}",
            opt.acceptance
        );
        assert!((opt.speed - opt.ell * opt.ell * opt.acceptance).abs() < 1e-12);
        // Local-max sanity: nudging ℓ either way loses speed.
        let s = |ell| speed_measure(WeightKind::Gb, 0.5, ell).unwrap();
        assert!(s(opt.ell - 0.1) < opt.speed && s(opt.ell + 0.1) < opt.speed);
    }

    #[test]
    fn frozen_speed_optima_sqrt() {
        let opt = optimize_speed(WeightKind::Sqrt).unwrap();
        assert!(
            (opt.ell - 1.650_302_430_945).abs() < 1e-4,
            "ell {}",
            opt.ell
        );
        assert!(
            (opt.acceptance - 0.574_235_635_530).abs() < 1e-6,
            "acc {}",
            opt.acceptance
        );
        assert!(optimize_speed(WeightKind::Barker).is_err());
    }

    #[test]
    fn acceptance_bound_values() {
        let v = gb_acceptance_bound(0.0, 1.0, 2).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-14, "got {v}");
        let tail = gb_acceptance_bound(100.0, 1.0, 50).unwrap();
        assert!(tail < 1e-6, "got {tail:e}");
        for (sigma, dim) in [(0.1, 1), (1.0, 7), (3.0, 100)] {
            assert!(gb_acceptance_bound(0.0, sigma, dim).unwrap() >= 1.0);
        }
        assert!(gb_acceptance_bound(-1.0, 1.0, 2).is_err());
        assert!(gb_acceptance_bound(0.0, 0.0, 2).is_err());
        assert!(gb_acceptance_bound(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn schedule_examples() {
        // Exact power: 10^(4·0.5·1.5) = 10^3, no ceiling creep.
        assert_eq!(candidate_schedule(0.5, 10, 0.5, 1.0).unwrap(), 1000);
        // Just above an exact power: 4^(2+2e-9) is genuinely > 16,
        // and the result dominates the margin-free count d^{4τ} = 16.
        let n = candidate_schedule(0.5, 4, 1e-9, 1.0).unwrap();
        assert_eq!(n, 17);
        assert!(n >= 16);
        // Sub-critical exponent: exponential schedule ⌈(1+ν)^d⌉.
        assert_eq!(candidate_schedule(1.0 / 6.0, 50, 0.5, 0.1).unwrap(), 118);
        assert_eq!(candidate_schedule(0.25, 10, 0.5, 1.0).unwrap(), 1024);
        // Saturation.
        assert_eq!(
            candidate_schedule(0.5, 1_000_000, 0.5, 1.0).unwrap(),
            SCHEDULE_CAP
        );
        assert_eq!(candidate_schedule(0.1, 64, 0.5, 1.0).unwrap(), SCHEDULE_CAP);
        // d = 1 needs a single candidate on the polynomial branch.
        assert_eq!(candidate_schedule(0.5, 1, 0.5, 1.0).unwrap(), 1);
        assert!(candidate_schedule(0.5, 10, 0.0, 1.0).is_err());
        assert!(candidate_schedule(0.5, 10, 0.5, -1.0).is_err());
        assert!(candidate_schedule(0.0, 10, 0.5, 1.0).is_err());
        assert!(candidate_schedule(0.5, 0, 0.5, 1.0).is_err());
    }

    #[test]
    fn curves_match_pointwise_evaluations() {
        // The square-root curve 2Φ(−ℓ³/8) underflows f64 past ℓ ≈ 6.8, so
        // its positivity grid stops short of the importance-weight one.
        let cases = [
            (WeightKind::Gb, [0.5, 1.0, 2.0, 5.0, 19.0]),
            (WeightKind::Sqrt, [0.5, 1.0, 2.0, 4.0, 6.0]),
        ];
        for (weight, grid) in cases {
            let tau = critical_tau(weight).unwrap();
            let theta = theta_curve(weight, &grid).unwrap();
            let speed = speed_curve(weight, &grid).unwrap();
            assert_eq!(theta.parameters, grid.to_vec());
            for (i, &ell) in grid.iter().enumerate() {
                assert_eq!(
                    theta.values[i],
                    limiting_acceptance(weight, tau, ell).unwrap()
                );
                assert_eq!(speed.values[i], speed_measure(weight, tau, ell).unwrap());
                assert!(theta.values[i] > 0.0 && theta.values[i] <= 1.0);
                assert!(speed.values[i] >= 0.0);
            }
        }
        let bound = tail_bound_curve(&[0.0, 1.0, 10.0], 1.0, 2).unwrap();
        assert_eq!(bound.kind, TheoryCurveKind::Prop2Bound);
        assert_eq!(bound.values[0], 4.0 / 3.0);
        assert!(bound.values[2] < bound.values[1]);
    }

    #[test]
    fn curve_kinds_and_errors() {
        assert_eq!(TheoryCurveKind::ThetaGb.name(), "theta-gb");
        assert_eq!(TheoryCurveKind::SpeedLb.name(), "speed-lb");
        assert!(matches!(
            theta_curve(WeightKind::Barker, &[1.0]),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            theta_curve(WeightKind::Gb, &[]),
            Err(Error::EmptyInput(_))
        ));
        // A grid point below the critical regime propagates the error.
        assert!(theta_curve(WeightKind::Gb, &[0.0]).is_err());
    }
}
