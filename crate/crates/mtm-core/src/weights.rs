//! Candidate weight functions and weighted selection.
//!
//! A weight function maps the log target ratio r = log π(y) − log π(x) to a
//! log-weight log g(r). Three choices are provided:
//!
//! * `Gb` — g(r) = e^r, the importance weight π(y)/π(x) (globally balanced);
//! * `Sqrt` — g(r) = e^{r/2}, the square-root weight (locally balanced);
//! * `Barker` — g(r) = e^r/(1+e^r), the Barker weight (locally balanced).
//!
//! Locally balanced means g satisfies g(r)/g(−r) = e^r, so the weight looks
//! like the plain Metropolis ratio near r = 0 but grows sub-linearly in the
//! tails.
//!
//! All arithmetic stays in log space: selection and normalization use the
//! log-sum-exp trick, so log-weights of magnitude 10^6 and beyond are handled
//! without overflow.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Weight function choices for candidate selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// Importance weight g(r) = e^r.
    Gb,
    /// Square-root weight g(r) = e^{r/2}.
    Sqrt,
    /// Barker weight g(r) = e^r / (1 + e^r).
    Barker,
}

impl WeightKind {
    /// All supported weight functions, in a fixed order.
    pub const ALL: [WeightKind; 3] = [WeightKind::Gb, WeightKind::Sqrt, WeightKind::Barker];

    /// Stable lowercase name (used in CSV output and CLI configs).
    pub fn name(self) -> &'static str {
        match self {
            WeightKind::Gb => "gb",
            WeightKind::Sqrt => "sqrt",
            WeightKind::Barker => "barker",
        }
    }

    /// Parse a name produced by [`WeightKind::name`].
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gb" => Ok(WeightKind::Gb),
            "sqrt" => Ok(WeightKind::Sqrt),
            "barker" => Ok(WeightKind::Barker),
            other => Err(Error::InvalidConfig(format!(
                "unknown weight function `{other}`"
            ))),
        }
    }

    /// True for weight functions satisfying g(r)/g(−r) = e^r.
    pub fn is_locally_balanced(self) -> bool {
        !matches!(self, WeightKind::Gb)
    }

    /// log g(r) for log target ratio `r`. `r` may be ±∞ (zero-density or
    /// overwhelming candidates); NaN is rejected.
    pub fn log_g(self, r: f64) -> Result<f64> {
        if r.is_nan() {
            return Err(Error::NonFinite {
                context: "log target ratio",
            });
        }
        Ok(match self {
            WeightKind::Gb => r,
            WeightKind::Sqrt => 0.5 * r,
            WeightKind::Barker => -softplus(-r),
        })
    }
}

/// Numerically stable softplus, log(1 + e^t). For t beyond the point where
/// e^{-t} underflows relative to 1 the identity softplus(t) = t is exact.
pub fn softplus(t: f64) -> f64 {
    if t > 36.7 {
        t
    } else {
        t.exp().ln_1p()
    }
}

/// Log of the sum of exponentials, max-shifted for stability. Returns −∞ for
/// inputs that are all −∞. For a singleton slice the result is the input
/// value, bitwise. Inputs must not contain NaN or +∞ (callers validate).
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let m = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let mut sum = 0.0;
    for &v in values {
        sum += (v - m).exp();
    }
    m + sum.ln()
}

fn validate_log_weights(log_weights: &[f64]) -> Result<()> {
    if log_weights.is_empty() {
        return Err(Error::EmptyInput("log-weights"));
    }
    for &v in log_weights {
        if v.is_nan() || v == f64::INFINITY {
            return Err(Error::NonFinite {
                context: "log-weight",
            });
        }
    }
    Ok(())
}

/// Draw an index with probability proportional to exp(log_weights[i]), using
/// a single uniform variate and the inverse-CDF method on the max-shifted
/// weights. Adding a constant to every log-weight leaves the selection
/// bitwise unchanged for the same generator state.
///
/// Log-weights of −∞ (zero weight) are valid and never selected; if all
/// weights are zero the selection is degenerate and an error is returned.
pub fn select_candidate(log_weights: &[f64], rng: &mut ChaCha8Rng) -> Result<usize> {
    validate_log_weights(log_weights)?;
    let m = log_weights
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return Err(Error::DegenerateWeights);
    }
    let mut total = 0.0;
    for &v in log_weights {
        total += (v - m).exp();
    }
    let u: f64 = rng.random();
    let threshold = u * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &v) in log_weights.iter().enumerate() {
        let w = (v - m).exp();
        if w > 0.0 {
            last_positive = i;
        }
        acc += w;
        if acc > threshold {
            return Ok(i);
        }
    }
    // Rounding can leave acc == total == threshold-adjacent; fall back to the
    // last candidate with positive weight.
    Ok(last_positive)
}

/// log of the arithmetic mean of the weights, i.e. log((1/n) Σ exp(lw_i)).
/// Returns −∞ when every weight is zero.
pub fn log_mean_weight(log_weights: &[f64]) -> Result<f64> {
    validate_log_weights(log_weights)?;
    Ok(log_sum_exp(log_weights) - (log_weights.len() as f64).ln())
}
