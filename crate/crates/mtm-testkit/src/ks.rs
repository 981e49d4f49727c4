//! Two-sided one-sample Kolmogorov–Smirnov statistic and asymptotic critical
//! values.

/// KS statistic of `samples` against the continuous CDF `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    assert!(!samples.is_empty());
    let mut s = samples.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).expect("non-finite sample"));
    let n = s.len() as f64;
    let mut d = 0.0_f64;
    for (i, &v) in s.iter().enumerate() {
        let c = cdf(v);
        d = d.max((i as f64 + 1.0) / n - c).max(c - i as f64 / n);
    }
    d
}

/// Asymptotic two-sided critical value at significance `alpha` for `n`
/// i.i.d. samples: sqrt(-ln(alpha/2) / 2) / sqrt(n).
pub fn ks_critical(n: usize, alpha: f64) -> f64 {
    ((-(alpha / 2.0).ln()) / 2.0).sqrt() / (n as f64).sqrt()
}
