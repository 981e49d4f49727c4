//! Properties of the weight functions and the candidate selection rule.

use mtm_core::weights::{log_sum_exp, select_candidate, WeightKind};
use mtm_core::{RngKey, Stage};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn local_balance_identity_over_the_working_range() {
    // log g(e^r) − log g(e^{−r}) = r characterizes the locally balanced
    // weights; checked on 10³ deterministic pseudo-random points of
    // [−50, 50] at the documented 1e−12 tolerance.
    let key = RngKey::from_seed(0x62616c616e636564);
    let mut rng = key.stream(Stage::StateDraw, 0, 0);
    for kind in [WeightKind::Sqrt, WeightKind::Barker] {
        for _ in 0..1_000 {
            let r: f64 = rng.random_range(-50.0..50.0);
            let gap = kind.log_g(r).unwrap() - kind.log_g(-r).unwrap() - r;
            assert!(gap.abs() <= 1e-12, "{kind:?} at r={r}: residual {gap}");
        }
    }
}

#[test]
fn selection_frequencies_are_shift_invariant() {
    // Shifting every log weight by a constant leaves the categorical
    // distribution unchanged. The probabilities match up to the rounding
    // of the shifted entries (ulp of the shift magnitude) and fresh-stream
    // empirical frequencies stay within 3 binomial standard errors.
    let key = RngKey::from_seed(0x7365656b73686966);
    let lw = [0.3, -1.2, 2.0, 0.0, -0.4];
    let probs = |w: &[f64]| -> Vec<f64> {
        let z = log_sum_exp(w);
        w.iter().map(|&v| (v - z).exp()).collect()
    };
    let base = probs(&lw);
    for (case, shift) in [(0u64, -1e6), (1, 37.5), (2, 1e6)].into_iter() {
        let shifted: Vec<f64> = lw.iter().map(|&v| v + shift).collect();
        let moved = probs(&shifted);
        for (a, b) in base.iter().zip(&moved) {
            assert!((a - b).abs() <= 1e-9, "shift {shift}: {a} vs {b}");
        }

        let n = 100_000u32;
        let mut counts = [0u32; 5];
        for t in 0..n {
            let mut rng = key.stream(Stage::Select, (case << 32) | t as u64, 0);
            counts[select_candidate(&shifted, &mut rng).unwrap()] += 1;
        }
        for (i, &c) in counts.iter().enumerate() {
            let p = base[i];
            let se = (p * (1.0 - p) / n as f64).sqrt();
            let freq = c as f64 / n as f64;
            assert!(
                (freq - p).abs() <= 3.0 * se,
                "shift {shift}, index {i}: frequency {freq} vs probability {p} (se {se})"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    // The bounded weight never exceeds probability one and saturates from
    // below as the density ratio grows.
    #[test]
    fn barker_log_weight_is_nonpositive(r in -1e6f64..1e6) {
        let v = WeightKind::Barker.log_g(r).unwrap();
        prop_assert!(v <= 0.0, "log g({r}) = {v} > 0");
    }

    #[test]
    fn barker_log_weight_is_monotone(r in -700.0f64..700.0, step in 1e-3f64..10.0) {
        let lo = WeightKind::Barker.log_g(r).unwrap();
        let hi = WeightKind::Barker.log_g(r + step).unwrap();
        prop_assert!(hi >= lo);
    }
}

#[test]
fn barker_log_weight_approaches_zero() {
    let near = WeightKind::Barker.log_g(50.0).unwrap();
    assert!(near < 0.0 && near > -1e-20, "log g(50) = {near}");
    assert_eq!(WeightKind::Barker.log_g(800.0).unwrap(), 0.0);
}
