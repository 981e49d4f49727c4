//! The seven experiment scenarios. Each resolves its config schema, runs its
//! parameter grid (cells fan out over `--workers` threads; every cell derives
//! its random streams from its own parameters, so results never depend on the
//! worker count or cell order), and returns a CSV table.

use sha2::{Digest, Sha256};
use std::time::{Duration, Instant};

use mtm_core::kernel::{MtmConfig, Scale};
use mtm_core::parallel::map_indexed;
use mtm_core::weights::WeightKind;
use mtm_core::{
    convergence_time, esjd, expected_acceptance_at, limiting_acceptance, run_chain, speed_curve,
    stationary_acceptance_rate, theta_curve, weight_normalization_discrepancy, AdaptationConfig,
    ConvergenceTime, EstimateWithError, RngKey, SamplerSpec, ScaleAdapter, Target, GB_CRITICAL_TAU,
    SQRT_CRITICAL_TAU,
};

use crate::config::{AppError, ConfigMap, Pool, TargetKind};
use crate::emit::{str_cell, Cell, Table};

/// Adaptation controls passed from the command line.
#[derive(Debug, Clone, Copy, Default)]
pub struct AdaptFlags {
    pub target_rate: Option<f64>,
    pub gamma_exp: Option<f64>,
    pub ell0: Option<f64>,
}

fn root_key(scenario: &str, seed: u64) -> RngKey {
    RngKey::from_seed(seed).child(scenario, &[])
}

/// Run `cells.len()` independent jobs over the worker pool and collect their
/// row batches in cell order.
fn run_cells<C: Sync>(
    workers: usize,
    cells: &[C],
    job: impl Fn(&C) -> Result<Vec<Vec<Cell>>, AppError> + Sync + Send,
) -> Result<Vec<Vec<Cell>>, AppError> {
    let batches: Vec<Result<Vec<Vec<Cell>>, AppError>> =
        map_indexed(workers, cells.len(), |i| job(&cells[i]));
    let mut rows = Vec::new();
    for batch in batches {
        rows.extend(batch?);
    }
    Ok(rows)
}

fn ideal_sampler(weight: WeightKind, sigma: f64) -> Result<SamplerSpec, AppError> {
    match weight {
        WeightKind::Gb => Ok(SamplerSpec::IdealGb { sigma }),
        WeightKind::Sqrt => Ok(SamplerSpec::IdealLbSqrt { sigma }),
        WeightKind::Barker => Err(AppError::Config(
            "the bounded (barker) weight has no closed-form unbounded-pool scheme; \
             remove `ideal` from the pool grid or `barker` from the weight grid"
                .into(),
        )),
    }
}

/// Expected acceptance at tail states x = (d^{κ−1/2}, …) over a
/// (weight × d × pool × κ) grid, σ = ℓ/√d. Streams are shared across κ so
/// each curve is read off common random numbers.
pub fn tail_acceptance(
    mut cfg: ConfigMap,
    seed: u64,
    workers: usize,
    paper_scale: bool,
) -> Result<Table, AppError> {
    let target_kind = cfg.get_target("target")?;
    let dims = cfg.get_usize_list("d", &[5, 50])?;
    let weights = cfg.get_weights(
        "weight",
        &[WeightKind::Gb, WeightKind::Sqrt, WeightKind::Barker],
    )?;
    let pools = cfg.get_pool_list(
        "n",
        &[
            Pool::Finite(1),
            Pool::Finite(5),
            Pool::Finite(50),
            Pool::Finite(500),
        ],
    )?;
    let kappas = cfg.get_f64_list(
        "kappa",
        &[
            0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2,
        ],
    )?;
    let ell = cfg.get_f64("ell", 2.38)?;
    let n_samples = cfg.get_usize("n-samples", if paper_scale { 1_000_000 } else { 100_000 })?;
    cfg.finish()?;

    if pools.contains(&Pool::Ideal) {
        if weights.contains(&WeightKind::Barker) {
            ideal_sampler(WeightKind::Barker, 1.0)?;
        }
        if target_kind == TargetKind::Laplace {
            return Err(AppError::Config(
                "unbounded-pool schemes are closed-form for the normal target only".into(),
            ));
        }
    }

    let key = root_key("tail-acceptance", seed);
    let mut cells = Vec::new();
    for &weight in &weights {
        for &d in &dims {
            for &pool in &pools {
                for &kappa in &kappas {
                    cells.push((weight, d, pool, kappa));
                }
            }
        }
    }

    let mut table = Table::new(vec![
        "scenario",
        "seed",
        "n_samples",
        "target",
        "weight",
        "sampler",
        "d",
        "n_candidates",
        "kappa",
        "ell",
        "sigma",
        "estimate",
        "std_error",
    ]);
    let rows = run_cells(workers, &cells, |&(weight, d, pool, kappa)| {
        let sigma = ell / (d as f64).sqrt();
        let target = target_kind.build(d);
        let x = vec![(d as f64).powf(kappa - 0.5); d];
        let pool_word = match pool {
            Pool::Finite(n) => n as u64,
            Pool::Ideal => u64::MAX,
        };
        let sampler = match pool {
            Pool::Finite(n) => SamplerSpec::Mtm(MtmConfig::new(n, Scale::Sigma(sigma), weight)),
            Pool::Ideal => ideal_sampler(weight, sigma)?,
        };
        // Key excludes κ: the curve over κ shares candidate draws.
        let cell_key = key.child(weight.name(), &[d as u64, pool_word]);
        let est = expected_acceptance_at(&x, &sampler, &target, n_samples, &cell_key)?;
        Ok(vec![vec![
            str_cell("tail-acceptance"),
            Cell::UInt(seed),
            Cell::UInt(n_samples as u64),
            str_cell(target_kind.name()),
            str_cell(weight.name()),
            str_cell(sampler.name()),
            Cell::UInt(d as u64),
            match pool {
                Pool::Finite(n) => Cell::UInt(n as u64),
                Pool::Ideal => Cell::Empty,
            },
            Cell::Float(kappa),
            Cell::Float(ell),
            Cell::Float(sigma),
            Cell::Float(est.value),
            Cell::Float(est.std_error),
        ]])
    })?;
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

/// Adaptive chains from (10,…,10): per (weight, N, replicate), time to enter
/// the 95th-percentile norm ball, with the tuned scale trajectory's endpoint.
pub fn adaptive_convergence(
    mut cfg: ConfigMap,
    seed: u64,
    workers: usize,
    paper_scale: bool,
    flags: AdaptFlags,
) -> Result<Table, AppError> {
    let target_kind = cfg.get_target("target")?;
    let d = cfg.get_usize("d", 50)?;
    let weights = cfg.get_weights("weight", &[WeightKind::Sqrt, WeightKind::Gb])?;
    let pools = cfg.get_usize_list("n", &[1, 5, 50, 500])?;
    let replicates = cfg.get_usize("replicates", if paper_scale { 100 } else { 20 })?;
    let max_steps = cfg.get_usize("max-steps", 6_000)?;
    cfg.finish()?;

    let ell0 = flags.ell0.unwrap_or(2.38);
    let target = target_kind.build(d);
    let threshold = target.norm_percentile(0.95, 50_000)?;
    let init = vec![10.0; d];
    let key = root_key("adaptive-convergence", seed);

    let mut cells = Vec::new();
    for &weight in &weights {
        for &n in &pools {
            for rep in 0..replicates {
                cells.push((weight, n, rep));
            }
        }
    }

    let mut table = Table::new(vec![
        "scenario",
        "seed",
        "n_samples",
        "target",
        "weight",
        "n_candidates",
        "replicate",
        "threshold",
        "converged",
        "convergence_time",
        "final_ell",
    ]);
    let rows = run_cells(workers, &cells, |&(weight, n, rep)| {
        let mut adapt_cfg = AdaptationConfig::for_weight(weight).with_initial_ell(ell0);
        if let Some(rate) = flags.target_rate {
            adapt_cfg = adapt_cfg.with_target_rate(rate);
        }
        if let Some(exp) = flags.gamma_exp {
            adapt_cfg.learning_exponent = exp;
        }
        let mut adapter = ScaleAdapter::new(adapt_cfg)?;
        let chain_cfg = MtmConfig::new(
            n,
            Scale::Ell {
                ell: ell0,
                tau: 0.5,
            },
            weight,
        );
        // Key excludes N: candidate-count cells share replicate streams.
        let rep_key = key.child(weight.name(), &[rep as u64]);
        let trace = run_chain(
            &init,
            &chain_cfg,
            &target,
            max_steps,
            &rep_key,
            Some(&mut adapter),
        )?;
        let (converged, time_cell) = match convergence_time(&trace, threshold)? {
            ConvergenceTime::At(m) => (true, Cell::UInt(m as u64)),
            ConvergenceTime::NotConverged => (false, Cell::Empty),
        };
        Ok(vec![vec![
            str_cell("adaptive-convergence"),
            Cell::UInt(seed),
            Cell::UInt(max_steps as u64),
            str_cell(target_kind.name()),
            str_cell(weight.name()),
            Cell::UInt(n as u64),
            Cell::UInt(rep as u64),
            Cell::Float(threshold),
            Cell::Bool(converged),
            time_cell,
            Cell::Float(adapter.current_ell()),
        ]])
    })?;
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

/// Stationary acceptance of the unbounded-pool schemes as dimension grows,
/// at σ = ℓ/d^τ, with the theoretical limit as a reference column.
pub fn acc_rate_vs_d(
    mut cfg: ConfigMap,
    seed: u64,
    workers: usize,
    paper_scale: bool,
) -> Result<Table, AppError> {
    let weights = cfg.get_weights("weight", &[WeightKind::Gb, WeightKind::Sqrt])?;
    if weights.contains(&WeightKind::Barker) {
        ideal_sampler(WeightKind::Barker, 1.0)?;
    }
    let taus_gb = cfg.get_f64_list("tau-gb", &[0.4, 0.5, 0.6])?;
    let taus_lb = cfg.get_f64_list("tau-lb", &[2.0 / 15.0, 1.0 / 6.0, 0.4])?;
    let dims = cfg.get_usize_list("d", &[10, 100, 1_000])?;
    let ell_gb = cfg.get_f64("ell-gb", 1.0)?;
    let ell_lb = cfg.get_f64("ell-lb", 2f64.powf(2.0 / 3.0))?;
    let n_samples = cfg.get_usize("n-samples", if paper_scale { 100_000 } else { 10_000 })?;
    cfg.finish()?;

    let key = root_key("acc-rate-vs-d", seed);
    let mut cells = Vec::new();
    for &weight in &weights {
        let (taus, ell) = match weight {
            WeightKind::Gb => (&taus_gb, ell_gb),
            WeightKind::Sqrt => (&taus_lb, ell_lb),
            WeightKind::Barker => unreachable!("rejected above"),
        };
        for &tau in taus {
            for &d in &dims {
                cells.push((weight, tau, ell, d));
            }
        }
    }

    let mut table = Table::new(vec![
        "scenario",
        "seed",
        "n_samples",
        "target",
        "weight",
        "tau",
        "ell",
        "d",
        "sigma",
        "estimate",
        "std_error",
        "limit",
    ]);
    let rows = run_cells(workers, &cells, |&(weight, tau, ell, d)| {
        let sigma = ell / (d as f64).powf(tau);
        let sampler = ideal_sampler(weight, sigma)?;
        let target = Target::product_normal(d);
        // Key excludes d: each τ-curve shares draws along the dimension sweep.
        let cell_key = key.child(weight.name(), &[tau.to_bits()]);
        let est = stationary_acceptance_rate(&sampler, &target, n_samples, &cell_key)?;
        let critical = match weight {
            WeightKind::Gb => GB_CRITICAL_TAU,
            _ => SQRT_CRITICAL_TAU,
        };
        let limit = if (tau - critical).abs() <= 1e-12 {
            limiting_acceptance(weight, critical, ell)?
        } else if tau > critical {
            1.0
        } else {
            0.0
        };
        Ok(vec![vec![
            str_cell("acc-rate-vs-d"),
            Cell::UInt(seed),
            Cell::UInt(n_samples as u64),
            str_cell("normal"),
            str_cell(weight.name()),
            Cell::Float(tau),
            Cell::Float(ell),
            Cell::UInt(d as u64),
            Cell::Float(sigma),
            Cell::Float(est.value),
            Cell::Float(est.std_error),
            Cell::Float(limit),
        ]])
    })?;
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

/// Stationary expected squared jump per (weight, N, ℓ) at σ = ℓ/√d.
/// Streams are shared across ℓ so each curve's argmax is read off common
/// random numbers.
pub fn esjd_sweep(
    mut cfg: ConfigMap,
    seed: u64,
    workers: usize,
    paper_scale: bool,
) -> Result<Table, AppError> {
    let target_kind = cfg.get_target("target")?;
    let d = cfg.get_usize("d", 50)?;
    let weights = cfg.get_weights(
        "weight",
        &[WeightKind::Gb, WeightKind::Sqrt, WeightKind::Barker],
    )?;
    let pools = cfg.get_usize_list("n", &[1, 5, 50])?;
    let ells = cfg.get_f64_list(
        "ell",
        &[
            2.0, 2.2, 2.4, 2.6, 2.8, 3.0, 3.2, 3.4, 3.6, 3.8, 4.0, 4.2, 4.4, 4.6,
        ],
    )?;
    let n_samples = cfg.get_usize("n-samples", if paper_scale { 100_000 } else { 20_000 })?;
    cfg.finish()?;

    let key = root_key("esjd-sweep", seed);
    let target = target_kind.build(d);
    let mut cells = Vec::new();
    for &weight in &weights {
        for &n in &pools {
            for &ell in &ells {
                cells.push((weight, n, ell));
            }
        }
    }

    let mut table = Table::new(vec![
        "scenario",
        "seed",
        "n_samples",
        "target",
        "weight",
        "d",
        "n_candidates",
        "ell",
        "sigma",
        "estimate",
        "std_error",
    ]);
    let rows = run_cells(workers, &cells, |&(weight, n, ell)| {
        let sampler = SamplerSpec::Mtm(MtmConfig::new(n, Scale::Ell { ell, tau: 0.5 }, weight));
        // Key excludes ℓ.
        let cell_key = key.child(weight.name(), &[n as u64]);
        let est = esjd(&sampler, &target, n_samples, &cell_key)?;
        Ok(vec![vec![
            str_cell("esjd-sweep"),
            Cell::UInt(seed),
            Cell::UInt(n_samples as u64),
            str_cell(target_kind.name()),
            str_cell(weight.name()),
            Cell::UInt(d as u64),
            Cell::UInt(n as u64),
            Cell::Float(ell),
            Cell::Float(ell / (d as f64).sqrt()),
            Cell::Float(est.value),
            Cell::Float(est.std_error),
        ]])
    })?;
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

/// Closed-form limiting-acceptance and speed curves over an ℓ grid — no
/// sampling, n_samples reported as 0.
pub fn speed_curves(mut cfg: ConfigMap, seed: u64) -> Result<Table, AppError> {
    let weights = cfg.get_weights("weight", &[WeightKind::Gb, WeightKind::Sqrt])?;
    let ell_min = cfg.get_f64("ell-min", 0.1)?;
    let ell_max = cfg.get_f64("ell-max", 6.0)?;
    let ell_step = cfg.get_f64("ell-step", 0.1)?;
    cfg.finish()?;
    if weights.contains(&WeightKind::Barker) {
        return Err(AppError::Config(
            "no closed-form limiting curves for the bounded (barker) weight".into(),
        ));
    }
    if ell_min <= 0.0 || ell_step <= 0.0 || ell_max < ell_min {
        return Err(AppError::Config(format!(
            "ℓ grid must satisfy 0 < ell-min ≤ ell-max with ell-step > 0 \
             (got {ell_min}, {ell_max}, {ell_step})"
        )));
    }
    let mut grid = Vec::new();
    let mut k = 0u64;
    loop {
        let ell = ell_min + ell_step * k as f64;
        if ell > ell_max + 1e-12 {
            break;
        }
        grid.push(ell);
        k += 1;
    }

    let mut table = Table::new(vec![
        "scenario",
        "seed",
        "n_samples",
        "kind",
        "ell",
        "value",
    ]);
    for &weight in &weights {
        for curve in [theta_curve(weight, &grid)?, speed_curve(weight, &grid)?] {
            for (&ell, &value) in curve.parameters.iter().zip(&curve.values) {
                table.push(vec![
                    str_cell("speed-curves"),
                    Cell::UInt(seed),
                    Cell::UInt(0),
                    str_cell(curve.kind.name()),
                    Cell::Float(ell),
                    Cell::Float(value),
                ]);
            }
        }
    }
    Ok(table)
}

/// Finite-pool samplers against their unbounded-pool limit at a fixed
/// reference state: proposal-mean gap, acceptance, and the normalization
/// discrepancy, per candidate count (plain baseline and limit rows included).
pub fn mtm_vs_ideal(
    mut cfg: ConfigMap,
    seed: u64,
    workers: usize,
    paper_scale: bool,
) -> Result<Table, AppError> {
    let weight = crate::config::parse_weight(&cfg.get_str("weight", "gb"))?;
    if weight == WeightKind::Barker {
        return Err(AppError::Config(
            "the comparison needs the closed-form unbounded-pool scheme; use gb or sqrt".into(),
        ));
    }
    let x_ref = cfg.get_f64("x-ref", 1.0)?;
    let n_samples = cfg.get_usize("n-samples", if paper_scale { 100_000 } else { 20_000 })?;

    // Either an explicit candidate grid at one (d, σ), or the theoretical
    // candidate schedule N_d swept along a dimension grid at σ = ℓ/d^τ.
    let schedule_mode = cfg.has("nd-tau");
    let mut cells: Vec<(usize, f64, Vec<usize>)> = Vec::new(); // (d, σ, pools)
    if schedule_mode {
        let tau = cfg.get_f64("nd-tau", 0.5)?;
        let rho = cfg.get_f64("nd-rho", 0.5)?;
        let nu = cfg.get_f64("nd-nu", 0.1)?;
        let ell = cfg.get_f64("ell", 1.0)?;
        let dims = cfg.get_usize_list("d", &[2, 5, 10, 20])?;
        for &d in &dims {
            let n = mtm_core::candidate_schedule(tau, d, rho, nu)?;
            let n = usize::try_from(n).map_err(|_| {
                AppError::Config(format!(
                    "scheduled candidate count {n} exceeds this platform"
                ))
            })?;
            cells.push((d, ell / (d as f64).powf(tau), vec![n]));
        }
    } else {
        let d = cfg.get_usize("d", 2)?;
        let sigma = cfg.get_f64("sigma", 0.5)?;
        let pools = cfg.get_usize_list("n", &[10, 100, 1_000, 10_000])?;
        cells.push((d, sigma, pools));
    }
    cfg.finish()?;

    let key = root_key("mtm-vs-ideal", seed);
    let mut table = Table::new(vec![
        "scenario",
        "seed",
        "n_samples",
        "target",
        "weight",
        "sampler",
        "d",
        "n_candidates",
        "sigma",
        "mean_gap",
        "mean_gap_std_error",
        "acceptance",
        "acceptance_std_error",
        "discrepancy",
        "discrepancy_std_error",
    ]);

    let rows = run_cells(workers, &cells, |(d, sigma, pools)| {
        let (d, sigma) = (*d, *sigma);
        let target = Target::product_normal(d);
        let x = vec![x_ref; d];
        // Ideal proposal mean of the matching scheme, per coordinate.
        let ideal_mean: f64 = match weight {
            WeightKind::Gb => x_ref / (1.0 + sigma * sigma),
            _ => 2.0 * x_ref / (sigma * sigma + 2.0),
        };
        // One key per (d) group, shared by every sampler row: the baseline
        // and the single-candidate row consume identical streams, so their
        // numeric fields agree bit-for-bit.
        let group_key = key.child(weight.name(), &[d as u64]);

        let mut samplers: Vec<SamplerSpec> = vec![SamplerSpec::PlainMh { sigma }];
        for &n in pools {
            samplers.push(SamplerSpec::Mtm(MtmConfig::new(
                n,
                Scale::Sigma(sigma),
                weight,
            )));
        }
        samplers.push(ideal_sampler(weight, sigma)?);

        let mut batch = Vec::new();
        for sampler in &samplers {
            let mut sum = vec![0.0; d];
            let mut sumsq = vec![0.0; d];
            let mut probs = Vec::with_capacity(n_samples);
            for s in 0..n_samples {
                let out = sampler.step(&x, &target, &group_key, s as u64)?;
                for (k, &c) in out.proposal.iter().enumerate() {
                    sum[k] += c;
                    sumsq[k] += c * c;
                }
                probs.push(out.acc_prob);
            }
            let nf = n_samples as f64;
            let mut gap_sq = 0.0;
            let mut var_sum = 0.0;
            for k in 0..d {
                let mean = sum[k] / nf;
                gap_sq += (mean - ideal_mean) * (mean - ideal_mean);
                if n_samples > 1 {
                    var_sum += (sumsq[k] - nf * mean * mean).max(0.0) / (nf - 1.0);
                }
            }
            let acc = EstimateWithError::from_samples(&probs)?;
            let (disc, disc_se) = match sampler {
                SamplerSpec::Mtm(cfg) => {
                    let est =
                        weight_normalization_discrepancy(cfg, &target, n_samples, &group_key)?;
                    (Cell::Float(est.value), Cell::Float(est.std_error))
                }
                SamplerSpec::PlainMh { .. } => {
                    let cfg = sampler
                        .mtm_equivalent()
                        .expect("plain baseline maps to one");
                    let est =
                        weight_normalization_discrepancy(&cfg, &target, n_samples, &group_key)?;
                    (Cell::Float(est.value), Cell::Float(est.std_error))
                }
                _ => (Cell::Empty, Cell::Empty),
            };
            batch.push(vec![
                str_cell("mtm-vs-ideal"),
                Cell::UInt(seed),
                Cell::UInt(n_samples as u64),
                str_cell("normal"),
                str_cell(weight.name()),
                str_cell(sampler.name()),
                Cell::UInt(d as u64),
                match sampler {
                    SamplerSpec::Mtm(cfg) => Cell::UInt(cfg.n_candidates as u64),
                    SamplerSpec::PlainMh { .. } => Cell::UInt(1),
                    _ => Cell::Empty,
                },
                Cell::Float(sigma),
                Cell::Float(gap_sq.sqrt()),
                Cell::Float((var_sum / nf).sqrt()),
                Cell::Float(acc.value),
                Cell::Float(acc.std_error),
                disc,
                disc_se,
            ]);
        }
        Ok(batch)
    })?;
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

/// Wall-clock cost of one sampler step against an artificially expensive
/// log-density, per worker count, with a digest proving the traces agree.
/// Runs cells sequentially regardless of `--workers` so timings are honest.
pub fn parallel_bench(mut cfg: ConfigMap, seed: u64) -> Result<Table, AppError> {
    let d = cfg.get_usize("d", 2)?;
    let n = cfg.get_usize("n", 20)?;
    let cost_ms = cfg.get_usize("eval-cost-ms", 10)?;
    let steps = cfg.get_usize("steps", 10)?;
    let worker_grid = cfg.get_usize_list("workers", &[1, 2, 4, 8])?;
    cfg.finish()?;

    let target = Target::black_box(
        d,
        std::sync::Arc::new(|x: &[f64]| x.iter().map(|t| -0.5 * t * t).sum()),
        Duration::from_millis(cost_ms as u64),
    );
    let init = vec![0.0; d];
    let key = root_key("parallel-bench", seed);

    let mut table = Table::new(vec![
        "scenario",
        "seed",
        "n_samples",
        "target",
        "d",
        "n_candidates",
        "eval_cost_ms",
        "workers",
        "seconds_per_step",
        "speedup",
        "trace_digest",
        "flag",
    ]);
    let mut baseline: Option<f64> = None;
    for &workers in &worker_grid {
        let chain_cfg =
            MtmConfig::new(n, Scale::Sigma(0.5), WeightKind::Sqrt).with_workers(workers);
        let start = Instant::now();
        let trace = run_chain(&init, &chain_cfg, &target, steps, &key, None)?;
        let secs_per_step = start.elapsed().as_secs_f64() / steps.max(1) as f64;
        let base = *baseline.get_or_insert(secs_per_step);

        let mut hasher = Sha256::new();
        for state in &trace.states {
            for coord in state {
                hasher.update(coord.to_le_bytes());
            }
        }
        let digest: String = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();

        table.push(vec![
            str_cell("parallel-bench"),
            Cell::UInt(seed),
            Cell::UInt(steps as u64),
            str_cell("black-box"),
            Cell::UInt(d as u64),
            Cell::UInt(n as u64),
            Cell::UInt(cost_ms as u64),
            Cell::UInt(workers as u64),
            Cell::Float(secs_per_step),
            Cell::Float(base / secs_per_step),
            str_cell(digest),
            if cost_ms == 0 {
                str_cell("overhead-dominated")
            } else {
                Cell::Empty
            },
        ]);
    }
    Ok(table)
}
