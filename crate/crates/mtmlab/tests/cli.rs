//! End-to-end tests of the `mtmlab` binary: output schema, determinism,
//! exit codes, and cross-scenario consistency, all at tiny sample sizes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_mtmlab")
}

fn write_cfg(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed (status {:?}): {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Split a CSV body (no meta line) into header fields and row field vectors.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .expect("header")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    (header, rows)
}

fn field<'a>(header: &[String], row: &'a [String], name: &str) -> &'a str {
    let idx = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("column `{name}` missing from header {header:?}"));
    &row[idx]
}

#[test]
fn reruns_and_worker_counts_leave_the_bytes_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "tail.cfg",
        "d = 3\nweight = gb,sqrt\nn = 1,4\nkappa = 0.2,0.8\nn-samples = 60\n",
    );
    let cfg = cfg.to_str().unwrap();
    let first = run(&[
        "tail-acceptance",
        "--config",
        cfg,
        "--no-meta",
        "--seed",
        "3",
    ]);
    let second = run(&[
        "tail-acceptance",
        "--config",
        cfg,
        "--no-meta",
        "--seed",
        "3",
    ]);
    let threaded = run(&[
        "tail-acceptance",
        "--config",
        cfg,
        "--no-meta",
        "--seed",
        "3",
        "--workers",
        "4",
    ]);
    let text = stdout_of(&first);
    assert_eq!(first.stdout, second.stdout, "rerun changed the bytes");
    assert_eq!(
        first.stdout, threaded.stdout,
        "worker count changed the bytes"
    );

    let reseeded = run(&[
        "tail-acceptance",
        "--config",
        cfg,
        "--no-meta",
        "--seed",
        "4",
    ]);
    assert_ne!(first.stdout, reseeded.stdout, "seed had no effect");

    // Provenance columns lead every row and carry the invocation parameters.
    let (header, rows) = parse_csv(&text);
    assert_eq!(&header[..3], &["scenario", "seed", "n_samples"]);
    assert_eq!(rows.len(), 2 * 2 * 2);
    for row in &rows {
        assert_eq!(row[0], "tail-acceptance");
        assert_eq!(row[1], "3");
        assert_eq!(row[2], "60");
    }
}

#[test]
fn the_meta_line_appears_unless_suppressed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "t.cfg",
        "ell-min = 1\nell-max = 1\nell-step = 1\n",
    );
    let cfg = cfg.to_str().unwrap();
    let with_meta = stdout_of(&run(&["speed-curves", "--config", cfg]));
    assert!(
        with_meta.starts_with("# generated_unix_seconds="),
        "meta line missing: {with_meta}"
    );
    assert!(with_meta.lines().nth(1).unwrap().starts_with("scenario,"));
    let without = stdout_of(&run(&["speed-curves", "--config", cfg, "--no-meta"]));
    assert!(without.starts_with("scenario,"));
}

#[test]
fn config_mistakes_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(PathBuf, Vec<&str>)> = vec![
        (
            write_cfg(dir.path(), "unknown.cfg", "bogus-key = 1\n"),
            vec!["esjd-sweep"],
        ),
        (dir.path().join("missing.cfg"), vec!["esjd-sweep"]),
        (
            write_cfg(dir.path(), "barker.cfg", "weight = barker\nn = ideal\n"),
            vec!["tail-acceptance"],
        ),
        (
            write_cfg(
                dir.path(),
                "laplace.cfg",
                "target = laplace\nweight = gb\nn = ideal\n",
            ),
            vec!["tail-acceptance"],
        ),
        (
            write_cfg(dir.path(), "dup.cfg", "d = 3\nd = 4\n"),
            vec!["esjd-sweep"],
        ),
        (
            write_cfg(
                dir.path(),
                "zero.cfg",
                "n-samples = 0\nweight = gb\nn = 1\n",
            ),
            vec!["esjd-sweep"],
        ),
        (
            write_cfg(dir.path(), "adapt.cfg", ""),
            vec!["esjd-sweep", "--adapt"],
        ),
        (
            write_cfg(dir.path(), "vsbarker.cfg", "weight = barker\n"),
            vec!["mtm-vs-ideal"],
        ),
    ];
    for (cfg, mut args) in cases {
        args.push("--config");
        args.push(cfg.to_str().unwrap());
        let out = run(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "args {args:?} should exit 2, stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(
            !out.stderr.is_empty(),
            "exit 2 without a message for {args:?}"
        );
    }

    // Unknown scenario names are rejected by the argument parser, also code 2.
    let cfg = write_cfg(dir.path(), "ok.cfg", "");
    let out = run(&["no-such-scenario", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_paths_exit_with_code_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "t.cfg",
        "ell-min = 1\nell-max = 1\nell-step = 1\n",
    );
    let missing_dir = dir.path().join("no-such-dir").join("out.csv");
    let out = run(&[
        "speed-curves",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        missing_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn the_output_file_matches_what_stdout_would_carry() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "t.cfg",
        "ell-min = 0.5\nell-max = 2.5\nell-step = 0.5\n",
    );
    let cfg = cfg.to_str().unwrap();
    let out_path = dir.path().join("curves.csv");
    let piped = run(&["speed-curves", "--config", cfg, "--no-meta"]);
    let to_file = run(&[
        "speed-curves",
        "--config",
        cfg,
        "--no-meta",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&out_path).unwrap(), piped.stdout);
}

#[test]
fn the_single_candidate_row_duplicates_the_plain_baseline_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "mvi.cfg", "n = 1,5\nn-samples = 80\n");
    let text = stdout_of(&run(&[
        "mtm-vs-ideal",
        "--config",
        cfg.to_str().unwrap(),
        "--no-meta",
    ]));
    let (header, rows) = parse_csv(&text);
    let plain = rows
        .iter()
        .find(|r| field(&header, r, "sampler") == "plain-mh")
        .unwrap();
    let single = rows
        .iter()
        .find(|r| field(&header, r, "sampler") == "mtm" && field(&header, r, "n_candidates") == "1")
        .unwrap();
    for (name, (a, b)) in header.iter().zip(plain.iter().zip(single.iter())) {
        if name != "sampler" {
            assert_eq!(
                a, b,
                "column `{name}` differs between plain-mh and 1-candidate rows"
            );
        }
    }
    // The unbounded-pool reference row reports no candidate count and no
    // normalization discrepancy.
    let ideal = rows
        .iter()
        .find(|r| field(&header, r, "sampler") == "ideal-gb")
        .unwrap();
    assert_eq!(field(&header, ideal, "n_candidates"), "");
    assert_eq!(field(&header, ideal, "discrepancy"), "");
}

#[test]
fn the_normalization_discrepancy_shrinks_with_the_pool_size() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "mvi.cfg", "n = 1,16\nn-samples = 2000\n");
    let text = stdout_of(&run(&[
        "mtm-vs-ideal",
        "--config",
        cfg.to_str().unwrap(),
        "--no-meta",
    ]));
    let (header, rows) = parse_csv(&text);
    let disc = |n: &str| -> f64 {
        let row = rows
            .iter()
            .find(|r| {
                field(&header, r, "sampler") == "mtm" && field(&header, r, "n_candidates") == n
            })
            .unwrap();
        field(&header, row, "discrepancy").parse().unwrap()
    };
    assert!(
        disc("16") < disc("1") / 2.0,
        "discrepancy did not shrink: N=1 {} vs N=16 {}",
        disc("1"),
        disc("16")
    );
}

#[test]
fn a_single_sample_reports_a_zero_standard_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "one.cfg",
        "d = 2\nweight = sqrt\nn = 3\nkappa = 0.5\nn-samples = 1\n",
    );
    let text = stdout_of(&run(&[
        "tail-acceptance",
        "--config",
        cfg.to_str().unwrap(),
        "--no-meta",
    ]));
    let (header, rows) = parse_csv(&text);
    assert_eq!(rows.len(), 1);
    assert_eq!(
        field(&header, &rows[0], "std_error"),
        "0.0000000000000000e0"
    );
}

#[test]
fn cost_free_benchmarks_are_flagged_and_stay_trace_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "pb.cfg",
        "eval-cost-ms = 0\nsteps = 3\nworkers = 1,2,4\nn = 6\n",
    );
    let text = stdout_of(&run(&[
        "parallel-bench",
        "--config",
        cfg.to_str().unwrap(),
        "--no-meta",
    ]));
    let (header, rows) = parse_csv(&text);
    assert_eq!(rows.len(), 3);
    let digest0 = field(&header, &rows[0], "trace_digest").to_string();
    assert_eq!(digest0.len(), 64);
    for row in &rows {
        assert_eq!(field(&header, row, "flag"), "overhead-dominated");
        assert_eq!(field(&header, row, "trace_digest"), digest0);
    }
    // Timing fields are the one part of the output that may vary between
    // runs; everything else is pinned by the seed.
    assert_eq!(field(&header, &rows[0], "speedup"), "1.0000000000000000e0");
}

#[test]
fn the_theory_table_reproduces_a_known_acceptance_value() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "t.cfg",
        "ell-min = 2\nell-max = 2\nell-step = 1\n",
    );
    let text = stdout_of(&run(&[
        "speed-curves",
        "--config",
        cfg.to_str().unwrap(),
        "--no-meta",
    ]));
    let (header, rows) = parse_csv(&text);
    // At ℓ = 2 the limiting acceptance is 2Φ(−1) for both weights, and the
    // speed is ℓ² times that.
    let two_phi = 0.317310507862914_f64;
    for kind in ["theta-gb", "theta-lb"] {
        let row = rows
            .iter()
            .find(|r| field(&header, r, "kind") == kind)
            .unwrap();
        let v: f64 = field(&header, row, "value").parse().unwrap();
        assert!((v - two_phi).abs() < 1e-14, "{kind}: {v}");
        assert_eq!(field(&header, row, "n_samples"), "0");
    }
    let speed_row = rows
        .iter()
        .find(|r| field(&header, r, "kind") == "speed-gb")
        .unwrap();
    let speed: f64 = field(&header, speed_row, "value").parse().unwrap();
    assert!((speed - 4.0 * two_phi).abs() < 1e-13);
}

#[test]
fn heavier_tails_are_accepted_by_the_harness_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "lap.cfg",
        "target = laplace\nd = 4\nweight = gb\nn = 2\nreplicates = 2\nmax-steps = 400\n",
    );
    let text = stdout_of(&run(&[
        "adaptive-convergence",
        "--config",
        cfg.to_str().unwrap(),
        "--no-meta",
        "--adapt",
        "--ell0",
        "1.5",
    ]));
    let (header, rows) = parse_csv(&text);
    assert_eq!(rows.len(), 2);
    for row in &rows {
        assert_eq!(field(&header, row, "target"), "laplace");
        let ell: f64 = field(&header, row, "final_ell").parse().unwrap();
        assert!(ell.is_finite() && ell > 0.0);
    }
}

#[test]
fn ideal_tail_acceptance_collapses_past_the_critical_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "tail.cfg",
        "d = 5\nweight = gb\nn = ideal\nkappa = 0.3,0.9\nn-samples = 400\n",
    );
    let text = stdout_of(&run(&[
        "tail-acceptance",
        "--config",
        cfg.to_str().unwrap(),
        "--no-meta",
    ]));
    let (header, rows) = parse_csv(&text);
    let est = |kappa: f64| -> f64 {
        let row = rows
            .iter()
            .find(|r| {
                let k: f64 = field(&header, r, "kappa").parse().unwrap();
                (k - kappa).abs() < 1e-12
            })
            .unwrap();
        field(&header, row, "estimate").parse().unwrap()
    };
    assert!(
        est(0.9) < 0.5 * est(0.3),
        "no tail collapse: bulk {} vs tail {}",
        est(0.3),
        est(0.9)
    );
}
