use std::io::Write;
use std::path::Path;
use std::process::Command;

use rmt_tw::ensembles::ks_critical_one_sample;
use rmt_tw::ensembles::ks_uniform;
use rmt_tw::ensembles::rng::{draw_rng, GaussianStream};
use rmt_tw::tw::cdf;
use rmt_tw::{Field, TwCdf, TwKind, Variant};
use rmt_tw_cli::{cmd_pca_test, cmd_table, cmd_tw, cmd_verify, ExperimentConfig, Suite, TwMode};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rmt-tw"))
}

fn tw1() -> TwCdf {
    TwCdf::with_default(TwKind::Tw1)
}

fn write_matrix(path: &Path, rows: usize, cols: usize, seed: u64, scale: f64) {
    let mut g = GaussianStream::new(draw_rng(seed, 0));
    let mut f = std::io::BufWriter::new(std::fs::File::create(path).unwrap());
    for _ in 0..rows {
        let row: Vec<String> = (0..cols)
            .map(|_| (scale * g.next_gaussian()).to_string())
            .collect();
        writeln!(f, "{}", row.join(",")).unwrap();
    }
}

fn row_of(csv: &str, quantile: &str) -> Vec<String> {
    csv.lines()
        .find(|l| l.split(',').next() == Some(quantile))
        .unwrap()
        .split(',')
        .map(String::from)
        .collect()
}

#[test]
fn table_example_upper_tail() {
    let config = ExperimentConfig {
        seed: 20260101,
        workers: 4,
        ..ExperimentConfig::new(vec![(5, 200)])
    };
    let t = cmd_table(&config, &tw1()).unwrap();
    let v = t.columns[0].values.as_ref().unwrap()[7];
    assert!((v - 0.959).abs() <= 0.015, "{v}");
}

#[test]
fn table_example_square() {
    let config = ExperimentConfig {
        seed: 20260101,
        workers: 4,
        ..ExperimentConfig::new(vec![(10, 10)])
    };
    let t = cmd_table(&config, &tw1()).unwrap();
    let v = t.columns[0].values.as_ref().unwrap()[1];
    assert!((v - 0.018).abs() <= 0.012, "{v}");
}

#[test]
fn single_replicate_entries_are_zero_or_one() {
    let config = ExperimentConfig {
        reps: 1,
        ..ExperimentConfig::new(vec![(5, 5), (8, 3)])
    };
    let t = cmd_table(&config, &tw1()).unwrap();
    for c in &t.columns {
        assert!(c
            .values
            .as_ref()
            .unwrap()
            .iter()
            .all(|&v| v == 0.0 || v == 1.0));
    }
}

#[test]
fn reference_column_agrees_with_tw_module() {
    let config = ExperimentConfig {
        reps: 10,
        ..ExperimentConfig::new(vec![(5, 5)])
    };
    let t = cmd_table(&config, &tw1()).unwrap();
    for line in t.to_csv().lines().skip(1) {
        let cells: Vec<f64> = line
            .split(',')
            .take(2)
            .map(|c| c.parse().unwrap())
            .collect();
        assert!((cells[1] - cdf(TwKind::Tw1, cells[0])).abs() <= 1e-6);
    }
    let complex = ExperimentConfig {
        reps: 10,
        field: Field::Complex,
        ..ExperimentConfig::new(vec![(5, 5)])
    };
    let t = cmd_table(&complex, &TwCdf::with_default(complex.law())).unwrap();
    assert_eq!(t.law, TwKind::Tw2);
    assert!((t.reference[4] - cdf(TwKind::Tw2, -1.27)).abs() <= 1e-6);
}

#[test]
fn infeasible_column_does_not_stop_the_others() {
    let config = ExperimentConfig {
        reps: 100,
        ..ExperimentConfig::new(vec![(0, 5), (6, 4)])
    };
    let t = cmd_table(&config, &tw1()).unwrap();
    assert!(t.columns[0].error.is_some() && t.columns[0].values.is_none());
    assert!(t.columns[1].values.is_some());
    let csv = t.to_csv();
    assert!(row_of(&csv, "-1.27")[2] == "NA");
    assert!(t.sidecar()["columns"][0]["error"].is_string());
}

#[test]
fn tw_examples() {
    let law = tw1();
    assert!((cmd_tw(&law, TwMode::Cdf, -1.27).unwrap() - 0.50).abs() <= 0.005);
    assert!((cmd_tw(&law, TwMode::Quantile, 0.99).unwrap() - 2.02).abs() <= 0.02);
    let tw2 = TwCdf::with_default(TwKind::Tw2);
    assert_eq!(
        format!("{:.6}", cmd_tw(&tw2, TwMode::Cdf, 6.0).unwrap()),
        "1.000000"
    );
    assert_eq!(
        cmd_tw(&law, TwMode::Quantile, 0.0).unwrap_err().exit_code(),
        2
    );
}

#[test]
fn pca_zero_column_is_far_left() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.csv");
    std::fs::write(&path, "0\n".repeat(100)).unwrap();
    let r = cmd_pca_test(&path, Variant::Adjusted, &tw1()).unwrap();
    assert_eq!(r.l1, 0.0);
    assert!(r.p_value > 0.999, "{r:?}");
    assert!(!r.warnings.is_empty());
}

#[test]
fn pca_warns_on_unscaled_data() {
    let dir = tempfile::tempdir().unwrap();
    let (plain, scaled) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    write_matrix(&plain, 2000, 10, 4, 1.0);
    write_matrix(&scaled, 2000, 10, 4, 10.0);
    let a = cmd_pca_test(&plain, Variant::Adjusted, &tw1()).unwrap();
    let b = cmd_pca_test(&scaled, Variant::Adjusted, &tw1()).unwrap();
    assert!(a.warnings.is_empty(), "{:?}", a.warnings);
    assert!(!b.warnings.is_empty());
    assert!(b.p_value < a.p_value);
}

#[test]
fn pca_null_p_values_are_uniform() {
    let dir = tempfile::tempdir().unwrap();
    let reps = 200;
    let mut p_values = Vec::with_capacity(reps);
    for seed in 0..reps as u64 {
        let path = dir.path().join(format!("null{seed}.csv"));
        write_matrix(&path, 50, 500, 1000 + seed, 1.0);
        p_values.push(
            cmd_pca_test(&path, Variant::Adjusted, &tw1())
                .unwrap()
                .p_value,
        );
    }
    let d = ks_uniform(&p_values);
    assert!(d < ks_critical_one_sample(reps), "KS {d}");
}

#[test]
fn pca_accepts_a_header_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.csv");
    std::fs::write(&path, "x,y\n1,0\n0,1\n1,1\n").unwrap();
    let r = cmd_pca_test(&path, Variant::Adjusted, &tw1()).unwrap();
    assert_eq!((r.n, r.p), (3, 2));
    assert!((r.l1 - 3.0).abs() < 1e-12);
}

#[test]
fn verify_suites_that_pass() {
    for suite in [Suite::Identities, Suite::Cphi, Suite::Kernels] {
        let out = cmd_verify(suite).unwrap();
        assert!(out.passed, "{suite}: {:?}", out.failing);
    }
}

#[test]
fn verify_convergence_reports_the_failing_metric() {
    let out = cmd_verify(Suite::Convergence).unwrap();
    assert_eq!(out.failing, vec!["f_n_sup_error".to_string()]);
    assert!(!out.passed);
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin()
        .args(args)
        .env_remove("RMT_TW_CACHE")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["tw", "tw1", "cdf", "-1.27"]),
        (0, "0.499547\n".into())
    );
    assert_eq!(run(&["tw", "tw1", "quantile", "1.5"]).0, 2);
    assert_eq!(run(&["table", "--dims", "5y5"]).0, 2);
    assert_eq!(run(&["table", "--dims", "5x5", "--reps", "0"]).0, 2);
    assert_eq!(run(&["pca-test", "/nonexistent/input.csv"]).0, 3);
    let dir = tempfile::tempdir().unwrap();
    let ragged = dir.path().join("ragged.csv");
    std::fs::write(&ragged, "1,2\n3\n").unwrap();
    assert_eq!(run(&["pca-test", ragged.to_str().unwrap()]).0, 3);
    let text = dir.path().join("text.csv");
    std::fs::write(&text, "1,2\n3,abc\n").unwrap();
    assert_eq!(run(&["pca-test", text.to_str().unwrap()]).0, 3);
    assert_eq!(run(&["verify", "identities"]).0, 0);
    let (code, json) = run(&["verify", "convergence"]);
    assert_eq!(code, 1);
    assert!(json.contains("f_n_sup_error"));
}

#[test]
fn table_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let outputs: Vec<(Vec<u8>, Vec<u8>)> = (0..2)
        .map(|i| {
            let path = dir.path().join(format!("t{i}.csv"));
            let args = [
                "table",
                "--dims",
                "5x200,10x10",
                "--reps",
                "2000",
                "--seed",
                "9",
                "--workers",
                "3",
            ];
            let status = bin().args(args).arg("--out").arg(&path).status().unwrap();
            assert!(status.success());
            (
                std::fs::read(&path).unwrap(),
                std::fs::read(path.with_extension("json")).unwrap(),
            )
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    let (_, stdout) = run(&[
        "table",
        "--dims",
        "5x200,10x10",
        "--reps",
        "2000",
        "--seed",
        "9",
        "--workers",
        "3",
    ]);
    assert_eq!(stdout.as_bytes(), outputs[0].0.as_slice());
    let (_, other) = run(&[
        "table",
        "--dims",
        "5x200,10x10",
        "--reps",
        "2000",
        "--seed",
        "10",
        "--workers",
        "3",
    ]);
    assert_ne!(other, stdout);
}

#[test]
fn cache_directory_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["tw", "tw2", "cdf", "0"])
        .env("RMT_TW_CACHE", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let again = bin()
        .args(["tw", "tw2", "cdf", "0"])
        .env("RMT_TW_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn sample_dump_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dump.csv");
    let status = bin()
        .args([
            "sample-dump",
            "--dims",
            "8x3",
            "--reps",
            "25",
            "--k",
            "2",
            "--seed",
            "5",
            "--out",
        ])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read(&path).unwrap();
    let draws = rmt_tw::ensembles::dump::read_samples(text.as_slice()).unwrap();
    assert_eq!(draws.len(), 25);
    assert!(draws.iter().all(|d| d.top.len() == 2 && d.seed == 5));
}
