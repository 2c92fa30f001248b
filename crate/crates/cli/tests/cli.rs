use std::path::Path;
use std::process::{Command, Output};

use mdl_cli::args::{AlgoArg, InstanceArgs, RunArgs, SpecArgs};
use mdl_cli::args::{ClassArg, FamilyArg};
use mdl_cli::commands::audit_with;
use mdl_cli::report::{read_csv, write_csv, RowContext};
use mdl_cli::{CsvRow, ExperimentConfig, CSV_COLUMNS};
use mdl_core::algos::{fast_params, Algorithm, RunParams};
use mdl_core::eval::{brute_force_opt, check_eps_optimal};
use mdl_core::model::brute_force_vc;
use mdl_core::{MdlInstance, RandomizedHypothesis, RunOutput, RunReport, SampleLedger};
use proptest::prelude::*;
use tempfile::TempDir;

fn mdl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_stdout(args: &[&str]) -> String {
    let out = mdl(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn load(path: &Path) -> MdlInstance {
    MdlInstance::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn gen_realizable(dir: &TempDir, name: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    let p = path.to_str().unwrap();
    ok_stdout(&[
        "gen",
        "--family",
        "realizable",
        "--k",
        "4",
        "--n",
        "8",
        "--seed",
        "7",
        "--out",
        p,
    ]);
    path
}

#[test]
fn gen_realizable_has_zero_opt_and_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = gen_realizable(&dir, "a.json");
    let b = gen_realizable(&dir, "b.json");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let inst = load(&a);
    assert_eq!(inst.k(), 4);
    assert_eq!(inst.domain_size(), 8);
    assert_eq!(brute_force_opt(&inst).unwrap().opt_value, 0.0);

    let summary = ok_stdout(&[
        "gen",
        "--family",
        "realizable",
        "--k",
        "4",
        "--n",
        "8",
        "--seed",
        "7",
        "--out",
        dir.path().join("c.json").to_str().unwrap(),
    ]);
    let vc = brute_force_vc(inst.class()).unwrap();
    assert_eq!(summary, format!("opt = 0\nvc = {vc}\n"));
}

#[test]
fn gen_rejects_zero_distributions() {
    let out = mdl(&["gen", "--k", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("k must be ≥ 1"));
}

#[test]
fn exit_codes_follow_error_kind() {
    assert_eq!(mdl(&["solve", "--algo", "nope"]).status.code(), Some(2));
    assert_eq!(
        mdl(&["solve", "--algo", "fast", "--epsilon", "1.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mdl(&["solve", "--algo", "fast", "--constants", "c9=1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mdl(&["solve", "--algo", "fast", "--instance", "/no/such/file"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mdl(&["solve", "--algo", "fast", "--n", "65"]).status.code(),
        Some(3)
    );
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("missing").join("report.json");
    let out = mdl(&["solve", "--algo", "fast", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn solve_fast_row_matches_ground_truth_and_accounting() {
    let dir = TempDir::new().unwrap();
    let path = gen_realizable(&dir, "inst.json");
    let report_path = dir.path().join("report.json");
    let csv = ok_stdout(&[
        "solve",
        "--algo",
        "fast",
        "--instance",
        path.to_str().unwrap(),
        "--epsilon",
        "0.2",
        "--seed",
        "3",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    let rows = read_csv(csv.as_bytes()).unwrap();
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    let inst = load(&path);
    let report: RunReport =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let mix = report.mixture().unwrap();
    let check = check_eps_optimal(&inst, mix, 0.2, 0.25).unwrap();
    assert_eq!(row.eps_ok, Some(check.ok));
    assert_eq!(row.max_loss, Some(check.max_loss));
    assert_eq!(row.opt, Some(0.0));
    assert!((row.excess.unwrap() - (row.max_loss.unwrap() - row.opt.unwrap())).abs() <= 1e-12);

    let d = brute_force_vc(inst.class()).unwrap();
    let fp = fast_params(0.2, 0.25, 0.2, 4, d, 4.0, 4.0).unwrap();
    assert_eq!(
        row.samples_total,
        (fp.r1 as u64 + 4 * fp.r2 as u64) * fp.rounds as u64
    );
    assert_eq!(row.iterations, fp.rounds);
    assert_eq!(row.wall_ms, 0);
}

#[test]
fn sweep_counts_rows_and_is_reproducible() {
    let args = [
        "sweep",
        "--algo",
        "fast",
        "--epsilons",
        "0.2,0.1",
        "--seeds",
        "3",
        "--seed",
        "11",
        "--n",
        "6",
        "--k",
        "3",
        "--class-size",
        "10",
    ];
    let a = ok_stdout(&args);
    let rows = read_csv(a.as_bytes()).unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.error.is_none()));
    assert_eq!(a, ok_stdout(&args));

    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "4"]);
    assert_eq!(a, ok_stdout(&parallel));

    // Fast sample counts grow as epsilon halves, seed by seed.
    for j in 0..3 {
        assert_eq!(rows[j].seed, rows[3 + j].seed);
        assert!(rows[3 + j].samples_total >= rows[j].samples_total);
    }
}

#[test]
fn sweep_over_k_and_error_rows() {
    let csv = ok_stdout(&[
        "sweep", "--algo", "mid", "--ks", "2,3", "--seeds", "2", "--n", "6",
    ]);
    let rows = read_csv(csv.as_bytes()).unwrap();
    let ks: Vec<usize> = rows.iter().map(|r| r.k).collect();
    assert_eq!(ks, vec![2, 2, 3, 3]);

    // A class too large for the VC search fails per row, not per sweep.
    let csv = ok_stdout(&[
        "sweep",
        "--algo",
        "mid",
        "--seeds",
        "2",
        "--n",
        "24",
        "--class-size",
        "5000",
        "--k",
        "2",
    ]);
    let rows = read_csv(csv.as_bytes()).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows
        .iter()
        .all(|r| r.error.as_deref().is_some_and(|e| e.contains("guard"))));

    let out = mdl(&["sweep", "--algo", "mid", "--ks", "2", "--suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn audit_single_trial_frequency_is_zero_or_one() {
    let out = ok_stdout(&[
        "audit", "--algo", "finite", "--trials", "1", "--n", "5", "--k", "2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let f = v["failure_frequency"].as_f64().unwrap();
    assert!(f == 0.0 || f == 1.0);
    assert_eq!(v["trials"], 1);
}

fn run_args(algo: AlgoArg) -> RunArgs {
    RunArgs {
        algo,
        epsilon: 0.1,
        delta: 0.2,
        alpha: None,
        seed: 5,
        constants: Vec::new(),
        estimator: None,
        timing: false,
    }
}

fn suite_args() -> InstanceArgs {
    InstanceArgs {
        instance: None,
        suite: true,
        instance_seed: None,
        spec: SpecArgs {
            family: FamilyArg::Random,
            n: 8,
            k: 4,
            class_size: 16,
            support: None,
            class_family: ClassArg::Explicit,
        },
    }
}

#[test]
fn argmin_stub_never_fails_audit() {
    let cfg = ExperimentConfig::from_args(&run_args(AlgoArg::Finite), &suite_args())
        .unwrap()
        .with_trials(5, 25);
    let stub = |_: &ExperimentConfig, inst: &MdlInstance, seed: u64| {
        let opt = brute_force_opt(inst)?;
        let h = inst.class().hypotheses()[opt.argmin_position];
        Ok(RunReport {
            algorithm: Algorithm::Finite,
            seed,
            output: RunOutput::Mixture(RandomizedHypothesis::point(h)),
            ledger: SampleLedger::new(inst.k()),
            iterations: 0,
            params: RunParams::default(),
            trace: Vec::new(),
            stages: Vec::new(),
            wall_ms: 0,
        })
    };
    let (summary, rows) = audit_with(&cfg, 3, stub).unwrap();
    assert_eq!(summary.trials, 25);
    assert_eq!(summary.failures, 0);
    assert_eq!(summary.failure_frequency, 0.0);
    assert_eq!(rows.len(), 25);
    // Suite trials draw different instances.
    assert!(rows.iter().any(|r| (r.n, r.k) != (rows[0].n, rows[0].k)));
}

#[test]
fn csv_header_is_fixed() {
    let mut buf = Vec::new();
    write_csv(&mut buf, &[]).unwrap();
    assert_eq!(
        String::from_utf8(buf).unwrap(),
        format!("{}\n", CSV_COLUMNS.join(","))
    );
}

fn any_row() -> impl Strategy<Value = CsvRow> {
    let f = || {
        prop_oneof![
            any::<f64>().prop_filter("finite", |x| x.is_finite()),
            0.0f64..1.0
        ]
    };
    (
        (
            any::<u64>(),
            0usize..65,
            1usize..100,
            0usize..5000,
            proptest::option::of(0usize..20),
        ),
        (
            f(),
            f(),
            proptest::option::of(f()),
            any::<u64>(),
            any::<u64>(),
        ),
        (
            proptest::option::of(f()),
            proptest::option::of(f()),
            proptest::option::of(f()),
        ),
        (
            any::<usize>(),
            any::<u64>(),
            proptest::option::of(any::<bool>()),
        ),
        proptest::option::of("[ -~]{1,20}"),
    )
        .prop_map(
            |((seed, n, k, cs, vc), (e, d, a, st, sm), (opt, ml, sml), (it, w, ok), err)| {
                let ctx = RowContext {
                    algorithm: "mid".into(),
                    seed,
                    epsilon: e,
                    delta: d,
                    alpha: a,
                    check_alpha: 0.0,
                };
                let mut row = CsvRow::failed(&ctx, None, String::new());
                row.n = n;
                row.k = k;
                row.class_size = cs;
                row.vc_dim = vc;
                row.samples_total = st;
                row.samples_max_per_oracle = sm;
                row.opt = opt;
                row.max_loss = ml;
                row.excess = opt.zip(ml).map(|(o, m)| m - o);
                row.smooth_max_loss = sml;
                row.iterations = it;
                row.wall_ms = w;
                row.eps_ok = ok;
                row.error = err.filter(|s| !s.trim().is_empty());
                row
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rows_round_trip_losslessly(rows in prop::collection::vec(any_row(), 0..6)) {
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        prop_assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
    }
}
