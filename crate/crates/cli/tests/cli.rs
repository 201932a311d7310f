use std::path::Path;
use std::process::{Command, Output};

use edgecone_cli::{run, JobConfig, Report, Row};

fn edgecone(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_edgecone"));
    c.args(args);
    for (k, v) in envs {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn report_of(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

const SIG_SWEEP: &str = r#"
job = "verify-sig"
[family]
family = "pedersen_abreu"
beta = 0.5
[sweep]
beta = [0.25, 0.5, 1, 1.5]
"#;

#[test]
fn csc_sum_for_three() {
    let out = edgecone(&["csc-sum", "--p", "3"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    match &r.rows[..] {
        [Row::CscSum { result, pass: true, .. }] => {
            assert!((result.direct - 8.0 / 3.0).abs() < 1e-14);
            assert_eq!(result.closed_form.to_string(), "8/3");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn signature_of_the_einstein_edge_metric() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "sig.toml", "job = \"verify-sig\"\n[family]\nfamily = \"pedersen_abreu\"\nbeta = 0.5\n");
    let out = edgecone(&["run", &cfg], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    let Row::Integral { report, pass, .. } = &r.rows[0] else { panic!("{:?}", r.rows[0]) };
    assert!((report.value - 2.25 / 3.0).abs() < 1e-4 * 0.75);
    assert_eq!(*pass, Some(true));
}

#[test]
fn beta_sweep_gives_one_passing_row_per_point() {
    let c = JobConfig::from_toml(SIG_SWEEP).unwrap();
    let r = run(&c).unwrap();
    assert_eq!(r.rows.len(), 4);
    assert!(r.pass);
    for (row, b) in r.rows.iter().zip([0.25, 0.5, 1.0, 1.5]) {
        let Row::Integral { parameter, report, .. } = row else { panic!() };
        assert_eq!(*parameter, Some(b));
        assert_eq!(report.predicted, Some((2.0 + b * b) / 3.0));
    }
}

#[test]
fn smooth_angle_sweep_has_no_defect() {
    let c = JobConfig::from_toml(
        "job = \"ht-check\"\n[topology]\nchi_m = 3\ntau_m = 1\nchi_sigma = 2\nsigma_sq = 1\nbeta = \"1/2\"\n[sweep]\nbeta = [1]\n",
    )
    .unwrap();
    let r = run(&c).unwrap();
    let Row::HtCheck { defect_plus, defect_minus, .. } = &r.rows[0] else { panic!() };
    assert!(defect_plus.is_zero() && defect_minus.is_zero());
}

#[test]
fn blown_up_cubic_fails_hitchin_thorpe() {
    let out = edgecone(&["ht-check", "--chi", "4", "--tau", "0", "--chi-sigma", "0", "--sigma-sq", "9", "--beta", "1/100"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    let Row::HtCheck { verdict, .. } = &r.rows[0] else { panic!() };
    assert!(!verdict.holds_plus && verdict.exact);
    let out = edgecone(&["ht-check", "--chi", "3", "--tau", "1", "--chi-sigma", "0", "--sigma-sq", "9", "--beta", "0.01"], &[]);
    let Row::HtCheck { verdict, .. } = &report_of(&out).rows[0] else { panic!() };
    assert!(verdict.holds_plus);
}

#[test]
fn radius_sweep_approaches_the_euler_characteristic() {
    let c = JobConfig::from_toml(
        "job = \"boundary-gb\"\n[family]\nfamily = \"eguchi_hanson\"\n[sweep]\nradius = [5, 10, 20]\n",
    )
    .unwrap();
    let r = run(&c).unwrap();
    assert!(r.pass);
    let rows: Vec<(f64, f64, f64)> = r
        .rows
        .iter()
        .map(|row| match row {
            Row::BoundaryGb { interior, boundary, report, .. } => (*interior, *boundary, report.value),
            other => panic!("{other:?}"),
        })
        .collect();
    for w in rows.windows(2) {
        // interior rises to 3/2, the boundary term falls to 1/2
        assert!(w[1].0 > w[0].0 && w[1].0 < 1.5);
        assert!(w[1].1 < w[0].1 && w[1].1 > 0.5);
        assert!((w[1].1 - 0.5).abs() < (w[0].1 - 0.5).abs());
    }
    assert!(rows.iter().all(|r| (r.2 - 2.0).abs() < 1e-9));
}

#[test]
fn unknown_keys_exit_with_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.toml", "job = \"csc-sum\"\np = 3\nbogus = 1\n");
    let out = edgecone(&["run", &cfg], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
    let cfg = write_config(dir.path(), "beta.toml", "job = \"verify-sig\"\n[family]\nfamily = \"pedersen_abreu\"\nbeta = -1\n");
    assert_eq!(edgecone(&["run", &cfg], &[]).status.code(), Some(2));
    assert_eq!(edgecone(&["run", "/nonexistent/job.toml"], &[]).status.code(), Some(2));
}

#[test]
fn compute_failures_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "budget.toml",
        "job = \"verify-sig\"\n[family]\nfamily = \"pedersen_abreu\"\nbeta = 0.3\n[quadrature]\nrel_tol = 1e-13\nmax_evals = 60\n",
    );
    let out = edgecone(&["run", &cfg], &[]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn tolerance_failures_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    // the hyperbolic-ansatz background is not Einstein
    let cfg = write_config(
        dir.path(),
        "einstein.toml",
        "job = \"verify-einstein\"\nsamples = 20\n[family]\nfamily = \"pedersen_abreu\"\nbeta = 0.5\nrepresentative = \"background\"\n",
    );
    let out = edgecone(&["run", &cfg], &[]);
    assert_eq!(out.status.code(), Some(1));
    let r = report_of(&out);
    assert!(!r.pass);
    let cfg = write_config(dir.path(), "ok.toml", "job = \"verify-einstein\"\nsamples = 20\n[family]\nfamily = \"pedersen_abreu\"\nbeta = 0.5\n");
    assert_eq!(edgecone(&["run", &cfg], &[]).status.code(), Some(0));
}

#[test]
fn reports_round_trip_and_rerun_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "sweep.toml", SIG_SWEEP);
    let a = report_of(&edgecone(&["run", &cfg], &[]));
    let b = report_of(&edgecone(&["run", &cfg], &[]));
    assert_eq!(a.rows, b.rows);
    let back: Report = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(back, a);
    for row in &a.rows {
        assert_eq!(row.pass(), row.recompute_pass());
    }
}

#[test]
fn worker_count_does_not_change_the_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "lgh.toml",
        "job = \"verify-gb\"\n[family]\nfamily = \"lebrun_gibbons_hawking\"\nbeta = 0.7\ncenters = [[0, 0, -0.3], [0, 0, 0.4]]\n",
    );
    let one = report_of(&edgecone(&["run", &cfg], &[("EDGECONE_WORKERS", "1")]));
    let four = report_of(&edgecone(&["run", &cfg], &[("EDGECONE_WORKERS", "4")]));
    assert_eq!(one.provenance.workers, 1);
    assert_eq!(four.provenance.workers, 4);
    let bits = |r: &Report| match &r.rows[0] {
        Row::Integral { report, .. } => (report.value.to_bits(), report.abs_error_estimate.to_bits()),
        other => panic!("{other:?}"),
    };
    assert_eq!(bits(&one), bits(&four));
}

#[test]
fn csv_output_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = edgecone(&["table", "--k-max", "4", "--format", "csv", "--out", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4 + 1 + 3);
    assert_eq!(&rows[0][0], "A_1");
    assert_eq!(&rows[0][4], "3/2");
    assert_eq!(&rows[7][0], "E_8");
    assert_eq!(&rows[7][4], "1079/120");
    assert_eq!(&rows[7][6], "");
}

#[test]
fn cone_job_and_instanton_job() {
    let r = run(&JobConfig::from_toml(
        "job = \"cone2d\"\n[family]\nfamily = \"smoothed_cone_2d\"\nbeta = 1\n[sweep]\nbeta = [0.5, 1, 2]\n",
    )
    .unwrap())
    .unwrap();
    assert_eq!(r.rows.len(), 3);
    assert!(r.pass);
    let e8 = "job = \"instanton\"\n[instanton]\nasymptotics = \"ALE\"\n[instanton.dynkin]\ntype = \"E8\"\n";
    let r = run(&JobConfig::from_toml(e8).unwrap()).unwrap();
    let Row::Instanton { coefficient, .. } = &r.rows[0] else { panic!() };
    assert_eq!(coefficient.to_string(), "1079/120");
    let e = JobConfig::from_toml("job = \"instanton\"\n[instanton]\nasymptotics = \"ALF\"\n[instanton.dynkin]\ntype = \"E7\"\n").unwrap();
    assert_eq!(edgecone_cli::run(&e).unwrap_err().exit_code(), 3);
}

#[test]
fn shipped_job_files_are_valid() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../jobs");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "toml") {
            JobConfig::load(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            n += 1;
        }
    }
    assert!(n >= 8);
}
