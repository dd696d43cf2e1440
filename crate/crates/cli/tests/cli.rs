use std::path::Path;
use std::process::{Command, Output};

use hilmod::cstar::BlockAlgebra;
use hilmod::hmod::ModuleSpace;
use hilmod::matkit::CMatrix;
use hilmod::modop::ModuleOperator;
use hilmod::sample;
use hilmod_cli::files;
use hilmod_cli::scan::CSV_HEADER;

fn hilmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilmod")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn scalar_operator(diag: &[f64]) -> ModuleOperator {
    let n = diag.len();
    let space = ModuleSpace::new(BlockAlgebra::new(vec![1]).unwrap(), n).unwrap();
    let mut data = vec![0.0; n * n];
    for (i, d) in diag.iter().enumerate() {
        data[i * n + i] = *d;
    }
    ModuleOperator::new(space.clone(), space, vec![CMatrix::from_real(n, n, &data)]).unwrap()
}

#[test]
fn verify_koliha_passes() {
    let out = hilmod(&["verify", "--suite", "koliha", "--trials", "10", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["all_passed"], true);
    assert_eq!(report["master_seed"], 42);
}

#[test]
fn verify_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let out = hilmod(&["verify", "--suite", "penrose", "--trials", "5", "--algebra", "1,2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().count() >= 2);
    assert!(text.contains("penrose"));
}

#[test]
fn bad_configuration_exits_2() {
    assert_eq!(hilmod(&["verify", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(hilmod(&["verify", "--algebra", "1,0"]).status.code(), Some(2));
    assert_eq!(hilmod(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(hilmod(&["verify", "--tol", "penrose"]).status.code(), Some(2));
}

#[test]
fn compute_gamma_of_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.json", &files::operator_to_json(&scalar_operator(&[3.0, 0.1, 0.0])));
    let out = hilmod(&["compute", "gamma", &t]);
    assert_eq!(out.status.code(), Some(0));
    let g: f64 = stdout(&out).trim().parse().unwrap();
    assert!((g - 0.1).abs() < 1e-12, "{g}");
}

#[test]
fn compute_mpinv_of_identity() {
    let dir = tempfile::tempdir().unwrap();
    let id = scalar_operator(&[1.0, 1.0]);
    let t = write(dir.path(), "id.json", &files::operator_to_json(&id));
    let out_path = dir.path().join("inv.json");
    let out = hilmod(&["compute", "mpinv", &t, "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let inv = files::read_operator(&out_path).unwrap();
    assert!(inv.sub(&id).unwrap().operator_norm() < 1e-12);
}

#[test]
fn compute_cosine_of_orthogonal_lines() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", &files::operator_to_json(&scalar_operator(&[1.0, 0.0])));
    let b = write(dir.path(), "b.json", &files::operator_to_json(&scalar_operator(&[0.0, 1.0])));
    let out = hilmod(&["compute", "c0", &a, &b]);
    assert_eq!(out.status.code(), Some(0));
    let c: f64 = stdout(&out).trim().parse().unwrap();
    assert!(c.abs() < 1e-12, "{c}");
}

#[test]
fn compute_defect_of_witness() {
    let dir = tempfile::tempdir().unwrap();
    let (p, q) = hilmod_cli::scan::witness_pair();
    let p = write(dir.path(), "p.json", &files::operator_to_json(&p));
    let q = write(dir.path(), "q.json", &files::operator_to_json(&q));
    let out = hilmod(&["compute", "defect", &p, &q]);
    assert_eq!(out.status.code(), Some(0));
    let d: f64 = stdout(&out).trim().parse().unwrap();
    assert!(d >= -1e-10);
}

#[test]
fn operator_file_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let algebra = BlockAlgebra::new(vec![1, 2]).unwrap();
    let e = ModuleSpace::new(algebra.clone(), 2).unwrap();
    let f = ModuleSpace::new(algebra, 3).unwrap();
    let mut rng = sample::trial_rng(7, 0);
    let t = sample::random_operator(&mut rng, &e, &f).unwrap();
    let path = dir.path().join("t.json");
    files::write_operator(&path, &t).unwrap();
    let back = files::read_operator(&path).unwrap();
    for (x, y) in t.blocks().iter().zip(back.blocks()) {
        for i in 0..x.rows() {
            for (a, b) in x.row(i).iter().zip(y.row(i)) {
                assert_eq!((a.re.to_bits(), a.im.to_bits()), (b.re.to_bits(), b.im.to_bits()));
            }
        }
    }
}

#[test]
fn scan_defect_csv() {
    let out = hilmod(&["scan-defect", "--trials", "20", "--seed", "5", "--algebra", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.iter().filter(|l| !l.starts_with('#')).count(), 21);
    assert!(lines.iter().any(|l| l.starts_with("# witness block_dims=1-1 k=2")));
    assert!(lines.iter().any(|l| l.starts_with("# rng=chacha20")));
}

#[test]
fn malformed_file_reports_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"algebra":{"blocks":[1]},"domain_rank":2,"codomain_rank":2,"blocks":[{"re":[[1,0],[0]],"im":[[0,0],[0,0]]}]}"#,
    );
    let out = hilmod(&["compute", "gamma", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("blocks[0].re[1]"), "{err}");

    let broken = write(dir.path(), "broken.json", "{\"algebra\": ");
    let out = hilmod(&["compute", "gamma", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    let out = hilmod(&["compute", "gamma", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
