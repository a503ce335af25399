use std::process::Command;

use ideal_coxeter::cli::{run, ExitCode};
use ideal_coxeter::combinatorics::catalog;

fn cli(args: &[&str]) -> (ExitCode, String) {
    let o = run(std::iter::once("ideal-coxeter").chain(args.iter().copied()));
    (o.exit_code, o.report)
}

#[test]
fn validate_catalog_and_corrupted() {
    for name in ["P1", "P2", "P3", "P4", "P5", "OCT"] {
        let (code, out) = cli(&["validate", name]);
        assert_eq!(code, ExitCode::Ok, "{out}");
        assert!(out.starts_with(&format!("{name}: valid")));
    }
    // P1 with one label changed: parses, but a cusp no longer closes up.
    let dir = tempfile::tempdir().unwrap();
    let bad = catalog("P1").unwrap().to_icp().replacen("edge 0 1 3", "edge 0 1 4", 1);
    let path = dir.path().join("bad.icp");
    std::fs::write(&path, &bad).unwrap();
    let (code, out) = cli(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, ExitCode::Failure, "{out}");

    let (code, _) = cli(&["validate", "/nonexistent/x.icp"]);
    assert_eq!(code, ExitCode::Usage);
    std::fs::write(dir.path().join("garbage.icp"), "faces two\n").unwrap();
    let (code, _) = cli(&["validate", dir.path().join("garbage.icp").to_str().unwrap()]);
    assert_eq!(code, ExitCode::Usage);
}

#[test]
fn growth_prints_both_forms_and_series() {
    let (code, out) = cli(&["growth", "P3", "--series", "3"]);
    assert_eq!(code, ExitCode::Ok);
    assert!(out.contains("forms agree: true"));
    assert!(out.contains("series: 1 4 12 30"));
    assert!(out.contains("g(t) = 6t^7+2t^6+4t^5+8t^4+4t^2+2t-2"));
    let (_, tsv) = cli(&["--tsv", "growth", "P1", "--series", "1"]);
    assert!(tsv.contains("P1\ta\t1\t4\n"));
}

#[test]
fn rate_exit_codes() {
    let (code, out) = cli(&["rate", "P1"]);
    assert_eq!(code, ExitCode::Ok);
    assert!(out.contains("tau ~ 2.03073"));
    assert!(out.contains("perron: true"));
    let (code, out) = cli(&["rate", "OCT"]);
    assert_eq!(code, ExitCode::Ok);
    assert!(out.contains("tau = 5 (exact)"));
    let (code, _) = cli(&["rate", "--poly", "16t^2-8t+1"]);
    assert_eq!(code, ExitCode::Inconclusive);
    let (code, _) = cli(&["rate", "P1", "--tol", "-3"]);
    assert_eq!(code, ExitCode::Usage);
    let (code, _) = cli(&["rate", "--poly", "t^^2"]);
    assert_eq!(code, ExitCode::Usage);
}

#[test]
fn volume_and_catalog() {
    let (code, out) = cli(&["volume", "P5"]);
    assert_eq!(code, ExitCode::Ok);
    assert!(out.starts_with("vol(P5) = 1.83193118835"), "{out}");
    assert!(out.contains(" +/- "));
    assert_eq!(cli(&["volume", "OCT"]).0, ExitCode::Usage);

    let (code, out) = cli(&["catalog"]);
    assert_eq!(code, ExitCode::Ok);
    assert_eq!(out.lines().count(), 7);
    assert!(out.lines().any(|l| l.starts_with("OCT") && l.contains("5 exact")));
    let (_, tsv) = cli(&["--tsv", "catalog"]);
    assert_eq!(tsv.lines().next(), Some("name\tf\tc\ttau\tvol"));
}

#[test]
fn oracle_matches_growth_series() {
    let (code, out) = cli(&["oracle", "P2", "--depth", "5"]);
    assert_eq!(code, ExitCode::Ok);
    let oracle: Vec<String> = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').nth(1).unwrap().to_string())
        .collect();
    let (_, growth) = cli(&["growth", "P2", "--series", "5"]);
    let series = growth.lines().find_map(|l| l.strip_prefix("series: ")).unwrap();
    assert_eq!(oracle.join(" "), series);
}

#[test]
fn glue_with_map_and_auto() {
    let (code, out) = cli(&[
        "glue",
        "P1",
        "P1",
        "--face-a",
        "0",
        "--face-b",
        "0",
        "--map",
        "2:2,1:3,3:1",
    ]);
    assert_eq!(code, ExitCode::Ok, "{out}");
    assert!(out.contains("faces 5"));
    let (code, _) = cli(&[
        "glue",
        "P1",
        "P1",
        "--face-a",
        "0",
        "--face-b",
        "0",
        "--map",
        "1:1,2:2,3:3",
    ]);
    assert_eq!(code, ExitCode::Failure);
    let (code, out) = cli(&["glue", "P2", "P2", "--face-a", "0", "--face-b", "0", "--auto"]);
    assert_eq!(code, ExitCode::Ok);
    assert!(out.matches("# glueable").count() >= 1);
    let (code, _) = cli(&["glue", "P1", "P1", "--face-a", "9", "--face-b", "0", "--auto"]);
    assert_eq!(code, ExitCode::Usage);
    let (code, _) = cli(&["glue", "P1", "P1", "--face-a", "0", "--face-b", "0"]);
    assert_eq!(code, ExitCode::Usage);
}

#[test]
fn batch_mode_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["P1", "P3"] {
        std::fs::write(dir.path().join(format!("{name}.icp")), catalog(name).unwrap().to_icp()).unwrap();
    }
    let d = dir.path().to_str().unwrap();
    let (code, out) = cli(&["--all", d, "--tsv", "rate"]);
    assert_eq!(code, ExitCode::Ok);
    assert_eq!(out.lines().count(), 2);
    assert_eq!(cli(&["--all", d, "--tsv", "rate"]).1, out);
    assert_eq!(cli(&["--all", d, "validate", "P1"]).0, ExitCode::Usage);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ideal-coxeter");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["rate", "OCT"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("tau = 5 (exact)"));
    assert_eq!(status(&["rate", "--poly", "16t^2-8t+1"]).status.code(), Some(3));
    let missing = status(&["validate", "missing.icp"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(!missing.stderr.is_empty());
    assert_eq!(status(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}

#[test]
fn tolerance_from_environment() {
    let bin = env!("CARGO_BIN_EXE_ideal-coxeter");
    let out = Command::new(bin)
        .args(["rate", "P1"])
        .env("IDEAL_COXETER_TOL", "1/1000")
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    let err: f64 = text
        .lines()
        .find_map(|l| l.split("+/- ").nth(1))
        .unwrap()
        .parse()
        .unwrap();
    assert!(err > 1e-6 && err < 1e-2, "{text}");
}
