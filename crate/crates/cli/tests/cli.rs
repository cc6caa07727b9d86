use std::path::Path;
use std::process::{Command, Output};

use invpoly_cli::CoeffFile;
use serde_json::Value;

fn invpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invpoly")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen_to(path: &Path, args: &[&str]) -> CoeffFile {
    let mut all = vec!["gen", "--out", path.to_str().unwrap()];
    all.extend_from_slice(args);
    let o = invpoly(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    CoeffFile::load(path).unwrap()
}

#[test]
fn degree_examples() {
    for (method, kappa, eps, want) in [
        ("optimal", "2", "1.0", "1"),
        ("chebiter", "2", "0.1", "7"),
        ("taylor", "2", "0.1", "23"),
    ] {
        let o = invpoly(&["degree", "--method", method, "--kappa", kappa, "--eps", eps]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), format!("{want}\n"), "{method}");
    }
    let o = invpoly(&["degree", "--method", "taylor-min", "--kappa", "2", "--eps", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_examples() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.json");

    let f = gen_to(&p, &["--method", "optimal", "--kappa", "2", "--eps", "1"]);
    assert_eq!((f.degree, f.basis.as_str()), (1, "chebyshev-odd"));
    assert!((f.coefficients[0] - 2.0).abs() < 1e-14);
    assert!((f.achieved_eps_grid - 1.0).abs() < 1e-12);
    assert_eq!(f.target_eps, Some(1.0));

    let f = gen_to(&p, &["--method", "chebiter", "--kappa", "2", "--degree", "1"]);
    assert!((f.coefficients[0] - 1.6).abs() < 1e-14);
    assert_eq!(f.target_eps, None);

    let f = gen_to(&p, &["--method", "remez", "--kappa", "2", "--degree", "1"]);
    assert!((f.coefficients[0] - 2.0).abs() < 1e-8);
    assert!((f.achieved_eps_grid - 1.0).abs() < 1e-8);
}

#[test]
fn coeff_file_field_names() {
    let o = invpoly(&["gen", "--method", "optimal", "--kappa", "10", "--eps", "1e-3"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        [
            "a",
            "achieved_eps_grid",
            "basis",
            "coefficients",
            "degree",
            "generator_version",
            "kappa",
            "max_certified",
            "max_sampled",
            "method",
            "target_eps",
        ]
    );
    assert_eq!(v["method"], "optimal");
    assert_eq!(v["degree"].as_u64().unwrap() as usize, 2 * v["coefficients"].as_array().unwrap().len() - 1);
}

#[test]
fn round_trip_reproduces_measurements() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.json");
    for args in [
        ["--method", "optimal", "--kappa", "50", "--eps", "1e-9"],
        ["--method", "taylor-min", "--kappa", "5", "--eps", "1e-4"],
    ] {
        let f = gen_to(&p, &args);
        let o = invpoly(&["error", "--input", p.to_str().unwrap()]);
        assert!(o.status.success());
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["eps_measured"].as_f64().unwrap(), f.achieved_eps_grid);
        let o = invpoly(&["max", "--input", p.to_str().unwrap()]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["sampled_max"].as_f64().unwrap(), f.max_sampled);
        assert_eq!(v["certified_max"].as_f64().unwrap(), f.max_certified);

        // the series itself survives serialization bit for bit
        let again = CoeffFile::load(&p).unwrap();
        assert_eq!(again, f);
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["gen", "--method", "chebiter", "--kappa", "30", "--eps", "1e-7"];
    let a = invpoly(&args);
    let b = invpoly(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    // clap-level and recipe-level usage errors
    assert_eq!(invpoly(&["gen", "--method", "optimal", "--kappa", "2"]).status.code(), Some(2));
    assert_eq!(
        invpoly(&["gen", "--method", "optimal", "--kappa", "2", "--eps", "0.1", "--degree", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(invpoly(&["gen", "--method", "remez", "--kappa", "2", "--eps", "0.1"]).status.code(), Some(2));
    assert_eq!(invpoly(&["gen", "--method", "taylor-min", "--kappa", "2", "--degree", "5"]).status.code(), Some(2));
    assert_eq!(invpoly(&["gen", "--method", "optimal", "--kappa", "0.5", "--eps", "0.1"]).status.code(), Some(2));
    assert_eq!(invpoly(&["frobnicate"]).status.code(), Some(2));
    // resource cap: degree above 10⁶
    assert_eq!(
        invpoly(&["gen", "--method", "optimal", "--kappa", "2", "--degree", "2000001"]).status.code(),
        Some(3)
    );
    assert_eq!(invpoly(&["gen", "--method", "taylor", "--kappa", "1e5", "--eps", "1e-3"]).status.code(), Some(3));
    // largest Remez size converges; one step past it is rejected
    assert_eq!(invpoly(&["remez", "--kappa", "1000", "--degree", "47"]).status.code(), Some(0));
    assert_eq!(invpoly(&["remez", "--kappa", "1000", "--degree", "49"]).status.code(), Some(2));
}

#[test]
fn compare_table_and_fits() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.csv");
    let o = invpoly(&[
        "compare",
        "--degrees-only",
        "--method",
        "optimal,chebiter,taylor",
        "--kappa",
        "10,100,1000",
        "--eps",
        "1e-2,1e-3,1e-4,1e-5,1e-6,1e-7,1e-8,1e-9,1e-10,1e-11,1e-12",
        "--format",
        "json",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 99);
    let slope = |m: &str| {
        v["fits"].as_array().unwrap().iter().find(|f| f["method"] == m).unwrap()["slope"].as_f64().unwrap()
    };
    assert!((0.98..=1.02).contains(&slope("optimal")));
    assert!((0.95..=1.07).contains(&slope("chebiter")));
    assert!((2.3..=2.9).contains(&slope("taylor")));
}

#[test]
fn compare_csv_with_generation() {
    let o = invpoly(&[
        "compare", "--method", "optimal,remez", "--kappa", "10", "--eps", "1e-2,1e-4", "--grid-size", "20000",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "method,kappa,eps,kappa_log_kappa_over_eps,degree,achieved_eps_grid,max_certified,error"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("optimal,10.0,0.01,"));
    // remez has no ε-driven recipe; the cell records why and the run continues
    assert!(rows[2].starts_with("remez,") && rows[2].ends_with("remez requires --degree"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("fit optimal"));
}

#[test]
fn csv_outputs() {
    let o = invpoly(&["gen", "--method", "optimal", "--kappa", "3", "--degree", "3", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("term,coefficient"));
    assert_eq!(text.lines().count(), 3);
    let o = invpoly(&["error", "--method", "optimal", "--kappa", "2", "--eps", "1", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().next(), Some("kappa,a,degree,grid_size,eps_measured,argmax_x"));
}
