use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn kneser(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kneser"))
        .args(args)
        .env("KNESER_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn boolean31_file_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g831.txt");
    let out = kneser(&[
        "color",
        "--method",
        "boolean31",
        "--t",
        "3",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rep = json(&out);
    assert_eq!(rep["num_colors"], 7);
    assert_eq!(rep["proper"], true);
    assert_eq!(rep["graph"], "G(8, 3, 1)");
    let text = fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("#kneser n=8 r=3 s=1"));
    assert_eq!(text.lines().count(), 57);

    let v = kneser(&["verify", file.to_str().unwrap()]);
    assert!(v.status.success());
    assert_eq!(json(&v)["verification"]["proper"], true);
}

#[test]
fn factorization_colors() {
    let out = kneser(&["color", "--method", "factorization", "--n", "8"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["num_colors"], 7);
}

#[test]
fn corrupted_coloring_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.txt");
    let out = kneser(&[
        "color",
        "--method",
        "factorization",
        "--n",
        "4",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // give {1,2} the color of {1,3}; they meet in one element
    let text = fs::read_to_string(&file).unwrap();
    let c13 = text
        .lines()
        .find(|l| l.starts_with("1,3\t"))
        .unwrap()
        .split('\t')
        .nth(1)
        .unwrap()
        .to_string();
    let bad: String = text
        .lines()
        .map(|l| {
            if l.starts_with("1,2\t") {
                format!("1,2\t{c13}\n")
            } else {
                format!("{l}\n")
            }
        })
        .collect();
    fs::write(&file, bad).unwrap();
    let v = kneser(&["verify", file.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
    let err = String::from_utf8_lossy(&v.stderr);
    assert!(err.contains("violation: 1,2 1,3"), "{err}");
    assert_eq!(json(&v)["verification"]["proper"], false);

    fs::write(
        &file,
        "#kneser n=4 r=2 s=1 mode=exact method=x seed=0\n1,2\t0\n1,2\tq\n",
    )
    .unwrap();
    let v = kneser(&["verify", file.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&v.stderr).contains("line 3"));
}

#[test]
fn exact_solvers() {
    let out = kneser(&["chi-exact", "--n", "5", "--r", "2", "--s", "0"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "3");
    let out = kneser(&["alpha-exact", "--n", "5", "--r", "2", "--s", "0"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "4");
    let out = kneser(&["chi-exact", "--n", "9", "--r", "4", "--s", "0"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn design_check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let fano = dir.path().join("fano.txt");
    fs::write(
        &fano,
        "#design n=7 r=3 s=2\n1,2,3\n1,4,5\n1,6,7\n2,4,6\n2,5,7\n3,4,7\n3,5,6\n",
    )
    .unwrap();
    let out = kneser(&["design-check", fano.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["exact_pass"], true);
    let partial = dir.path().join("partial.txt");
    fs::write(&partial, "#design n=7 r=3 s=2\n1,2,3\n1,4,5\n").unwrap();
    assert_eq!(
        kneser(&["design-check", partial.to_str().unwrap()]).status.code(),
        Some(1)
    );
    assert!(kneser(&["design-check", partial.to_str().unwrap(), "--mode", "approx"])
        .status
        .success());
}

#[test]
fn g42_run_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    let ra = dir.path().join("a.json");
    let out = kneser(&[
        "color",
        "--method",
        "g42",
        "--p",
        "5",
        "--seed",
        "1",
        "--out",
        a.to_str().unwrap(),
        "--report",
        ra.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rep: Value = serde_json::from_str(&fs::read_to_string(&ra).unwrap()).unwrap();
    assert_eq!(rep["proper"], true);
    assert_eq!(rep["seed"], 1);
    assert!(rep["num_colors"].as_u64().unwrap() <= 1141);
    let out = Command::new(env!("CARGO_BIN_EXE_kneser"))
        .args([
            "color",
            "--method",
            "g42",
            "--p",
            "5",
            "--seed",
            "1",
            "--out",
            b.to_str().unwrap(),
        ])
        .env("KNESER_THREADS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn g42_stats_and_bad_combinations() {
    let out = kneser(&["g42-stats", "--p", "5"]);
    assert!(out.status.success());
    let st = json(&out);
    assert_eq!(st["family_size"], 264);
    assert!(st["orbit_count"].as_u64().unwrap() >= 1);
    assert!(st["short_fraction"].is_number());

    let bad = kneser(&["color", "--method", "g42", "--n", "24"]);
    assert_eq!(bad.status.code(), Some(2));
    let bad = kneser(&["color", "--method", "g42", "--p", "5", "--n", "24"]);
    assert_eq!(bad.status.code(), Some(2));
    let bad = kneser(&["color", "--method", "boolean31", "--n", "12"]);
    assert_eq!(bad.status.code(), Some(2));
    let bad = kneser(&["color", "--method", "factorization", "--n", "7"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn greedy_and_list_methods() {
    let out = kneser(&["color", "--method", "greedy", "--n", "7", "--r", "3", "--s", "1"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["proper"], true);
    let out = kneser(&[
        "color", "--method", "list", "--n", "6", "--r", "2", "--s", "0", "--seed", "4",
    ]);
    assert!(out.status.success());
    let rep = json(&out);
    assert_eq!(rep["details"]["m"], 22);
    assert_eq!(rep["seed"], 4);
}
