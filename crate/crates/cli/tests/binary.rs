use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unruh-teleport"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn fidelity_sweep_to_stdout_with_manifest_on_stderr() {
    let o = run(&["fidelity-sweep", "--r-max", "0.5", "--r-step", "0.25"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "r,avg_fidelity,avg_fidelity_closed_form");
    assert_eq!(lines[1], "0,1,1");
    assert_eq!(lines.len(), 4);
    assert!(!csv.contains('\r'));

    let manifest = stderr(&o);
    assert_eq!(manifest.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(manifest.trim()).unwrap();
    assert_eq!(v["command"], "fidelity-sweep");
    assert_eq!(v["config"]["r_max"], 0.5);
    assert!(v["version"].is_string());
}

#[test]
fn entropy_sweep_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("entropy.csv");
    let manifest = dir.path().join("run.json");
    let o = run(&[
        "entropy-sweep", "--r-max", "0.2", "--r-step", "0.1", "--cutoff", "24",
        "--out", out.to_str().unwrap(), "--manifest", manifest.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty() && o.stderr.is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("r,S_pre,S_post,S_vac\n0,1,0,0\n"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(v["cutoff"], 24);
    assert_eq!(v["truncation_tails"].as_array().unwrap().len(), 3);
}

#[test]
fn gain_sweep_starts_at_one_bit() {
    let o = run(&["gain-sweep", "--r-max", "0.1", "--r-step", "0.05"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("r,dS_gain,dS_gain_tsm\n0,1,1\n"));
}

fn dump_matrix(provenance: &str) -> Vec<(usize, usize, f64, f64)> {
    let o = run(&[
        "state-dump", "--r", "0.6", "--l", "1", "--m", "0", "--alpha-re", "0.6", "--alpha-im", "0",
        "--beta-re", "0", "--beta-im", "0.8", "--cutoff", "30", "--provenance", provenance,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let trace: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# trace="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((trace - 1.0).abs() <= 1e-10);
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("row"))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect()
}

#[test]
fn state_dump_provenances_agree() {
    let a = dump_matrix("analytic");
    let n = dump_matrix("numeric");
    assert_eq!(a.len(), n.len());
    for (x, y) in a.iter().zip(&n) {
        assert_eq!((x.0, x.1), (y.0, y.1));
        assert!((x.2 - y.2).abs() <= 1e-10 && (x.3 - y.3).abs() <= 1e-10);
    }
}

#[test]
fn convert_reports_units() {
    let o = run(&["convert", "--acceleration", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let ac: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("a/c = "))
        .and_then(|l| l.strip_suffix(" 1/s"))
        .unwrap()
        .parse()
        .unwrap();
    assert!((ac - 3.3356409519815205e-8).abs() < 1e-20);
    assert!(text.contains(" K\n"));

    let o = run(&["convert", "--r", "0.5493061443340548"]);
    let tanh: f64 = stdout(&o)
        .lines()
        .find_map(|l| l.strip_prefix("tanh_r = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((tanh - 0.5).abs() <= 1e-15);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["fidelity-sweep", "--r-min", "2", "--r-max", "1"]).status.code(), Some(2));
    assert_eq!(run(&["fidelity-sweep", "--quadrature-points", "10"]).status.code(), Some(2));
    assert_eq!(run(&["fidelity-sweep", "--r-step", "0"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["state-dump"]).status.code(), Some(2));
    assert_eq!(run(&["convert"]).status.code(), Some(2));

    let o = run(&["fidelity-sweep", "--r-max", "0", "--out", "/nonexistent-dir/f.csv"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("/nonexistent-dir/f.csv"));
}
