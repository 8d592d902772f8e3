use std::path::Path;
use std::process::{Command, Output};

fn interflux(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_interflux"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read(path: impl AsRef<Path>) -> Vec<u8> {
    std::fs::read(path.as_ref()).unwrap_or_else(|e| panic!("{}: {e}", path.as_ref().display()))
}

#[test]
fn solve_defaults_write_snapshots_with_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let o = interflux(dir.path(), &["solve", "--out", "run", "--set", "grid.n_cells=400"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let snap = String::from_utf8(read(dir.path().join("run/snapshot_000.csv"))).unwrap();
    assert!(snap.starts_with("# left flux:"));
    assert!(snap.contains("# t=0\nx,value\n"));
    assert_eq!(snap.lines().filter(|l| !l.starts_with('#')).count(), 401);
    assert!(dir.path().join("run/snapshot_002.csv").exists());
    let traces = String::from_utf8(read(dir.path().join("run/traces.csv"))).unwrap();
    assert!(traces.contains("t,u_left,u_right,flux\n"));
    let kv = String::from_utf8(read(dir.path().join("run/run.kv"))).unwrap();
    assert!(kv.contains("grid.n_cells=400\n"));
}

#[test]
fn solve_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        let o = interflux(dir.path(), &["solve", "--out", out, "--seed", "11", "--set", "grid.n_cells=600"]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    for f in ["snapshot_000.csv", "snapshot_001.csv", "snapshot_002.csv", "traces.csv", "run.kv"] {
        assert_eq!(read(dir.path().join("a").join(f)), read(dir.path().join("b").join(f)), "{f}");
    }
    let o = interflux(dir.path(), &["solve", "--out", "c", "--seed", "12", "--set", "grid.n_cells=600"]);
    assert_eq!(code(&o), 0);
    assert_ne!(read(dir.path().join("a/traces.csv")), read(dir.path().join("c/traces.csv")));
}

#[test]
fn invalid_cfl_is_a_config_error_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let o = interflux(dir.path(), &["solve", "--set", "cfl=1.5"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("cfl"), "{}", stderr(&o));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn config_file_then_overrides() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("run.cfg"),
        "# riemann problem\ninitial.kind = riemann\ninitial.left = 0.5\ninitial.right = -0.5\ngrid.n_cells = 200\n",
    )
    .unwrap();
    let o = interflux(dir.path(), &["solve", "--config", "run.cfg", "--set", "grid.n_cells=300"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let kv = String::from_utf8(read(dir.path().join("out/run.kv"))).unwrap();
    assert!(kv.contains("grid.n_cells=300\n") && kv.contains("initial.kind=riemann\n"));

    std::fs::write(dir.path().join("bad.cfg"), "grid.cells = 10\n").unwrap();
    let o = interflux(dir.path(), &["solve", "--config", "bad.cfg"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("grid.cells"));
    let o = interflux(dir.path(), &["solve", "--config", "missing.cfg"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn tvs_prints_fractional_variation() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("hat.csv"), "x,value\n0,0\n1,1\n2,0\n").unwrap();
    let o = interflux(dir.path(), &["tvs", "hat.csv", "--s", "0.5"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = String::from_utf8(o.stdout).unwrap();
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("s,tv_s,subdivision_size"));
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(row, vec![0.5, 2.0, 3.0]);
}

#[test]
fn tvs_at_one_is_classical_variation() {
    let dir = tempfile::tempdir().unwrap();
    let values: [f64; 8] = [0.3, -1.2, 0.7, 0.7, 2.5, -0.4, 0.1, 0.05];
    let mut csv = String::from("x,value\n");
    for (i, v) in values.iter().enumerate() {
        csv.push_str(&format!("{i},{v}\n"));
    }
    std::fs::write(dir.path().join("sig.csv"), csv).unwrap();
    let o = interflux(dir.path(), &["tvs", "sig.csv", "--s", "1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = String::from_utf8(o.stdout).unwrap();
    let tv: f64 = out.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    let classical: f64 = values.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    assert!((tv - classical).abs() <= 1e-12 * classical, "{tv} vs {classical}");
}

#[test]
fn tvs_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("empty.csv"), "").unwrap();
    std::fs::write(dir.path().join("junk.csv"), "x,value\n0,abc\n").unwrap();
    for f in ["empty.csv", "junk.csv", "nope.csv"] {
        let o = interflux(dir.path(), &["tvs", f]);
        assert_eq!(code(&o), 2, "{f}: {}", stderr(&o));
    }
    std::fs::write(dir.path().join("ok.csv"), "x,value\n0,0\n1,1\n").unwrap();
    let o = interflux(dir.path(), &["tvs", "ok.csv", "--s", "1.5"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn counterexample_writes_three_files_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        let o = interflux(dir.path(), &["counterexample", "--p", "1", "--eps", "0.001", "--n", "200", "--out", out]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    for f in ["profile.csv", "initial.csv", "jumps.csv"] {
        assert_eq!(read(dir.path().join("a").join(f)), read(dir.path().join("b").join(f)), "{f}");
    }
    let jumps = String::from_utf8(read(dir.path().join("a/jumps.csv"))).unwrap();
    let rows: Vec<Vec<f64>> = jumps
        .lines()
        .skip(2)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 200);
    for r in &rows {
        // u_left - u_right matches the jump column
        assert!((r[2] - r[3] - r[4]).abs() <= 1e-15);
        assert!(r[4] > 0.0);
    }
    // positions decrease, partial sums increase
    assert!(rows.windows(2).all(|w| w[1][1] < w[0][1] && w[1][5] > w[0][5]));
    let initial = String::from_utf8(read(dir.path().join("a/initial.csv"))).unwrap();
    assert!(initial.contains("x_left,x_right,value\n"));
    let profile = String::from_utf8(read(dir.path().join("a/profile.csv"))).unwrap();
    assert!(profile.contains("x,value\n"));
}

#[test]
fn infeasible_counterexample_exits_with_index() {
    let dir = tempfile::tempdir().unwrap();
    let o = interflux(dir.path(), &["counterexample", "--i0", "10000", "--n", "1000000"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("k = "), "{}", stderr(&o));
    let o = interflux(dir.path(), &["counterexample", "--p", "1", "--eps", "0.5", "--n", "10000"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn exact_eval_samples_the_construction() {
    let dir = tempfile::tempdir().unwrap();
    let o = interflux(dir.path(), &["exact-eval", "--n", "100", "--set", "eval.t=0.5", "--set", "eval.points=51"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = String::from_utf8(read(dir.path().join("out/exact.csv"))).unwrap();
    assert!(text.starts_with("# exact solution at t=0.5\nx,value\n"));
    assert_eq!(text.lines().count(), 53);
    let o = interflux(dir.path(), &["exact-eval", "--set", "eval.t=2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_holder_passes_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = interflux(dir.path(), &["verify", "holder", "--out", "rep"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let summary = String::from_utf8(read(dir.path().join("rep/holder.txt"))).unwrap();
    assert!(summary.contains("verdict=pass"));
}

#[test]
fn verify_all_on_tiny_grids_never_passes_silently() {
    let dir = tempfile::tempdir().unwrap();
    let o = interflux(
        dir.path(),
        &["verify", "all", "--jobs", "3", "--set", "verify.grids=100,200", "--set", "verify.blowup_n=1000,10000"],
    );
    let c = code(&o);
    assert!(c == 4 || c == 5, "exit {c}");
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.lines().any(|l| l.contains(": fail") || l.contains(": inconclusive")));
    for name in ["smoothing_random", "traces", "outside", "interface", "holder"] {
        assert!(dir.path().join(format!("out/{name}.txt")).exists(), "{name}");
    }
}

#[test]
fn verify_rejects_unknown_suite() {
    let dir = tempfile::tempdir().unwrap();
    let o = interflux(dir.path(), &["verify", "foo"]);
    assert_eq!(code(&o), 2);
    let o = interflux(dir.path(), &["verify", "holder", "--jobs", "0"]);
    assert_eq!(code(&o), 2);
}
