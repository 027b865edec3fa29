use std::process::{Command, Output};

fn critpoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critpoint"))
        .args(args)
        .env_remove("CRITPOINT_PRIME")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("critpoint-cli-{}-{name}", std::process::id()))
}

#[test]
fn analyze_reports_profile() {
    let o = critpoint(&["analyze", "--n", "3", "--p", "1", "--degrees", "3,2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("delta: 14\n"));
    assert!(out.contains("dreg: 5\n"));
    assert!(out.contains("hilbert_series: 1,3,5,4,1\n"));
}

#[test]
fn solve_running_example() {
    let path = temp("running.txt");
    std::fs::write(
        &path,
        "prime = 65521\nn = 2\np = 1\ndegrees = 1,2\nq = X1\nf1 = X1^2 + X2^2 - 1\n",
    )
    .unwrap();
    let o = critpoint(&["solve", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("lex:\nX2\nX1^2-1\n"));
    assert!(out.contains("delta: 2\ndwit_empirical: 2\n"));
}

#[test]
fn gen_then_solve() {
    let path = temp("gen.txt");
    let o = critpoint(&[
        "gen",
        "--n",
        "3",
        "--p",
        "1",
        "--degrees",
        "2,3",
        "--seed",
        "9",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = critpoint(&["solve", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(o.status.success());
    assert!(stdout(&o).contains("delta: 21\n"));
}

#[test]
fn prime_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_critpoint"))
        .args(["gen", "--n", "2", "--p", "1", "--degrees", "1,2"])
        .env("CRITPOINT_PRIME", "101")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("prime = 101\n"));
}

#[test]
fn kpoly_and_en_check() {
    let o = critpoint(&["kpoly", "--n", "3", "--p", "1", "--degrees", "3,2"]);
    let out = stdout(&o);
    assert!(out.contains("grothendieck: t1^2*t2 + t1*t2^2 - 3*t1*t2 + 1\n"));
    assert!(out.contains("kpoly: t^5 + t^4 - 3*t^3 + 1\n"));
    let o = critpoint(&["en-check", "--n", "4", "--p", "1", "--degrees", "3,2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("ranks: 1,6,8,3\n"));
}

#[test]
fn sweep_agrees() {
    let o = critpoint(&["sweep", "--max-n", "3", "--max-degree", "3"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("MISMATCH"));
}

#[test]
fn bench_and_plot_data() {
    let csv = temp("bench.csv");
    let o = critpoint(&[
        "bench",
        "--grid",
        "fig2",
        "--max-n",
        "3",
        "--seeds",
        "2",
        "-o",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("seed,n,p,degrees,delta,dreg,dwit_bound,dwit_empirical,A,G,logA_over_logG,solve_time_seconds,fglm_time_seconds,status\n"));
    assert_eq!(text.lines().count(), 5);
    let o = critpoint(&["plot-data", csv.to_str().unwrap(), "--figure", "fig2"]);
    std::fs::remove_file(&csv).ok();
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.split(' ').count() == 2));
}

#[test]
fn exit_codes() {
    assert_eq!(critpoint(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(critpoint(&["analyze", "--n", "3"]).status.code(), Some(1));
    assert_eq!(
        critpoint(&["analyze", "--n", "2", "--p", "2", "--degrees", "1,2,2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(critpoint(&["--help"]).status.code(), Some(0));

    let bad = temp("bad.txt");
    std::fs::write(
        &bad,
        "prime = 65521\nn = 2\np = 1\ndegrees = 1,2\nq = X1 +* 2\nf1 = X1^2\n",
    )
    .unwrap();
    let o = critpoint(&["solve", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5, column 9"));

    std::fs::write(
        &bad,
        "prime = 65521\nn = 2\np = 1\ndegrees = 1,2\nq = X1\nf1 = X1^2\n",
    )
    .unwrap();
    let o = critpoint(&["solve", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).ok();
    assert_eq!(o.status.code(), Some(2));
}
