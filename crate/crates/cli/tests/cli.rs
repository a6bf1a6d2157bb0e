use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rangeavoid::circuit::{parse_instance, parse_nc0, BooleanMap};
use rangeavoid::verify::RigidityCertificate;
use rangeavoid::GF2Vector;
use rangeavoid_cli::Report;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_rangeavoid");

struct Run {
    code: i32,
    stdout: String,
    report: Report,
}

fn run_env(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(BIN);
    cmd.args(args).current_dir(dir).env_remove("RANGEAVOID_ENUM_LIMIT").env_remove("RANGEAVOID_MAX_BRANCHES");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output { status, stdout, stderr } = cmd.output().expect("binary runs");
    Run {
        code: status.code().expect("exit code"),
        stdout: String::from_utf8(stdout).unwrap(),
        report: Report::parse(&String::from_utf8(stderr).unwrap()),
    }
}

fn run(dir: &Path, args: &[&str]) -> Run {
    run_env(dir, args, &[])
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn and9(dir: &Path) {
    let mut text = String::from("nc0 3 9 3\n");
    for j in 0..9 {
        text.push_str(&format!("{j}: 0 1 2: 00000001\n"));
    }
    write(dir, "and9.nc0", &text);
}

#[test]
fn solve_nine_ands() {
    let dir = TempDir::new().unwrap();
    and9(dir.path());
    let r = run(dir.path(), &["solve", "--alg", "subspace-union", "--in", "and9.nc0", "--out", "y.vec", "--verify"]);
    assert_eq!(r.code, 0, "{}", r.report);
    assert_eq!(fs::read_to_string(dir.path().join("y.vec")).unwrap(), "100000000\n");
    assert_eq!(r.report.get("verified"), Some("yes"));
    assert_eq!(r.report.get("t"), Some("3"));
    assert_eq!(r.report.get("status"), Some("ok"));
}

#[test]
fn solve_error_codes() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "k3.nc0", "nc0 3 4 3\n0: 0 1 2: 00000001\n1: 0: 01\n2: 1: 01\n3: 2: 01\n");
    let r = run(dir.path(), &["solve", "--alg", "nc02", "--in", "k3.nc0"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.report.get("status"), Some("error"));
    assert_eq!(r.report.get("exit"), Some("3"));

    assert_eq!(run(dir.path(), &["solve", "--alg", "brute", "--in", "missing.nc0"]).code, 2);
    write(dir.path(), "bad.nc0", "nc0 3 1 3\n0: 0 1: 0000000\n");
    assert_eq!(run(dir.path(), &["solve", "--alg", "brute", "--in", "bad.nc0"]).code, 2);
    assert_eq!(run(dir.path(), &["solve", "--alg", "quantum", "--in", "k3.nc0"]).code, 2);
    assert_eq!(run(dir.path(), &["solve", "--alg", "degree2", "--in", "k3.nc0"]).code, 2);

    run(dir.path(), &["gen", "random-nc0", "--n", "8", "--m", "24", "--k", "3", "--seed", "1", "--out", "c.nc0"]);
    let tight = run(dir.path(), &["solve", "--alg", "subspace-union", "--in", "c.nc0", "--max-branches", "2"]);
    assert_eq!(tight.code, 4);
    let env = run_env(
        dir.path(),
        &["solve", "--alg", "subspace-union", "--in", "c.nc0"],
        &[("RANGEAVOID_MAX_BRANCHES", "2")],
    );
    assert_eq!(env.code, 4);
    let cap = run(dir.path(), &["solve", "--alg", "brute", "--in", "c.nc0", "--limit", "100"]);
    assert_eq!(cap.code, 4);
}

#[test]
fn answers_are_the_same_for_any_worker_count() {
    let dir = TempDir::new().unwrap();
    run(dir.path(), &["gen", "random-nc0", "--n", "10", "--m", "30", "--k", "3", "--seed", "4", "--out", "c.nc0"]);
    let ys: Vec<String> = ["1", "2", "4"]
        .iter()
        .map(|w| {
            let r = run(dir.path(), &["--workers", w, "solve", "--alg", "subspace-union", "--in", "c.nc0", "--verify"]);
            assert_eq!(r.code, 0);
            r.stdout
        })
        .collect();
    assert!(ys.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn gen_is_deterministic_and_shaped() {
    let dir = TempDir::new().unwrap();
    let args = ["gen", "random-nc0", "--n", "8", "--m", "24", "--k", "3", "--seed", "7"];
    let (a, b) = (run(dir.path(), &args), run(dir.path(), &args));
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.contains("seed=7"));
    let c = parse_nc0(&a.stdout).unwrap();
    assert_eq!((c.n(), c.m(), c.k()), (8, 24, 3));

    let g = run(dir.path(), &["gen", "rigid", "--n", "4", "--r", "1", "--s", "1"]);
    assert_eq!(g.code, 0);
    let g = parse_instance(&g.stdout).unwrap();
    assert_eq!((g.as_map().input_len(), g.as_map().output_len()), (24, 16));
    assert_eq!(run(dir.path(), &["gen", "rigid", "--n", "3", "--r", "1", "--s", "1"]).code, 2);

    let e = run(dir.path(), &["gen", "sparse-encoder", "--n", "9", "--s", "2", "--d", "2"]);
    assert_eq!(e.code, 0);
    assert_eq!(e.report.get("outputs"), Some("9"));
    assert_eq!(run(dir.path(), &["gen", "random-poly", "--n", "3", "--m", "4", "--d", "2", "--seed", "0"]).code, 0);
    assert_eq!(run(dir.path(), &["gen", "random-nc0", "--n", "2", "--m", "4", "--k", "3", "--seed", "0"]).code, 2);
}

#[test]
fn seed_report_echoes_the_generator() {
    let dir = TempDir::new().unwrap();
    run(dir.path(), &["gen", "random-nc0", "--n", "6", "--m", "18", "--k", "3", "--seed", "9", "--out", "c.nc0"]);
    let r = run(dir.path(), &["solve", "--alg", "brute", "--in", "c.nc0", "--seed-report"]);
    let source = r.report.get("instance_source").unwrap();
    assert!(source.contains("chacha8-stream-v1") && source.contains("seed=9"), "{source}");
}

#[test]
fn encode_decode_round_trip() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "p.poly", "poly 3 1 2\n0: x0*x1 + x2\n");
    let r = run(dir.path(), &["encode", "--in", "p.poly", "--out", "f.nc0", "--layout", "l.txt"]);
    assert_eq!(r.code, 0, "{}", r.report);
    let f = parse_nc0(&fs::read_to_string(dir.path().join("f.nc0")).unwrap()).unwrap();
    assert_eq!((f.n(), f.m()), (6, 4));
    // x = 110, r = 10, s = 1
    let w: GF2Vector = "110101".parse().unwrap();
    let yhat = f.evaluate(&w).unwrap();
    assert_eq!(yhat.to_string(), "0001");
    write(dir.path(), "yhat.vec", &format!("{yhat}\n"));
    let d = run(dir.path(), &["decode", "--layout", "l.txt", "--in", "yhat.vec", "--out", "y.vec"]);
    assert_eq!(d.code, 0);
    assert_eq!(fs::read_to_string(dir.path().join("y.vec")).unwrap(), "1\n");

    // an output with no monomials is padded with zero blocks
    write(dir.path(), "z.poly", "poly 2 2 2\n0: x0*x1\n1: 0\n");
    assert_eq!(run(dir.path(), &["encode", "--in", "z.poly", "--out", "z.nc0", "--layout", "zl.txt"]).code, 0);
    write(dir.path(), "zhat.vec", "1001\n");
    let d = run(dir.path(), &["decode", "--layout", "zl.txt", "--in", "zhat.vec"]);
    assert_eq!((d.code, d.stdout.as_str()), (0, "11\n"));

    write(dir.path(), "short.vec", "101\n");
    assert_eq!(run(dir.path(), &["decode", "--layout", "l.txt", "--in", "short.vec"]).code, 2);
    let layout = fs::read_to_string(dir.path().join("l.txt")).unwrap();
    write(dir.path(), "bad.txt", &layout.replace("out 0", "out 3"));
    assert_eq!(run(dir.path(), &["decode", "--layout", "bad.txt", "--in", "yhat.vec"]).code, 2);
}

#[test]
fn degree2_through_the_encoding() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "p.poly", "poly 2 3 2\n0: x0*x1\n1: x0 + x1\n2: x0 + 1\n");
    let r = run(dir.path(), &["solve", "--alg", "degree2", "--in", "p.poly", "--verify"]);
    assert_eq!(r.code, 0, "{}", r.report);
    assert_eq!(r.report.get("inner"), Some("brute"));
    let su = run(dir.path(), &["solve", "--alg", "degree2", "--inner", "subspace-union", "--in", "p.poly"]);
    assert_eq!(su.code, 3);
    assert!(su.report.get("error").unwrap().contains("admissible: [brute]"));
    assert_eq!(run(dir.path(), &["solve", "--alg", "nc02", "--in", "p.poly"]).code, 2);
}

#[test]
fn verify_accepts_answers_and_rejects_range_points() {
    let dir = TempDir::new().unwrap();
    and9(dir.path());
    run(dir.path(), &["solve", "--alg", "one-subspace", "--in", "and9.nc0", "--out", "y.vec"]);
    let ok = run(dir.path(), &["verify", "--circuit", "and9.nc0", "--point", "y.vec"]);
    assert_eq!(ok.code, 0);
    assert_eq!(ok.report.get("verdict"), Some("avoided"));
    write(dir.path(), "hit.vec", "111111111\n");
    let hit = run(dir.path(), &["verify", "--circuit", "and9.nc0", "--point", "hit.vec"]);
    assert_eq!(hit.code, 5);
    assert_eq!(hit.report.get("verdict"), Some("in-range"));
    write(dir.path(), "long.vec", "1111111111\n");
    assert_eq!(run(dir.path(), &["verify", "--circuit", "and9.nc0", "--point", "long.vec"]).code, 2);
    assert_eq!(run(dir.path(), &["verify", "--circuit", "and9.nc0", "--point", "y.vec", "--limit", "4"]).code, 4);
}

#[test]
fn verify_never_fails_on_solver_output() {
    let dir = TempDir::new().unwrap();
    for (n, m, k, alg) in
        [(6, 7, 2, "nc02"), (7, 21, 3, "subspace-union"), (6, 17, 3, "one-subspace"), (5, 6, 3, "brute")]
    {
        for seed in 0..3 {
            let (n, m, k, s) = (n.to_string(), m.to_string(), k.to_string(), seed.to_string());
            run(dir.path(), &["gen", "random-nc0", "--n", &n, "--m", &m, "--k", &k, "--seed", &s, "--out", "c.nc0"]);
            let r = run(dir.path(), &["solve", "--alg", alg, "--in", "c.nc0", "--verify"]);
            assert_eq!(r.code, 0, "{alg} seed {seed}: {}", r.report);
        }
    }
}

#[test]
fn rigid_pipeline_certificates() {
    let dir = TempDir::new().unwrap();
    let r =
        run(dir.path(), &["rigid-pipeline", "--n", "4", "--r", "1", "--s", "0", "--alg", "brute", "--cert", "c.txt"]);
    assert_eq!(r.code, 0, "{}", r.report);
    assert_eq!(r.report.get("verdict"), Some("rigid"));
    let cert = RigidityCertificate::from_text(&fs::read_to_string(dir.path().join("c.txt")).unwrap()).unwrap();
    assert!(cert.is_rigid());
    assert!(cert.check().unwrap());

    // 24 inputs against 16 outputs: no stretch to exploit
    let r =
        run(dir.path(), &["rigid-pipeline", "--n", "4", "--r", "1", "--s", "1", "--alg", "brute", "--cert", "c1.txt"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.report.get("g_inputs"), Some("24"));
    assert!(!dir.path().join("c1.txt").exists());
    assert_eq!(run(dir.path(), &["rigid-pipeline", "--n", "5", "--r", "1", "--s", "0"]).code, 2);
}

#[test]
fn bench_csv() {
    let dir = TempDir::new().unwrap();
    let r = run(
        dir.path(),
        &["bench", "--k", "3", "--n-range", "12", "--m-rule", "3*n,6*n,12*n", "--seeds", "2", "--csv", "b.csv"],
    );
    assert_eq!(r.code, 0, "{}", r.report);
    let csv = fs::read_to_string(dir.path().join("b.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,m,k,alg,t,iters,micros,verified"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    let ts: Vec<usize> = rows.iter().map(|r| r[4].parse().unwrap()).collect();
    assert_eq!(ts, [12, 12, 6, 6, 3, 3]);

    let two = run(
        dir.path(),
        &["bench", "--k", "3", "--n-range", "6..7", "--m-rule", "3*n", "--alg", "subspace-union,brute", "--verify"],
    );
    assert_eq!(two.code, 0);
    let rows: Vec<&str> = two.stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.ends_with(",yes")));
    assert_eq!(run(dir.path(), &["bench", "--k", "3", "--n-range", "6", "--m-rule", "n-9"]).code, 2);
}
