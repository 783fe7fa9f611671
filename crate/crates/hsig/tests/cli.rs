use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hsig::export::to_csv;
use hsig::file;
use hsig_core::spectral::dft;
use hsig_core::{sample, Grid, Signal, C64};
use tempfile::TempDir;

fn hsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsig")).args(args).env_remove("HSIG_THREADS").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn save(dir: &TempDir, name: &str, s: &Signal) -> PathBuf {
    let p = dir.path().join(name);
    file::write(&p, s).unwrap();
    p
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const H1: &str = r#"{"dim":1,"quadrant_values":[[0,-1],[0,1]]}"#;

#[test]
fn hilbert_of_cosine_is_sine() {
    let dir = TempDir::new().unwrap();
    let grid = Grid::line(256, 8.0 * std::f64::consts::PI).unwrap();
    let input = save(&dir, "cos.hsig", &sample(&grid, |x| C64::new((3.0 * x[0]).cos(), 0.0)));
    let out = dir.path().join("out.hsig");
    let o = hsig(&["transform", "--in", p(&input), "--out", p(&out), "--hilbert", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let s = file::read(&out).unwrap();
    for (k, v) in s.values().iter().enumerate() {
        assert!((v - C64::new((3.0 * grid.coordinate(0, k)).sin(), 0.0)).norm() < 1e-12);
    }
    let o = hsig(&["transform", "--in", p(&input), "--out", p(&out), "--op", H1]);
    assert_eq!(code(&o), 0);
}

#[test]
fn analytic_signal_is_concentrated() {
    let dir = TempDir::new().unwrap();
    let grid = Grid::new(&[32, 32], &[4.0 * std::f64::consts::PI; 2]).unwrap();
    let s = sample(&grid, |x| C64::new((x[0] + 2.0 * x[1]).cos() + (-0.5 * x[0] + x[1]).sin(), 0.0));
    let input = save(&dir, "in.hsig", &s);
    let out = dir.path().join("out.hsig");
    let o = hsig(&["transform", "--in", p(&input), "--out", p(&out), "--analytic", "+-"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let spectrum = dft(&file::read(&out).unwrap()).unwrap();
    grid.for_each_index(|flat, idx| {
        let xi = grid.frequency_of_bin(idx).unwrap();
        if xi[0] < 0.0 || xi[1] > 0.0 {
            assert!(spectrum.values()[flat].norm() < 1e-9);
        }
    });
}

#[test]
fn transform_errors() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out.hsig");
    assert_eq!(code(&hsig(&["transform", "--out", p(&out), "--hilbert", "1"])), 2);
    let grid = Grid::line(16, 1.0).unwrap();
    let input = save(&dir, "in.hsig", &sample(&grid, |x| C64::new(x[0], 0.0)));
    let op2 = r#"{"dim":2,"quadrant_values":[[1,0],[0,1],[0,0],[2,0]]}"#;
    assert_eq!(code(&hsig(&["transform", "--in", p(&input), "--out", p(&out), "--op", op2])), 3);
    assert_eq!(code(&hsig(&["transform", "--in", p(&input), "--out", p(&out), "--hilbert", "2"])), 3);
    assert_eq!(code(&hsig(&["transform", "--in", p(&input), "--out", p(&out), "--op", "{bad"])), 2);
    let garbage = dir.path().join("garbage.hsig");
    std::fs::write(&garbage, b"{\"magic\":\"HSIG\"}\n").unwrap();
    assert_eq!(code(&hsig(&["transform", "--in", p(&garbage), "--out", p(&out), "--hilbert", "1"])), 2);
}

#[test]
fn bedrosian_exit_codes() {
    let dir = TempDir::new().unwrap();
    let grid = Grid::line(8192, 50.0).unwrap();
    let f = save(&dir, "f.hsig", &sample(&grid, |x| C64::new(1.0 / (1.0 + x[0] * x[0]), 0.0)));
    let g = save(
        &dir,
        "g.hsig",
        &sample(&grid, |x| {
            let t2 = x[0] * x[0];
            C64::new((1.0 - 2.0 * t2) / (4.0 + 5.0 * t2 + t2 * t2), 0.0)
        }),
    );
    let report = dir.path().join("report.json");
    let o = hsig(&["bedrosian", "--f", p(&f), "--g", p(&g), "--op", H1, "--characterization", "--report", p(&report)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert!(v["residual_l2_rel"].as_f64().unwrap() < 1e-3);
    assert!(v["characterization_max"].as_f64().unwrap() < 1e-3);
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["grid"]["samples_per_axis"], serde_json::json!([8192]));
    assert_eq!(v["operator"]["dim"], 1);
    let saved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(saved, v);

    let small = Grid::line(256, 10.0).unwrap();
    let gauss = save(&dir, "gauss.hsig", &sample(&small, |x| C64::new((-x[0] * x[0]).exp(), 0.0)));
    let o = hsig(&["bedrosian", "--f", p(&gauss), "--g", p(&gauss), "--op", H1]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["verdict"], "fails");

    assert_eq!(code(&hsig(&["bedrosian", "--f", p(&f), "--g", p(&gauss), "--op", H1])), 3);
    assert_eq!(code(&hsig(&["bedrosian", "--f", p(&f), "--g", p(&g), "--op", H1, "--tolerance", "-1"])), 2);
}

#[test]
fn blaschke_synthesis_and_certification() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("b.hsig");
    for zeros in ["[[0,0]]", "[[0.5,0]]"] {
        let o = hsig(&[
            "blaschke", "--zeros", zeros, "--envelope", "flat", "--grid", "4096,32pi", "--out", p(&out), "--certify",
        ]);
        assert_eq!(code(&o), 0, "{zeros}: {}", String::from_utf8_lossy(&o.stderr));
        let v = stdout_json(&o);
        assert!(v["real_residual"].as_f64().unwrap() < 1e-6);
        assert!(v["complex_residual"].as_f64().unwrap() < 1e-6);
        assert_eq!(file::read(&out).unwrap().grid().samples_per_axis(), &[4096]);
    }
    let o = hsig(&["blaschke", "--zeros", "[[1.5,0]]", "--envelope", "flat", "--grid", "64,8pi", "--out", p(&out)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unit disk"));

    let env = dir.path().join("env.json");
    std::fs::write(&env, r#"{"terms":[[{"spectrum":"raised-cosine","weight":[0,1]}]]}"#).unwrap();
    let o = hsig(&[
        "blaschke", "--zeros", "[[0.2,0.3]]", "--envelope", p(&env), "--grid", "1024,16pi", "--out", p(&out),
        "--certify",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = hsig(&["blaschke", "--zeros", "[[0,0],[0.1,0]]", "--envelope", p(&env), "--grid", "64,8pi", "--out", p(&out)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn csv_export() {
    let dir = TempDir::new().unwrap();
    let line = sample(&Grid::line(16, 2.0).unwrap(), |x| C64::new(x[0], -x[0]));
    let input = save(&dir, "line.hsig", &line);
    let o = hsig(&["export", "--in", p(&input), "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 17);
    assert!(text.lines().skip(1).all(|l| l.split(',').count() == 5));
    assert_eq!(text, to_csv(&line, &[]).unwrap());

    let plane = sample(&Grid::new(&[4, 6], &[1.0, 1.0]).unwrap(), |x| C64::new(x[0] * x[1], 0.0));
    let input = save(&dir, "plane.hsig", &plane);
    let o = hsig(&["export", "--in", p(&input), "--slice", "2=0"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "x1,re,im,abs,arg");
    assert_eq!(text.lines().count(), 5);
    assert_eq!(code(&hsig(&["export", "--in", p(&input), "--slice", "2=9"])), 2);
    assert_eq!(code(&hsig(&["export", "--in", p(&input), "--format", "png"])), 2);
}

#[test]
fn thread_variable_is_validated() {
    let dir = TempDir::new().unwrap();
    let input = save(&dir, "x.hsig", &sample(&Grid::line(8, 1.0).unwrap(), |_| C64::new(1.0, 0.0)));
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_hsig"))
            .args(["export", "--in", p(&input)])
            .env("HSIG_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("2")), 0);
    assert_eq!(code(&run("lots")), 2);
}
