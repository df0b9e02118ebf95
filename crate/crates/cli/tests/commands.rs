use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use beamalign_cli::exit;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_beamalign"))
}

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn read_rows(path: &Path) -> Vec<csv::StringRecord> {
    csv::Reader::from_path(path)
        .unwrap()
        .records()
        .map(Result::unwrap)
        .collect()
}

fn uniform_scenario(b: usize, constraint: &str) -> String {
    format!(
        r#"{{"schema_version": 1, "b": {b}, "constraint": "{constraint}",
            "users": [{{"pieces": [{{"start_deg": 0, "end_deg": 360, "mass": 1}}], "weight": 1}}]}}"#
    )
}

#[test]
fn design_then_simulate_reproduces_analytic_width() {
    let dir = tempfile::tempdir().unwrap();
    let scen = example("two-user-quadrant.json");
    let d = dir.path().join("design");
    let s = dir.path().join("sim");
    let out = run(&[
        "design",
        "--scenario",
        scen.to_str().unwrap(),
        "--out",
        d.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), exit::OK, "{}", String::from_utf8_lossy(&out.stderr));
    let cb = d.join("codebook.json");
    let out = run(&[
        "simulate",
        "--scenario",
        scen.to_str().unwrap(),
        "--codebook",
        cb.to_str().unwrap(),
        "--samples",
        "20000",
        "--out",
        s.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), exit::OK, "{}", String::from_utf8_lossy(&out.stderr));
    let a: f64 = read_rows(&d.join("results.csv"))[0][2].parse().unwrap();
    let row = &read_rows(&s.join("results.csv"))[0];
    let b: f64 = row[2].parse().unwrap();
    assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
    let emp: f64 = row[3].parse().unwrap();
    let se: f64 = row[4].parse().unwrap();
    assert!((emp - b).abs() <= 4.0 * se, "{emp} {b} {se}");
}

#[test]
fn fixed_seed_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let scen = example("two-user-quadrant.json");
    let mut outputs = Vec::new();
    for k in 0..2 {
        let o = dir.path().join(format!("run{k}"));
        let out = run(&[
            "simulate",
            "--scenario",
            scen.to_str().unwrap(),
            "--scheme",
            "uniform-contiguous",
            "--samples",
            "30000",
            "--seed",
            "9",
            "--out",
            o.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), exit::OK);
        let files: Vec<Vec<u8>> = [
            "results.csv",
            "beams.csv",
            "cells.csv",
            "codebook.json",
            "run.json",
        ]
        .iter()
        .map(|f| fs::read(o.join(f)).unwrap())
        .collect();
        outputs.push((out.stdout, files));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn uniform_designs() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "u.json", &uniform_scenario(4, "unconstrained"));
    let o = dir.path().join("u");
    let out = run(&[
        "design",
        "--scenario",
        p.to_str().unwrap(),
        "--out",
        o.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), exit::OK, "{}", String::from_utf8_lossy(&out.stderr));
    let u: f64 = read_rows(&o.join("results.csv"))[0][2].parse().unwrap();
    assert!((u - 2.0 * PI / 16.0).abs() < 1e-9);
    assert_eq!(read_rows(&o.join("cells.csv")).len(), 16);

    let p = write(dir.path(), "c.json", &uniform_scenario(3, "contiguous"));
    let o = dir.path().join("c");
    let out = run(&[
        "design",
        "--scenario",
        p.to_str().unwrap(),
        "--out",
        o.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), exit::OK);
    let u: f64 = read_rows(&o.join("results.csv"))[0][2].parse().unwrap();
    assert!((u - PI / 3.0).abs() < 1e-9);
    let cells = read_rows(&o.join("cells.csv"));
    assert_eq!(cells.len(), 6);
    for c in &cells {
        assert_eq!(&c[3], "60.000000");
    }
}

#[test]
fn uniform_contiguous_sweep_is_pi_over_b() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "c.json", &uniform_scenario(3, "contiguous"));
    let o = dir.path().join("s");
    let out = run(&[
        "sweep",
        "--scenario",
        p.to_str().unwrap(),
        "--b",
        "2..6",
        "--scheme",
        "optimal-contiguous",
        "--out",
        o.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), exit::OK);
    let rows = read_rows(&o.join("sweep.csv"));
    assert_eq!(rows.len(), 5);
    for r in &rows {
        let b: f64 = r[0].parse().unwrap();
        let u: f64 = r[2].parse().unwrap();
        assert!((u - PI / b).abs() < 1e-9, "b={b} u={u}");
    }
    assert_eq!(read_rows(&o.join("results.csv"))[0].len(), 8);
}

#[test]
fn emitted_angles_have_six_decimals() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().join("d");
    let scen = example("two-user-quadrant.json");
    let out = run(&[
        "design",
        "--scenario",
        scen.to_str().unwrap(),
        "--b",
        "3",
        "--out",
        o.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), exit::OK);
    let json: serde_json::Value =
        serde_json::from_slice(&fs::read(o.join("codebook.json")).unwrap()).unwrap();
    assert_eq!(json["b"], 3);
    let text = fs::read_to_string(o.join("codebook.json")).unwrap();
    for line in text.lines().filter(|l| l.contains("_deg")) {
        let v = line.split(':').nth(1).unwrap().trim().trim_end_matches(',');
        assert_eq!(v.split('.').nth(1).map(str::len), Some(6), "{line}");
    }
    for r in read_rows(&o.join("beams.csv"))
        .iter()
        .chain(read_rows(&o.join("cells.csv")).iter())
    {
        let arcs = if r.len() == 3 { &r[1] } else { &r[2] };
        for deg in arcs.split([';', ':']) {
            assert_eq!(deg.split('.').nth(1).map(str::len), Some(6), "{deg}");
        }
    }
}

#[test]
fn defaults_are_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "u.json", &uniform_scenario(2, "unconstrained"));
    let o = dir.path().join("b");
    let out = run(&[
        "bounds",
        "--scenario",
        p.to_str().unwrap(),
        "--b",
        "1-3",
        "--out",
        o.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), exit::OK);
    let echo: serde_json::Value = serde_json::from_slice(&fs::read(o.join("run.json")).unwrap()).unwrap();
    assert_eq!(echo["grid_points"], 3600);
    assert_eq!(echo["samples"], 100_000);
    assert_eq!(echo["seed"], 42);
    let rows = read_rows(&o.join("bounds.csv"));
    assert_eq!(rows.len(), 6);
    let lo: f64 = rows[0][3].parse().unwrap();
    let hi: f64 = rows[0][4].parse().unwrap();
    assert!((lo - PI).abs() < 1e-9 && (hi - PI).abs() < 1e-9);
}

#[test]
fn exit_codes_by_failure_class() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "u.json", &uniform_scenario(4, "contiguous"));
    let g = good.to_str().unwrap();

    assert_eq!(code(&run(&["design"])), exit::USAGE);
    assert_eq!(code(&run(&["frobnicate"])), exit::USAGE);
    assert_eq!(
        code(&run(&["sweep", "--scenario", g, "--scheme", ""])),
        exit::USAGE
    );
    assert_eq!(
        code(&run(&["sweep", "--scenario", g, "--b", "6..2"])),
        exit::USAGE
    );
    assert_eq!(
        code(&run(&["design", "--scenario", g, "--b", "2..4"])),
        exit::USAGE
    );

    let bad = write(dir.path(), "bad.json", "{\"schema_version\": 1, \"users\": [");
    assert_eq!(
        code(&run(&["design", "--scenario", bad.to_str().unwrap()])),
        exit::PARSE
    );
    let v2 = write(
        dir.path(),
        "v2.json",
        &uniform_scenario(4, "contiguous").replace("\"schema_version\": 1", "\"schema_version\": 2"),
    );
    assert_eq!(
        code(&run(&["design", "--scenario", v2.to_str().unwrap()])),
        exit::PARSE
    );

    let short = write(
        dir.path(),
        "short.json",
        &uniform_scenario(4, "contiguous").replace("\"mass\": 1", "\"mass\": 0.8"),
    );
    let out = run(&["design", "--scenario", short.to_str().unwrap()]);
    assert_eq!(code(&out), exit::INVARIANT);
    assert!(String::from_utf8_lossy(&out.stderr).contains("users[0]"));

    let coarse = write(dir.path(), "coarse.json", &uniform_scenario(9, "unconstrained"));
    assert_eq!(
        code(&run(&["design", "--scenario", coarse.to_str().unwrap()])),
        exit::SOLVER
    );

    let missing = dir.path().join("nope.json");
    assert_eq!(
        code(&run(&["design", "--scenario", missing.to_str().unwrap()])),
        exit::IO
    );
}

#[test]
fn codebook_beam_count_must_match() {
    let dir = tempfile::tempdir().unwrap();
    let three = write(dir.path(), "b3.json", &uniform_scenario(3, "contiguous"));
    let four = write(dir.path(), "b4.json", &uniform_scenario(4, "contiguous"));
    let o = dir.path().join("d");
    let out = run(&[
        "design",
        "--scenario",
        three.to_str().unwrap(),
        "--out",
        o.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), exit::OK);
    let out = run(&[
        "simulate",
        "--scenario",
        four.to_str().unwrap(),
        "--codebook",
        o.join("codebook.json").to_str().unwrap(),
        "--samples",
        "10",
    ]);
    assert_eq!(code(&out), exit::INVARIANT);
    assert!(String::from_utf8_lossy(&out.stderr).contains("b = 4"));
}

#[test]
fn bundled_two_user_scenario() {
    let r = beamalign_cli::parse_scenario(&example("two-user-quadrant.json")).unwrap();
    let m = r.scenario.mixture();
    assert!((m.density_at(PI / 4.0) - 14.0 / (15.0 * PI)).abs() < 1e-9);
    assert!((m.density_at(3.0 * PI / 4.0) - 1.0 / (15.0 * PI)).abs() < 1e-9);
    assert!((m.density_at(5.0 * PI / 4.0) - 14.0 / (15.0 * PI)).abs() < 1e-9);
    assert_eq!(r.scenario.b(), 4);
    let u = beamalign_cli::parse_scenario(&example("uniform.json")).unwrap();
    assert_eq!(u.scenario.mixture().pieces().len(), 1);
}
