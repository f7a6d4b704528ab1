use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use curvmorph::mesh::validate;
use curvmorph::obj::load_obj;
use tempfile::tempdir;

fn curvmorph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvmorph"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("failed to spawn curvmorph")
}

fn cube_args(out: &Path) -> Vec<String> {
    [
        "--gen", "cube", "--sub", "3", "--preset", "standard", "--m", "1", "--c-rel", "0.0025",
        "--stride", "50", "--out",
    ]
    .iter()
    .map(|s| s.to_string())
    .chain([out.display().to_string()])
    .collect()
}

fn run_strs(args: &[String]) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    curvmorph(&refs)
}

fn snapshots(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.starts_with("snap_"))
        .collect();
    names.sort();
    names
}

#[test]
fn preset_run_writes_snapshots_and_metrics() {
    let dir = tempdir().unwrap();
    let out = run_strs(&cube_args(dir.path()));
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    assert_eq!(
        snapshots(dir.path()),
        [
            "snap_000000.obj",
            "snap_000050.obj",
            "snap_000100.obj",
            "snap_000150.obj",
            "snap_000200.obj"
        ]
    );
    for name in snapshots(dir.path())
        .iter()
        .chain([&"final.obj".to_string()])
    {
        let mesh = load_obj(dir.path().join(name)).unwrap();
        assert_eq!(mesh.vertex_count(), 386);
        validate(&mesh).unwrap();
    }

    let csv = fs::read_to_string(dir.path().join("metrics.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("iter,area,volume,sphericity"));
    let sphericity = |line: &str| line.split(',').nth(3).unwrap().parse::<f64>().unwrap();
    assert!(sphericity(lines[5]) > sphericity(lines[1]));
}

#[test]
fn identical_configs_give_identical_bytes() {
    let a = tempdir().unwrap();
    let b = tempdir().unwrap();
    assert!(run_strs(&cube_args(a.path())).status.success());
    assert!(run_strs(&cube_args(b.path())).status.success());
    for name in ["metrics.csv", "final.obj", "snap_000100.obj"] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap(),
            "{name} differs"
        );
    }
}

#[test]
fn missing_input_fails() {
    let dir = tempdir().unwrap();
    let missing = dir.path().join("nope.obj");
    let out = curvmorph(&[
        "--input",
        missing.to_str().unwrap(),
        "--out",
        dir.path().join("o").to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not found"));
}

#[test]
fn obj_input_and_curvature_dump() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("cube.obj");
    curvmorph::obj::save_obj(&curvmorph::generate::subdivided_cube(1), &input).unwrap();
    let dump = dir.path().join("k.csv");
    let out = curvmorph(&[
        "--input",
        input.to_str().unwrap(),
        "--phases",
        "10:1:1,5:2:1",
        "--stride",
        "5",
        "--out",
        dir.path().join("o").to_str().unwrap(),
        "--dump-curvature",
        dump.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(dump).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "vertex,k");
    assert_eq!(lines.len(), 1 + 26);
    assert_eq!(snapshots(&dir.path().join("o")).len(), 4);
}

#[test]
fn frozen_refresh_runs() {
    let dir = tempdir().unwrap();
    let out = curvmorph(&[
        "--gen",
        "icosphere",
        "--sub",
        "2",
        "--phases",
        "20:2:2",
        "--frozen-t",
        "--stride",
        "10",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(dir.path().join("final.obj").exists());
}

#[test]
fn conflicting_step_sizes_rejected() {
    let dir = tempdir().unwrap();
    let out = curvmorph(&[
        "--gen",
        "cube",
        "--c",
        "0.01",
        "--c-rel",
        "0.001",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(!out.status.success());
}

#[test]
fn mid_run_failure_keeps_partial_output() {
    let dir = tempdir().unwrap();
    let out = curvmorph(&[
        "--gen",
        "dumbbell",
        "--sub",
        "2",
        "--c-rel",
        "0.005",
        "--stride",
        "10",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("iteration"), "{stderr}");
    let csv = fs::read_to_string(dir.path().join("metrics.csv")).unwrap();
    assert!(csv.lines().count() > 2);
    assert!(!dir.path().join("final.obj").exists());
    assert!(dir.path().join("snap_000000.obj").exists());
}
