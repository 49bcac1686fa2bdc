use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hsl_cli::meshfile::MeshFile;
use hsl_core::fixtures;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn hsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsl"))
        .args(args)
        .env_remove(hsl_cli::MAX_UNKNOWNS_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn fixtures_match_library_meshes() {
    for (name, mesh) in [
        ("demo2", fixtures::demo2()),
        ("demo2_strip", fixtures::demo2_strip()),
        ("three_level", fixtures::three_level()),
        ("gap1", fixtures::gap1_mesh()),
    ] {
        let file = MeshFile::load(&fixture(name)).unwrap();
        assert_eq!(file.to_mesh().unwrap(), mesh, "{name}");
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(file.to_canonical_string().unwrap(), text, "{name} is not canonical");
    }
}

#[test]
fn validate_accepts_fixtures() {
    for name in ["demo2", "demo2_strip", "three_level", "gap1"] {
        let out = hsl(&["validate", fixture(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
    }
}

#[test]
fn validate_reports_unaligned_hierarchy() {
    let bad = scratch("unaligned.json");
    std::fs::write(
        &bad,
        r#"{"levels": [
            {"cells": [[0, 0], [1, 0], [0, 1], [1, 1]], "x_extension": "1", "x_lines": ["0", "1", "2"],
             "y_extension": "1", "y_lines": ["0", "1", "2"]},
            {"cells": [[1, 1]], "x_extension": "1/2", "x_lines": ["0", "1/2", "1", "3/2", "2"],
             "y_extension": "1/2", "y_lines": ["0", "1/2", "1", "3/2", "2"]}
        ]}"#,
    )
    .unwrap();
    let out = hsl(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("invalid"));
}

#[test]
fn dim_agrees_on_two_level_demo() {
    let out = hsl(&["dim", fixture("demo2").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("formula 132"), "{text}");
    assert!(text.contains("b-splines 132"), "{text}");
    assert!(text.contains("oracle 132"), "{text}");
    assert!(text.contains("AGREE"));

    let out = hsl(&["--json", "dim", "--level", "0", fixture("demo2").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["formula"], 100);
    assert_eq!(v["bsplines"], 100);
    assert_eq!(v["oracle"], 100);
}

#[test]
fn dim_disagrees_on_gap_domain() {
    let out = hsl(&["--json", "dim", fixture("gap1").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["agree"], false);
    assert_eq!(v["oracle"], 18);
}

#[test]
fn admissible_flags_gap_domain() {
    let gap = fixture("gap1");
    let out = hsl(&["admissible", "--k1", "1", "--k2", "1", gap.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("gap"), "{}", stdout(&out));
    let out = hsl(&["admissible", "--k1", "1", "--k2", "1", "--route", "both", fixture("demo2").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = hsl(&["admissible", "--k1", "0", "--k2", "0", gap.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn counts_of_rectangle_level() {
    let out = hsl(&["--json", "counts", fixture("demo2").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["f2"], 64);
    assert_eq!(v["f1h0"], 56);
    assert_eq!(v["f1v0"], 56);
    assert_eq!(v["f00"], 49);
}

#[test]
fn verify_basis_and_pou() {
    let demo = fixture("demo2");
    assert_eq!(hsl(&["verify-basis", demo.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(hsl(&["verify-pou", demo.to_str().unwrap()]).status.code(), Some(0));
    let three = fixture("three_level");
    assert_eq!(hsl(&["verify-basis", three.to_str().unwrap()]).status.code(), Some(0));

    let strip = fixture("demo2_strip");
    let out = hsl(&["--json", "verify-basis", strip.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["selected"].as_u64(), v["dimension"].as_u64()), (Some(100), Some(104)));
}

#[test]
fn hbasis_lists_selection() {
    let out = hsl(&["--json", "hbasis", fixture("demo2").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["per_level"], serde_json::json!([96, 36]));
    assert_eq!(v["keys"].as_array().unwrap().len(), 132);
}

#[test]
fn refine_with_existing_line_is_identity() {
    let out_path = scratch("refined_same.json");
    let demo = fixture("demo2");
    let out = hsl(&["refine", "--level", "0", "--axis", "x", "--coord", "3", demo.to_str().unwrap(), "-o", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), std::fs::read_to_string(&demo).unwrap());
}

#[test]
fn refine_inserts_new_line_and_keeps_basis() {
    let out_path = scratch("refined_new.json");
    let demo = fixture("demo2");
    let out = hsl(&["refine", "--level", "1", "--axis", "y", "--coord", "13/3", demo.to_str().unwrap(), "-o", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let refined = MeshFile::load(&out_path).unwrap();
    assert!(refined.levels[1].y_lines.contains(&"13/3".to_string()));
    assert!(!refined.levels[0].y_lines.contains(&"13/3".to_string()));
    let out = hsl(&["dim", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn refine_outside_window_is_an_error() {
    let out_path = scratch("refined_outside.json");
    let out = hsl(&["refine", "--level", "0", "--axis", "x", "--coord", "19/2", fixture("demo2").to_str().unwrap(), "-o", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn render_writes_svg() {
    let out_path = scratch("demo2.svg");
    let out = hsl(&["render", "--selection", fixture("demo2").to_str().unwrap(), "-o", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = std::fs::read_to_string(&out_path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("class=\"support-").count(), 132);
}

#[test]
fn malformed_input_exits_with_two() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(hsl(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(hsl(&["validate", "/nonexistent/mesh.json"]).status.code(), Some(2));
    let bad_rational = scratch("bad_rational.json");
    std::fs::write(&bad_rational, r#"{"levels": [{"cells": [], "x_lines": ["0", "1/0"], "y_lines": ["0", "1"]}]}"#).unwrap();
    let out = hsl(&["--json", "validate", bad_rational.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["error"].is_string());
}

#[test]
fn missing_degrees_is_a_usage_error() {
    let file = scratch("no_degrees.json");
    let mut mesh = MeshFile::load(&fixture("gap1")).unwrap();
    mesh.degrees = None;
    mesh.save(&file).unwrap();
    assert_eq!(hsl(&["dim", file.to_str().unwrap()]).status.code(), Some(2));
    let out = hsl(&["dim", "--m", "2", "--n", "1", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_limit_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hsl"))
        .args(["dim", fixture("demo2").to_str().unwrap()])
        .env(hsl_cli::MAX_UNKNOWNS_ENV, "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknowns"), "{}", String::from_utf8_lossy(&out.stderr));
}
