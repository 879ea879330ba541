use std::path::PathBuf;
use std::process::Command;

use harmonica_cli::run;
use harmonica_scene::{parse, Statement};

fn scene(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenes")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(args.iter().copied(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn unknown_theorem_is_a_usage_error() {
    let (code, _, err) = cli(&["verify", "no-such-thing"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown theorem `no-such-thing`"), "{err}");
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(cli(&["verify", "two-pencils", "--order", "sideways"]).0, 2);
    assert_eq!(cli(&["verify", "two-pencils", "--backend", "quantum"]).0, 2);
    assert_eq!(cli(&["render", &scene("figure2.hgeo"), "--viewport", "1,1,0,0"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn verify_reports_schema_and_seeds() {
    let (code, out, _) = cli(&["verify", "ceva-ngon", "--n", "5", "--order", "exhaustive", "--trials", "5", "--seed", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["order"], "exhaustive");
    assert_eq!(v["theorems"][0]["id"], "ceva-ngon");
    assert_eq!(v["theorems"][0]["negative_trials"], 5);
}

#[test]
fn verify_is_deterministic() {
    let a = cli(&["verify", "duality", "--trials", "8", "--seed", "11"]);
    let b = cli(&["verify", "duality", "--trials", "8", "--seed", "11"]);
    assert_eq!(a, b);
}

#[test]
fn trial_seed_reruns_one_trial() {
    let seed = harmonica::generate::trial_seed(42, 3).to_string();
    let (code, out, _) = cli(&["verify", "desargues", "--trial-seed", &seed, "--polarity", "negative"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["trial"]["seed"].to_string(), seed);
    assert_eq!(v["trial"]["polarity"], "negative");
    assert!(v["trial"]["report"]["booleans"].as_object().unwrap().values().all(|b| b == false));
}

#[test]
fn float_only_theorems_run_on_floats() {
    let (code, out, _) = cli(&["verify", "steiner-add-11", "--trials", "5", "--backend", "exact"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"backend\": \"float\""));
}

#[test]
fn shipped_figure_checks() {
    let (code, out, err) = cli(&["check", &scene("figure2.hgeo")]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
}

#[test]
fn false_assertion_exits_one_and_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(
        &dir,
        "bad.hgeo",
        "point A = (0, 0)\npoint B = (1, 0)\npoint C = (0, 1)\nassert not collinear(A, B, C)\nassert collinear(A, B, C)\n",
    );
    let (code, _, err) = cli(&["check", &path]);
    assert_eq!(code, 1);
    assert!(err.contains(":5:1: assert collinear(A, B, C)"), "{err}");
    assert!(!err.contains("not collinear"));
}

#[test]
fn input_errors_exit_two_with_positions() {
    assert_eq!(cli(&["check", "/definitely/missing.hgeo"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "syntax.hgeo", "point A = (0, 0)\nline l = join(A)\n");
    let (code, _, err) = cli(&["check", &path]);
    assert_eq!(code, 2);
    assert!(err.contains("syntax.hgeo:2:16:"), "{err}");
    let path = write_temp(&dir, "dec.hgeo", "point A = (0.5, 0)\n");
    assert_eq!(cli(&["check", &path]).0, 0);
    let (code, _, err) = cli(&["check", &path, "--backend", "exact"]);
    assert_eq!(code, 2);
    assert!(err.contains("dec.hgeo:1:1:"), "{err}");
}

#[test]
fn svg_has_one_marker_per_declared_point() {
    let path = scene("figure2.hgeo");
    let declared = parse(&std::fs::read_to_string(&path).unwrap())
        .unwrap()
        .statements
        .iter()
        .filter(|s| matches!(s, Statement::Point { .. }))
        .count();
    let (code, svg, _) = cli(&["render", &path, "--format", "svg"]);
    assert_eq!(code, 0);
    assert!(svg.starts_with("<svg ") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<circle ").count(), declared);
}

#[test]
fn render_is_byte_identical() {
    for name in ["figure1.hgeo", "figure5.hgeo", "figure13.hgeo", "pentagon.hgeo"] {
        for fmt in ["svg", "tikz"] {
            let a = cli(&["render", &scene(name), "--format", fmt]);
            let b = cli(&["render", &scene(name), "--format", fmt]);
            assert_eq!(a.0, 0);
            assert_eq!(a, b, "{name} {fmt}");
        }
    }
}

#[test]
fn tikz_is_structurally_sane() {
    for name in ["figure2.hgeo", "figure11.hgeo", "pentagon.hgeo"] {
        let path = scene(name);
        let lines = parse(&std::fs::read_to_string(&path).unwrap())
            .unwrap()
            .statements
            .iter()
            .filter(|s| matches!(s, Statement::Line { .. }))
            .count();
        let (code, tex, _) = cli(&["render", &path, "--format", "tikz"]);
        assert_eq!(code, 0);
        let mut depth = 0i64;
        for c in tex.chars() {
            match c {
                '{' => depth += 1,
                '}' => depth -= 1,
                _ => {}
            }
            assert!(depth >= 0, "{name}: unbalanced braces");
        }
        assert_eq!(depth, 0, "{name}");
        let drawn = tex.matches("\\draw[").count();
        let missed = tex.matches("% line ").count();
        assert_eq!(drawn + missed, lines, "{name}");
        assert!(tex.starts_with("\\begin{tikzpicture}") && tex.trim_end().ends_with("\\end{tikzpicture}"));
    }
}

#[test]
fn explicit_viewport_drops_outside_points() {
    let (code, svg, _) = cli(&["render", &scene("figure5.hgeo"), "--viewport", "-1,-1,1.5,1.5"]);
    assert_eq!(code, 0);
    assert!(svg.contains("outside the viewport"));
    assert!(svg.contains("id=\"point-A2\""));
}

#[test]
fn reduce_trace_replays_identically() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.jsonl");
    let trace = trace.to_str().unwrap();
    let (code, _, err) = cli(&["reduce", &scene("pentagon.hgeo"), "--order", "fixed:3,2", "--out", trace]);
    assert_eq!(code, 0, "{err}");
    let summary: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(summary["indices"], serde_json::json!([3, 2]));
    let first = std::fs::read_to_string(trace).unwrap();
    assert_eq!(first.lines().count(), 3);
    let again = cli(&["reduce", &scene("pentagon.hgeo"), "--order", "fixed:3,2"]);
    assert_eq!(again.1, first);

    let (code, out, _) = cli(&["reduce", "--replay", trace]);
    assert_eq!(code, 0);
    assert!(out.contains("\"replay\":\"identical\""));

    let tampered = first.replacen("\"index\":2", "\"index\":1", 1);
    let bad = write_temp(&dir, "bad.jsonl", &tampered);
    assert_eq!(cli(&["reduce", "--replay", &bad]).0, 1);
    let garbage = write_temp(&dir, "garbage.jsonl", "not json\n");
    assert_eq!(cli(&["reduce", "--replay", &garbage]).0, 2);
}

#[test]
fn exhaustive_reduce_reports_agreement() {
    let (code, _, err) = cli(&["reduce", &scene("pentagon.hgeo"), "--mode", "menelaos", "--order", "exhaustive"]);
    assert_eq!(code, 0);
    let summary: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(summary["agreement"], true);
    assert_eq!(summary["orders_checked"], 20);
}

#[test]
fn reduce_without_a_gon_assertion_is_a_usage_error() {
    let (code, _, err) = cli(&["reduce", &scene("figure1.hgeo")]);
    assert_eq!(code, 2);
    assert!(err.contains("no ceva assertion"), "{err}");
}

#[test]
fn degenerate_step_keeps_the_prefix() {
    // g1 and g2 are both the side A1A2, so reducing at index 1 fails.
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(
        &dir,
        "degenerate.hgeo",
        "point A1 = (0, 0)\npoint A2 = (4, 0)\npoint A3 = (5, 3)\npoint A4 = (2, 6)\npoint A5 = (-1, 3)\n\
         gon P = [A1, A2, A3, A4, A5]\n\
         line g1 = join(A1, A2)\nline g2 = join(A2, A1)\nline g3 = join(A3, A1)\nline g4 = join(A4, A1)\nline g5 = join(A5, A2)\n\
         assert pseudo_concurrent(P, g1, g2, g3, g4, g5)\n",
    );
    let (code, out, err) = cli(&["reduce", &path, "--order", "fixed:3,1"]);
    assert_eq!(code, 1);
    assert!(err.contains("degenerate step 1 at index 1") && err.contains("prefix [3]"), "{err}");
    assert_eq!(out.lines().count(), 2);
    let partial = write_temp(&dir, "partial.jsonl", &out);
    let (code, _, err) = cli(&["reduce", "--replay", &partial]);
    assert_eq!(code, 2);
    assert!(err.contains("1 steps recorded, expected 2"), "{err}");
    assert_eq!(cli(&["check", &path]).0, 1);
}

#[test]
fn gen_scene_checks_on_both_polarities() {
    let dir = tempfile::tempdir().unwrap();
    for (id, polarity, expect) in [("quad-equivalence", "positive", 0), ("quad-equivalence", "negative", 0), ("pappus4", "positive", 0)] {
        let (code, text, err) = cli(&["gen", id, "--seed", "4", "--format", "scene", "--polarity", polarity]);
        assert_eq!(code, 0, "{err}");
        let path = write_temp(&dir, "gen.hgeo", &text);
        assert_eq!(cli(&["check", &path]).0, expect, "{id} {polarity}");
    }
    assert_eq!(cli(&["gen", "steiner-add-11", "--format", "scene"]).0, 2);
    let (code, json, _) = cli(&["gen", "ceva-ngon", "--n", "6"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["instance"]["vertices"].as_array().unwrap().len(), 6);
}

#[test]
fn binary_honours_exit_codes_and_tolerance() {
    let bin = env!("CARGO_BIN_EXE_harmonica");
    let ok = Command::new(bin).args(["check", &scene("figure6.hgeo")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad_eps = Command::new(bin).env("HARMONICA_EPS", "-1").args(["check", &scene("figure6.hgeo")]).output().unwrap();
    assert_eq!(bad_eps.status.code(), Some(2));
    let eps = Command::new(bin).env("HARMONICA_EPS", "1e-6").args(["check", &scene("figure5.hgeo"), "--backend", "float"]).output().unwrap();
    assert_eq!(eps.status.code(), Some(0));
}
