use std::path::PathBuf;

use harmonica::suite::Backend;
use harmonica_scene::{evaluate, format, parse};

fn scenes() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes");
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .expect("scenes directory")
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "hgeo"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

#[test]
fn every_figure_is_shipped() {
    let names: Vec<String> = scenes().into_iter().map(|(n, _)| n).collect();
    for k in [1, 2, 5, 6, 7, 9, 11, 13] {
        assert!(names.contains(&format!("figure{k}.hgeo")), "figure{k}.hgeo missing");
    }
    assert!(names.contains(&"order_witness.hgeo".to_string()));
}

#[test]
fn shipped_scenes_pass_on_both_backends() {
    for (name, text) in scenes() {
        let scene = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        for backend in [Backend::Exact, Backend::Float] {
            let report = evaluate(&scene, backend).unwrap_or_else(|e| panic!("{name}: {e}")).report;
            let failures: Vec<_> = report.failures().collect();
            assert!(failures.is_empty(), "{name} ({backend:?}): {failures:#?}");
        }
    }
}

#[test]
fn shipped_scenes_round_trip() {
    for (name, text) in scenes() {
        let scene = parse(&text).unwrap();
        let once = format(&scene);
        let reparsed = parse(&once).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(reparsed, scene, "{name}");
        assert_eq!(format(&reparsed), once, "{name}");
    }
}

#[test]
fn order_witness_depends_on_order() {
    let text = scenes().into_iter().find(|(n, _)| n == "order_witness.hgeo").unwrap().1;
    let report = evaluate(&parse(&text).unwrap(), Backend::Exact).unwrap().report;
    assert!(report.passed);
    assert!(report.assertions[0].holds);
    assert!(!report.assertions[1].holds);
}
