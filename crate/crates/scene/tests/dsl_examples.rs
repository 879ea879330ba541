use harmonica::suite::Backend;
use harmonica_scene::ast::*;
use harmonica_scene::{evaluate, parse, SceneError};
use proptest::prelude::*;

const FIGURE2: &str = include_str!("../../../scenes/figure2.hgeo");

#[test]
fn three_node_ast() {
    let s = parse("point A = (0, 0)\npoint B = (2, 0)\nline l = join(A, B)").unwrap();
    assert_eq!(s.statements.len(), 3);
    assert_eq!(s.statements[0], Statement::Point { name: "A".into(), expr: PointExpr::Literal(vec![Number::int(0), Number::int(0)]) });
}

#[test]
fn harmonic_node() {
    let s = parse("point A=(0,0) point B=(4,0) point X=(1,0) point Y=(3,0) assert harmonic(A, B; X, Y)").unwrap();
    assert!(matches!(&s.statements[4], Statement::Assert { negated: false, predicate: Predicate::Harmonic(_) }));
}

#[test]
fn join_arity_error_at_paren() {
    let text = "point A = (0, 0)\nline l = join(A)";
    let SceneError::Syntax { pos, expected, .. } = parse(text).unwrap_err() else { panic!() };
    assert_eq!(pos, Pos { line: 2, col: 16 });
    assert_eq!(text.lines().nth(1).unwrap().chars().nth(pos.col - 1), Some(')'));
    assert!(expected.contains(&"`,`".to_string()));
}

#[test]
fn corollary_scene_passes() {
    let report = evaluate(&parse(FIGURE2).unwrap(), Backend::Exact).unwrap().report;
    assert!(report.passed);
    let collinear: Vec<_> = report.assertions.iter().filter(|a| a.text.starts_with("assert collinear")).collect();
    assert_eq!(collinear.len(), 2);
}

/// The witness is the determinant of the first non-collinear triple in
/// coprime integer coordinates, recomputed here by cofactor expansion.
#[test]
fn false_collinearity_witness() {
    let pts = [(2i64, 1i64), (5, 3), (-1, 4)];
    let text = format!(
        "point P = ({}, {})\npoint Q = ({}, {})\npoint R = ({}, {})\nassert collinear(P, Q, R)",
        pts[0].0, pts[0].1, pts[1].0, pts[1].1, pts[2].0, pts[2].1
    );
    let report = evaluate(&parse(&text).unwrap(), Backend::Exact).unwrap().report;
    assert!(!report.passed);
    let [(ax, ay), (bx, by), (cx, cy)] = pts;
    let det = ax * (by - cy) - ay * (bx - cx) + (bx * cy - by * cx);
    assert_eq!(report.assertions[0].witness["determinant"], format!("{det}/1"));
    assert_eq!(report.assertions[0].line, 4);
}

#[test]
fn assertions_ignore_unrelated_declarations() {
    let base = "point A=(0,0) point B=(4,0) point X=(1,0) point Y=conjugate(A, B; X)\n";
    let plain = evaluate(&parse(&format!("{base}assert harmonic(A, B; X, Y)")).unwrap(), Backend::Exact).unwrap().report;
    let noisy = evaluate(
        &parse(&format!("{base}point Z = (7, 7)\nline m = join(Z, A)\nassert harmonic(A, B; X, Y)")).unwrap(),
        Backend::Exact,
    )
    .unwrap()
    .report;
    assert_eq!(plain.assertions[0].holds, noisy.assertions[0].holds);
    assert_eq!(plain.assertions[0].witness, noisy.assertions[0].witness);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Corrupting a valid scene yields an error positioned on a character of
    /// the offending token, or just past the end of the input.
    #[test]
    fn error_positions_point_into_the_text(cut in 0usize..2000, junk in prop::sample::select(vec![",", ")", "(", "=", ";", "@", "point", "7"])) {
        let chars: Vec<char> = FIGURE2.chars().collect();
        let at = cut % chars.len();
        let text: String = chars[..at].iter().chain(junk.chars().collect::<Vec<_>>().iter()).chain(chars[at..].iter()).collect();
        if let Err(e) = parse(&text) {
            let pos = e.pos();
            let lines: Vec<&str> = text.split('\n').collect();
            prop_assert!(pos.line >= 1 && pos.line <= lines.len());
            let line: Vec<char> = lines[pos.line - 1].chars().collect();
            if pos.col <= line.len() {
                prop_assert!(!line[pos.col - 1].is_whitespace(), "{e}");
            } else {
                prop_assert_eq!(pos.line, lines.len(), "{}", e);
            }
        }
    }
}
