//! Generated instances as scenes.
//!
//! The scene declares the generating data as literals, rebuilds the derived
//! elements with scene constructions and asserts the theorem's claims, so a
//! positive instance checks clean and a negative one shows which claims fail.

use harmonica::euclid::{polygon_bisectors, BisectorKind, EuclideanPoint};
use harmonica::pencil::HarmonicPencil;
use harmonica::polygon::{duality_bridge, MenelaosGon};
use harmonica::suite::Instance;
use harmonica::{GeomError, Line, Point, Rational, Scalar};
use thiserror::Error;

use crate::ast::*;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ExportError {
    #[error("theorem `{0}` has no scene form")]
    Unsupported(String),
    #[error("instance does not match theorem `{0}`")]
    Mismatch(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Default)]
struct Builder {
    statements: Vec<Statement>,
}

fn s(x: &str) -> String {
    x.to_string()
}

fn ratio(r: &Rational) -> Number {
    Number::Ratio(r.as_big().clone())
}

impl Builder {
    fn push(&mut self, st: Statement) {
        self.statements.push(st);
    }

    fn point(&mut self, name: &str, p: &Point<Rational>) {
        let coords = match p.to_affine() {
            Some((x, y)) => vec![ratio(&x), ratio(&y)],
            None => p.normalized().coords().iter().map(ratio).collect(),
        };
        self.push(Statement::Point { name: s(name), expr: PointExpr::Literal(coords) });
    }

    fn float_point(&mut self, name: &str, p: EuclideanPoint) {
        self.push(Statement::Point {
            name: s(name),
            expr: PointExpr::Literal(vec![Number::Decimal(p.x), Number::Decimal(p.y)]),
        });
    }

    fn line<S: Scalar>(&mut self, name: &str, l: &Line<S>) {
        let c = l.normalized().into_coords();
        let num = |v: &S| {
            if S::EXACT {
                Number::Ratio(v.to_rational())
            } else {
                Number::Decimal(v.to_f64())
            }
        };
        self.push(Statement::Line { name: s(name), expr: LineExpr::Literal([num(&c[0]), num(&c[1]), num(&c[2])]) });
    }

    fn join(&mut self, name: &str, p: &str, q: &str) {
        self.push(Statement::Line { name: s(name), expr: LineExpr::Join(s(p), s(q)) });
    }

    fn meet(&mut self, name: &str, l: &str, m: &str) {
        self.push(Statement::Point { name: s(name), expr: PointExpr::Meet(s(l), s(m)) });
    }

    fn harmonic_line(&mut self, name: &str, a: &str, b: &str, g: &str) {
        self.push(Statement::Line { name: s(name), expr: LineExpr::HarmonicLine { a: s(a), b: s(b), g: s(g) } });
    }

    fn gon(&mut self, name: &str, vertices: &[String]) {
        self.push(Statement::Gon { name: s(name), vertices: vertices.to_vec() });
    }

    fn assert(&mut self, predicate: Predicate) {
        self.push(Statement::Assert { negated: false, predicate });
    }

    fn collinear(&mut self, names: &[&str]) {
        self.assert(Predicate::Collinear(names.iter().map(|n| s(n)).collect()));
    }

    fn concurrent(&mut self, names: &[&str]) {
        self.assert(Predicate::Concurrent(names.iter().map(|n| s(n)).collect()));
    }

    fn scene(self) -> Scene {
        Scene::new(self.statements)
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

fn quad4(a: &str, b: &str, c: &str, d: &str) -> [String; 4] {
    [s(a), s(b), s(c), s(d)]
}

/// Scene for an instance of theorem `id` (aliases resolved by the caller).
pub fn instance_scene(id: &str, instance: &Instance) -> Result<Scene, ExportError> {
    let mismatch = || ExportError::Mismatch(id.to_string());
    let mut b = Builder::default();
    match (id, instance) {
        ("two-pencils" | "cor2", Instance::Pencils { shared, pencils }) => pencils_scene(&mut b, id, shared.as_ref(), pencils)?,
        ("free-triangle" | "triangle-transfer", Instance::Triangle { vertices, g }) => {
            for k in 0..3 {
                b.point(&format!("A{}", k + 1), &vertices[k]);
            }
            b.join("a1", "A2", "A3");
            b.join("a2", "A3", "A1");
            b.join("a3", "A1", "A2");
            for k in 0..3 {
                b.line(&format!("g{}", k + 1), &g[k]);
            }
            b.harmonic_line("h1", "a2", "a3", "g1");
            b.harmonic_line("h2", "a3", "a1", "g2");
            b.harmonic_line("h3", "a1", "a2", "g3");
            if id == "free-triangle" {
                for k in 1..=3 {
                    let (i, j) = (k % 3 + 1, (k + 1) % 3 + 1);
                    let gg = format!("G{k}");
                    let hh = format!("H{k}");
                    let gh = format!("GH{k}");
                    let hg = format!("HG{k}");
                    b.meet(&gg, &format!("g{i}"), &format!("g{j}"));
                    b.meet(&hh, &format!("h{i}"), &format!("h{j}"));
                    b.meet(&gh, &format!("g{i}"), &format!("h{j}"));
                    b.meet(&hg, &format!("g{j}"), &format!("h{i}"));
                    let a = format!("A{k}");
                    b.collinear(&[&a, &gg, &hh]);
                    b.collinear(&[&a, &gh, &hg]);
                    let u = format!("u{k}");
                    let v = format!("v{k}");
                    b.join(&u, &a, &gg);
                    b.join(&v, &a, &gh);
                    let (si, sj) = (format!("a{i}"), format!("a{j}"));
                    b.assert(Predicate::Harmonic(quad4(&si, &sj, &u, &v)));
                }
            } else {
                b.concurrent(&["g1", "g2", "g3"]);
                b.concurrent(&["g1", "h2", "h3"]);
                b.concurrent(&["g2", "h3", "h1"]);
                b.concurrent(&["g3", "h1", "h2"]);
                b.gon("T", &names("A", 3));
                b.assert(Predicate::ProductEquals {
                    product: Product::Ceva { gon: s("T"), lines: names("g", 3) },
                    value: Number::int(1),
                });
            }
        }
        ("free-quad" | "quad-equivalence", Instance::Quadrilateral { vertices, g }) => {
            quad_scene(&mut b, vertices, g, id == "quad-equivalence");
        }
        ("crossratio" | "pappus4", Instance::Ranges { a, b: bs }) => {
            for k in 0..4 {
                b.point(&format!("A{}", k + 1), &a[k]);
            }
            for k in 0..4 {
                b.point(&format!("B{}", k + 1), &bs[k]);
            }
            b.assert(Predicate::CrEqual(quad4("A1", "A2", "A3", "A4"), quad4("B1", "B2", "B3", "B4")));
            let cross = |b: &mut Builder, i: usize, j: usize, k: usize, l: usize| -> String {
                let name = format!("X{i}{j}{k}{l}");
                let m = format!("m{i}{j}");
                let n = format!("m{k}{l}");
                for (line, (p, q)) in [(&m, (i, j)), (&n, (k, l))] {
                    if !b.statements.iter().any(|st| matches!(st, Statement::Line { name, .. } if name == line)) {
                        b.join(line, &format!("A{p}"), &format!("B{q}"));
                    }
                }
                b.meet(&name, &m, &n);
                name
            };
            if id == "crossratio" {
                for family in harmonica::pencil::SIX_POINT_FAMILIES {
                    let pts: Vec<String> = family.iter().map(|&(i, j, k, l)| cross(&mut b, i, j, k, l)).collect();
                    let refs: Vec<&str> = pts.iter().map(String::as_str).collect();
                    b.collinear(&refs);
                }
            } else {
                // The four Pappus lines coincide when all six cross points are collinear.
                let mut pts = Vec::new();
                for p in 1..=4 {
                    for q in p + 1..=4 {
                        pts.push(cross(&mut b, p, q, q, p));
                    }
                }
                let refs: Vec<&str> = pts.iter().map(String::as_str).collect();
                b.collinear(&refs);
            }
        }
        ("desargues", Instance::TrianglePair { first, second }) => {
            let labels = ["A", "B", "C"];
            for k in 0..3 {
                b.point(&format!("{}1", labels[k]), &first[k]);
            }
            for k in 0..3 {
                b.point(&format!("{}2", labels[k]), &second[k]);
            }
            for k in 0..3 {
                b.join(&format!("s{}", labels[k]), &format!("{}1", labels[k]), &format!("{}2", labels[k]));
            }
            b.concurrent(&["sA", "sB", "sC"]);
            for (i, j) in [(0, 1), (1, 2), (2, 0)] {
                let (x, y) = (labels[i], labels[j]);
                b.join(&format!("{x}{y}1"), &format!("{x}1"), &format!("{y}1"));
                b.join(&format!("{x}{y}2"), &format!("{x}2"), &format!("{y}2"));
                b.meet(&format!("Q{x}{y}"), &format!("{x}{y}1"), &format!("{x}{y}2"));
            }
            b.collinear(&["QAB", "QBC", "QCA"]);
            for (x, y, z) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                let (x, y, z) = (labels[x], labels[y], labels[z]);
                let l12 = format!("{x}1{y}2");
                let l21 = format!("{x}2{y}1");
                b.join(&l12, &format!("{x}1"), &format!("{y}2"));
                b.join(&l21, &format!("{x}2"), &format!("{y}1"));
                let side = |p: &str, q: &str, t: usize| {
                    let pair = ["AB", "BC", "CA"].into_iter().find(|c| c.contains(p) && c.contains(q)).expect("two labels");
                    format!("{pair}{t}")
                };
                let (yz1, xz1, yz2, xz2) = (side(y, z, 1), side(x, z, 1), side(y, z, 2), side(x, z, 2));
                let x1p = format!("{x}1p{y}");
                let y1p = format!("{y}1p{x}");
                let x2p = format!("{x}2p{y}");
                let y2p = format!("{y}2p{x}");
                b.meet(&x1p, &l12, &yz1);
                b.meet(&y1p, &l21, &xz1);
                b.meet(&x2p, &l21, &yz2);
                b.meet(&y2p, &l12, &xz2);
                b.assert(Predicate::CrEqual(
                    quad4(&format!("{x}1"), &format!("{y}2"), &x1p, &y2p),
                    quad4(&format!("{x}2"), &format!("{y}1"), &x2p, &y1p),
                ));
            }
        }
        ("ceva-quad" | "ceva-ngon", Instance::Ceva { vertices, lines }) => {
            let n = vertices.len();
            for (k, v) in vertices.iter().enumerate() {
                b.point(&format!("A{}", k + 1), v);
            }
            for (k, l) in lines.iter().enumerate() {
                b.line(&format!("g{}", k + 1), l);
            }
            b.gon("P", &names("A", n));
            b.assert(Predicate::PseudoConcurrent { gon: s("P"), lines: names("g", n), order: Some(OrderSpec::Exhaustive) });
            b.assert(Predicate::ProductEquals { product: Product::Ceva { gon: s("P"), lines: names("g", n) }, value: Number::int(1) });
        }
        ("menelaos-ngon" | "duality", Instance::Menelaos { vertices, points }) => {
            let n = vertices.len();
            for (k, v) in vertices.iter().enumerate() {
                b.point(&format!("A{}", k + 1), v);
            }
            for (k, p) in points.iter().enumerate() {
                b.point(&format!("B{}", k + 1), p);
            }
            b.gon("P", &names("A", n));
            b.assert(Predicate::PseudoCollinear { gon: s("P"), points: names("B", n), order: Some(OrderSpec::Exhaustive) });
            if id == "menelaos-ngon" {
                b.assert(Predicate::ProductEquals {
                    product: Product::Menelaos { gon: s("P"), points: names("B", n) },
                    value: Number::int(if n % 2 == 0 { 1 } else { -1 }),
                });
            } else {
                let dual = duality_bridge(&MenelaosGon::new(vertices.clone(), points.clone())?);
                for (k, v) in dual.vertices().iter().enumerate() {
                    b.point(&format!("D{}", k + 1), v);
                }
                for (k, l) in dual.lines().iter().enumerate() {
                    b.line(&format!("d{}", k + 1), l);
                }
                b.gon("Q", &names("D", n));
                b.assert(Predicate::PseudoConcurrent { gon: s("Q"), lines: names("d", n), order: Some(OrderSpec::Exhaustive) });
            }
        }
        ("bisectors-triangle" | "bisectors-ngon", Instance::Bisectors { vertices, choice }) => {
            let n = vertices.len();
            for (k, v) in vertices.iter().enumerate() {
                b.float_point(&format!("A{}", k + 1), *v);
            }
            let pairs = polygon_bisectors(vertices)?;
            if id == "bisectors-triangle" {
                for (k, pair) in pairs.iter().enumerate() {
                    b.line(&format!("g{}", k + 1), &pair.internal);
                    b.line(&format!("h{}", k + 1), &pair.external);
                }
                b.concurrent(&["g1", "g2", "g3"]);
                b.concurrent(&["g1", "h2", "h3"]);
                b.concurrent(&["g2", "h3", "h1"]);
                b.concurrent(&["g3", "h1", "h2"]);
            } else {
                for (k, pair) in pairs.iter().enumerate() {
                    let kind = choice.get(k).copied().unwrap_or(BisectorKind::Internal);
                    b.line(&format!("g{}", k + 1), pair.get(kind));
                }
                b.gon("P", &names("A", n));
                b.assert(Predicate::PseudoConcurrent { gon: s("P"), lines: names("g", n), order: None });
            }
        }
        ("steiner-add-11", _) => return Err(ExportError::Unsupported(s(id))),
        _ => return Err(mismatch()),
    }
    Ok(b.scene())
}

fn pencils_scene(
    b: &mut Builder,
    id: &str,
    shared: Option<&Line<Rational>>,
    pencils: &[HarmonicPencil<Rational>; 2],
) -> Result<(), ExportError> {
    for (k, p) in pencils.iter().enumerate() {
        let i = k + 1;
        b.point(&format!("V{i}"), &p.vertex);
        b.line(&format!("a{i}"), &p.a1);
        b.line(&format!("b{i}"), &p.a2);
        b.line(&format!("g{i}"), &p.g);
        b.line(&format!("h{i}"), &p.h);
        b.assert(Predicate::Harmonic(quad4(&format!("a{i}"), &format!("b{i}"), &format!("g{i}"), &format!("h{i}"))));
    }
    if id == "two-pencils" {
        b.meet("X1", "a1", "a2");
        b.meet("X2", "b1", "b2");
        b.meet("X3", "g1", "g2");
        b.meet("X4", "h1", "h2");
        b.collinear(&["X1", "X2", "X3", "X4"]);
        return Ok(());
    }
    let shared = shared.ok_or_else(|| ExportError::Mismatch(id.to_string()))?;
    let other = |p: &HarmonicPencil<Rational>, i: usize| {
        if p.a1 == *shared {
            Ok(format!("b{i}"))
        } else if p.a2 == *shared {
            Ok(format!("a{i}"))
        } else {
            Err(ExportError::Geom(GeomError::SharedLineMissing))
        }
    };
    let (o1, o2) = (other(&pencils[0], 1)?, other(&pencils[1], 2)?);
    b.meet("T", &o1, &o2);
    b.meet("GG", "g1", "g2");
    b.meet("HH", "h1", "h2");
    b.meet("GH", "g1", "h2");
    b.meet("HG", "h1", "g2");
    b.collinear(&["T", "GG", "HH"]);
    b.collinear(&["T", "GH", "HG"]);
    Ok(())
}

/// Quadrilateral with its eight free triples; with `ell_pairs` the fourth
/// line is completed in the scene and the four pair coincidences asserted.
fn quad_scene(b: &mut Builder, vertices: &[Point<Rational>; 4], g: &[Line<Rational>; 4], ell_pairs: bool) {
    for k in 0..4 {
        b.point(&format!("A{}", k + 1), &vertices[k]);
    }
    b.join("s12", "A1", "A2");
    b.join("s23", "A2", "A3");
    b.join("s34", "A3", "A4");
    b.join("s41", "A4", "A1");
    b.meet("A5", "s12", "s34");
    b.meet("A6", "s41", "s23");
    for k in 0..3 {
        b.line(&format!("g{}", k + 1), &g[k]);
    }
    if ell_pairs {
        b.push(Statement::Line {
            name: s("g4"),
            expr: LineExpr::CompleteFourthLine { vertices: quad4("A1", "A2", "A3", "A4"), lines: [s("g1"), s("g2"), s("g3")] },
        });
    } else {
        b.line("g4", &g[3]);
    }
    b.harmonic_line("h1", "s41", "s12", "g1");
    b.harmonic_line("h2", "s12", "s23", "g2");
    b.harmonic_line("h3", "s23", "s34", "g3");
    b.harmonic_line("h4", "s34", "s41", "g4");
    let table: [(&str, [(char, usize, char, usize); 2]); 8] = [
        ("A5", [('g', 1, 'h', 4), ('h', 1, 'g', 4)]),
        ("A5", [('g', 3, 'h', 2), ('h', 3, 'g', 2)]),
        ("A5", [('g', 1, 'g', 4), ('h', 1, 'h', 4)]),
        ("A5", [('g', 2, 'g', 3), ('h', 2, 'h', 3)]),
        ("A6", [('g', 1, 'h', 2), ('h', 1, 'g', 2)]),
        ("A6", [('g', 3, 'h', 4), ('h', 3, 'g', 4)]),
        ("A6", [('g', 1, 'g', 2), ('h', 1, 'h', 2)]),
        ("A6", [('g', 3, 'g', 4), ('h', 3, 'h', 4)]),
    ];
    let mut triples = Vec::new();
    for (apex, pair) in table {
        let mut pts = vec![s(apex)];
        for (f, i, t, j) in pair {
            let name = format!("{}{f}{i}{t}{j}", "P");
            b.meet(&name, &format!("{f}{i}"), &format!("{t}{j}"));
            pts.push(name);
        }
        let refs: Vec<&str> = pts.iter().map(String::as_str).collect();
        b.collinear(&refs);
        triples.push(pts);
    }
    if ell_pairs {
        for pair in triples.chunks(2) {
            let mut pts: Vec<&str> = pair[0].iter().map(String::as_str).collect();
            pts.extend(pair[1][1..].iter().map(String::as_str));
            b.collinear(&pts);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::evaluate;
    use crate::format::format;
    use crate::parser::parse;
    use harmonica::generate::{trial_seed, GenSpec, Generator};
    use harmonica::suite::{Backend, Polarity, THEOREMS};

    #[test]
    fn positive_instances_check_clean() {
        for t in THEOREMS {
            for k in 0..3 {
                let mut g = Generator::new(GenSpec::default().with_seed(trial_seed(7, k)));
                let inst = t.generate(&mut g, None, Polarity::Positive).unwrap();
                let scene = match instance_scene(t.id, &inst) {
                    Ok(s) => s,
                    Err(ExportError::Unsupported(_)) => continue,
                    Err(e) => panic!("{}: {e}", t.id),
                };
                let text = format(&scene);
                let reparsed = parse(&text).unwrap_or_else(|e| panic!("{}: {e}\n{text}", t.id));
                assert_eq!(reparsed, scene);
                let backend = if t.float_only { Backend::Float } else { Backend::Exact };
                let report = evaluate(&reparsed, backend).unwrap().report;
                assert!(report.passed, "{} trial {k}: {:#?}\n{text}", t.id, report.failures().collect::<Vec<_>>());
            }
        }
    }
}
