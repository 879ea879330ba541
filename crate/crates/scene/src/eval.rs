//! Scene evaluation on either numeric backend.
//!
//! Declarations are evaluated top to bottom. A failing construction aborts
//! with the declaration site; a predicate whose inputs are degenerate (for
//! example a cross-ratio of non-collinear points) is reported as not holding,
//! with the reason in `detail`.

use std::collections::HashMap;

use harmonica::pencil::{complete_fourth_line, FourthLineCriterion};
use harmonica::polygon::{reduce_with, CevaGon, MenelaosGon, Strategy};
use harmonica::suite::Backend;
use harmonica::{
    all_collinear, all_concurrent, collinear_residual, concurrent_residual, cross_ratio_lines, cross_ratio_points,
    fourth_harmonic_line, harmonic_conjugate, join, meet, Approx, GeomError, Line, Point, Rational, Scalar,
};
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::ast::*;
use crate::error::EvalError;
use crate::format;

pub const REPORT_SCHEMA: u64 = 1;

#[derive(Clone, Debug, PartialEq)]
pub enum Value<S: Scalar> {
    Point(Point<S>),
    Line(Line<S>),
    Gon(Vec<String>),
}

/// Values of all declarations, by name.
#[derive(Clone, Debug, Default)]
pub struct Env<S: Scalar> {
    values: HashMap<String, Value<S>>,
}

impl<S: Scalar> Env<S> {
    pub fn point(&self, name: &str) -> Option<&Point<S>> {
        match self.values.get(name) {
            Some(Value::Point(p)) => Some(p),
            _ => None,
        }
    }

    pub fn line(&self, name: &str) -> Option<&Line<S>> {
        match self.values.get(name) {
            Some(Value::Line(l)) => Some(l),
            _ => None,
        }
    }

    pub fn gon(&self, name: &str) -> Option<Vec<Point<S>>> {
        match self.values.get(name) {
            Some(Value::Gon(v)) => v.iter().map(|n| self.point(n).cloned()).collect(),
            _ => None,
        }
    }

    fn points(&self, names: &[String]) -> Vec<Point<S>> {
        names.iter().map(|n| self.point(n).expect("checked by the parser").clone()).collect()
    }

    fn lines(&self, names: &[String]) -> Vec<Line<S>> {
        names.iter().map(|n| self.line(n).expect("checked by the parser").clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AssertionResult {
    /// 1-based among the assertions of the scene.
    pub index: usize,
    pub line: usize,
    pub col: usize,
    pub text: String,
    pub negated: bool,
    /// Truth of the predicate itself.
    pub holds: bool,
    /// `holds` unless negated.
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Json::is_null")]
    pub witness: Json,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SceneReport {
    pub schema: u64,
    pub backend: Backend,
    pub passed: bool,
    pub assertions: Vec<AssertionResult>,
}

impl SceneReport {
    pub fn failures(&self) -> impl Iterator<Item = &AssertionResult> {
        self.assertions.iter().filter(|a| !a.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FigurePoint {
    pub name: String,
    /// `None` for points at infinity.
    pub at: Option<(f64, f64)>,
    /// Given by coordinates rather than constructed.
    pub literal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FigureLine {
    pub name: String,
    pub coords: [f64; 3],
    /// Literal lines and joins; harmonic and completed lines are derived.
    pub base: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FigureGon {
    pub name: String,
    pub vertices: Vec<(f64, f64)>,
}

/// Geometry for rendering, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Figure {
    pub points: Vec<FigurePoint>,
    pub lines: Vec<FigureLine>,
    pub gons: Vec<FigureGon>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub report: SceneReport,
    pub figure: Figure,
}

pub fn evaluate(scene: &Scene, backend: Backend) -> Result<Evaluation, EvalError> {
    match backend {
        Backend::Exact => evaluate_with::<Rational>(scene),
        Backend::Float => evaluate_with::<Approx>(scene),
    }
}

pub fn evaluate_with<S: Scalar>(scene: &Scene) -> Result<Evaluation, EvalError> {
    let env = environment::<S>(scene)?;
    let backend = if S::EXACT { Backend::Exact } else { Backend::Float };
    let mut assertions = Vec::new();
    for (k, s) in scene.statements.iter().enumerate() {
        if let Statement::Assert { negated, predicate } = s {
            let pos = scene.position(k);
            let outcome = judge(&env, predicate);
            let residual = if S::EXACT { None } else { outcome.residual };
            assertions.push(AssertionResult {
                index: assertions.len() + 1,
                line: pos.line,
                col: pos.col,
                text: format::statement(s),
                negated: *negated,
                holds: outcome.holds,
                passed: outcome.holds != *negated,
                residual,
                witness: outcome.witness,
                detail: outcome.detail,
            });
        }
    }
    let report = SceneReport {
        schema: REPORT_SCHEMA,
        backend,
        passed: assertions.iter().all(|a| a.passed),
        assertions,
    };
    Ok(Evaluation { report, figure: figure(scene, &env) })
}

/// Evaluate every declaration.
pub fn environment<S: Scalar>(scene: &Scene) -> Result<Env<S>, EvalError> {
    if S::EXACT {
        if let Some(k) = scene.statements.iter().position(|s| Scene::new(vec![s.clone()]).has_decimals()) {
            return Err(EvalError::DecimalInExactScene { pos: scene.position(k) });
        }
    }
    let mut env = Env { values: HashMap::new() };
    for (k, s) in scene.statements.iter().enumerate() {
        let fail = |name: &str, source: GeomError| EvalError::Construction {
            pos: scene.position(k),
            name: name.to_string(),
            source,
        };
        match s {
            Statement::Point { name, expr } => {
                let p = construct_point(&env, expr).map_err(|e| fail(name, e))?;
                env.values.insert(name.clone(), Value::Point(p));
            }
            Statement::Line { name, expr } => {
                let l = construct_line(&env, expr).map_err(|e| fail(name, e))?;
                env.values.insert(name.clone(), Value::Line(l));
            }
            Statement::Gon { name, vertices } => {
                env.values.insert(name.clone(), Value::Gon(vertices.clone()));
            }
            Statement::Assert { .. } => {}
        }
    }
    Ok(env)
}

fn scalar<S: Scalar>(n: &Number) -> S {
    match n {
        Number::Ratio(r) => S::from_rational(r),
        Number::Decimal(v) => S::from_f64(*v).expect("parser rejects non-finite decimals"),
    }
}

fn construct_point<S: Scalar>(env: &Env<S>, expr: &PointExpr) -> harmonica::Result<Point<S>> {
    match expr {
        PointExpr::Literal(c) => {
            let w = c.get(2).map(scalar).unwrap_or_else(S::one);
            Point::from_coords([scalar(&c[0]), scalar(&c[1]), w])
                .ok_or_else(|| GeomError::DegenerateInput("all coordinates are zero".into()))
        }
        PointExpr::Meet(l, m) => meet(&env.lines(std::slice::from_ref(l))[0], &env.lines(std::slice::from_ref(m))[0]),
        PointExpr::Conjugate { a, b, x } => {
            let p = env.points(&[a.clone(), b.clone(), x.clone()]);
            harmonic_conjugate(&p[0], &p[1], &p[2])
        }
    }
}

fn construct_line<S: Scalar>(env: &Env<S>, expr: &LineExpr) -> harmonica::Result<Line<S>> {
    match expr {
        LineExpr::Literal(c) => Line::from_coords([scalar(&c[0]), scalar(&c[1]), scalar(&c[2])])
            .ok_or_else(|| GeomError::DegenerateInput("all coefficients are zero".into())),
        LineExpr::Join(p, q) => {
            let p = env.points(&[p.clone(), q.clone()]);
            join(&p[0], &p[1])
        }
        LineExpr::HarmonicLine { a, b, g } => {
            let l = env.lines(&[a.clone(), b.clone(), g.clone()]);
            let vertex = meet(&l[0], &l[1])?;
            fourth_harmonic_line(&vertex, &l[0], &l[1], &l[2])
        }
        LineExpr::CompleteFourthLine { vertices, lines } => {
            let v: [Point<S>; 4] = env.points(vertices).try_into().expect("four");
            let g: [Line<S>; 3] = env.lines(lines).try_into().expect("three");
            complete_fourth_line(&v, &g, FourthLineCriterion::DiagonalProduct)
        }
    }
}

struct Outcome {
    holds: bool,
    residual: Option<f64>,
    witness: Json,
    detail: Option<String>,
}

impl Outcome {
    fn degenerate(e: GeomError) -> Outcome {
        Outcome { holds: false, residual: None, witness: Json::Null, detail: Some(e.to_string()) }
    }
}

pub fn strategy(order: Option<&OrderSpec>) -> Strategy {
    match order {
        None | Some(OrderSpec::First) => Strategy::First,
        Some(OrderSpec::Exhaustive) => Strategy::Exhaustive,
        Some(OrderSpec::Seed(k)) => Strategy::Seeded(*k),
        Some(OrderSpec::Sampled { seed, orders }) => Strategy::Sampled { seed: *seed, orders: *orders as usize },
        Some(OrderSpec::Fixed(v)) => Strategy::Fixed(v.iter().map(|&i| i as usize).collect()),
    }
}

/// Largest scale-free determinant over all triples, with the first triple
/// that is not dependent as the witness.
fn triple_residual<T, S: Scalar>(names: &[String], coords: &[T], det: impl Fn(&T, &T, &T) -> S) -> (f64, Json) {
    let mut worst = 0.0f64;
    let mut witness = Json::Null;
    let n = coords.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let d = det(&coords[i], &coords[j], &coords[k]);
                worst = worst.max(d.to_f64().abs());
                if witness.is_null() && !d.is_zero() {
                    witness = json!({
                        "triple": [names[i], names[j], names[k]],
                        "determinant": d.encode(),
                    });
                }
            }
        }
    }
    (worst, witness)
}

fn judge<S: Scalar>(env: &Env<S>, p: &Predicate) -> Outcome {
    match p {
        Predicate::Collinear(names) => {
            let pts = env.points(names);
            let holds = all_collinear(&pts);
            // Exact witnesses use `(x, y, 1)` so the determinant is twice the
            // signed area; floats use unit coordinates for a scale-free residual.
            let unit: Vec<Point<S>> = pts
                .iter()
                .map(|p| match p.to_affine() {
                    Some((x, y)) if S::EXACT => Point::affine(x, y),
                    _ => p.normalized(),
                })
                .collect();
            let (residual, witness) = triple_residual(names, &unit, collinear_residual);
            Outcome { holds, residual: Some(residual), witness: if holds { Json::Null } else { witness }, detail: None }
        }
        Predicate::Concurrent(names) => {
            let lines = env.lines(names);
            let holds = all_concurrent(&lines);
            let unit: Vec<Line<S>> = lines.iter().map(Line::normalized).collect();
            let (residual, witness) = triple_residual(names, &unit, concurrent_residual);
            Outcome { holds, residual: Some(residual), witness: if holds { Json::Null } else { witness }, detail: None }
        }
        Predicate::Harmonic(q) => match cross_ratio(env, q) {
            Ok(cr) => {
                let residual = (cr.clone() + S::one()).to_f64().abs();
                Outcome {
                    holds: cr == -S::one(),
                    residual: Some(residual),
                    witness: json!({ "cross_ratio": cr.encode() }),
                    detail: None,
                }
            }
            Err(e) => Outcome::degenerate(e),
        },
        Predicate::CrEqual(a, b) => match (cross_ratio(env, a), cross_ratio(env, b)) {
            (Ok(x), Ok(y)) => Outcome {
                holds: x == y,
                residual: Some((x.clone() - y.clone()).to_f64().abs()),
                witness: json!({ "left": x.encode(), "right": y.encode() }),
                detail: None,
            },
            (Err(e), _) | (_, Err(e)) => Outcome::degenerate(e),
        },
        Predicate::PseudoConcurrent { gon, lines, order } => {
            let built = CevaGon::new(env.gon(gon).expect("checked"), env.lines(lines));
            match built {
                Ok(g) => reduction_outcome(&g, order.as_ref(), g.ceva_product().ok().map(|p| p - S::one())),
                Err(e) => Outcome::degenerate(e),
            }
        }
        Predicate::PseudoCollinear { gon, points, order } => {
            let built = MenelaosGon::new(env.gon(gon).expect("checked"), env.points(points));
            match built {
                Ok(g) => {
                    let target = if g.len() % 2 == 0 { S::one() } else { -S::one() };
                    reduction_outcome(&g, order.as_ref(), g.menelaos_product().ok().map(|p| p - target))
                }
                Err(e) => Outcome::degenerate(e),
            }
        }
        Predicate::ProductEquals { product, value } => {
            let computed = match product {
                Product::Ceva { gon, lines } => {
                    CevaGon::new(env.gon(gon).expect("checked"), env.lines(lines)).and_then(|g| g.ceva_product())
                }
                Product::Menelaos { gon, points } => MenelaosGon::new(env.gon(gon).expect("checked"), env.points(points))
                    .and_then(|g| g.menelaos_product()),
            };
            match computed {
                Ok(v) => {
                    let target: S = scalar(value);
                    Outcome {
                        holds: v == target,
                        residual: Some((v.clone() - target).to_f64().abs()),
                        witness: json!({ "product": v.encode() }),
                        detail: None,
                    }
                }
                Err(e) => Outcome::degenerate(e),
            }
        }
    }
}

fn reduction_outcome<G: harmonica::polygon::Reducible, S: Scalar>(
    gon: &G,
    order: Option<&OrderSpec>,
    product_gap: Option<S>,
) -> Outcome {
    match reduce_with(gon, &strategy(order)) {
        Ok(r) => Outcome {
            holds: r.holds,
            residual: product_gap.map(|g| g.to_f64().abs()),
            witness: json!({
                "indices": r.trace.indices,
                "orders_checked": r.orders_checked,
                "degenerate_orders": r.degenerate_orders,
                "agreement": r.agreement,
            }),
            detail: (!r.agreement).then(|| "reduction orders disagree".to_string()),
        },
        Err(e) => Outcome::degenerate(e),
    }
}

fn cross_ratio<S: Scalar>(env: &Env<S>, q: &[String; 4]) -> harmonica::Result<S> {
    if env.point(&q[0]).is_some() {
        let p = env.points(q);
        cross_ratio_points(&p[0], &p[1], &p[2], &p[3])
    } else {
        let l = env.lines(q);
        let vertex = meet(&l[0], &l[1])?;
        cross_ratio_lines(&vertex, &l[0], &l[1], &l[2], &l[3])
    }
}

fn affine<S: Scalar>(p: &Point<S>) -> Option<(f64, f64)> {
    p.to_affine().map(|(x, y)| (x.to_f64(), y.to_f64()))
}

fn figure<S: Scalar>(scene: &Scene, env: &Env<S>) -> Figure {
    let mut fig = Figure::default();
    for s in &scene.statements {
        match s {
            Statement::Point { name, expr } => fig.points.push(FigurePoint {
                name: name.clone(),
                at: env.point(name).and_then(affine),
                literal: matches!(expr, PointExpr::Literal(_)),
            }),
            Statement::Line { name, expr } => {
                let c = env.line(name).expect("evaluated").normalized().into_coords();
                fig.lines.push(FigureLine {
                    name: name.clone(),
                    coords: [c[0].to_f64(), c[1].to_f64(), c[2].to_f64()],
                    base: matches!(expr, LineExpr::Literal(_) | LineExpr::Join(..)),
                })
            }
            Statement::Gon { name, .. } => {
                let vertices = env.gon(name).unwrap_or_default().iter().filter_map(affine).collect();
                fig.gons.push(FigureGon { name: name.clone(), vertices })
            }
            Statement::Assert { .. } => {}
        }
    }
    fig
}

/// The gon and lines of the first Ceva-type assertion, optionally restricted
/// to the gon named `gon`.
pub fn ceva_binding<S: Scalar>(
    scene: &Scene,
    env: &Env<S>,
    gon: Option<&str>,
) -> Option<harmonica::Result<(CevaGon<S>, Option<OrderSpec>)>> {
    scene.assertions().find_map(|(_, p)| {
        let (g, lines, order) = match p {
            Predicate::PseudoConcurrent { gon, lines, order } => (gon, lines, order.clone()),
            Predicate::ProductEquals { product: Product::Ceva { gon, lines }, .. } => (gon, lines, None),
            _ => return None,
        };
        if gon.is_some_and(|want| want != g) {
            return None;
        }
        Some(CevaGon::new(env.gon(g)?, env.lines(lines)).map(|c| (c, order)))
    })
}

/// Menelaos counterpart of [`ceva_binding`].
pub fn menelaos_binding<S: Scalar>(
    scene: &Scene,
    env: &Env<S>,
    gon: Option<&str>,
) -> Option<harmonica::Result<(MenelaosGon<S>, Option<OrderSpec>)>> {
    scene.assertions().find_map(|(_, p)| {
        let (g, points, order) = match p {
            Predicate::PseudoCollinear { gon, points, order } => (gon, points, order.clone()),
            Predicate::ProductEquals { product: Product::Menelaos { gon, points }, .. } => (gon, points, None),
            _ => return None,
        };
        if gon.is_some_and(|want| want != g) {
            return None;
        }
        Some(MenelaosGon::new(env.gon(g)?, env.points(points)).map(|m| (m, order)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn run(src: &str, backend: Backend) -> SceneReport {
        evaluate(&parse(src).unwrap(), backend).unwrap().report
    }

    #[test]
    fn midpoint_conjugate_is_harmonic() {
        let src = "point A = (0, 0)\npoint B = (2, 0)\npoint X = (1, 0)\npoint Y = conjugate(A, B; X)\nassert harmonic(A, B; X, Y)";
        for backend in [Backend::Exact, Backend::Float] {
            assert!(run(src, backend).passed);
        }
    }

    #[test]
    fn false_collinearity_has_a_witness() {
        let r = run("point A = (0,0) point B = (1,0) point C = (3,1)\nassert collinear(A, B, C)", Backend::Exact);
        assert!(!r.passed);
        let a = &r.assertions[0];
        assert_eq!(a.line, 2);
        // det of (0,0,1), (1,0,1), (3,1,1).
        assert_eq!(a.witness["determinant"], "1/1");
        assert_eq!(a.witness["triple"], json!(["A", "B", "C"]));
    }

    #[test]
    fn decimals_need_the_float_backend() {
        let scene = parse("point A = (0.5, 0)").unwrap();
        assert!(matches!(evaluate(&scene, Backend::Exact), Err(EvalError::DecimalInExactScene { .. })));
        assert!(evaluate(&scene, Backend::Float).is_ok());
    }

    #[test]
    fn construction_failure_names_the_site() {
        let scene = parse("point A = (0,0)\npoint B = (0,0)\nline l = join(A, B)").unwrap();
        let e = evaluate(&scene, Backend::Exact).unwrap_err();
        assert_eq!(e.pos(), Pos { line: 3, col: 1 });
    }

    #[test]
    fn negation() {
        let r = run("point A = (0,0) point B = (1,0) point C = (3,1) assert not collinear(A, B, C)", Backend::Exact);
        assert!(r.passed);
        assert!(!r.assertions[0].holds);
    }
}
