//! Theorem registry: for every theorem id a positive generator that forces
//! the hypothesis, an optional negative generator, and a check.
//!
//! Instances are stored as exact generating data; a check on the float
//! backend converts that data and rebuilds the configuration in floats.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::euclid::{
    bisector_pseudo_concurrency, steiner_add_11_check, triangle_bisector_concurrencies, BisectorKind,
    EuclideanPoint, PRODUCT_TOL,
};
use crate::generate::{GenError, GenSpec, Generator};
use crate::pencil::{
    complete_fourth_line, cor2_collinear_triples, crossratio_corollary_check, desargues_quantitative,
    free_quadrilateral_report, free_triangle_report, pappus_report, quad_coincidence_equivalence,
    triangle_concurrency_transfer, two_pencils_points, FourthLineCriterion, HarmonicPencil,
    QuadrilateralConfig, TrianglePair, TriangleConfig, TwoRanges,
};
use crate::polygon::{duality_bridge, reduce_with, CevaGon, MenelaosGon, Strategy};
use crate::projective::{collinear, collinear_residual, join, Line, Point};
use crate::report::Report;
use crate::scalar::{Approx, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl std::str::FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            _ => Err(format!("unknown backend `{s}` (expected exact or float)")),
        }
    }
}

/// Generating data of one configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Instance {
    /// Two pencils; `pencils[k].h` need not be harmonic in negative instances.
    Pencils { shared: Option<Line<Rational>>, pencils: [HarmonicPencil<Rational>; 2] },
    Triangle { vertices: [Point<Rational>; 3], g: [Line<Rational>; 3] },
    Quadrilateral { vertices: [Point<Rational>; 4], g: [Line<Rational>; 4] },
    Ranges { a: [Point<Rational>; 4], b: [Point<Rational>; 4] },
    TrianglePair { first: [Point<Rational>; 3], second: [Point<Rational>; 3] },
    Ceva { vertices: Vec<Point<Rational>>, lines: Vec<Line<Rational>> },
    Menelaos { vertices: Vec<Point<Rational>>, points: Vec<Point<Rational>> },
    Bisectors { vertices: Vec<EuclideanPoint>, choice: Vec<BisectorKind> },
}

/// Knobs shared by all theorems.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    /// Polygon size for the n-gon theorems; `None` uses the theorem default.
    pub n: Option<usize>,
    pub strategy: Strategy,
    pub backend: Backend,
}

impl Default for Params {
    fn default() -> Self {
        Params { n: None, strategy: Strategy::First, backend: Backend::Exact }
    }
}

type GenFn = fn(&mut Generator, usize) -> std::result::Result<Instance, GenError>;
type CheckFn = fn(&Instance, &Params) -> Result<Report>;

pub struct Theorem {
    pub id: &'static str,
    pub summary: &'static str,
    pub default_n: usize,
    pub positive: GenFn,
    pub negative: Option<GenFn>,
    pub check: CheckFn,
    /// Flags that must hold on negative instances too.
    pub invariants: &'static [&'static str],
    pub exact_only: bool,
    pub float_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

impl Theorem {
    pub fn generate(&self, g: &mut Generator, n: Option<usize>, polarity: Polarity) -> std::result::Result<Instance, GenError> {
        let n = n.unwrap_or(self.default_n);
        match polarity {
            Polarity::Positive => (self.positive)(g, n),
            Polarity::Negative => match self.negative {
                Some(f) => f(g, n),
                None => Err(GenError::UnsupportedTheorem(format!("{} has no negative instances", self.id))),
            },
        }
    }

    /// A positive instance passes when every flag holds; a negative one when
    /// every flag other than the invariants fails.
    pub fn judge(&self, report: &Report, polarity: Polarity) -> bool {
        report.booleans.iter().all(|(name, &v)| match polarity {
            Polarity::Positive => v,
            Polarity::Negative => v == self.invariants.contains(&name.as_str()),
        })
    }
}

fn ngon_n(n: usize) -> usize {
    n.max(4)
}

fn vec_arr<T: Clone, const N: usize>(v: &[T]) -> [T; N] {
    std::array::from_fn(|k| v[k].clone())
}

fn conv<T: Scalar>(p: &Point<Rational>) -> Point<T> {
    p.convert()
}

fn convl<T: Scalar>(l: &Line<Rational>) -> Line<T> {
    l.convert()
}

fn pencil_conv<T: Scalar>(p: &HarmonicPencil<Rational>) -> HarmonicPencil<T> {
    HarmonicPencil {
        vertex: conv(&p.vertex),
        a1: convl(&p.a1),
        a2: convl(&p.a2),
        g: convl(&p.g),
        h: convl(&p.h),
    }
}

fn dispatch(inst: &Instance, p: &Params, exact: fn(&Instance, &Params) -> Result<Report>, float: fn(&Instance, &Params) -> Result<Report>) -> Result<Report> {
    match p.backend {
        Backend::Exact => exact(inst, p),
        Backend::Float => float(inst, p),
    }
}

fn wrong_instance() -> GeomError {
    GeomError::DegenerateInput("instance does not fit this theorem".into())
}

// ---- pencils ---------------------------------------------------------------

fn pencil_at(v: &Point<Rational>, a1: Line<Rational>, a2: Line<Rational>, through: &Point<Rational>) -> Result<HarmonicPencil<Rational>> {
    HarmonicPencil::complete(v.clone(), a1, a2, join(v, through)?)
}

fn two_pencils_positive(g: &mut Generator, _: usize) -> std::result::Result<Instance, GenError> {
    g.retry("two-pencils instance", |g| {
        let pts = g.points(5).ok()?;
        let (x1, x2, x3) = (&pts[0], &pts[1], &pts[2]);
        let x3 = g.point_between(x1, x2).ok().filter(|p| p != x3)?;
        let (v1, v2) = (&pts[3], &pts[4]);
        if collinear(x1, v1, v2) || collinear(x2, v1, v2) || collinear(&x3, v1, v2) {
            return None;
        }
        let mk = |v: &Point<Rational>| -> Option<HarmonicPencil<Rational>> {
            pencil_at(v, join(v, x1).ok()?, join(v, x2).ok()?, &x3).ok()
        };
        let p1 = mk(v1)?;
        let p2 = mk(v2)?;
        let inst = Instance::Pencils { shared: None, pencils: [p1, p2] };
        check_two_pencils_exact(&inst, &Params::default()).ok().map(|_| inst)
    })
}

fn random_pencil(g: &mut Generator, v: &Point<Rational>) -> Option<HarmonicPencil<Rational>> {
    let a1 = g.line_through(v, &[]).ok()?;
    let a2 = g.line_through(v, &[]).ok()?;
    let gl = g.line_through(v, &[]).ok()?;
    if a1 == a2 || gl == a1 || gl == a2 {
        return None;
    }
    HarmonicPencil::complete(v.clone(), a1, a2, gl).ok()
}

fn two_pencils_negative(g: &mut Generator, _: usize) -> std::result::Result<Instance, GenError> {
    g.retry("two-pencils instance", |g| {
        let v = g.points(2).ok()?;
        let p1 = random_pencil(g, &v[0])?;
        let p2 = random_pencil(g, &v[1])?;
        let inst = Instance::Pencils { shared: None, pencils: [p1, p2] };
        check_two_pencils_exact(&inst, &Params::default()).ok().map(|_| inst)
    })
}

const TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

fn check_two_pencils<S: Scalar>(inst: &Instance) -> Result<Report> {
    let Instance::Pencils { pencils, .. } = inst else { return Err(wrong_instance()) };
    let (p1, p2) = (pencil_conv::<S>(&pencils[0]), pencil_conv::<S>(&pencils[1]));
    let pts = two_pencils_points(&p1, &p2)?;
    if pts.iter().enumerate().any(|(i, p)| pts[i + 1..].contains(p)) {
        return Err(GeomError::DegenerateInput("two of the four points coincide".into()));
    }
    let mut r = Report::new("two-pencils");
    for t in TRIPLES {
        let name = format!("collinear{}{}{}", t[0] + 1, t[1] + 1, t[2] + 1);
        r.flag(name.clone(), collinear(&pts[t[0]], &pts[t[1]], &pts[t[2]]));
        r.residual(name, &collinear_residual(&pts[t[0]], &pts[t[1]], &pts[t[2]]));
    }
    Ok(r.with_witness(&pts))
}

fn check_two_pencils_exact(i: &Instance, _: &Params) -> Result<Report> {
    check_two_pencils::<Rational>(i)
}

fn check_two_pencils_float(i: &Instance, _: &Params) -> Result<Report> {
    check_two_pencils::<Approx>(i)
}

fn check_two_pencils_any(i: &Instance, p: &Params) -> Result<Report> {
    dispatch(i, p, check_two_pencils_exact, check_two_pencils_float)
}

fn cor2_instance(g: &mut Generator, harmonic: bool) -> std::result::Result<Instance, GenError> {
    g.retry("shared-line pencils", |g| {
        let v = g.points(2).ok()?;
        let shared = join(&v[0], &v[1]).ok()?;
        let mut pencils = Vec::new();
        for vk in &v {
            let a = g.line_through(vk, &v).ok()?;
            let b1 = g.line_through(vk, &v).ok()?;
            if a == b1 {
                return None;
            }
            let mut p = HarmonicPencil::complete(vk.clone(), shared.clone(), a, b1).ok()?;
            if !harmonic {
                p.h = g.line_through(vk, &v).ok()?;
                if p.h == p.a2 || p.h == p.g {
                    return None;
                }
            }
            pencils.push(p);
        }
        let inst = Instance::Pencils { shared: Some(shared), pencils: vec_arr(&pencils) };
        check_cor2_exact(&inst, &Params::default()).ok().map(|_| inst)
    })
}

fn check_cor2<S: Scalar>(inst: &Instance) -> Result<Report> {
    let Instance::Pencils { shared: Some(shared), pencils } = inst else { return Err(wrong_instance()) };
    let triples = cor2_collinear_triples(&convl::<S>(shared), &pencil_conv(&pencils[0]), &pencil_conv(&pencils[1]))?;
    let mut r = Report::new("cor2");
    for (k, t) in triples.iter().enumerate() {
        if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
            return Err(GeomError::DegenerateInput("triple has coincident points".into()));
        }
        let name = format!("triple{}", k + 1);
        r.flag(name.clone(), collinear(&t[0], &t[1], &t[2]));
        r.residual(name, &collinear_residual(&t[0], &t[1], &t[2]));
    }
    Ok(r.with_witness(&triples))
}

fn check_cor2_exact(i: &Instance, _: &Params) -> Result<Report> {
    check_cor2::<Rational>(i)
}

fn check_cor2_float(i: &Instance, _: &Params) -> Result<Report> {
    check_cor2::<Approx>(i)
}

fn check_cor2_any(i: &Instance, p: &Params) -> Result<Report> {
    dispatch(i, p, check_cor2_exact, check_cor2_float)
}

// ---- triangle and quadrilateral ---------------------------------------------

fn triangle_of<S: Scalar>(inst: &Instance) -> Result<TriangleConfig<S>> {
    let Instance::Triangle { vertices, g } = inst else { return Err(wrong_instance()) };
    TriangleConfig::from_g(vertices.each_ref().map(conv), g.each_ref().map(convl))
}

fn quad_of<S: Scalar>(inst: &Instance) -> Result<QuadrilateralConfig<S>> {
    let Instance::Quadrilateral { vertices, g } = inst else { return Err(wrong_instance()) };
    QuadrilateralConfig::from_g(vertices.each_ref().map(conv), g.each_ref().map(convl))
}

fn triangle_random(g: &mut Generator, _: usize) -> std::result::Result<Instance, GenError> {
    g.retry("triangle configuration", |g| {
        let v = g.triangle().ok()?;
        let lines = g.cevians(&v).ok()?;
        let inst = Instance::Triangle { vertices: v, g: vec_arr(&lines) };
        let ok = check_free_triangle_exact(&inst, &Params::default()).is_ok()
            && check_transfer_exact(&inst, &Params::default()).is_ok();
        ok.then_some(inst)
    })
}

fn triangle_concurrent(g: &mut Generator, _: usize) -> std::result::Result<Instance, GenError> {
    g.retry("concurrent triangle configuration", |g| {
        let v = g.triangle().ok()?;
        let sides = [join(&v[0], &v[1]).ok()?, join(&v[1], &v[2]).ok()?, join(&v[2], &v[0]).ok()?];
        let c = g.point_avoiding(&v, &sides).ok()?;
        let lines: Vec<Line<Rational>> = v.iter().map(|a| join(a, &c)).collect::<Result<_>>().ok()?;
        let inst = Instance::Triangle { vertices: v, g: vec_arr(&lines) };
        check_transfer_exact(&inst, &Params::default()).ok().map(|_| inst)
    })
}

fn check_free_triangle_exact(i: &Instance, _: &Params) -> Result<Report> {
    free_triangle_report(&triangle_of::<Rational>(i)?)
}

fn check_free_triangle_any(i: &Instance, p: &Params) -> Result<Report> {
    dispatch(i, p, check_free_triangle_exact, |i, _| free_triangle_report(&triangle_of::<Approx>(i)?))
}

fn check_transfer_exact(i: &Instance, _: &Params) -> Result<Report> {
    triangle_concurrency_transfer(&triangle_of::<Rational>(i)?)
}

fn check_transfer_any(i: &Instance, p: &Params) -> Result<Report> {
    dispatch(i, p, check_transfer_exact, |i, _| triangle_concurrency_transfer(&triangle_of::<Approx>(i)?))
}

fn quad_random(g: &mut Generator, _: usize) -> std::result::Result<Instance, GenError> {
    g.retry("quadrilateral configuration", |g| {
        let v = g.quadrilateral().ok()?;
        let lines = g.cevians(&v).ok()?;
        let inst = Instance::Quadrilateral { vertices: v, g: vec_arr(&lines) };
        let ok = check_free_quad_exact(&inst, &Params::default()).is_ok()
            && check_quad_eq_exact(&inst, &Params::default()).is_ok();
        ok.then_some(inst)
    })
}

fn quad_completed(g: &mut Generator, _: usize) -> std::result::Result<Instance, GenError> {
    g.retry("completed quadrilateral configuration", |g| {
        let v = g.quadrilateral().ok()?;
        let lines = g.cevians(&v[..3]).ok()?;
        let lines: [Line<Rational>; 3] = vec_arr(&lines);
        if v[3..].iter().any(|p| lines.iter().any(|l| l.contains(p))) {
            return None;
        }
        let g4 = complete_fourth_line(&v, &lines, FourthLineCriterion::DiagonalProduct).ok()?;
        let [g1, g2, g3] = lines;
        let inst = Instance::Quadrilateral { vertices: v, g: [g1, g2, g3, g4] };
        check_quad_eq_exact(&inst, &Params::default()).ok().map(|_| inst)
    })
}

fn check_free_quad_exact(i: &Instance, _: &Params) -> Result<Report> {
    free_quadrilateral_report(&quad_of::<Rational>(i)?)
}

fn check_free_quad_any(i: &Instance, p: &Params) -> Result<Report> {
    dispatch(i, p, check_free_quad_exact, |i, _| free_quadrilateral_report(&quad_of::<Approx>(i)?))
}

fn check_quad_eq_exact(i: &Instance, _: &Params) -> Result<Report> {
    quad_coincidence_equivalence(&quad_of::<Rational>(i)?)
}

fn check_quad_eq_any(i: &Instance, p: &Params) -> Result<Report> {
    dispatch(i, p, check_quad_eq_exact, |i, _| quad_coincidence_equivalence(&quad_of::<Approx>(i)?))
}

// ---- ranges and triangle pairs ----------------------------------------------

fn ranges_of<S: Scalar>(inst: &Instance) -> Result<TwoRanges<S>> {
    let Instance::Ranges { a, b } = inst else { return Err(wrong_instance()) };
    TwoRanges::new(a.each_ref().map(conv), b.each_ref().map(conv))
}

/// Four points `p + t_k (q - p)`.
fn range_points(p: &Point<Rational>, q: &Point<Rational>, t: &[Rational; 4]) -> Option<[Point<Rational>; 4]> {
    let (px, py) = p.to_affine()?;
    let (qx, qy) = q.to_affine()?;
    Some(t.each_ref().map(|t| {
        Point::affine(
            px.clone() + t.clone() * (qx.clone() - px.clone()),
            py.clone() + t.clone() * (qy.clone() - py.clone()),
        )
    }))
}

fn ranges_instance(g: &mut Generator, matched: bool) -> std::result::Result<Instance, GenError> {
    g.retry("two ranges", |g| {
        let base = g.points(4).ok()?;
        let t: [Rational; 4] = std::array::from_fn(|_| g.rational());
        let s: [Rational; 4] = if matched {
            // A random Moebius map preserves the cross-ratio.
            let (al, be, ga, de) = (g.rational(), g.rational(), g.rational(), g.rational());
            if al.clone() * de.clone() - be.clone() * ga.clone() == Rational::integer(0) {
                return None;
            }
            let mut s = Vec::new();
            for tk in &t {
                let den = ga.clone() * tk.clone() + de.clone();
                s.push((al.clone() * tk.clone() + be.clone()).checked_div(&den)?);
            }
            vec_arr(&s)
        } else {
            std::array::from_fn(|_| g.rational())
        };
        let a = range_points(&base[0], &base[1], &t)?;
        let b = range_points(&base[2], &base[3], &s)?;
        let inst = Instance::Ranges { a, b };
        let ok = check_crossratio_exact(&inst, &Params::default()).is_ok()
            && check_pappus_exact(&inst, &Params::default()).is_ok();
        ok.then_some(inst)
    })
}

fn check_crossratio_exact(i: &Instance, _: &Params) -> Result<Report> {
    crossratio_corollary_check(&ranges_of::<Rational>(i)?)
}

fn check_crossratio_any(i: &Instance, p: &Params) -> Result<Report> {
    dispatch(i, p, check_crossratio_exact, |i, _| crossratio_corollary_check(&ranges_of::<Approx>(i)?))
}

fn check_pappus_exact(i: &Instance, _: &Params) -> Result<Report> {
    pappus_report(&ranges_of::<Rational>(i)?)
}

fn check_pappus_any(i: &Instance, p: &Params) -> Result<Report> {
    dispatch(i, p, check_pappus_exact, |i, _| pappus_report(&ranges_of::<Approx>(i)?))
}

fn triangle_pair_of<S: Scalar>(inst: &Instance) -> Result<TrianglePair<S>> {
    let Instance::TrianglePair { first, second } = inst else { return Err(wrong_instance()) };
    TrianglePair::new(first.each_ref().map(conv), second.each_ref().map(conv))
}

fn desargues_instance(g: &mut Generator, perspective: bool) -> std::result::Result<Instance, GenError> {
    g.retry("triangle pair", |g| {
        let first = g.triangle().ok()?;
        let second: [Point<Rational>; 3] = if perspective {
            let o = g.point();
            let (ox, oy) = o.to_affine()?;
            let mut out = Vec::new();
            for p in &first {
                let (x, y) = p.to_affine()?;
                let l = g.rational();
                out.push(Point::affine(
                    ox.clone() + l.clone() * (x - ox.clone()),
                    oy.clone() + l * (y - oy.clone()),
                ));
            }
            vec_arr(&out)
        } else {
            g.triangle().ok()?
        };
        let inst = Instance::TrianglePair { first, second };
        check_desargues_exact(&inst, &Params::default()).ok().map(|_| inst)
    })
}

fn check_desargues_exact(i: &Instance, _: &Params) -> Result<Report> {
    desargues_quantitative(&triangle_pair_of::<Rational>(i)?)
}

fn check_desargues_any(i: &Instance, p: &Params) -> Result<Report> {
    dispatch(i, p, check_desargues_exact, |i, _| desargues_quantitative(&triangle_pair_of::<Approx>(i)?))
}

// ---- n-gons -------------------------------------------------------------------

fn ceva_of<S: Scalar>(inst: &Instance) -> Result<CevaGon<S>> {
    let Instance::Ceva { vertices, lines } = inst else { return Err(wrong_instance()) };
    CevaGon::new(vertices.iter().map(conv).collect(), lines.iter().map(convl).collect())
}

fn menelaos_of<S: Scalar>(inst: &Instance) -> Result<MenelaosGon<S>> {
    let Instance::Menelaos { vertices, points } = inst else { return Err(wrong_instance()) };
    MenelaosGon::new(vertices.iter().map(conv).collect(), points.iter().map(conv).collect())
}

fn side_lines(v: &[Point<Rational>]) -> Option<Vec<Line<Rational>>> {
    let n = v.len();
    (0..n).map(|k| join(&v[k], &v[(k + 1) % n]).ok()).collect()
}

fn ceva_instance(g: &mut Generator, n: usize, concurrent: bool) -> std::result::Result<Instance, GenError> {
    let n = ngon_n(n);
    g.retry("Ceva polygon", |g| {
        let v = g.ngon(n).ok()?;
        let lines = if concurrent {
            let mut off = side_lines(&v)?;
            for i in 0..n {
                for j in i + 2..n {
                    off.push(join(&v[i], &v[j]).ok()?);
                }
            }
            let c = g.point_avoiding(&v, &off).ok()?;
            v.iter().map(|a| join(a, &c).ok()).collect::<Option<Vec<_>>>()?
        } else {
            g.cevians(&v).ok()?
        };
        let gon = CevaGon::new(v.clone(), lines.clone()).ok()?;
        gon.ceva_product().ok()?;
        Some(Instance::Ceva { vertices: v, lines })
    })
}

fn menelaos_instance(g: &mut Generator, n: usize, transversal: bool) -> std::result::Result<Instance, GenError> {
    let n = ngon_n(n);
    g.retry("Menelaos polygon", |g| {
        let v = g.ngon(n).ok()?;
        let points = if transversal {
            let off = g.line_avoiding(&v).ok()?;
            MenelaosGon::on_transversal(v.clone(), &off).ok()?.points().to_vec()
        } else {
            let mut pts = Vec::new();
            for k in 0..n {
                pts.push(g.point_between(&v[k], &v[(k + 1) % n]).ok()?);
            }
            pts
        };
        let gon = MenelaosGon::new(v.clone(), points.clone()).ok()?;
        if points.iter().any(|p| !p.is_finite()) {
            return None;
        }
        gon.menelaos_product().ok()?;
        Some(Instance::Menelaos { vertices: v, points })
    })
}

fn ceva_report<S: Scalar>(gon: &CevaGon<S>, strategy: &Strategy, theorem: &str) -> Result<Report> {
    let red = reduce_with(gon, strategy)?;
    let product = gon.ceva_product()?;
    let mut r = Report::new(theorem);
    r.flag("pseudo_concurrent", red.holds);
    r.flag("product_one", product == S::one());
    r.flag("orders_agree", red.agreement);
    r.residual("product_one", &(product - S::one()));
    r.residuals.insert("orders_checked".into(), red.orders_checked as f64);
    r.residuals.insert("degenerate_orders".into(), red.degenerate_orders as f64);
    Ok(r.with_witness(gon))
}

fn menelaos_report<S: Scalar>(gon: &MenelaosGon<S>, strategy: &Strategy, theorem: &str) -> Result<Report> {
    let red = reduce_with(gon, strategy)?;
    let product = gon.menelaos_product()?;
    let target = if gon.len().is_multiple_of(2) { S::one() } else { -S::one() };
    let mut r = Report::new(theorem);
    r.flag("pseudo_collinear", red.holds);
    r.flag("product_sign", product == target);
    r.flag("orders_agree", red.agreement);
    r.residual("product_sign", &(product - target));
    r.residuals.insert("orders_checked".into(), red.orders_checked as f64);
    r.residuals.insert("degenerate_orders".into(), red.degenerate_orders as f64);
    Ok(r.with_witness(gon))
}

fn check_ceva(i: &Instance, p: &Params) -> Result<Report> {
    let id = if ngon_len(i) == 4 { "ceva-quad" } else { "ceva-ngon" };
    match p.backend {
        Backend::Exact => ceva_report(&ceva_of::<Rational>(i)?, &p.strategy, id),
        Backend::Float => ceva_report(&ceva_of::<Approx>(i)?, &p.strategy, id),
    }
}

fn check_menelaos(i: &Instance, p: &Params) -> Result<Report> {
    match p.backend {
        Backend::Exact => menelaos_report(&menelaos_of::<Rational>(i)?, &p.strategy, "menelaos-ngon"),
        Backend::Float => menelaos_report(&menelaos_of::<Approx>(i)?, &p.strategy, "menelaos-ngon"),
    }
}

fn ngon_len(i: &Instance) -> usize {
    match i {
        Instance::Ceva { vertices, .. } | Instance::Menelaos { vertices, .. } => vertices.len(),
        Instance::Bisectors { vertices, .. } => vertices.len(),
        _ => 0,
    }
}

fn duality_report<S: Scalar>(gon: &MenelaosGon<S>, strategy: &Strategy) -> Result<Report> {
    let direct = reduce_with(gon, strategy)?;
    let dual = reduce_with(&duality_bridge(gon), strategy)?;
    let mut r = Report::new("duality");
    r.flag("pseudo_collinear", direct.holds);
    r.flag("dual_pseudo_concurrent", dual.holds);
    Ok(r.with_witness(gon))
}

fn check_duality(i: &Instance, p: &Params) -> Result<Report> {
    match p.backend {
        Backend::Exact => duality_report(&menelaos_of::<Rational>(i)?, &p.strategy),
        Backend::Float => duality_report(&menelaos_of::<Approx>(i)?, &p.strategy),
    }
}

// ---- bisectors -------------------------------------------------------------------

fn bisector_points(g: &mut Generator, n: usize) -> std::result::Result<Vec<EuclideanPoint>, GenError> {
    g.float_points(n)
}

fn bisectors_triangle_gen(g: &mut Generator, _: usize) -> std::result::Result<Instance, GenError> {
    Ok(Instance::Bisectors { vertices: bisector_points(g, 3)?, choice: vec![BisectorKind::Internal; 3] })
}

fn steiner_gen(g: &mut Generator, _: usize) -> std::result::Result<Instance, GenError> {
    let v = g.convex_quadrilateral()?;
    let vertices = v
        .iter()
        .map(|p| {
            let (x, y) = p.to_affine().expect("finite");
            EuclideanPoint::new(x.to_f64(), y.to_f64())
        })
        .collect();
    Ok(Instance::Bisectors { vertices, choice: vec![BisectorKind::Internal; 4] })
}

fn choice_with_externals(g: &mut Generator, n: usize, externals: usize) -> Vec<BisectorKind> {
    let mut choice = vec![BisectorKind::Internal; n];
    let mut placed = 0;
    while placed < externals {
        let k = g.index(n);
        if choice[k] == BisectorKind::Internal {
            choice[k] = BisectorKind::External;
            placed += 1;
        }
    }
    choice
}

fn bisectors_ngon_with(g: &mut Generator, n: usize, externals: impl Fn(&mut Generator, usize) -> usize) -> std::result::Result<Instance, GenError> {
    let n = ngon_n(n);
    g.retry("bisector polygon", |g| {
        let vertices = bisector_points(g, n).ok()?;
        let k = externals(g, n);
        let choice = choice_with_externals(g, n, k);
        let inst = Instance::Bisectors { vertices, choice };
        check_bisectors_ngon(&inst, &Params::default()).ok().map(|_| inst)
    })
}

fn bisectors_even(g: &mut Generator, n: usize) -> std::result::Result<Instance, GenError> {
    bisectors_ngon_with(g, n, |g, n| 2 * g.index(n / 2 + 1))
}

fn bisectors_odd(g: &mut Generator, n: usize) -> std::result::Result<Instance, GenError> {
    bisectors_ngon_with(g, n, |_, _| 1)
}

fn check_bisectors_triangle(i: &Instance, _: &Params) -> Result<Report> {
    let Instance::Bisectors { vertices, .. } = i else { return Err(wrong_instance()) };
    let v: [EuclideanPoint; 3] = vertices.as_slice().try_into().map_err(|_| wrong_instance())?;
    let (mut r, centers) = triangle_bisector_concurrencies(v)?;
    r.witness = serde_json::json!({ "vertices": v, "centers": centers });
    Ok(r)
}

fn check_steiner(i: &Instance, _: &Params) -> Result<Report> {
    let Instance::Bisectors { vertices, .. } = i else { return Err(wrong_instance()) };
    let v: [EuclideanPoint; 4] = vertices.as_slice().try_into().map_err(|_| wrong_instance())?;
    steiner_add_11_check(v)
}

fn check_bisectors_ngon(i: &Instance, p: &Params) -> Result<Report> {
    let Instance::Bisectors { vertices, choice } = i else { return Err(wrong_instance()) };
    let verdict = bisector_pseudo_concurrency(vertices, choice, &p.strategy, PRODUCT_TOL)?;
    let mut r = Report::new("bisectors-ngon");
    r.flag("pseudo_concurrent", verdict.pseudo_concurrent);
    r.residuals.insert("pseudo_concurrent".into(), verdict.residual);
    r.residuals.insert("ceva_product".into(), verdict.ceva_product);
    r.witness = serde_json::json!({ "vertices": vertices, "choice": choice });
    Ok(r)
}

pub static THEOREMS: &[Theorem] = &[
    Theorem {
        id: "two-pencils",
        summary: "two harmonic pencils: three collinear meets force the fourth",
        default_n: 0,
        positive: two_pencils_positive,
        negative: Some(two_pencils_negative),
        check: check_two_pencils_any,
        invariants: &[],
        exact_only: false,
        float_only: false,
    },
    Theorem {
        id: "cor2",
        summary: "pencils sharing the line through their vertices give two collinear triples",
        default_n: 0,
        positive: |g, _| cor2_instance(g, true),
        negative: Some(|g, _| cor2_instance(g, false)),
        check: check_cor2_any,
        invariants: &[],
        exact_only: false,
        float_only: false,
    },
    Theorem {
        id: "free-triangle",
        summary: "triangle with arbitrary g lines: six collinear triples and harmonic pencils",
        default_n: 3,
        positive: triangle_random,
        negative: None,
        check: check_free_triangle_any,
        invariants: &[],
        exact_only: false,
        float_only: false,
    },
    Theorem {
        id: "triangle-transfer",
        summary: "concurrency of g1 g2 g3 transfers to g_i h_j h_k; Ceva product 1",
        default_n: 3,
        positive: triangle_concurrent,
        negative: Some(triangle_random),
        check: check_transfer_any,
        invariants: &[],
        exact_only: false,
        float_only: false,
    },
    Theorem {
        id: "free-quad",
        summary: "quadrilateral with arbitrary g lines: eight collinear triples",
        default_n: 4,
        positive: quad_random,
        negative: None,
        check: check_free_quad_any,
        invariants: &[],
        exact_only: false,
        float_only: false,
    },
    Theorem {
        id: "quad-equivalence",
        summary: "quadrilateral: four l-pair coincidences, zeta = 1 and diagonal product = 1 are equivalent",
        default_n: 4,
        positive: quad_completed,
        negative: Some(quad_random),
        check: check_quad_eq_any,
        invariants: &[],
        exact_only: false,
        float_only: false,
    },
    Theorem {
        id: "crossratio",
        summary: "two ranges: equal cross-ratios iff each six-point family is collinear",
        default_n: 0,
        positive: |g, _| ranges_instance(g, true),
        negative: Some(|g, _| ranges_instance(g, false)),
        check: check_crossratio_any,
        invariants: &[],
        exact_only: false,
        float_only: false,
    },
    Theorem {
        id: "pappus4",
        summary: "two ranges: equal cross-ratios iff the four Pappus lines coincide",
        default_n: 0,
        positive: |g, _| ranges_instance(g, true),
        negative: Some(|g, _| ranges_instance(g, false)),
        check: check_pappus_any,
        invariants: &[],
        exact_only: false,
        float_only: false,
    },
    Theorem {
        id: "desargues",
        summary: "two triangles: perspective from a point, from a line, three cross-ratio identities",
        default_n: 0,
        positive: |g, _| desargues_instance(g, true),
        negative: Some(|g, _| desargues_instance(g, false)),
        check: check_desargues_any,
        invariants: &[],
        exact_only: false,
        float_only: false,
    },
    Theorem {
        id: "ceva-quad",
        summary: "quadrilateral Ceva: pseudo-concurrency iff the product is 1",
        default_n: 4,
        positive: |g, _| ceva_instance(g, 4, true),
        negative: Some(|g, _| ceva_instance(g, 4, false)),
        check: check_ceva,
        invariants: &["orders_agree"],
        exact_only: false,
        float_only: false,
    },
    Theorem {
        id: "ceva-ngon",
        summary: "n-gon Ceva: pseudo-concurrency iff the product is 1, for every order",
        default_n: 5,
        positive: |g, n| ceva_instance(g, n, true),
        negative: Some(|g, n| ceva_instance(g, n, false)),
        check: check_ceva,
        invariants: &["orders_agree"],
        exact_only: false,
        float_only: false,
    },
    Theorem {
        id: "menelaos-ngon",
        summary: "n-gon Menelaos: pseudo-collinearity iff the product is (-1)^n, for every order",
        default_n: 5,
        positive: |g, n| menelaos_instance(g, n, true),
        negative: Some(|g, n| menelaos_instance(g, n, false)),
        check: check_menelaos,
        invariants: &["orders_agree"],
        exact_only: false,
        float_only: false,
    },
    Theorem {
        id: "duality",
        summary: "pseudo-collinear points iff the dual lines are pseudo-concurrent",
        default_n: 5,
        positive: |g, n| menelaos_instance(g, n, true),
        negative: Some(|g, n| menelaos_instance(g, n, false)),
        check: check_duality,
        invariants: &[],
        exact_only: false,
        float_only: false,
    },
    Theorem {
        id: "bisectors-triangle",
        summary: "incenter and excenters as bisector concurrencies",
        default_n: 3,
        positive: bisectors_triangle_gen,
        negative: None,
        check: check_bisectors_triangle,
        invariants: &[],
        exact_only: false,
        float_only: true,
    },
    Theorem {
        id: "steiner-add-11",
        summary: "convex quadrilateral: four bisector quintuples are collinear",
        default_n: 4,
        positive: steiner_gen,
        negative: None,
        check: check_steiner,
        invariants: &[],
        exact_only: false,
        float_only: true,
    },
    Theorem {
        id: "bisectors-ngon",
        summary: "bisectors with an even number of externals are pseudo-concurrent; one external is not",
        default_n: 5,
        positive: bisectors_even,
        negative: Some(bisectors_odd),
        check: check_bisectors_ngon,
        invariants: &[],
        exact_only: false,
        float_only: true,
    },
];

/// Alternative names accepted by [`theorem`].
pub const ALIASES: &[(&str, &str)] = &[("quad-ell-pairs", "quad-equivalence")];

pub fn theorem(id: &str) -> Option<&'static Theorem> {
    let id = ALIASES.iter().find(|(alias, _)| *alias == id).map_or(id, |(_, target)| target);
    THEOREMS.iter().find(|t| t.id == id)
}

/// Build an instance satisfying the hypothesis of `id`.
pub fn force_hypothesis(id: &str, spec: GenSpec, n: Option<usize>) -> std::result::Result<Instance, GenError> {
    let t = theorem(id).ok_or_else(|| GenError::UnsupportedTheorem(id.into()))?;
    t.generate(&mut Generator::new(spec), n, Polarity::Positive)
}

/// Outcome of one generated trial.
#[derive(Clone, Debug, Serialize)]
pub struct Trial {
    pub index: u64,
    /// Seed reproducing the trial on its own.
    pub seed: u64,
    pub polarity: Polarity,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
}

/// Generate and check one trial from its own seed.
pub fn run_trial(t: &Theorem, seed: u64, index: u64, polarity: Polarity, spec: GenSpec, params: &Params) -> Trial {
    let mut g = Generator::new(spec.with_seed(seed));
    let outcome = t
        .generate(&mut g, params.n, polarity)
        .map_err(|e| e.to_string())
        .and_then(|inst| (t.check)(&inst, params).map_err(|e| e.to_string()));
    match outcome {
        Ok(report) => Trial { index, seed, polarity, passed: t.judge(&report, polarity), error: None, report: Some(report) },
        Err(e) => Trial { index, seed, polarity, passed: false, error: Some(e), report: None },
    }
}

/// The shipped order-sensitivity witness as a report: the same vertices and
/// lines are pseudo-concurrent in one vertex order and not in another.
pub fn order_sensitivity_report() -> Result<Report> {
    let (good, bad) = crate::polygon::order_sensitivity_witness();
    let first = reduce_with(&good, &Strategy::Exhaustive)?;
    let second = reduce_with(&bad, &Strategy::Exhaustive)?;
    let mut r = Report::new("order-sensitivity");
    r.flag("original_pseudo_concurrent", first.holds && first.agreement);
    r.flag("permuted_not_pseudo_concurrent", !second.holds && second.agreement);
    Ok(r.with_witness(&serde_json::json!({ "original": good, "permuted": bad })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_sixteen_unique_ids() {
        let mut ids: Vec<&str> = THEOREMS.iter().map(|t| t.id).collect();
        assert_eq!(ids.len(), 16);
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 16);
    }

    #[test]
    fn every_theorem_passes_a_few_trials() {
        let spec = GenSpec::default();
        for t in THEOREMS {
            let params = Params {
                backend: if t.float_only { Backend::Float } else { Backend::Exact },
                ..Params::default()
            };
            for k in 0..5 {
                let seed = crate::generate::trial_seed(11, k);
                let trial = run_trial(t, seed, k, Polarity::Positive, spec, &params);
                assert!(trial.passed, "{} positive {k}: {trial:?}", t.id);
                if t.negative.is_some() {
                    let trial = run_trial(t, seed, k, Polarity::Negative, spec, &params);
                    assert!(trial.passed, "{} negative {k}: {trial:?}", t.id);
                }
            }
        }
    }

    #[test]
    fn forcing_unknown_theorem_fails() {
        assert!(matches!(
            force_hypothesis("no-such-thing", GenSpec::default(), None),
            Err(GenError::UnsupportedTheorem(_))
        ));
    }

    #[test]
    fn order_witness_verified() {
        assert!(order_sensitivity_report().unwrap().all_true());
    }
}
