//! Angle bisectors on the float backend.
//!
//! Every check first maps the configuration to a normalized frame (centroid
//! at the origin, diameter 1), so residuals do not depend on position or
//! scale. Incidence residuals are `|det(l1, l2, l3)|` of lines with unit
//! coefficient vectors, or the same for points.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::polygon::{reduce_along, CevaGon, Strategy};
use crate::projective::{cross_ratio_lines, join, meet, Line, Point};
use crate::report::Report;
use crate::scalar::Approx;

/// Default bound on incidence residuals.
pub const INCIDENCE_TOL: f64 = 1e-9;
/// Default bound on residuals after reductions and on products.
pub const PRODUCT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EuclideanPoint {
    pub x: f64,
    pub y: f64,
}

impl EuclideanPoint {
    pub fn new(x: f64, y: f64) -> Self {
        EuclideanPoint { x, y }
    }

    pub fn to_point(self) -> Point<Approx> {
        Point::affine(Approx(self.x), Approx(self.y))
    }

    fn sub(self, o: Self) -> (f64, f64) {
        (self.x - o.x, self.y - o.y)
    }
}

/// Which of the two bisectors at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BisectorKind {
    Internal,
    External,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BisectorPair {
    pub vertex: EuclideanPoint,
    pub internal: Line<Approx>,
    pub external: Line<Approx>,
}

impl BisectorPair {
    pub fn get(&self, kind: BisectorKind) -> &Line<Approx> {
        match kind {
            BisectorKind::Internal => &self.internal,
            BisectorKind::External => &self.external,
        }
    }
}

fn unit((x, y): (f64, f64)) -> Option<(f64, f64)> {
    let n = x.hypot(y);
    (n > 0.0 && n.is_finite()).then(|| (x / n, y / n))
}

fn line_through_dir(p: EuclideanPoint, (dx, dy): (f64, f64)) -> Line<Approx> {
    let (a, b) = (-dy, dx);
    Line::new(Approx(a), Approx(b), Approx(-(a * p.x + b * p.y)))
}

/// Internal bisector along the sum of the unit vectors towards `prev` and
/// `next`, external bisector perpendicular to it.
///
/// At a reflex vertex the same rule applies; since lines are unoriented the
/// result does not depend on the traversal direction.
pub fn angle_bisectors(prev: EuclideanPoint, v: EuclideanPoint, next: EuclideanPoint) -> Result<BisectorPair> {
    let u1 = unit(prev.sub(v)).ok_or(GeomError::DegenerateAngle)?;
    let u2 = unit(next.sub(v)).ok_or(GeomError::DegenerateAngle)?;
    let sin = u1.0 * u2.1 - u1.1 * u2.0;
    if sin.abs() <= INCIDENCE_TOL {
        return Err(GeomError::DegenerateAngle);
    }
    let d = unit((u1.0 + u2.0, u1.1 + u2.1)).ok_or(GeomError::DegenerateAngle)?;
    Ok(BisectorPair {
        vertex: v,
        internal: line_through_dir(v, d),
        external: line_through_dir(v, (-d.1, d.0)),
    })
}

/// `|CR(sides; internal, external) + 1|` for the pencil at `v`.
pub fn harmonic_residual(prev: EuclideanPoint, v: EuclideanPoint, next: EuclideanPoint, pair: &BisectorPair) -> Result<f64> {
    let s1 = join(&v.to_point(), &prev.to_point())?;
    let s2 = join(&v.to_point(), &next.to_point())?;
    let cr = cross_ratio_lines(&v.to_point(), &s1, &s2, &pair.internal, &pair.external)?;
    Ok((cr.0 + 1.0).abs())
}

/// Translate the centroid to the origin and scale the diameter to 1.
#[derive(Clone, Copy, Debug)]
pub struct Frame {
    cx: f64,
    cy: f64,
    scale: f64,
}

impl Frame {
    pub fn fit(points: &[EuclideanPoint]) -> Result<Frame> {
        if points.is_empty() {
            return Err(GeomError::DegenerateInput("no points".into()));
        }
        let n = points.len() as f64;
        let cx = points.iter().map(|p| p.x).sum::<f64>() / n;
        let cy = points.iter().map(|p| p.y).sum::<f64>() / n;
        let mut diameter: f64 = 0.0;
        for p in points {
            for q in points {
                diameter = diameter.max((p.x - q.x).hypot(p.y - q.y));
            }
        }
        if !(diameter > 0.0 && diameter.is_finite()) {
            return Err(GeomError::DegenerateInput("all points coincide".into()));
        }
        Ok(Frame { cx, cy, scale: diameter })
    }

    pub fn to_frame(&self, p: EuclideanPoint) -> EuclideanPoint {
        EuclideanPoint::new((p.x - self.cx) / self.scale, (p.y - self.cy) / self.scale)
    }

    pub fn from_frame(&self, p: EuclideanPoint) -> EuclideanPoint {
        EuclideanPoint::new(p.x * self.scale + self.cx, p.y * self.scale + self.cy)
    }

    pub fn normalize(&self, points: &[EuclideanPoint]) -> Vec<EuclideanPoint> {
        points.iter().map(|&p| self.to_frame(p)).collect()
    }
}

fn unit3(c: &[Approx; 3]) -> [f64; 3] {
    let n = (c[0].0 * c[0].0 + c[1].0 * c[1].0 + c[2].0 * c[2].0).sqrt();
    [c[0].0 / n, c[1].0 / n, c[2].0 / n]
}

fn det(u: [f64; 3], v: [f64; 3], w: [f64; 3]) -> f64 {
    u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0])
}

/// Scale-free concurrency residual of three lines.
pub fn concurrency_residual(l: &Line<Approx>, m: &Line<Approx>, n: &Line<Approx>) -> f64 {
    det(unit3(l.coords()), unit3(m.coords()), unit3(n.coords())).abs()
}

/// Largest scale-free collinearity residual over all triples of `points`.
pub fn collinearity_residual(points: &[Point<Approx>]) -> f64 {
    let u: Vec<[f64; 3]> = points.iter().map(|p| unit3(p.coords())).collect();
    let mut worst: f64 = 0.0;
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            for k in j + 1..u.len() {
                worst = worst.max(det(u[i], u[j], u[k]).abs());
            }
        }
    }
    worst
}

fn to_euclid(p: &Point<Approx>) -> Option<EuclideanPoint> {
    p.to_affine().map(|(x, y)| EuclideanPoint::new(x.0, y.0))
}

/// Bisector pairs at every vertex of a closed polygon, in the normalized frame.
pub fn polygon_bisectors(vertices: &[EuclideanPoint]) -> Result<Vec<BisectorPair>> {
    let n = vertices.len();
    (0..n)
        .map(|k| angle_bisectors(vertices[(k + n - 1) % n], vertices[k], vertices[(k + 1) % n]))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TriangleCenters {
    pub incenter: EuclideanPoint,
    /// `excenters[k]` lies on the internal bisector at vertex `k`.
    pub excenters: [EuclideanPoint; 3],
}

/// Concurrency of the internal bisectors and of each internal bisector with
/// the two opposite external ones, and the four centers.
pub fn triangle_bisector_concurrencies(vertices: [EuclideanPoint; 3]) -> Result<(Report, TriangleCenters)> {
    let frame = Frame::fit(&vertices)?;
    let v = frame.normalize(&vertices);
    let b = polygon_bisectors(&v).map_err(|_| GeomError::DegenerateConfig("degenerate triangle".into()))?;
    let g: Vec<&Line<Approx>> = b.iter().map(|p| &p.internal).collect();
    let h: Vec<&Line<Approx>> = b.iter().map(|p| &p.external).collect();
    let mut r = Report::new("bisectors-triangle");
    let res = concurrency_residual(g[0], g[1], g[2]);
    r.flag("g1g2g3", res <= INCIDENCE_TOL);
    r.residuals.insert("g1g2g3".into(), res);
    for k in 0..3 {
        let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
        let name = format!("g{}h{}h{}", k + 1, k1 + 1, k2 + 1);
        let res = concurrency_residual(g[k], h[k1], h[k2]);
        r.flag(name.clone(), res <= INCIDENCE_TOL);
        r.residuals.insert(name, res);
    }
    let center = |l: &Line<Approx>, m: &Line<Approx>| -> Result<EuclideanPoint> {
        let p = meet(l, m)?;
        to_euclid(&p).map(|q| frame.from_frame(q)).ok_or(GeomError::PointAtInfinity)
    };
    let centers = TriangleCenters {
        incenter: center(g[0], g[1])?,
        excenters: [center(h[1], h[2])?, center(h[2], h[0])?, center(h[0], h[1])?],
    };
    Ok((r.with_witness(&vertices), centers))
}

/// Convex with consistent orientation (either direction).
pub fn is_convex(vertices: &[EuclideanPoint]) -> bool {
    let n = vertices.len();
    let signs: Vec<f64> = (0..n)
        .map(|k| {
            let (a, b, c) = (vertices[k], vertices[(k + 1) % n], vertices[(k + 2) % n]);
            let (u, w) = (b.sub(a), c.sub(b));
            u.0 * w.1 - u.1 * w.0
        })
        .collect();
    signs.iter().all(|s| *s > 0.0) || signs.iter().all(|s| *s < 0.0)
}

/// Quintuples on the bisectors `g5, g6, h5, h6` of a convex quadrilateral.
///
/// The internal/external labelling at `A1..A4` is taken from the
/// quadrilateral itself, which matches the labelling of the table only for
/// convex quadrilaterals; other inputs are rejected.
pub fn steiner_add_11_check(vertices: [EuclideanPoint; 4]) -> Result<Report> {
    if !is_convex(&vertices) {
        return Err(GeomError::DegenerateConfig("quadrilateral is not convex".into()));
    }
    let frame = Frame::fit(&vertices)?;
    let v: Vec<Point<Approx>> = frame.normalize(&vertices).into_iter().map(EuclideanPoint::to_point).collect();
    let b = polygon_bisectors(&frame.normalize(&vertices))?;
    let side = |i: usize, j: usize| join(&v[i - 1], &v[j - 1]);
    let a5 = meet(&side(1, 2)?, &side(3, 4)?)?;
    let a6 = meet(&side(2, 3)?, &side(4, 1)?)?;
    let g = |i: usize| &b[i - 1].internal;
    let h = |i: usize| &b[i - 1].external;
    let x = |l: &Line<Approx>, m: &Line<Approx>| meet(l, m);
    let quintuples = [
        ("g5", [a5.clone(), x(h(1), h(4))?, x(g(1), g(4))?, x(h(3), h(2))?, x(g(3), g(2))?]),
        ("g6", [a6.clone(), x(h(3), h(4))?, x(g(3), g(4))?, x(h(1), h(2))?, x(g(1), g(2))?]),
        ("h5", [a5, x(g(1), h(4))?, x(h(1), g(4))?, x(g(3), h(2))?, x(h(3), g(2))?]),
        ("h6", [a6, x(g(3), h(4))?, x(h(3), g(4))?, x(g(1), h(2))?, x(h(1), g(2))?]),
    ];
    let mut r = Report::new("steiner-add-11");
    for (name, pts) in &quintuples {
        let res = collinearity_residual(pts);
        r.flag(*name, res <= PRODUCT_TOL);
        r.residuals.insert((*name).into(), res);
    }
    Ok(r.with_witness(&vertices))
}

/// Result of reducing the chosen bisectors of an n-gon.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BisectorVerdict {
    pub pseudo_concurrent: bool,
    /// Largest final-triangle concurrency residual over the orders tried.
    pub residual: f64,
    pub ceva_product: f64,
    pub orders_checked: usize,
}

/// The chosen bisectors as a float Ceva configuration in the normalized frame.
pub fn bisector_gon(vertices: &[EuclideanPoint], choice: &[BisectorKind]) -> Result<CevaGon<Approx>> {
    if choice.len() != vertices.len() {
        return Err(GeomError::InvalidPolygon("one bisector choice per vertex required".into()));
    }
    let frame = Frame::fit(vertices)?;
    let v = frame.normalize(vertices);
    let pairs = polygon_bisectors(&v)?;
    let lines = pairs.iter().zip(choice).map(|(p, &k)| p.get(k).clone()).collect();
    CevaGon::new(v.into_iter().map(EuclideanPoint::to_point).collect(), lines)
}

/// Reduce the chosen bisectors along every order of `strategy` and test the
/// final triangle for concurrency with tolerance `tol`.
pub fn bisector_pseudo_concurrency(
    vertices: &[EuclideanPoint],
    choice: &[BisectorKind],
    strategy: &Strategy,
    tol: f64,
) -> Result<BisectorVerdict> {
    let gon = bisector_gon(vertices, choice)?;
    let orders = crate::polygon::orders_for(gon.len(), strategy);
    let mut worst: f64 = 0.0;
    for order in &orders {
        let trace = reduce_along(&gon, order)?;
        let tri = trace.last();
        let l = tri.lines();
        worst = worst.max(concurrency_residual(&l[0], &l[1], &l[2]));
    }
    let product = gon.ceva_product()?.0;
    Ok(BisectorVerdict {
        pseudo_concurrent: worst <= tol,
        residual: worst,
        ceva_product: product,
        orders_checked: orders.len(),
    })
}

/// Which bisector at `v` a line is, if it is one of them within `tol`.
pub fn classify_line(
    prev: EuclideanPoint,
    v: EuclideanPoint,
    next: EuclideanPoint,
    line: &Line<Approx>,
    tol: f64,
) -> Result<Option<BisectorKind>> {
    let pair = angle_bisectors(prev, v, next)?;
    let direction = |l: &Line<Approx>| unit((l.b().0, -l.a().0)).unwrap_or((0.0, 0.0));
    let d = direction(line);
    let along = |l: &Line<Approx>| {
        let e = direction(l);
        (d.0 * e.1 - d.1 * e.0).abs()
    };
    if !line.contains(&v.to_point()) {
        return Ok(None);
    }
    if along(&pair.internal) <= tol {
        Ok(Some(BisectorKind::Internal))
    } else if along(&pair.external) <= tol {
        Ok(Some(BisectorKind::External))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(x: f64, y: f64) -> EuclideanPoint {
        EuclideanPoint::new(x, y)
    }

    fn dir(l: &Line<Approx>) -> (f64, f64) {
        unit((l.b().0, -l.a().0)).unwrap()
    }

    fn parallel(a: (f64, f64), b: (f64, f64)) -> bool {
        (a.0 * b.1 - a.1 * b.0).abs() < 1e-12
    }

    #[test]
    fn right_isosceles_corner() {
        let pair = angle_bisectors(e(1.0, 0.0), e(0.0, 0.0), e(0.0, 1.0)).unwrap();
        assert!(parallel(dir(&pair.internal), (1.0, 1.0)));
        assert!(parallel(dir(&pair.external), (1.0, -1.0)));
    }

    #[test]
    fn unequal_arms_use_unit_vectors() {
        let pair = angle_bisectors(e(2.0, 0.0), e(0.0, 0.0), e(0.0, 1.0)).unwrap();
        assert!(parallel(dir(&pair.internal), (1.0, 1.0)));
        let swapped = angle_bisectors(e(0.0, 1.0), e(0.0, 0.0), e(2.0, 0.0)).unwrap();
        assert_eq!(swapped.internal, pair.internal);
        assert_eq!(swapped.external, pair.external);
    }

    #[test]
    fn collinear_angle_is_rejected() {
        assert_eq!(
            angle_bisectors(e(-1.0, 0.0), e(0.0, 0.0), e(3.0, 0.0)),
            Err(GeomError::DegenerateAngle)
        );
    }

    #[test]
    fn bisectors_are_harmonic() {
        let (a, v, b) = (e(3.0, 1.0), e(0.5, -0.25), e(-1.0, 2.0));
        let pair = angle_bisectors(a, v, b).unwrap();
        assert!(harmonic_residual(a, v, b, &pair).unwrap() < 1e-12);
    }

    #[test]
    fn three_four_five_incenter() {
        let (report, centers) = triangle_bisector_concurrencies([e(0.0, 0.0), e(4.0, 0.0), e(0.0, 3.0)]).unwrap();
        assert!(report.all_true(), "{report:?}");
        assert!((centers.incenter.x - 1.0).abs() < 1e-12 && (centers.incenter.y - 1.0).abs() < 1e-12);
    }

    #[test]
    fn equilateral_incenter_is_centroid() {
        let s = 3f64.sqrt();
        let (_, centers) = triangle_bisector_concurrencies([e(0.0, 0.0), e(2.0, 0.0), e(1.0, s)]).unwrap();
        assert!((centers.incenter.x - 1.0).abs() < 1e-12);
        assert!((centers.incenter.y - s / 3.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_trapezoid_quintuples() {
        let report = steiner_add_11_check([e(-3.0, 0.0), e(3.0, 0.0), e(1.5, 2.0), e(-1.0, 2.5)]).unwrap();
        assert!(report.all_true(), "{report:?}");
        assert!(steiner_add_11_check([e(0.0, 0.0), e(4.0, 0.0), e(1.0, 1.0), e(0.0, 4.0)]).is_err());
    }

    #[test]
    fn pentagon_internal_bisectors() {
        let v = [e(0.0, 0.0), e(6.0, -1.0), e(8.0, 4.0), e(3.0, 8.0), e(-2.0, 5.0)];
        let verdict = bisector_pseudo_concurrency(&v, &[BisectorKind::Internal; 5], &Strategy::Exhaustive, PRODUCT_TOL).unwrap();
        assert!(verdict.pseudo_concurrent, "{verdict:?}");
        assert!((verdict.ceva_product - 1.0).abs() < PRODUCT_TOL);
    }
}
