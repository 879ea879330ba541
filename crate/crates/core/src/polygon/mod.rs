//! n-gons with a line through every vertex (Ceva) or a point on every side
//! (Menelaos), and their step-by-step reduction to triangles.
//!
//! Public indices are 1-based and cyclic modulo `n`: vertex `i` is
//! `vertices[i - 1]`, side `i` joins vertices `i` and `i + 1`.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::projective::{collinear, concurrent, join, meet, Dual, Line, Point};
use crate::pencil::ratio_product;
use crate::scalar::{Rational, Scalar};

mod reduce;
mod trace;

pub use reduce::*;
pub use trace::*;

/// `i` (any integer, 1-based) wrapped into `1..=n`, returned 0-based.
fn at(i: isize, n: usize) -> usize {
    (i - 1).rem_euclid(n as isize) as usize
}

fn check_vertices<S: Scalar>(vertices: &[Point<S>]) -> Result<()> {
    let n = vertices.len();
    if n < 3 {
        return Err(GeomError::InvalidPolygon(format!("{n} vertices, need at least 3")));
    }
    for k in 0..n {
        if vertices[k] == vertices[(k + 1) % n] {
            return Err(GeomError::InvalidPolygon(format!(
                "vertices {} and {} coincide",
                k + 1,
                (k + 1) % n + 1
            )));
        }
    }
    Ok(())
}

/// Vertices `A_1..A_n` with a line `g_i` through each `A_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct CevaGon<S: Scalar> {
    vertices: Vec<Point<S>>,
    lines: Vec<Line<S>>,
}

impl<S: Scalar> CevaGon<S> {
    pub fn new(vertices: Vec<Point<S>>, lines: Vec<Line<S>>) -> Result<Self> {
        check_vertices(&vertices)?;
        if lines.len() != vertices.len() {
            return Err(GeomError::InvalidPolygon("one line per vertex required".into()));
        }
        for (k, (a, g)) in vertices.iter().zip(&lines).enumerate() {
            if !g.contains(a) {
                return Err(GeomError::InvalidPolygon(format!("g{} misses A{}", k + 1, k + 1)));
            }
        }
        Ok(CevaGon { vertices, lines })
    }

    /// Lines through the given vertex and one common point.
    pub fn through_point(vertices: Vec<Point<S>>, center: &Point<S>) -> Result<Self> {
        let lines = vertices
            .iter()
            .map(|a| join(a, center))
            .collect::<Result<Vec<_>>>()?;
        CevaGon::new(vertices, lines)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point<S>] {
        &self.vertices
    }

    pub fn lines(&self) -> &[Line<S>] {
        &self.lines
    }

    /// Vertex `i`, 1-based cyclic.
    pub fn vertex(&self, i: isize) -> &Point<S> {
        &self.vertices[at(i, self.len())]
    }

    pub fn line(&self, i: isize) -> &Line<S> {
        &self.lines[at(i, self.len())]
    }

    /// Reorder vertices and lines together; `order` lists 1-based indices.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let vertices = order.iter().map(|&i| self.vertex(i as isize).clone()).collect();
        let lines = order.iter().map(|&i| self.line(i as isize).clone()).collect();
        CevaGon::new(vertices, lines)
    }

    /// Replace the adjacent vertices `i, i+1` by
    /// `N = (A_{i-1}A_i) × (A_{i+1}A_{i+2})` and their lines by `N × (g_i × g_{i+1})`.
    ///
    /// For `i < m` the new vertex takes position `i`; for `i = m` (the pair
    /// `A_m, A_1`) it is appended after `A_{m-1}`, so the result is
    /// `[A_2, ..., A_{m-1}, N]`.
    pub fn reduce_step(&self, i: usize) -> Result<Self> {
        let m = self.len();
        if m < 4 {
            return Err(GeomError::InvalidPolygon("cannot reduce a triangle".into()));
        }
        if !(1..=m).contains(&i) {
            return Err(GeomError::InvalidPolygon(format!("index {i} out of range 1..={m}")));
        }
        let ii = i as isize;
        let side_before = join(self.vertex(ii - 1), self.vertex(ii))?;
        let side_after = join(self.vertex(ii + 1), self.vertex(ii + 2))?;
        let n = meet(&side_before, &side_after)
            .map_err(|_| GeomError::DegenerateConfig("extended sides coincide".into()))?;
        let pivot = meet(self.line(ii), self.line(ii + 1))
            .map_err(|_| GeomError::DegenerateConfig(format!("g{} and g{} coincide", i, i % m + 1)))?;
        let g = join(&n, &pivot)
            .map_err(|_| GeomError::DegenerateConfig("new vertex lies on both cevians".into()))?;
        let (mut vertices, mut lines) = (Vec::with_capacity(m - 1), Vec::with_capacity(m - 1));
        if i < m {
            vertices.extend_from_slice(&self.vertices[..i - 1]);
            lines.extend_from_slice(&self.lines[..i - 1]);
            vertices.push(n);
            lines.push(g);
            vertices.extend_from_slice(&self.vertices[i + 1..]);
            lines.extend_from_slice(&self.lines[i + 1..]);
        } else {
            vertices.extend_from_slice(&self.vertices[1..m - 1]);
            lines.extend_from_slice(&self.lines[1..m - 1]);
            vertices.push(n);
            lines.push(g);
        }
        CevaGon::new(vertices, lines).map_err(|e| GeomError::DegenerateConfig(e.to_string()))
    }

    /// Position (1-based) of the vertex created by `reduce_step(i)`.
    pub fn new_vertex_position(m: usize, i: usize) -> usize {
        if i < m {
            i
        } else {
            m - 1
        }
    }

    /// Feet `D_i = g_i × (A_{i-1}A_{i+1})`.
    pub fn feet(&self) -> Result<Vec<Point<S>>> {
        (1..=self.len() as isize)
            .map(|i| {
                let diagonal = join(self.vertex(i - 1), self.vertex(i + 1))?;
                meet(self.line(i), &diagonal)
                    .map_err(|_| GeomError::UndefinedFoot(format!("g{i} coincides with A{}A{}", i - 1, i + 1)))
            })
            .collect()
    }

    /// `∏ A_{i-1}D_i / D_iA_{i+1}`.
    pub fn ceva_product(&self) -> Result<S> {
        let feet = self.feet()?;
        ratio_product(
            (1..=self.len() as isize)
                .map(|i| (self.vertex(i - 1).clone(), feet[at(i, self.len())].clone(), self.vertex(i + 1).clone())),
        )
    }

    /// For a triangle: the three lines are concurrent.
    pub fn lines_concurrent(&self) -> bool {
        self.len() == 3 && concurrent(&self.lines[0], &self.lines[1], &self.lines[2])
    }
}

/// Vertices `A_1..A_n` with a point `B_i` on each side `A_iA_{i+1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct MenelaosGon<S: Scalar> {
    vertices: Vec<Point<S>>,
    points: Vec<Point<S>>,
}

impl<S: Scalar> MenelaosGon<S> {
    pub fn new(vertices: Vec<Point<S>>, points: Vec<Point<S>>) -> Result<Self> {
        check_vertices(&vertices)?;
        let n = vertices.len();
        if points.len() != n {
            return Err(GeomError::InvalidPolygon("one point per side required".into()));
        }
        for k in 0..n {
            let (a, b, p) = (&vertices[k], &vertices[(k + 1) % n], &points[k]);
            if !collinear(a, b, p) {
                return Err(GeomError::InvalidPolygon(format!("B{} is off side {}", k + 1, k + 1)));
            }
            if p == a || p == b {
                return Err(GeomError::InvalidPolygon(format!("B{} is a vertex", k + 1)));
            }
        }
        Ok(MenelaosGon { vertices, points })
    }

    /// Side points cut out by a common transversal.
    pub fn on_transversal(vertices: Vec<Point<S>>, transversal: &Line<S>) -> Result<Self> {
        let n = vertices.len();
        let points = (0..n)
            .map(|k| meet(&join(&vertices[k], &vertices[(k + 1) % n])?, transversal))
            .collect::<Result<Vec<_>>>()?;
        MenelaosGon::new(vertices, points)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point<S>] {
        &self.vertices
    }

    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    pub fn vertex(&self, i: isize) -> &Point<S> {
        &self.vertices[at(i, self.len())]
    }

    pub fn point(&self, i: isize) -> &Point<S> {
        &self.points[at(i, self.len())]
    }

    /// Remove vertex `i`; the sides `i-1` and `i` merge into `A_{i-1}A_{i+1}`
    /// carrying `B' = (A_{i-1}A_{i+1}) × (B_{i-1}B_i)`.
    ///
    /// For `i > 1` the new point takes position `i - 1`; for `i = 1` the
    /// result is `[A_2, ..., A_m]` with points `[B_2, ..., B_{m-1}, B']`.
    pub fn reduce_step(&self, i: usize) -> Result<Self> {
        let m = self.len();
        if m < 4 {
            return Err(GeomError::InvalidPolygon("cannot reduce a triangle".into()));
        }
        if !(1..=m).contains(&i) {
            return Err(GeomError::InvalidPolygon(format!("index {i} out of range 1..={m}")));
        }
        let ii = i as isize;
        let side = join(self.vertex(ii - 1), self.vertex(ii + 1))?;
        let chord = join(self.point(ii - 1), self.point(ii))
            .map_err(|_| GeomError::DegenerateConfig(format!("B{} and B{} coincide", at(ii - 1, m) + 1, i)))?;
        let b = meet(&side, &chord)
            .map_err(|_| GeomError::DegenerateConfig("chord lies on the new side".into()))?;
        let (mut vertices, mut points) = (Vec::with_capacity(m - 1), Vec::with_capacity(m - 1));
        if i > 1 {
            vertices.extend_from_slice(&self.vertices[..i - 1]);
            vertices.extend_from_slice(&self.vertices[i..]);
            points.extend_from_slice(&self.points[..i - 2]);
            points.push(b);
            points.extend_from_slice(&self.points[i..]);
        } else {
            vertices.extend_from_slice(&self.vertices[1..]);
            points.extend_from_slice(&self.points[1..m - 1]);
            points.push(b);
        }
        MenelaosGon::new(vertices, points).map_err(|e| GeomError::DegenerateConfig(e.to_string()))
    }

    /// Position (1-based) of the point created by `reduce_step(i)`.
    pub fn new_point_position(m: usize, i: usize) -> usize {
        if i > 1 {
            i - 1
        } else {
            m - 1
        }
    }

    /// `∏ A_iB_i / B_iA_{i+1}`; equals `(-1)^n` exactly when pseudo-collinear.
    pub fn menelaos_product(&self) -> Result<S> {
        ratio_product((1..=self.len() as isize).map(|i| {
            (self.vertex(i).clone(), self.point(i).clone(), self.vertex(i + 1).clone())
        }))
        .map_err(|e| GeomError::UndefinedRatio(e.to_string()))
    }

    /// For a triangle: the three side points are collinear.
    pub fn points_collinear(&self) -> bool {
        self.len() == 3 && collinear(&self.points[0], &self.points[1], &self.points[2])
    }
}

/// Sides become vertices and side points become lines.
impl<S: Scalar> Dual for MenelaosGon<S> {
    type Output = CevaGon<S>;
    fn dual(&self) -> CevaGon<S> {
        let n = self.len();
        let vertices = (0..n)
            .map(|k| join(&self.vertices[k], &self.vertices[(k + 1) % n]).expect("valid gon").dual())
            .collect();
        CevaGon::new(vertices, self.points.dual()).expect("dual of a valid gon")
    }
}

/// Vertices become sides (`A_i = dual(V_{i-1} V_i)`) and lines become side points.
impl<S: Scalar> Dual for CevaGon<S> {
    type Output = MenelaosGon<S>;
    fn dual(&self) -> MenelaosGon<S> {
        let n = self.len();
        let vertices = (0..n)
            .map(|k| join(&self.vertices[(k + n - 1) % n], &self.vertices[k]).expect("valid gon").dual())
            .collect();
        MenelaosGon { vertices, points: self.lines.dual() }
    }
}

/// The coordinate-dual Ceva configuration of a Menelaos configuration.
///
/// A Menelaos step at vertex `i` corresponds to a Ceva step at pair `i - 1`
/// (pair `m` for `i = 1`).
pub fn duality_bridge<S: Scalar>(p: &MenelaosGon<S>) -> CevaGon<S> {
    p.dual()
}

/// A Ceva step index matching Menelaos step `i` on an `m`-gon.
pub fn dual_step_index(m: usize, i: usize) -> usize {
    if i == 1 {
        m
    } else {
        i - 1
    }
}

/// A quadrilateral whose lines are pseudo-concurrent in the order
/// `(1,2,3,4)`, paired with the same vertices and lines taken in the order
/// `(1,3,2,4)`, where they are not.
pub fn order_sensitivity_witness() -> (CevaGon<Rational>, CevaGon<Rational>) {
    use crate::pencil::{complete_fourth_line, FourthLineCriterion};
    use crate::projective::point;
    let v = [point(0, 0, 1), point(7, -1, 1), point(6, 5, 1), point(-2, 4, 1)];
    let through = [point(3, 1, 1), point(1, 2, 1), point(2, -3, 1)];
    let g: [Line<Rational>; 3] = std::array::from_fn(|k| join(&v[k], &through[k]).expect("distinct"));
    let g4 = complete_fourth_line(&v, &g, FourthLineCriterion::DiagonalProduct).expect("generic");
    let [g1, g2, g3] = g;
    let gon = CevaGon::new(v.to_vec(), vec![g1, g2, g3, g4]).expect("valid");
    let swapped = gon.permuted(&[1, 3, 2, 4]).expect("valid");
    (gon, swapped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::{line, point};

    type P = Point<Rational>;

    fn p(x: i64, y: i64) -> P {
        point(x, y, 1)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn pentagon() -> Vec<P> {
        vec![p(0, 0), p(6, -1), p(8, 4), p(3, 8), p(-2, 5)]
    }

    #[test]
    fn concurrent_cevians_stay_concurrent() {
        let center = p(3, 3);
        let gon = CevaGon::through_point(pentagon(), &center).unwrap();
        for i in 1..=5 {
            let reduced = gon.reduce_step(i).unwrap();
            assert_eq!(reduced.len(), 4);
            assert!(reduced.lines().iter().all(|g| g.contains(&center)), "step {i}");
        }
        assert_eq!(gon.ceva_product().unwrap(), q(1, 1));
    }

    #[test]
    fn ceva_step_wraps_to_the_end() {
        let v = vec![p(0, 0), p(4, 0), p(3, 3), p(0, 2)];
        let g = vec![
            join(&v[0], &p(1, 1)).unwrap(),
            join(&v[1], &p(1, 1)).unwrap(),
            join(&v[2], &p(1, 0)).unwrap(),
            join(&v[3], &p(1, 0)).unwrap(),
        ];
        let gon = CevaGon::new(v.clone(), g.clone()).unwrap();
        let tri = gon.reduce_step(4).unwrap();
        // N = (A3A4) x (A1A2) = (-6, 0); g_N joins N to g4 x g1 = (2/3, 2/3).
        assert_eq!(tri.vertices(), &[v[1].clone(), v[2].clone(), p(-6, 0)]);
        assert_eq!(tri.lines(), &[g[1].clone(), g[2].clone(), line(1, -10, 6)]);
        let first = gon.reduce_step(1).unwrap();
        assert_eq!(first.vertices()[1..], v[2..]);
        assert_eq!(first.lines()[1..], g[2..]);
    }

    #[test]
    fn ceva_step_keeps_earlier_entries() {
        let gon = CevaGon::through_point(pentagon(), &p(2, 3)).unwrap();
        let reduced = gon.reduce_step(3).unwrap();
        assert_eq!(reduced.vertices()[..2], gon.vertices()[..2]);
        assert_eq!(reduced.lines()[..2], gon.lines()[..2]);
        assert_eq!(reduced.vertices()[3], gon.vertices()[4]);
    }

    #[test]
    fn menelaos_step_hand_example() {
        let v = vec![p(0, 0), p(4, 0), p(3, 3), p(0, 2)];
        let b = vec![p(1, 0), point(7, 3, 2), point(3, 5, 2), p(0, 1)];
        let gon = MenelaosGon::new(v.clone(), b.clone()).unwrap();
        assert_eq!(gon.menelaos_product().unwrap(), q(1, 3));
        let tri = gon.reduce_step(4).unwrap();
        // The chord B3B4 is parallel to the new side A3A1.
        assert_eq!(tri.vertices(), &v[..3]);
        assert_eq!(tri.points(), &[b[0].clone(), b[1].clone(), point(1, 1, 0)]);
        assert_eq!(tri.menelaos_product().unwrap(), q(-1, 3));
        let wrapped = gon.reduce_step(1).unwrap();
        assert_eq!(wrapped.vertices(), &v[1..]);
        assert_eq!(wrapped.points()[..2], b[1..3]);
    }

    #[test]
    fn transversal_points_stay_on_transversal() {
        let t = line::<Rational>(1, 3, -11);
        let gon = MenelaosGon::on_transversal(pentagon(), &t).unwrap();
        assert_eq!(gon.menelaos_product().unwrap(), q(-1, 1));
        for i in 1..=5 {
            let reduced = gon.reduce_step(i).unwrap();
            assert!(reduced.points().iter().all(|b| t.contains(b)), "step {i}");
        }
    }

    #[test]
    fn menelaos_triangle_with_transversal() {
        let t = line::<Rational>(1, 1, -3);
        let gon = MenelaosGon::on_transversal(vec![p(0, 0), p(4, 0), p(0, 4)], &t);
        // The transversal is parallel to the hypotenuse here.
        let gon = gon.unwrap();
        assert_eq!(gon.menelaos_product().unwrap(), q(-1, 1));
        assert!(gon.points_collinear());
    }

    #[test]
    fn dual_steps_correspond() {
        let t = line::<Rational>(2, -1, 7);
        let mut pts: Vec<P> = MenelaosGon::on_transversal(pentagon(), &t).unwrap().points().to_vec();
        pts[2] = point_on(&p(8, 4), &p(3, 8), 1, 3);
        let gon = MenelaosGon::new(pentagon(), pts).unwrap();
        let dual = duality_bridge(&gon);
        assert_eq!(dual.dual(), gon);
        for i in 1..=5 {
            let left = gon.reduce_step(i).unwrap().dual();
            let right = dual.reduce_step(dual_step_index(5, i)).unwrap();
            assert_eq!(left, right, "step {i}");
        }
    }

    fn point_on(a: &P, b: &P, n: i64, d: i64) -> P {
        crate::projective::point_with_ratio(a, b, &q(n, d)).unwrap()
    }

    #[test]
    fn exhaustive_orders_agree_on_concurrent_hexagon() {
        let hex = vec![p(0, 0), p(5, -2), p(9, 1), p(8, 6), p(3, 8), p(-2, 4)];
        let gon = CevaGon::through_point(hex.clone(), &p(4, 3)).unwrap();
        let r = is_pseudo_concurrent(&gon, &Strategy::Exhaustive).unwrap();
        assert!(r.holds && r.agreement);
        assert_eq!(r.orders_checked, order_count(6));
        assert_eq!(r.trace.indices.len(), 3);
    }

    #[test]
    fn triangle_needs_no_steps() {
        let tri = CevaGon::through_point(vec![p(0, 0), p(4, 0), p(0, 4)], &p(1, 1)).unwrap();
        let r = is_pseudo_concurrent(&tri, &Strategy::First).unwrap();
        assert!(r.holds);
        assert!(r.trace.indices.is_empty());
        assert_eq!(all_orders(3), vec![Vec::<usize>::new()]);
        assert_eq!(all_orders(5).len(), 20);
    }

    #[test]
    fn fixed_strategy_checks_length() {
        let gon = CevaGon::through_point(pentagon(), &p(3, 3)).unwrap();
        assert!(is_pseudo_concurrent(&gon, &Strategy::Fixed(vec![1])).is_err());
        assert!(is_pseudo_concurrent(&gon, &Strategy::Fixed(vec![5, 4])).unwrap().holds);
    }

    #[test]
    fn witness_is_order_sensitive() {
        let (gon, swapped) = order_sensitivity_witness();
        assert_eq!(gon.ceva_product().unwrap(), q(1, 1));
        assert!(is_pseudo_concurrent(&gon, &Strategy::Exhaustive).unwrap().holds);
        assert_ne!(swapped.ceva_product().unwrap(), q(1, 1));
        assert!(!is_pseudo_concurrent(&swapped, &Strategy::Exhaustive).unwrap().holds);
    }

    #[test]
    fn trace_round_trips() {
        let gon = CevaGon::through_point(pentagon(), &p(2, 3)).unwrap();
        let r = is_pseudo_concurrent(&gon, &Strategy::Seeded(7)).unwrap();
        let text = r.trace.to_json_lines();
        assert_eq!(text.lines().count(), 3);
        let back: ReductionTrace<CevaGon<Rational>> = replay(&text).unwrap();
        assert_eq!(back, r.trace);
        let t = line::<Rational>(1, 3, -11);
        let men = MenelaosGon::on_transversal(pentagon(), &t).unwrap();
        let m = is_pseudo_collinear(&men, &Strategy::First).unwrap();
        let back: ReductionTrace<MenelaosGon<Rational>> = replay(&m.trace.to_json_lines()).unwrap();
        assert_eq!(back.indices, vec![1, 1]);
        assert!(replay::<CevaGon<Rational>>(&m.trace.to_json_lines()).is_err());
    }

    #[test]
    fn replay_detects_edits() {
        let gon = CevaGon::through_point(pentagon(), &p(2, 3)).unwrap();
        let r = is_pseudo_concurrent(&gon, &Strategy::Fixed(vec![2, 3])).unwrap();
        let text = r.trace.to_json_lines();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        lines[2] = lines[2].replace("\"index\":3", "\"index\":1");
        let edited = lines.join("\n");
        assert!(matches!(
            replay::<CevaGon<Rational>>(&edited),
            Err(TraceError::Mismatch { step: 1, .. })
        ));
    }
}
