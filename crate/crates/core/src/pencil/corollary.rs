//! Two ranges of four points: cross-ratio equality, six-point lines, Pappus
//! lines; and a quantitative form of Desargues' theorem.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::projective::{
    all_collinear, collinear, concurrent, concurrent_residual, cross_ratio_points, join, meet,
    Line, Point,
};
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct TwoRanges<S: Scalar> {
    pub a: [Point<S>; 4],
    pub b: [Point<S>; 4],
}

impl<S: Scalar> TwoRanges<S> {
    /// `A_i` on one line, `B_i` on a different line, all distinct and off the
    /// common point of the two lines.
    pub fn new(a: [Point<S>; 4], b: [Point<S>; 4]) -> Result<Self> {
        let bad = |m: &str| GeomError::DegenerateInput(m.into());
        for pts in [&a, &b] {
            for i in 0..4 {
                for j in i + 1..4 {
                    if pts[i] == pts[j] {
                        return Err(bad("points of a range must be distinct"));
                    }
                }
            }
            if !all_collinear(pts) {
                return Err(bad("range is not collinear"));
            }
        }
        let alpha = join(&a[0], &a[1])?;
        let beta = join(&b[0], &b[1])?;
        let corner = meet(&alpha, &beta).map_err(|_| bad("the two ranges share a line"))?;
        if a.iter().chain(b.iter()).any(|p| *p == corner) {
            return Err(bad("a point lies on both lines"));
        }
        Ok(TwoRanges { a, b })
    }

    /// `(A_i × B_j) × (A_k × B_l)`, indices 1-based.
    pub fn cross_point(&self, i: usize, j: usize, k: usize, l: usize) -> Result<Point<S>> {
        let m = join(&self.a[i - 1], &self.b[j - 1])?;
        let n = join(&self.a[k - 1], &self.b[l - 1])?;
        meet(&m, &n).map_err(|_| GeomError::DegenerateInput(format!("A{i}B{j} = A{k}B{l}")))
    }
}

/// Index quadruples `(i,j,k,l)` of the four six-point families.
pub const SIX_POINT_FAMILIES: [[(usize, usize, usize, usize); 6]; 4] = [
    [(1, 1, 2, 2), (3, 3, 4, 4), (1, 3, 4, 2), (1, 4, 3, 2), (2, 3, 4, 1), (2, 4, 3, 1)],
    [(1, 1, 3, 3), (2, 2, 4, 4), (1, 2, 4, 3), (1, 4, 2, 3), (2, 1, 3, 4), (3, 2, 4, 1)],
    [(1, 1, 4, 4), (2, 2, 3, 3), (1, 2, 3, 4), (1, 3, 2, 4), (2, 1, 4, 3), (3, 1, 4, 2)],
    [(1, 2, 2, 1), (2, 3, 3, 2), (3, 4, 4, 3), (4, 1, 1, 4), (1, 3, 3, 1), (2, 4, 4, 2)],
];

pub fn six_points<S: Scalar>(r: &TwoRanges<S>, family: usize) -> Result<Vec<Point<S>>> {
    SIX_POINT_FAMILIES[family]
        .iter()
        .map(|&(i, j, k, l)| r.cross_point(i, j, k, l))
        .collect()
}

/// Cross-ratio equality and the four six-point collinearities; all five
/// agree on every instance.
pub fn crossratio_corollary_check<S: Scalar>(r: &TwoRanges<S>) -> Result<Report> {
    let mut out = Report::new("crossratio");
    let cra = cross_ratio_points(&r.a[0], &r.a[1], &r.a[2], &r.a[3])?;
    let crb = cross_ratio_points(&r.b[0], &r.b[1], &r.b[2], &r.b[3])?;
    out.flag("cr_equal", cra == crb);
    out.residual("cr_equal", &(cra - crb));
    for family in 0..4 {
        let pts = six_points(r, family)?;
        out.flag(format!("six_points{}", family + 1), all_collinear(&pts));
    }
    Ok(out.with_witness(r))
}

/// The three opposite-side intersections of the hexagon avoiding `A_i`, `B_i`.
pub fn pappus_points<S: Scalar>(r: &TwoRanges<S>, i: usize) -> Result<[Point<S>; 3]> {
    let rest: Vec<usize> = (1..=4).filter(|&k| k != i).collect();
    let (j, k, l) = (rest[0], rest[1], rest[2]);
    let x = |p: usize, q: usize| r.cross_point(p, q, q, p).map_err(|_| GeomError::DegenerateHexagon(i));
    Ok([x(j, k)?, x(k, l)?, x(j, l)?])
}

/// The Pappus lines `p_1..p_4`. They all coincide exactly when the two
/// cross-ratios agree.
pub fn pappus_lines<S: Scalar>(r: &TwoRanges<S>) -> Result<[Line<S>; 4]> {
    let mut lines = Vec::with_capacity(4);
    for i in 1..=4 {
        let [x, y, z] = pappus_points(r, i)?;
        if !collinear(&x, &y, &z) {
            return Err(GeomError::DegenerateHexagon(i));
        }
        let l = join(&x, &y)
            .or_else(|_| join(&x, &z))
            .map_err(|_| GeomError::DegenerateHexagon(i))?;
        lines.push(l);
    }
    Ok(lines.try_into().expect("four lines"))
}

pub fn pappus_report<S: Scalar>(r: &TwoRanges<S>) -> Result<Report> {
    let mut out = Report::new("pappus4");
    let cra = cross_ratio_points(&r.a[0], &r.a[1], &r.a[2], &r.a[3])?;
    let crb = cross_ratio_points(&r.b[0], &r.b[1], &r.b[2], &r.b[3])?;
    out.flag("cr_equal", cra == crb);
    let p = pappus_lines(r)?;
    for i in 1..4 {
        out.flag(format!("p1_eq_p{}", i + 1), p[0] == p[i]);
    }
    Ok(out.with_witness(r))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct TrianglePair<S: Scalar> {
    /// `[A1, B1, C1]`.
    pub first: [Point<S>; 3],
    /// `[A2, B2, C2]`.
    pub second: [Point<S>; 3],
}

impl<S: Scalar> TrianglePair<S> {
    pub fn new(first: [Point<S>; 3], second: [Point<S>; 3]) -> Result<Self> {
        for t in [&first, &second] {
            if collinear(&t[0], &t[1], &t[2]) {
                return Err(GeomError::DegenerateInput("triangle is degenerate".into()));
            }
        }
        for p in &first {
            if second.contains(p) {
                return Err(GeomError::DegenerateInput("triangles share a vertex".into()));
            }
        }
        Ok(TrianglePair { first, second })
    }
}

/// `CR(X1,Y2;X1',Y2') = CR(X2,Y1;X2',Y1')` for the vertex labels `X, Y, Z`
/// given by `(x, y, z)` (0-based positions in each triangle).
fn desargues_cr<S: Scalar>(t: &TrianglePair<S>, x: usize, y: usize, z: usize) -> Result<(S, S)> {
    let (x1, y1, z1) = (&t.first[x], &t.first[y], &t.first[z]);
    let (x2, y2, z2) = (&t.second[x], &t.second[y], &t.second[z]);
    let bad = |e: GeomError| GeomError::DegenerateInput(e.to_string());
    let l12 = join(x1, y2).map_err(bad)?;
    let l21 = join(x2, y1).map_err(bad)?;
    let x1p = meet(&l12, &join(y1, z1)?).map_err(bad)?;
    let y1p = meet(&l21, &join(x1, z1)?).map_err(bad)?;
    let x2p = meet(&l21, &join(y2, z2)?).map_err(bad)?;
    let y2p = meet(&l12, &join(x2, z2)?).map_err(bad)?;
    let left = cross_ratio_points(x1, y2, &x1p, &y2p).map_err(bad)?;
    let right = cross_ratio_points(x2, y1, &x2p, &y1p).map_err(bad)?;
    Ok((left, right))
}

/// Perspective from a point, from a line, and the three cross-ratio
/// identities obtained by cycling `A → B → C`.
pub fn desargues_quantitative<S: Scalar>(t: &TrianglePair<S>) -> Result<Report> {
    let mut r = Report::new("desargues");
    let bad = |e: GeomError| GeomError::DegenerateInput(e.to_string());
    let spoke = |k: usize| join(&t.first[k], &t.second[k]).map_err(bad);
    let (s0, s1, s2) = (spoke(0)?, spoke(1)?, spoke(2)?);
    r.flag("perspective_point", concurrent(&s0, &s1, &s2));
    r.residual("perspective_point", &concurrent_residual(&s0, &s1, &s2));
    let side_meet = |i: usize, j: usize| -> Result<Point<S>> {
        let m = join(&t.first[i], &t.first[j])?;
        let n = join(&t.second[i], &t.second[j])?;
        meet(&m, &n).map_err(bad)
    };
    let axis = [side_meet(0, 1)?, side_meet(1, 2)?, side_meet(2, 0)?];
    r.flag("perspective_line", collinear(&axis[0], &axis[1], &axis[2]));
    for (n, (x, y, z)) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)].into_iter().enumerate() {
        let (left, right) = desargues_cr(t, x, y, z)?;
        r.flag(format!("cr_item{}", n + 3), left == right);
        r.residual(format!("cr_item{}", n + 3), &(left - right));
    }
    Ok(r.with_witness(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::point;
    use crate::scalar::Rational;

    fn p(x: i64, y: i64) -> Point<Rational> {
        point(x, y, 1)
    }

    #[test]
    fn perspective_ranges_satisfy_all_claims() {
        // Project A_i on y = 0 from (0, 4) onto the line x + y = 6.
        let a = [p(-2, 0), p(1, 0), p(3, 0), p(8, 0)];
        let center = p(0, 4);
        let target = crate::projective::line(1, 1, -6);
        let b: [Point<Rational>; 4] =
            std::array::from_fn(|i| meet(&join(&center, &a[i]).unwrap(), &target).unwrap());
        let r = TwoRanges::new(a, b).unwrap();
        let report = crossratio_corollary_check(&r).unwrap();
        assert!(report.all_true(), "{report:?}");
        let lines = pappus_lines(&r).unwrap();
        assert!(lines.iter().all(|l| *l == lines[0]));
    }

    #[test]
    fn unrelated_ranges_fail_all_claims() {
        let a = [p(-2, 0), p(1, 0), p(3, 0), p(8, 0)];
        let b = [p(0, 1), p(1, 2), p(3, 4), p(4, 5)];
        let r = TwoRanges::new(a, b).unwrap();
        let report = crossratio_corollary_check(&r).unwrap();
        assert!(report.all_false(), "{report:?}");
        let lines = pappus_lines(&r).unwrap();
        assert!(lines[1..].iter().all(|l| *l != lines[0]));
    }

    #[test]
    fn translated_triangles_are_perspective() {
        let first = [p(0, 0), p(3, 1), p(1, 4)];
        let second = [p(5, 2), p(8, 3), p(6, 6)];
        let report = desargues_quantitative(&TrianglePair::new(first, second).unwrap()).unwrap();
        assert!(report.all_true(), "{report:?}");
    }

    #[test]
    fn generic_triangles_are_not_perspective() {
        let first = [p(0, 0), p(3, 1), p(1, 4)];
        let second = [p(5, 3), p(9, 4), p(6, 8)];
        let report = desargues_quantitative(&TrianglePair::new(first, second).unwrap()).unwrap();
        assert!(report.all_false(), "{report:?}");
    }

    #[test]
    fn ranges_must_avoid_the_corner() {
        let a = [p(0, 0), p(1, 0), p(3, 0), p(8, 0)];
        let b = [p(0, 0), p(0, 2), p(0, 4), p(0, 5)];
        assert!(TwoRanges::new(a, b).is_err());
    }
}
