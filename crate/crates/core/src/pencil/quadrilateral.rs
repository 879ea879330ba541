//! Quadrilaterals with a harmonic pencil at every vertex.
//!
//! Arrays are 0-based: `vertices[k]` is `A_{k+1}` and `sides[k]` joins
//! `A_{k+1}` to `A_{k+2}`, so `sides = [a12, a23, a34, a41]`. The pencil at
//! `A_{k+1}` is `(sides[k-1] sides[k]; g[k] h[k])`.

use serde::Serialize;

use super::{line_through, ratio_product, HarmonicPencil};
use crate::error::{GeomError, Result};
use crate::projective::{
    collinear, collinear_residual, join, meet, point_with_ratio, Line, Point,
};
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct QuadrilateralConfig<S: Scalar> {
    pub vertices: [Point<S>; 4],
    pub sides: [Line<S>; 4],
    /// `a12 × a34`.
    pub a5: Point<S>,
    /// `a41 × a23`.
    pub a6: Point<S>,
    pub g: [Line<S>; 4],
    pub h: [Line<S>; 4],
}

fn prev(k: usize) -> usize {
    (k + 3) % 4
}

fn next(k: usize) -> usize {
    (k + 1) % 4
}

/// Sides and the two extra vertices of a quadrilateral with no three vertices collinear.
pub fn quad_frame<S: Scalar>(v: &[Point<S>; 4]) -> Result<([Line<S>; 4], Point<S>, Point<S>)> {
    for skip in 0..4 {
        let rest: Vec<&Point<S>> = (0..4).filter(|&i| i != skip).map(|i| &v[i]).collect();
        if collinear(rest[0], rest[1], rest[2]) {
            return Err(GeomError::DegenerateConfig(
                "three quadrilateral vertices are collinear".into(),
            ));
        }
    }
    let sides = [join(&v[0], &v[1])?, join(&v[1], &v[2])?, join(&v[2], &v[3])?, join(&v[3], &v[0])?];
    let a5 = meet(&sides[0], &sides[2])?;
    let a6 = meet(&sides[3], &sides[1])?;
    Ok((sides, a5, a6))
}

impl<S: Scalar> QuadrilateralConfig<S> {
    pub fn new(vertices: [Point<S>; 4], g: [Line<S>; 4], h: [Line<S>; 4]) -> Result<Self> {
        let (sides, a5, a6) = quad_frame(&vertices)?;
        let q = QuadrilateralConfig { vertices, sides, a5, a6, g, h };
        for k in 0..4 {
            HarmonicPencil::new(
                q.vertices[k].clone(),
                q.sides[prev(k)].clone(),
                q.sides[k].clone(),
                q.g[k].clone(),
                q.h[k].clone(),
            )?;
        }
        Ok(q)
    }

    /// Completes each `h[k]` as the fourth harmonic line of `g[k]`.
    pub fn from_g(vertices: [Point<S>; 4], g: [Line<S>; 4]) -> Result<Self> {
        let (sides, a5, a6) = quad_frame(&vertices)?;
        let mut h = Vec::with_capacity(4);
        for k in 0..4 {
            let p = HarmonicPencil::complete(
                vertices[k].clone(),
                sides[prev(k)].clone(),
                sides[k].clone(),
                g[k].clone(),
            )?;
            h.push(p.h);
        }
        let h: [Line<S>; 4] = h.try_into().expect("four lines");
        Ok(QuadrilateralConfig { vertices, sides, a5, a6, g, h })
    }

    fn gh(&self, first: char, i: usize, second: char, j: usize) -> Result<Point<S>> {
        let pick = |c: char, k: usize| if c == 'g' { &self.g[k - 1] } else { &self.h[k - 1] };
        meet(pick(first, i), pick(second, j))
            .map_err(|_| GeomError::DegenerateConfig(format!("{first}{i} and {second}{j} coincide")))
    }
}

/// One of the eight collinear triples `(A5 or A6, X, Y)`, with a label such as `A5:g1h4,h1g4`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct LabelledTriple<S: Scalar> {
    pub label: String,
    pub points: [Point<S>; 3],
}

// (apex is A5, [(line, index, line, index); 2])
type TripleSpec = (bool, [(char, usize, char, usize); 2]);

const TRIPLES: [TripleSpec; 8] = [
    (true, [('g', 1, 'h', 4), ('h', 1, 'g', 4)]),
    (true, [('g', 3, 'h', 2), ('h', 3, 'g', 2)]),
    (true, [('g', 1, 'g', 4), ('h', 1, 'h', 4)]),
    (true, [('g', 2, 'g', 3), ('h', 2, 'h', 3)]),
    (false, [('g', 1, 'h', 2), ('h', 1, 'g', 2)]),
    (false, [('g', 3, 'h', 4), ('h', 3, 'g', 4)]),
    (false, [('g', 1, 'g', 2), ('h', 1, 'h', 2)]),
    (false, [('g', 3, 'g', 4), ('h', 3, 'h', 4)]),
];

/// The eight triples through `A5` and `A6`, each collinear for any
/// configuration.
pub fn free_quadrilateral_triples<S: Scalar>(q: &QuadrilateralConfig<S>) -> Result<Vec<LabelledTriple<S>>> {
    TRIPLES
        .iter()
        .map(|(at5, pair)| {
            let apex = if *at5 { &q.a5 } else { &q.a6 };
            let [(f1, i1, s1, j1), (f2, i2, s2, j2)] = *pair;
            Ok(LabelledTriple {
                label: format!("A{}:{f1}{i1}{s1}{j1},{f2}{i2}{s2}{j2}", if *at5 { 5 } else { 6 }),
                points: [apex.clone(), q.gh(f1, i1, s1, j1)?, q.gh(f2, i2, s2, j2)?],
            })
        })
        .collect()
}

pub fn free_quadrilateral_report<S: Scalar>(q: &QuadrilateralConfig<S>) -> Result<Report> {
    let mut r = Report::new("free-quad");
    for t in free_quadrilateral_triples(q)? {
        let [a, b, c] = &t.points;
        r.flag(t.label.clone(), collinear(a, b, c));
        r.residual(t.label, &collinear_residual(a, b, c));
    }
    Ok(r.with_witness(q))
}

/// The pair of lines `ℓ^(index)` through `A5` (indices 1, 2) or `A6` (3, 4).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct EllPair<S: Scalar> {
    pub index: usize,
    pub first: Line<S>,
    pub second: Line<S>,
}

impl<S: Scalar> EllPair<S> {
    pub fn coincide(&self) -> bool {
        self.first == self.second
    }
}

/// Pairs are built from consecutive triples of the free table:
/// `ℓ1` from triples 1–2, `ℓ2` from 3–4 (through `A5`), `ℓ3` from 5–6 and
/// `ℓ4` from 7–8 (through `A6`).
pub fn ell_pairs<S: Scalar>(q: &QuadrilateralConfig<S>) -> Result<[EllPair<S>; 4]> {
    let triples = free_quadrilateral_triples(q)?;
    let line_of = |t: &LabelledTriple<S>| line_through(&t.points[0], &t.points[1], &t.points[2]);
    let mut out = Vec::with_capacity(4);
    for index in 0..4 {
        out.push(EllPair {
            index: index + 1,
            first: line_of(&triples[2 * index])?,
            second: line_of(&triples[2 * index + 1])?,
        });
    }
    Ok(out.try_into().expect("four pairs"))
}

/// `ζ = ∏ A_iB_{i,i+1,i+2}/B_{i,i+1,i+2}A_{i+1} · A_iB_{i,i+1,i+3}/B_{i,i+1,i+3}A_{i+1}`
/// with `B_ijk = a_ij × g_k`.
pub fn quad_zeta<S: Scalar>(q: &QuadrilateralConfig<S>) -> Result<S> {
    let mut factors = Vec::with_capacity(8);
    for k in 0..4 {
        for offset in [2, 3] {
            let foot = meet(&q.sides[k], &q.g[(k + offset) % 4]).map_err(|_| {
                GeomError::UndefinedFoot(format!("g{} lies on side {}", (k + offset) % 4 + 1, k + 1))
            })?;
            factors.push((q.vertices[k].clone(), foot, q.vertices[next(k)].clone()));
        }
    }
    ratio_product(factors)
}

fn diagonal_feet<S: Scalar>(vertices: &[Point<S>; 4], g: &[Line<S>]) -> Result<Vec<Point<S>>> {
    (0..g.len())
        .map(|k| {
            let diagonal = join(&vertices[prev(k)], &vertices[next(k)])?;
            meet(&g[k], &diagonal)
                .map_err(|_| GeomError::UndefinedFoot(format!("g{} is a diagonal", k + 1)))
        })
        .collect()
}

/// `A1D2/D2A3 · A2D3/D3A4 · A3D4/D4A1 · A4D1/D1A2` with `D_i = g_i × (A_{i-1}A_{i+1})`.
pub fn quad_diag_product<S: Scalar>(q: &QuadrilateralConfig<S>) -> Result<S> {
    diag_product_for(&q.vertices, &q.g)
}

pub(crate) fn diag_product_for<S: Scalar>(vertices: &[Point<S>; 4], g: &[Line<S>; 4]) -> Result<S> {
    let feet = diagonal_feet(vertices, g)?;
    ratio_product((0..4).map(|k| {
        (vertices[prev(k)].clone(), feet[k].clone(), vertices[next(k)].clone())
    }))
}

/// Coincidence of each ℓ-pair together with `ζ = 1` and diagonal product `= 1`.
pub fn quad_coincidence_equivalence<S: Scalar>(q: &QuadrilateralConfig<S>) -> Result<Report> {
    let mut r = Report::new("quad-equivalence");
    for pair in ell_pairs(q)? {
        r.flag(format!("ell{}", pair.index), pair.coincide());
    }
    let zeta = quad_zeta(q)?;
    r.flag("zeta_one", zeta == S::one());
    r.residual("zeta_one", &(zeta - S::one()));
    let diag = quad_diag_product(q)?;
    r.flag("diag_product_one", diag == S::one());
    r.residual("diag_product_one", &(diag - S::one()));
    Ok(r.with_witness(q))
}

/// Which equivalent condition [`complete_fourth_line`] solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FourthLineCriterion {
    /// Solve the diagonal product for `D4` on `A1A3`.
    DiagonalProduct,
    /// Make the lines of `ℓ2` coincide.
    EllPair2,
    /// Make the lines of `ℓ4` coincide.
    EllPair4,
}

/// The unique line `g4` through `A4` for which the configuration satisfies
/// the diagonal-product criterion, given `g1, g2, g3`.
pub fn complete_fourth_line<S: Scalar>(
    vertices: &[Point<S>; 4],
    g: &[Line<S>; 3],
    criterion: FourthLineCriterion,
) -> Result<Line<S>> {
    let (_, a5, a6) = quad_frame(vertices)?;
    let no_solution = |e: GeomError| GeomError::NoSolution(e.to_string());
    let a4 = &vertices[3];
    let through = match criterion {
        FourthLineCriterion::DiagonalProduct => {
            let feet = diagonal_feet(vertices, g).map_err(no_solution)?;
            let partial = ratio_product((0..3).map(|k| {
                (vertices[prev(k)].clone(), feet[k].clone(), vertices[next(k)].clone())
            }))
            .map_err(no_solution)?;
            let target = S::one()
                .checked_div(&partial)
                .ok_or_else(|| GeomError::NoSolution("partial product vanishes".into()))?;
            point_with_ratio(&vertices[2], &vertices[0], &target).map_err(no_solution)?
        }
        FourthLineCriterion::EllPair2 => {
            let g2g3 = meet(&g[1], &g[2]).map_err(no_solution)?;
            let l = join(&a5, &g2g3).map_err(no_solution)?;
            meet(&g[0], &l).map_err(no_solution)?
        }
        FourthLineCriterion::EllPair4 => {
            let g1g2 = meet(&g[0], &g[1]).map_err(no_solution)?;
            let l = join(&a6, &g1g2).map_err(no_solution)?;
            meet(&g[2], &l).map_err(no_solution)?
        }
    };
    join(a4, &through).map_err(no_solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::point;
    use crate::scalar::Rational;

    fn p(x: i64, y: i64) -> Point<Rational> {
        point(x, y, 1)
    }

    fn square() -> [Point<Rational>; 4] {
        [p(0, 0), p(2, 0), p(2, 2), p(0, 2)]
    }

    #[test]
    fn square_with_concurrent_pencils() {
        let v = square();
        let c = point(2, 1, 2);
        let g: [Line<Rational>; 4] = std::array::from_fn(|k| join(&v[k], &c).unwrap());
        let q = QuadrilateralConfig::from_g(v, g).unwrap();
        assert!(free_quadrilateral_report(&q).unwrap().all_true());
        assert_eq!(quad_zeta(&q).unwrap(), Rational::integer(1));
        assert!(quad_coincidence_equivalence(&q).unwrap().all_true());
    }

    #[test]
    fn concurrent_g_completes_through_common_point() {
        let v = [p(0, 0), p(5, 1), p(4, 4), p(-1, 3)];
        let c = p(2, 2);
        let g: [Line<Rational>; 3] = std::array::from_fn(|k| join(&v[k], &c).unwrap());
        for criterion in [
            FourthLineCriterion::DiagonalProduct,
            FourthLineCriterion::EllPair2,
            FourthLineCriterion::EllPair4,
        ] {
            let g4 = complete_fourth_line(&v, &g, criterion).unwrap();
            assert!(g4.contains(&c), "{criterion:?}");
        }
    }

    #[test]
    fn generic_fourth_line_criteria_agree() {
        let v = [p(0, 0), p(7, -1), p(6, 5), p(-2, 4)];
        let g = [
            join(&v[0], &p(3, 1)).unwrap(),
            join(&v[1], &p(1, 2)).unwrap(),
            join(&v[2], &p(2, -3)).unwrap(),
        ];
        let g4 = complete_fourth_line(&v, &g, FourthLineCriterion::DiagonalProduct).unwrap();
        assert_eq!(complete_fourth_line(&v, &g, FourthLineCriterion::EllPair2).unwrap(), g4);
        assert_eq!(complete_fourth_line(&v, &g, FourthLineCriterion::EllPair4).unwrap(), g4);
        let [g1, g2, g3] = g;
        let q = QuadrilateralConfig::from_g(v, [g1, g2, g3, g4]).unwrap();
        let report = quad_coincidence_equivalence(&q).unwrap();
        assert!(report.all_true(), "{report:?}");
    }

    #[test]
    fn rejects_pencil_line_on_a_side() {
        let v = square();
        let g = [
            join(&v[0], &v[1]).unwrap(),
            join(&v[1], &p(0, 1)).unwrap(),
            join(&v[2], &p(0, 1)).unwrap(),
            join(&v[3], &p(1, 0)).unwrap(),
        ];
        assert!(QuadrilateralConfig::from_g(v, g).is_err());
    }
}
