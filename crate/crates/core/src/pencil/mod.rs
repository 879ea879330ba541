//! Harmonic pencils and the incidence theorems built from them.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::projective::{cross_ratio_lines, fourth_harmonic_line, join, meet, Line, Point};
use crate::scalar::Scalar;

mod corollary;
mod quadrilateral;
mod triangle;

pub use corollary::*;
pub use quadrilateral::*;
pub use triangle::*;

/// Four lines `(a1 a2; g h)` through `vertex` with cross-ratio `-1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct HarmonicPencil<S: Scalar> {
    pub vertex: Point<S>,
    pub a1: Line<S>,
    pub a2: Line<S>,
    pub g: Line<S>,
    pub h: Line<S>,
}

impl<S: Scalar> HarmonicPencil<S> {
    pub fn new(vertex: Point<S>, a1: Line<S>, a2: Line<S>, g: Line<S>, h: Line<S>) -> Result<Self> {
        let cr = cross_ratio_lines(&vertex, &a1, &a2, &g, &h)?;
        if cr != -S::one() {
            return Err(GeomError::DegenerateConfig(format!(
                "pencil is not harmonic (cross-ratio {cr})"
            )));
        }
        Ok(HarmonicPencil { vertex, a1, a2, g, h })
    }

    /// The pencil whose fourth line is the harmonic conjugate of `g`.
    pub fn complete(vertex: Point<S>, a1: Line<S>, a2: Line<S>, g: Line<S>) -> Result<Self> {
        let h = fourth_harmonic_line(&vertex, &a1, &a2, &g)?;
        Ok(HarmonicPencil { vertex, a1, a2, g, h })
    }

    pub fn lines(&self) -> [&Line<S>; 4] {
        [&self.a1, &self.a2, &self.g, &self.h]
    }

    pub fn contains(&self, l: &Line<S>) -> bool {
        self.lines().contains(&l)
    }
}

/// The points `a11×a21, a12×a22, b11×b21, b12×b22` of two harmonic pencils.
///
/// If any three of them are collinear, all four are.
pub fn two_pencils_points<S: Scalar>(
    p1: &HarmonicPencil<S>,
    p2: &HarmonicPencil<S>,
) -> Result<[Point<S>; 4]> {
    if p1.vertex == p2.vertex {
        return Err(GeomError::CoincidentVertices);
    }
    if p1.lines().iter().any(|l| p2.contains(l)) {
        return Err(GeomError::SharedLine);
    }
    Ok([
        meet(&p1.a1, &p2.a1)?,
        meet(&p1.a2, &p2.a2)?,
        meet(&p1.g, &p2.g)?,
        meet(&p1.h, &p2.h)?,
    ])
}

/// Pencils `(a a_i; b_i1 b_i2)` sharing the line `a` through both vertices.
///
/// Returns `(a1×a2, b11×b21, b12×b22)` and `(a1×a2, b11×b22, b12×b21)`, both
/// collinear. The shared line may sit in either of the first two slots.
pub fn cor2_collinear_triples<S: Scalar>(
    shared: &Line<S>,
    p1: &HarmonicPencil<S>,
    p2: &HarmonicPencil<S>,
) -> Result<[[Point<S>; 3]; 2]> {
    if p1.vertex == p2.vertex {
        return Err(GeomError::CoincidentVertices);
    }
    if join(&p1.vertex, &p2.vertex)? != *shared {
        return Err(GeomError::SharedLineMissing);
    }
    let other = |p: &HarmonicPencil<S>| -> Result<Line<S>> {
        if p.a1 == *shared {
            Ok(p.a2.clone())
        } else if p.a2 == *shared {
            Ok(p.a1.clone())
        } else {
            Err(GeomError::SharedLineMissing)
        }
    };
    let (a1, a2) = (other(p1)?, other(p2)?);
    let apex = meet(&a1, &a2)?;
    Ok([
        [apex.clone(), meet(&p1.g, &p2.g)?, meet(&p1.h, &p2.h)?],
        [apex, meet(&p1.g, &p2.h)?, meet(&p1.h, &p2.g)?],
    ])
}

/// Line through `a` and whichever of `p`, `q` differs from it.
pub(crate) fn line_through<S: Scalar>(a: &Point<S>, p: &Point<S>, q: &Point<S>) -> Result<Line<S>> {
    join(a, p).or_else(|_| join(a, q)).map_err(|_| {
        GeomError::DegenerateConfig("both points coincide with the base point".into())
    })
}

/// Product of `AD/DB` factors; an infinite factor is reported as an undefined foot.
pub(crate) fn ratio_product<S: Scalar>(
    factors: impl IntoIterator<Item = (Point<S>, Point<S>, Point<S>)>,
) -> Result<S> {
    use crate::projective::{signed_ratio, SegmentRatio};
    let mut acc = S::one();
    for (i, (a, d, b)) in factors.into_iter().enumerate() {
        match signed_ratio(&a, &d, &b)? {
            SegmentRatio::Finite(v) => acc = acc * v,
            SegmentRatio::Infinite => {
                return Err(GeomError::UndefinedFoot(format!(
                    "factor {} has its foot on the second endpoint",
                    i + 1
                )))
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::{collinear, harmonic_conjugate, line, point};
    use crate::scalar::Rational;

    type P = Point<Rational>;

    fn p(x: i64, y: i64) -> P {
        point(x, y, 1)
    }

    #[test]
    fn harmonic_pencil_rejects_non_harmonic() {
        let o = p(0, 0);
        let ok = HarmonicPencil::new(o.clone(), line(0, 1, 0), line(1, 0, 0), line(1, -1, 0), line(1, 1, 0));
        assert!(ok.is_ok());
        let bad = HarmonicPencil::new(o, line(0, 1, 0), line(1, 0, 0), line(1, -1, 0), line(1, 2, 0));
        assert!(matches!(bad, Err(GeomError::DegenerateConfig(_))));
    }

    #[test]
    fn projected_range_gives_collinear_points() {
        // Harmonic range on y = 0 viewed from two vertices.
        let range = [p(0, 0), p(4, 0), p(1, 0), p(-2, 0)];
        assert_eq!(harmonic_conjugate(&range[0], &range[1], &range[2]).unwrap(), range[3]);
        let pencil = |v: P| {
            let ls: Vec<_> = range.iter().map(|r| join(&v, r).unwrap()).collect();
            HarmonicPencil::new(v, ls[0].clone(), ls[1].clone(), ls[2].clone(), ls[3].clone()).unwrap()
        };
        let pts = two_pencils_points(&pencil(p(1, 5)), &pencil(p(-3, 2))).unwrap();
        assert_eq!(pts.to_vec(), range.to_vec());
    }

    #[test]
    fn cor2_symmetric_instance() {
        // Vertices (-1,0), (1,0) share the x-axis; mirror-image pencils.
        let a = line::<Rational>(0, 1, 0);
        let mk = |v: P, a_i: Line<Rational>, g: Line<Rational>| {
            HarmonicPencil::complete(v, a.clone(), a_i, g).unwrap()
        };
        let p1 = mk(p(-1, 0), join(&p(-1, 0), &p(0, 2)).unwrap(), join(&p(-1, 0), &p(0, 1)).unwrap());
        let p2 = mk(p(1, 0), join(&p(1, 0), &p(0, 2)).unwrap(), join(&p(1, 0), &p(0, 1)).unwrap());
        let triples = cor2_collinear_triples(&a, &p1, &p2).unwrap();
        for t in &triples {
            assert!(collinear(&t[0], &t[1], &t[2]));
        }
        assert_eq!(triples[0][1], p(0, 1));
        assert!(matches!(
            cor2_collinear_triples(&line(1, 0, 0), &p1, &p2),
            Err(GeomError::SharedLineMissing)
        ));
    }
}
