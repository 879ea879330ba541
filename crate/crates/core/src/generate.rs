//! Seeded generation of exact configurations.
//!
//! Coordinates are rationals `p/q` with `|p| <= bound` and `1 <= q <= bound`,
//! drawn uniformly and reduced. Degenerate draws are rejected and redrawn up
//! to a retry limit. Identical specs produce identical output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::GeomError;
use crate::euclid::{is_convex, EuclideanPoint};
use crate::pencil::{quad_frame, QuadrilateralConfig, TriangleConfig};
use crate::projective::{collinear, join, Line, Point};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub seed: u64,
    pub bound: u32,
    pub retry_limit: usize,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec { seed: 0, bound: 24, retry_limit: 1000 }
    }
}

impl GenSpec {
    pub fn with_seed(self, seed: u64) -> Self {
        GenSpec { seed, ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("no non-degenerate {what} found in {attempts} attempts")]
    RetryLimitExceeded { what: String, attempts: usize },
    #[error("unsupported theorem `{0}`")]
    UnsupportedTheorem(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Seed of trial `index` of a run seeded with `seed`.
///
/// Running a generator seeded with the returned value reproduces the trial.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    // splitmix64
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Distinct points with no three collinear.
pub fn in_general_position<S: Scalar>(points: &[Point<S>]) -> bool {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return false;
            }
            for k in j + 1..n {
                if collinear(&points[i], &points[j], &points[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Sample one non-degenerate value, redrawing rejected draws.
fn retry<T>(
    g: &mut Generator,
    what: &str,
    mut draw: impl FnMut(&mut Generator) -> Option<T>,
) -> Result<T, GenError> {
    for _ in 0..g.spec.retry_limit.max(1) {
        if let Some(v) = draw(g) {
            return Ok(v);
        }
    }
    Err(GenError::RetryLimitExceeded {
        what: what.into(),
        attempts: g.spec.retry_limit.max(1),
    })
}

pub struct Generator {
    spec: GenSpec,
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(spec: GenSpec) -> Self {
        Generator { spec, rng: ChaCha8Rng::seed_from_u64(spec.seed) }
    }

    /// Generator for trial `index` of a run; see [`trial_seed`].
    pub fn for_trial(spec: GenSpec, index: u64) -> Self {
        Generator::new(spec.with_seed(trial_seed(spec.seed, index)))
    }

    pub fn spec(&self) -> &GenSpec {
        &self.spec
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Retry `draw` until it yields a value, up to the spec's limit.
    pub fn retry<T>(&mut self, what: &str, draw: impl FnMut(&mut Generator) -> Option<T>) -> Result<T, GenError> {
        retry(self, what, draw)
    }

    pub fn rational(&mut self) -> Rational {
        let b = i64::from(self.spec.bound.max(1));
        let num = self.rng.random_range(-b..=b);
        let den = self.rng.random_range(1..=b);
        Rational::new(num, den)
    }

    pub fn point(&mut self) -> Point<Rational> {
        Point::affine(self.rational(), self.rational())
    }

    /// A finite point not equal to any of `avoid` and off every line of `off`.
    pub fn point_avoiding(&mut self, avoid: &[Point<Rational>], off: &[Line<Rational>]) -> Result<Point<Rational>, GenError> {
        self.retry("point", |g| {
            let p = g.point();
            (!avoid.contains(&p) && !off.iter().any(|l| l.contains(&p))).then_some(p)
        })
    }

    /// `n` points, no two equal and no three collinear.
    pub fn points(&mut self, n: usize) -> Result<Vec<Point<Rational>>, GenError> {
        self.retry("point set", |g| {
            let mut pts = Vec::with_capacity(n);
            for _ in 0..n {
                let p = g.point();
                pts.push(p);
                if !in_general_position(&pts) {
                    return None;
                }
            }
            Some(pts)
        })
    }

    pub fn triangle(&mut self) -> Result<[Point<Rational>; 3], GenError> {
        Ok(self.points(3)?.try_into().expect("three points"))
    }

    /// No three vertices collinear and both extra vertices finite.
    pub fn quadrilateral(&mut self) -> Result<[Point<Rational>; 4], GenError> {
        self.retry("quadrilateral", |g| {
            let v: [Point<Rational>; 4] = g.points(4).ok()?.try_into().ok()?;
            let (_, a5, a6) = quad_frame(&v).ok()?;
            (a5.is_finite() && a6.is_finite()).then_some(v)
        })
    }

    pub fn convex_quadrilateral(&mut self) -> Result<[Point<Rational>; 4], GenError> {
        self.retry("convex quadrilateral", |g| {
            let v = g.quadrilateral().ok()?;
            is_convex(&v.each_ref().map(to_euclidean)).then_some(v)
        })
    }

    pub fn ngon(&mut self, n: usize) -> Result<Vec<Point<Rational>>, GenError> {
        if n < 3 {
            return Err(GeomError::InvalidPolygon(format!("a polygon needs at least 3 vertices, got {n}")).into());
        }
        self.points(n)
    }

    /// A random point of the line `pq` other than `p` and `q`.
    pub fn point_between(&mut self, p: &Point<Rational>, q: &Point<Rational>) -> Result<Point<Rational>, GenError> {
        let (px, py) = p.to_affine().ok_or(GeomError::PointAtInfinity)?;
        let (qx, qy) = q.to_affine().ok_or(GeomError::PointAtInfinity)?;
        self.retry("point on segment line", |g| {
            let t = g.rational();
            if t == Rational::integer(0) || t == Rational::integer(1) {
                return None;
            }
            let x = px.clone() + t.clone() * (qx.clone() - px.clone());
            let y = py.clone() + t * (qy.clone() - py.clone());
            Some(Point::affine(x, y))
        })
    }

    /// A line through `p` missing every point of `avoid` (other than `p`).
    pub fn line_through(&mut self, p: &Point<Rational>, avoid: &[Point<Rational>]) -> Result<Line<Rational>, GenError> {
        self.retry("line", |g| {
            let q = g.point();
            let l = join(p, &q).ok()?;
            (!avoid.iter().any(|a| a != p && l.contains(a))).then_some(l)
        })
    }

    /// A line through no point of `avoid`.
    pub fn line_avoiding(&mut self, avoid: &[Point<Rational>]) -> Result<Line<Rational>, GenError> {
        self.retry("line", |g| {
            let l = join(&g.point(), &g.point()).ok()?;
            (!avoid.iter().any(|a| l.contains(a))).then_some(l)
        })
    }

    /// One line through each vertex, missing the other vertices.
    pub fn cevians(&mut self, vertices: &[Point<Rational>]) -> Result<Vec<Line<Rational>>, GenError> {
        vertices.iter().map(|v| self.line_through(v, vertices)).collect()
    }

    pub fn float_points(&mut self, n: usize) -> Result<Vec<EuclideanPoint>, GenError> {
        Ok(self.ngon(n)?.iter().map(to_euclidean).collect())
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

fn to_euclidean(p: &Point<Rational>) -> EuclideanPoint {
    let (x, y) = p.to_affine().expect("generated points are finite");
    EuclideanPoint::new(x.to_f64(), y.to_f64())
}

/// Check that `g` passes through `vertex` and differs from both sides.
fn check_partial<S: Scalar>(k: usize, vertex: &Point<S>, sides: [&Line<S>; 2], g: &Line<S>) -> Result<(), GenError> {
    if !g.contains(vertex) {
        return Err(GeomError::DegenerateInput(format!("g{} misses its vertex", k + 1)).into());
    }
    if sides.contains(&g) {
        return Err(GeomError::DegenerateInput(format!("g{} is a side", k + 1)).into());
    }
    Ok(())
}

/// A triangle with given `g_i`, completed by the harmonic `h_i`.
pub fn harmonic_completion_triangle<S: Scalar>(
    vertices: [Point<S>; 3],
    g: [Line<S>; 3],
) -> Result<TriangleConfig<S>, GenError> {
    let validate = TriangleConfig::from_g(vertices.clone(), g.clone())?;
    for k in 0..3 {
        check_partial(k, &vertices[k], [&validate.sides[(k + 1) % 3], &validate.sides[(k + 2) % 3]], &g[k])?;
    }
    Ok(validate)
}

/// A quadrilateral with given `g_i`, completed by the harmonic `h_i`.
pub fn harmonic_completion_quadrilateral<S: Scalar>(
    vertices: [Point<S>; 4],
    g: [Line<S>; 4],
) -> Result<QuadrilateralConfig<S>, GenError> {
    let q = QuadrilateralConfig::from_g(vertices.clone(), g.clone())?;
    for k in 0..4 {
        check_partial(k, &vertices[k], [&q.sides[(k + 3) % 4], &q.sides[k]], &g[k])?;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_output() {
        let spec = GenSpec { seed: 7, ..GenSpec::default() };
        let a = Generator::new(spec).ngon(6).unwrap();
        let b = Generator::new(spec).ngon(6).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn rationals_respect_bound() {
        let mut g = Generator::new(GenSpec { seed: 3, bound: 5, retry_limit: 10 });
        for _ in 0..500 {
            let r = g.rational();
            assert!(r.numer().magnitude() <= &5u32.into());
            assert!(r.denom() >= &1.into() && r.denom() <= &5.into());
        }
    }

    #[test]
    fn tiny_grid_terminates() {
        let mut g = Generator::new(GenSpec { seed: 1, bound: 1, retry_limit: 50 });
        assert!(g.triangle().is_ok());
        match g.ngon(8) {
            Ok(_) => panic!("eight points in general position do not fit the grid"),
            Err(GenError::RetryLimitExceeded { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn side_as_g_is_rejected() {
        let mut g = Generator::new(GenSpec::default());
        let v = g.triangle().unwrap();
        let side = join(&v[0], &v[1]).unwrap();
        let mut lines = [side.clone(), side.clone(), side];
        lines[2] = g.line_through(&v[2], &v).unwrap();
        assert!(harmonic_completion_triangle(v, lines).is_err());
    }
}
