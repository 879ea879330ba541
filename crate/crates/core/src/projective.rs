//! Homogeneous points and lines of the real projective plane.
//!
//! A [`Point`] `(x:y:w)` and a [`Line`] `(a:b:c)` are both stored as a
//! nonzero coordinate triple; incidence is `a*x + b*y + c*w = 0`. Equality is
//! proportionality of the triples, so no canonical form is ever computed.
//!
//! Ratios of collinear points are computed from the homogeneous
//! decomposition `D = alpha*A + beta*B`, which makes points at infinity
//! ordinary inputs: if `A` and `B` are finite, `AD/DB = beta*B.w / (alpha*A.w)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

pub(crate) type Triple<S> = [S; 3];

pub(crate) fn dot<S: Scalar>(u: &Triple<S>, v: &Triple<S>) -> S {
    u[0].clone() * v[0].clone() + u[1].clone() * v[1].clone() + u[2].clone() * v[2].clone()
}

pub(crate) fn cross<S: Scalar>(u: &Triple<S>, v: &Triple<S>) -> Triple<S> {
    [
        u[1].clone() * v[2].clone() - u[2].clone() * v[1].clone(),
        u[2].clone() * v[0].clone() - u[0].clone() * v[2].clone(),
        u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone(),
    ]
}

pub(crate) fn det3<S: Scalar>(u: &Triple<S>, v: &Triple<S>, w: &Triple<S>) -> S {
    dot(u, &cross(v, w))
}

fn norm<S: Scalar>(u: &Triple<S>) -> S {
    u[0].max_abs(&u[1]).max_abs(&u[2])
}

fn scale2<S: Scalar>(u: &Triple<S>, v: &Triple<S>) -> S {
    if S::EXACT {
        S::one()
    } else {
        norm(u) * norm(v)
    }
}

fn scale3<S: Scalar>(u: &Triple<S>, v: &Triple<S>, w: &Triple<S>) -> S {
    if S::EXACT {
        S::one()
    } else {
        norm(u) * norm(v) * norm(w)
    }
}

fn is_null<S: Scalar>(u: &Triple<S>) -> bool {
    u.iter().all(|c| c.is_zero())
}

pub(crate) fn proportional<S: Scalar>(u: &Triple<S>, v: &Triple<S>) -> bool {
    let s = scale2(u, v);
    cross(u, v).iter().all(|c| c.is_negligible(&s))
}

fn incident<S: Scalar>(u: &Triple<S>, v: &Triple<S>) -> bool {
    dot(u, v).is_negligible(&scale2(u, v))
}

fn dependent<S: Scalar>(u: &Triple<S>, v: &Triple<S>, w: &Triple<S>) -> bool {
    det3(u, v, w).is_negligible(&scale3(u, v, w))
}

/// Solve `x = alpha*u + beta*v`, assuming `x` lies in the span of `u`, `v`.
fn decompose<S: Scalar>(u: &Triple<S>, v: &Triple<S>, x: &Triple<S>) -> Option<(S, S)> {
    // Pick the 2x2 minor of largest magnitude; any nonzero one works exactly.
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut best: Option<(usize, usize, S)> = None;
    for (i, j) in pairs {
        let m = u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
        if m.is_zero() && S::EXACT {
            continue;
        }
        let better = match &best {
            None => true,
            Some((_, _, b)) => m.abs().to_f64() > b.abs().to_f64(),
        };
        if better {
            best = Some((i, j, m));
            if S::EXACT {
                break;
            }
        }
    }
    let (i, j, m) = best?;
    if m.is_zero() {
        return None;
    }
    let alpha = (x[i].clone() * v[j].clone() - x[j].clone() * v[i].clone()).checked_div(&m)?;
    let beta = (u[i].clone() * x[j].clone() - u[j].clone() * x[i].clone()).checked_div(&m)?;
    Some((alpha, beta))
}

fn cross_ratio_triples<S: Scalar>(
    a: &Triple<S>,
    b: &Triple<S>,
    c: &Triple<S>,
    d: &Triple<S>,
) -> Result<S> {
    if proportional(a, b) {
        return Err(GeomError::TooFewDistinct);
    }
    let (c1, c2) = decompose(a, b, c).ok_or(GeomError::TooFewDistinct)?;
    let (d1, d2) = decompose(a, b, d).ok_or(GeomError::TooFewDistinct)?;
    let num = c2 * d1;
    let den = c1 * d2;
    num.checked_div(&den)
        .filter(|_| !den.is_zero())
        .ok_or(GeomError::TooFewDistinct)
}

fn conjugate_triple<S: Scalar>(a: &Triple<S>, b: &Triple<S>, x: &Triple<S>) -> Option<Triple<S>> {
    let (alpha, beta) = decompose(a, b, x)?;
    Some([
        alpha.clone() * a[0].clone() - beta.clone() * b[0].clone(),
        alpha.clone() * a[1].clone() - beta.clone() * b[1].clone(),
        alpha * a[2].clone() - beta * b[2].clone(),
    ])
}

fn normalize_triple<S: Scalar>(t: &Triple<S>) -> Triple<S> {
    if S::EXACT {
        let rationals: Vec<BigRational> = t.iter().map(Scalar::to_rational).collect();
        let primitive = primitive_integers(&rationals);
        std::array::from_fn(|i| S::from_rational(&primitive[i]))
    } else {
        let n = norm(t);
        match t.iter().map(|c| c.checked_div(&n)).collect::<Option<Vec<S>>>() {
            Some(v) => [v[0].clone(), v[1].clone(), v[2].clone()],
            None => t.clone(),
        }
    }
}

/// Scale rationals to coprime integers with a positive first nonzero entry.
fn primitive_integers(values: &[BigRational]) -> Vec<BigRational> {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if gcd.is_zero() {
        return values.to_vec();
    }
    let sign = match ints.iter().find(|v| !v.is_zero()) {
        Some(v) if v.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|v| BigRational::from_integer(v / &gcd * &sign))
        .collect()
}

macro_rules! homogeneous {
    ($name:ident, $f0:ident, $f1:ident, $f2:ident) => {
        #[derive(Clone)]
        pub struct $name<S> {
            coords: Triple<S>,
        }

        impl<S: Scalar> $name<S> {
            /// Panics if all three coordinates are zero.
            pub fn new($f0: S, $f1: S, $f2: S) -> Self {
                Self::from_coords([$f0, $f1, $f2]).expect("homogeneous triple must be nonzero")
            }

            pub fn from_coords(coords: Triple<S>) -> Option<Self> {
                if S::EXACT {
                    if is_null(&coords) {
                        return None;
                    }
                } else if coords.iter().all(|c| c.to_f64() == 0.0)
                    || coords.iter().any(|c| !c.to_f64().is_finite())
                {
                    return None;
                }
                Some(Self { coords })
            }

            pub fn coords(&self) -> &Triple<S> {
                &self.coords
            }

            pub fn into_coords(self) -> Triple<S> {
                self.coords
            }

            pub fn $f0(&self) -> &S {
                &self.coords[0]
            }

            pub fn $f1(&self) -> &S {
                &self.coords[1]
            }

            pub fn $f2(&self) -> &S {
                &self.coords[2]
            }

            /// Same element, coordinates rescaled: coprime integers for exact
            /// backends, unit max-norm for floats.
            pub fn normalized(&self) -> Self {
                Self {
                    coords: normalize_triple(&self.coords),
                }
            }

            pub fn convert<T: Scalar>(&self) -> $name<T> {
                let c = |s: &S| T::from_rational(&s.to_rational());
                $name::from_coords([c(&self.coords[0]), c(&self.coords[1]), c(&self.coords[2])])
                    .expect("conversion preserves nonzero triples")
            }
        }

        impl<S: Scalar> PartialEq for $name<S> {
            fn eq(&self, other: &Self) -> bool {
                proportional(&self.coords, &other.coords)
            }
        }

        impl<S: Scalar> fmt::Debug for $name<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(
                    f,
                    "{}({} : {} : {})",
                    stringify!($name),
                    self.coords[0],
                    self.coords[1],
                    self.coords[2]
                )
            }
        }

        impl<S: Scalar> fmt::Display for $name<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({} : {} : {})", self.coords[0], self.coords[1], self.coords[2])
            }
        }

        impl<S: Scalar> Serialize for $name<S> {
            fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
                use serde::ser::SerializeStruct;
                let mut st = serializer.serialize_struct(stringify!($name), 3)?;
                st.serialize_field(stringify!($f0), &self.coords[0].encode())?;
                st.serialize_field(stringify!($f1), &self.coords[1].encode())?;
                st.serialize_field(stringify!($f2), &self.coords[2].encode())?;
                st.end()
            }
        }

        impl<'de, S: Scalar> Deserialize<'de> for $name<S> {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
                #[derive(Deserialize)]
                struct Repr {
                    $f0: String,
                    $f1: String,
                    $f2: String,
                }
                let r = Repr::deserialize(deserializer)?;
                let dec = |t: &str| {
                    S::decode(t).ok_or_else(|| D::Error::custom(format!("invalid scalar `{t}`")))
                };
                $name::from_coords([dec(&r.$f0)?, dec(&r.$f1)?, dec(&r.$f2)?])
                    .ok_or_else(|| D::Error::custom("all coordinates are zero"))
            }
        }
    };
}

homogeneous!(Point, x, y, w);
homogeneous!(Line, a, b, c);

impl<S: Scalar> Point<S> {
    /// The finite point with affine coordinates `(x, y)`.
    pub fn affine(x: S, y: S) -> Self {
        Point::new(x, y, S::one())
    }

    /// Direction `(dx, dy)` as a point at infinity.
    pub fn at_infinity(dx: S, dy: S) -> Self {
        Point::new(dx, dy, S::zero())
    }

    pub fn is_finite(&self) -> bool {
        if S::EXACT {
            !self.coords[2].is_zero()
        } else {
            !self.coords[2].is_negligible(&norm(&self.coords))
        }
    }

    /// Affine coordinates, `None` for points at infinity.
    pub fn to_affine(&self) -> Option<(S, S)> {
        if !self.is_finite() {
            return None;
        }
        let w = &self.coords[2];
        Some((self.coords[0].checked_div(w)?, self.coords[1].checked_div(w)?))
    }

    pub fn lies_on(&self, l: &Line<S>) -> bool {
        incident(&self.coords, &l.coords)
    }
}

impl<S: Scalar> Line<S> {
    /// The line at infinity `(0:0:1)`.
    pub fn at_infinity() -> Self {
        Line::new(S::zero(), S::zero(), S::one())
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        incident(&self.coords, &p.coords)
    }

    /// Raw incidence residual `a*x + b*y + c*w`.
    pub fn incidence(&self, p: &Point<S>) -> S {
        dot(&self.coords, &p.coords)
    }
}

pub fn point<S: Scalar>(x: i64, y: i64, w: i64) -> Point<S> {
    Point::new(S::from_i64(x), S::from_i64(y), S::from_i64(w))
}

pub fn line<S: Scalar>(a: i64, b: i64, c: i64) -> Line<S> {
    Line::new(S::from_i64(a), S::from_i64(b), S::from_i64(c))
}

/// The line through two distinct points.
pub fn join<S: Scalar>(p: &Point<S>, q: &Point<S>) -> Result<Line<S>> {
    if proportional(&p.coords, &q.coords) {
        return Err(GeomError::CoincidentPoints);
    }
    Line::from_coords(cross(&p.coords, &q.coords)).ok_or(GeomError::CoincidentPoints)
}

/// The intersection point of two distinct lines.
pub fn meet<S: Scalar>(l: &Line<S>, m: &Line<S>) -> Result<Point<S>> {
    if proportional(&l.coords, &m.coords) {
        return Err(GeomError::CoincidentLines);
    }
    Point::from_coords(cross(&l.coords, &m.coords)).ok_or(GeomError::CoincidentLines)
}

/// Determinant of the three coordinate rows.
pub fn collinear_residual<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>) -> S {
    det3(&p.coords, &q.coords, &r.coords)
}

/// A triple with a repeated point counts as collinear.
pub fn collinear<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>) -> bool {
    dependent(&p.coords, &q.coords, &r.coords)
}

pub fn concurrent_residual<S: Scalar>(l: &Line<S>, m: &Line<S>, n: &Line<S>) -> S {
    det3(&l.coords, &m.coords, &n.coords)
}

pub fn concurrent<S: Scalar>(l: &Line<S>, m: &Line<S>, n: &Line<S>) -> bool {
    dependent(&l.coords, &m.coords, &n.coords)
}

/// All points on one line. Fewer than two distinct points is trivially true.
pub fn all_collinear<S: Scalar>(points: &[Point<S>]) -> bool {
    let Some(first) = points.first() else {
        return true;
    };
    let Some(second) = points.iter().find(|p| *p != first) else {
        return true;
    };
    points.iter().all(|p| collinear(first, second, p))
}

/// All lines through one point. Fewer than two distinct lines is trivially true.
pub fn all_concurrent<S: Scalar>(lines: &[Line<S>]) -> bool {
    let Some(first) = lines.first() else {
        return true;
    };
    let Some(second) = lines.iter().find(|l| *l != first) else {
        return true;
    };
    lines.iter().all(|l| concurrent(first, second, l))
}

/// `CR(A,B;C,D) = AC/CB * BD/DA` for four collinear points.
pub fn cross_ratio_points<S: Scalar>(
    a: &Point<S>,
    b: &Point<S>,
    c: &Point<S>,
    d: &Point<S>,
) -> Result<S> {
    if !all_collinear(&[a.clone(), b.clone(), c.clone(), d.clone()]) {
        return Err(GeomError::NotCollinear);
    }
    cross_ratio_triples(&a.coords, &b.coords, &c.coords, &d.coords)
}

/// Cross-ratio of four lines through `vertex`; equals the cross-ratio of
/// their intersections with any transversal avoiding `vertex`.
pub fn cross_ratio_lines<S: Scalar>(
    vertex: &Point<S>,
    g1: &Line<S>,
    g2: &Line<S>,
    g3: &Line<S>,
    g4: &Line<S>,
) -> Result<S> {
    if [g1, g2, g3, g4].iter().any(|g| !g.contains(vertex)) {
        return Err(GeomError::NotConcurrent);
    }
    cross_ratio_triples(&g1.coords, &g2.coords, &g3.coords, &g4.coords)
}

/// Oriented ratio `AD/DB` of three collinear points.
#[derive(Clone, Debug, PartialEq)]
pub enum SegmentRatio<S> {
    Finite(S),
    /// `D` coincides with `B` (or `A` is at infinity).
    Infinite,
}

impl<S: Scalar> SegmentRatio<S> {
    pub fn finite(self) -> Option<S> {
        match self {
            SegmentRatio::Finite(v) => Some(v),
            SegmentRatio::Infinite => None,
        }
    }
}

/// `AD/DB` for `D` on the line `AB`.
///
/// The ratio does not depend on the orientation of the carrier line. A point
/// `D` at infinity gives `-1`.
pub fn signed_ratio<S: Scalar>(a: &Point<S>, d: &Point<S>, b: &Point<S>) -> Result<SegmentRatio<S>> {
    if a == b {
        return Err(GeomError::DegenerateInput("A and B coincide".into()));
    }
    if !collinear(a, d, b) {
        return Err(GeomError::NotCollinear);
    }
    let (alpha, beta) = decompose(&a.coords, &b.coords, &d.coords)
        .ok_or_else(|| GeomError::DegenerateInput("cannot decompose D".into()))?;
    let num = beta * b.coords[2].clone();
    let den = alpha * a.coords[2].clone();
    if den.is_zero() {
        if num.is_zero() {
            return Err(GeomError::DegenerateInput("ratio is 0/0".into()));
        }
        return Ok(SegmentRatio::Infinite);
    }
    Ok(SegmentRatio::Finite(num.checked_div(&den).expect("nonzero")))
}

/// Signed area `[ABC]`, positive for counter-clockwise triangles.
pub fn signed_area<S: Scalar>(a: &Point<S>, b: &Point<S>, c: &Point<S>) -> Result<S> {
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(GeomError::PointAtInfinity);
    }
    let den = S::from_i64(2) * a.coords[2].clone() * b.coords[2].clone() * c.coords[2].clone();
    det3(&a.coords, &b.coords, &c.coords)
        .checked_div(&den)
        .ok_or(GeomError::PointAtInfinity)
}

/// The point `Y` with `CR(A,B;X,Y) = -1`.
pub fn harmonic_conjugate<S: Scalar>(a: &Point<S>, b: &Point<S>, x: &Point<S>) -> Result<Point<S>> {
    if !collinear(a, b, x) {
        return Err(GeomError::NotCollinear);
    }
    if a == b || x == a || x == b {
        return Err(GeomError::DegenerateInput(
            "harmonic conjugate needs A, B, X distinct".into(),
        ));
    }
    conjugate_triple(&a.coords, &b.coords, &x.coords)
        .and_then(Point::from_coords)
        .ok_or_else(|| GeomError::DegenerateInput("conjugate undefined".into()))
}

/// The line `h` through `vertex` making `(ab; gh)` a harmonic pencil.
pub fn fourth_harmonic_line<S: Scalar>(
    vertex: &Point<S>,
    a: &Line<S>,
    b: &Line<S>,
    g: &Line<S>,
) -> Result<Line<S>> {
    if [a, b, g].iter().any(|l| !l.contains(vertex)) {
        return Err(GeomError::NotConcurrent);
    }
    if a == b || g == a || g == b {
        return Err(GeomError::DegenerateInput(
            "fourth harmonic needs three distinct lines".into(),
        ));
    }
    conjugate_triple(&a.coords, &b.coords, &g.coords)
        .and_then(Line::from_coords)
        .ok_or_else(|| GeomError::DegenerateInput("fourth harmonic undefined".into()))
}

/// Point dividing `AB` so that `AD/DB = ratio`. Both endpoints must be finite.
pub fn point_with_ratio<S: Scalar>(a: &Point<S>, b: &Point<S>, ratio: &S) -> Result<Point<S>> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(GeomError::PointAtInfinity);
    }
    let alpha = b.coords[2].clone();
    let beta = ratio.clone() * a.coords[2].clone();
    let c = |i: usize| alpha.clone() * a.coords[i].clone() + beta.clone() * b.coords[i].clone();
    Point::from_coords([c(0), c(1), c(2)])
        .ok_or_else(|| GeomError::DegenerateInput("ratio -1 between coincident points".into()))
}

/// Point/line duality: coordinates are reinterpreted, incidence is preserved.
pub trait Dual {
    type Output;
    fn dual(&self) -> Self::Output;
}

impl<S: Scalar> Dual for Point<S> {
    type Output = Line<S>;
    fn dual(&self) -> Line<S> {
        Line {
            coords: self.coords.clone(),
        }
    }
}

impl<S: Scalar> Dual for Line<S> {
    type Output = Point<S>;
    fn dual(&self) -> Point<S> {
        Point {
            coords: self.coords.clone(),
        }
    }
}

impl<T: Dual> Dual for [T] {
    type Output = Vec<T::Output>;
    fn dual(&self) -> Self::Output {
        self.iter().map(Dual::dual).collect()
    }
}

impl<T: Dual> Dual for Vec<T> {
    type Output = Vec<T::Output>;
    fn dual(&self) -> Self::Output {
        self.iter().map(Dual::dual).collect()
    }
}

impl<T: Dual, const N: usize> Dual for [T; N] {
    type Output = [T::Output; N];
    fn dual(&self) -> Self::Output {
        std::array::from_fn(|i| self[i].dual())
    }
}

/// Apply point/line duality to a whole configuration.
pub fn dualize<T: Dual + ?Sized>(config: &T) -> T::Output {
    config.dual()
}
