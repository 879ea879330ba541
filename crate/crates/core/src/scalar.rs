//! Numeric backends.
//!
//! Every geometric routine in this crate is generic over [`Scalar`]. Two
//! backends are provided:
//!
//! * [`Rational`]: arbitrary precision rationals, always in lowest terms with
//!   a positive denominator. Predicates are exact.
//! * [`Approx`]: `f64` with a relative tolerance. Equality is
//!   `|a - b| <= eps * max(1, |a|, |b|)`.
//!
//! The float tolerance defaults to `1e-9` and can be fixed once per process
//! with [`init_tolerance`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default relative tolerance of the [`Approx`] backend.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

static TOLERANCE: OnceLock<f64> = OnceLock::new();

/// Fix the float tolerance for the rest of the process.
///
/// Returns `false` if the tolerance was already fixed (either explicitly or
/// by a previous read).
pub fn init_tolerance(eps: f64) -> bool {
    TOLERANCE.set(eps).is_ok()
}

/// The float tolerance currently in force.
pub fn tolerance() -> f64 {
    *TOLERANCE.get_or_init(|| DEFAULT_TOLERANCE)
}

/// Field operations plus the handful of predicates the geometry needs.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for backends whose predicates are decided exactly.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    /// Exact backends convert the binary value exactly; `None` for non-finite input.
    fn from_f64(v: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Exact value of the stored number (non-finite floats map to zero).
    fn to_rational(&self) -> BigRational;

    /// Exactly zero, or within the absolute tolerance for floats.
    fn is_zero(&self) -> bool;

    /// `self` is zero relative to the magnitude `scale`.
    ///
    /// Exact backends ignore `scale`.
    fn is_negligible(&self, scale: &Self) -> bool;

    fn abs(&self) -> Self;

    /// `None` when `rhs` is zero.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;

    /// Serialized form: `"num/den"` for rationals, shortest round-trip decimal
    /// for floats.
    fn encode(&self) -> String;
    fn decode(text: &str) -> Option<Self>;

    fn max_abs(&self, other: &Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        if a.to_f64() >= b.to_f64() {
            a
        } else {
            b
        }
    }
}

/// Exact rational scalar.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Rational {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn integer(v: i64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_big(r: BigRational) -> Rational {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Option<Rational> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| format!("invalid integer `{t}`"))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let (n, d) = (parse_int(n)?, parse_int(d)?);
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                Ok(Rational(BigRational::new(n, d)))
            }
            None => Ok(Rational(BigRational::from_integer(parse_int(s)?))),
        }
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(v: i64) -> Self {
        Rational::integer(v)
    }

    fn from_rational(r: &BigRational) -> Self {
        Rational(r.clone())
    }

    fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Rational)
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> BigRational {
        self.0.clone()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_negligible(&self, _scale: &Self) -> bool {
        self.0.is_zero()
    }

    fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.0.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }

    fn encode(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    fn decode(text: &str) -> Option<Self> {
        text.parse().ok()
    }

    fn max_abs(&self, other: &Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        match a.cmp(&b) {
            Ordering::Less => b,
            _ => a,
        }
    }
}

/// Tolerance-carrying float scalar.
#[derive(Clone, Copy, Default)]
pub struct Approx(pub f64);

impl Approx {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Debug for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PartialEq for Approx {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.0, other.0);
        (a - b).abs() <= tolerance() * 1f64.max(a.abs()).max(b.abs())
    }
}

macro_rules! approx_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Approx {
            type Output = Approx;
            fn $method(self, rhs: Approx) -> Approx {
                Approx($trait::$method(self.0, rhs.0))
            }
        }
    };
}

approx_binop!(Add, add);
approx_binop!(Sub, sub);
approx_binop!(Mul, mul);
approx_binop!(Div, div);

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx(-self.0)
    }
}

impl Scalar for Approx {
    const EXACT: bool = false;

    fn zero() -> Self {
        Approx(0.0)
    }

    fn one() -> Self {
        Approx(1.0)
    }

    fn from_i64(v: i64) -> Self {
        Approx(v as f64)
    }

    fn from_rational(r: &BigRational) -> Self {
        Approx(r.to_f64().unwrap_or(f64::NAN))
    }

    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(Approx(v))
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_float(self.0).unwrap_or_else(BigRational::zero)
    }

    fn is_zero(&self) -> bool {
        self.0.abs() <= tolerance()
    }

    fn is_negligible(&self, scale: &Self) -> bool {
        self.0.abs() <= tolerance() * scale.0.abs()
    }

    fn abs(&self) -> Self {
        Approx(self.0.abs())
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.0 == 0.0 {
            None
        } else {
            Some(Approx(self.0 / rhs.0))
        }
    }

    fn encode(&self) -> String {
        format!("{:?}", self.0)
    }

    fn decode(text: &str) -> Option<Self> {
        text.trim().parse::<f64>().ok().and_then(Approx::from_f64)
    }
}
