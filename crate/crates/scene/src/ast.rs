use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

/// A numeric literal: an exact rational (`3`, `-2/7`) or a decimal (`0.25`).
#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Ratio(BigRational),
    Decimal(f64),
}

impl Number {
    pub fn int(v: i64) -> Number {
        Number::Ratio(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Number {
        Number::Ratio(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Point,
    Line,
    Gon,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Point => "point",
            Kind::Line => "line",
            Kind::Gon => "gon",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PointExpr {
    /// `(x, y)` or homogeneous `(x, y, w)`.
    Literal(Vec<Number>),
    Meet(String, String),
    /// `conjugate(A, B; X)`: the harmonic conjugate of `X` with respect to `A, B`.
    Conjugate { a: String, b: String, x: String },
}

#[derive(Clone, Debug, PartialEq)]
pub enum LineExpr {
    /// `[a, b, c]` for `ax + by + c = 0`.
    Literal([Number; 3]),
    Join(String, String),
    /// `harmonic_line(a, b; g)`: the fourth harmonic line of `g` at `a × b`.
    HarmonicLine { a: String, b: String, g: String },
    /// `complete_fourth_line(A1, A2, A3, A4; g1, g2, g3)`.
    CompleteFourthLine { vertices: [String; 4], lines: [String; 3] },
}

#[derive(Clone, Debug, PartialEq)]
pub enum OrderSpec {
    First,
    Exhaustive,
    Seed(u64),
    Sampled { seed: u64, orders: u64 },
    Fixed(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Product {
    Ceva { gon: String, lines: Vec<String> },
    Menelaos { gon: String, points: Vec<String> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Predicate {
    Collinear(Vec<String>),
    Concurrent(Vec<String>),
    /// Four points or four lines with cross-ratio `-1`.
    Harmonic([String; 4]),
    CrEqual([String; 4], [String; 4]),
    PseudoConcurrent { gon: String, lines: Vec<String>, order: Option<OrderSpec> },
    PseudoCollinear { gon: String, points: Vec<String>, order: Option<OrderSpec> },
    ProductEquals { product: Product, value: Number },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Statement {
    Point { name: String, expr: PointExpr },
    Line { name: String, expr: LineExpr },
    Gon { name: String, vertices: Vec<String> },
    Assert { negated: bool, predicate: Predicate },
}

/// Parsed scene. Source positions are kept beside the statements and do not
/// take part in equality.
#[derive(Clone, Debug, Default)]
pub struct Scene {
    pub statements: Vec<Statement>,
    /// Start of each statement; empty for scenes built in code.
    pub positions: Vec<Pos>,
}

impl PartialEq for Scene {
    fn eq(&self, other: &Self) -> bool {
        self.statements == other.statements
    }
}

impl Scene {
    pub fn new(statements: Vec<Statement>) -> Scene {
        Scene { statements, positions: Vec::new() }
    }

    pub fn position(&self, index: usize) -> Pos {
        self.positions.get(index).copied().unwrap_or_default()
    }

    pub fn has_decimals(&self) -> bool {
        let dec = |n: &Number| matches!(n, Number::Decimal(_));
        self.statements.iter().any(|s| match s {
            Statement::Point { expr: PointExpr::Literal(v), .. } => v.iter().any(dec),
            Statement::Line { expr: LineExpr::Literal(v), .. } => v.iter().any(dec),
            Statement::Assert { predicate: Predicate::ProductEquals { value, .. }, .. } => dec(value),
            _ => false,
        })
    }

    pub fn assertions(&self) -> impl Iterator<Item = (bool, &Predicate)> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Assert { negated, predicate } => Some((*negated, predicate)),
            _ => None,
        })
    }
}

/// 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Words that cannot be used as identifiers.
pub const KEYWORDS: &[&str] = &[
    "point",
    "line",
    "gon",
    "assert",
    "not",
    "order",
    "meet",
    "join",
    "conjugate",
    "harmonic_line",
    "complete_fourth_line",
    "collinear",
    "concurrent",
    "harmonic",
    "cr_equal",
    "pseudo_concurrent",
    "pseudo_collinear",
    "product_equals",
    "ceva",
    "menelaos",
    "first",
    "exhaustive",
    "seed",
    "sampled",
    "fixed",
];
