//! Canonical text form. Comments and layout are not preserved.

use num_traits::{One, Signed};

use crate::ast::*;

pub fn format(scene: &Scene) -> String {
    let mut out = String::new();
    for s in &scene.statements {
        out.push_str(&statement(s));
        out.push('\n');
    }
    out
}

pub fn number(n: &Number) -> String {
    match n {
        Number::Ratio(r) => {
            let sign = if r.is_negative() { "-" } else { "" };
            let (num, den) = (r.numer().abs(), r.denom());
            if den.is_one() {
                format!("{sign}{num}")
            } else {
                format!("{sign}{num}/{den}")
            }
        }
        // Shortest representation that parses back to the same value.
        Number::Decimal(v) => format!("{v:?}"),
    }
}

fn list(items: &[String]) -> String {
    items.join(", ")
}

fn quad(q: &[String; 4]) -> String {
    format!("{}, {}; {}, {}", q[0], q[1], q[2], q[3])
}

fn order(o: &OrderSpec) -> String {
    match o {
        OrderSpec::First => "first".into(),
        OrderSpec::Exhaustive => "exhaustive".into(),
        OrderSpec::Seed(k) => format!("seed({k})"),
        OrderSpec::Sampled { seed, orders } => format!("sampled({seed}, {orders})"),
        OrderSpec::Fixed(v) => format!("fixed({})", v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")),
    }
}

fn members(gon: &str, items: &[String], order_spec: &Option<OrderSpec>) -> String {
    let mut s = format!("{gon}, {}", list(items));
    if let Some(o) = order_spec {
        s.push_str(&format!(", order = {}", order(o)));
    }
    s
}

pub fn predicate(p: &Predicate) -> String {
    match p {
        Predicate::Collinear(v) => format!("collinear({})", list(v)),
        Predicate::Concurrent(v) => format!("concurrent({})", list(v)),
        Predicate::Harmonic(q) => format!("harmonic({})", quad(q)),
        Predicate::CrEqual(a, b) => format!("cr_equal(({}), ({}))", quad(a), quad(b)),
        Predicate::PseudoConcurrent { gon, lines, order } => format!("pseudo_concurrent({})", members(gon, lines, order)),
        Predicate::PseudoCollinear { gon, points, order } => format!("pseudo_collinear({})", members(gon, points, order)),
        Predicate::ProductEquals { product, value } => {
            let inner = match product {
                Product::Ceva { gon, lines } => format!("ceva({gon}, {})", list(lines)),
                Product::Menelaos { gon, points } => format!("menelaos({gon}, {})", list(points)),
            };
            format!("product_equals({inner}, {})", number(value))
        }
    }
}

pub fn statement(s: &Statement) -> String {
    match s {
        Statement::Point { name, expr } => {
            let rhs = match expr {
                PointExpr::Literal(c) => format!("({})", c.iter().map(number).collect::<Vec<_>>().join(", ")),
                PointExpr::Meet(l, m) => format!("meet({l}, {m})"),
                PointExpr::Conjugate { a, b, x } => format!("conjugate({a}, {b}; {x})"),
            };
            format!("point {name} = {rhs}")
        }
        Statement::Line { name, expr } => {
            let rhs = match expr {
                LineExpr::Literal(c) => format!("[{}]", c.iter().map(number).collect::<Vec<_>>().join(", ")),
                LineExpr::Join(p, q) => format!("join({p}, {q})"),
                LineExpr::HarmonicLine { a, b, g } => format!("harmonic_line({a}, {b}; {g})"),
                LineExpr::CompleteFourthLine { vertices, lines } => {
                    format!("complete_fourth_line({}; {})", list(vertices), list(lines))
                }
            };
            format!("line {name} = {rhs}")
        }
        Statement::Gon { name, vertices } => format!("gon {name} = [{}]", list(vertices)),
        Statement::Assert { negated, predicate: p } => {
            format!("assert {}{}", if *negated { "not " } else { "" }, predicate(p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn canonical_spacing() {
        let s = parse("point  A=( -1/2 ,3)#c\nline l=[0,1,0.25] assert not collinear(A,A,A)").unwrap();
        assert_eq!(format(&s), "point A = (-1/2, 3)\nline l = [0, 1, 0.25]\nassert not collinear(A, A, A)\n");
    }

    #[test]
    fn decimals_round_trip() {
        for v in [0.1, -2.5e-12, 1e300, 3.0, 123456.789] {
            let text = format!("point A = ({}, 0)", number(&Number::Decimal(v)));
            let s = parse(&text).unwrap();
            let Statement::Point { expr: PointExpr::Literal(c), .. } = &s.statements[0] else { panic!() };
            assert_eq!(c[0], Number::Decimal(v));
        }
    }
}
