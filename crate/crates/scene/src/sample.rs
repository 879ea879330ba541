//! Random well-typed scenes for round-trip testing.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ast::*;

struct Gen {
    rng: ChaCha8Rng,
    points: Vec<String>,
    lines: Vec<String>,
    gons: Vec<(String, usize)>,
    counter: usize,
}

impl Gen {
    fn fresh(&mut self, prefix: &str) -> String {
        self.counter += 1;
        format!("{prefix}{}", self.counter)
    }

    fn number(&mut self) -> Number {
        match self.rng.random_range(0..4) {
            0 => {
                let v = f64::from_bits(self.rng.random::<u64>());
                Number::Decimal(if v.is_finite() { v } else { 0.5 })
            }
            1 => {
                let digits: String = (0..self.rng.random_range(1..40)).map(|_| char::from(b'0' + self.rng.random_range(0..10))).collect();
                Number::Ratio(BigRational::from_integer(digits.parse::<BigInt>().unwrap()))
            }
            _ => {
                let d = self.rng.random_range(1..1000i64);
                Number::Ratio(BigRational::new(BigInt::from(self.rng.random_range(-1000..1000i64)), BigInt::from(d)))
            }
        }
    }

    fn pick(&mut self, from: &[String], n: usize) -> Vec<String> {
        (0..n).map(|_| from.choose(&mut self.rng).unwrap().clone()).collect()
    }

    fn order(&mut self) -> Option<OrderSpec> {
        match self.rng.random_range(0..6) {
            0 => None,
            1 => Some(OrderSpec::First),
            2 => Some(OrderSpec::Exhaustive),
            3 => Some(OrderSpec::Seed(self.rng.random())),
            4 => Some(OrderSpec::Sampled { seed: self.rng.random(), orders: self.rng.random_range(1..500) }),
            _ => Some(OrderSpec::Fixed((0..self.rng.random_range(1..5)).map(|_| self.rng.random_range(1..9)).collect())),
        }
    }

    fn statement(&mut self) -> Statement {
        let have_lines = !self.lines.is_empty();
        let have_points = !self.points.is_empty();
        loop {
            match self.rng.random_range(0..12) {
                0 | 1 => {
                    let n = self.rng.random_range(2..=3);
                    let expr = PointExpr::Literal((0..n).map(|_| self.number()).collect());
                    let name = self.fresh("p");
                    self.points.push(name.clone());
                    return Statement::Point { name, expr };
                }
                2 if have_lines => {
                    let l = self.pick(&self.lines.clone(), 2);
                    let name = self.fresh("M");
                    self.points.push(name.clone());
                    return Statement::Point { name, expr: PointExpr::Meet(l[0].clone(), l[1].clone()) };
                }
                3 if have_points => {
                    let p = self.pick(&self.points.clone(), 3);
                    let name = self.fresh("C");
                    self.points.push(name.clone());
                    return Statement::Point { name, expr: PointExpr::Conjugate { a: p[0].clone(), b: p[1].clone(), x: p[2].clone() } };
                }
                4 => {
                    let expr = LineExpr::Literal([self.number(), self.number(), self.number()]);
                    let name = self.fresh("l");
                    self.lines.push(name.clone());
                    return Statement::Line { name, expr };
                }
                5 if have_points => {
                    let p = self.pick(&self.points.clone(), 2);
                    let name = self.fresh("j");
                    self.lines.push(name.clone());
                    return Statement::Line { name, expr: LineExpr::Join(p[0].clone(), p[1].clone()) };
                }
                6 if have_lines && have_points => {
                    let expr = if self.rng.random() {
                        let l = self.pick(&self.lines.clone(), 3);
                        LineExpr::HarmonicLine { a: l[0].clone(), b: l[1].clone(), g: l[2].clone() }
                    } else {
                        let v = self.pick(&self.points.clone(), 4);
                        let l = self.pick(&self.lines.clone(), 3);
                        LineExpr::CompleteFourthLine { vertices: v.try_into().unwrap(), lines: l.try_into().unwrap() }
                    };
                    let name = self.fresh("h");
                    self.lines.push(name.clone());
                    return Statement::Line { name, expr };
                }
                7 if have_points => {
                    let n = self.rng.random_range(3..=7);
                    let vertices = self.pick(&self.points.clone(), n);
                    let name = self.fresh("P");
                    self.gons.push((name.clone(), n));
                    return Statement::Gon { name, vertices };
                }
                8 if have_points && have_lines => {
                    let predicate = match self.rng.random_range(0..4) {
                        0 => {
                            let k = self.rng.random_range(3..6);
                            Predicate::Collinear(self.pick(&self.points.clone(), k))
                        }
                        1 => {
                            let k = self.rng.random_range(3..6);
                            Predicate::Concurrent(self.pick(&self.lines.clone(), k))
                        }
                        2 => {
                            let src = if self.rng.random() { self.points.clone() } else { self.lines.clone() };
                            Predicate::Harmonic(self.pick(&src, 4).try_into().unwrap())
                        }
                        _ => {
                            let a = self.pick(&self.points.clone(), 4).try_into().unwrap();
                            let b = self.pick(&self.lines.clone(), 4).try_into().unwrap();
                            Predicate::CrEqual(a, b)
                        }
                    };
                    return Statement::Assert { negated: self.rng.random(), predicate };
                }
                9..=11 if !self.gons.is_empty() && have_lines => {
                    let (gon, n) = self.gons.choose(&mut self.rng).unwrap().clone();
                    let predicate = match self.rng.random_range(0..4) {
                        0 => Predicate::PseudoConcurrent { gon, lines: self.pick(&self.lines.clone(), n), order: self.order() },
                        1 => Predicate::PseudoCollinear { gon, points: self.pick(&self.points.clone(), n), order: self.order() },
                        2 => Predicate::ProductEquals {
                            product: Product::Ceva { gon, lines: self.pick(&self.lines.clone(), n) },
                            value: self.number(),
                        },
                        _ => Predicate::ProductEquals {
                            product: Product::Menelaos { gon, points: self.pick(&self.points.clone(), n) },
                            value: self.number(),
                        },
                    };
                    return Statement::Assert { negated: self.rng.random(), predicate };
                }
                _ => continue,
            }
        }
    }
}

/// A random scene that passes the static checks: every name is declared
/// before use with the right kind, and gon predicates have one member per
/// vertex. Geometry is not meaningful; this exercises the syntax.
pub fn random_scene(seed: u64) -> Scene {
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed), points: vec![], lines: vec![], gons: vec![], counter: 0 };
    let n = g.rng.random_range(0..40);
    Scene::new((0..n).map(|_| g.statement()).collect())
}
