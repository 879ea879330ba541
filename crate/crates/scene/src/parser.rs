//! Recursive-descent parser with declaration checking.
//!
//! One token of lookahead suffices everywhere; every statement starts with a
//! keyword, so no separators are needed.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::ast::*;
use crate::error::SceneError;
use crate::lexer::{tokenize, Tok, Token};

pub fn parse(text: &str) -> Result<Scene, SceneError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, at: 0, symbols: HashMap::new() };
    let mut scene = Scene::default();
    while p.peek().tok != Tok::Eof {
        let pos = p.peek().pos;
        let stmt = p.statement()?;
        scene.statements.push(stmt);
        scene.positions.push(pos);
    }
    Ok(scene)
}

struct Symbol {
    kind: Kind,
    pos: Pos,
    /// Vertex count of a gon.
    size: usize,
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    symbols: HashMap<String, Symbol>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> SceneError {
        let t = self.peek();
        SceneError::Syntax {
            pos: t.pos,
            found: t.tok.describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, SceneError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.error(&[&tok.describe()]))
        }
    }

    fn at_keyword(&self, word: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == word)
    }

    fn keyword(&mut self, word: &str) -> Result<(), SceneError> {
        if self.at_keyword(word) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{word}`")]))
        }
    }

    /// Consume one of `words`, returning it.
    fn one_of(&mut self, words: &[&str]) -> Result<String, SceneError> {
        if let Tok::Ident(s) = &self.peek().tok {
            if words.contains(&s.as_str()) {
                let s = s.clone();
                self.bump();
                return Ok(s);
            }
        }
        let expected: Vec<String> = words.iter().map(|w| format!("`{w}`")).collect();
        let refs: Vec<&str> = expected.iter().map(String::as_str).collect();
        Err(self.error(&refs))
    }

    fn fresh_name(&mut self) -> Result<(String, Pos), SceneError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                if let Some(prev) = self.symbols.get(s) {
                    return Err(SceneError::Redeclaration { pos: t.pos, name: s.clone(), first: prev.pos });
                }
                self.bump();
                Ok((s.clone(), t.pos))
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    fn reference(&mut self, kind: Kind) -> Result<String, SceneError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let sym = self
                    .symbols
                    .get(s)
                    .ok_or_else(|| SceneError::UnknownIdentifier { pos: t.pos, name: s.clone() })?;
                if sym.kind != kind {
                    return Err(SceneError::TypeMismatch { pos: t.pos, name: s.clone(), expected: kind, found: sym.kind });
                }
                self.bump();
                Ok(s.clone())
            }
            _ => Err(self.error(&[&format!("{kind} name")])),
        }
    }

    /// A declared point or line; returns its kind.
    fn element(&mut self) -> Result<(String, Kind, Pos), SceneError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let sym = self
                    .symbols
                    .get(s)
                    .ok_or_else(|| SceneError::UnknownIdentifier { pos: t.pos, name: s.clone() })?;
                if sym.kind == Kind::Gon {
                    return Err(SceneError::TypeMismatch {
                        pos: t.pos,
                        name: s.clone(),
                        expected: Kind::Point,
                        found: Kind::Gon,
                    });
                }
                let kind = sym.kind;
                self.bump();
                Ok((s.clone(), kind, t.pos))
            }
            _ => Err(self.error(&["point or line name"])),
        }
    }

    fn declare(&mut self, name: &str, kind: Kind, pos: Pos, size: usize) {
        self.symbols.insert(name.to_string(), Symbol { kind, pos, size });
    }

    fn statement(&mut self) -> Result<Statement, SceneError> {
        let word = self.one_of(&["point", "line", "gon", "assert"])?;
        match word.as_str() {
            "point" => {
                let (name, pos) = self.fresh_name()?;
                self.expect(Tok::Eq)?;
                let expr = self.point_expr()?;
                self.declare(&name, Kind::Point, pos, 0);
                Ok(Statement::Point { name, expr })
            }
            "line" => {
                let (name, pos) = self.fresh_name()?;
                self.expect(Tok::Eq)?;
                let expr = self.line_expr()?;
                self.declare(&name, Kind::Line, pos, 0);
                Ok(Statement::Line { name, expr })
            }
            "gon" => {
                let (name, pos) = self.fresh_name()?;
                self.expect(Tok::Eq)?;
                self.expect(Tok::LBracket)?;
                let mut vertices = vec![self.reference(Kind::Point)?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    vertices.push(self.reference(Kind::Point)?);
                }
                if vertices.len() < 3 {
                    return Err(self.error(&["`,`"]));
                }
                self.expect(Tok::RBracket)?;
                self.declare(&name, Kind::Gon, pos, vertices.len());
                Ok(Statement::Gon { name, vertices })
            }
            _ => {
                let negated = self.at_keyword("not");
                if negated {
                    self.bump();
                }
                let predicate = self.predicate()?;
                Ok(Statement::Assert { negated, predicate })
            }
        }
    }

    fn point_expr(&mut self) -> Result<PointExpr, SceneError> {
        if self.peek().tok == Tok::LParen {
            self.bump();
            let mut coords = vec![self.number()?];
            self.expect(Tok::Comma)?;
            coords.push(self.number()?);
            if self.peek().tok == Tok::Comma {
                self.bump();
                coords.push(self.number()?);
            }
            self.expect(Tok::RParen)?;
            return Ok(PointExpr::Literal(coords));
        }
        match self.one_of(&["meet", "conjugate"]).map_err(|_| self.error(&["`(`", "`meet`", "`conjugate`"]))?.as_str() {
            "meet" => {
                self.expect(Tok::LParen)?;
                let l = self.reference(Kind::Line)?;
                self.expect(Tok::Comma)?;
                let m = self.reference(Kind::Line)?;
                self.expect(Tok::RParen)?;
                Ok(PointExpr::Meet(l, m))
            }
            _ => {
                self.expect(Tok::LParen)?;
                let a = self.reference(Kind::Point)?;
                self.expect(Tok::Comma)?;
                let b = self.reference(Kind::Point)?;
                self.expect(Tok::Semi)?;
                let x = self.reference(Kind::Point)?;
                self.expect(Tok::RParen)?;
                Ok(PointExpr::Conjugate { a, b, x })
            }
        }
    }

    fn line_expr(&mut self) -> Result<LineExpr, SceneError> {
        if self.peek().tok == Tok::LBracket {
            self.bump();
            let a = self.number()?;
            self.expect(Tok::Comma)?;
            let b = self.number()?;
            self.expect(Tok::Comma)?;
            let c = self.number()?;
            self.expect(Tok::RBracket)?;
            return Ok(LineExpr::Literal([a, b, c]));
        }
        let word = self
            .one_of(&["join", "harmonic_line", "complete_fourth_line"])
            .map_err(|_| self.error(&["`[`", "`join`", "`harmonic_line`", "`complete_fourth_line`"]))?;
        self.expect(Tok::LParen)?;
        let expr = match word.as_str() {
            "join" => {
                let p = self.reference(Kind::Point)?;
                self.expect(Tok::Comma)?;
                let q = self.reference(Kind::Point)?;
                LineExpr::Join(p, q)
            }
            "harmonic_line" => {
                let a = self.reference(Kind::Line)?;
                self.expect(Tok::Comma)?;
                let b = self.reference(Kind::Line)?;
                self.expect(Tok::Semi)?;
                let g = self.reference(Kind::Line)?;
                LineExpr::HarmonicLine { a, b, g }
            }
            _ => {
                let mut v = Vec::with_capacity(4);
                for k in 0..4 {
                    if k > 0 {
                        self.expect(Tok::Comma)?;
                    }
                    v.push(self.reference(Kind::Point)?);
                }
                self.expect(Tok::Semi)?;
                let mut g = Vec::with_capacity(3);
                for k in 0..3 {
                    if k > 0 {
                        self.expect(Tok::Comma)?;
                    }
                    g.push(self.reference(Kind::Line)?);
                }
                LineExpr::CompleteFourthLine {
                    vertices: v.try_into().expect("four"),
                    lines: g.try_into().expect("three"),
                }
            }
        };
        self.expect(Tok::RParen)?;
        Ok(expr)
    }

    fn names(&mut self, kind: Kind, min: usize) -> Result<Vec<String>, SceneError> {
        let mut v = vec![self.reference(kind)?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            v.push(self.reference(kind)?);
        }
        if v.len() < min {
            return Err(self.error(&["`,`"]));
        }
        Ok(v)
    }

    /// Four points or four lines, `a, b; c, d`.
    fn quadruple(&mut self) -> Result<[String; 4], SceneError> {
        let (first, kind, _) = self.element()?;
        let mut v = vec![first];
        for sep in [Tok::Comma, Tok::Semi, Tok::Comma] {
            self.expect(sep)?;
            v.push(self.reference(kind)?);
        }
        Ok(v.try_into().expect("four"))
    }

    fn gon_members(&mut self, kind: Kind) -> Result<(String, Vec<String>), SceneError> {
        let gon = self.reference(Kind::Gon)?;
        let size = self.symbols[&gon].size;
        let mut items = Vec::with_capacity(size);
        for _ in 0..size {
            self.expect(Tok::Comma)?;
            items.push(self.reference(kind)?);
        }
        Ok((gon, items))
    }

    fn predicate(&mut self) -> Result<Predicate, SceneError> {
        let word = self.one_of(&[
            "collinear",
            "concurrent",
            "harmonic",
            "cr_equal",
            "pseudo_concurrent",
            "pseudo_collinear",
            "product_equals",
        ])?;
        self.expect(Tok::LParen)?;
        let pred = match word.as_str() {
            "collinear" => Predicate::Collinear(self.names(Kind::Point, 3)?),
            "concurrent" => Predicate::Concurrent(self.names(Kind::Line, 3)?),
            "harmonic" => Predicate::Harmonic(self.quadruple()?),
            "cr_equal" => {
                self.expect(Tok::LParen)?;
                let a = self.quadruple()?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Comma)?;
                self.expect(Tok::LParen)?;
                let b = self.quadruple()?;
                self.expect(Tok::RParen)?;
                Predicate::CrEqual(a, b)
            }
            "pseudo_concurrent" | "pseudo_collinear" => {
                let kind = if word == "pseudo_concurrent" { Kind::Line } else { Kind::Point };
                let (gon, items) = self.gon_members(kind)?;
                let order = if self.peek().tok == Tok::Comma {
                    self.bump();
                    self.keyword("order")?;
                    self.expect(Tok::Eq)?;
                    Some(self.order()?)
                } else {
                    None
                };
                if kind == Kind::Line {
                    Predicate::PseudoConcurrent { gon, lines: items, order }
                } else {
                    Predicate::PseudoCollinear { gon, points: items, order }
                }
            }
            _ => {
                let which = self.one_of(&["ceva", "menelaos"])?;
                self.expect(Tok::LParen)?;
                let product = if which == "ceva" {
                    let (gon, lines) = self.gon_members(Kind::Line)?;
                    Product::Ceva { gon, lines }
                } else {
                    let (gon, points) = self.gon_members(Kind::Point)?;
                    Product::Menelaos { gon, points }
                };
                self.expect(Tok::RParen)?;
                self.expect(Tok::Comma)?;
                let value = self.number()?;
                Predicate::ProductEquals { product, value }
            }
        };
        self.expect(Tok::RParen)?;
        Ok(pred)
    }

    fn unsigned(&mut self) -> Result<u64, SceneError> {
        let t = self.peek().clone();
        if let Tok::Int(s) = &t.tok {
            if let Ok(v) = s.parse::<u64>() {
                self.bump();
                return Ok(v);
            }
        }
        Err(self.error(&["unsigned integer"]))
    }

    fn order(&mut self) -> Result<OrderSpec, SceneError> {
        let word = self.one_of(&["first", "exhaustive", "seed", "sampled", "fixed"])?;
        Ok(match word.as_str() {
            "first" => OrderSpec::First,
            "exhaustive" => OrderSpec::Exhaustive,
            "seed" => {
                self.expect(Tok::LParen)?;
                let k = self.unsigned()?;
                self.expect(Tok::RParen)?;
                OrderSpec::Seed(k)
            }
            "sampled" => {
                self.expect(Tok::LParen)?;
                let seed = self.unsigned()?;
                self.expect(Tok::Comma)?;
                let orders = self.unsigned()?;
                self.expect(Tok::RParen)?;
                OrderSpec::Sampled { seed, orders }
            }
            _ => {
                self.expect(Tok::LParen)?;
                let mut v = vec![self.unsigned()?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    v.push(self.unsigned()?);
                }
                self.expect(Tok::RParen)?;
                OrderSpec::Fixed(v)
            }
        })
    }

    fn number(&mut self) -> Result<Number, SceneError> {
        let negative = self.peek().tok == Tok::Minus;
        if negative {
            self.bump();
        }
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(s) => {
                self.bump();
                let num: BigInt = s.parse().expect("digits");
                let den = if self.peek().tok == Tok::Slash {
                    self.bump();
                    let d = self.peek().clone();
                    match &d.tok {
                        Tok::Int(ds) if !ds.parse::<BigInt>().expect("digits").is_zero() => {
                            self.bump();
                            ds.parse::<BigInt>().expect("digits")
                        }
                        _ => return Err(self.error(&["nonzero integer"])),
                    }
                } else {
                    BigInt::from(1)
                };
                let r = BigRational::new(num, den);
                Ok(Number::Ratio(if negative { -r } else { r }))
            }
            Tok::Decimal(s) => {
                self.bump();
                let v: f64 = s.parse().expect("lexer accepts only valid decimals");
                if !v.is_finite() {
                    return Err(SceneError::Syntax { pos: t.pos, found: t.tok.describe(), expected: vec!["finite number".into()] });
                }
                Ok(Number::Decimal(if negative { -v } else { v }))
            }
            _ => Err(self.error(&["number"])),
        }
    }
}
