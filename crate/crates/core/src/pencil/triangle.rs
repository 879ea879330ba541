//! Triangles with a harmonic pencil at every vertex.
//!
//! Arrays are 0-based: `vertices[k]` is `A_{k+1}`, `sides[k]` is the side
//! opposite it, and the pencil at `A_{k+1}` is
//! `(sides[k+1] sides[k+2]; g[k] h[k])`.

use serde::Serialize;

use super::{line_through, ratio_product, HarmonicPencil};
use crate::error::{GeomError, Result};
use crate::projective::{
    collinear, concurrent, concurrent_residual, cross_ratio_lines, join, meet, Line, Point,
};
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct TriangleConfig<S: Scalar> {
    pub vertices: [Point<S>; 3],
    pub sides: [Line<S>; 3],
    pub g: [Line<S>; 3],
    pub h: [Line<S>; 3],
}

fn sides_of<S: Scalar>(v: &[Point<S>; 3]) -> Result<[Line<S>; 3]> {
    if collinear(&v[0], &v[1], &v[2]) {
        return Err(GeomError::DegenerateConfig("triangle vertices are collinear".into()));
    }
    Ok([join(&v[1], &v[2])?, join(&v[2], &v[0])?, join(&v[0], &v[1])?])
}

impl<S: Scalar> TriangleConfig<S> {
    /// Validates that every vertex carries a harmonic pencil.
    pub fn new(vertices: [Point<S>; 3], g: [Line<S>; 3], h: [Line<S>; 3]) -> Result<Self> {
        let sides = sides_of(&vertices)?;
        let t = TriangleConfig { vertices, sides, g, h };
        for k in 0..3 {
            t.pencil_checked(k)?;
        }
        Ok(t)
    }

    /// Completes each `h[k]` as the fourth harmonic line of `g[k]`.
    pub fn from_g(vertices: [Point<S>; 3], g: [Line<S>; 3]) -> Result<Self> {
        let sides = sides_of(&vertices)?;
        let mut h = Vec::with_capacity(3);
        for k in 0..3 {
            let p = HarmonicPencil::complete(
                vertices[k].clone(),
                sides[(k + 1) % 3].clone(),
                sides[(k + 2) % 3].clone(),
                g[k].clone(),
            )?;
            h.push(p.h);
        }
        let h: [Line<S>; 3] = h.try_into().expect("three lines");
        Ok(TriangleConfig { vertices, sides, g, h })
    }

    fn pencil_checked(&self, k: usize) -> Result<HarmonicPencil<S>> {
        HarmonicPencil::new(
            self.vertices[k].clone(),
            self.sides[(k + 1) % 3].clone(),
            self.sides[(k + 2) % 3].clone(),
            self.g[k].clone(),
            self.h[k].clone(),
        )
    }

    pub fn pencil(&self, k: usize) -> HarmonicPencil<S> {
        HarmonicPencil {
            vertex: self.vertices[k].clone(),
            a1: self.sides[(k + 1) % 3].clone(),
            a2: self.sides[(k + 2) % 3].clone(),
            g: self.g[k].clone(),
            h: self.h[k].clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct FreeTriangleLines<S: Scalar> {
    pub u: [Line<S>; 3],
    pub v: [Line<S>; 3],
}

/// `u_i` through `A_i` and `g_{i+1}×g_{i+2}`; `v_i` through `A_i` and `g_{i+1}×h_{i+2}`.
pub fn free_triangle_lines<S: Scalar>(t: &TriangleConfig<S>) -> Result<FreeTriangleLines<S>> {
    let mut u = Vec::with_capacity(3);
    let mut v = Vec::with_capacity(3);
    for k in 0..3 {
        let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
        let a = &t.vertices[k];
        let gg = meet(&t.g[k1], &t.g[k2])?;
        let hh = meet(&t.h[k1], &t.h[k2])?;
        u.push(line_through(a, &gg, &hh)?);
        let gh = meet(&t.g[k1], &t.h[k2])?;
        let hg = meet(&t.g[k2], &t.h[k1])?;
        v.push(line_through(a, &gh, &hg)?);
    }
    Ok(FreeTriangleLines {
        u: u.try_into().expect("three lines"),
        v: v.try_into().expect("three lines"),
    })
}

/// The six collinearities and three harmonic pencils of a free triangle.
pub fn free_triangle_report<S: Scalar>(t: &TriangleConfig<S>) -> Result<Report> {
    let mut r = Report::new("free-triangle");
    for k in 0..3 {
        let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
        let a = &t.vertices[k];
        let gg = meet(&t.g[k1], &t.g[k2])?;
        let hh = meet(&t.h[k1], &t.h[k2])?;
        let gh = meet(&t.g[k1], &t.h[k2])?;
        let hg = meet(&t.g[k2], &t.h[k1])?;
        r.flag(format!("u{}", k + 1), collinear(a, &gg, &hh));
        r.residual(format!("u{}", k + 1), &crate::projective::collinear_residual(a, &gg, &hh));
        r.flag(format!("v{}", k + 1), collinear(a, &gh, &hg));
        r.residual(format!("v{}", k + 1), &crate::projective::collinear_residual(a, &gh, &hg));
    }
    let lines = free_triangle_lines(t)?;
    for k in 0..3 {
        let cr = cross_ratio_lines(
            &t.vertices[k],
            &t.sides[(k + 1) % 3],
            &t.sides[(k + 2) % 3],
            &lines.u[k],
            &lines.v[k],
        )?;
        r.flag(format!("harmonic{}", k + 1), cr == -S::one());
        r.residual(format!("harmonic{}", k + 1), &(cr + S::one()));
    }
    Ok(r.with_witness(t))
}

/// Feet `B_i = a_i×g_i` and the product
/// `A1B3/B3A2 · A2B1/B1A3 · A3B2/B2A1`.
pub fn ceva_product_triangle<S: Scalar>(t: &TriangleConfig<S>) -> Result<S> {
    ceva_product_for(&t.vertices, &t.g)
}

pub(crate) fn ceva_product_for<S: Scalar>(vertices: &[Point<S>; 3], g: &[Line<S>; 3]) -> Result<S> {
    let sides = sides_of(vertices)?;
    let feet: Vec<Point<S>> = (0..3)
        .map(|k| meet(&sides[k], &g[k]))
        .collect::<Result<_>>()
        .map_err(|_| GeomError::UndefinedFoot("cevian coincides with a side".into()))?;
    ratio_product((0..3).map(|k| {
        (
            vertices[k].clone(),
            feet[(k + 2) % 3].clone(),
            vertices[(k + 1) % 3].clone(),
        )
    }))
}

/// Concurrency of `g1,g2,g3` and of each `g_i, h_{i+1}, h_{i+2}`, plus whether
/// the Ceva product equals one.
pub fn triangle_concurrency_transfer<S: Scalar>(t: &TriangleConfig<S>) -> Result<Report> {
    let mut r = Report::new("triangle-transfer");
    let g = &t.g;
    let h = &t.h;
    r.flag("g1g2g3", concurrent(&g[0], &g[1], &g[2]));
    r.residual("g1g2g3", &concurrent_residual(&g[0], &g[1], &g[2]));
    for k in 0..3 {
        let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
        let name = format!("g{}h{}h{}", k + 1, k1 + 1, k2 + 1);
        r.flag(name.clone(), concurrent(&g[k], &h[k1], &h[k2]));
        r.residual(name, &concurrent_residual(&g[k], &h[k1], &h[k2]));
    }
    let product = ceva_product_triangle(t)?;
    r.flag("ceva_product_one", product == S::one());
    r.residual("ceva_product_one", &(product - S::one()));
    Ok(r.with_witness(t))
}
