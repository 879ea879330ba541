use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CevaGon, MenelaosGon};
use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

/// A polygon that can be reduced one vertex at a time down to a triangle.
pub trait Reducible: Clone + Send + Sync {
    fn size(&self) -> usize;
    /// One reduction step at the 1-based index `i`.
    fn step(&self, i: usize) -> Result<Self>;
    /// The property decided on the final triangle.
    fn triangle_holds(&self) -> bool;
}

impl<S: Scalar> Reducible for CevaGon<S> {
    fn size(&self) -> usize {
        self.len()
    }

    fn step(&self, i: usize) -> Result<Self> {
        self.reduce_step(i)
    }

    fn triangle_holds(&self) -> bool {
        self.lines_concurrent()
    }
}

impl<S: Scalar> Reducible for MenelaosGon<S> {
    fn size(&self) -> usize {
        self.len()
    }

    fn step(&self, i: usize) -> Result<Self> {
        self.reduce_step(i)
    }

    fn triangle_holds(&self) -> bool {
        self.points_collinear()
    }
}

/// How step indices are chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Always reduce at index 1.
    First,
    /// One order drawn from a seeded generator.
    Seeded(u64),
    /// Explicit 1-based indices, one per step.
    Fixed(Vec<usize>),
    /// `orders` independent seeded orders.
    Sampled { seed: u64, orders: usize },
    /// Every order: `n (n-1) ... 4` sequences.
    Exhaustive,
}

/// The gons produced by one reduction order.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionTrace<G> {
    pub start: G,
    pub indices: Vec<usize>,
    /// `gons[k]` is the result of step `k`.
    pub gons: Vec<G>,
}

impl<G: Reducible> ReductionTrace<G> {
    pub fn last(&self) -> &G {
        self.gons.last().unwrap_or(&self.start)
    }
}

/// Outcome of reducing along one or more orders.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction<G> {
    /// Result on the first order that reached a triangle.
    pub holds: bool,
    /// Every non-degenerate order gave the same result.
    pub agreement: bool,
    pub orders_checked: usize,
    /// Orders aborted by a degenerate step; these are not counted as false.
    pub degenerate_orders: usize,
    pub trace: ReductionTrace<G>,
}

/// Reduce along `indices`, aborting with the applied prefix on degeneracy.
pub fn reduce_along<G: Reducible>(start: &G, indices: &[usize]) -> Result<ReductionTrace<G>> {
    let n = start.size();
    if indices.len() + 3 != n {
        return Err(GeomError::InvalidPolygon(format!(
            "{} indices given, a {n}-gon needs {}",
            indices.len(),
            n.saturating_sub(3)
        )));
    }
    let mut gons: Vec<G> = Vec::with_capacity(indices.len());
    for (step, &index) in indices.iter().enumerate() {
        let current = gons.last().unwrap_or(start);
        let next = current.step(index).map_err(|e| GeomError::DegenerateStep {
            step,
            index,
            reason: e.to_string(),
            prefix: indices[..step].to_vec(),
        })?;
        gons.push(next);
    }
    Ok(ReductionTrace {
        start: start.clone(),
        indices: indices.to_vec(),
        gons,
    })
}

/// A uniformly random order for an `n`-gon.
pub fn random_order(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    (4..=n).rev().map(|m| rng.random_range(1..=m)).collect()
}

/// Number of distinct orders for an `n`-gon.
pub fn order_count(n: usize) -> usize {
    (4..=n).product()
}

/// Every order in lexicographic order.
pub fn all_orders(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for m in (4..=n).rev() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=m).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out
}

/// Depth-first evaluation of all orders below `gon`, sharing prefixes.
fn explore<G: Reducible>(gon: &G, prefix: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Option<bool>)>) {
    let m = gon.size();
    if m == 3 {
        out.push((prefix.clone(), Some(gon.triangle_holds())));
        return;
    }
    for i in 1..=m {
        prefix.push(i);
        match gon.step(i) {
            Ok(next) => explore(&next, prefix, out),
            Err(_) => out.push((prefix.clone(), None)),
        }
        prefix.pop();
    }
}

fn leaves_exhaustive<G: Reducible>(start: &G) -> Vec<(Vec<usize>, Option<bool>)> {
    let m = start.size();
    if m == 3 {
        return vec![(Vec::new(), Some(start.triangle_holds()))];
    }
    let mut chunks: Vec<(usize, Vec<(Vec<usize>, Option<bool>)>)> = (1..=m)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            let mut prefix = vec![i];
            match start.step(i) {
                Ok(next) => explore(&next, &mut prefix, &mut out),
                Err(_) => out.push((prefix, None)),
            }
            (i, out)
        })
        .collect();
    chunks.sort_by_key(|(i, _)| *i);
    chunks.into_iter().flat_map(|(_, v)| v).collect()
}

pub fn orders_for(n: usize, strategy: &Strategy) -> Vec<Vec<usize>> {
    match strategy {
        Strategy::First => vec![vec![1; n.saturating_sub(3)]],
        Strategy::Seeded(seed) => vec![random_order(n, &mut ChaCha8Rng::seed_from_u64(*seed))],
        Strategy::Fixed(v) => vec![v.clone()],
        Strategy::Sampled { seed, orders } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..*orders).map(|_| random_order(n, &mut rng)).collect()
        }
        Strategy::Exhaustive => all_orders(n),
    }
}

/// Reduce `start` under `strategy` and decide the triangle property.
///
/// Fails only if no order reaches a triangle; the error is the first
/// degenerate step encountered.
pub fn reduce_with<G: Reducible>(start: &G, strategy: &Strategy) -> Result<Reduction<G>> {
    let n = start.size();
    let leaves: Vec<(Vec<usize>, Option<bool>)> = match strategy {
        Strategy::Exhaustive => leaves_exhaustive(start),
        other => {
            let orders = orders_for(n, other);
            if let Strategy::Fixed(v) = other {
                if v.len() + 3 != n {
                    return Err(GeomError::InvalidPolygon(format!(
                        "{} indices given, a {n}-gon needs {}",
                        v.len(),
                        n.saturating_sub(3)
                    )));
                }
            }
            orders
                .into_par_iter()
                .map(|order| {
                    let r = reduce_along(start, &order).ok().map(|t| t.last().triangle_holds());
                    (order, r)
                })
                .collect()
        }
    };
    let degenerate_orders = leaves.iter().filter(|(_, r)| r.is_none()).count();
    let Some((order, holds)) = leaves.iter().find_map(|(o, r)| r.map(|h| (o.clone(), h))) else {
        let (order, _) = &leaves[0];
        // Re-run to recover the precise error.
        let full = if order.len() + 3 == n {
            order.clone()
        } else {
            let mut padded = order.clone();
            padded.resize(n - 3, 1);
            padded
        };
        return Err(reduce_along(start, &full).err().unwrap_or(GeomError::DegenerateStep {
            step: order.len().saturating_sub(1),
            index: *order.last().unwrap_or(&0),
            reason: "degenerate".into(),
            prefix: order[..order.len().saturating_sub(1)].to_vec(),
        }));
    };
    let agreement = leaves.iter().all(|(_, r)| r.is_none_or(|h| h == holds));
    let trace = reduce_along(start, &order)?;
    Ok(Reduction {
        holds,
        agreement,
        orders_checked: leaves.len(),
        degenerate_orders,
        trace,
    })
}

pub fn is_pseudo_concurrent<S: Scalar>(p: &CevaGon<S>, strategy: &Strategy) -> Result<Reduction<CevaGon<S>>> {
    reduce_with(p, strategy)
}

pub fn is_pseudo_collinear<S: Scalar>(
    p: &MenelaosGon<S>,
    strategy: &Strategy,
) -> Result<Reduction<MenelaosGon<S>>> {
    reduce_with(p, strategy)
}
