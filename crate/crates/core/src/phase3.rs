//! Phase 3: mark dominated portions and assemble the front.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{difference_pieces, Polytope};
use crate::phase2::CarvedSet;
use crate::problem::Slice;
use crate::rational::Rational;
use crate::slice_image::FrontPiece;

/// The part of a region's base lying in the dominated shadow of another
/// piece, the generator. Points of the removal that are not points of the
/// generator are strictly dominated by it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Removal {
    pub polytope: Polytope,
    pub generator_id: usize,
    pub generator: Polytope,
}

impl Removal {
    /// Whether `y` is removed: it lies in the removal but is not a point of
    /// the generator.
    pub fn excludes(&self, y: &[Rational]) -> bool {
        self.polytope.contains(y) && !self.generator.contains(y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParetoRegion {
    pub base: Polytope,
    pub removals: Vec<Removal>,
    pub piece_id: usize,
    pub slice: Slice,
}

impl ParetoRegion {
    pub fn contains(&self, y: &[Rational]) -> bool {
        self.base.contains(y) && !self.removals.iter().any(|r| r.excludes(y))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoFront {
    pub k: usize,
    pub regions: Vec<ParetoRegion>,
}

impl ParetoFront {
    /// Membership in the front. Errors when `y` does not have `k`
    /// coordinates.
    pub fn contains(&self, y: &[Rational]) -> Result<bool> {
        region_contains(self, y)
    }
}

/// `Q ∩ (P ⊕ R^k_{>=0})`, unless that is empty or lies inside `P`.
pub fn mark_dominated(p: &Polytope, q: &Polytope) -> Result<Option<Polytope>> {
    if p.dim() != q.dim() {
        return Err(Error::input("dimension mismatch"));
    }
    if p.is_empty() || q.is_empty() {
        return Ok(None);
    }
    let r = q.intersect(&p.minkowski_sum_orthant()?)?;
    if r.is_empty() || p.contains_polytope(&r) {
        return Ok(None);
    }
    Ok(Some(r))
}

/// Whether the removals leave nothing of `base` beyond lower-dimensional
/// boundary remnants. Removals are closed, so the union covers `base`
/// exactly when no full-dimensional part survives.
fn covered(base: &Polytope, removals: &[Removal]) -> Result<bool> {
    let mut remaining = vec![base.clone()];
    for r in removals {
        let mut next = Vec::new();
        for x in &remaining {
            next.extend(difference_pieces(x, &r.polytope)?);
        }
        remaining = next;
        if remaining.is_empty() {
            return Ok(true);
        }
    }
    Ok(remaining.is_empty())
}

pub fn assemble_front(carved: &CarvedSet) -> Result<ParetoFront> {
    let pieces: &[FrontPiece] = &carved.pieces;
    let n = pieces.len();
    let mut removals: Vec<Vec<Removal>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let (p, q) = (&pieces[i].polytope, &pieces[j].polytope);
            let on_q = mark_dominated(p, q)?;
            let on_p = mark_dominated(q, p)?;
            if let (Some(a), Some(b)) = (&on_q, &on_p) {
                // With three or more objectives disjoint pieces can dominate
                // each other both ways; both removals are then kept.
                if carved.k == 2 && a.affine_dim() == q.affine_dim() && b.affine_dim() == p.affine_dim() {
                    return Err(Error::MutualDominance(pieces[i].id, pieces[j].id));
                }
            }
            if let Some(r) = on_q {
                removals[j].push(Removal {
                    polytope: r,
                    generator_id: pieces[i].id,
                    generator: p.clone(),
                });
            }
            if let Some(r) = on_p {
                removals[i].push(Removal {
                    polytope: r,
                    generator_id: pieces[j].id,
                    generator: q.clone(),
                });
            }
        }
    }
    let mut regions = Vec::new();
    for (piece, removals) in pieces.iter().zip(removals) {
        if !removals.is_empty() && covered(&piece.polytope, &removals)? {
            continue;
        }
        regions.push(ParetoRegion {
            base: piece.polytope.clone(),
            removals,
            piece_id: piece.id,
            slice: piece.slice.clone(),
        });
    }
    Ok(ParetoFront { k: carved.k, regions })
}

pub fn region_contains(front: &ParetoFront, y: &[Rational]) -> Result<bool> {
    if y.len() != front.k {
        return Err(Error::input(alloc::format!(
            "point has {} coordinates, front has {}",
            y.len(),
            front.k
        )));
    }
    Ok(front.regions.iter().any(|r| r.contains(y)))
}
