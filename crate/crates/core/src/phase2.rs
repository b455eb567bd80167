//! Phase 2: carve the candidates into pieces with pairwise disjoint
//! relative interiors.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{difference_pieces, Polytope};
use crate::phase1::CandidateSet;
use crate::slice_image::FrontPiece;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarvedSet {
    pub k: usize,
    /// Ids are `0..n`; `parent` is the id of the originating candidate.
    pub pieces: Vec<FrontPiece>,
    /// Number of overlapping pairs that were split.
    pub splits: usize,
}

pub const DEFAULT_BUDGET: usize = 10_000;

/// Work-list carving. A piece taken from the list is compared with the
/// already accepted ones; on the first pair whose relative interiors meet,
/// the intersection `I` becomes a piece of its own and each operand is
/// replaced by its remainder outside `I`, cut into convex parts by the
/// complement halfspaces of `I` taken in turn. All of these go back on the
/// list. Remainders of lower dimension than their operand are dropped (they
/// lie in `I`), and identical pieces collapse to one.
///
/// `budget` bounds the number of splits.
pub fn carve(candidates: &CandidateSet, budget: usize) -> Result<CarvedSet> {
    let mut stack: Vec<(Polytope, FrontPiece)> = candidates
        .pieces
        .iter()
        .rev()
        .map(|p| {
            let mut piece = p.clone();
            piece.parent = Some(p.id);
            (p.polytope.clone(), piece)
        })
        .collect();
    let mut accepted: Vec<FrontPiece> = Vec::new();
    let mut splits = 0;

    'work: while let Some((x, origin)) = stack.pop() {
        for i in 0..accepted.len() {
            let y = &accepted[i].polytope;
            if *y == x {
                continue 'work;
            }
            if !x.relative_interiors_intersect(y)? {
                continue;
            }
            splits += 1;
            if splits > budget {
                return Err(Error::BudgetExhausted(budget));
            }
            let other = accepted.remove(i);
            let common = x.intersect(&other.polytope)?;
            let mut fresh: Vec<(Polytope, FrontPiece)> = Vec::new();
            for (poly, from) in [(&other.polytope, &other), (&x, &origin)] {
                if *poly != common {
                    for part in difference_pieces(poly, &common)? {
                        fresh.push((part, from.clone()));
                    }
                }
            }
            fresh.push((common, origin));
            stack.extend(fresh.into_iter().rev());
            continue 'work;
        }
        let mut piece = origin;
        piece.polytope = x;
        accepted.push(piece);
    }

    accepted.sort_by(|a, b| (a.parent, &a.polytope).cmp(&(b.parent, &b.polytope)));
    for (n, piece) in accepted.iter_mut().enumerate() {
        piece.id = n;
    }
    Ok(CarvedSet {
        k: candidates.k,
        pieces: accepted,
        splits,
    })
}

/// Whether every pair has disjoint relative interiors.
pub fn verify_disjoint(pieces: &[Polytope]) -> Result<bool> {
    for (i, p) in pieces.iter().enumerate() {
        for q in &pieces[i + 1..] {
            if p.relative_interiors_intersect(q)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
