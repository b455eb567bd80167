//! Phase 1: a candidate set of bounded polytopes whose union contains the
//! Pareto front.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::milp::{solve_milp_lex, HammingCut, MilpOutcome};
use crate::problem::{MomilpProblem, Slice};
use crate::rational::{dominates, Rational};
use crate::slice_image::{compute_upper_image, nondominated_faces, FrontPiece};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Every slice in turn.
    #[default]
    Exhaustive,
    /// Lexicographic MILPs with Hamming cuts on processed slices.
    MilpDriven,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectOptions {
    pub strategy: Strategy,
    /// Largest admissible number of integer assignments.
    pub slice_limit: u128,
}

impl Default for CollectOptions {
    fn default() -> Self {
        CollectOptions {
            strategy: Strategy::Exhaustive,
            slice_limit: 4096,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CollectStats {
    pub slices_examined: usize,
    pub milp_solves: usize,
    pub cuts_dropped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    /// Number of objectives.
    pub k: usize,
    pub pieces: Vec<FrontPiece>,
    pub strategy: Strategy,
    pub discovered_slices: BTreeSet<Slice>,
    pub stats: CollectStats,
}

pub fn collect(problem: &MomilpProblem, options: &CollectOptions) -> Result<CandidateSet> {
    match options.strategy {
        Strategy::Exhaustive => collect_exhaustive(problem, options.slice_limit),
        Strategy::MilpDriven => collect_milp_driven(problem, options.slice_limit),
    }
}

fn check_limit(problem: &MomilpProblem, limit: u128) -> Result<()> {
    let count = problem.slice_count();
    if count > limit {
        return Err(Error::Limit(alloc::format!("{count} slices exceed the limit of {limit}")));
    }
    Ok(())
}

/// Pieces of one slice, or none when the slice is infeasible.
fn slice_pieces(problem: &MomilpProblem, slice: &Slice, first_id: usize) -> Result<Option<Vec<FrontPiece>>> {
    match compute_upper_image(problem, slice) {
        Ok(image) => nondominated_faces(&image, first_id).map(Some),
        Err(Error::SliceInfeasible) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn collect_exhaustive(problem: &MomilpProblem, slice_limit: u128) -> Result<CandidateSet> {
    check_limit(problem, slice_limit)?;
    let mut out = CandidateSet {
        k: problem.k(),
        pieces: Vec::new(),
        strategy: Strategy::Exhaustive,
        discovered_slices: BTreeSet::new(),
        stats: CollectStats::default(),
    };
    for slice in problem.slices() {
        out.stats.slices_examined += 1;
        if let Some(pieces) = slice_pieces(problem, &slice, out.pieces.len())? {
            out.pieces.extend(pieces);
            out.discovered_slices.insert(slice);
        }
    }
    Ok(out)
}

fn rotation(objectives: &[Vec<Rational>], start: usize) -> Vec<Vec<Rational>> {
    let k = objectives.len();
    (0..k).map(|i| objectives[(start + i) % k].clone()).collect()
}

/// `p` improves on `v` in some coordinate without being dominated by it.
fn beyond(p: &[Rational], v: &[Rational]) -> bool {
    p.iter().zip(v).any(|(a, b)| a < b) && !dominates(v, p)
}

/// Cycles through the `k` rotations of the objective order, solving the
/// lexicographic MILP with every processed slice cut off. A new point's
/// slice is imaged and cut. When the point lies beyond a vertex of a piece
/// from another slice, that slice is re-examined: its image already yields
/// every optimal face, so nothing new appears and its cut is lifted once.
/// Should the MILP return to a lifted slice, the cut goes back for good.
/// Stops when a full cycle of rotations is infeasible.
///
/// Pieces that lie entirely in the dominated shadow of another piece
/// without touching it are dropped at the end; they hold no nondominated
/// point.
pub fn collect_milp_driven(problem: &MomilpProblem, slice_limit: u128) -> Result<CandidateSet> {
    check_limit(problem, slice_limit)?;
    let k = problem.k();
    let mut pieces: Vec<FrontPiece> = Vec::new();
    let mut stats = CollectStats::default();
    let mut processed: BTreeSet<Slice> = BTreeSet::new();
    let mut active: BTreeSet<Slice> = BTreeSet::new();
    let mut lifted: BTreeSet<Slice> = BTreeSet::new();

    let mut rot = 0;
    let mut idle = 0;
    while idle < k {
        let cuts: Vec<HammingCut> = active.iter().cloned().map(HammingCut::new).collect();
        stats.milp_solves += 1;
        let outcome = solve_milp_lex(problem, &rotation(problem.objectives(), rot), &cuts)?;
        rot = (rot + 1) % k;
        let MilpOutcome::Optimal(sol) = outcome else {
            idle += 1;
            continue;
        };
        idle = 0;
        let slice = sol.slice;
        if processed.contains(&slice) {
            active.insert(slice);
            continue;
        }
        stats.slices_examined += 1;
        let found = slice_pieces(problem, &slice, pieces.len())?
            .ok_or_else(|| Error::Pipeline("MILP returned a point in an infeasible slice".into()))?;
        let p = problem.evaluate(&sol.point);
        let reopen: BTreeSet<Slice> = pieces
            .iter()
            .filter(|q| q.slice != slice && q.polytope.vertices().iter().any(|v| beyond(&p, v)))
            .map(|q| q.slice.clone())
            .filter(|s| !lifted.contains(s))
            .collect();
        pieces.extend(found);
        processed.insert(slice.clone());
        active.insert(slice);
        for s in reopen {
            stats.slices_examined += 1;
            let again = slice_pieces(problem, &s, 0)?.unwrap_or_default();
            let known = pieces.iter().filter(|q| q.slice == s).count();
            if again.len() == known {
                active.remove(&s);
                lifted.insert(s);
                stats.cuts_dropped += 1;
            }
        }
    }

    let pieces = drop_shadowed(pieces)?;
    Ok(CandidateSet {
        k,
        pieces,
        strategy: Strategy::MilpDriven,
        discovered_slices: processed,
        stats,
    })
}

fn drop_shadowed(pieces: Vec<FrontPiece>) -> Result<Vec<FrontPiece>> {
    let mut shadows = Vec::with_capacity(pieces.len());
    for p in &pieces {
        shadows.push(p.polytope.minkowski_sum_orthant()?);
    }
    let mut kept = Vec::new();
    for (j, q) in pieces.iter().enumerate() {
        let mut shadowed = false;
        for (i, p) in pieces.iter().enumerate() {
            if i != j && shadows[i].contains_polytope(&q.polytope) && p.polytope.intersect(&q.polytope)?.is_empty() {
                shadowed = true;
                break;
            }
        }
        if !shadowed {
            kept.push(q.clone());
        }
    }
    for (n, p) in kept.iter_mut().enumerate() {
        p.id = n;
    }
    Ok(kept)
}
