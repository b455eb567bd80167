use num_traits::Signed;

use super::Polytope;
use crate::error::{Error, Result};
use crate::lp::{solve_lp, Constraint, LinearProgram, LpOutcome};
use crate::rational::int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DominanceRelation {
    CompletelyDominates,
    PartiallyDominates,
    Incomparable,
    DominatedBy,
    PartiallyDominatedBy,
}

impl DominanceRelation {
    /// The label seen from the other operand.
    pub fn reversed(self) -> Self {
        use DominanceRelation::*;
        match self {
            CompletelyDominates => DominatedBy,
            DominatedBy => CompletelyDominates,
            PartiallyDominates => PartiallyDominatedBy,
            PartiallyDominatedBy => PartiallyDominates,
            Incomparable => Incomparable,
        }
    }
}

fn push_membership(lp: &mut LinearProgram, p: &Polytope, offset: usize, width: usize) {
    let embed = |normal: &[crate::Rational]| {
        let mut row = alloc::vec![num_traits::Zero::zero(); width];
        row[offset..offset + normal.len()].clone_from_slice(normal);
        row
    };
    for h in p.equalities() {
        lp.push(Constraint::eq(embed(h.normal()), h.offset().clone()));
    }
    for h in p.facets() {
        lp.push(Constraint::le(embed(h.normal()), h.offset().clone()));
    }
}

/// Whether some point of `p` strictly dominates some point of `q`.
pub fn some_point_dominates(p: &Polytope, q: &Polytope) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::input("dimension mismatch"));
    }
    if p.is_empty() || q.is_empty() {
        return Ok(false);
    }
    let d = p.dim();
    let mut lp = LinearProgram::new(2 * d);
    push_membership(&mut lp, p, 0, 2 * d);
    push_membership(&mut lp, q, d, 2 * d);
    for i in 0..d {
        let mut row = alloc::vec![int(0); 2 * d];
        row[i] = int(-1);
        row[d + i] = int(1);
        lp.push(Constraint::ge(row, int(0)));
        lp.objective[i] = int(1);
        lp.objective[d + i] = int(-1);
    }
    Ok(match solve_lp(&lp) {
        LpOutcome::Optimal(sol) => sol.value.is_negative(),
        LpOutcome::Unbounded => true,
        LpOutcome::Infeasible => false,
    })
}

/// Compares two nonempty polytopes under minimization.
///
/// `P` completely dominates `Q` when every point of `Q` is weakly dominated
/// by a point of `P`, some point of `P` strictly dominates a point of `Q`,
/// and no point of `Q` strictly dominates a point of `P`. Shared points are
/// allowed. `P` partially dominates `Q` when the last two conditions hold
/// without the first.
pub fn classify_polytope_dominance(p: &Polytope, q: &Polytope) -> Result<DominanceRelation> {
    if p.dim() != q.dim() {
        return Err(Error::input("dimension mismatch"));
    }
    if p.is_empty() || q.is_empty() {
        return Err(Error::input("dominance of an empty polytope"));
    }
    let forward = some_point_dominates(p, q)?;
    let backward = some_point_dominates(q, p)?;
    let covered = |by: &Polytope, target: &Polytope| -> Result<bool> {
        Ok(by.minkowski_sum_orthant()?.contains_polytope(target))
    };
    Ok(match (forward, backward) {
        (true, false) if covered(p, q)? => DominanceRelation::CompletelyDominates,
        (true, false) => DominanceRelation::PartiallyDominates,
        (false, true) if covered(q, p)? => DominanceRelation::DominatedBy,
        (false, true) => DominanceRelation::PartiallyDominatedBy,
        _ => DominanceRelation::Incomparable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vrep_to_hrep;
    use crate::rational::{ints, vector};

    #[test]
    fn point_dominates_square() {
        let p = crate::Polytope::point(ints(&[0, 0])).unwrap();
        let q = vrep_to_hrep(
            alloc::vec![ints(&[1, 1]), ints(&[2, 1]), ints(&[1, 2]), ints(&[2, 2])],
            alloc::vec![],
        )
        .unwrap();
        assert_eq!(
            classify_polytope_dominance(&p, &q).unwrap(),
            DominanceRelation::CompletelyDominates
        );
        assert_eq!(
            classify_polytope_dominance(&q, &p).unwrap(),
            DominanceRelation::DominatedBy
        );
    }

    #[test]
    fn segment_against_itself() {
        let s = vrep_to_hrep(alloc::vec![ints(&[0, 1]), ints(&[1, 0])], alloc::vec![]).unwrap();
        assert_eq!(
            classify_polytope_dominance(&s, &s).unwrap(),
            DominanceRelation::Incomparable
        );
    }

    #[test]
    fn shared_endpoint_still_completely_dominated() {
        let p = vrep_to_hrep(alloc::vec![ints(&[0, 1]), ints(&[1, 0])], alloc::vec![]).unwrap();
        let q = vrep_to_hrep(
            alloc::vec![vector(&[(1, 2), (1, 2)]), vector(&[(3, 2), (0, 1)])],
            alloc::vec![],
        )
        .unwrap();
        assert_eq!(
            classify_polytope_dominance(&p, &q).unwrap(),
            DominanceRelation::CompletelyDominates
        );
    }

    #[test]
    fn partial_dominance() {
        // P dominates the left part of Q only.
        let p = crate::Polytope::point(ints(&[1, 1])).unwrap();
        let q = vrep_to_hrep(alloc::vec![ints(&[0, 3]), ints(&[3, 2])], alloc::vec![]).unwrap();
        assert_eq!(
            classify_polytope_dominance(&p, &q).unwrap(),
            DominanceRelation::PartiallyDominates
        );
        assert_eq!(
            classify_polytope_dominance(&q, &p).unwrap(),
            DominanceRelation::PartiallyDominatedBy
        );
    }

    #[test]
    fn mismatched_dimensions() {
        let p = crate::Polytope::point(ints(&[1, 1])).unwrap();
        let q = crate::Polytope::point(ints(&[1, 1, 1])).unwrap();
        assert!(classify_polytope_dominance(&p, &q).is_err());
    }
}
