//! Brute-force reference fronts by the ε-constraint method.
//!
//! Kept deliberately simple: every slice is enumerated and solved as a
//! lexicographic LP. No Hamming cuts, no projection, no polyhedral
//! geometry.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lp::{lexicographic_stages, solve_lp, Constraint, LpOutcome};
use crate::phase3::ParetoFront;
use crate::problem::MomilpProblem;
use crate::rational::{dominates, int, Rational};

/// Nondominated points found on an ε grid, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleFront {
    pub k: usize,
    pub points: Vec<Vec<Rational>>,
    pub resolution: usize,
}

/// Largest number of grid cells accepted.
pub const GRID_LIMIT: u128 = 1 << 20;

/// Minimum and maximum of every objective over the feasible set.
fn objective_ranges(problem: &MomilpProblem) -> Result<Option<Vec<(Rational, Rational)>>> {
    let mut ranges: Vec<Option<(Rational, Rational)>> = vec![None; problem.k()];
    let mut feasible = false;
    for slice in problem.slices() {
        let lp = problem.slice_lp(&slice);
        for (i, obj) in problem.objectives().iter().enumerate() {
            let mut extremes = Vec::with_capacity(2);
            for sign in [1, -1] {
                let objective: Vec<Rational> = obj.iter().map(|c| c * int(sign)).collect();
                match solve_lp(&lp.clone().with_objective(objective)) {
                    LpOutcome::Infeasible => break,
                    LpOutcome::Unbounded => {
                        return Err(Error::Pipeline("the oracle needs bounded objectives".into()))
                    }
                    LpOutcome::Optimal(sol) => extremes.push(sol.value * int(sign) + &problem.offsets()[i]),
                }
            }
            if extremes.len() < 2 {
                break;
            }
            feasible = true;
            let (lo, hi) = (extremes[0].clone(), extremes[1].clone());
            ranges[i] = Some(match ranges[i].take() {
                None => (lo, hi),
                Some((a, b)) => (a.min(lo), b.max(hi)),
            });
        }
    }
    if !feasible {
        return Ok(None);
    }
    Ok(Some(ranges.into_iter().map(|r| r.expect("every objective has a range")).collect()))
}

/// `resolution` evenly spaced values from `lo` to `hi`; just `hi` when the
/// resolution is one.
fn grid_axis(lo: &Rational, hi: &Rational, resolution: usize) -> Vec<Rational> {
    if resolution == 1 {
        return vec![hi.clone()];
    }
    let steps = int(resolution as i64 - 1);
    (0..resolution)
        .map(|j| lo + (hi - lo) * int(j as i64) / &steps)
        .collect()
}

/// For each cell of a `resolution^(k-1)` grid over objectives `2..k`,
/// minimizes `(f_1, …, f_k)` lexicographically subject to `f_i <= ε_i`
/// over every slice, and keeps the best slice's objective vector.
pub fn oracle_front(problem: &MomilpProblem, resolution: usize, slice_limit: u128) -> Result<OracleFront> {
    if resolution == 0 {
        return Err(Error::input("resolution must be positive"));
    }
    let k = problem.k();
    let slices = problem.slice_count();
    if slices > slice_limit {
        return Err(Error::Limit(alloc::format!("{slices} slices exceed the limit of {slice_limit}")));
    }
    let cells = (resolution as u128).saturating_pow(k as u32 - 1);
    if cells.saturating_mul(slices) > GRID_LIMIT {
        return Err(Error::Limit(alloc::format!("{cells} grid cells over {slices} slices")));
    }
    let Some(ranges) = objective_ranges(problem)? else {
        return Ok(OracleFront {
            k,
            points: Vec::new(),
            resolution,
        });
    };
    let axes: Vec<Vec<Rational>> = ranges[1..]
        .iter()
        .map(|(lo, hi)| grid_axis(lo, hi, resolution))
        .collect();

    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut cell = vec![0usize; k - 1];
    loop {
        let eps: Vec<&Rational> = cell.iter().zip(&axes).map(|(&j, axis)| &axis[j]).collect();
        let mut best: Option<Vec<Rational>> = None;
        for slice in problem.slices() {
            let mut lp = problem.slice_lp(&slice);
            for (i, e) in eps.iter().enumerate() {
                let row = problem.objectives()[i + 1].clone();
                lp.push(Constraint::le(row, *e - &problem.offsets()[i + 1]));
            }
            let (_, last) = lexicographic_stages(&lp, problem.objectives());
            if let LpOutcome::Optimal(sol) = last {
                let y = problem.evaluate(&sol.point);
                if best.as_ref().is_none_or(|b| y < *b) {
                    best = Some(y);
                }
            }
        }
        if let Some(y) = best {
            found.insert(y);
        }
        let mut i = 0;
        loop {
            if i == cell.len() {
                return finish(k, found, resolution);
            }
            cell[i] += 1;
            if cell[i] < resolution {
                break;
            }
            cell[i] = 0;
            i += 1;
        }
    }
}

fn finish(k: usize, found: BTreeSet<Vec<Rational>>, resolution: usize) -> Result<OracleFront> {
    let all: Vec<Vec<Rational>> = found.into_iter().collect();
    let points: Vec<Vec<Rational>> = all
        .iter()
        .filter(|y| !all.iter().any(|z| dominates(z, y)))
        .cloned()
        .collect();
    if points.len() != all.len() {
        return Err(Error::Pipeline("oracle produced a dominated point".into()));
    }
    Ok(OracleFront { k, points, resolution })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    /// Oracle points the front does not contain.
    pub misses: Vec<Vec<Rational>>,
    /// Front points dominated by some oracle point.
    pub false_claims: Vec<Vec<Rational>>,
    /// Number of front points examined.
    pub sampled: usize,
}

impl CheckReport {
    pub fn agrees(&self) -> bool {
        self.misses.is_empty() && self.false_claims.is_empty()
    }
}

/// Random point of the polytope's vertex hull; some weights are zeroed so
/// that faces get sampled too.
pub fn sample_convex(vertices: &[Vec<Rational>], rng: &mut impl Rng) -> Vec<Rational> {
    let weights: Vec<i64> = vertices
        .iter()
        .map(|_| if rng.gen_ratio(1, 4) { 0 } else { rng.gen_range(1..=1000) })
        .collect();
    let total: i64 = weights.iter().sum();
    if total == 0 {
        return vertices[rng.gen_range(0..vertices.len())].clone();
    }
    let total = int(total);
    let dim = vertices[0].len();
    let mut y = vec![int(0); dim];
    for (v, w) in vertices.iter().zip(&weights) {
        let w = int(*w);
        for (a, b) in y.iter_mut().zip(v) {
            *a += &w * b;
        }
    }
    y.into_iter().map(|a| a / &total).collect()
}

/// Compares a front with oracle points. Sampled points are the vertices and
/// centroid of every region base plus `samples` seeded random points
/// spread round-robin over the regions, each kept only if the front
/// contains it.
pub fn check_front(front: &ParetoFront, oracle: &OracleFront, samples: usize, seed: u64) -> Result<CheckReport> {
    if front.k != oracle.k {
        return Err(Error::input("objective counts differ"));
    }
    let mut report = CheckReport::default();
    for y in &oracle.points {
        if !front.contains(y)? {
            report.misses.push(y.clone());
        }
    }
    let mut candidates: Vec<Vec<Rational>> = Vec::new();
    for r in &front.regions {
        candidates.extend(r.base.vertices().iter().cloned());
        candidates.extend(r.base.centroid());
    }
    if !front.regions.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for s in 0..samples {
            let region = &front.regions[s % front.regions.len()];
            candidates.push(sample_convex(region.base.vertices(), &mut rng));
        }
    }
    for y in candidates {
        if !front.contains(&y)? {
            continue;
        }
        report.sampled += 1;
        if oracle.points.iter().any(|z| dominates(z, &y)) {
            report.false_claims.push(y);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vrep_to_hrep;
    use crate::phase3::ParetoRegion;
    use crate::problem::{Slice, Variable};
    use crate::rational::{ints, rat, vector};

    fn t1() -> MomilpProblem {
        let unit = |n: &str| Variable::continuous(n, Some(int(0)), Some(int(1)));
        MomilpProblem::new(
            vec![Variable::binary("z"), unit("t0"), unit("t1")],
            vec![vector(&[(1, 2), (1, 1), (1, 1)]), vector(&[(-1, 2), (-1, 1), (-1, 2)])],
            vec![int(0), int(1)],
            vec![
                Constraint::le(ints(&[1, 1, 0]), int(1)),
                Constraint::le(ints(&[-1, 0, 1]), int(0)),
            ],
        )
        .unwrap()
    }

    fn region(vs: Vec<Vec<Rational>>) -> ParetoRegion {
        ParetoRegion {
            base: vrep_to_hrep(vs, vec![]).unwrap(),
            removals: vec![],
            piece_id: 0,
            slice: Slice(vec![]),
        }
    }

    #[test]
    fn t1_oracle_has_eleven_points_on_the_segment() {
        let o = oracle_front(&t1(), 11, 4096).unwrap();
        assert_eq!(o.points.len(), 11);
        assert!(o.points.contains(&ints(&[0, 1])));
        assert!(o.points.contains(&ints(&[1, 0])));
        assert!(o.points.iter().all(|y| &y[0] + &y[1] == int(1)));
        assert!(o.points.contains(&vector(&[(3, 5), (2, 5)])));
    }

    #[test]
    fn pure_integer_oracle_is_exact() {
        // Nondominated set of {(x, y) in {0..3}^2 : x + 2y >= 3, 2x + y >= 3}.
        let p = MomilpProblem::new(
            vec![Variable::integer("x", 0, 3), Variable::integer("y", 0, 3)],
            vec![ints(&[1, 0]), ints(&[0, 1])],
            vec![int(0), int(0)],
            vec![Constraint::ge(ints(&[1, 2]), int(3)), Constraint::ge(ints(&[2, 1]), int(3))],
        )
        .unwrap();
        let expected = vec![ints(&[0, 3]), ints(&[1, 1]), ints(&[3, 0])];
        for res in [4, 7, 21] {
            assert_eq!(oracle_front(&p, res, 4096).unwrap().points, expected);
        }
    }

    #[test]
    fn infeasible_problem_has_empty_oracle() {
        let p = MomilpProblem::new(
            vec![Variable::binary("z")],
            vec![ints(&[1]), ints(&[-1])],
            vec![int(0), int(0)],
            vec![Constraint::ge(ints(&[1]), rat(3, 2))],
        )
        .unwrap();
        assert!(oracle_front(&p, 5, 4096).unwrap().points.is_empty());
    }

    #[test]
    fn check_detects_misses_and_false_claims() {
        let o = oracle_front(&t1(), 11, 4096).unwrap();
        let good = ParetoFront {
            k: 2,
            regions: vec![region(vec![ints(&[0, 1]), ints(&[1, 0])])],
        };
        assert!(check_front(&good, &o, 100, 7).unwrap().agrees());

        let mut bad = good.clone();
        bad.regions.push(region(vec![vector(&[(1, 2), (1, 2)]), vector(&[(3, 2), (0, 1)])]));
        let report = check_front(&bad, &o, 100, 7).unwrap();
        assert!(report.misses.is_empty());
        assert!(!report.false_claims.is_empty());

        let half = ParetoFront {
            k: 2,
            regions: vec![region(vec![ints(&[0, 1]), vector(&[(1, 2), (1, 2)])])],
        };
        assert!(!check_front(&half, &o, 100, 7).unwrap().misses.is_empty());
    }

    #[test]
    fn empty_against_empty() {
        let front = ParetoFront { k: 2, regions: vec![] };
        let o = OracleFront {
            k: 2,
            points: vec![],
            resolution: 3,
        };
        let report = check_front(&front, &o, 50, 1).unwrap();
        assert!(report.agrees());
        assert_eq!(report.sampled, 0);
    }
}
