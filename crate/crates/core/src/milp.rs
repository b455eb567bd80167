//! Lexicographic branch and bound with Hamming exclusion cuts.

use alloc::collections::{BTreeMap, BTreeSet};
use core::cmp::Reverse;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lp::{lexicographic_stages, solve_lp, Bound, Constraint, LinearProgram, LpOutcome};
use crate::problem::{MomilpProblem, Slice, VarKind, Variable};
use crate::rational::{int, Rational};

/// Number of coordinates where `a` and `b` differ.
pub fn hamming_distance(a: &[i64], b: &[i64]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::input(format!("lengths {} and {} differ", a.len(), b.len())));
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// `H(x, reference) >= 1` over the structural integer variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HammingCut {
    pub reference: Slice,
}

impl HammingCut {
    pub fn new(reference: Slice) -> Self {
        HammingCut { reference }
    }
}

/// Adds the linearized cut. Binary variables use the classical
/// `sum_{x̂=0} x + sum_{x̂=1} (1 - x) >= 1`; a general integer `x` in
/// `[l, u]` gets a deviation indicator `d` and a direction indicator `s`
/// with `M = u - l`:
///
/// ```text
/// -M d <= x - x̂ <= M d
/// x - x̂ >=  1 - (M+1)(1 - s) - (M+1)(1 - d)
/// x - x̂ <= -1 + (M+1) s       + (M+1)(1 - d)
/// ```
///
/// and the `d` terms join the binary sum.
pub fn add_hamming_cut(problem: &MomilpProblem, cut: &HammingCut) -> Result<MomilpProblem> {
    problem.check_slice(&cut.reference)?;
    let mut out = problem.clone();
    let ints = problem.integer_indices();
    let mut sum: Vec<(usize, Rational)> = Vec::new();
    let mut rhs = int(1);
    for (k, (&i, &r)) in ints.iter().zip(&cut.reference.0).enumerate() {
        let (lo, hi) = problem.integer_range(i);
        if lo == hi {
            continue;
        }
        if problem.is_binary(i) {
            if r == 0 {
                sum.push((i, int(1)));
            } else {
                sum.push((i, int(-1)));
                rhs -= int(1);
            }
            continue;
        }
        let m = int(hi - lo);
        let m1 = &m + int(1);
        let name = &problem.variables()[i].name;
        let d = out.push_variable(aux(format!("_d{k}_{name}")));
        let s = out.push_variable(aux(format!("_s{k}_{name}")));
        let n = out.num_vars();
        let row = |terms: &[(usize, Rational)]| {
            let mut row = vec![int(0); n];
            for (j, c) in terms {
                row[*j] += c;
            }
            row
        };
        let r = int(r);
        out.push_constraint(Constraint::le(row(&[(i, int(1)), (d, -&m)]), r.clone()));
        out.push_constraint(Constraint::ge(row(&[(i, int(1)), (d, m.clone())]), r.clone()));
        // x - (M+1) s - (M+1) d >= x̂ + 1 - 2(M+1)
        out.push_constraint(Constraint::ge(
            row(&[(i, int(1)), (s, -&m1), (d, -&m1)]),
            &r + int(1) - int(2) * &m1,
        ));
        // x - (M+1) s + (M+1) d <= x̂ - 1 + (M+1)
        out.push_constraint(Constraint::le(
            row(&[(i, int(1)), (s, -&m1), (d, m1.clone())]),
            &r - int(1) + &m1,
        ));
        sum.push((d, int(1)));
    }
    let mut row = vec![int(0); out.num_vars()];
    for (j, c) in sum {
        row[j] += c;
    }
    out.push_constraint(Constraint::ge(row, rhs));
    Ok(out)
}

fn aux(name: alloc::string::String) -> Variable {
    Variable {
        name,
        kind: VarKind::Integer,
        lower: Some(int(0)),
        upper: Some(int(1)),
        auxiliary: true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilpSolution {
    /// Values of the problem's own variables (auxiliaries dropped).
    pub point: Vec<Rational>,
    /// Optimal value of each objective, in priority order.
    pub values: Vec<Rational>,
    pub slice: Slice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MilpOutcome {
    Optimal(MilpSolution),
    Infeasible,
}

impl MilpOutcome {
    pub fn optimal(self) -> Option<MilpSolution> {
        match self {
            MilpOutcome::Optimal(s) => Some(s),
            MilpOutcome::Infeasible => None,
        }
    }
}

fn check_objectives(problem: &MomilpProblem, objectives: &[Vec<Rational>]) -> Result<()> {
    if objectives.is_empty() {
        return Err(Error::input("at least one objective is required"));
    }
    if objectives.iter().any(|o| o.len() != problem.num_vars()) {
        return Err(Error::input("objective length differs from the variable count"));
    }
    Ok(())
}

fn unbounded() -> Error {
    Error::Pipeline("objective is unbounded below".into())
}

/// Lexicographic minimum over the mixed-integer feasible set with every cut
/// slice excluded. Best-first branch and bound on the lexicographic LP
/// bound; most fractional variable first, ties to the lowest index.
///
/// Branching is on the structural integer variables only. Once they are
/// integral at a node the slice is settled: a cut slice is split off the
/// node's box, and any other slice admits an integral assignment of the cut
/// indicators, so the node's relaxation optimum is attained.
pub fn solve_milp_lex(
    problem: &MomilpProblem,
    objectives: &[Vec<Rational>],
    cuts: &[HammingCut],
) -> Result<MilpOutcome> {
    check_objectives(problem, objectives)?;
    let mut cut_problem = problem.clone();
    for cut in cuts {
        cut_problem = add_hamming_cut(&cut_problem, cut)?;
    }
    let objectives: Vec<Vec<Rational>> = objectives.iter().map(|o| cut_problem.pad(o)).collect();
    let cut_slices: BTreeSet<Slice> = cuts.iter().map(|c| c.reference.clone()).collect();
    let Some((mut point, values)) = branch_and_bound(&cut_problem, &objectives, &cut_slices)? else {
        return Ok(MilpOutcome::Infeasible);
    };
    point.truncate(problem.num_vars());
    let slice = problem.slice_of(&point);
    Ok(MilpOutcome::Optimal(MilpSolution { point, values, slice }))
}

enum NodeBound {
    Lex(Vec<Rational>),
    Unbounded,
}

fn solve_node(lp: &LinearProgram, objectives: &[Vec<Rational>]) -> Option<(NodeBound, Vec<Rational>)> {
    let (stages, last) = lexicographic_stages(lp, objectives);
    match last {
        LpOutcome::Optimal(sol) => Some((NodeBound::Lex(stages.into_iter().map(|(_, s)| s.value).collect()), sol.point)),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => {
            let point = solve_lp(&lp.clone().with_objective(vec![int(0); lp.num_vars()]))
                .optimal()
                .expect("a feasible program with zero objective has an optimum")
                .point;
            Some((NodeBound::Unbounded, point))
        }
    }
}

/// Most fractional integer coordinate, ties to the lowest index.
fn most_fractional(point: &[Rational], candidates: &[usize]) -> Option<usize> {
    let half = Rational::new(1.into(), 2.into());
    let mut best: Option<(Rational, usize)> = None;
    for &i in candidates {
        let frac = point[i].fract();
        if frac == int(0) {
            continue;
        }
        let frac = if frac < int(0) { frac + int(1) } else { frac };
        let dist = if frac > half { &frac - &half } else { &half - &frac };
        if best.as_ref().is_none_or(|(d, _)| dist < *d) {
            best = Some((dist, i));
        }
    }
    best.map(|(_, i)| i)
}

fn branch_and_bound(
    problem: &MomilpProblem,
    objectives: &[Vec<Rational>],
    cut: &BTreeSet<Slice>,
) -> Result<Option<(Vec<Rational>, Vec<Rational>)>> {
    let structural = problem.integer_indices();
    let root = problem.relaxation();
    // Key: None for unbounded nodes before Some(lex bound); equal bounds go
    // deepest first, then by creation order.
    type Key = (Option<Vec<Rational>>, Reverse<usize>, u64);
    let mut queue: BTreeMap<Key, (Vec<Bound>, Vec<Rational>)> = BTreeMap::new();
    let mut seq = 0u64;
    let mut incumbent: Option<(Vec<Rational>, Vec<Rational>)> = None;

    let mut enqueue = |queue: &mut BTreeMap<Key, _>, depth: usize, bounds: Vec<Bound>, incumbent: &Option<(Vec<Rational>, Vec<Rational>)>| {
        let mut lp = root.clone();
        lp.bounds = bounds;
        if let Some((bound, point)) = solve_node(&lp, objectives) {
            let key = match bound {
                NodeBound::Lex(v) => {
                    if incumbent.as_ref().is_some_and(|(best, _)| v >= *best) {
                        return;
                    }
                    Some(v)
                }
                NodeBound::Unbounded => None,
            };
            queue.insert((key, Reverse(depth), seq), (lp.bounds, point));
            seq += 1;
        }
    };

    enqueue(&mut queue, 0, root.bounds.clone(), &incumbent);
    while let Some(((key, Reverse(depth), _), (bounds, point))) = queue.pop_first() {
        if let (Some(v), Some((best, _))) = (&key, &incumbent) {
            if v >= best {
                break;
            }
        }
        if let Some(j) = most_fractional(&point, &structural) {
            let mut down = bounds.clone();
            down[j].upper = Some(Rational::from_integer(point[j].floor().to_integer()));
            enqueue(&mut queue, depth + 1, down, &incumbent);
            let mut up = bounds;
            up[j].lower = Some(Rational::from_integer(point[j].ceil().to_integer()));
            enqueue(&mut queue, depth + 1, up, &incumbent);
            continue;
        }
        let slice = problem.slice_of(&point);
        if !cut.contains(&slice) {
            match key {
                None => return Err(unbounded()),
                Some(v) => incumbent = Some((v, point)),
            }
            continue;
        }
        // Split the cut slice off: below, at, and above its value in the
        // first coordinate the box still leaves free.
        let Some((j, v)) = structural
            .iter()
            .zip(&slice.0)
            .find(|(&j, _)| bounds[j].lower != bounds[j].upper)
            .map(|(&j, &v)| (j, int(v)))
        else {
            continue;
        };
        let mut below = bounds.clone();
        below[j].upper = Some(&v - int(1));
        let mut at = bounds.clone();
        at[j] = Bound::fixed(v.clone());
        let mut above = bounds;
        above[j].lower = Some(&v + int(1));
        for child in [below, at, above] {
            if child[j].lower.as_ref().zip(child[j].upper.as_ref()).is_none_or(|(l, u)| l <= u) {
                enqueue(&mut queue, depth + 1, child, &incumbent);
            }
        }
    }
    Ok(incumbent.map(|(values, point)| (point, values)))
}

/// Reference solver: lexicographic LP on every slice not cut, keeping the
/// lexicographically smallest (first slice on ties).
pub fn solve_milp_by_enumeration(
    problem: &MomilpProblem,
    objectives: &[Vec<Rational>],
    cuts: &[HammingCut],
) -> Result<MilpOutcome> {
    check_objectives(problem, objectives)?;
    let mut best: Option<MilpSolution> = None;
    for slice in problem.slices() {
        if cuts.iter().any(|c| c.reference == slice) {
            continue;
        }
        let (stages, last) = lexicographic_stages(&problem.slice_lp(&slice), objectives);
        match last {
            LpOutcome::Infeasible => continue,
            LpOutcome::Unbounded => return Err(unbounded()),
            LpOutcome::Optimal(sol) => {
                let values: Vec<Rational> = stages.into_iter().map(|(_, s)| s.value).collect();
                if best.as_ref().is_none_or(|b| values < b.values) {
                    best = Some(MilpSolution {
                        point: sol.point,
                        values,
                        slice,
                    });
                }
            }
        }
    }
    Ok(best.map_or(MilpOutcome::Infeasible, MilpOutcome::Optimal))
}
