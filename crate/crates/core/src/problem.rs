//! Multi-objective mixed-integer linear programs and their slices.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lp::{Bound, Constraint, LinearProgram};
use crate::rational::{ceil, dot, floor, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    Integer,
    Continuous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
    /// Indicator introduced by a Hamming cut; never part of a slice.
    pub auxiliary: bool,
}

impl Variable {
    pub fn integer(name: impl Into<String>, lower: i64, upper: i64) -> Self {
        Variable {
            name: name.into(),
            kind: VarKind::Integer,
            lower: Some(int(lower)),
            upper: Some(int(upper)),
            auxiliary: false,
        }
    }

    pub fn binary(name: impl Into<String>) -> Self {
        Self::integer(name, 0, 1)
    }

    pub fn continuous(name: impl Into<String>, lower: Option<Rational>, upper: Option<Rational>) -> Self {
        Variable {
            name: name.into(),
            kind: VarKind::Continuous,
            lower,
            upper,
            auxiliary: false,
        }
    }

    fn bound(&self) -> Bound {
        Bound {
            lower: self.lower.clone(),
            upper: self.upper.clone(),
        }
    }

    fn is_binary(&self) -> bool {
        self.kind == VarKind::Integer && self.lower == Some(int(0)) && self.upper == Some(int(1))
    }
}

/// An assignment of every (non-auxiliary) integer variable, in the order of
/// [`MomilpProblem::integer_indices`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slice(pub Vec<i64>);

impl Slice {
    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

/// `min (C x + offsets)` subject to linear constraints, with integer
/// variables confined to finite ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomilpProblem {
    variables: Vec<Variable>,
    objectives: Vec<Vec<Rational>>,
    offsets: Vec<Rational>,
    constraints: Vec<Constraint>,
}

impl MomilpProblem {
    pub fn new(
        mut variables: Vec<Variable>,
        objectives: Vec<Vec<Rational>>,
        offsets: Vec<Rational>,
        constraints: Vec<Constraint>,
    ) -> Result<Self> {
        let n = variables.len();
        if objectives.is_empty() {
            return Err(Error::input("at least one objective is required"));
        }
        if offsets.len() != objectives.len() {
            return Err(Error::input("one offset per objective is required"));
        }
        if let Some(row) = objectives.iter().find(|r| r.len() != n) {
            return Err(Error::input(alloc::format!(
                "objective row has {} coefficients, expected {n}",
                row.len()
            )));
        }
        if let Some(c) = constraints.iter().find(|c| c.coeffs.len() != n) {
            return Err(Error::input(alloc::format!(
                "constraint row has {} coefficients, expected {n}",
                c.coeffs.len()
            )));
        }
        for v in variables.iter_mut() {
            if v.kind == VarKind::Integer {
                let (Some(lo), Some(hi)) = (&v.lower, &v.upper) else {
                    return Err(Error::input(alloc::format!(
                        "integer variable {} requires finite bounds",
                        v.name
                    )));
                };
                let (lo, hi) = (ceil(lo), floor(hi));
                if lo.to_i64().is_none() || hi.to_i64().is_none() {
                    return Err(Error::input(alloc::format!("bounds of {} are too large", v.name)));
                }
                v.lower = Some(Rational::from_integer(lo));
                v.upper = Some(Rational::from_integer(hi));
            }
            if let (Some(lo), Some(hi)) = (&v.lower, &v.upper) {
                if lo > hi {
                    return Err(Error::input(alloc::format!("variable {} has an empty range", v.name)));
                }
            }
        }
        Ok(MomilpProblem {
            variables,
            objectives,
            offsets,
            constraints,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    /// Number of objectives.
    pub fn k(&self) -> usize {
        self.objectives.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn objectives(&self) -> &[Vec<Rational>] {
        &self.objectives
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn integer_indices(&self) -> Vec<usize> {
        self.indices(|v| v.kind == VarKind::Integer && !v.auxiliary)
    }

    pub fn continuous_indices(&self) -> Vec<usize> {
        self.indices(|v| v.kind == VarKind::Continuous)
    }

    fn indices(&self, pred: impl Fn(&Variable) -> bool) -> Vec<usize> {
        (0..self.variables.len()).filter(|&i| pred(&self.variables[i])).collect()
    }

    pub(crate) fn is_binary(&self, index: usize) -> bool {
        self.variables[index].is_binary()
    }

    /// Inclusive range of an integer variable.
    pub fn integer_range(&self, index: usize) -> (i64, i64) {
        let v = &self.variables[index];
        let lo = v.lower.as_ref().and_then(|x| x.to_integer().to_i64()).unwrap_or(0);
        let hi = v.upper.as_ref().and_then(|x| x.to_integer().to_i64()).unwrap_or(0);
        (lo, hi)
    }

    /// Number of integer assignments, saturating.
    pub fn slice_count(&self) -> u128 {
        self.integer_indices().iter().fold(1u128, |acc, &i| {
            let (lo, hi) = self.integer_range(i);
            acc.saturating_mul((hi - lo + 1) as u128)
        })
    }

    /// All integer assignments in lexicographic order.
    pub fn slices(&self) -> SliceIter {
        let ranges: Vec<(i64, i64)> = self.integer_indices().iter().map(|&i| self.integer_range(i)).collect();
        let current = Some(ranges.iter().map(|r| r.0).collect());
        SliceIter { ranges, current }
    }

    pub fn check_slice(&self, slice: &Slice) -> Result<()> {
        let ints = self.integer_indices();
        if slice.0.len() != ints.len() {
            return Err(Error::input(alloc::format!(
                "slice assigns {} variables, problem has {} integer variables",
                slice.0.len(),
                ints.len()
            )));
        }
        for (&i, &v) in ints.iter().zip(&slice.0) {
            let (lo, hi) = self.integer_range(i);
            if v < lo || v > hi {
                return Err(Error::input(alloc::format!(
                    "value {v} for {} outside [{lo}, {hi}]",
                    self.variables[i].name
                )));
            }
        }
        Ok(())
    }

    /// Objective vector `C x + offsets`.
    pub fn evaluate(&self, x: &[Rational]) -> Vec<Rational> {
        self.objectives
            .iter()
            .zip(&self.offsets)
            .map(|(row, off)| dot(row, x) + off)
            .collect()
    }

    /// Continuous relaxation with a zero objective.
    pub fn relaxation(&self) -> LinearProgram {
        let n = self.num_vars();
        LinearProgram {
            objective: vec![Rational::from_integer(0.into()); n],
            constraints: self.constraints.clone(),
            bounds: self.variables.iter().map(Variable::bound).collect(),
        }
    }

    /// The linear program left after fixing the integer variables to `slice`.
    pub fn slice_lp(&self, slice: &Slice) -> LinearProgram {
        let mut lp = self.relaxation();
        for (&i, &v) in self.integer_indices().iter().zip(&slice.0) {
            lp.bounds[i] = Bound::fixed(int(v));
        }
        lp
    }

    /// Integer part of a point. Integer coordinates are expected integral.
    pub fn slice_of(&self, x: &[Rational]) -> Slice {
        Slice(
            self.integer_indices()
                .iter()
                .map(|&i| x[i].round().to_integer().to_i64().unwrap_or(0))
                .collect(),
        )
    }

    pub(crate) fn push_variable(&mut self, var: Variable) -> usize {
        self.variables.push(var);
        for row in self.objectives.iter_mut() {
            row.push(int(0));
        }
        for c in self.constraints.iter_mut() {
            c.coeffs.push(int(0));
        }
        self.variables.len() - 1
    }

    pub(crate) fn push_constraint(&mut self, c: Constraint) {
        debug_assert_eq!(c.coeffs.len(), self.num_vars());
        self.constraints.push(c);
    }

    /// Objective rows extended with zeros to the current variable count.
    pub(crate) fn pad(&self, row: &[Rational]) -> Vec<Rational> {
        let mut out = row.to_vec();
        out.resize(self.num_vars(), int(0));
        out
    }
}

pub struct SliceIter {
    ranges: Vec<(i64, i64)>,
    current: Option<Vec<i64>>,
}

impl Iterator for SliceIter {
    type Item = Slice;

    fn next(&mut self) -> Option<Slice> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.ranges[i].1 {
                next[i] += 1;
                for j in i + 1..next.len() {
                    next[j] = self.ranges[j].0;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(Slice(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ints;

    fn two_ints() -> MomilpProblem {
        MomilpProblem::new(
            vec![Variable::binary("a"), Variable::integer("b", -1, 1)],
            vec![ints(&[1, 0]), ints(&[0, 1])],
            vec![int(0), int(0)],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn slices_enumerate_lexicographically() {
        let p = two_ints();
        let all: Vec<Slice> = p.slices().collect();
        assert_eq!(all.len(), 6);
        assert_eq!(p.slice_count(), 6);
        assert_eq!(all[0], Slice(vec![0, -1]));
        assert_eq!(all[5], Slice(vec![1, 1]));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn no_integer_variables_gives_one_empty_slice() {
        let p = MomilpProblem::new(
            vec![Variable::continuous("x", Some(int(0)), None)],
            vec![ints(&[1]), ints(&[-1])],
            vec![int(0), int(1)],
            vec![],
        )
        .unwrap();
        assert_eq!(p.slices().collect::<Vec<_>>(), vec![Slice(vec![])]);
    }

    #[test]
    fn unbounded_integer_is_rejected() {
        let mut v = Variable::binary("x");
        v.upper = None;
        let err = MomilpProblem::new(vec![v], vec![ints(&[1])], vec![int(0)], vec![]).unwrap_err();
        assert!(alloc::format!("{err}").contains("integer variable x requires finite bounds"));
    }

    #[test]
    fn fractional_integer_bounds_round_inward() {
        let mut v = Variable::binary("x");
        v.lower = Some(crate::rational::rat(-3, 2));
        v.upper = Some(crate::rational::rat(5, 2));
        let p = MomilpProblem::new(vec![v], vec![ints(&[1])], vec![int(0)], vec![]).unwrap();
        assert_eq!(p.integer_range(0), (-1, 2));
    }

    #[test]
    fn slice_validation() {
        let p = two_ints();
        assert!(p.check_slice(&Slice(vec![1, 0])).is_ok());
        assert!(p.check_slice(&Slice(vec![2, 0])).is_err());
        assert!(p.check_slice(&Slice(vec![1])).is_err());
    }
}
