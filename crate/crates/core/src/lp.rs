//! Dense exact simplex over rationals.
//!
//! Two-phase method with one artificial column per row and Bland's rule for
//! both the entering and leaving choice, so every solve terminates and is
//! reproducible bit for bit. Alongside the primal point the solver returns
//! the constraint multipliers of the final basis, which
//! [`verify_certificate`] can check independently.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::rational::{dot, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Le, rhs)
    }

    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Ge, rhs)
    }

    pub fn eq(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        dot(&self.coeffs, x) == self.rhs
    }
}

/// Variable bounds; `None` is infinite.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bound {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl Bound {
    pub fn free() -> Self {
        Bound::default()
    }

    pub fn nonneg() -> Self {
        Bound {
            lower: Some(Rational::zero()),
            upper: None,
        }
    }

    pub fn between(lower: Rational, upper: Rational) -> Self {
        Bound {
            lower: Some(lower),
            upper: Some(upper),
        }
    }

    pub fn fixed(value: Rational) -> Self {
        Bound::between(value.clone(), value)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lower.as_ref().is_none_or(|l| l <= x) && self.upper.as_ref().is_none_or(|u| x <= u)
    }
}

/// `min objective · x` subject to the constraints and bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bound>,
}

impl LinearProgram {
    /// `n` free variables, zero objective, no constraints.
    pub fn new(n: usize) -> Self {
        LinearProgram {
            objective: vec![Rational::zero(); n],
            constraints: Vec::new(),
            bounds: vec![Bound::free(); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn push(&mut self, constraint: Constraint) {
        assert_eq!(constraint.coeffs.len(), self.num_vars(), "row length mismatch");
        self.constraints.push(constraint);
    }

    pub fn with_objective(mut self, objective: Vec<Rational>) -> Self {
        assert_eq!(objective.len(), self.num_vars());
        self.objective = objective;
        self
    }

    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self.bounds.iter().zip(x).all(|(b, v)| b.contains(v))
            && self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    fn check_shape(&self) {
        let n = self.num_vars();
        assert_eq!(self.bounds.len(), n, "bound count mismatch");
        for c in &self.constraints {
            assert_eq!(c.coeffs.len(), n, "row length mismatch");
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub point: Vec<Rational>,
    pub value: Rational,
    /// One multiplier per constraint: `>= 0` on `Ge` rows, `<= 0` on `Le`
    /// rows, free on equalities.
    pub duals: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal(_))
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible)
    }
}

enum Column {
    Shift { col: usize, lower: Rational },
    Mirror { col: usize, upper: Rational },
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    cost: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = core::mem::take(&mut self.rows[r]);
        let nonzero: Vec<usize> = (0..=self.ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for &j in &nonzero {
                row[j] -= &f * &pivot_row[j];
            }
        };
        for row in self.rows.iter_mut() {
            if !row.is_empty() {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Bland's rule. Returns `false` when the objective is unbounded.
    fn run(&mut self, eligible: usize) -> bool {
        loop {
            let Some(enter) = (0..eligible).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / &row[enter];
                let better = match &best {
                    None => true,
                    Some((b, r)) => match ratio.cmp(r) {
                        Ordering::Less => true,
                        Ordering::Equal => self.basis[i] < self.basis[*b],
                        Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((leave, _)) = best else {
                return false;
            };
            self.pivot(leave, enter);
        }
    }
}

/// Exact optimum, or the correct infeasible/unbounded status.
pub fn solve_lp(lp: &LinearProgram) -> LpOutcome {
    lp.check_shape();
    let n = lp.num_vars();

    // Substitute every variable by nonnegative columns.
    let mut columns = Vec::with_capacity(n);
    let mut ncols_x = 0;
    for b in &lp.bounds {
        match (&b.lower, &b.upper) {
            (Some(l), _) => {
                columns.push(Column::Shift {
                    col: ncols_x,
                    lower: l.clone(),
                });
                ncols_x += 1;
            }
            (None, Some(u)) => {
                columns.push(Column::Mirror {
                    col: ncols_x,
                    upper: u.clone(),
                });
                ncols_x += 1;
            }
            (None, None) => {
                columns.push(Column::Split {
                    pos: ncols_x,
                    neg: ncols_x + 1,
                });
                ncols_x += 2;
            }
        }
    }

    let transform = |coeffs: &[Rational], rhs: &Rational| -> (Vec<Rational>, Rational) {
        let mut row = vec![Rational::zero(); ncols_x];
        let mut rhs = rhs.clone();
        for (a, col) in coeffs.iter().zip(&columns) {
            if a.is_zero() {
                continue;
            }
            match col {
                Column::Shift { col, lower } => {
                    row[*col] = a.clone();
                    rhs -= a * lower;
                }
                Column::Mirror { col, upper } => {
                    row[*col] = -a.clone();
                    rhs -= a * upper;
                }
                Column::Split { pos, neg } => {
                    row[*pos] = a.clone();
                    row[*neg] = -a.clone();
                }
            }
        }
        (row, rhs)
    };

    let mut std_rows: Vec<(Vec<Rational>, Relation, Rational)> = lp
        .constraints
        .iter()
        .map(|c| {
            let (row, rhs) = transform(&c.coeffs, &c.rhs);
            (row, c.relation, rhs)
        })
        .collect();
    for (b, col) in lp.bounds.iter().zip(&columns) {
        if let (Column::Shift { col, lower }, Some(u)) = (col, &b.upper) {
            let mut row = vec![Rational::zero(); ncols_x];
            row[*col] = Rational::from_integer(1.into());
            std_rows.push((row, Relation::Le, u - lower));
        }
    }

    let m = std_rows.len();
    let nslack = std_rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let art_start = ncols_x + nslack;
    let ncols = art_start + m;
    let one = Rational::from_integer(1.into());

    let mut rows = Vec::with_capacity(m);
    let mut signs = Vec::with_capacity(m);
    let mut slack = ncols_x;
    for (i, (coeffs, rel, rhs)) in std_rows.into_iter().enumerate() {
        let mut row = vec![Rational::zero(); ncols + 1];
        row[..ncols_x].clone_from_slice(&coeffs);
        match rel {
            Relation::Le => {
                row[slack] = one.clone();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -one.clone();
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[ncols] = rhs;
        let negate = row[ncols].is_negative();
        if negate {
            for x in row.iter_mut() {
                if !x.is_zero() {
                    *x = -core::mem::take(x);
                }
            }
        }
        row[art_start + i] = one.clone();
        signs.push(if negate { -one.clone() } else { one.clone() });
        rows.push(row);
    }

    let mut cost = vec![Rational::zero(); ncols + 1];
    for row in &rows {
        for j in 0..art_start {
            if !row[j].is_zero() {
                cost[j] -= &row[j];
            }
        }
        cost[ncols] -= &row[ncols];
    }
    let mut tab = Tableau {
        rows,
        cost,
        basis: (art_start..ncols).collect(),
        ncols,
    };

    // Phase one always has a finite optimum.
    tab.run(ncols);
    if !tab.cost[ncols].is_zero() {
        return LpOutcome::Infeasible;
    }
    for i in 0..m {
        if tab.basis[i] >= art_start {
            if let Some(j) = (0..art_start).find(|&j| !tab.rows[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    let mut std_cost = vec![Rational::zero(); ncols];
    for (c, col) in lp.objective.iter().zip(&columns) {
        match col {
            Column::Shift { col, .. } => std_cost[*col] = c.clone(),
            Column::Mirror { col, .. } => std_cost[*col] = -c.clone(),
            Column::Split { pos, neg } => {
                std_cost[*pos] = c.clone();
                std_cost[*neg] = -c.clone();
            }
        }
    }
    let mut cost: Vec<Rational> = std_cost.clone();
    cost.push(Rational::zero());
    for (row, &b) in tab.rows.iter().zip(&tab.basis) {
        let cb = &std_cost[b];
        if cb.is_zero() {
            continue;
        }
        for (x, a) in cost.iter_mut().zip(row) {
            if !a.is_zero() {
                *x -= cb * a;
            }
        }
    }
    tab.cost = cost;
    if !tab.run(art_start) {
        return LpOutcome::Unbounded;
    }
    debug_assert!((0..art_start).all(|j| !tab.cost[j].is_negative()));

    let mut xs = vec![Rational::zero(); ncols_x];
    for (row, &b) in tab.rows.iter().zip(&tab.basis) {
        if b < ncols_x {
            xs[b] = row[ncols].clone();
        }
    }
    let point: Vec<Rational> = columns
        .iter()
        .map(|col| match col {
            Column::Shift { col, lower } => lower + &xs[*col],
            Column::Mirror { col, upper } => upper - &xs[*col],
            Column::Split { pos, neg } => &xs[*pos] - &xs[*neg],
        })
        .collect();
    let duals = (0..lp.constraints.len())
        .map(|i| -(&tab.cost[art_start + i]) * &signs[i])
        .collect();
    let value = dot(&lp.objective, &point);
    LpOutcome::Optimal(LpSolution {
        point,
        value,
        duals,
    })
}

/// Each stage's program and optimum; the final status is `Optimal` only if
/// every stage was.
pub fn lexicographic_stages(
    lp: &LinearProgram,
    objectives: &[Vec<Rational>],
) -> (Vec<(LinearProgram, LpSolution)>, LpOutcome) {
    assert!(!objectives.is_empty(), "at least one objective required");
    let mut stages = Vec::with_capacity(objectives.len());
    let mut current = lp.clone();
    let mut last = LpOutcome::Infeasible;
    for obj in objectives {
        current.objective = obj.clone();
        match solve_lp(&current) {
            LpOutcome::Optimal(sol) => {
                let stage = current.clone();
                current.push(Constraint::eq(obj.clone(), sol.value.clone()));
                stages.push((stage, sol.clone()));
                last = LpOutcome::Optimal(sol);
            }
            other => return (stages, other),
        }
    }
    (stages, last)
}

/// Minimizes `objectives` in priority order; each stage keeps the earlier
/// optima as equalities. The returned value is the last stage's.
pub fn solve_lexicographic(lp: &LinearProgram, objectives: &[Vec<Rational>]) -> LpOutcome {
    lexicographic_stages(lp, objectives).1
}

/// Checks an optimality certificate without trusting the solver: primal
/// feasibility, multiplier signs, complementary slackness, and reduced costs
/// consistent with the bound each variable sits at. Together these prove
/// `solution.point` optimal by weak duality.
pub fn verify_certificate(lp: &LinearProgram, solution: &LpSolution) -> bool {
    let x = &solution.point;
    if !lp.is_feasible_point(x) || solution.duals.len() != lp.constraints.len() {
        return false;
    }
    if dot(&lp.objective, x) != solution.value {
        return false;
    }
    let mut reduced = lp.objective.clone();
    for (c, lambda) in lp.constraints.iter().zip(&solution.duals) {
        let sign_ok = match c.relation {
            Relation::Ge => !lambda.is_negative(),
            Relation::Le => !lambda.is_positive(),
            Relation::Eq => true,
        };
        if !sign_ok || (!lambda.is_zero() && !c.is_tight(x)) {
            return false;
        }
        for (r, a) in reduced.iter_mut().zip(&c.coeffs) {
            *r -= lambda * a;
        }
    }
    reduced.iter().zip(&lp.bounds).zip(x).all(|((r, b), v)| {
        if r.is_positive() {
            b.lower.as_ref() == Some(v)
        } else if r.is_negative() {
            b.upper.as_ref() == Some(v)
        } else {
            true
        }
    })
}
