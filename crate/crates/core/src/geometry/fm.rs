//! Fourier–Motzkin elimination with exact LP redundancy pruning.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::lp::{solve_lp, Constraint, LinearProgram, LpOutcome};
use crate::rational::{normalize_leading, Rational};

/// `normal · x <= offset`.
pub(crate) type Row = (Vec<Rational>, Rational);

/// Canonical scaling; `Err(())` for a violated constant row, `Ok(None)` for
/// a trivially satisfied one.
fn canonical(mut row: Row) -> Result<Option<Row>, ()> {
    match normalize_leading(&mut row.0) {
        Some(lead) => {
            row.1 /= lead;
            Ok(Some(row))
        }
        None if row.1.is_negative() => Err(()),
        None => Ok(None),
    }
}

fn tidy(rows: impl IntoIterator<Item = Row>) -> Option<Vec<Row>> {
    let mut set = BTreeSet::new();
    for row in rows {
        if let Some(r) = canonical(row).ok()? {
            set.insert(r);
        }
    }
    Some(set.into_iter().collect())
}

fn feasibility_lp(rows: &[Row], ncols: usize) -> LinearProgram {
    let mut lp = LinearProgram::new(ncols);
    for (a, b) in rows {
        lp.push(Constraint::le(a.clone(), b.clone()));
    }
    lp
}

pub(crate) fn is_feasible(rows: &[Row], ncols: usize) -> bool {
    !solve_lp(&feasibility_lp(rows, ncols)).is_infeasible()
}

/// Drops every row implied by the others.
pub(crate) fn remove_redundant(rows: Vec<Row>, ncols: usize) -> Vec<Row> {
    let mut kept = rows;
    let mut i = 0;
    while i < kept.len() {
        let others: Vec<Row> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, r)| r.clone())
            .collect();
        let (a, b) = &kept[i];
        let lp = feasibility_lp(&others, ncols).with_objective(a.iter().map(|x| -x).collect());
        let redundant = match solve_lp(&lp) {
            LpOutcome::Optimal(sol) => -sol.value <= *b,
            LpOutcome::Unbounded => false,
            LpOutcome::Infeasible => false,
        };
        if redundant {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept
}

/// Eliminates the coordinates in `drop`. Returns `None` when the system is
/// infeasible; otherwise an irredundant system over the remaining
/// coordinates, in their original order.
pub(crate) fn eliminate(rows: Vec<Row>, ncols: usize, drop: &[usize]) -> Option<Vec<Row>> {
    let mut rows = tidy(rows)?;
    if !is_feasible(&rows, ncols) {
        return None;
    }
    let mut order: Vec<usize> = drop.to_vec();
    order.sort_unstable();
    order.dedup();
    let mut width = ncols;
    for &j in order.iter().rev() {
        rows = eliminate_one(rows, j)?;
        for (a, _) in rows.iter_mut() {
            a.remove(j);
        }
        width -= 1;
        rows = tidy(rows)?;
        rows = remove_redundant(rows, width);
    }
    Some(rows)
}

fn eliminate_one(rows: Vec<Row>, j: usize) -> Option<Vec<Row>> {
    let set: BTreeSet<&Row> = rows.iter().collect();
    let pivot = rows.iter().position(|(a, b)| {
        if a[j].is_zero() {
            return false;
        }
        let neg: Row = (a.iter().map(|x| -x).collect(), -b);
        set.contains(&neg)
    });

    if let Some(p) = pivot {
        // Equality a·x = b: substitute x_j everywhere else.
        let (pa, pb) = rows[p].clone();
        let neg_a: Vec<Rational> = pa.iter().map(|x| -x).collect();
        let neg_b = -&pb;
        let out: Vec<Row> = rows
            .into_iter()
            .filter(|(a, b)| !((*a == pa && *b == pb) || (*a == neg_a && *b == neg_b)))
            .map(|(mut a, mut b)| {
                if !a[j].is_zero() {
                    let f = &a[j] / &pa[j];
                    for (x, y) in a.iter_mut().zip(&pa) {
                        *x -= &f * y;
                    }
                    b -= &f * &pb;
                }
                (a, b)
            })
            .collect();
        return tidy(out);
    }

    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for row in rows {
        if row.0[j].is_positive() {
            pos.push(row);
        } else if row.0[j].is_negative() {
            neg.push(row);
        } else {
            out.push(row);
        }
    }
    for (pa, pb) in &pos {
        for (na, nb) in &neg {
            let (alpha, beta) = (-&na[j], pa[j].clone());
            let a: Vec<Rational> = pa.iter().zip(na).map(|(x, y)| &alpha * x + &beta * y).collect();
            let b = &alpha * pb + &beta * nb;
            out.push((a, b));
        }
    }
    tidy(out)
}
