//! Double description method over integer vectors.
//!
//! Computes a minimal generating system (lineality basis plus extreme rays)
//! of the cone `{z : row · z >= 0 for every row}`. Rows are added one at a
//! time; adjacency of ray pairs uses the combinatorial zero-set test. All
//! arithmetic is on primitive integer vectors, so no fractions build up.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use crate::rational::make_primitive;

#[derive(Debug, Clone, Default)]
pub(crate) struct Cone {
    pub lines: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

#[derive(Clone, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(bits: usize) -> Self {
        ZeroSet(vec![0; bits.div_ceil(64).max(1)])
    }

    fn full(upto: usize, bits: usize) -> Self {
        let mut z = Self::new(bits);
        for i in 0..upto {
            z.set(i);
        }
        z
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Self) -> Self {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn contains_all(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// `alpha * u + beta * v`, made primitive.
fn combine(alpha: &BigInt, u: &[BigInt], beta: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = u.iter().zip(v).map(|(x, y)| alpha * x + beta * y).collect();
    make_primitive(&mut out);
    out
}

pub(crate) fn double_description(rows: &[Vec<BigInt>], dim: usize) -> Cone {
    let rows: Vec<&Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let nbits = rows.len();

    let mut lines: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<(Vec<BigInt>, ZeroSet)> = Vec::new();

    for (k, h) in rows.iter().enumerate() {
        if let Some(pos) = lines.iter().position(|l| !dot(h, l).is_zero()) {
            let l = lines.remove(pos);
            let hl = dot(h, &l);
            for other in lines.iter_mut() {
                let ho = dot(h, other);
                if !ho.is_zero() {
                    *other = combine(&hl, other, &-ho, &l);
                }
            }
            let sign = if hl.is_negative() { -BigInt::from(1) } else { BigInt::from(1) };
            let abs_hl = hl.abs();
            for (r, z) in rays.iter_mut() {
                let hr = dot(h, r);
                if !hr.is_zero() {
                    *r = combine(&abs_hl, r, &(-(&sign * hr)), &l);
                }
                z.set(k);
            }
            let mut fresh: Vec<BigInt> = l.iter().map(|x| &sign * x).collect();
            make_primitive(&mut fresh);
            rays.push((fresh, ZeroSet::full(k, nbits)));
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|(r, _)| dot(h, r)).collect();
        let min_common = (dim - lines.len()).saturating_sub(2);
        let mut next: Vec<(Vec<BigInt>, ZeroSet)> = Vec::with_capacity(rays.len());
        for (i, (r, z)) in rays.iter().enumerate() {
            match values[i].sign() {
                Sign::Plus => next.push((r.clone(), z.clone())),
                Sign::NoSign => {
                    let mut z = z.clone();
                    z.set(k);
                    next.push((r.clone(), z));
                }
                Sign::Minus => {}
            }
        }
        for (i, (p, zp)) in rays.iter().enumerate() {
            if values[i].sign() != Sign::Plus {
                continue;
            }
            for (j, (n, zn)) in rays.iter().enumerate() {
                if values[j].sign() != Sign::Minus {
                    continue;
                }
                let common = zp.and(zn);
                if common.count() < min_common {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(t, (_, zt))| t == i || t == j || !zt.contains_all(&common));
                if !adjacent {
                    continue;
                }
                let ray = combine(&values[i], n, &-values[j].clone(), p);
                let mut z = common;
                z.set(k);
                next.push((ray, z));
            }
        }
        rays = next;
    }

    Cone {
        lines,
        rays: rays.into_iter().map(|(r, _)| r).collect(),
    }
}
