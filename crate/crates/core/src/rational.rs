//! Exact rational scalars and the handful of vector helpers the kernel uses.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn vector(values: &[(i64, i64)]) -> Vec<Rational> {
    values.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn ints(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&n| int(n)).collect()
}

/// Parses `7`, `-3/4`, `0.125` or `1e-2`-free decimals into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::input(alloc::format!("not a rational number: {text:?}"));
    if text.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole_abs = whole.trim_start_matches(['-', '+']);
        let whole_int = if whole_abs.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(whole_abs).map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_int = BigInt::from_str(frac).map_err(|_| bad())?;
        let mut value = Rational::new(whole_int * &scale + frac_int, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    BigInt::from_str(text)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

/// `num/den`, or just `num` for integers.
pub fn format_rational(value: &Rational) -> alloc::string::String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        alloc::format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Index and value of the first nonzero entry.
pub fn first_nonzero(v: &[Rational]) -> Option<(usize, &Rational)> {
    v.iter().enumerate().find(|(_, x)| !x.is_zero())
}

/// Divides by the magnitude of the first nonzero entry. Returns the divisor,
/// or `None` for the zero vector (left untouched).
pub fn normalize_leading(v: &mut [Rational]) -> Option<Rational> {
    let lead = first_nonzero(v)?.1.abs();
    if !lead.is_one() {
        for x in v.iter_mut() {
            *x /= &lead;
        }
    }
    Some(lead)
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[Rational]) -> BigInt {
    v.iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector by a positive factor into a primitive integer
/// vector (gcd of entries 1). Direction is preserved.
pub fn to_primitive_integers(v: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(v);
    let mut out: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&den / x.denom()))
        .collect();
    make_primitive(&mut out);
    out
}

/// Divides an integer vector by the gcd of its entries.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

pub fn from_integers(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// Componentwise `a <= b` with at least one strict coordinate (minimization).
pub fn dominates(a: &[Rational], b: &[Rational]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Greater => return false,
            Ordering::Less => strict = true,
            Ordering::Equal => {}
        }
    }
    strict
}

/// Checked form of [`dominates`] for public callers.
pub fn dominates_point(a: &[Rational], b: &[Rational]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::input(alloc::format!(
            "point lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(dominates(a, b))
}

pub fn weakly_dominates(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Lossy conversion for plotting and logs.
pub fn to_f64(value: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
}

pub fn floor(value: &Rational) -> BigInt {
    value.floor().to_integer()
}

pub fn ceil(value: &Rational) -> BigInt {
    value.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_decimal_and_integer() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("-.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("42").unwrap(), int(42));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn point_dominance_is_strict_in_one_coordinate() {
        assert!(dominates_point(&ints(&[1, 2]), &ints(&[2, 3])).unwrap());
        assert!(!dominates_point(&ints(&[1, 2]), &ints(&[1, 2])).unwrap());
        assert!(!dominates_point(&ints(&[1, 3]), &ints(&[2, 2])).unwrap());
        assert!(dominates_point(&ints(&[1]), &ints(&[1, 2])).is_err());
    }

    #[test]
    fn primitive_integers_keep_direction() {
        let v = vector(&[(1, 2), (-3, 4), (0, 1)]);
        let p = to_primitive_integers(&v);
        assert_eq!(p, [BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }

    #[test]
    fn leading_normalization() {
        let mut v = ints(&[0, -4, 2]);
        normalize_leading(&mut v);
        assert_eq!(v, vector(&[(0, 1), (-1, 1), (1, 2)]));
    }
}
