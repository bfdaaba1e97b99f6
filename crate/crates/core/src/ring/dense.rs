//! Dense univariate integer polynomials, ascending coefficient order.
//!
//! These helpers back the exact division and gcd routines of
//! [`LaurentPoly`](super::LaurentPoly). Inputs are never empty slices with a
//! zero leading coefficient unless they represent the zero polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let c = if p.last().is_some_and(Signed::is_negative) { -c } else { c };
    p.iter().map(|x| x / &c).collect()
}

/// Exact quotient `a / b`, or `None` if `b` does not divide `a` in ℤ[x].
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.to_vec();
    let lead = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &rem[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// Pseudo-remainder of `a` by `b`: the remainder of `lc(b)^k · a` by `b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let lead = b.last().unwrap();
    while rem.len() >= b.len() {
        let top = rem.last().unwrap().clone();
        let shift = rem.len() - b.len();
        for c in rem.iter_mut() {
            *c *= lead;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[shift + i] -= &top * bi;
        }
        trim(&mut rem);
    }
    rem
}

/// Primitive gcd over ℚ[x] of two integer polynomials, normalized to a
/// primitive integer polynomial with positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn exact_division() {
        // (1 - x^2) / (1 - x) = 1 + x
        assert_eq!(div_exact(&p(&[1, 0, -1]), &p(&[1, -1])), Some(p(&[1, 1])));
        assert_eq!(div_exact(&p(&[1, 0, 1]), &p(&[1, -1])), None);
        assert_eq!(div_exact(&p(&[2, 2]), &p(&[2])), Some(p(&[1, 1])));
        assert_eq!(div_exact(&p(&[1, 1]), &p(&[2])), None);
    }

    #[test]
    fn gcd_is_primitive_and_monic_sign() {
        // gcd((x-1)(x+2), 3(x-1)(x-5)) = x - 1
        let a = p(&[-2, 1, 1]);
        let b = p(&[15, -18, 3]);
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
        assert_eq!(gcd(&p(&[4]), &p(&[6])), p(&[1]));
        assert_eq!(gcd(&p(&[]), &p(&[-2, -4])), p(&[1, 2]));
    }
}
