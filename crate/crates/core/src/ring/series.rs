use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, RatFun};
use crate::error::{Error, Result};

/// A Laurent series around `T = 0` known through degree `cutoff`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    min_exp: i64,
    coeffs: Vec<BigInt>,
    cutoff: i64,
}

impl TruncatedSeries {
    /// Expands `f` through degree `cutoff`.
    ///
    /// The denominator's lowest term must be `±1` so that the expansion
    /// has integer coefficients; both parts must have integer exponents.
    pub fn expand(f: &RatFun, cutoff: i64) -> Result<Self> {
        let (num, den) = (f.num(), f.den());
        if !num.is_integer_grain() || !den.is_integer_grain() {
            return Err(Error::Series("half-integer exponents".into()));
        }
        if f.is_zero() {
            return Ok(Self { min_exp: cutoff + 1, coeffs: Vec::new(), cutoff });
        }
        let d_lo = den.min_exp().unwrap();
        let d: Vec<BigInt> = (d_lo..=den.max_exp().unwrap()).map(|e| den.coeff(e)).collect();
        let d0 = &d[0];
        if d0.abs() != BigInt::one() {
            return Err(Error::Series(format!("denominator {den} has constant term {d0}, not a unit")));
        }
        let min_exp = num.min_exp().unwrap() - d_lo;
        let len = usize::try_from(cutoff - min_exp + 1).unwrap_or(0);
        let mut q: Vec<BigInt> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = num.coeff(min_exp + d_lo + k as i64);
            for (i, di) in d.iter().enumerate().skip(1).take(k) {
                if !di.is_zero() {
                    acc -= di * &q[k - i];
                }
            }
            q.push(if d0.is_one() { acc } else { -acc });
        }
        Ok(Self { min_exp, coeffs: q, cutoff })
    }

    /// `p` truncated to degree `cutoff`.
    pub fn from_poly(p: &LaurentPoly, cutoff: i64) -> Result<Self> {
        Self::expand(&RatFun::from_poly(p.clone()), cutoff)
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Coefficient of `T^exp`; `None` beyond the cutoff.
    pub fn coeff(&self, exp: i64) -> Option<BigInt> {
        if exp > self.cutoff {
            return None;
        }
        if exp < self.min_exp {
            return Some(BigInt::zero());
        }
        Some(self.coeffs[(exp - self.min_exp) as usize].clone())
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_half_terms(
            self.coeffs.iter().enumerate().map(|(k, c)| (2 * (self.min_exp + k as i64), c.clone())),
        )
    }

    /// Largest `r ≤ cutoff` such that `p` and this series agree in every
    /// degree up to `r`. Returns `None` if they already differ below
    /// `lowest`, the first degree compared.
    pub fn agreement_depth(&self, p: &LaurentPoly, lowest: i64) -> Option<i64> {
        let start = lowest.min(self.min_exp).min(p.min_exp().unwrap_or(self.min_exp));
        for e in start..=self.cutoff {
            if self.coeff(e).unwrap() != p.coeff(e) {
                return if e <= lowest { None } else { Some(e - 1) };
            }
        }
        Some(self.cutoff)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(T^{})", self.to_poly(), self.cutoff + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(min: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(min, c)
    }

    #[test]
    fn geometric() {
        let f = RatFun::new(LaurentPoly::one(), lp(0, &[1, 1])).unwrap();
        let s = TruncatedSeries::expand(&f, 3).unwrap();
        assert_eq!(s.to_poly(), lp(0, &[1, -1, 1, -1]));
    }

    #[test]
    fn squared_denominator() {
        let f = RatFun::new(LaurentPoly::constant(-1), lp(0, &[1, 2, 1])).unwrap();
        let s = TruncatedSeries::expand(&f, 3).unwrap();
        assert_eq!(s.to_poly(), lp(0, &[-1, 2, -3, 4]));
    }

    #[test]
    fn polynomial_truncates() {
        let p = lp(-2, &[1, 0, 3, 0, 0, 7, 9]);
        let s = TruncatedSeries::from_poly(&p, 2).unwrap();
        assert_eq!(s.to_poly(), lp(-2, &[1, 0, 3]));
        assert_eq!(s.coeff(-5), Some(BigInt::zero()));
        assert_eq!(s.coeff(3), None);
    }

    #[test]
    fn laurent_shift_and_negative_unit() {
        // T^-1 / (-1 + T) = -T^-1 - 1 - T - ...
        let f = RatFun::new(lp(-1, &[1]), lp(0, &[-1, 1])).unwrap();
        let s = TruncatedSeries::expand(&f, 1).unwrap();
        assert_eq!(s.to_poly(), lp(-1, &[-1, -1, -1]));
    }

    #[test]
    fn non_unit_constant_rejected() {
        let f = RatFun::new(LaurentPoly::one(), lp(0, &[2, 1])).unwrap();
        assert!(matches!(TruncatedSeries::expand(&f, 3), Err(Error::Series(_))));
    }

    #[test]
    fn agreement() {
        let f = RatFun::new(LaurentPoly::one(), lp(0, &[1, 1])).unwrap();
        let s = TruncatedSeries::expand(&f, 5).unwrap();
        assert_eq!(s.agreement_depth(&lp(0, &[1, -1, 1, 5]), 0), Some(2));
        assert_eq!(s.agreement_depth(&lp(0, &[1, -1, 1, -1, 1, -1, 99]), 0), Some(5));
        assert_eq!(s.agreement_depth(&lp(0, &[2]), 0), None);
    }
}
