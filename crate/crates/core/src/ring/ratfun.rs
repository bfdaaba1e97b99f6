use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{dense, LaurentPoly};
use crate::error::{Error, Result};

/// A rational function `num/den` in canonical form.
///
/// Canonical means: `num` and `den` share no nonconstant factor over ℚ,
/// `den` has lowest exponent 0 and a positive leading coefficient, and the
/// integer contents of `num` and `den` are coprime. Every value of ℤ(T)
/// (and the rational constants needed mid-computation, such as `1/2`) has
/// exactly one such representation, so derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFun {
    /// Canonicalizes `num/den`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonicalize(num, den))
    }

    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    /// The rational constant `p/q`.
    pub fn from_ratio(p: i64, q: i64) -> Result<Self> {
        Self::new(LaurentPoly::constant(p), LaurentPoly::constant(q))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the value lies in ℤ[T^±½].
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator when the denominator is 1.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn into_poly(self) -> Option<LaurentPoly> {
        if self.is_polynomial() {
            Some(self.num)
        } else {
            None
        }
    }

    fn canonicalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (n_lo, n) = num.to_dense_half().unwrap();
        let (d_lo, d) = den.to_dense_half().unwrap();
        // Work in u = T^½ with both sides shifted to lowest exponent 0; the
        // overall power of u is carried separately in `shift`.
        let shift = n_lo - d_lo;
        let (mut n, mut d) = if d.len() > 1 && n.len() > 1 {
            let g = dense::gcd(&n, &d);
            if g.len() > 1 {
                (
                    dense::div_exact(&n, &g).expect("gcd divides numerator"),
                    dense::div_exact(&d, &g).expect("gcd divides denominator"),
                )
            } else {
                (n, d)
            }
        } else {
            (n, d)
        };
        let c = dense::content(&n).gcd(&dense::content(&d));
        if !c.is_one() {
            n.iter_mut().for_each(|x| *x /= &c);
            d.iter_mut().for_each(|x| *x /= &c);
        }
        if d.last().unwrap().is_negative() {
            n.iter_mut().for_each(|x| *x = -std::mem::take(x));
            d.iter_mut().for_each(|x| *x = -std::mem::take(x));
        }
        Self { num: LaurentPoly::from_dense_half(shift, n), den: LaurentPoly::from_dense_half(0, d) }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonicalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Multiplies by `T^exp`.
    pub fn shift(&self, exp: i64) -> Self {
        self.shift_half(2 * exp)
    }

    /// Multiplies by `T^(half/2)`.
    pub fn shift_half(&self, half: i64) -> Self {
        Self { num: self.num.shift_half(half), den: self.den.clone() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        Self::canonicalize(self.num.scale(&BigInt::from(k)), self.den.clone())
    }

    /// Value at a rational point; `None` at poles or with half exponents.
    pub fn eval_rational(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(x)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(x)? / d)
    }

    /// Value at `T = 1`; `None` at a pole.
    pub fn eval_one(&self) -> Option<BigRational> {
        self.eval_rational(&BigRational::one())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// `f(T⁻¹)`.
    pub fn invert_variable(&self) -> Self {
        Self::canonicalize(self.num.invert_variable(), self.den.invert_variable())
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

/// `num` alone for polynomials, otherwise `(num) / (den)`.
impl RatFun {
    /// Like `Display`, but numerator and denominator that are perfect
    /// powers are shown as such: `-1/(1 + T)^2`.
    pub fn to_factored_string(&self) -> String {
        let part = |p: &LaurentPoly| match p.perfect_power() {
            Some((q, k)) if q.half_terms().count() > 1 => format!("({q})^{k}"),
            _ if p.half_terms().count() > 1 => format!("({p})"),
            _ => p.to_string(),
        };
        if self.den.is_one() {
            self.num.to_string()
        } else {
            format!("{}/{}", part(&self.num), part(&self.den))
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &LaurentPoly| {
                if p.half_terms().count() > 1 {
                    format!("({p})")
                } else {
                    p.to_string()
                }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl From<LaurentPoly> for RatFun {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

fn add_impl(a: &RatFun, b: &RatFun, sub: bool) -> RatFun {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if sub { -b } else { b.clone() };
    }
    if a.den == b.den {
        let num = if sub { &a.num - &b.num } else { &a.num + &b.num };
        return RatFun::canonicalize(num, a.den.clone());
    }
    let l = &a.num * &b.den;
    let r = &b.num * &a.den;
    let num = if sub { l - r } else { l + r };
    RatFun::canonicalize(num, &a.den * &b.den)
}

fn mul_impl(a: &RatFun, b: &RatFun) -> RatFun {
    if a.is_zero() || b.is_zero() {
        return RatFun::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return RatFun::from_poly(&a.num * &b.num);
    }
    RatFun::canonicalize(&a.num * &b.num, &a.den * &b.den)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $f:expr) => {
        impl $tr<&RatFun> for &RatFun {
            type Output = RatFun;
            fn $method(self, rhs: &RatFun) -> RatFun {
                let f: fn(&RatFun, &RatFun) -> RatFun = $f;
                f(self, rhs)
            }
        }
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $method(self, rhs: RatFun) -> RatFun {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $method(self, rhs: &RatFun) -> RatFun {
                (&self).$method(rhs)
            }
        }
        impl $tr<RatFun> for &RatFun {
            type Output = RatFun;
            fn $method(self, rhs: RatFun) -> RatFun {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_impl(a, b, false));
forward_binop!(Sub, sub, |a, b| add_impl(a, b, true));
forward_binop!(Mul, mul, mul_impl);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -self.num, den: self.den }
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -self.clone()
    }
}

impl num_traits::Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl num_traits::One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factored_display() {
        let den = LaurentPoly::from_coeffs(0, &[1, 2, 1]);
        let f = RatFun::new(LaurentPoly::constant(-1), den.clone()).unwrap();
        assert_eq!(f.to_factored_string(), "-1/(1 + T)^2");
        assert_eq!(f.to_string(), "-1/(1 + 2*T + T^2)");
        let g = RatFun::new(LaurentPoly::constant(1), LaurentPoly::constant(4)).unwrap();
        assert_eq!(g.to_factored_string(), "1/4");
    }

    fn lp(min: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(min, c)
    }

    fn rf(n: LaurentPoly, d: LaurentPoly) -> RatFun {
        RatFun::new(n, d).unwrap()
    }

    #[test]
    fn common_factor_cancels() {
        let f = rf(lp(0, &[1, 0, -1]), lp(0, &[1, -1]));
        assert_eq!(f.num(), &lp(0, &[1, 1]));
        assert!(f.den().is_one());
    }

    #[test]
    fn sign_normalization() {
        let a = rf(lp(0, &[-1, 1]), lp(0, &[1, 1]));
        let b = rf(lp(0, &[1, -1]), lp(0, &[-1, -1]));
        assert_eq!(a, b);
        assert!(a.den().leading_coeff().unwrap().is_positive());
    }

    #[test]
    fn geometric_reduction() {
        for n in 2..7 {
            let mut big = vec![0; n + 1];
            big[0] = 1;
            big[n] = -1;
            let f = rf(lp(0, &[1, -1]), lp(0, &big));
            assert!(f.num().is_one());
            assert_eq!(f.den(), &lp(0, &vec![1; n]));
        }
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(RatFun::new(LaurentPoly::one(), LaurentPoly::zero()), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn laurent_powers_move_to_numerator() {
        let f = rf(LaurentPoly::one(), lp(-2, &[1, 1]));
        assert_eq!(f.num(), &LaurentPoly::t_pow(2));
        assert_eq!(f.den(), &lp(0, &[1, 1]));
    }

    #[test]
    fn rational_constants() {
        let half = RatFun::from_ratio(1, 2).unwrap();
        assert_eq!(&half + &half, RatFun::one());
        assert_eq!(RatFun::from_ratio(-3, 6).unwrap(), -half.clone());
        assert_eq!(half.den(), &LaurentPoly::constant(2));
        // content normalization: 2T/(4+4T) = T/(2+2T)
        let f = rf(lp(1, &[2]), lp(0, &[4, 4]));
        assert_eq!(f.num(), &lp(1, &[1]));
        assert_eq!(f.den(), &lp(0, &[2, 2]));
    }

    #[test]
    fn arithmetic() {
        let a = rf(LaurentPoly::one(), lp(0, &[1, 1]));
        let b = rf(LaurentPoly::t(), lp(0, &[1, 1]));
        assert_eq!(&a + &b, RatFun::one());
        let sq = &a * &a;
        assert_eq!(sq.den(), &lp(0, &[1, 2, 1]));
        assert_eq!(sq.checked_div(&a).unwrap(), a);
        assert_eq!(a.eval_one(), Some(BigRational::new(1.into(), 2.into())));
    }
}
