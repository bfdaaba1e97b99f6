use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dense;

/// A Laurent polynomial in `T` with integer coefficients and exponents in
/// `½ℤ`.
///
/// Exponents are stored as integers in units of one half, so the term
/// `c·T^(k/2)` is stored as `(k, c)`. Terms are kept sorted by exponent with
/// no zero coefficients, which makes structural equality the same as
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·T^exp` for an integer exponent.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::monomial_half(c, 2 * exp)
    }

    /// `c·T^(half_exp/2)`.
    pub fn monomial_half(c: impl Into<BigInt>, half_exp: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(half_exp, c)] }
        }
    }

    /// The variable `T`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// `T^exp`.
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    /// Builds a polynomial from integer-exponent coefficients starting at
    /// `T^min_exp`: `from_coeffs(-1, &[1, 2])` is `T⁻¹ + 2`.
    pub fn from_coeffs(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::from_half_terms(coeffs.iter().enumerate().map(|(k, &c)| (2 * (min_exp + k as i64), BigInt::from(c))))
    }

    /// Builds a polynomial from `(half_exponent, coefficient)` pairs in any
    /// order; repeated exponents are summed.
    pub fn from_half_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut terms: Vec<(i64, BigInt)> = terms.into_iter().collect();
        terms.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    /// Sum of `c_k T^k` over integer exponents, built from a dense ascending
    /// coefficient vector starting at half-exponent `min_half`.
    pub(crate) fn from_dense_half(min_half: i64, coeffs: Vec<BigInt>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (min_half + k as i64, c))
            .collect();
        Self { terms }
    }

    /// Dense ascending coefficients in half-exponent steps, with the
    /// half-exponent of the first entry. `None` for zero.
    pub(crate) fn to_dense_half(&self) -> Option<(i64, Vec<BigInt>)> {
        let lo = self.min_half_exp()?;
        let hi = self.max_half_exp()?;
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        Some((lo, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(half_exponent, coefficient)`, ascending.
    pub fn half_terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `T^exp` for an integer exponent.
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeff_half(2 * exp)
    }

    pub fn coeff_half(&self, half_exp: i64) -> BigInt {
        match self.terms.binary_search_by_key(&half_exp, |(e, _)| *e) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn min_half_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_half_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Lowest exponent, when every exponent is an integer.
    pub fn min_exp(&self) -> Option<i64> {
        self.min_half_exp().filter(|e| e % 2 == 0).map(|e| e / 2)
    }

    /// Highest exponent, when every exponent is an integer.
    pub fn max_exp(&self) -> Option<i64> {
        self.max_half_exp().filter(|e| e % 2 == 0).map(|e| e / 2)
    }

    /// Coefficient of the highest power.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|(_, c)| c)
    }

    /// True when every exponent is an integer.
    pub fn is_integer_grain(&self) -> bool {
        self.terms.iter().all(|(e, _)| e % 2 == 0)
    }

    /// Multiplies by `T^(half/2)`.
    pub fn shift_half(&self, half: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + half, c.clone())).collect() }
    }

    /// Multiplies by `T^exp`.
    pub fn shift(&self, exp: i64) -> Self {
        self.shift_half(2 * exp)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// Divides every coefficient by `k`, or `None` if some coefficient is
    /// not a multiple of `k`.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            terms.push((*e, q));
        }
        Some(Self { terms })
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `p(T⁻¹)`.
    pub fn invert_variable(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        Self { terms }
    }

    /// True when `p(T) = p(T⁻¹)`.
    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_variable()
    }

    /// `p(T^k)` for a positive integer `k`.
    pub fn compose_power(&self, k: i64) -> Self {
        assert!(k > 0, "compose_power needs a positive exponent");
        Self { terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect() }
    }

    /// `(q, k)` with `q^k = self` and `k ≥ 2` as large as possible, for
    /// polynomials with integer exponents.
    pub fn perfect_power(&self) -> Option<(Self, u32)> {
        let (lo, hi) = (self.min_exp()?, self.max_exp()?);
        if !self.is_integer_grain() {
            return None;
        }
        let top = self.leading_coeff()?;
        let span = hi - lo;
        for k in (2..=span.max(2) as u32).rev() {
            if lo % k as i64 != 0 || span % k as i64 != 0 || (top.is_negative() && k % 2 == 0) {
                continue;
            }
            let root = top.nth_root(k);
            if root.pow(k) != *top {
                continue;
            }
            // Fix the coefficients of the root from the top down.
            let (qlo, qhi) = (lo / k as i64, hi / k as i64);
            let lead = Self::monomial(root.clone(), qhi);
            let slope = BigInt::from(k) * root.pow(k - 1);
            let mut q = lead;
            let mut ok = true;
            for e in (qlo..qhi).rev() {
                let rest = self - &q.pow(k);
                let c = rest.coeff(e + (k as i64 - 1) * qhi);
                if !(&c % &slope).is_zero() {
                    ok = false;
                    break;
                }
                q += &Self::monomial(c / &slope, e);
            }
            if ok && q.pow(k) == *self {
                return Some((q, k));
            }
        }
        None
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient in ℤ[T^±½], or `None` when `d` does not divide `self`.
    ///
    /// # Panics
    /// If `d` is zero.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let Some((a_lo, a)) = self.to_dense_half() else {
            return Some(Self::zero());
        };
        let (d_lo, d) = d.to_dense_half().unwrap();
        if d.len() == 1 {
            return self.div_scalar_exact(&d[0]).map(|q| q.shift_half(-d_lo));
        }
        let q = dense::div_exact(&a, &d)?;
        Some(Self::from_dense_half(a_lo - d_lo, q))
    }

    /// Value at a rational point. `None` if a half-integer exponent is
    /// present or the point is zero and a negative power occurs.
    pub fn eval_rational(&self, x: &BigRational) -> Option<BigRational> {
        if !self.is_integer_grain() {
            return None;
        }
        if x.is_zero() && self.min_half_exp().is_some_and(|e| e < 0) {
            return None;
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let e = e / 2;
            let p =
                if e >= 0 { num_traits::pow(x.clone(), e as usize) } else { num_traits::pow(x.recip(), (-e) as usize) };
            acc += BigRational::from_integer(c.clone()) * p;
        }
        Some(acc)
    }

    /// Floating-point value at `x > 0`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.terms.iter().map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * x.powf(*e as f64 / 2.0)).sum()
    }

    /// Value at `T = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let fix = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, fix(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (*e, fix(c))));
        Self { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return Self { terms: self.terms.iter().map(|(f, d)| (f + e, d * c)).collect() };
        }
        if self.terms.len() == 1 {
            return other.product(self);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut buf = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                buf[(e + f - lo) as usize] += c * d;
            }
        }
        Self::from_dense_half(lo, buf)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Renders as sparse `coeff*T^exp` terms in ascending exponent order, e.g.
/// `-1*T^-1 + 2 - 3*T^(1/2)`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self, "T")
    }
}

pub(crate) fn write_terms(f: &mut impl fmt::Write, p: &LaurentPoly, var: &str) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (e, c)) in p.terms.iter().enumerate() {
        let mag = c.abs();
        match (k, c.is_negative()) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if *e == 0 {
            write!(f, "{mag}")?;
            continue;
        }
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        match (e % 2 == 0, e / 2) {
            (true, 1) => f.write_str(var)?,
            (true, h) => write!(f, "{var}^{h}")?,
            (false, _) => write!(f, "{var}^({e}/2)")?,
        }
    }
    Ok(())
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                let f: fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.merge(b, false));
forward_binop!(Sub, sub, |a, b| a.merge(b, true));
forward_binop!(Mul, mul, |a, b| a.product(b));

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, true);
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl num_traits::Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl num_traits::One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_powers() {
        let p = LaurentPoly::from_coeffs(0, &[1, 1]);
        assert_eq!(LaurentPoly::from_coeffs(0, &[1, 2, 1]).perfect_power(), Some((p.clone(), 2)));
        assert_eq!(p.pow(3).shift(-3).perfect_power(), Some((p.shift(-1), 3)));
        assert_eq!(LaurentPoly::from_coeffs(0, &[1, 1, 1]).perfect_power(), None);
        assert_eq!(LaurentPoly::constant(-1).perfect_power(), None);
        assert_eq!(LaurentPoly::from_coeffs(0, &[-1, -2, -1]).perfect_power(), None);
        assert_eq!(LaurentPoly::from_coeffs(0, &[4, 4, 1]).perfect_power().unwrap().1, 2);
    }

    fn lp(min: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(min, c)
    }

    /// Schoolbook convolution on dense integer vectors; independent of the
    /// buffered product used by `Mul`.
    fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(lp(0, &[1, -1]) * lp(0, &[1, 1]), lp(0, &[1, 0, -1]));
    }

    #[test]
    fn additive_identity() {
        let p = lp(-2, &[3, 0, -1, 5]);
        assert_eq!(&p + &LaurentPoly::zero(), p);
    }

    #[test]
    fn telescoping_product_matches_convolution() {
        let a = [1, -1];
        let b = [1, 1, 1, 1];
        let expected = convolve(&a, &b);
        assert_eq!(expected, vec![1, 0, 0, 0, -1]);
        assert_eq!(lp(0, &a) * lp(0, &b), lp(0, &expected));
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let p = lp(0, &[1, 2]) - lp(0, &[1, 2]);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
        let q = LaurentPoly::from_half_terms([(2, BigInt::from(1)), (2, BigInt::from(-1))]);
        assert!(q.is_zero());
    }

    #[test]
    fn display_format() {
        let p = lp(-1, &[-1, 2, 0, -3]);
        assert_eq!(p.to_string(), "-T^-1 + 2 - 3*T^2");
        let h = LaurentPoly::monomial_half(5, -3) + LaurentPoly::monomial_half(1, 1);
        assert_eq!(h.to_string(), "5*T^(-3/2) + T^(1/2)");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn symmetry_and_inversion() {
        let trefoil = lp(-1, &[1, -1, 1]);
        assert!(trefoil.is_symmetric());
        assert!(!lp(0, &[1, -1, 1]).is_symmetric());
        assert_eq!(lp(1, &[2, 3]).invert_variable(), lp(-2, &[3, 2]));
    }

    #[test]
    fn exact_division_laurent() {
        let a = lp(-3, &[1, 0, -1]);
        let b = lp(-1, &[1, -1]);
        assert_eq!(a.div_exact(&b), Some(lp(-2, &[1, 1])));
        assert_eq!(lp(0, &[1, 0, 1]).div_exact(&b), None);
        assert_eq!(lp(0, &[4, 6]).div_exact(&LaurentPoly::monomial(2, 3)), Some(lp(-3, &[2, 3])));
    }

    #[test]
    fn half_grain() {
        let h = LaurentPoly::monomial_half(1, 1);
        assert!(!h.is_integer_grain());
        assert_eq!(&h * &h, LaurentPoly::t());
        assert_eq!(h.min_exp(), None);
    }

    #[test]
    fn evaluation() {
        let p = lp(-1, &[1, -1, 1]);
        assert_eq!(p.eval_one(), BigInt::from(1));
        let two = BigRational::from_integer(2.into());
        let v = p.eval_rational(&two).unwrap();
        assert_eq!(v, BigRational::new(3.into(), 2.into()));
        assert!((p.eval_f64(2.0) - 1.5).abs() < 1e-12);
    }
}
