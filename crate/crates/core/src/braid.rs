//! Braid words and the unreduced Burau representation.
//!
//! Braids are read bottom to top and strands are numbered 1..=n from the
//! left. In `σ_k` the strand entering at position `k` crosses over the one
//! entering at `k + 1`; row `i` of a Burau matrix describes a walker that
//! enters at position `i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, PolyMatrix, RatFun, RatMatrix};

/// A word in the standard generators of the braid group on `n` strands.
/// Letter `k > 0` is `σ_k`, letter `-k` is its inverse.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawBraid", into = "RawBraid")]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawBraid {
    n: usize,
    word: Vec<i32>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = Error;
    fn try_from(raw: RawBraid) -> Result<Self> {
        BraidWord::new(raw.n, raw.word)
    }
}

impl From<BraidWord> for RawBraid {
    fn from(b: BraidWord) -> Self {
        RawBraid { n: b.n, word: b.letters }
    }
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidBraid(format!("need at least 2 strands, got {n}")));
        }
        if let Some(k) = letters.iter().find(|k| **k == 0 || k.unsigned_abs() as usize >= n) {
            return Err(Error::InvalidBraid(format!("letter {k} out of range for {n} strands")));
        }
        Ok(Self { n, letters })
    }

    /// Parses whitespace- or comma-separated signed generator indices.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let letters = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| i32::from_str(s).map_err(|_| Error::Parse(format!("bad braid letter {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, letters)
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of the letter signs; the writhe of the closure.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|k| i64::from(k.signum())).sum()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::InvalidBraid(format!("strand counts {} and {} differ", self.n, other.n)));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { n: self.n, letters })
    }

    pub fn repeat(&self, times: usize) -> Self {
        Self { n: self.n, letters: self.letters.repeat(times) }
    }

    /// Every crossing switched.
    pub fn mirror(&self) -> Self {
        Self { n: self.n, letters: self.letters.iter().map(|k| -k).collect() }
    }

    /// The word with each letter shifted by `offset`, on `n` strands.
    pub fn shifted(&self, offset: usize, n: usize) -> Result<Self> {
        Self::new(n, self.letters.iter().map(|&k| k.signum() * (k.abs() + offset as i32)).collect())
    }

    /// `perm[p]` is the top position (0-based) of the strand entering at
    /// bottom position `p`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.n).collect();
        for &k in &self.letters {
            let p = k.unsigned_abs() as usize - 1;
            at.swap(p, p + 1);
        }
        let mut perm = vec![0; self.n];
        for (top, &bottom) in at.iter().enumerate() {
            perm[bottom] = top;
        }
        perm
    }

    /// Number of components of the closure.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if !seen[s] {
                count += 1;
                let mut p = s;
                while !seen[p] {
                    seen[p] = true;
                    p = perm[p];
                }
            }
        }
        count
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "B{}[{}]", self.n, parts.join(" "))
    }
}

/// `ψ(σ_k^±1)` in `GL_n`.
pub fn generator_matrix(n: usize, letter: i32) -> PolyMatrix {
    let mut m = PolyMatrix::identity(n);
    let k = letter.unsigned_abs() as usize - 1;
    let one = LaurentPoly::one();
    let (a, b, c, d) = if letter > 0 {
        (&one - LaurentPoly::t(), LaurentPoly::t(), one.clone(), LaurentPoly::zero())
    } else {
        let tinv = LaurentPoly::t_pow(-1);
        (LaurentPoly::zero(), one.clone(), tinv.clone(), &one - &tinv)
    };
    m.set(k, k, a);
    m.set(k, k + 1, b);
    m.set(k + 1, k, c);
    m.set(k + 1, k + 1, d);
    m
}

/// The unreduced Burau matrix `ψ(w)`, with `ψ(uv) = ψ(u)ψ(v)`.
pub fn burau(w: &BraidWord) -> PolyMatrix {
    let n = w.n;
    let mut m = PolyMatrix::identity(n);
    let t = LaurentPoly::t();
    let tinv = LaurentPoly::t_pow(-1);
    let one_minus_t = LaurentPoly::one() - &t;
    let one_minus_tinv = LaurentPoly::one() - &tinv;
    // Right multiplication by a generator only touches columns k and k+1.
    for &letter in &w.letters {
        let k = letter.unsigned_abs() as usize - 1;
        for i in 0..n {
            let x = m.get(i, k).clone();
            let y = m.get(i, k + 1).clone();
            if x.is_zero() && y.is_zero() {
                continue;
            }
            let (nx, ny) =
                if letter > 0 { (&one_minus_t * &x + y, &t * &x) } else { (&tinv * &y, x + &one_minus_tinv * &y) };
            m.set(i, k, nx);
            m.set(i, k + 1, ny);
        }
    }
    m
}

/// `Ω_n = (σ₁σ₂⋯σ_{n−1})ⁿ`.
pub fn full_twist_word(n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::InvalidBraid(format!("full twist needs n >= 2, got {n}")));
    }
    let cycle: Vec<i32> = (1..n as i32).collect();
    BraidWord::new(n, cycle.repeat(n))
}

/// `1 + T + ⋯ + T^{n−1}`.
pub fn quantum_integer(n: usize) -> LaurentPoly {
    LaurentPoly::from_coeffs(0, &vec![1; n])
}

/// `p_{n,k} = (1 − T)·Σ_{i<k} T^{ni}`.
pub fn p_nk(n: usize, k: usize) -> Result<LaurentPoly> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidBraid(format!("p_(n,k) needs n >= 2 and k >= 1, got n={n}, k={k}")));
    }
    let mut coeffs = vec![0i64; n * (k - 1) + 2];
    for i in 0..k {
        coeffs[n * i] += 1;
        coeffs[n * i + 1] -= 1;
    }
    Ok(LaurentPoly::from_coeffs(0, &coeffs))
}

/// `ψ(Ω_nᵏ)` in closed form.
pub fn full_twist_power(n: usize, k: usize) -> Result<PolyMatrix> {
    if n < 2 {
        return Err(Error::InvalidBraid(format!("full twist needs n >= 2, got {n}")));
    }
    if k == 0 {
        return Ok(PolyMatrix::identity(n));
    }
    let p = p_nk(n, k)?;
    let cols: Vec<LaurentPoly> = (0..n).map(|j| &p * &LaurentPoly::t_pow(j as i64)).collect();
    let total = quantum_integer(n);
    Ok(PolyMatrix::from_fn(n, n, |i, j| {
        if i == j {
            // 1 − p·Σ_{m≠i} T^m
            let rest = &total - &LaurentPoly::t_pow(i as i64);
            LaurentPoly::one() - &p * &rest
        } else {
            cols[j].clone()
        }
    }))
}

/// `lim_k ψ(Ω_nᵏ)`: every row is `(1, T, …, T^{n−1}) / (1 + ⋯ + T^{n−1})`.
pub fn full_twist_limit(n: usize) -> Result<RatMatrix> {
    if n < 2 {
        return Err(Error::InvalidBraid(format!("full twist needs n >= 2, got {n}")));
    }
    let den = quantum_integer(n);
    let cols: Vec<RatFun> =
        (0..n).map(|j| RatFun::new(LaurentPoly::t_pow(j as i64), den.clone())).collect::<Result<_>>()?;
    Ok(RatMatrix::from_fn(n, n, |_, j| cols[j].clone()))
}
