use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{dense, LaurentPoly, RatFun};
use crate::error::{Error, Result};

/// Commutative ring elements usable as matrix entries.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Send
        + Sync
        + Zero
        + One
        + Sub<Output = Self>
        + Neg<Output = Self>
        + for<'a> Add<&'a Self, Output = Self>
        + for<'a> Sub<&'a Self, Output = Self>
        + for<'a> Mul<&'a Self, Output = Self>
{
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type PolyMatrix = Matrix<LaurentPoly>;
pub type RatMatrix = Matrix<RatFun>;

/// Below this size determinants and adjugates use cofactor expansion.
const COFACTOR_LIMIT: usize = 5;

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries cannot fill a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| R::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut R {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Submatrix with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let data = (0..self.rows)
            .filter(|&i| i != r)
            .flat_map(|i| (0..self.cols).filter(move |&j| j != c).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Self { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = (0..self.rows * rhs.cols)
            .into_par_iter()
            .map(|k| {
                let (i, j) = (k / rhs.cols, k % rhs.cols);
                let mut acc = R::zero();
                for m in 0..self.cols {
                    let a = self.get(i, m);
                    let b = rhs.get(m, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + &(a.clone() * b);
                    }
                }
                acc
            })
            .collect();
        Ok(Self { rows: self.rows, cols: rhs.cols, data })
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&R, &R) -> R) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} and {}x{} differ in shape",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() + b)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() - b)
    }

    pub fn scale(&self, k: &R) -> Self {
        self.map(|x| x.clone() * k)
    }

    /// `I - self`.
    pub fn identity_minus(&self) -> Result<Self> {
        self.require_square()?;
        Self::identity(self.rows).checked_sub(self)
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Shape(format!("expected a square matrix, got {}x{}", self.rows, self.cols)))
        }
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Result<R> {
        self.require_square()?;
        Ok(laplace(self))
    }

    /// Adjugate from cofactors, each computed by Laplace expansion.
    pub fn adjugate_cofactor(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1));
        }
        Ok(Self::from_fn(n, n, |i, j| {
            let c = laplace(&self.minor(j, i));
            if (i + j) % 2 == 0 {
                c
            } else {
                -c
            }
        }))
    }
}

fn laplace<R: Ring>(m: &Matrix<R>) -> R {
    match m.rows {
        1 => m.get(0, 0).clone(),
        2 => m.get(0, 0).clone() * m.get(1, 1) - m.get(0, 1).clone() * m.get(1, 0),
        n => {
            let mut acc = R::zero();
            for j in 0..n {
                let a = m.get(0, j);
                if a.is_zero() {
                    continue;
                }
                let term = a.clone() * &laplace(&m.minor(0, j));
                acc = if j % 2 == 0 { acc + &term } else { acc - &term };
            }
            acc
        }
    }
}

impl<R: Ring> Mul<&Matrix<R>> for &Matrix<R> {
    type Output = Matrix<R>;
    /// # Panics
    /// On incompatible shapes; use [`Matrix::checked_mul`] to handle them.
    fn mul(self, rhs: &Matrix<R>) -> Matrix<R> {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<R: fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix").field("rows", &self.rows).field("cols", &self.cols).field("data", &self.data).finish()
    }
}

impl PolyMatrix {
    /// Determinant; fraction-free elimination from 5x5 up, cofactor
    /// expansion below.
    pub fn det(&self) -> Result<LaurentPoly> {
        self.require_square()?;
        if self.rows < COFACTOR_LIMIT {
            return self.det_cofactor();
        }
        Ok(self.bareiss_det())
    }

    /// Bareiss fraction-free determinant over ℤ[T^±½].
    pub fn bareiss_det(&self) -> LaurentPoly {
        let n = self.rows;
        let mut a = self.clone();
        let mut prev = LaurentPoly::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a.get(r, k).is_zero()) else {
                return LaurentPoly::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                negate = !negate;
            }
            let pivot = a.get(k, k).clone();
            let updated: Vec<(usize, Vec<LaurentPoly>)> = (k + 1..n)
                .into_par_iter()
                .map(|i| {
                    let aik = a.get(i, k);
                    let row = (k + 1..n)
                        .map(|j| {
                            let v = &pivot * a.get(i, j) - aik * a.get(k, j);
                            exact(&v, &prev)
                        })
                        .collect();
                    (i, row)
                })
                .collect();
            for (i, row) in updated {
                for (j, v) in (k + 1..n).zip(row) {
                    a.set(i, j, v);
                }
                a.set(i, k, LaurentPoly::zero());
            }
            prev = pivot;
        }
        if negate {
            -prev
        } else {
            prev
        }
    }

    /// Adjugate and determinant together.
    ///
    /// Runs fraction-free Gauss–Jordan elimination on `[M | I]`; on
    /// completion the left block is `±det(M)·I` and the right block is
    /// `±adj(M)`. Every intermediate entry is a minor of `[M | I]`, so all
    /// divisions are exact. Singular input falls back to cofactors.
    pub fn adjugate_det(&self) -> Result<(PolyMatrix, LaurentPoly)> {
        self.require_square()?;
        let n = self.rows;
        if n < COFACTOR_LIMIT {
            return Ok((self.adjugate_cofactor()?, self.det_cofactor()?));
        }
        let w = 2 * n;
        let mut aug = PolyMatrix::from_fn(n, w, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }
        });
        let mut prev = LaurentPoly::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !aug.get(r, k).is_zero()) else {
                return Ok((self.adjugate_by_minors(), LaurentPoly::zero()));
            };
            if p != k {
                aug.swap_rows(p, k);
                negate = !negate;
            }
            let pivot = aug.get(k, k).clone();
            let pivot_row: Vec<LaurentPoly> = aug.row(k).to_vec();
            let updated: Vec<(usize, Vec<LaurentPoly>)> = (0..n)
                .into_par_iter()
                .filter(|&i| i != k)
                .map(|i| {
                    let aik = aug.get(i, k).clone();
                    let row = (0..w)
                        .map(|j| {
                            let aij = aug.get(i, j);
                            let v = if aik.is_zero() { &pivot * aij } else { &pivot * aij - &aik * &pivot_row[j] };
                            exact(&v, &prev)
                        })
                        .collect();
                    (i, row)
                })
                .collect();
            for (i, row) in updated {
                for (j, v) in row.into_iter().enumerate() {
                    aug.set(i, j, v);
                }
            }
            prev = pivot;
        }
        let sign = |p: LaurentPoly| if negate { -p } else { p };
        let adj = PolyMatrix::from_fn(n, n, |i, j| sign(aug.get(i, n + j).clone()));
        Ok((adj, sign(prev)))
    }

    fn adjugate_by_minors(&self) -> PolyMatrix {
        let n = self.rows;
        let cells: Vec<LaurentPoly> = (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (i, j) = (k / n, k % n);
                let c = self.minor(j, i).bareiss_det();
                if (i + j) % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        PolyMatrix { rows: n, cols: n, data: cells }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(|p| RatFun::from_poly(p.clone()))
    }
}

fn exact(v: &LaurentPoly, d: &LaurentPoly) -> LaurentPoly {
    if d.is_one() || v.is_zero() {
        return v.clone();
    }
    v.div_exact(d).expect("fraction-free elimination division is exact")
}

/// Least common multiple, up to a rational constant, of two canonical
/// denominators (lowest exponent 0).
fn lcm(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a == b || b.is_one() {
        return a.clone();
    }
    if a.is_one() {
        return b.clone();
    }
    let (_, da) = a.to_dense_half().unwrap();
    let (_, db) = b.to_dense_half().unwrap();
    let g = dense::gcd(&da, &db);
    let cofactor = dense::div_exact(&db, &g).expect("gcd divides");
    a * &LaurentPoly::from_dense_half(0, cofactor)
}

impl RatMatrix {
    /// Scales each row by a common multiple of its denominators, returning
    /// the polynomial matrix and the row multipliers.
    pub fn lift_rows(&self) -> (PolyMatrix, Vec<LaurentPoly>) {
        let mut mults = Vec::with_capacity(self.rows);
        let mut data = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            let row = self.row(i);
            let l = row.iter().fold(LaurentPoly::one(), |l, x| lcm(&l, x.den()));
            for x in row {
                let q = l.div_exact(x.den()).expect("row multiple divisible by denominator");
                data.push(x.num() * &q);
            }
            mults.push(l);
        }
        (PolyMatrix { rows: self.rows, cols: self.cols, data }, mults)
    }

    pub fn det(&self) -> Result<RatFun> {
        self.require_square()?;
        if self.rows < COFACTOR_LIMIT {
            return self.det_cofactor();
        }
        let (lifted, mults) = self.lift_rows();
        let scale = mults.iter().fold(LaurentPoly::one(), |acc, m| &acc * m);
        RatFun::new(lifted.bareiss_det(), scale)
    }

    /// Adjugate and determinant together, exact in ℤ(T).
    pub fn adjugate_det(&self) -> Result<(RatMatrix, RatFun)> {
        self.require_square()?;
        if self.rows < COFACTOR_LIMIT {
            return Ok((self.adjugate_cofactor()?, self.det_cofactor()?));
        }
        // M = D·L with D = diag(mults)⁻¹, so adj(M) = adj(L)·D⁻¹·… rearranged:
        // adj(M)_ij = adj(L)_ij · mults_j / Π mults.
        let (lifted, mults) = self.lift_rows();
        let (adj, det) = lifted.adjugate_det()?;
        let scale = mults.iter().fold(LaurentPoly::one(), |acc, m| &acc * m);
        let n = self.rows;
        let adj = RatMatrix::from_fn(n, n, |i, j| {
            RatFun::new(adj.get(i, j) * &mults[j], scale.clone()).expect("nonzero multiplier")
        });
        Ok((adj, RatFun::new(det, scale)?))
    }

    pub fn adjugate(&self) -> Result<RatMatrix> {
        self.adjugate_det().map(|(a, _)| a)
    }

    /// Exact inverse; [`Error::Singular`] when the determinant vanishes.
    pub fn inverse(&self) -> Result<RatMatrix> {
        let (adj, det) = self.adjugate_det()?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let inv_det = det.inv()?;
        Ok(adj.map(|x| x * &inv_det))
    }

    /// True when every entry is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.data.iter().all(RatFun::is_polynomial)
    }

    pub fn to_poly(&self) -> Option<PolyMatrix> {
        let data = self.data.iter().map(|x| x.as_poly().cloned()).collect::<Option<Vec<_>>>()?;
        Some(PolyMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn eval_f64(&self, x: f64) -> Matrix<f64> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.eval_f64(x)).collect() }
    }
}
