//! Knot invariants of upright long-knot diagrams: the symmetrized
//! Alexander polynomial, the perturbed Alexander invariant `ρ₁`, the Conway
//! polynomial and the perturbed Conway invariant `δ₁`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::diagram::{Crossing, UprightDiagram};
use crate::error::{Error, Result};
use crate::ring::{write_terms, LaurentPoly, Matrix, PolyMatrix, RatFun, RatMatrix, Ring};

/// `Δ = T^{(−φ−w)/2} det(I − A)`.
pub fn alexander(d: &UprightDiagram) -> Result<LaurentPoly> {
    let det = d.transition_matrix()?.identity_minus()?.det()?;
    let delta = det.shift_half(-d.rotation_total() - d.writhe());
    if !delta.is_integer_grain() {
        return Err(Error::HalfIntegerExponent("the Alexander polynomial"));
    }
    Ok(delta)
}

/// `R₁(c) = σ(g_ji(g_{j⁺j} + g_{jj⁺} − g_ij) − g_ii(g_{jj⁺} − 1) − 1/2)`
/// for a crossing of the diagram whose Green's matrix is `g`.
pub fn r1_crossing(g: &RatMatrix, c: &Crossing) -> Result<RatFun> {
    check_labels(g.rows(), c)?;
    let at = |a: usize, b: usize| g.get(a - 1, b - 1);
    let (i, j, jp) = (c.i, c.j, c.jp);
    let inner = at(j, i) * &(at(jp, j) + at(j, jp) - at(i, j));
    let tail = at(i, i) * &(at(j, jp) - RatFun::one());
    let v = inner - tail - RatFun::from_ratio(1, 2)?;
    Ok(if c.sign > 0 { v } else { -v })
}

fn check_labels(n: usize, c: &Crossing) -> Result<()> {
    match c.labels().into_iter().find(|&l| l == 0 || l > n) {
        Some(l) => Err(Error::InvalidDiagram(format!("label {l} outside a {n}-state Green's matrix"))),
        None => Ok(()),
    }
}

/// `2·R̃₁(c)` where `R̃₁ = det(I − A)²·R₁` is written in terms of the
/// adjugate `adj` of `I − A` and `det = det(I − A)`:
/// `σ(g̃_ji(g̃_{j⁺j} + g̃_{jj⁺} − g̃_ij) − g̃_ii(g̃_{jj⁺} − det) − det²/2)`.
/// Doubling keeps everything integral.
pub fn r1_tilde_doubled<R: Ring>(adj: &Matrix<R>, det: &R, c: &Crossing) -> Result<R> {
    check_labels(adj.rows(), c)?;
    let at = |a: usize, b: usize| adj.get(a - 1, b - 1).clone();
    let (i, j, jp) = (c.i, c.j, c.jp);
    let inner = at(j, i) * &(at(jp, j) + &at(j, jp) - at(i, j));
    let tail = at(i, i) * &(at(j, jp) - det.clone());
    let v = inner.clone() + &inner - &(tail.clone() + &tail) - det.clone() * det;
    Ok(if c.sign > 0 { v } else { -v })
}

/// `ρ₁` through the adjugate of `I − A`, staying in ℤ[T^±1]:
/// `T^{−φ−w}(Σ_c R̃₁(c) − Σ_k φ_k(det·g̃_kk − det²/2))`.
pub fn rho1(d: &UprightDiagram) -> Result<LaurentPoly> {
    let m = d.transition_matrix()?.identity_minus()?;
    let (adj, det) = m.adjugate_det()?;
    rho1_from_adjugate(d, &adj, &det)
}

pub(crate) fn rho1_from_adjugate(d: &UprightDiagram, adj: &PolyMatrix, det: &LaurentPoly) -> Result<LaurentPoly> {
    let mut twice = LaurentPoly::zero();
    for c in &d.crossings {
        twice += &r1_tilde_doubled(adj, det, c)?;
    }
    let det_sq = det * det;
    for (&k, &phi) in &d.rotations {
        let gkk = adj.get(k - 1, k - 1);
        let phi_tilde_twice = (det * gkk).scale(&BigInt::from(2 * phi)) - det_sq.scale(&BigInt::from(phi));
        twice -= &phi_tilde_twice;
    }
    let rho = twice
        .div_scalar_exact(&BigInt::from(2))
        .ok_or(Error::NonIntegerCoefficient("rho1"))?
        .shift(-d.rotation_total() - d.writhe());
    if !rho.is_integer_grain() {
        return Err(Error::HalfIntegerExponent("rho1"));
    }
    Ok(rho)
}

/// `ρ₁` from its defining formula over ℤ(T), with `G = (I − A)⁻¹`:
/// `Δ²(Σ_c R₁(c) − Σ_k φ_k(g_kk − 1/2))`.
pub fn rho1_via_greens(d: &UprightDiagram) -> Result<LaurentPoly> {
    let m = d.transition_matrix()?.identity_minus()?;
    let det = m.det()?;
    let g = m.to_rat().inverse()?;
    let half = RatFun::from_ratio(1, 2)?;
    let mut sum = RatFun::zero();
    for c in &d.crossings {
        sum = sum + r1_crossing(&g, c)?;
    }
    for (&k, &phi) in &d.rotations {
        sum = sum - (g.get(k - 1, k - 1) - &half).scale_int(phi);
    }
    let delta_sq = RatFun::from_poly((&det * &det).shift(-d.rotation_total() - d.writhe()));
    (sum * delta_sq).into_poly().ok_or(Error::NonIntegerCoefficient("rho1"))
}

/// An integer polynomial in `z`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZPoly(LaurentPoly);

impl ZPoly {
    pub fn as_poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `(exponent, coefficient)` pairs in ascending order.
    pub fn coefficients(&self) -> Vec<(i64, BigInt)> {
        self.0.half_terms().map(|(h, c)| (h / 2, c.clone())).collect()
    }

    /// The Laurent polynomial in `x` obtained by putting `z = x − x⁻¹`.
    pub fn substitute(&self) -> LaurentPoly {
        let step = LaurentPoly::from_coeffs(-1, &[-1, 0, 1]);
        let mut out = LaurentPoly::zero();
        for (k, c) in self.coefficients() {
            out += &step.pow(k as u32).scale(&c);
        }
        out
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.0, "z")
    }
}

/// The polynomial `P` with `P(x − x⁻¹) = f(x²)`, found by peeling off the
/// top power of `x` one `(x − x⁻¹)^k` at a time.
pub fn conway_substitution(f: &LaurentPoly) -> Result<ZPoly> {
    if !f.is_integer_grain() {
        return Err(Error::NoConwaySolution(f.to_string()));
    }
    let step = LaurentPoly::from_coeffs(-1, &[-1, 0, 1]);
    let mut rest = f.compose_power(2);
    let mut terms = Vec::new();
    while let Some(top) = rest.max_exp() {
        if top < 0 {
            return Err(Error::NoConwaySolution(f.to_string()));
        }
        let c = rest.leading_coeff().unwrap().clone();
        rest -= &step.pow(top as u32).scale(&c);
        terms.push((2 * top, c));
    }
    Ok(ZPoly(LaurentPoly::from_half_terms(terms)))
}

/// The Conway polynomial `∇` with `∇(x − x⁻¹) = Δ(x²)`.
pub fn conway(alex: &LaurentPoly) -> Result<ZPoly> {
    if !alex.is_symmetric() || alex.eval_one().abs() != BigInt::from(1) {
        return Err(Error::NoConwaySolution(format!("{alex} is not a symmetric Alexander polynomial")));
    }
    conway_substitution(alex)
}

/// `ρ₁^red = T·ρ₁/(1 − T)²`.
pub fn rho1_reduced(rho1: &LaurentPoly) -> Result<LaurentPoly> {
    if !rho1.is_symmetric() {
        return Err(Error::NotSymmetric(rho1.to_string()));
    }
    let sq = LaurentPoly::from_coeffs(0, &[1, -2, 1]);
    let q = rho1.div_exact(&sq).ok_or_else(|| Error::NotDivisible(rho1.to_string()))?;
    Ok(q.shift(1))
}

/// `δ₁` with `δ₁(x − x⁻¹) = ρ₁^red(x²)`.
pub fn delta1(rho1_red: &LaurentPoly) -> Result<ZPoly> {
    if !rho1_red.is_symmetric() {
        return Err(Error::NotSymmetric(rho1_red.to_string()));
    }
    conway_substitution(rho1_red)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Positivity {
    pub claims_positive: bool,
    /// Every coefficient of `δ₁` is `≤ 0`.
    pub nonpositive: bool,
    /// Every coefficient of `δ₁` is `≥ 0`.
    pub nonnegative: bool,
    /// The knot is claimed positive yet `δ₁` has a positive coefficient.
    pub counterexample: bool,
}

/// Sign pattern of `δ₁` against a claim that the knot is positive.
pub fn positivity_report(delta1: &ZPoly, claims_positive: bool) -> Positivity {
    let coeffs = delta1.coefficients();
    let nonpositive = coeffs.iter().all(|(_, c)| !c.is_positive());
    let nonnegative = coeffs.iter().all(|(_, c)| !c.is_negative());
    Positivity { claims_positive, nonpositive, nonnegative, counterexample: claims_positive && !nonpositive }
}

/// All invariants of one knot, plus anything unexpected met on the way.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KnotInvariants {
    pub alexander: LaurentPoly,
    pub conway: ZPoly,
    pub rho1: LaurentPoly,
    pub rho1_reduced: Option<LaurentPoly>,
    pub delta1: Option<ZPoly>,
    pub positivity: Option<Positivity>,
    /// Failures of symmetry or `(1 − T)²`-divisibility of `ρ₁`, or of the
    /// sign pattern of `δ₁` for a knot claimed positive.
    pub findings: Vec<String>,
}

impl KnotInvariants {
    pub fn compute(d: &UprightDiagram, claims_positive: bool) -> Result<Self> {
        let m = d.transition_matrix()?.identity_minus()?;
        let (adj, det) = m.adjugate_det()?;
        let alexander = det.shift_half(-d.rotation_total() - d.writhe());
        if !alexander.is_integer_grain() {
            return Err(Error::HalfIntegerExponent("the Alexander polynomial"));
        }
        let conway = conway(&alexander)?;
        let rho1 = rho1_from_adjugate(d, &adj, &det)?;
        let mut findings = Vec::new();
        let rho1_reduced = match rho1_reduced(&rho1) {
            Ok(r) => Some(r),
            Err(e) => {
                findings.push(format!("rho1: {e}"));
                None
            }
        };
        let delta1 = match rho1_reduced.as_ref().map(delta1) {
            Some(Ok(z)) => Some(z),
            Some(Err(e)) => {
                findings.push(format!("delta1: {e}"));
                None
            }
            None => None,
        };
        let positivity = delta1.as_ref().map(|z| positivity_report(z, claims_positive));
        if positivity.as_ref().is_some_and(|p| p.counterexample) {
            findings
                .push(format!("delta1 = {} has a positive coefficient for a positive knot", delta1.as_ref().unwrap()));
        }
        Ok(Self { alexander, conway, rho1, rho1_reduced, delta1, positivity, findings })
    }
}
