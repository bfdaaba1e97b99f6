//! Families of knots obtained by inserting `t` full twists on `n` parallel,
//! coherently oriented strands of a braid, and their `t → ∞` limits.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{full_twist_word, BraidWord};
use crate::diagram::{braid_closure_to_long, trace, Crossing, Layer, Traced, UprightDiagram};
use crate::error::{Error, Result};
use crate::invariants::{r1_tilde_doubled, rho1};
use crate::markov::TangleChain;
use crate::ring::{LaurentPoly, RatFun, TruncatedSeries};

/// `prefix · Ω_n^t · suffix` on `m` strands, with the full twist acting on
/// strands `slot.0..=slot.1`, closed up and cut open at strand `cut`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawFamily", into = "RawFamily")]
pub struct TwistedFamily {
    m: usize,
    prefix: Vec<i32>,
    suffix: Vec<i32>,
    slot: (usize, usize),
    cut: usize,
}

#[derive(Serialize, Deserialize)]
struct RawFamily {
    m: usize,
    prefix: Vec<i32>,
    suffix: Vec<i32>,
    slot: [usize; 2],
    cut: usize,
}

impl TryFrom<RawFamily> for TwistedFamily {
    type Error = Error;

    fn try_from(r: RawFamily) -> Result<Self> {
        Self::new(r.m, r.prefix, r.suffix, (r.slot[0], r.slot[1]), r.cut)
    }
}

impl From<TwistedFamily> for RawFamily {
    fn from(f: TwistedFamily) -> Self {
        Self { m: f.m, prefix: f.prefix, suffix: f.suffix, slot: [f.slot.0, f.slot.1], cut: f.cut }
    }
}

impl TwistedFamily {
    pub fn new(m: usize, prefix: Vec<i32>, suffix: Vec<i32>, slot: (usize, usize), cut: usize) -> Result<Self> {
        let f = Self { m, prefix, suffix, slot, cut };
        f.validate()?;
        Ok(f)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn validate(&self) -> Result<()> {
        let (a, b) = self.slot;
        if a == 0 || b > self.m || b <= a {
            return Err(Error::InvalidFamily(format!(
                "slot [{a}, {b}] is not a range of at least two of {} strands",
                self.m
            )));
        }
        if self.cut == 0 || self.cut > self.m {
            return Err(Error::InvalidFamily(format!("cut {} outside 1..={}", self.cut, self.m)));
        }
        BraidWord::new(self.m, self.prefix.clone())?;
        BraidWord::new(self.m, self.suffix.clone())?;
        // The full twist is a pure braid, so t = 0 decides every t; t = 1
        // is checked anyway as a guard on the slot arithmetic.
        for t in [0, 1] {
            let k = self.word_at(t)?.closure_components();
            if k != 1 {
                return Err(Error::NotAKnot(k));
            }
        }
        Ok(())
    }

    pub fn strands(&self) -> usize {
        self.m
    }

    /// Width `n` of the twist slot.
    pub fn width(&self) -> usize {
        self.slot.1 - self.slot.0 + 1
    }

    pub fn slot(&self) -> (usize, usize) {
        self.slot
    }

    pub fn cut(&self) -> usize {
        self.cut
    }

    pub fn prefix(&self) -> &[i32] {
        &self.prefix
    }

    pub fn suffix(&self) -> &[i32] {
        &self.suffix
    }

    /// Crossings added by one full twist, `n(n − 1)`.
    pub fn twist_crossings(&self) -> i64 {
        let n = self.width() as i64;
        n * (n - 1)
    }

    fn twist_letters(&self) -> Vec<i32> {
        let shift = self.slot.0 as i32 - 1;
        full_twist_word(self.width())
            .expect("slot width is at least two")
            .letters()
            .iter()
            .map(|&k| k + shift)
            .collect()
    }

    /// The braid of `K_t`; negative `t` inserts inverse full twists.
    pub fn word_at(&self, t: i64) -> Result<BraidWord> {
        let twist = self.twist_letters();
        let mut letters = self.prefix.clone();
        for _ in 0..t.unsigned_abs() {
            if t > 0 {
                letters.extend_from_slice(&twist);
            } else {
                letters.extend(twist.iter().rev().map(|k| -k));
            }
        }
        letters.extend_from_slice(&self.suffix);
        BraidWord::new(self.m, letters)
    }

    /// The long diagram `D_t` of `K_t`.
    pub fn diagram_at(&self, t: i64) -> Result<UprightDiagram> {
        braid_closure_to_long(&self.word_at(t)?, self.cut)
    }

    /// The family with every crossing switched. Its `K_t` is the mirror
    /// image of `K_{−t}` of this family, which turns `t → −∞` questions into
    /// `t → +∞` ones.
    pub fn mirror(&self) -> Self {
        let neg = |w: &[i32]| w.iter().map(|k| -k).collect();
        Self { prefix: neg(&self.prefix), suffix: neg(&self.suffix), ..self.clone() }
    }

    fn vertex(&self) -> Layer {
        Layer::Vertex { lo: self.slot.0, width: self.width() }
    }

    fn letters(w: &[i32]) -> impl Iterator<Item = Layer> + '_ {
        w.iter().map(|&k| Layer::Letter(k))
    }

    /// `D_∞`: the slot of `D_0` holds an infinite twist vertex.
    pub fn trace_d_infinity(&self) -> Result<Traced> {
        let layers: Vec<Layer> =
            Self::letters(&self.prefix).chain([self.vertex()]).chain(Self::letters(&self.suffix)).collect();
        trace(self.m, &layers, self.cut)
    }

    /// `D_∞^τ`: vertex, one full twist `τ`, vertex.
    pub fn trace_d_tau_infinity(&self) -> Result<Traced> {
        let twist = self.twist_letters();
        let layers: Vec<Layer> = Self::letters(&self.prefix)
            .chain([self.vertex()])
            .chain(Self::letters(&twist))
            .chain([self.vertex()])
            .chain(Self::letters(&self.suffix))
            .collect();
        trace(self.m, &layers, self.cut)
    }

    pub fn build_d_infinity(&self) -> Result<TangleChain> {
        TangleChain::from_traced(&self.trace_d_infinity()?)
    }

    /// The chain of `D_∞^τ` and the crossings of `τ` from bottom to top.
    pub fn build_d_tau_infinity(&self) -> Result<(TangleChain, Vec<Crossing>)> {
        let tr = self.trace_d_tau_infinity()?;
        let (lo, hi) = (self.prefix.len() + 1, self.prefix.len() + 1 + twist_len(self.width()));
        let tau = tr
            .crossings
            .iter()
            .zip(&tr.crossing_layers)
            .filter(|(_, &l)| (lo..hi).contains(&l))
            .map(|(c, _)| *c)
            .collect();
        Ok((TangleChain::from_traced(&tr)?, tau))
    }

    /// `−φ(D_0) − w(D_0)`, the normalising exponent shared by every limit.
    fn normaliser(&self) -> Result<i64> {
        let d0 = self.diagram_at(0)?;
        Ok(-d0.rotation_total() - d0.writhe())
    }

    /// `lim T^{tn(n−1)/2} Δ_{K_t} = T^{(−φ(D_0)−w(D_0))/2} det(I − A_∞)`.
    pub fn alexander_limit(&self) -> Result<RatFun> {
        let det = self.build_d_infinity()?.determinant()?;
        let lim = det.shift_half(self.normaliser()?);
        if !lim.num().is_integer_grain() || !lim.den().is_integer_grain() {
            return Err(Error::HalfIntegerExponent("the Alexander limit"));
        }
        Ok(lim)
    }

    /// `lim d_t = T^{−φ(D_0)−w(D_0)} Σ_{c ∈ τ} R̃₁(c)`, with `R̃₁` taken on
    /// `D_∞^τ` and no rotation terms.
    pub fn growth_rate(&self) -> Result<RatFun> {
        let (chain, tau) = self.build_d_tau_infinity()?;
        let (adj, det) = chain.matrix().identity_minus()?.adjugate_det()?;
        let mut twice = RatFun::zero();
        for c in &tau {
            twice = twice + r1_tilde_doubled(&adj, &det, c)?;
        }
        Ok((twice * RatFun::from_ratio(1, 2)?).shift(self.normaliser()?))
    }

    /// `det(I − A_∞)`, `det(I − A_∞^τ)` and the exponent `α` with
    /// `det(I − A_∞^τ) = ±T^α · lim Δ`, if the quotient is a signed monomial.
    pub fn limit_determinants(&self) -> Result<LimitDeterminants> {
        let det_infinity = self.build_d_infinity()?.determinant()?;
        let det_tau = self.build_d_tau_infinity()?.0.determinant()?;
        let ratio = det_tau.checked_div(&self.alexander_limit()?)?;
        let alpha = ratio.as_poly().filter(|p| p.half_terms().count() == 1).and_then(|p| {
            let (h, c) = p.half_terms().next().unwrap();
            let unit = c.magnitude() == &num_bigint::BigUint::from(1u8);
            (unit && h % 2 == 0).then_some((h / 2, c.sign() == num_bigint::Sign::Minus))
        });
        Ok(LimitDeterminants {
            equal: det_infinity == det_tau,
            det_infinity,
            det_tau,
            alpha: alpha.map(|a| a.0),
            alpha_sign_negative: alpha.is_some_and(|a| a.1),
        })
    }

    /// `d_t = T^{tn(n−1)}(T^{n(n−1)} ρ₁(K_{t+1}) − ρ₁(K_t))`.
    pub fn d_t_empirical(&self, t: i64) -> Result<LaurentPoly> {
        let (now, next) = rayon::join(|| rho1(&self.diagram_at(t)?), || rho1(&self.diagram_at(t + 1)?));
        Ok(self.d_from(t, &now?, &next?))
    }

    fn d_from(&self, t: i64, now: &LaurentPoly, next: &LaurentPoly) -> LaurentPoly {
        let k = self.twist_crossings();
        (next.shift(k) - now).shift(t * k)
    }

    /// `d_t` for `t = 0..=t_max` against the series of the growth rate
    /// through degree `r0`.
    pub fn convergence_report(&self, t_max: usize, r0: i64) -> Result<GrowthReport> {
        if t_max == 0 {
            return Err(Error::InvalidFamily("t_max must be at least 1".into()));
        }
        let limit = self.growth_rate()?;
        let series = TruncatedSeries::expand(&limit, r0)?;
        let rho: Vec<LaurentPoly> =
            (0..=t_max as i64 + 1).into_par_iter().map(|t| rho1(&self.diagram_at(t)?)).collect::<Result<_>>()?;
        let lowest = series.min_exp();
        let rows: Vec<GrowthRow> = (0..=t_max)
            .map(|t| {
                let d = self.d_from(t as i64, &rho[t], &rho[t + 1]);
                let depth = series.agreement_depth(&d, lowest);
                GrowthRow { t, rho1: rho[t].clone(), d, depth }
            })
            .collect();
        let depths: Vec<i64> = rows.iter().map(|r| r.depth.unwrap_or(i64::MIN)).collect();
        let nondecreasing = depths.windows(2).all(|w| w[0] <= w[1]);
        Ok(GrowthReport {
            family: self.clone(),
            r0,
            limit,
            limit_series: series.to_poly(),
            distinct_from: distinct_tail(&rho[..=t_max]),
            nondecreasing,
            rows,
        })
    }
}

fn twist_len(n: usize) -> usize {
    n * (n - 1)
}

/// Smallest `t0` such that the values from `t0` on are pairwise distinct.
fn distinct_tail(values: &[LaurentPoly]) -> usize {
    let mut seen = BTreeSet::new();
    for (t, v) in values.iter().enumerate().rev() {
        if !seen.insert(v.to_string()) {
            return t + 1;
        }
    }
    0
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LimitDeterminants {
    pub det_infinity: RatFun,
    pub det_tau: RatFun,
    pub equal: bool,
    pub alpha: Option<i64>,
    pub alpha_sign_negative: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GrowthRow {
    pub t: usize,
    pub rho1: LaurentPoly,
    pub d: LaurentPoly,
    /// Last degree through which `d_t` matches the limit series; `None` if
    /// they differ already in the lowest degree.
    pub depth: Option<i64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GrowthReport {
    pub family: TwistedFamily,
    pub r0: i64,
    pub limit: RatFun,
    pub limit_series: LaurentPoly,
    pub rows: Vec<GrowthRow>,
    pub nondecreasing: bool,
    /// `ρ₁(K_t)` for `t ≥ distinct_from` are pairwise distinct on the
    /// computed range.
    pub distinct_from: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::alexander;
    use num_traits::Signed;

    fn t2() -> TwistedFamily {
        TwistedFamily::new(2, vec![1], vec![], (1, 2), 1).unwrap()
    }

    fn lp(min: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(min, c)
    }

    fn rat(num: LaurentPoly, den: LaurentPoly) -> RatFun {
        RatFun::new(num, den).unwrap()
    }

    #[test]
    fn members() {
        let f = t2();
        assert!(rho1(&f.diagram_at(0).unwrap()).unwrap().is_zero());
        assert_eq!(alexander(&f.diagram_at(1).unwrap()).unwrap(), lp(-1, &[1, -1, 1]));
        let w0 = f.diagram_at(0).unwrap().writhe();
        assert_eq!(f.diagram_at(3).unwrap().writhe(), w0 + 6);
    }

    #[test]
    fn rejects_bad_families() {
        assert!(TwistedFamily::new(2, vec![], vec![], (1, 2), 1).is_err());
        assert!(TwistedFamily::new(3, vec![1], vec![], (1, 1), 1).is_err());
        assert!(TwistedFamily::new(3, vec![1, 2], vec![], (1, 3), 4).is_err());
        assert!(TwistedFamily::from_json(r#"{"m":2,"prefix":[1],"suffix":[],"slot":[1,2],"cut":1}"#).is_ok());
    }

    #[test]
    fn t2_limits() {
        let f = t2();
        let one_plus_t = lp(0, &[1, 1]);
        assert_eq!(f.alexander_limit().unwrap(), rat(LaurentPoly::one(), one_plus_t.clone()));
        assert_eq!(f.growth_rate().unwrap(), rat(LaurentPoly::constant(-1), &one_plus_t * &one_plus_t));
    }

    #[test]
    fn t2_chains() {
        let f = t2();
        let chain = f.build_d_infinity().unwrap();
        assert_eq!(chain.len(), 5);
        let (chain, tau) = f.build_d_tau_infinity().unwrap();
        assert_eq!(chain.len(), 11);
        assert_eq!(tau.len(), 2);
        assert!(tau.iter().all(|c| c.sign == 1));
        assert_eq!(tau[0], Crossing { sign: 1, i: 8, j: 3, ip: 9, jp: 4 });
        let lim = f.limit_determinants().unwrap();
        assert!(lim.equal);
        assert!(lim.alpha.is_some());
    }

    #[test]
    fn first_differences() {
        let f = t2();
        assert_eq!(f.d_t_empirical(0).unwrap(), lp(0, &[-1, 2, -2, 2, -1]));
        let d1 = f.d_t_empirical(1).unwrap();
        assert_eq!((d1.coeff(0), d1.coeff(1), d1.coeff(2)), ((-1).into(), 2.into(), (-3).into()));
    }

    #[test]
    fn report() {
        let r = t2().convergence_report(6, 6).unwrap();
        assert!(r.nondecreasing);
        assert_eq!(r.rows.last().unwrap().depth, Some(6));
        assert_eq!(r.distinct_from, 0);
    }

    #[test]
    fn negative_twists_mirror() {
        let f = t2();
        let m = f.mirror();
        for t in 1..3 {
            let a = rho1(&f.diagram_at(-t).unwrap()).unwrap();
            let b = rho1(&m.diagram_at(t).unwrap().mirror()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn three_strand_family() {
        let f = TwistedFamily::new(3, vec![1, 2], vec![], (1, 3), 1).unwrap();
        let lim = f.alexander_limit().unwrap();
        let g = f.growth_rate().unwrap();
        let third = num_rational::BigRational::new(1.into(), 3.into());
        assert_eq!(lim.eval_one().unwrap().abs(), third);
        assert_eq!(g.eval_one().unwrap().abs(), third);
    }
}
