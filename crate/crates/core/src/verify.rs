//! The acceptance checks, runnable individually or all at once.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{burau, full_twist_limit, full_twist_power, full_twist_word, p_nk};
use crate::corpus::{self, Presentation};
use crate::diagram::{trace, Layer};
use crate::error::{Error, Result};
use crate::invariants::{alexander, rho1, rho1_via_greens, KnotInvariants};
use crate::markov::{Region, TangleChain};
use crate::ring::{LaurentPoly, RatFun, RatMatrix};
use crate::twisting::TwistedFamily;

pub const CHECKS: [&str; 13] = [
    "golden-rho1",
    "growth-rate",
    "alexander-limit",
    "t1-laws",
    "stabilization",
    "burau-closed-form",
    "infinite-twist",
    "cartier-foata",
    "contraction",
    "bad-multicycles",
    "invariance",
    "conjecture",
    "walk-sum",
];

/// Reference values the checks compare against. Missing fields in JSON
/// fall back to the built-in values.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct Goldens {
    /// `ρ₁` by corpus knot name.
    pub rho1: BTreeMap<String, LaurentPoly>,
    /// Growth rate of `T(2, 2t + 1)`.
    pub growth_rate: RatFun,
    /// Alexander limit of `T(2, 2t + 1)`.
    pub alexander_limit: RatFun,
}

impl Default for Goldens {
    fn default() -> Self {
        let lp = LaurentPoly::from_coeffs;
        let one_plus_t = lp(0, &[1, 1]);
        let rho1 = [
            ("unknot", LaurentPoly::zero()),
            ("T(2,3)", lp(-2, &[-1, 2, -2, 2, -1])),
            ("T(2,5)", lp(-4, &[-2, 4, -5, 6, -6, 6, -5, 4, -2])),
            ("T(2,7)", lp(-6, &[-3, 6, -8, 10, -11, 12, -12, 12, -11, 10, -8, 6, -3])),
        ];
        Self {
            rho1: rho1.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            growth_rate: RatFun::new(LaurentPoly::constant(-1), &one_plus_t * &one_plus_t).unwrap(),
            alexander_limit: RatFun::new(LaurentPoly::one(), one_plus_t).unwrap(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
    /// Observations that do not by themselves fail the check.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Check {
    fn new(id: &str, passed: bool, expected: impl Into<String>, actual: impl Into<String>) -> Self {
        Self { id: id.into(), passed, expected: expected.into(), actual: actual.into(), notes: Vec::new() }
    }

    fn errored(id: &str, e: Error) -> Self {
        Self::new(id, false, "no error", format!("error: {e}"))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs the named checks (all of them for `None`) in parallel and returns
/// them in the order of [`CHECKS`].
pub fn verify(goldens: &Goldens, only: Option<&[String]>) -> Result<VerifyReport> {
    let ids: Vec<&str> = match only {
        None => CHECKS.to_vec(),
        Some(names) => {
            if let Some(bad) = names.iter().find(|n| !CHECKS.contains(&n.as_str())) {
                return Err(Error::Parse(format!("unknown check {bad}; known: {}", CHECKS.join(", "))));
            }
            CHECKS.iter().copied().filter(|c| names.iter().any(|n| n == c)).collect()
        }
    };
    let checks = ids.par_iter().map(|id| run(id, goldens)).collect();
    Ok(VerifyReport { checks })
}

fn run(id: &str, g: &Goldens) -> Check {
    let result = match id {
        "golden-rho1" => golden_rho1(g),
        "growth-rate" => exact(id, &g.growth_rate, corpus::torus_2_family().growth_rate()),
        "alexander-limit" => exact(id, &g.alexander_limit, corpus::torus_2_family().alexander_limit()),
        "t1-laws" => t1_laws(),
        "stabilization" => stabilization(),
        "burau-closed-form" => burau_closed_form(),
        "infinite-twist" => infinite_twist(),
        "cartier-foata" => cartier_foata(),
        "contraction" => contraction(),
        "bad-multicycles" => bad_multicycles(),
        "invariance" => invariance(),
        "conjecture" => conjecture(),
        "walk-sum" => walk_sum(),
        _ => unreachable!("ids are filtered against CHECKS"),
    };
    result.unwrap_or_else(|e| Check::errored(id, e))
}

fn exact(id: &str, want: &RatFun, got: Result<RatFun>) -> Result<Check> {
    let got = got?;
    Ok(Check::new(id, &got == want, want.to_factored_string(), got.to_factored_string()))
}

fn golden_rho1(g: &Goldens) -> Result<Check> {
    let mut bad = Vec::new();
    for (name, want) in &g.rho1 {
        let names: Vec<String> = if name == "unknot" {
            corpus::knots().into_iter().map(|k| k.name).filter(|n| n.starts_with("unknot")).collect()
        } else {
            vec![name.clone()]
        };
        for n in names {
            let k = corpus::find(&n).ok_or_else(|| Error::Parse(format!("no corpus knot {n}")))?;
            let d = k.presentation.diagram()?;
            let got = rho1(&d)?;
            let cross = rho1_via_greens(&d)?;
            if &got != want || cross != got {
                bad.push(format!("{n}: {got} (via Green's matrix {cross})"));
            }
        }
    }
    let expected = format!("{} values as listed", g.rho1.len());
    Ok(Check::new(
        "golden-rho1",
        bad.is_empty(),
        expected,
        if bad.is_empty() { "all match".into() } else { bad.join("; ") },
    ))
}

fn t1_laws() -> Result<Check> {
    let mut actual = Vec::new();
    let mut ok = true;
    for f in [corpus::torus_2_family(), corpus::torus_3_family()] {
        let n = f.width() as i64;
        let at1 = |r: RatFun| r.eval_one().map(|v| v.abs()).ok_or(Error::ZeroDenominator);
        let lim = at1(f.alexander_limit()?)?;
        let gr = at1(f.growth_rate()?)?;
        ok &= lim == BigRational::new(BigInt::from(1), BigInt::from(n));
        ok &= gr == BigRational::new(BigInt::from(n - 1), BigInt::from(2 * n));
        actual.push(format!("n={n}: |lim Δ(1)| = {lim}, |growth(1)| = {gr}"));
    }
    Ok(Check::new("t1-laws", ok, "1/n and (n-1)/(2n) for n = 2, 3", actual.join("; ")))
}

fn stabilization() -> Result<Check> {
    let (t_max, r0) = (8, 6);
    let report = corpus::torus_2_family().convergence_report(t_max, r0)?;
    let depths: Vec<Option<i64>> = report.rows.iter().map(|r| r.depth).collect();
    let first = depths.iter().position(|&d| d == Some(r0));
    let ok = first.is_some_and(|t| depths[t..].iter().all(|&d| d == Some(r0)));
    let shown: Vec<String> = depths.iter().map(|d| d.map_or("-".into(), |x| x.to_string())).collect();
    let mut c = Check::new(
        "stabilization",
        ok,
        format!("depth {r0} reached for some t <= {t_max} and kept"),
        format!("depths by t: [{}]", shown.join(", ")),
    );
    if let Some(t) = first {
        c.notes.push(format!("first full agreement at t = {t}"));
    }
    c.notes.push(format!("rho1 pairwise distinct from t = {}", report.distinct_from));
    Ok(c)
}

fn burau_closed_form() -> Result<Check> {
    let mut bad = Vec::new();
    for n in 2..=4 {
        for k in 1..=3 {
            if full_twist_power(n, k)? != burau(&full_twist_word(n)?.repeat(k)) {
                bad.push(format!("closed form n={n} k={k}"));
            }
        }
        let x = |e| LaurentPoly::t_pow(e);
        for k in 1..=5 {
            let rhs = LaurentPoly::one() - x(1) + &x(n as i64) * &p_nk(n, k)?;
            if p_nk(n, k + 1)? != rhs {
                bad.push(format!("recurrence n={n} k={k}"));
            }
        }
    }
    Ok(Check::new(
        "burau-closed-form",
        bad.is_empty(),
        "closed form = word product (n 2..4, k 1..3); p_{n,k+1} = 1 - T + T^n p_{n,k}",
        if bad.is_empty() { "all equal".into() } else { bad.join("; ") },
    ))
}

fn infinite_twist() -> Result<Check> {
    let mut bad = Vec::new();
    for n in 2..=5 {
        let lim = full_twist_limit(n)?;
        let twist = burau(&full_twist_word(n)?).to_rat();
        let tl = twist.checked_mul(&lim)?;
        if tl != lim {
            bad.push(format!("twist·limit, n={n}"));
        }
        if lim.checked_mul(&tl)? != lim {
            bad.push(format!("limit·twist·limit, n={n}"));
        }
    }
    Ok(Check::new(
        "infinite-twist",
        bad.is_empty(),
        "both absorption laws for n = 2..5",
        if bad.is_empty() { "all hold".into() } else { bad.join("; ") },
    ))
}

fn cartier_foata() -> Result<Check> {
    let knots: Vec<_> = corpus::knots().into_iter().filter(|k| k.presentation.crossing_count() <= 8).collect();
    let results: Vec<(String, Result<bool>)> = knots
        .par_iter()
        .map(|k| {
            let r = k.presentation.diagram().and_then(|d| TangleChain::from_diagram(&d)).and_then(|c| {
                let (lhs, rhs) = c.cartier_foata_check()?;
                Ok(lhs == rhs)
            });
            (k.name.clone(), r)
        })
        .collect();
    let bad: Vec<String> = results
        .iter()
        .filter_map(|(n, r)| match r {
            Ok(true) => None,
            Ok(false) => Some(format!("{n}: mismatch")),
            Err(e) => Some(format!("{n}: {e}")),
        })
        .collect();
    Ok(Check::new(
        "cartier-foata",
        bad.is_empty(),
        format!("det(I - A) = signed multicycle sum on {} diagrams", results.len()),
        if bad.is_empty() { "all equal".into() } else { bad.join("; ") },
    ))
}

/// Contracting a braid subregion keeps Green's entries and the determinant;
/// contracting a full twist gives Burau weights.
fn contraction() -> Result<Check> {
    let mut bad = Vec::new();
    let mut count = 0;
    for k in corpus::knots() {
        let Presentation::Braid { braid, cut } = &k.presentation else { continue };
        if braid.len() < 3 || braid.len() > 10 {
            continue;
        }
        let layers: Vec<Layer> = braid.letters().iter().map(|&l| Layer::Letter(l)).collect();
        let tr = trace(braid.strands(), &layers, *cut)?;
        let region = Region::of_layers(&tr, 1, layers.len() - 1);
        let chain = TangleChain::from_traced(&tr)?;
        let small = chain.contract(&region)?;
        let g = chain.greens_matrix()?;
        for &s in small.labels() {
            for &t in small.labels() {
                if small.green(s, t)? != *g.get(s - 1, t - 1) {
                    bad.push(format!("{}: Green's entry ({s}, {t})", k.name));
                }
            }
        }
        let (before, after) = chain.det_after_contract(&region)?;
        if before != after {
            bad.push(format!("{}: determinant", k.name));
        }
        count += 1;
    }
    for f in [corpus::torus_2_family(), corpus::torus_3_family()] {
        if let Some(msg) = twist_region_weights(&f)? {
            bad.push(msg);
        }
    }
    Ok(Check::new(
        "contraction",
        bad.is_empty(),
        format!("Green's entries and determinant kept on {count} diagrams; twist regions give Burau weights"),
        if bad.is_empty() { "all hold".into() } else { bad.join("; ") },
    ))
}

fn twist_region_weights(f: &TwistedFamily) -> Result<Option<String>> {
    let word = f.word_at(1)?;
    let layers: Vec<Layer> = word.letters().iter().map(|&l| Layer::Letter(l)).collect();
    let tr = trace(f.strands(), &layers, f.cut())?;
    let from = f.prefix().len();
    let to = from + f.twist_crossings() as usize;
    let region = Region::of_layers(&tr, from, to);
    let small = TangleChain::from_traced(&tr)?.contract(&region)?;
    let by_position = |labels: &[usize]| {
        let mut v = labels.to_vec();
        v.sort_by_key(|&l| tr.position[l]);
        v
    };
    let (ins, outs) = (by_position(&region.inputs), by_position(&region.outputs));
    let n = f.width();
    let want = burau(&full_twist_word(n)?).to_rat();
    let lo = f.slot().0;
    // Strands outside the slot pass straight through and are not compared.
    let ins: Vec<usize> = ins.into_iter().filter(|&l| (lo..lo + n).contains(&tr.position[l])).collect();
    let outs: Vec<usize> = outs.into_iter().filter(|&l| (lo..lo + n).contains(&tr.position[l])).collect();
    if ins.len() != n || outs.len() != n {
        return Ok(Some(format!("width {n} twist region has {} inputs, {} outputs", ins.len(), outs.len())));
    }
    let got =
        RatMatrix::from_fn(n, n, |p, q| small.weight(ins[p], outs[q]).cloned().unwrap_or_else(|_| RatFun::zero()));
    Ok((got != want).then(|| format!("width {n} twist region weights {got} differ from Burau {want}")))
}

fn bad_multicycles() -> Result<Check> {
    let mut sums = Vec::new();
    for (chain, region) in corpus::bad_multicycle_chains() {
        sums.push(chain.bad_multicycle_sum(&region)?);
    }
    let ok = sums.iter().all(RatFun::is_zero);
    let shown: Vec<String> = sums.iter().map(|s| s.to_string()).collect();
    Ok(Check::new("bad-multicycles", ok, format!("0 on {} chains", sums.len()), format!("[{}]", shown.join(", "))))
}

fn invariance() -> Result<Check> {
    let pres = corpus::trefoil_presentations();
    let mut values = BTreeMap::new();
    for p in &pres {
        let d = p.diagram()?;
        let key = (alexander(&d)?.to_string(), rho1(&d)?.to_string());
        values.entry(key).or_insert_with(Vec::new).push(p.clone());
    }
    let shown: Vec<String> = values.keys().map(|(a, r)| format!("Δ = {a}, ρ₁ = {r}")).collect();
    Ok(Check::new(
        "invariance",
        values.len() == 1,
        format!("one value across {} trefoil presentations", pres.len()),
        shown.join(" | "),
    ))
}

fn conjecture() -> Result<Check> {
    let names = ["T(2,3)", "T(2,5)", "T(2,7)", "T(3,4)", "T(3,5)"];
    let mut notes = Vec::new();
    let mut shown = Vec::new();
    for name in names {
        let k = corpus::find(name).ok_or_else(|| Error::Parse(format!("no corpus knot {name}")))?;
        let inv = KnotInvariants::compute(&k.presentation.diagram()?, k.positive)?;
        shown.push(format!("{name}: δ₁ = {}", inv.delta1.as_ref().map_or("-".into(), |d| d.to_string())));
        notes.extend(inv.findings.iter().map(|f| format!("{name}: {f}")));
    }
    // Every knot here has at most 10 crossings, where the claim is
    // reported verified, so any finding is a real contradiction.
    let mut c = Check::new(
        "conjecture",
        notes.is_empty(),
        "ρ₁ symmetric, divisible by (1 - T)^2, δ₁ ≤ 0 coefficientwise",
        shown.join("; "),
    );
    c.notes = notes;
    Ok(c)
}

fn walk_sum() -> Result<Check> {
    let (at, len, tol) = (0.99, 60, 1e-6);
    let mut worst: f64 = 0.0;
    for name in ["T(2,3)", "T(2,5)"] {
        let d = corpus::find(name).unwrap().presentation.diagram()?;
        let chain = TangleChain::from_diagram(&d)?;
        let g = chain.greens_matrix()?.eval_f64(at);
        for (a, &s) in chain.labels().iter().enumerate() {
            for (b, &t) in chain.labels().iter().enumerate() {
                let w = chain.walk_sum(s, t, len, at)?;
                worst = worst.max((w - g.get(a, b)).abs());
            }
        }
    }
    Ok(Check::new(
        "walk-sum",
        worst <= tol,
        format!("|walk sum - Green's entry| <= {tol:e} at T = {at}, length {len}"),
        format!("max deviation {worst:e}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_check_rejected() {
        assert!(verify(&Goldens::default(), Some(&["nope".to_string()])).is_err());
    }

    #[test]
    fn wrong_golden_fails() {
        let mut g = Goldens::default();
        g.rho1.insert("T(2,3)".into(), LaurentPoly::one());
        let r = verify(&g, Some(&["golden-rho1".to_string()])).unwrap();
        assert!(!r.passed());
        assert_eq!(r.checks.len(), 1);
    }

    #[test]
    fn goldens_json_defaults() {
        let g: Goldens = serde_json::from_str("{}").unwrap();
        assert_eq!(g, Goldens::default());
    }
}
