use knotwalk::braid::burau;
use knotwalk::corpus;
use knotwalk::diagram::braid_closure_to_long;
use knotwalk::invariants::{alexander, conway, delta1, rho1, rho1_reduced, rho1_via_greens};
use knotwalk::{BraidWord, LaurentPoly, RatFun, RatMatrix, TangleChain, UprightDiagram};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn lp(lo: i64, c: &[i64]) -> LaurentPoly {
    LaurentPoly::from_coeffs(lo, c)
}

/// `p = ±T^k q` for some `k`.
fn equal_up_to_unit(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    let (Some(a), Some(b)) = (p.min_exp(), q.min_exp()) else { return p.is_zero() && q.is_zero() };
    let (p, q) = (p.shift(-a), q.shift(-b));
    p == q || p == q.scale(&BigInt::from(-1))
}

/// `Δ ≐` the minor of `I − ψ(β)` with the last row and column removed.
fn burau_alexander(w: &BraidWord) -> LaurentPoly {
    let n = w.strands();
    let m = burau(w).identity_minus().unwrap();
    let keep: Vec<usize> = (0..n - 1).collect();
    m.select(&keep, &keep).det().unwrap()
}

fn braid(n: usize, w: &[i32]) -> BraidWord {
    BraidWord::new(n, w.to_vec()).unwrap()
}

#[test]
fn alexander_agrees_with_burau_on_corpus() {
    for k in corpus::knots() {
        let d = k.presentation.diagram().unwrap();
        let delta = alexander(&d).unwrap();
        assert!(delta.is_symmetric(), "{}", k.name);
        assert_eq!(delta.eval_one().abs(), BigInt::one(), "{}", k.name);
        if let corpus::Presentation::Braid { braid, .. } = &k.presentation {
            if braid.strands() > 1 {
                assert!(equal_up_to_unit(&delta, &burau_alexander(braid)), "{}", k.name);
            }
        }
    }
}

fn binomial_sub(z: &[(i64, i64)]) -> LaurentPoly {
    // Σ c (x − 1/x)^k = Σ c Σ_j C(k, j) (−1)^j x^{k − 2j}
    let mut out = LaurentPoly::zero();
    for &(k, c) in z {
        let mut binom = 1i64;
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out += &LaurentPoly::monomial(c * sign * binom, k - 2 * j);
            binom = binom * (k - j) / (j + 1);
        }
    }
    out
}

#[test]
fn conway_by_binomial_expansion() {
    for k in corpus::knots() {
        let delta = alexander(&k.presentation.diagram().unwrap()).unwrap();
        let z = conway(&delta).unwrap();
        let terms: Vec<(i64, i64)> =
            z.coefficients().into_iter().map(|(e, c)| (e, i64::try_from(c).unwrap())).collect();
        assert!(terms.iter().all(|(e, _)| e % 2 == 0), "{}", k.name);
        assert_eq!(binomial_sub(&terms), delta.compose_power(2), "{}", k.name);
    }
}

#[test]
fn reduced_invariants_by_multiplication() {
    for k in corpus::knots() {
        let r = rho1(&k.presentation.diagram().unwrap()).unwrap();
        let red = rho1_reduced(&r).unwrap();
        assert_eq!(&red.shift(-1) * &lp(0, &[1, -2, 1]), r, "{}", k.name);
        let d = delta1(&red).unwrap();
        let terms: Vec<(i64, i64)> =
            d.coefficients().into_iter().map(|(e, c)| (e, i64::try_from(c).unwrap())).collect();
        assert_eq!(binomial_sub(&terms), red.compose_power(2), "{}", k.name);
    }
}

#[test]
fn both_rho1_routes_agree_on_corpus() {
    for k in corpus::knots() {
        let d = k.presentation.diagram().unwrap();
        assert_eq!(rho1(&d).unwrap(), rho1_via_greens(&d).unwrap(), "{}", k.name);
    }
}

#[test]
fn mirror_negates_rho1() {
    for k in corpus::knots() {
        let d = k.presentation.diagram().unwrap();
        let r = rho1(&d).unwrap();
        assert_eq!(rho1(&d.mirror()).unwrap(), r.scale(&BigInt::from(-1)), "{}", k.name);
        assert!(r.is_symmetric(), "{}", k.name);
    }
}

#[test]
fn figure_eight_rho1_vanishes() {
    // An amphichiral knot has ρ₁ = −ρ₁.
    let d = braid_closure_to_long(&braid(3, &[1, -2, 1, -2]), 2).unwrap();
    assert!(rho1(&d).unwrap().is_zero());
}

/// `det(I − A)` by the Leibniz formula.
fn leibniz_det(m: &RatMatrix) -> RatFun {
    fn go(m: &RatMatrix, row: usize, used: &mut Vec<bool>, perm: &mut Vec<usize>, acc: &mut RatFun) {
        let n = m.rows();
        if row == n {
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if perm[i] > perm[j] {
                        inversions += 1;
                    }
                }
            }
            let mut term = RatFun::one();
            for (i, &j) in perm.iter().enumerate() {
                term = term * m.get(i, j);
            }
            *acc = acc.clone() + if inversions % 2 == 0 { term } else { -term };
            return;
        }
        for j in 0..n {
            if !used[j] && !m.get(row, j).is_zero() {
                used[j] = true;
                perm.push(j);
                go(m, row + 1, used, perm, acc);
                perm.pop();
                used[j] = false;
            }
        }
    }
    let mut acc = RatFun::zero();
    go(m, 0, &mut vec![false; m.rows()], &mut Vec::new(), &mut acc);
    acc
}

#[test]
fn multicycle_sum_matches_leibniz() {
    for k in corpus::knots().into_iter().filter(|k| k.presentation.crossing_count() <= 5) {
        let chain = TangleChain::from_diagram(&k.presentation.diagram().unwrap()).unwrap();
        let (_, multicycles) = chain.cartier_foata_check().unwrap();
        let oracle = leibniz_det(&chain.matrix().identity_minus().unwrap());
        assert_eq!(multicycles, oracle, "{}", k.name);
    }
}

#[test]
fn greens_matrix_inverts() {
    for k in corpus::knots() {
        let chain = TangleChain::from_diagram(&k.presentation.diagram().unwrap()).unwrap();
        let g = chain.greens_matrix().unwrap();
        let i_minus_a = chain.matrix().identity_minus().unwrap();
        assert_eq!(i_minus_a.checked_mul(&g).unwrap(), RatMatrix::identity(chain.len()), "{}", k.name);
    }
}

#[test]
fn trivial_diagram() {
    let d = UprightDiagram::trivial();
    assert!(rho1(&d).unwrap().is_zero());
    assert!(alexander(&d).unwrap().is_one());
}

fn knot_braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=3)
        .prop_flat_map(|n| {
            let letter = prop::sample::select((1..n as i32).flat_map(|k| [k, -k]).collect::<Vec<_>>());
            (Just(n), prop::collection::vec(letter, 1..7))
        })
        .prop_map(|(n, w)| braid(n, &w))
        .prop_filter("closure is a knot", |b| b.closure_components() == 1)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cut_choice_is_irrelevant(b in knot_braid()) {
        let base = braid_closure_to_long(&b, 1).unwrap();
        let (r, a) = (rho1(&base).unwrap(), alexander(&base).unwrap());
        for cut in 2..=b.strands() {
            let d = braid_closure_to_long(&b, cut).unwrap();
            prop_assert_eq!(rho1(&d).unwrap(), r.clone());
            prop_assert_eq!(alexander(&d).unwrap(), a.clone());
        }
    }

    #[test]
    fn conjugation_is_irrelevant(b in knot_braid(), rot in 0usize..6) {
        let w = b.letters();
        let k = rot % w.len();
        let rotated = braid(b.strands(), &[&w[k..], &w[..k]].concat());
        let d1 = braid_closure_to_long(&b, 1).unwrap();
        let d2 = braid_closure_to_long(&rotated, 1).unwrap();
        prop_assert_eq!(rho1(&d1).unwrap(), rho1(&d2).unwrap());
    }

    #[test]
    fn stabilization_is_irrelevant(b in knot_braid(), sign in prop::bool::ANY) {
        let n = b.strands();
        let extra = if sign { n as i32 } else { -(n as i32) };
        let mut w = b.letters().to_vec();
        w.push(extra);
        let bigger = braid(n + 1, &w);
        let d1 = braid_closure_to_long(&b, 1).unwrap();
        let d2 = braid_closure_to_long(&bigger, 1).unwrap();
        prop_assert_eq!(rho1(&d1).unwrap(), rho1(&d2).unwrap());
        prop_assert_eq!(alexander(&d1).unwrap(), alexander(&d2).unwrap());
    }

    #[test]
    fn rho1_is_symmetric_and_reduces(b in knot_braid()) {
        let d = braid_closure_to_long(&b, 1).unwrap();
        let r = rho1(&d).unwrap();
        prop_assert!(r.is_symmetric());
        prop_assert!(rho1_reduced(&r).is_ok());
        prop_assert_eq!(r, rho1_via_greens(&d).unwrap());
    }
}
