use knotwalk::corpus;
use knotwalk::diagram::{trace, Layer};
use knotwalk::{Error, LaurentPoly, RatFun, RatMatrix, Region, TangleChain};

fn mono(c: i64, e: i64) -> RatFun {
    RatFun::from_poly(LaurentPoly::monomial(c, e))
}

fn chain(n: usize, edges: &[(usize, usize, RatFun)]) -> TangleChain {
    let mut a = RatMatrix::zeros(n, n);
    for (s, t, w) in edges {
        a.set(s - 1, t - 1, w.clone());
    }
    TangleChain::new((1..=n).collect(), a, None, None).unwrap()
}

fn trefoil_traced() -> knotwalk::diagram::Traced {
    trace(2, &[Layer::Letter(1), Layer::Letter(1), Layer::Letter(1)], 1).unwrap()
}

#[test]
fn contracting_the_middle_crossing_keeps_greens_entries() {
    let tr = trefoil_traced();
    let full = TangleChain::from_traced(&tr).unwrap();
    let region = Region::of_layers(&tr, 1, 2);
    assert!(region.interior.is_empty());
    let small = full.contract(&region).unwrap();
    let g = full.greens_matrix().unwrap();
    for &s in small.labels() {
        for &t in small.labels() {
            assert_eq!(&small.green(s, t).unwrap(), g.get(s - 1, t - 1));
        }
    }
}

#[test]
fn contracting_two_crossings_removes_their_shared_arcs() {
    let tr = trefoil_traced();
    let full = TangleChain::from_traced(&tr).unwrap();
    let region = Region::of_layers(&tr, 0, 2);
    assert!(!region.interior.is_empty());
    let small = full.contract(&region).unwrap();
    assert_eq!(small.len(), full.len() - region.interior.len());
    let (a, b) = full.det_after_contract(&region).unwrap();
    assert_eq!(a, b);
}

#[test]
fn leaking_region_is_rejected() {
    // 2 is interior but also feeds 3, which is not an output.
    let c = chain(3, &[(1, 2, mono(1, 0)), (2, 3, mono(1, 1))]);
    let r = Region { inputs: vec![1], interior: vec![2], outputs: vec![] };
    assert!(matches!(c.contract(&r), Err(Error::InvalidRegion(_))));
}

#[test]
fn cyclic_regions_are_rejected() {
    let c = chain(3, &[(1, 2, mono(1, 0)), (2, 3, mono(1, 1)), (3, 2, mono(1, 2)), (3, 1, mono(1, 0))]);
    let r = Region { inputs: vec![1], interior: vec![2, 3], outputs: vec![1] };
    assert!(matches!(c.det_after_contract(&r), Err(Error::RegionHasCycle(_))));
    assert!(matches!(c.bad_multicycle_sum(&[2, 3]), Err(Error::RegionHasCycle(_))));
}

#[test]
fn contraction_preserves_determinant_with_interior_paths() {
    // Input 1 → interior 2 → interior 3 → output 4, with a return 4 → 1.
    let c = chain(
        4,
        &[
            (1, 2, mono(1, 1)),
            (1, 3, mono(2, 0)),
            (2, 3, mono(-1, 1)),
            (3, 4, mono(1, 0)),
            (2, 4, mono(1, 2)),
            (4, 1, mono(1, -1)),
        ],
    );
    let r = Region { inputs: vec![1], interior: vec![2, 3], outputs: vec![4] };
    let (a, b) = c.det_after_contract(&r).unwrap();
    assert_eq!(a, b);
    let small = c.contract(&r).unwrap();
    // 1 → 4 directly: T·T² + T·(−T)·1 + 2·1 = T³ − T² + 2.
    let want = RatFun::from_poly(LaurentPoly::from_coeffs(0, &[2, 0, -1, 1]));
    assert_eq!(small.weight(1, 4).unwrap(), &want);
    assert_eq!(small.green(1, 1).unwrap(), c.green(1, 1).unwrap());
}

#[test]
fn walk_sums_converge_to_greens_entries() {
    // Negative crossings carry T⁻¹, so the walk series is only summed for
    // positive presentations here.
    for k in corpus::knots().into_iter().filter(|k| k.positive) {
        let c = TangleChain::from_diagram(&k.presentation.diagram().unwrap()).unwrap();
        let g = c.greens_matrix().unwrap().eval_f64(0.5);
        for (a, &s) in c.labels().iter().enumerate() {
            for (b, &t) in c.labels().iter().enumerate() {
                let w = c.walk_sum(s, t, 200, 0.5).unwrap();
                assert!((w - g.get(a, b)).abs() < 1e-9, "{} ({s},{t})", k.name);
            }
        }
    }
}

#[test]
fn cartier_foata_guard() {
    let n = 17;
    let ring: Vec<(usize, usize, RatFun)> = (1..=n).map(|s| (s, s % n + 1, mono(1, 1))).collect();
    assert!(matches!(chain(n, &ring).cartier_foata_check(), Err(Error::SizeGuard { .. })));
    let mut tail = ring.clone();
    tail.retain(|(s, _, _)| *s != n);
    tail.push((n, n, mono(1, 0)));
    // Only the self-loop is cyclic now, so enumeration goes ahead.
    let (a, b) = chain(n, &tail).cartier_foata_check().unwrap();
    assert_eq!(a, b);
}

#[test]
fn chain_json_round_trip() {
    let c = corpus::torus_2_family().build_d_tau_infinity().unwrap().0;
    let s = serde_json::to_string(&c).unwrap();
    let back: TangleChain = serde_json::from_str(&s).unwrap();
    assert_eq!(back.matrix(), c.matrix());
    assert_eq!(back.labels(), c.labels());
}

#[test]
fn bad_multicycles_cancel_on_the_shipped_chains() {
    for (c, region) in corpus::bad_multicycle_chains() {
        assert!(c.bad_multicycle_sum(&region).unwrap().is_zero());
    }
}
