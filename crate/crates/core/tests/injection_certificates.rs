//! Exhaustive certificates for the replace-and-pad and shift maps.

use alderlab_core::injection::{
    triangular_decompose, verify_injection, AlphaShiftMap, BetaMap, InjectionSpec, ShiftTarget,
    ShiftTwoMap,
};
use alderlab_core::part_sets::EventuallyPeriodicSet;
use alderlab_core::partition::{count_congruence, CongruenceSpec};
use alderlab_core::series::g_series;
use num_bigint::BigUint;

const CAP: usize = 5_000_000;

fn toy_pairs() -> Vec<(EventuallyPeriodicSet, EventuallyPeriodicSet, u64)> {
    vec![
        (
            EventuallyPeriodicSet::residue_classes(3, [2]).unwrap(),
            EventuallyPeriodicSet::residue_classes(2, [0]).unwrap(),
            2,
        ),
        (
            CongruenceSpec::full(2, 10).unwrap().part_set(),
            CongruenceSpec::full(2, 9).unwrap().part_set(),
            2,
        ),
        (
            EventuallyPeriodicSet::residue_classes(5, [1, 4]).unwrap(),
            EventuallyPeriodicSet::residue_classes(5, [1, 3]).unwrap(),
            1,
        ),
    ]
}

#[test]
fn phi_is_injective_on_toy_pairs() {
    for (s, t, m) in toy_pairs() {
        for n in (0..=60).filter(|n| n % m == 0) {
            let spec = InjectionSpec::Phi {
                source: s.clone(),
                target: t.clone(),
                m,
            };
            let cert = verify_injection(&spec, n, CAP).unwrap();
            assert!(cert.passes(), "n = {n}: {:?}", cert.counterexamples);
            assert_eq!(cert.count_bound_holds(), Some(true));
        }
    }
}

#[test]
fn shift_two_certificates_at_d130() {
    let d = 130u64;
    let map = ShiftTwoMap::new(d, ShiftTarget::G).unwrap();
    let lo = 4 * d + 128;
    let g = g_series(d, (lo + 40) as usize).unwrap();
    let q = CongruenceSpec::full(1, d - 2).unwrap();
    for n in lo..=lo + 40 {
        let cert = verify_injection(&InjectionSpec::PsiShift2(map.clone()), n, CAP).unwrap();
        assert!(cert.passes(), "n = {n}: {:?}", cert.counterexamples);
        assert_eq!(BigUint::from(cert.domain_size), count_congruence(&q, n));
        assert!(BigUint::from(cert.domain_size) <= *g.coeff(n as usize).magnitude());
    }
}

#[test]
fn shift_two_padding_is_nonnegative() {
    for d in [130u64, 200, 254, 1000] {
        let map = ShiftTwoMap::new(d, ShiftTarget::G).unwrap();
        let s = map.source();
        let last = s.count_le(20 * d) as usize;
        for m in 2..=last {
            assert!(map.padding(m) >= 0, "d = {d}, m = {m}");
        }
    }
}

#[test]
fn shift_two_cases_never_collide() {
    let d = 130u64;
    let map = ShiftTwoMap::new(d, ShiftTarget::G).unwrap();
    let (l1, l2) = map.markers();
    for n in [d + 4, 2 * d + 7, 4 * d + 128] {
        alderlab_core::partition::visit_pairs(&map.pair_kind(), n, CAP, |pair| {
            let (img, _) = map.apply(pair).unwrap();
            let has_marker = img.parts().iter().any(|&x| x == l1 || x == l2);
            assert_eq!(has_marker, !pair.pi.is_empty(), "{}", img);
        })
        .unwrap();
    }
}

#[test]
fn shift_two_into_l_at_mersenne_d() {
    let d = 127u64;
    let map = ShiftTwoMap::new(d, ShiftTarget::L).unwrap();
    for n in (1..=700).filter(|n| !(d..=d + 3).contains(n)) {
        let cert = verify_injection(&InjectionSpec::PsiShift2(map.clone()), n, CAP);
        match cert {
            Ok(cert) => {
                assert!(cert.passes() || n < d + 4, "n = {n}: {:?}", cert.counterexamples);
                if n >= d + 4 {
                    assert_eq!(cert.count_bound_holds(), Some(true), "n = {n}");
                }
            }
            Err(e) => panic!("n = {n}: {e}"),
        }
    }
}

#[test]
fn triangular_round_trip() {
    for m in 1..=1_000_000u64 {
        let t = triangular_decompose(m);
        assert_eq!(t.ell * (t.ell + 1) / 2 + t.j, m);
        assert!(t.j <= t.ell);
    }
}

#[test]
fn beta_certificates_small() {
    for d in [10u64, 254] {
        let map = BetaMap::new(d).unwrap();
        for n in (1..=120).step_by(2) {
            let cert = verify_injection(&InjectionSpec::Beta(map.clone()), n, CAP).unwrap();
            assert!(cert.passes(), "d = {d}, n = {n}: {:?}", cert.counterexamples);
            assert_eq!(cert.count_bound_holds(), Some(true));
        }
    }
}

#[test]
fn alpha_shift_certificates_at_full_bound() {
    let (d, alpha) = (4100u64, 4u64);
    let map = AlphaShiftMap::new(d, alpha, ShiftTarget::G).unwrap();
    let lo = 4 * d + 4096;
    for n in [lo, lo + 7, lo + 30] {
        let cert = verify_injection(&InjectionSpec::PsiShiftAlpha(map.clone()), n, CAP).unwrap();
        assert!(cert.passes(), "n = {n}: {:?}", cert.counterexamples);
        assert_eq!(cert.count_bound_holds(), Some(true));
        for case in ["1", "2a", "2b", "3a", "3b"] {
            assert!(cert.case_counts.contains_key(case), "n = {n}: no case {case}");
        }
    }
}
