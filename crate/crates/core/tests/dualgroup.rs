use depthzero::dualgroup::*;
use depthzero::TorusKind;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn chevalley_relations() {
    assert!(lemma71_check(DEFAULT_ORDER).unwrap());
    assert!(mhat4_check(DEFAULT_ORDER).unwrap());
    assert_eq!(eta_triple_product(&eta_constants(DEFAULT_ORDER).unwrap()), -1);
    assert!(square_relation_failures(DEFAULT_ORDER).unwrap().is_empty());
    assert_eq!(DualRoot::all().len(), 8);
}

#[test]
fn pinning_relations() {
    let p = pinning().unwrap();
    assert_eq!(p.beta.reflect(p.alpha), (p.alpha + p.beta));
    let sum = (p.alpha + p.beta).coroot();
    assert_eq!(sum, (2 * p.alpha_coroot.0 + p.beta_coroot.0, 2 * p.alpha_coroot.1 + p.beta_coroot.1));
    for r in DualRoot::all() {
        assert_eq!(x_root(DEFAULT_ORDER, r, 0).unwrap(), SpMatrix::identity(DEFAULT_ORDER));
    }
}

#[test]
fn eta_constants_are_signs() {
    for (_, v) in eta_constants(DEFAULT_ORDER).unwrap() {
        assert!(v == 1 || v == -1);
    }
}

#[test]
fn reflection_conjugation_on_torsion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let k = rng.gen_range(0..DEFAULT_ORDER as i64);
        for r in DualRoot::all() {
            for s in DualRoot::all() {
                assert!(conjugation_relation(DEFAULT_ORDER, r, s, k).unwrap(), "{r} {s} {k}");
            }
        }
    }
    assert!(conjugation_relation(DEFAULT_ORDER, ALPHA_STAR, BETA_STAR, 5).unwrap());
}

#[test]
fn twisted_power_ignores_the_torus_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for kind in TorusKind::ALL {
        let base = twisted_power(kind, &DualTorusElem::one(DEFAULT_ORDER)).unwrap();
        for _ in 0..200 {
            let t = DualTorusElem::new(DEFAULT_ORDER, rng.gen_range(0..24), rng.gen_range(0..24));
            assert_eq!(twisted_power(kind, &t).unwrap(), base);
        }
    }
    for kind in TorusKind::ALL {
        assert_eq!(twisted_power_sampled(kind, 60, 250, 9).unwrap(), None);
    }
    let t1 = twisted_power(TorusKind::T1, &DualTorusElem::one(DEFAULT_ORDER)).unwrap();
    assert_eq!(t1, DualTorusElem::new(DEFAULT_ORDER, 0, 12));
}

#[test]
fn parity_values() {
    let h1 = h_values(TorusKind::T1, DEFAULT_ORDER).unwrap();
    let both = h1.signs[0] * h1.signs[1];
    assert_eq!((h1.signs[0], h1.signs[1], both), (1, -1, -1));
    let h2 = h_values(TorusKind::T2, DEFAULT_ORDER).unwrap();
    assert_eq!(h2.signs[0], -1);
}

proptest! {
    #[test]
    fn lift_acts_as_predicted(a in 0i64..24, b in 0i64..24) {
        for kind in TorusKind::ALL {
            let t = DualTorusElem::new(DEFAULT_ORDER, a, b);
            prop_assert_eq!(lift_conjugate(kind, &t).unwrap(), expected_lift_action(kind, &t));
        }
    }

    #[test]
    fn matrix_inverse(a in 0i64..24, b in 0i64..24, c in -3i64..3) {
        let m = DualTorusElem::new(DEFAULT_ORDER, a, b).to_matrix().mul(&x_root(DEFAULT_ORDER, ALPHA_STAR, c).unwrap());
        prop_assert_eq!(m.mul(&m.inverse()), SpMatrix::identity(DEFAULT_ORDER));
    }
}
