use std::sync::Arc;

use depthzero::characters::{regular_characters, DepthZeroCharacter};
use depthzero::charformula::*;
use depthzero::ffield::{BuildOptions, FieldTower};
use depthzero::localmodel::EtaBranch;
use depthzero::TorusKind;

fn ctx(kind: TorusKind, q: u64, branch: EtaBranch) -> FormulaContext {
    let tower = Arc::new(FieldTower::for_q(q, &BuildOptions::default()).unwrap());
    FormulaContext::new(kind, tower, branch).unwrap()
}

#[test]
fn regular_character_counts() {
    let expected = [(TorusKind::T1, [0, 8, 24]), (TorusKind::T2, [8, 24, 48])];
    for (kind, counts) in expected {
        for (q, want) in [3u64, 5, 7].into_iter().zip(counts) {
            let c = ctx(kind, q, EtaBranch::Plus);
            assert_eq!(regular_characters(c.torus()).unwrap().len(), want, "{kind} q={q}");
        }
    }
}

#[test]
fn theta_equals_r_small_q() {
    for kind in TorusKind::ALL {
        for q in [3u64, 5] {
            let c = ctx(kind, q, EtaBranch::Plus);
            let chars = sweep_characters(&c).unwrap();
            let r = verify_identity(&c, &chars).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.comparisons > 0);
        }
    }
}

#[test]
fn theta_independent_of_lift() {
    for kind in TorusKind::ALL {
        let c = ctx(kind, 3, EtaBranch::Plus);
        let chars = DepthZeroCharacter::all(c.torus());
        let r = verify_lift_independence(&c, &chars).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn eta_rho_solver_matches_closed_form() {
    for kind in TorusKind::ALL {
        for q in [3u64, 5] {
            for branch in EtaBranch::BOTH {
                let r = verify_eta_rho(&ctx(kind, q, branch)).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
    }
}

#[test]
fn denominators_are_well_defined() {
    for kind in TorusKind::ALL {
        let c = ctx(kind, 3, EtaBranch::Minus);
        let r = verify_denominator_reps(&c, 100, 7).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.comparisons, 100 * r.elements as u64);
        assert!(verify_split_denominator(&c).unwrap().passed());
    }
}

#[test]
fn positive_system_does_not_matter() {
    for kind in TorusKind::ALL {
        let c = ctx(kind, 3, EtaBranch::Plus);
        let chars = DepthZeroCharacter::all(c.torus());
        let r = verify_positive_systems(&c, &chars).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn both_quartic_branches() {
    for branch in EtaBranch::BOTH {
        let c = ctx(TorusKind::T2, 5, branch);
        let chars = sweep_characters(&c).unwrap();
        assert!(verify_identity(&c, &chars).unwrap().passed());
    }
}

#[test]
fn conjugation_compatibility() {
    let c = ctx(TorusKind::T1, 5, EtaBranch::Plus);
    let t = *c.torus();
    let chi = DepthZeroCharacter::new(&t, [1, 2]);
    let sr = t.strongly_regular_set();
    for w in &c.rational_weyl().elements {
        let moved = c.genuine(chi.conjugate(&t, w).unwrap());
        let id = c.rational_weyl().identity();
        for g in &sr {
            assert_eq!(c.theta(&c.genuine(chi), w, g).unwrap(), c.theta(&moved, id, g).unwrap());
        }
    }
}

#[test]
fn wrong_cover_values_break_lift_independence() {
    use depthzero::dualgroup::HValues;
    for kind in TorusKind::ALL {
        let c = ctx(kind, 3, EtaBranch::Plus).with_h(HValues { kind, signs: [1, 1] });
        let chars = DepthZeroCharacter::all(c.torus());
        assert!(!verify_lift_independence(&c, &chars).unwrap().passed());
        assert!(matches!(c.eta_rho_solve(), Err(FormulaError::NoSolution)));
    }
}
