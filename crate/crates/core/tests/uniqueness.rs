use depthzero::characters::regular_characters;
use depthzero::tori::Torus;
use depthzero::uniqueness::*;
use depthzero::TorusKind;

#[test]
fn scan_to_200() {
    let t1 = threshold_scan(TorusKind::T1, 200, DEFAULT_SCAN_LIMIT).unwrap();
    assert!(t1.holds_from(47));
    assert_eq!(t1.empirical_threshold, Some(31));
    let t2 = threshold_scan(TorusKind::T2, 200, DEFAULT_SCAN_LIMIT).unwrap();
    assert!(t2.holds_from(4));
    assert_eq!(t2.empirical_threshold, Some(3));
    assert_eq!(t1.rows.len(), t2.rows.len());
    assert!(t1.rows.iter().all(|r| r.q % 2 == 1));
}

#[test]
fn y_counts_match_enumeration() {
    for kind in TorusKind::ALL {
        for q in [3u64, 5, 7, 9] {
            let t = Torus::new(kind, q).unwrap();
            let direct = t.enumerate_rational().iter().filter(|g| !t.is_strongly_regular(g)).count();
            assert_eq!(lemma97_ratio(kind, q).unwrap().y, direct as u128);
        }
    }
}

#[test]
fn rigidity_exhaustive() {
    for (kind, q) in [(TorusKind::T1, 3), (TorusKind::T2, 3), (TorusKind::T2, 5), (TorusKind::T1, 5)] {
        let r = prop99_check(kind, q, DEFAULT_EVAL_CAP, 0).unwrap();
        assert!(r.exhaustive());
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn conjugate_characters_share_weyl_sums() {
    let t = Torus::new(TorusKind::T1, 5).unwrap();
    let group = t.rational_weyl_group();
    let sr = t.strongly_regular_set();
    for chi in regular_characters(&t).unwrap() {
        for w in &group.elements {
            let moved = chi.conjugate(&t, w).unwrap();
            for g in &sr {
                assert_eq!(weyl_sum(&t, &group, &chi, g).unwrap(), weyl_sum(&t, &group, &moved, g).unwrap());
            }
        }
    }
}

#[test]
fn nonvanishing_on_matching_torus() {
    let r = cross_torus_note(TorusKind::T1, 47).unwrap();
    assert!(r.nonvanishing() && r.counting_bound_holds);
    let r = cross_torus_note(TorusKind::T2, 5).unwrap();
    assert!(r.nonvanishing());
    assert!(!r.note.is_empty());
}
