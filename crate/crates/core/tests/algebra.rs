use depthzero::cyclo::{cyclotomic_polynomial, CycInt, RootOfUnity};
use depthzero::tori::snf::{kernel_count_mod, smith, IMat};
use num_bigint::BigInt;
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn small_roots_of_unity() {
    assert_eq!(CycInt::root_of_unity(4, 2).coefficients(), big(&[-1, 0]).as_slice());
    for n in [1u64, 2, 5, 12] {
        assert_eq!(CycInt::root_of_unity(n, 0), CycInt::one(n));
    }
    let z6 = CycInt::root_of_unity(6, 1);
    assert_eq!(CycInt::root_of_unity(6, 2), z6 - CycInt::one(6));
    let i = CycInt::root_of_unity(4, 1);
    assert_eq!(i.clone() * i, CycInt::from_int(4, -1));
}

#[test]
fn sqrt_two_in_eighth_roots() {
    let s = CycInt::root_of_unity(8, 1) + CycInt::root_of_unity(8, 7);
    assert_eq!((s.clone() * s).as_integer(), Some(BigInt::from(2)));
}

#[test]
fn full_root_sums_vanish() {
    for n in 2u64..40 {
        let total = (0..n as i64).fold(CycInt::zero(n), |acc, k| acc + CycInt::root_of_unity(n, k));
        assert!(total.is_zero(), "n = {n}");
        assert_eq!(CycInt::from_exponent_counts(n, &vec![1; n as usize]), CycInt::zero(n));
    }
}

#[test]
fn cyclotomic_polynomials() {
    assert_eq!(cyclotomic_polynomial(6), big(&[1, -1, 1]));
    assert_eq!(cyclotomic_polynomial(8), big(&[1, 0, 0, 0, 1]));
    assert_eq!(cyclotomic_polynomial(12).len(), 5);
    for n in 1u64..60 {
        assert_eq!(cyclotomic_polynomial(n).last(), Some(&BigInt::from(1)));
        assert_eq!(CycInt::one(n).coefficients().len() + 1, cyclotomic_polynomial(n).len());
    }
}

#[test]
fn order_mismatch_is_an_error() {
    assert!(CycInt::one(4).checked_add(&CycInt::one(6)).is_err());
    assert_eq!(CycInt::root_of_unity(4, 1).to_order(12).unwrap(), CycInt::root_of_unity(12, 3));
    assert_eq!(RootOfUnity::new(12, 3), RootOfUnity::new(4, 1));
    assert_eq!(RootOfUnity::new(6, 5).inv().mul(&RootOfUnity::new(6, 5)), RootOfUnity::one());
}

fn cyc(order: u64) -> impl Strategy<Value = CycInt> {
    prop::collection::vec(-5i64..5, order as usize).prop_map(move |c| CycInt::from_exponent_counts(order, &c))
}

proptest! {
    #[test]
    fn ring_axioms(a in cyc(12), b in cyc(12), c in cyc(12)) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), CycInt::zero(12));
        prop_assert_eq!(a.clone() * CycInt::one(12), a.clone());
    }

    #[test]
    fn roots_multiply_by_exponent(n in 1u64..50, j in -100i64..100, k in -100i64..100) {
        prop_assert_eq!(CycInt::root_of_unity(n, j) * CycInt::root_of_unity(n, k), CycInt::root_of_unity(n, j + k));
        prop_assert_eq!(CycInt::root_of_unity(n, j).root_exponent(), Some(j.rem_euclid(n as i64) as u64));
    }

    #[test]
    fn snf_decomposes(rows in prop::collection::vec(prop::collection::vec(-20i128..20, 3), 1..5)) {
        let a = IMat::from_rows(&rows);
        let s = smith(&a).unwrap();
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv).unwrap(), IMat::identity(a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv).unwrap(), IMat::identity(a.cols()));
        let inv = s.invariants();
        for w in inv.windows(2) {
            prop_assert!(w[1] == 0 || w[0] != 0 && w[1] % w[0] == 0);
        }
        prop_assert!(inv.iter().all(|&x| x >= 0));
    }

    #[test]
    fn kernel_count_brute(rows in prop::collection::vec(prop::collection::vec(0i128..6, 2), 1..4), n in 2u64..7) {
        let a = IMat::from_rows(&rows);
        let mut count = 0u128;
        for x in 0..n as i128 {
            for y in 0..n as i128 {
                if rows.iter().all(|r| (r[0] * x + r[1] * y) % n as i128 == 0) {
                    count += 1;
                }
            }
        }
        prop_assert_eq!(kernel_count_mod(&a, n).unwrap(), count);
    }
}
