//! Tate cohomology of the depth-zero quotient of `T(E)` by Smith normal form.
//!
//! At depth zero `T(E)` is modelled by `A = Z^4 / L`, coordinates
//! `(dlog w, dlog z, val w, val z)` with `L` killing `q^m - 1` in the two
//! residue slots. The Galois generator acts by an integer matrix.

use super::snf::{kernel_count_mod, subquotient, AbGroup, IMat};
use super::{Coinv, Torus, TorusError};
use crate::TorusKind;

/// Galois generator on `Z^4`.
pub fn galois_matrix(kind: TorusKind, q: u64) -> IMat {
    let q = q as i128;
    match kind {
        TorusKind::T1 => IMat::diag(&[-q, -q, -1, -1]),
        // (x, y) -> (tau(y)^-1, tau(x))
        TorusKind::T2 => IMat::from_rows(&[
            vec![0, -q, 0, 0],
            vec![q, 0, 0, 0],
            vec![0, 0, 0, -1],
            vec![0, 0, 1, 0],
        ]),
    }
}

pub fn relations(kind: TorusKind, q: u64) -> IMat {
    let m = q.pow(kind.level().degree()) as i128 - 1;
    IMat::diag(&[m, m, 0, 0])
}

#[derive(Clone, Debug)]
pub struct TateReport {
    pub kind: TorusKind,
    pub q: u64,
    /// `ker N / im(1 - sigma)`.
    pub h_minus1: AbGroup,
    /// `ker(1 - sigma) / im N`.
    pub h0: AbGroup,
    pub rational: AbGroup,
    pub coinvariants: AbGroup,
    /// The classes of `H^-1` in coinvariant coordinates.
    pub h_minus1_classes: Vec<Coinv>,
}

impl TateReport {
    pub fn h_minus1_order(&self) -> u128 {
        self.h_minus1.order().unwrap_or(0)
    }

    pub fn h0_order(&self) -> u128 {
        self.h0.order().unwrap_or(0)
    }

    pub fn rational_order(&self) -> u128 {
        self.rational.order().unwrap_or(0)
    }

    pub fn coinv_order(&self) -> u128 {
        self.coinvariants.order().unwrap_or(0)
    }

    /// `|H^-1| * |T(F)| = |T(E)_Gamma|`, i.e. the norm sequence is exact.
    pub fn sequence_exact(&self) -> bool {
        self.h_minus1_order() * self.rational_order() == self.coinv_order()
    }
}

pub fn tate_cohomology(kind: TorusKind, q: u64) -> Result<TateReport, TorusError> {
    let torus = Torus::new(kind, q)?;
    let rel = relations(kind, q);
    let sigma = galois_matrix(kind, q);
    let id = IMat::identity(4);
    let one_minus = id.add(&sigma.neg())?;
    let mut norm = IMat::zeros(4, 4);
    let mut pw = IMat::identity(4);
    for _ in 0..kind.galois_order() {
        norm = norm.add(&pw)?;
        pw = pw.mul(&sigma)?;
    }
    let zero_map = IMat::zeros(4, 4);
    let no_image = IMat::zeros(4, 0);

    let h_minus1 = subquotient(&rel, &norm, &rel, &one_minus)?;
    let h0 = subquotient(&rel, &one_minus, &rel, &norm)?;
    let rational = subquotient(&rel, &one_minus, &rel, &no_image)?;
    let coinvariants = subquotient(&rel, &zero_map, &rel, &one_minus)?;

    let mut h_minus1_classes: Vec<Coinv> = h_minus1
        .elements()
        .unwrap_or_default()
        .iter()
        .map(|x| torus.project(&torus.pair_from_exponents(x[0] as i64, x[2] as i64, x[1] as i64, x[3] as i64)))
        .collect();
    h_minus1_classes.sort();
    Ok(TateReport { kind, q, h_minus1, h0, rational, coinvariants, h_minus1_classes })
}

/// `|{g in T(F) : some root is trivial on g}|` by inclusion-exclusion over the
/// four positive roots, each intersection counted as a kernel modulo `n`.
pub fn non_strongly_regular_count(torus: &Torus) -> Result<u128, TorusError> {
    let n = torus.n();
    let q = torus.q() as i128;
    let rows: Vec<Vec<i128>> = match torus.kind() {
        TorusKind::T1 => vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]],
        TorusKind::T2 => vec![vec![1], vec![q - 1], vec![q], vec![q + 1]],
    };
    let mut total: i128 = 0;
    for mask in 1u32..16 {
        let chosen: Vec<Vec<i128>> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| rows[i].clone()).collect();
        let count = kernel_count_mod(&IMat::from_rows(&chosen), n)? as i128;
        if mask.count_ones() % 2 == 1 {
            total += count;
        } else {
            total -= count;
        }
    }
    Ok(total as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_q3() {
        let r = tate_cohomology(TorusKind::T1, 3).unwrap();
        assert_eq!((r.h_minus1_order(), r.h0_order()), (4, 1));
        assert_eq!(r.rational_order(), 16);
        assert!(r.sequence_exact());
        let r = tate_cohomology(TorusKind::T2, 3).unwrap();
        assert_eq!((r.h_minus1_order(), r.h0_order()), (2, 1));
        assert_eq!(r.rational_order(), 10);
        assert!(r.sequence_exact());
    }

    #[test]
    fn inclusion_exclusion_matches_enumeration() {
        for kind in TorusKind::ALL {
            for q in [3u64, 5, 7, 9] {
                let t = Torus::new(kind, q).unwrap();
                let direct = t.rational_count() as usize - t.strongly_regular_set().len();
                assert_eq!(non_strongly_regular_count(&t).unwrap(), direct as u128, "{kind} q={q}");
            }
        }
    }
}
