//! The Weyl group of `PGSp(4)` acting on the pair coordinates.
//!
//! An element is an integer matrix `M`; it sends `(w, z)` to
//! `(w^M00 z^M01, w^M10 z^M11)`. Conjugation by `w` is then transported to
//! rational points and coinvariants through the pair model.

use std::collections::VecDeque;

use super::{Coinv, PairPoint, RatPoint, Root, Torus, TorusError};
use crate::localmodel::UnitVal;
use crate::TorusKind;

pub type Mat2 = [[i64; 2]; 2];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// Inverse of a matrix of determinant `±1`.
pub fn mat_inv(a: &Mat2) -> Mat2 {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    assert!(det == 1 || det == -1, "Weyl matrices are unimodular");
    [[a[1][1] * det, -a[0][1] * det], [-a[1][0] * det, a[0][0] * det]]
}

const I2: Mat2 = [[1, 0], [0, 1]];

/// Simple reflections for each torus, in its pair coordinates.
pub fn simple_reflections(kind: TorusKind) -> (Mat2, Mat2) {
    match kind {
        TorusKind::T1 => ([[-1, 0], [2, 1]], [[1, 1], [0, -1]]),
        TorusKind::T2 => ([[-1, 0], [0, 1]], [[0, 1], [1, 0]]),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElem {
    pub kind: TorusKind,
    /// Shortest word in `a = w_alpha`, `b = w_beta`; `"1"` for the identity.
    pub word: String,
    pub mat: Mat2,
}

impl WeylElem {
    pub fn is_identity(&self) -> bool {
        self.mat == I2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    pub kind: TorusKind,
    pub elements: Vec<WeylElem>,
}

impl WeylGroup {
    /// The full group of order 8, in breadth-first word order.
    pub fn full(kind: TorusKind) -> Self {
        let (sa, sb) = simple_reflections(kind);
        let mut elements: Vec<WeylElem> = vec![WeylElem { kind, word: "1".into(), mat: I2 }];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (letter, s) in [("a", sa), ("b", sb)] {
                let m = mat_mul(&elements[i].mat, &s);
                if elements.iter().all(|e| e.mat != m) {
                    let word = if elements[i].word == "1" { letter.to_string() } else { format!("{}{letter}", elements[i].word) };
                    elements.push(WeylElem { kind, word, mat: m });
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        WeylGroup { kind, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> &WeylElem {
        self.elements.iter().find(|e| e.is_identity()).expect("groups contain the identity")
    }

    pub fn by_word(&self, word: &str) -> Option<&WeylElem> {
        self.elements.iter().find(|e| e.word == word)
    }

    pub fn by_mat(&self, m: &Mat2) -> Option<&WeylElem> {
        self.elements.iter().find(|e| e.mat == *m)
    }

    /// `a * b`, as maps: apply `b` first.
    pub fn compose(&self, a: &WeylElem, b: &WeylElem) -> Option<&WeylElem> {
        self.by_mat(&mat_mul(&a.mat, &b.mat))
    }

    pub fn inverse(&self, a: &WeylElem) -> Option<&WeylElem> {
        self.by_mat(&mat_inv(&a.mat))
    }

    /// Multiplication table by index.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.elements
            .iter()
            .map(|a| {
                self.elements
                    .iter()
                    .map(|b| {
                        let m = mat_mul(&a.mat, &b.mat);
                        self.elements.iter().position(|e| e.mat == m).expect("closed under products")
                    })
                    .collect()
            })
            .collect()
    }
}

impl Torus {
    pub fn weyl_group(&self) -> WeylGroup {
        WeylGroup::full(self.kind)
    }

    pub fn act_pair(&self, w: &WeylElem, a: &PairPoint) -> PairPoint {
        let s = self.shape();
        let m = &w.mat;
        let comb = |x: i64, y: i64| -> UnitVal { a.w.pow(x, s).mul(&a.z.pow(y, s), s).expect("same level") };
        PairPoint { w: comb(m[0][0], m[0][1]), z: comb(m[1][0], m[1][1]) }
    }

    /// Whether `w` commutes with Galois on `T(E)`, checked on generators.
    pub fn weyl_is_rational(&self, w: &WeylElem) -> bool {
        let gens = [
            self.pair_from_exponents(1, 0, 0, 0),
            self.pair_from_exponents(0, 0, 1, 0),
            self.pair_from_exponents(0, 1, 0, 0),
            self.pair_from_exponents(0, 0, 0, 1),
        ];
        gens.iter().all(|g| self.act_pair(w, &self.pair_galois(g)) == self.pair_galois(&self.act_pair(w, g)))
    }

    /// The elements defined over `F`; these act on `T(F)` and `T(E)_Gamma`.
    pub fn rational_weyl_group(&self) -> WeylGroup {
        let full = self.weyl_group();
        let elements = full.elements.into_iter().filter(|w| self.weyl_is_rational(w)).collect();
        WeylGroup { kind: self.kind, elements }
    }

    fn require_rational(&self, w: &WeylElem) -> Result<(), TorusError> {
        if w.kind != self.kind {
            return Err(TorusError::KindMismatch { expected: self.kind, got: w.kind });
        }
        if self.weyl_is_rational(w) {
            Ok(())
        } else {
            Err(TorusError::NonRationalWeyl(w.word.clone()))
        }
    }

    pub fn act_rational(&self, w: &WeylElem, g: &RatPoint) -> Result<RatPoint, TorusError> {
        self.require_rational(w)?;
        self.check(g.kind)?;
        self.pair_to_rational(&self.act_pair(w, &self.rational_to_pair(g)))
    }

    pub fn act_coinv(&self, w: &WeylElem, c: &Coinv) -> Result<Coinv, TorusError> {
        self.require_rational(w)?;
        self.check(c.kind)?;
        Ok(self.project(&self.act_pair(w, &self.coinv_rep(c))))
    }

    /// `(w.r)(t) = r(w^-1 t)`.
    pub fn act_root(&self, w: &WeylElem, r: Root) -> Root {
        let (x, y) = self.root_row(r);
        let m = mat_inv(&w.mat);
        self.root_from_row((x * m[0][0] + y * m[1][0], x * m[0][1] + y * m[1][1]))
    }

    /// The image `w(Delta+)` of the standard positive system.
    pub fn positive_system_image(&self, w: &WeylElem) -> [Root; 4] {
        super::STANDARD_POSITIVE.map(|r| self.act_root(w, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        for kind in TorusKind::ALL {
            let t = Torus::new(kind, 3).unwrap();
            assert_eq!(t.weyl_group().len(), 8);
        }
        assert_eq!(Torus::new(TorusKind::T1, 5).unwrap().rational_weyl_group().len(), 8);
        let r2 = Torus::new(TorusKind::T2, 5).unwrap().rational_weyl_group();
        assert_eq!(r2.len(), 4);
        assert!(r2.by_mat(&[[0, -1], [1, 0]]).is_some());
    }

    #[test]
    fn reflections_on_roots() {
        for kind in TorusKind::ALL {
            let t = Torus::new(kind, 3).unwrap();
            let g = t.weyl_group();
            let wa = g.by_word("a").unwrap();
            let wb = g.by_word("b").unwrap();
            assert_eq!(t.act_root(wa, Root::new(1, 0)), Root::new(-1, 0));
            assert_eq!(t.act_root(wa, Root::new(0, 1)), Root::new(2, 1));
            assert_eq!(t.act_root(wb, Root::new(0, 1)), Root::new(0, -1));
            assert_eq!(t.act_root(wb, Root::new(1, 0)), Root::new(1, 1));
        }
    }

    #[test]
    fn non_rational_element_is_rejected() {
        let t = Torus::new(TorusKind::T2, 3).unwrap();
        let wa = t.weyl_group().by_word("a").unwrap().clone();
        assert!(matches!(t.act_coinv(&wa, &t.coinv_one()), Err(TorusError::NonRationalWeyl(_))));
    }
}
