//! Depth-zero characters of `T(F)`, the inertial parametrisation, and the
//! genuine characters of the coinvariant groups.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::RootOfUnity;
use crate::dualgroup::HValues;
use crate::localmodel::EtaBranch;
use crate::tori::{Coinv, RatPoint, Torus, TorusError, WeylElem, WeylGroup};
use crate::TorusKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("inertial data {0:?} does not intertwine Frobenius with the dual Galois action")]
    NotEquivariant([u64; 2]),
    #[error("descriptor: {0}")]
    Descriptor(String),
    #[error("{0}")]
    Torus(#[from] TorusError),
}

/// `chi(k) = zeta_n^(a . k)` on `T(F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DepthZeroCharacter {
    pub kind: TorusKind,
    pub n: u64,
    pub exps: [u64; 2],
}

impl DepthZeroCharacter {
    pub fn new(torus: &Torus, exps: [i64; 2]) -> Self {
        let n = torus.n();
        let mut e = [exps[0].rem_euclid(n as i64) as u64, exps[1].rem_euclid(n as i64) as u64];
        if torus.kind() == TorusKind::T2 {
            e[1] = 0;
        }
        DepthZeroCharacter { kind: torus.kind(), n, exps: e }
    }

    pub fn trivial(torus: &Torus) -> Self {
        Self::new(torus, [0, 0])
    }

    /// Every character of `T(F)`.
    pub fn all(torus: &Torus) -> Vec<Self> {
        torus.enumerate_rational().iter().map(|g| Self::new(torus, [g.k[0] as i64, g.k[1] as i64])).collect()
    }

    /// Exponent of `chi(g)` in `mu_n`.
    pub fn eval_exp(&self, g: &RatPoint) -> u64 {
        ((self.exps[0] as u128 * g.k[0] as u128 + self.exps[1] as u128 * g.k[1] as u128) % self.n as u128) as u64
    }

    pub fn eval(&self, g: &RatPoint) -> RootOfUnity {
        RootOfUnity::new(self.n, self.eval_exp(g) as i64)
    }

    /// `w_* chi = chi o w^-1`.
    pub fn conjugate(&self, torus: &Torus, w: &WeylElem) -> Result<Self, CharError> {
        let winv = torus.weyl_group().inverse(w).cloned().ok_or_else(|| TorusError::NonRationalWeyl(w.word.clone()))?;
        let mut out = [0i64; 2];
        for (i, slot) in out.iter_mut().enumerate().take(torus.rank()) {
            let mut e = [0i64; 2];
            e[i] = 1;
            let moved = torus.act_rational(&winv, &torus.rational(e))?;
            *slot = self.eval_exp(&moved) as i64;
        }
        Ok(Self::new(torus, out))
    }

    /// Trivial stabiliser in `group`.
    pub fn is_regular_in(&self, torus: &Torus, group: &WeylGroup) -> Result<bool, CharError> {
        for w in &group.elements {
            if !w.is_identity() && self.conjugate(torus, w)? == *self {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Regular with respect to the rational Weyl group.
    pub fn is_regular(&self, torus: &Torus) -> Result<bool, CharError> {
        self.is_regular_in(torus, &torus.rational_weyl_group())
    }

    pub fn descriptor(&self, q: u64, branch: EtaBranch) -> CharacterDescriptor {
        let len = match self.kind {
            TorusKind::T1 => 2,
            TorusKind::T2 => 1,
        };
        CharacterDescriptor { kind: self.kind.index(), q, exponents: self.exps[..len].to_vec(), eta_branch: branch }
    }
}

/// All regular characters of `T(F)`, in enumeration order.
pub fn regular_characters(torus: &Torus) -> Result<Vec<DepthZeroCharacter>, CharError> {
    let group = torus.rational_weyl_group();
    let mut out = Vec::new();
    for chi in DepthZeroCharacter::all(torus) {
        if chi.is_regular_in(torus, &group)? {
            out.push(chi);
        }
    }
    Ok(out)
}

/// Serialised form of a character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterDescriptor {
    pub kind: u8,
    pub q: u64,
    pub exponents: Vec<u64>,
    pub eta_branch: EtaBranch,
}

impl CharacterDescriptor {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serialises")
    }

    pub fn from_json(s: &str) -> Result<Self, CharError> {
        serde_json::from_str(s).map_err(|e| CharError::Descriptor(e.to_string()))
    }

    pub fn character(&self) -> Result<(Torus, DepthZeroCharacter), CharError> {
        let kind = TorusKind::from_index(self.kind).ok_or_else(|| CharError::Descriptor(format!("kind {}", self.kind)))?;
        let torus = Torus::new(kind, self.q)?;
        if self.exponents.len() != torus.rank() {
            return Err(CharError::Descriptor(format!("expected {} exponents", torus.rank())));
        }
        let n = torus.n();
        if self.exponents.iter().any(|&e| e >= n) {
            return Err(CharError::Descriptor(format!("exponents must lie in [0, {n})")));
        }
        let mut e = [0i64; 2];
        for (slot, &x) in e.iter_mut().zip(&self.exponents) {
            *slot = x as i64;
        }
        Ok((torus, DepthZeroCharacter::new(&torus, e)))
    }
}

/// A homomorphism `s: F_{q^m}^* -> T^` given by the exponents of `s(g_m)`
/// in the coordinates of the dual torus dual to the pair coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InertialDatum {
    pub images: [u64; 2],
}

/// Dual Galois action on the exponent vector of `T^`.
fn dual_galois(kind: TorusKind, b: [i128; 2]) -> [i128; 2] {
    match kind {
        TorusKind::T1 => [-b[0], -b[1]],
        TorusKind::T2 => [-b[1], b[0]],
    }
}

/// Whether `s(a^q) = sigma^(s(a))`.
pub fn is_equivariant(torus: &Torus, s: &InertialDatum) -> bool {
    let m = torus.shape().order(torus.level()) as i128;
    let q = torus.q() as i128;
    let b = [s.images[0] as i128, s.images[1] as i128];
    let lhs = [(q * b[0]).rem_euclid(m), (q * b[1]).rem_euclid(m)];
    let r = dual_galois(torus.kind(), b);
    lhs == [r[0].rem_euclid(m), r[1].rem_euclid(m)]
}

/// `chi_s(t) = <t, s>` for `t` in `X_* (x) F_{q^m}^*`, given by its pair dlogs.
pub fn chi_s_exponent(torus: &Torus, s: &InertialDatum, t: [u64; 2]) -> u64 {
    let m = torus.shape().order(torus.level()) as u128;
    ((s.images[0] as u128 * t[0] as u128 + s.images[1] as u128 * t[1] as u128) % m) as u64
}

/// The norm `X_* (x) F_{q^m}^* -> T(F)`, read through the pair model.
pub fn inertial_norm(torus: &Torus, t: [u64; 2]) -> Result<RatPoint, CharError> {
    let p = torus.pair_from_exponents(t[0] as i64, 0, t[1] as i64, 0);
    Ok(torus.pair_to_rational(&torus.pair_norm(&p)?)?)
}

/// The depth-zero character `chi` with `chi o N = chi_s`.
pub fn char_from_inertia(torus: &Torus, s: &InertialDatum) -> Result<DepthZeroCharacter, CharError> {
    if !is_equivariant(torus, s) {
        return Err(CharError::NotEquivariant(s.images));
    }
    let n = torus.n() as i128;
    let step = (torus.shape().order(torus.level()) / torus.n()) as u128;
    // chi(N(e_j)) = chi_s(e_j) for the two basis vectors
    let images = [inertial_norm(torus, [1, 0])?, inertial_norm(torus, [0, 1])?];
    let mut targets = [0i128; 2];
    for (j, slot) in targets.iter_mut().enumerate() {
        let mut e = [0u64; 2];
        e[j] = 1;
        let v = chi_s_exponent(torus, s, e) as u128;
        if !v.is_multiple_of(step) {
            return Err(CharError::NotEquivariant(s.images));
        }
        *slot = (v / step) as i128;
    }
    let rank = torus.rank();
    // search for a unit minor: rank 1 uses one column, rank 2 the full matrix
    let col = |j: usize| [images[j].k[0] as i128, images[j].k[1] as i128];
    let exps: [i64; 2] = if rank == 1 {
        let j = (0..2)
            .find(|&j| gcd_i(col(j)[0], n) == 1)
            .ok_or(CharError::NotEquivariant(s.images))?;
        let inv = mod_inv(col(j)[0], n);
        [((targets[j] * inv).rem_euclid(n)) as i64, 0]
    } else {
        let (a, b) = (col(0), col(1));
        // a . x = t0, b . x = t1 with x the exponent row
        let det = (a[0] * b[1] - a[1] * b[0]).rem_euclid(n);
        if gcd_i(det, n) != 1 {
            return Err(CharError::NotEquivariant(s.images));
        }
        let di = mod_inv(det, n);
        let x0 = ((targets[0] * b[1] - targets[1] * a[1]) % n * di).rem_euclid(n);
        let x1 = ((a[0] * targets[1] - b[0] * targets[0]) % n * di).rem_euclid(n);
        [x0 as i64, x1 as i64]
    };
    let chi = DepthZeroCharacter::new(torus, exps);
    for (j, img) in images.iter().enumerate() {
        if chi.eval_exp(img) as i128 != targets[j].rem_euclid(n) {
            return Err(CharError::NotEquivariant(s.images));
        }
    }
    Ok(chi)
}

/// Every equivariant inertial datum.
pub fn equivariant_data(torus: &Torus) -> Vec<InertialDatum> {
    let m = torus.shape().order(torus.level());
    let mut out = Vec::new();
    for b0 in 0..m {
        for b1 in 0..m {
            let s = InertialDatum { images: [b0, b1] };
            if is_equivariant(torus, &s) {
                out.push(s);
            }
        }
    }
    out
}

fn gcd_i(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mod_inv(a: i128, n: i128) -> i128 {
    let (mut r0, mut r1) = (a.rem_euclid(n), n);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
    }
    s0.rem_euclid(n)
}

/// `chi` on `T(E)_Gamma`: `base o N` on the unit part times the fixed
/// values on the valuation-parity part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenuineCharacter {
    pub base: DepthZeroCharacter,
    pub h: HValues,
}

impl GenuineCharacter {
    pub fn eval(&self, torus: &Torus, c: &Coinv) -> RootOfUnity {
        let unit = self.base.eval(&torus.coinv_norm(&c.unit_part()));
        unit.mul(&RootOfUnity::sign(self.h.eval(c) < 0))
    }

    /// Conjugation on the base; the parity values are Weyl invariant.
    pub fn conjugate(&self, torus: &Torus, w: &WeylElem) -> Result<Self, CharError> {
        Ok(GenuineCharacter { base: self.base.conjugate(torus, w)?, h: self.h })
    }

    /// Value on the class, computed as `chi(w^-1 c)`.
    pub fn eval_conjugated(&self, torus: &Torus, w: &WeylElem, c: &Coinv) -> Result<RootOfUnity, CharError> {
        let winv = torus.weyl_group().inverse(w).cloned().ok_or_else(|| TorusError::NonRationalWeyl(w.word.clone()))?;
        Ok(self.eval(torus, &torus.act_coinv(&winv, c)?))
    }
}

pub fn gross_character(base: DepthZeroCharacter, h: HValues) -> GenuineCharacter {
    GenuineCharacter { base, h }
}

/// Whether the parity values are fixed by every rational Weyl element.
pub fn h_is_weyl_invariant(torus: &Torus, h: &HValues) -> Result<bool, CharError> {
    let parity = torus.enumerate_coinv().into_iter().filter(|c| c.is_unit_trivial());
    for c in parity {
        for w in &torus.rational_weyl_group().elements {
            if h.eval(&torus.act_coinv(w, &c)?) != h.eval(&c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualgroup::{h_values, DEFAULT_ORDER};

    #[test]
    fn kind2_regularity_example() {
        let t = Torus::new(TorusKind::T2, 3).unwrap();
        let chi = DepthZeroCharacter::new(&t, [1, 0]);
        assert!(chi.is_regular(&t).unwrap());
        assert!(!DepthZeroCharacter::trivial(&t).is_regular(&t).unwrap());
    }

    #[test]
    fn inertia_bijection_q3_kind1() {
        let t = Torus::new(TorusKind::T1, 3).unwrap();
        let data = equivariant_data(&t);
        assert_eq!(data.len(), 16);
        let mut seen = std::collections::BTreeSet::new();
        for s in &data {
            let chi = char_from_inertia(&t, s).unwrap();
            for a in 0..8 {
                for b in 0..8 {
                    let g = inertial_norm(&t, [a, b]).unwrap();
                    let v = chi_s_exponent(&t, s, [a, b]);
                    assert_eq!(chi.eval(&g), RootOfUnity::new(8, v as i64));
                }
            }
            seen.insert(chi);
        }
        assert_eq!(seen.len(), 16);
        assert!(char_from_inertia(&t, &InertialDatum { images: [1, 0] }).is_err());
    }

    #[test]
    fn genuine_values_on_parity_classes() {
        let t1 = Torus::new(TorusKind::T1, 5).unwrap();
        let h1 = h_values(TorusKind::T1, DEFAULT_ORDER).unwrap();
        let chi = gross_character(DepthZeroCharacter::new(&t1, [2, 3]), h1);
        assert_eq!(chi.eval(&t1, &t1.coinv([0, 0], [0, 1])), RootOfUnity::sign(true));
        assert_eq!(chi.eval(&t1, &t1.coinv([0, 0], [1, 0])), RootOfUnity::one());
        assert_eq!(chi.eval(&t1, &t1.coinv([0, 0], [1, 1])), RootOfUnity::sign(true));
        let t2 = Torus::new(TorusKind::T2, 5).unwrap();
        let h2 = h_values(TorusKind::T2, DEFAULT_ORDER).unwrap();
        let chi = gross_character(DepthZeroCharacter::new(&t2, [7, 0]), h2);
        assert_eq!(chi.eval(&t2, &t2.coinv([0, 0], [1, 0])), RootOfUnity::sign(true));
    }

    #[test]
    fn descriptor_round_trip() {
        let t = Torus::new(TorusKind::T1, 7).unwrap();
        let chi = DepthZeroCharacter::new(&t, [3, 5]);
        let d = chi.descriptor(7, EtaBranch::Minus);
        let json = d.to_json();
        assert_eq!(json, r#"{"kind":1,"q":7,"exponents":[3,5],"eta_branch":"minus"}"#);
        let (_, back) = CharacterDescriptor::from_json(&json).unwrap().character().unwrap();
        assert_eq!(back, chi);
    }
}
