//! The two elliptic depth-zero tori in pair coordinates.
//!
//! A point of `T(E)` is a pair `(w, z)` of elements of `E`:
//!
//! * `T1`: `E = E_2`, `w = alpha(t)`, `z = beta(t)`, and the generator of
//!   `Gal(E_2/F)` acts by `(w, z) -> (1/conj w, 1/conj z)`.
//! * `T2`: `E = E_4`, `w = alpha(t)`, `z = (alpha+beta)(t)`, and `tau` acts
//!   by `(x, y) -> (tau(y)^-1, tau(x))`.
//!
//! Rational points, coinvariants and the norm between them are derived from
//! these formulas.

pub mod snf;
pub mod tate;
pub mod weyl;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffield::{FieldError, Level, TowerShape};
use crate::localmodel::{LocalError, UnitVal};
use crate::TorusKind;

pub use weyl::{WeylElem, WeylGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("q = {0} is not an odd prime power")]
    BadQ(u64),
    #[error("point is not fixed by Galois")]
    NotRational,
    #[error("Weyl element {0} is not rational and cannot act on a Galois quotient")]
    NonRationalWeyl(String),
    #[error("{0}")]
    Local(#[from] LocalError),
    #[error("{0}")]
    Snf(#[from] snf::SnfError),
    #[error("wrong torus: expected {expected}, got {got}")]
    KindMismatch { expected: TorusKind, got: TorusKind },
}

impl From<FieldError> for TorusError {
    fn from(e: FieldError) -> Self {
        TorusError::Local(e.into())
    }
}

/// A root `a*alpha + b*beta` of `PGSp(4)`, `alpha` short and `beta` long.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub a: i64,
    pub b: i64,
}

impl Root {
    pub const fn new(a: i64, b: i64) -> Self {
        Root { a, b }
    }


    /// All eight roots.
    pub fn all() -> [Root; 8] {
        let p = STANDARD_POSITIVE;
        [p[0], p[1], p[2], p[3], -p[0], -p[1], -p[2], -p[3]]
    }
}

impl std::fmt::Display for Root {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}a{:+}b", self.a, self.b)
    }
}

/// `alpha, beta, alpha+beta, 2alpha+beta`.
pub const STANDARD_POSITIVE: [Root; 4] = [Root::new(1, 0), Root::new(0, 1), Root::new(1, 1), Root::new(2, 1)];

/// A point of `T(E)` in pair coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairPoint {
    pub w: UnitVal,
    pub z: UnitVal,
}

/// A point of `T(F)`: `T1(F)` is `mu_{q+1}^2`, `T2(F)` is `mu_{q^2+1}`.
///
/// For `T1` the coordinates are `(k1, k2)` with `(w, z) = (g_2^{(q-1)k1},
/// g_2^{(q-1)k2})`. For `T2` only `k[0]` is used: `x = g_4^{(q^2-1)k}` and
/// the point is `(x, tau x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RatPoint {
    pub kind: TorusKind,
    pub k: [u64; 2],
}

/// A class in `T(E)_Gamma` (Galois coinvariants).
///
/// `T1`: `(u_i, v_i)` with `u_i in Z/(q+1)` and `v_i in Z/2`.
/// `T2`: `(u[0], v[0])` with `u in Z/(q^2+1)`, `v in Z/2`, the class of
/// `(w, z)` being that of `w * tau(z)^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coinv {
    pub kind: TorusKind,
    pub u: [u64; 2],
    pub v: [u8; 2],
}

impl Coinv {
    /// Class with trivial unit part.
    pub fn is_unit_trivial(&self) -> bool {
        self.u == [0, 0]
    }

    pub fn unit_part(&self) -> Coinv {
        Coinv { v: [0, 0], ..*self }
    }

    pub fn parity_part(&self) -> Coinv {
        Coinv { u: [0, 0], ..*self }
    }
}

/// One of the two tori over a fixed residue field size `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Torus {
    kind: TorusKind,
    shape: TowerShape,
}

impl Torus {
    pub fn new(kind: TorusKind, q: u64) -> Result<Self, TorusError> {
        let shape = TowerShape::for_q(q).ok_or(TorusError::BadQ(q))?;
        if shape.p() == 2 {
            return Err(TorusError::BadQ(q));
        }
        Ok(Torus { kind, shape })
    }

    pub fn from_shape(kind: TorusKind, shape: TowerShape) -> Self {
        Torus { kind, shape }
    }

    pub fn kind(&self) -> TorusKind {
        self.kind
    }

    pub fn q(&self) -> u64 {
        self.shape.q()
    }

    pub fn shape(&self) -> &TowerShape {
        &self.shape
    }

    pub fn level(&self) -> Level {
        self.kind.level()
    }

    /// `n` with each rational coordinate in `mu_n`.
    pub fn n(&self) -> u64 {
        let q = self.q();
        match self.kind {
            TorusKind::T1 => q + 1,
            TorusKind::T2 => q * q + 1,
        }
    }

    /// Number of rational coordinates (1 or 2).
    pub fn rank(&self) -> usize {
        match self.kind {
            TorusKind::T1 => 2,
            TorusKind::T2 => 1,
        }
    }

    /// `|T(F)|`.
    pub fn rational_count(&self) -> u64 {
        self.n().pow(self.rank() as u32)
    }

    /// `|T(E)_Gamma|`.
    pub fn coinv_count(&self) -> u64 {
        (2 * self.n()).pow(self.rank() as u32)
    }

    fn check(&self, kind: TorusKind) -> Result<(), TorusError> {
        if kind == self.kind {
            Ok(())
        } else {
            Err(TorusError::KindMismatch { expected: self.kind, got: kind })
        }
    }

    // ---- pair model ----

    pub fn pair(&self, w: UnitVal, z: UnitVal) -> PairPoint {
        PairPoint { w, z }
    }

    /// `(g^dw pi^vw, g^dz pi^vz)` at the splitting level.
    pub fn pair_from_exponents(&self, dw: i64, vw: i64, dz: i64, vz: i64) -> PairPoint {
        let l = self.level();
        PairPoint {
            w: UnitVal::from_parts(&self.shape, l, dw, vw),
            z: UnitVal::from_parts(&self.shape, l, dz, vz),
        }
    }

    pub fn pair_one(&self) -> PairPoint {
        self.pair_from_exponents(0, 0, 0, 0)
    }

    pub fn pair_mul(&self, a: &PairPoint, b: &PairPoint) -> Result<PairPoint, TorusError> {
        Ok(PairPoint { w: a.w.mul(&b.w, &self.shape)?, z: a.z.mul(&b.z, &self.shape)? })
    }

    pub fn pair_inv(&self, a: &PairPoint) -> PairPoint {
        PairPoint { w: a.w.inv(&self.shape), z: a.z.inv(&self.shape) }
    }

    /// The generator of `Gal(E/F)` acting on `T(E)`.
    pub fn pair_galois(&self, a: &PairPoint) -> PairPoint {
        let s = &self.shape;
        match self.kind {
            TorusKind::T1 => PairPoint { w: a.w.galois(1, s).inv(s), z: a.z.galois(1, s).inv(s) },
            TorusKind::T2 => PairPoint { w: a.z.galois(1, s).inv(s), z: a.w.galois(1, s) },
        }
    }

    pub fn pair_galois_pow(&self, a: &PairPoint, j: u32) -> PairPoint {
        (0..j).fold(*a, |x, _| self.pair_galois(&x))
    }

    /// `prod_{g in Gamma} g(a)`.
    pub fn pair_norm(&self, a: &PairPoint) -> Result<PairPoint, TorusError> {
        let mut acc = self.pair_one();
        let mut cur = *a;
        for _ in 0..self.kind.galois_order() {
            acc = self.pair_mul(&acc, &cur)?;
            cur = self.pair_galois(&cur);
        }
        Ok(acc)
    }

    pub fn is_rational_pair(&self, a: &PairPoint) -> bool {
        self.pair_galois(a) == *a
    }

    /// Value of the root `r` at a pair point.
    pub fn root_on_pair(&self, r: Root, a: &PairPoint) -> UnitVal {
        let (cw, cz) = self.root_row(r);
        let s = &self.shape;
        a.w.pow(cw, s).mul(&a.z.pow(cz, s), s).expect("pair coordinates share a level")
    }

    /// Exponents of `r` with respect to the pair coordinates.
    pub fn root_row(&self, r: Root) -> (i64, i64) {
        match self.kind {
            TorusKind::T1 => (r.a, r.b),
            TorusKind::T2 => (r.a - r.b, r.b),
        }
    }

    pub fn root_from_row(&self, row: (i64, i64)) -> Root {
        match self.kind {
            TorusKind::T1 => Root::new(row.0, row.1),
            TorusKind::T2 => Root::new(row.0 + row.1, row.1),
        }
    }

    // ---- rational points ----

    pub fn rational(&self, k: [i64; 2]) -> RatPoint {
        let n = self.n() as i64;
        let mut out = [k[0].rem_euclid(n) as u64, k[1].rem_euclid(n) as u64];
        if self.kind == TorusKind::T2 {
            out[1] = 0;
        }
        RatPoint { kind: self.kind, k: out }
    }

    pub fn rational_one(&self) -> RatPoint {
        RatPoint { kind: self.kind, k: [0, 0] }
    }

    pub fn rational_mul(&self, a: &RatPoint, b: &RatPoint) -> RatPoint {
        let n = self.n();
        RatPoint { kind: self.kind, k: [(a.k[0] + b.k[0]) % n, (a.k[1] + b.k[1]) % n] }
    }

    pub fn rational_inv(&self, a: &RatPoint) -> RatPoint {
        let n = self.n();
        RatPoint { kind: self.kind, k: [(n - a.k[0]) % n, (n - a.k[1]) % n] }
    }

    /// All of `T(F)`, lexicographic in the coordinates.
    pub fn enumerate_rational(&self) -> Vec<RatPoint> {
        let n = self.n();
        match self.kind {
            TorusKind::T1 => (0..n).flat_map(|a| (0..n).map(move |b| [a, b])).map(|k| RatPoint { kind: self.kind, k }).collect(),
            TorusKind::T2 => (0..n).map(|a| RatPoint { kind: self.kind, k: [a, 0] }).collect(),
        }
    }

    fn mu_step(&self) -> u64 {
        self.shape.order(self.level()) / self.n()
    }

    pub fn rational_to_pair(&self, g: &RatPoint) -> PairPoint {
        let step = self.mu_step() as i64;
        let s = &self.shape;
        let l = self.level();
        match self.kind {
            TorusKind::T1 => self.pair_from_exponents(step * g.k[0] as i64, 0, step * g.k[1] as i64, 0),
            TorusKind::T2 => {
                let x = UnitVal::from_parts(s, l, step * g.k[0] as i64, 0);
                PairPoint { w: x, z: x.galois(1, s) }
            }
        }
    }

    /// Read back a Galois-fixed pair as a rational point.
    pub fn pair_to_rational(&self, a: &PairPoint) -> Result<RatPoint, TorusError> {
        if !self.is_rational_pair(a) {
            return Err(TorusError::NotRational);
        }
        let step = self.mu_step();
        let k0 = a.w.residue().dlog();
        if a.w.val() != 0 || !k0.is_multiple_of(step) {
            return Err(TorusError::NotRational);
        }
        match self.kind {
            TorusKind::T1 => {
                let k1 = a.z.residue().dlog();
                if a.z.val() != 0 || !k1.is_multiple_of(step) {
                    return Err(TorusError::NotRational);
                }
                Ok(self.rational([(k0 / step) as i64, (k1 / step) as i64]))
            }
            TorusKind::T2 => Ok(self.rational([(k0 / step) as i64, 0])),
        }
    }

    /// Exponent of `r(g)` in `mu_n`.
    pub fn root_value(&self, r: Root, g: &RatPoint) -> u64 {
        let v = self.root_on_pair(r, &self.rational_to_pair(g));
        debug_assert_eq!(v.val(), 0);
        v.residue().dlog() / self.mu_step()
    }

    /// Values of `alpha, beta, alpha+beta, 2alpha+beta`.
    pub fn root_values(&self, g: &RatPoint) -> [u64; 4] {
        STANDARD_POSITIVE.map(|r| self.root_value(r, g))
    }

    /// No root takes the value 1.
    pub fn is_strongly_regular(&self, g: &RatPoint) -> bool {
        self.root_values(g).iter().all(|&x| x != 0)
    }

    pub fn strongly_regular_set(&self) -> Vec<RatPoint> {
        self.enumerate_rational().into_iter().filter(|g| self.is_strongly_regular(g)).collect()
    }

    // ---- coinvariants ----

    pub fn coinv(&self, u: [i64; 2], v: [i64; 2]) -> Coinv {
        let n = self.n() as i64;
        let mut c = Coinv {
            kind: self.kind,
            u: [u[0].rem_euclid(n) as u64, u[1].rem_euclid(n) as u64],
            v: [v[0].rem_euclid(2) as u8, v[1].rem_euclid(2) as u8],
        };
        if self.kind == TorusKind::T2 {
            c.u[1] = 0;
            c.v[1] = 0;
        }
        c
    }

    pub fn coinv_one(&self) -> Coinv {
        self.coinv([0, 0], [0, 0])
    }

    /// Class of a pair point in `T(E)_Gamma`.
    pub fn project(&self, a: &PairPoint) -> Coinv {
        let n = self.n();
        match self.kind {
            TorusKind::T1 => self.coinv(
                [(a.w.residue().dlog() % n) as i64, (a.z.residue().dlog() % n) as i64],
                [a.w.val(), a.z.val()],
            ),
            TorusKind::T2 => {
                let s = &self.shape;
                let x = a.w.div(&a.z.galois(1, s), s).expect("same level");
                self.coinv([(x.residue().dlog() % n) as i64, 0], [x.val(), 0])
            }
        }
    }

    /// Canonical pair representative of a class.
    pub fn coinv_rep(&self, c: &Coinv) -> PairPoint {
        match self.kind {
            TorusKind::T1 => self.pair_from_exponents(c.u[0] as i64, c.v[0] as i64, c.u[1] as i64, c.v[1] as i64),
            TorusKind::T2 => self.pair_from_exponents(c.u[0] as i64, c.v[0] as i64, 0, 0),
        }
    }

    pub fn coinv_mul(&self, a: &Coinv, b: &Coinv) -> Coinv {
        self.coinv(
            [(a.u[0] + b.u[0]) as i64, (a.u[1] + b.u[1]) as i64],
            [(a.v[0] + b.v[0]) as i64, (a.v[1] + b.v[1]) as i64],
        )
    }

    pub fn coinv_inv(&self, a: &Coinv) -> Coinv {
        self.coinv([-(a.u[0] as i64), -(a.u[1] as i64)], [a.v[0] as i64, a.v[1] as i64])
    }

    /// All of `T(E)_Gamma`.
    pub fn enumerate_coinv(&self) -> Vec<Coinv> {
        let n = self.n() as i64;
        let mut out = Vec::new();
        match self.kind {
            TorusKind::T1 => {
                for u0 in 0..n {
                    for u1 in 0..n {
                        for v0 in 0..2 {
                            for v1 in 0..2 {
                                out.push(self.coinv([u0, u1], [v0, v1]));
                            }
                        }
                    }
                }
            }
            TorusKind::T2 => {
                for u in 0..n {
                    for v in 0..2 {
                        out.push(self.coinv([u, 0], [v, 0]));
                    }
                }
            }
        }
        out
    }

    /// The norm `T(E)_Gamma -> T(F)`.
    ///
    /// Only the unit part contributes: `T1` sends `(u, v)` to `-u`, `T2`
    /// sends `u` to `-u`.
    pub fn coinv_norm(&self, c: &Coinv) -> RatPoint {
        self.rational([-(c.u[0] as i64), -(c.u[1] as i64)])
    }

    /// The unit class whose norm is `g`; a section of [`Self::coinv_norm`].
    pub fn unit_class_of(&self, g: &RatPoint) -> Coinv {
        self.coinv([-(g.k[0] as i64), -(g.k[1] as i64)], [0, 0])
    }
}

impl std::ops::Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root { a: -self.a, b: -self.b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_value_closed_forms() {
        for q in [3u64, 5, 7] {
            let t1 = Torus::new(TorusKind::T1, q).unwrap();
            let n = t1.n();
            for g in t1.enumerate_rational() {
                let [a, b] = g.k;
                assert_eq!(t1.root_values(&g), [a, b, (a + b) % n, (2 * a + b) % n]);
            }
            let t2 = Torus::new(TorusKind::T2, q).unwrap();
            let n = t2.n();
            for g in t2.enumerate_rational() {
                let k = g.k[0];
                assert_eq!(t2.root_values(&g), [k, (q - 1) * k % n, q * k % n, (q + 1) * k % n]);
            }
        }
    }

    #[test]
    fn rational_embedding_is_galois_fixed() {
        for kind in TorusKind::ALL {
            let t = Torus::new(kind, 5).unwrap();
            for g in t.enumerate_rational() {
                let p = t.rational_to_pair(&g);
                assert!(t.is_rational_pair(&p));
                assert_eq!(t.pair_to_rational(&p).unwrap(), g);
            }
        }
    }

    #[test]
    fn t1_q3_counts() {
        let t = Torus::new(TorusKind::T1, 3).unwrap();
        assert_eq!(t.strongly_regular_set().len(), 4);
        let t = Torus::new(TorusKind::T2, 3).unwrap();
        assert_eq!(t.strongly_regular_set().len(), 8);
    }
}
