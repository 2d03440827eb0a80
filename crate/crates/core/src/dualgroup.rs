//! The dual group `Sp(4)` with a fixed pinning, and the lifts of the two
//! elliptic Weyl classes.
//!
//! `Sp(4)` preserves `J = antidiag(1, 1, -1, -1)`; its diagonal torus is
//! `diag(t1, t2, 1/t2, 1/t1)`. Weights are written in the basis `e1, e2`
//! of `X^*`. The simple roots are `alpha* = 2e2` (long) and
//! `beta* = e1 - e2` (short); these are dual to `alpha` and `beta`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::CycInt;
use crate::tori::Coinv;
use crate::TorusKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error("matrix does not preserve J")]
    NotSymplectic,
    #[error("no sign solves the conjugation relation for ({0}, {1})")]
    NoSolution(DualRoot, DualRoot),
    #[error("both signs solve the conjugation relation for ({0}, {1})")]
    Ambiguous(DualRoot, DualRoot),
    #[error("the twisted power is not in the diagonal torus")]
    NotDiagonal,
    #[error("{0} is not a root")]
    NotARoot(DualRoot),
    #[error("h-value {0} is not a sign")]
    NotASign(String),
    #[error("cyclotomic order {0} is too small; use an even order")]
    OddOrder(u64),
}

/// A weight `x e1 + y e2` of the diagonal torus of `Sp(4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualRoot {
    pub x: i64,
    pub y: i64,
}

impl fmt::Display for DualRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub const ALPHA_STAR: DualRoot = DualRoot { x: 0, y: 2 };
pub const BETA_STAR: DualRoot = DualRoot { x: 1, y: -1 };

impl DualRoot {
    pub const fn new(x: i64, y: i64) -> Self {
        DualRoot { x, y }
    }



    /// All eight roots: `±e1±e2`, `±2e1`, `±2e2`.
    pub fn all() -> Vec<DualRoot> {
        let mut v = Vec::new();
        for (x, y) in [(1, -1), (1, 1), (2, 0), (0, 2)] {
            v.push(DualRoot::new(x, y));
            v.push(DualRoot::new(-x, -y));
        }
        v
    }

    pub fn is_root(self) -> bool {
        DualRoot::all().contains(&self)
    }

    /// Coroot in the cocharacter basis `e1*, e2*`.
    pub fn coroot(self) -> (i64, i64) {
        let norm = self.x * self.x + self.y * self.y;
        (2 * self.x / norm, 2 * self.y / norm)
    }

    pub fn pair(self, coch: (i64, i64)) -> i64 {
        self.x * coch.0 + self.y * coch.1
    }

    /// `w_by(self)`.
    pub fn reflect(self, by: DualRoot) -> DualRoot {
        let c = self.pair(by.coroot());
        DualRoot::new(self.x - c * by.x, self.y - c * by.y)
    }
}

/// Reflection of a cocharacter in the root `by`.
pub fn reflect_cochar(coch: (i64, i64), by: DualRoot) -> (i64, i64) {
    let c = by.pair(coch);
    let (a, b) = by.coroot();
    (coch.0 - c * a, coch.1 - c * b)
}

type I4 = [[i64; 4]; 4];

fn i4_mul(a: &I4, b: &I4) -> I4 {
    let mut c = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn i4_transpose(a: &I4) -> I4 {
    let mut t = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            t[i][j] = a[j][i];
        }
    }
    t
}

pub const J: I4 = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]];

const WEIGHTS: [(i64, i64); 4] = [(1, 0), (0, 1), (0, -1), (-1, 0)];

/// In the Lie algebra `sp(4)`: `X^T J + J X = 0`.
fn in_lie_algebra(x: &I4) -> bool {
    let a = i4_mul(&i4_transpose(x), &J);
    let b = i4_mul(&J, x);
    (0..4).all(|i| (0..4).all(|j| a[i][j] + b[i][j] == 0))
}

fn unit(i: usize, j: usize) -> I4 {
    let mut m = [[0; 4]; 4];
    m[i][j] = 1;
    m
}

fn raw_root_vector(r: DualRoot) -> Result<I4, DualError> {
    let (i, j) = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && WEIGHTS[i].0 - WEIGHTS[j].0 == r.x && WEIGHTS[i].1 - WEIGHTS[j].1 == r.y)
        .ok_or(DualError::NotARoot(r))?;
    let base = unit(i, j);
    if in_lie_algebra(&base) {
        return Ok(base);
    }
    for c in [1, -1] {
        let mut m = base;
        m[3 - j][3 - i] += c;
        if in_lie_algebra(&m) {
            return Ok(m);
        }
    }
    Err(DualError::NotARoot(r))
}

fn coroot_h(r: DualRoot) -> I4 {
    let (a, b) = r.coroot();
    let mut h = [[0; 4]; 4];
    h[0][0] = a;
    h[1][1] = b;
    h[2][2] = -b;
    h[3][3] = -a;
    h
}

/// Root vector `E_r`, normalised so that `[E_r, E_-r]` is the coroot.
pub fn root_vector(r: DualRoot) -> Result<I4, DualError> {
    let is_positive = r.x > 0 || (r.x == 0 && r.y > 0);
    let e = raw_root_vector(r)?;
    if is_positive {
        return Ok(e);
    }
    let pos = raw_root_vector(-r)?;
    let br = {
        let a = i4_mul(&pos, &e);
        let b = i4_mul(&e, &pos);
        let mut c = [[0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                c[i][j] = a[i][j] - b[i][j];
            }
        }
        c
    };
    let h = coroot_h(-r);
    if br == h {
        Ok(e)
    } else {
        Ok(e.map(|row| row.map(|x| -x)))
    }
}

/// A matrix in `Sp(4, Z[zeta_N])`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpMatrix {
    order: u64,
    e: Vec<CycInt>,
}

impl fmt::Debug for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..4).map(|i| (0..4).map(|j| self.get(i, j).to_string()).collect()).collect();
        write!(f, "SpMatrix[{}]{:?}", self.order, rows)
    }
}

impl SpMatrix {
    fn raw(order: u64, e: Vec<CycInt>) -> Self {
        SpMatrix { order, e }
    }

    /// Checked constructor.
    pub fn new(order: u64, e: Vec<CycInt>) -> Result<Self, DualError> {
        assert_eq!(e.len(), 16);
        let m = Self::raw(order, e);
        if m.is_symplectic() {
            Ok(m)
        } else {
            Err(DualError::NotSymplectic)
        }
    }

    pub fn from_int(order: u64, m: &I4) -> Result<Self, DualError> {
        Self::new(order, m.iter().flatten().map(|&x| CycInt::from_int(order, x)).collect())
    }

    pub fn identity(order: u64) -> Self {
        Self::from_int(order, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).expect("identity")
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &CycInt {
        &self.e[4 * i + j]
    }

    fn mul_raw(a: &[CycInt], b: &[CycInt], order: u64) -> Vec<CycInt> {
        let mut out = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                let mut s = CycInt::zero(order);
                for k in 0..4 {
                    let x = &a[4 * i + k];
                    let y = &b[4 * k + j];
                    if !x.is_zero() && !y.is_zero() {
                        s = &s + &(x * y);
                    }
                }
                out.push(s);
            }
        }
        out
    }

    fn is_symplectic(&self) -> bool {
        let j: Vec<CycInt> = J.iter().flatten().map(|&x| CycInt::from_int(self.order, x)).collect();
        let t: Vec<CycInt> = (0..16).map(|k| self.e[4 * (k % 4) + k / 4].clone()).collect();
        Self::mul_raw(&Self::mul_raw(&t, &j, self.order), &self.e, self.order) == j
    }

    pub fn mul(&self, other: &SpMatrix) -> SpMatrix {
        assert_eq!(self.order, other.order, "cyclotomic order mismatch");
        Self::raw(self.order, Self::mul_raw(&self.e, &other.e, self.order))
    }

    /// `J^-1 M^T J`.
    pub fn inverse(&self) -> SpMatrix {
        let o = self.order;
        let j: Vec<CycInt> = J.iter().flatten().map(|&x| CycInt::from_int(o, x)).collect();
        let jinv: Vec<CycInt> = j.iter().map(|x| -x).collect();
        let t: Vec<CycInt> = (0..16).map(|k| self.e[4 * (k % 4) + k / 4].clone()).collect();
        Self::raw(o, Self::mul_raw(&Self::mul_raw(&jinv, &t, o), &j, o))
    }

    pub fn pow(&self, k: u32) -> SpMatrix {
        (0..k).fold(Self::identity(self.order), |acc, _| acc.mul(self))
    }

    pub fn conj(&self, x: &SpMatrix) -> SpMatrix {
        self.mul(x).mul(&self.inverse())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> [CycInt; 4] {
        [0, 1, 2, 3].map(|i| self.get(i, i).clone())
    }
}

/// `x_r(c) = I + c E_r` with `c` an integer.
pub fn x_root(order: u64, r: DualRoot, c: i64) -> Result<SpMatrix, DualError> {
    let e = root_vector(r)?;
    let mut m = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] += c * e[i][j];
        }
    }
    SpMatrix::from_int(order, &m)
}

/// `n_r = x_r(1) x_{-r}(-1) x_r(1)`.
pub fn n_element(order: u64, r: DualRoot) -> Result<SpMatrix, DualError> {
    Ok(x_root(order, r, 1)?.mul(&x_root(order, -r, -1)?).mul(&x_root(order, r, 1)?))
}

/// `lambda(zeta_N^k)` for a cocharacter `lambda = (a, b)`.
pub fn cochar_at(order: u64, coch: (i64, i64), k: i64) -> SpMatrix {
    let z = |m: i64| CycInt::root_of_unity(order, m * k);
    let zero = || CycInt::zero(order);
    let d = [z(coch.0), z(coch.1), z(-coch.1), z(-coch.0)];
    let mut e = Vec::with_capacity(16);
    for (i, di) in d.iter().enumerate() {
        for j in 0..4 {
            e.push(if i == j { di.clone() } else { zero() });
        }
    }
    SpMatrix::raw(order, e)
}

/// `r^vee(-1)`.
pub fn coroot_minus_one(order: u64, r: DualRoot) -> Result<SpMatrix, DualError> {
    if !order.is_multiple_of(2) {
        return Err(DualError::OddOrder(order));
    }
    Ok(cochar_at(order, r.coroot(), order as i64 / 2))
}

/// `n_hat = n_alpha n_beta n_alpha n_beta`, the lift of the longest element.
pub fn nhat(order: u64) -> Result<SpMatrix, DualError> {
    let a = n_element(order, ALPHA_STAR)?;
    let b = n_element(order, BETA_STAR)?;
    Ok(a.mul(&b).mul(&a).mul(&b))
}

/// `m_hat = n_alpha n_beta`, the lift of a Coxeter element.
pub fn mhat(order: u64) -> Result<SpMatrix, DualError> {
    Ok(n_element(order, ALPHA_STAR)?.mul(&n_element(order, BETA_STAR)?))
}

/// The Weyl lift attached to each torus.
pub fn twisting_element(kind: TorusKind, order: u64) -> Result<SpMatrix, DualError> {
    match kind {
        TorusKind::T1 => nhat(order),
        TorusKind::T2 => mhat(order),
    }
}

/// `alpha*^vee(zeta^a) beta*^vee(zeta^b)` in `T^ = diag(...)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualTorusElem {
    pub order: u64,
    pub a: i64,
    pub b: i64,
}

impl DualTorusElem {
    pub fn new(order: u64, a: i64, b: i64) -> Self {
        let n = order as i64;
        DualTorusElem { order, a: a.rem_euclid(n), b: b.rem_euclid(n) }
    }

    pub fn one(order: u64) -> Self {
        Self::new(order, 0, 0)
    }

    /// `diag(zeta^b, zeta^(a-b), zeta^(b-a), zeta^-b)`.
    pub fn to_matrix(&self) -> SpMatrix {
        // alpha*^vee = e2*, beta*^vee = e1* - e2*
        cochar_at(self.order, (1, 0), self.b).mul(&cochar_at(self.order, (0, 1), self.a - self.b))
    }

    pub fn from_matrix(m: &SpMatrix) -> Result<Self, DualError> {
        if !m.is_diagonal() {
            return Err(DualError::NotDiagonal);
        }
        let d = m.diagonal();
        let x1 = d[0].root_exponent().ok_or(DualError::NotDiagonal)? as i64;
        let x2 = d[1].root_exponent().ok_or(DualError::NotDiagonal)? as i64;
        Ok(Self::new(m.order(), x1 + x2, x1))
    }

    /// Inverse of [`Self::coxeter_coords`].
    pub fn from_coxeter(order: u64, x: i64, y: i64) -> Self {
        Self::new(order, x + y, y)
    }

    /// Coordinates `(x, y)` with `self = alpha*^vee(zeta^x) (alpha*^vee + beta*^vee)(zeta^y)`.
    pub fn coxeter_coords(&self) -> (i64, i64) {
        let n = self.order as i64;
        ((self.a - self.b).rem_euclid(n), self.b)
    }
}

/// `(t n_hat)^2` for `T1`, `(t m_hat)^4` for `T2`.
pub fn twisted_power(kind: TorusKind, t: &DualTorusElem) -> Result<DualTorusElem, DualError> {
    let n = twisting_element(kind, t.order)?;
    let x = t.to_matrix().mul(&n);
    let p = match kind {
        TorusKind::T1 => x.pow(2),
        TorusKind::T2 => x.pow(4),
    };
    DualTorusElem::from_matrix(&p)
}

/// Signs `eta_{r,s}` with `n_r n_s n_r^-1 = (w_r s)^vee(eta) n_{w_r s}`.
pub fn eta_constants(order: u64) -> Result<BTreeMap<(DualRoot, DualRoot), i8>, DualError> {
    let mut out = BTreeMap::new();
    let roots = DualRoot::all();
    for &r in &roots {
        let nr = n_element(order, r)?;
        let nr_inv = nr.inverse();
        for &s in &roots {
            let lhs = nr.mul(&n_element(order, s)?).mul(&nr_inv);
            let s2 = s.reflect(r);
            let ns2 = n_element(order, s2)?;
            let plus = lhs == ns2;
            let minus = lhs == coroot_minus_one(order, s2)?.mul(&ns2);
            let eta = match (plus, minus) {
                (true, false) => 1,
                (false, true) => -1,
                (true, true) => return Err(DualError::Ambiguous(r, s)),
                (false, false) => return Err(DualError::NoSolution(r, s)),
            };
            out.insert((r, s), eta);
        }
    }
    Ok(out)
}

/// `-eta_{a*,b*} eta_{b*,a*+b*} eta_{a*,a*+b*}`.
pub fn eta_triple_product(table: &BTreeMap<(DualRoot, DualRoot), i8>) -> i8 {
    let ab = ALPHA_STAR + BETA_STAR;
    -table[&(ALPHA_STAR, BETA_STAR)] * table[&(BETA_STAR, ab)] * table[&(ALPHA_STAR, ab)]
}

/// Signs of the character of `H^-1` attached to a torus through its lift.
///
/// `signs[i]` is the value on the class whose `i`-th parity coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HValues {
    pub kind: TorusKind,
    pub signs: [i8; 2],
}

impl HValues {
    pub fn eval(&self, c: &Coinv) -> i8 {
        let mut s = 1;
        for i in 0..2 {
            if c.v[i] == 1 {
                s *= self.signs[i];
            }
        }
        s
    }

    pub fn is_trivial(&self) -> bool {
        self.signs == [1, 1]
    }
}

fn sign_of(order: u64, e: i64) -> Result<i8, DualError> {
    let n = order as i64;
    match e.rem_euclid(n) {
        0 => Ok(1),
        x if 2 * x == n => Ok(-1),
        x => Err(DualError::NotASign(format!("zeta_{order}^{x}"))),
    }
}

/// Read the `H^-1` character off the twisted power of the lift.
///
/// For `T1` the coordinates of `(n_hat)^2` along `alpha*^vee, beta*^vee` are
/// the values on `(pi, 1)` and `(1, pi)`. For `T2` the value on the
/// nontrivial class is the coordinate of `(m_hat)^4` along `alpha*^vee` in the
/// basis `alpha*^vee, alpha*^vee + beta*^vee`; the other coordinate must agree.
pub fn h_values(kind: TorusKind, order: u64) -> Result<HValues, DualError> {
    let t = twisted_power(kind, &DualTorusElem::one(order))?;
    match kind {
        TorusKind::T1 => Ok(HValues { kind, signs: [sign_of(order, t.a)?, sign_of(order, t.b)?] }),
        TorusKind::T2 => {
            let (x, y) = t.coxeter_coords();
            let sx = sign_of(order, x)?;
            let sy = sign_of(order, y)?;
            if sx != sy {
                return Err(DualError::NotASign(format!("inconsistent coordinates {x}, {y}")));
            }
            Ok(HValues { kind, signs: [sx, 1] })
        }
    }
}

/// The fixed pinning: simple roots, their coroots, and root vectors.
#[derive(Clone, Debug)]
pub struct Pinning {
    pub alpha: DualRoot,
    pub beta: DualRoot,
    pub alpha_coroot: (i64, i64),
    pub beta_coroot: (i64, i64),
    pub root_vectors: BTreeMap<DualRoot, [[i64; 4]; 4]>,
}

pub fn pinning() -> Result<Pinning, DualError> {
    let root_vectors = DualRoot::all().into_iter().map(|r| root_vector(r).map(|e| (r, e))).collect::<Result<_, _>>()?;
    Ok(Pinning {
        alpha: ALPHA_STAR,
        beta: BETA_STAR,
        alpha_coroot: ALPHA_STAR.coroot(),
        beta_coroot: BETA_STAR.coroot(),
        root_vectors,
    })
}

/// `n_hat^2 = beta*^vee(-1)`.
pub fn lemma71_check(order: u64) -> Result<bool, DualError> {
    Ok(nhat(order)?.pow(2) == coroot_minus_one(order, BETA_STAR)?)
}

/// `m_hat^4 = beta*^vee(-1)`.
pub fn mhat4_check(order: u64) -> Result<bool, DualError> {
    Ok(mhat(order)?.pow(4) == coroot_minus_one(order, BETA_STAR)?)
}

/// Roots `r` for which `n_r^2 != r^vee(-1)`.
pub fn square_relation_failures(order: u64) -> Result<Vec<DualRoot>, DualError> {
    let mut bad = Vec::new();
    for r in DualRoot::all() {
        if n_element(order, r)?.pow(2) != coroot_minus_one(order, r)? {
            bad.push(r);
        }
    }
    Ok(bad)
}

/// Whether `n_r s^vee(zeta^k) n_r^-1 = (w_r s)^vee(zeta^k)`.
pub fn conjugation_relation(order: u64, r: DualRoot, s: DualRoot, k: i64) -> Result<bool, DualError> {
    let n = n_element(order, r)?;
    let lhs = n.conj(&cochar_at(order, s.coroot(), k));
    Ok(lhs == cochar_at(order, s.reflect(r).coroot(), k))
}

/// Conjugate a dual-torus element by the lift attached to `kind`.
pub fn lift_conjugate(kind: TorusKind, t: &DualTorusElem) -> Result<DualTorusElem, DualError> {
    DualTorusElem::from_matrix(&twisting_element(kind, t.order)?.conj(&t.to_matrix()))
}

/// The expected action: inversion for `T1`, `(w, z) -> (1/z, w)` in Coxeter
/// coordinates for `T2`.
pub fn expected_lift_action(kind: TorusKind, t: &DualTorusElem) -> DualTorusElem {
    match kind {
        TorusKind::T1 => DualTorusElem::new(t.order, -t.a, -t.b),
        TorusKind::T2 => {
            let (w, z) = t.coxeter_coords();
            DualTorusElem::from_coxeter(t.order, -z, w)
        }
    }
}

/// Compare the twisted power of `samples` seeded random torsion elements
/// of order dividing `order` with that of the identity. Returns the first
/// element that disagrees.
pub fn twisted_power_sampled(
    kind: TorusKind,
    order: u64,
    samples: usize,
    seed: u64,
) -> Result<Option<DualTorusElem>, DualError> {
    let base = twisted_power(kind, &DualTorusElem::one(order))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let t = DualTorusElem::new(order, rng.gen_range(0..order as i64), rng.gen_range(0..order as i64));
        if twisted_power(kind, &t)? != base {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Default cyclotomic order for dual-torus computations.
pub const DEFAULT_ORDER: u64 = 24;

impl std::ops::Add for DualRoot {
    type Output = DualRoot;
    fn add(self, o: DualRoot) -> DualRoot {
        DualRoot::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Neg for DualRoot {
    type Output = DualRoot;
    fn neg(self) -> DualRoot {
        DualRoot::new(-self.x, -self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_vectors_normalised() {
        for r in DualRoot::all() {
            let e = root_vector(r).unwrap();
            let f = root_vector(-r).unwrap();
            assert!(in_lie_algebra(&e));
            let a = i4_mul(&e, &f);
            let b = i4_mul(&f, &e);
            let mut c = [[0; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    c[i][j] = a[i][j] - b[i][j];
                }
            }
            assert_eq!(c, coroot_h(r), "root {r}");
            assert_eq!(i4_mul(&e, &e), [[0; 4]; 4]);
        }
    }

    #[test]
    fn pinning_matches_hand_computation() {
        assert_eq!(root_vector(BETA_STAR).unwrap(), {
            let mut m = unit(0, 1);
            m[2][3] = -1;
            m
        });
        assert_eq!(root_vector(ALPHA_STAR).unwrap(), unit(1, 2));
        assert_eq!(root_vector(DualRoot::new(1, 1)).unwrap(), {
            let mut m = unit(0, 2);
            m[1][3] = 1;
            m
        });
    }

    #[test]
    fn torus_coordinates_round_trip() {
        for a in 0..24 {
            for b in [0, 5, 12, 23] {
                let t = DualTorusElem::new(24, a, b);
                assert_eq!(DualTorusElem::from_matrix(&t.to_matrix()).unwrap(), t);
            }
        }
    }

    #[test]
    fn non_symplectic_rejected() {
        let m = [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        assert_eq!(SpMatrix::from_int(24, &m), Err(DualError::NotSymplectic));
    }

    #[test]
    fn lifts_square_to_central_sign() {
        let minus = coroot_minus_one(24, BETA_STAR).unwrap();
        assert_eq!(minus, SpMatrix::from_int(24, &[[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]).unwrap());
        assert_eq!(nhat(24).unwrap().pow(2), minus);
        assert_eq!(mhat(24).unwrap().pow(4), minus);
    }

    #[test]
    fn triple_product_and_h_values() {
        let t = eta_constants(24).unwrap();
        assert_eq!(t.len(), 64);
        assert_eq!(eta_triple_product(&t), -1);
        assert_eq!(h_values(TorusKind::T1, 24).unwrap().signs, [1, -1]);
        assert_eq!(h_values(TorusKind::T2, 24).unwrap().signs, [-1, 1]);
    }
}
