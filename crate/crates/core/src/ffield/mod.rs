//! The residue tower `F_q ⊂ F_{q^2} ⊂ F_{q^4}`.
//!
//! Nonzero elements are discrete logarithms with respect to compatible
//! generators. Multiplication, powers, Frobenius, norms and embeddings only
//! need `q`, so they live on [`TowerShape`]. Addition goes through the
//! Zech-logarithm table held by [`FieldTower`].

mod cache;
pub mod poly;

pub use cache::{default_cache_dir, CACHE_DIR_ENV};

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("field level mismatch: {0} vs {1}")]
    LevelMismatch(Level, Level),
    #[error("level {from} has no norm or embedding relation to level {to}")]
    BadLevel { from: Level, to: Level },
    #[error("characteristic {0} is not supported (pass allow_char_two to override)")]
    CharacteristicTwo(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("table of {needed} entries exceeds budget of {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("element is not in the requested subfield")]
    NotInSubfield,
    #[error("field invariant failed: {0}")]
    Invariant(String),
    #[error("cache i/o: {0}")]
    Cache(String),
}

/// Degree of a residue field over `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Level {
    Base,
    Quadratic,
    Quartic,
}

impl Level {
    pub fn degree(self) -> u32 {
        match self {
            Level::Base => 1,
            Level::Quadratic => 2,
            Level::Quartic => 4,
        }
    }

    pub fn from_degree(d: u32) -> Option<Level> {
        match d {
            1 => Some(Level::Base),
            2 => Some(Level::Quadratic),
            4 => Some(Level::Quartic),
            _ => None,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_q^{}", self.degree())
    }
}

/// A nonzero element `g_m^dlog` of the level-`m` field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem {
    level: Level,
    dlog: u64,
}

impl FFElem {
    pub fn level(&self) -> Level {
        self.level
    }

    pub fn dlog(&self) -> u64 {
        self.dlog
    }
}

/// Multiplicative skeleton of the tower: each `F_{q^m}^*` is `Z/(q^m - 1)`,
/// with `g_m = g_4^((q^4-1)/(q^m-1))` making the inclusions compatible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TowerShape {
    p: u64,
    q: u64,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl TowerShape {
    /// Shape for a prime power `q`.
    pub fn for_q(q: u64) -> Option<Self> {
        crate::arith::prime_power(q).map(|(p, _)| TowerShape { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `|F_{q^m}^*|`.
    pub fn order(&self, level: Level) -> u64 {
        self.q.pow(level.degree()) - 1
    }

    pub fn elem(&self, level: Level, dlog: i64) -> FFElem {
        let n = self.order(level) as i128;
        FFElem { level, dlog: (dlog as i128).rem_euclid(n) as u64 }
    }

    pub fn elem_u(&self, level: Level, dlog: u64) -> FFElem {
        FFElem { level, dlog: dlog % self.order(level) }
    }

    pub fn one(&self, level: Level) -> FFElem {
        FFElem { level, dlog: 0 }
    }

    pub fn generator(&self, level: Level) -> FFElem {
        self.elem_u(level, 1)
    }

    pub fn minus_one(&self, level: Level) -> FFElem {
        if self.p == 2 {
            self.one(level)
        } else {
            FFElem { level, dlog: self.order(level) / 2 }
        }
    }

    fn same(&self, a: FFElem, b: FFElem) -> Result<(), FieldError> {
        if a.level == b.level {
            Ok(())
        } else {
            Err(FieldError::LevelMismatch(a.level, b.level))
        }
    }

    pub fn mul(&self, a: FFElem, b: FFElem) -> Result<FFElem, FieldError> {
        self.same(a, b)?;
        let n = self.order(a.level);
        Ok(FFElem { level: a.level, dlog: (a.dlog + b.dlog) % n })
    }

    pub fn div(&self, a: FFElem, b: FFElem) -> Result<FFElem, FieldError> {
        self.mul(a, self.inv(b))
    }

    pub fn inv(&self, a: FFElem) -> FFElem {
        let n = self.order(a.level);
        FFElem { level: a.level, dlog: (n - a.dlog) % n }
    }

    pub fn pow(&self, a: FFElem, k: i64) -> FFElem {
        let n = self.order(a.level) as i128;
        let d = (a.dlog as i128 * k as i128).rem_euclid(n);
        FFElem { level: a.level, dlog: d as u64 }
    }

    /// `a^(q^j)`.
    pub fn frobenius(&self, a: FFElem, j: u32) -> FFElem {
        let n = self.order(a.level);
        let mut d = a.dlog;
        for _ in 0..j {
            d = mulmod(d, self.q, n);
        }
        FFElem { level: a.level, dlog: d }
    }

    /// `(q^m - 1)/(q^k - 1)` for `k | m`.
    pub fn index(&self, big: Level, small: Level) -> Result<u64, FieldError> {
        if !big.degree().is_multiple_of(small.degree()) {
            return Err(FieldError::BadLevel { from: big, to: small });
        }
        Ok(self.order(big) / self.order(small))
    }

    /// Norm from `a.level()` down to `to`.
    pub fn norm(&self, a: FFElem, to: Level) -> Result<FFElem, FieldError> {
        self.index(a.level, to)?;
        Ok(FFElem { level: to, dlog: a.dlog % self.order(to) })
    }

    /// Inclusion of `a` into the larger field `to`.
    pub fn embed(&self, a: FFElem, to: Level) -> Result<FFElem, FieldError> {
        let c = self.index(to, a.level)?;
        Ok(FFElem { level: to, dlog: a.dlog * c })
    }

    pub fn in_subfield(&self, a: FFElem, sub: Level) -> Result<bool, FieldError> {
        let c = self.index(a.level, sub)?;
        Ok(a.dlog.is_multiple_of(c))
    }

    /// Restrict `a` to the subfield `sub` it lies in.
    pub fn restrict(&self, a: FFElem, sub: Level) -> Result<FFElem, FieldError> {
        let c = self.index(a.level, sub)?;
        if !a.dlog.is_multiple_of(c) {
            return Err(FieldError::NotInSubfield);
        }
        Ok(FFElem { level: sub, dlog: a.dlog / c })
    }
}

/// Options for building a [`FieldTower`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Offsets the enumeration used to pick the modulus and generator.
    pub seed: u64,
    /// Largest Zech table that may be built.
    pub table_budget: u64,
    pub allow_char_two: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { seed: 0, table_budget: 200_000_000, allow_char_two: false }
    }
}

/// Zech marker for `1 + g^k = 0`.
pub const ZECH_ZERO: u32 = u32::MAX;

/// The full tower with addition support.
pub struct FieldTower {
    shape: TowerShape,
    e: u32,
    /// Monic modulus of degree `4e` over `F_p`, low to high.
    modulus: Vec<u64>,
    /// Polynomial form of `g_4`.
    generator: Vec<u64>,
    /// `zech[k] = log(1 + g_4^k)`.
    zech: Vec<u32>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.shape.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl FieldTower {
    /// Build the tower for `q = p^e` from scratch.
    pub fn build(p: u64, e: u32, opts: &BuildOptions) -> Result<Self, FieldError> {
        Self::check_params(p, e, opts)?;
        let n = 4 * e as usize;
        let modulus = poly::first_irreducible(p, n, opts.seed);
        let generator = poly::first_primitive(p, &modulus, opts.seed);
        let zech = poly::zech_table(p, &modulus, &generator);
        let tower = FieldTower { shape: TowerShape { p, q: p.pow(e) }, e, modulus, generator, zech };
        tower.verify()?;
        Ok(tower)
    }

    /// Build, reusing a binary cache under `dir` (or the default directory).
    pub fn build_cached(p: u64, e: u32, opts: &BuildOptions, dir: Option<&Path>) -> Result<Self, FieldError> {
        Self::check_params(p, e, opts)?;
        let dir = match dir {
            Some(d) => d.to_path_buf(),
            None => default_cache_dir(),
        };
        let n = 4 * e as usize;
        let modulus = poly::first_irreducible(p, n, opts.seed);
        if let Some(t) = cache::load(&dir, p, e, &modulus) {
            if t.verify().is_ok() {
                return Ok(t);
            }
        }
        let t = Self::build(p, e, opts)?;
        cache::store(&dir, &t)?;
        Ok(t)
    }

    /// Build for a prime power `q`.
    pub fn for_q(q: u64, opts: &BuildOptions) -> Result<Self, FieldError> {
        let (p, e) = crate::arith::prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::build(p, e, opts)
    }

    pub fn for_q_cached(q: u64, opts: &BuildOptions, dir: Option<&Path>) -> Result<Self, FieldError> {
        let (p, e) = crate::arith::prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::build_cached(p, e, opts, dir)
    }

    fn check_params(p: u64, e: u32, opts: &BuildOptions) -> Result<(), FieldError> {
        if !crate::arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p == 2 && !opts.allow_char_two {
            return Err(FieldError::CharacteristicTwo(p));
        }
        let needed = (p as u128).pow(4 * e) - 1;
        if needed > opts.table_budget as u128 || needed >= ZECH_ZERO as u128 {
            return Err(FieldError::BudgetExceeded {
                needed: needed.min(u64::MAX as u128) as u64,
                budget: opts.table_budget,
            });
        }
        Ok(())
    }

    /// Check primitivity of `g_4` and that each subfield is closed under addition.
    pub fn verify(&self) -> Result<(), FieldError> {
        let p = self.shape.p;
        let n4 = self.shape.order(Level::Quartic);
        if self.zech.len() as u64 != n4 {
            return Err(FieldError::Invariant("zech table length".into()));
        }
        if !poly::is_irreducible(p, &self.modulus) {
            return Err(FieldError::Invariant("modulus is reducible".into()));
        }
        if !poly::is_primitive(p, &self.modulus, &self.generator) {
            return Err(FieldError::Invariant("generator is not primitive".into()));
        }
        for sub in [Level::Base, Level::Quadratic] {
            let c = self.shape.index(Level::Quartic, sub)?;
            let mut k = 0;
            while k < n4 {
                let z = self.zech[k as usize];
                if z != ZECH_ZERO && !(z as u64).is_multiple_of(c) {
                    return Err(FieldError::Invariant(format!("{sub} not closed under addition")));
                }
                k += c;
            }
        }
        // -1 sits where the shape expects it
        if p != 2 {
            let half = (n4 / 2) as usize;
            if self.zech[half] != ZECH_ZERO {
                return Err(FieldError::Invariant("zech(-1) is not zero".into()));
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> TowerShape {
        self.shape
    }

    pub fn p(&self) -> u64 {
        self.shape.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.shape.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator_poly(&self) -> &[u64] {
        &self.generator
    }

    pub fn zech(&self) -> &[u32] {
        &self.zech
    }

    /// Polynomial form (over `F_p`, modulo the modulus) of a nonzero element.
    pub fn to_poly(&self, a: FFElem) -> Vec<u64> {
        let c = self.shape.index(Level::Quartic, a.level).expect("tower level");
        poly::pow_mod(self.shape.p, &self.generator, a.dlog as u128 * c as u128, &self.modulus)
    }

    /// `a + b`, with `None` standing for zero.
    pub fn add(&self, a: Option<FFElem>, b: Option<FFElem>) -> Result<Option<FFElem>, FieldError> {
        let (a, b) = match (a, b) {
            (None, x) | (x, None) => return Ok(x),
            (Some(a), Some(b)) => (a, b),
        };
        self.shape.same(a, b)?;
        let c = self.shape.index(Level::Quartic, a.level)?;
        let n4 = self.shape.order(Level::Quartic);
        let da = a.dlog * c;
        let db = b.dlog * c;
        let diff = (db + n4 - da) % n4;
        let z = self.zech[diff as usize];
        if z == ZECH_ZERO {
            return Ok(None);
        }
        let r = (da + z as u64) % n4;
        if !r.is_multiple_of(c) {
            return Err(FieldError::Invariant("sum left its subfield".into()));
        }
        Ok(Some(FFElem { level: a.level, dlog: r / c }))
    }

    pub fn neg(&self, a: FFElem) -> FFElem {
        self.shape.mul(a, self.shape.minus_one(a.level)).expect("same level")
    }

    pub fn sub(&self, a: Option<FFElem>, b: Option<FFElem>) -> Result<Option<FFElem>, FieldError> {
        self.add(a, b.map(|x| self.neg(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn tower(q: u64) -> FieldTower {
        FieldTower::for_q(q, &BuildOptions::default()).unwrap()
    }

    /// Independent log table from repeated polynomial multiplication.
    fn log_table(t: &FieldTower) -> HashMap<Vec<u64>, u64> {
        let p = t.p();
        let mut cur = vec![0u64; t.modulus().len() - 1];
        cur[0] = 1;
        let mut m = HashMap::new();
        for k in 0..t.shape().order(Level::Quartic) {
            m.insert(cur.clone(), k);
            cur = poly::mul_mod(p, &cur, t.generator_poly(), t.modulus());
        }
        m
    }

    #[test]
    fn addition_matches_polynomial_arithmetic_q3() {
        let t = tower(3);
        let logs = log_table(&t);
        assert_eq!(logs.len(), 80);
        let s = t.shape();
        for lvl in [Level::Base, Level::Quadratic, Level::Quartic] {
            let n = s.order(lvl);
            for a in 0..n {
                for b in 0..n {
                    let x = s.elem_u(lvl, a);
                    let y = s.elem_u(lvl, b);
                    let sum = poly::add(t.p(), &t.to_poly(x), &t.to_poly(y));
                    let expect = if sum.iter().all(|&c| c == 0) {
                        None
                    } else {
                        let c = s.index(Level::Quartic, lvl).unwrap();
                        Some(logs[&sum] / c)
                    };
                    assert_eq!(t.add(Some(x), Some(y)).unwrap().map(|e| e.dlog()), expect);
                }
            }
        }
    }

    #[test]
    fn frobenius_is_p_power_map() {
        let t = tower(9);
        let s = t.shape();
        for d in [1u64, 7, 100, 6000] {
            let x = s.elem_u(Level::Quartic, d);
            let px = poly::pow_mod(t.p(), &t.to_poly(x), 9, t.modulus());
            assert_eq!(t.to_poly(s.frobenius(x, 1)), px);
        }
    }

    #[test]
    fn norm_is_product_of_conjugates() {
        let t = tower(5);
        let s = t.shape();
        let x = s.elem_u(Level::Quartic, 77);
        let mut prod = s.one(Level::Quartic);
        for j in 0..4 {
            prod = s.mul(prod, s.frobenius(x, j)).unwrap();
        }
        let n = s.norm(x, Level::Base).unwrap();
        assert_eq!(s.embed(n, Level::Quartic).unwrap(), prod);
    }

    #[test]
    fn char_two_is_rejected_by_default() {
        assert!(matches!(
            FieldTower::build(2, 1, &BuildOptions::default()),
            Err(FieldError::CharacteristicTwo(2))
        ));
        let opts = BuildOptions { allow_char_two: true, ..Default::default() };
        let t = FieldTower::build(2, 1, &opts).unwrap();
        assert_eq!(t.zech().len(), 15);
    }

    #[test]
    fn budget_is_enforced() {
        let opts = BuildOptions { table_budget: 100, ..Default::default() };
        assert!(matches!(FieldTower::for_q(5, &opts), Err(FieldError::BudgetExceeded { .. })));
    }

    #[test]
    fn level_mismatch_is_reported() {
        let s = TowerShape::for_q(3).unwrap();
        let a = s.one(Level::Base);
        let b = s.one(Level::Quadratic);
        assert_eq!(s.mul(a, b), Err(FieldError::LevelMismatch(Level::Base, Level::Quadratic)));
    }
}
