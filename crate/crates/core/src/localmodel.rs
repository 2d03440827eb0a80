//! Depth-zero model of the unramified extensions `E_m / F`.
//!
//! A nonzero element is `u * pi^val` with `u` a Teichmüller unit, recorded by
//! its residue. At depth zero this loses nothing: every quantity entering
//! the character formulas depends only on the residue and the valuation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::RootOfUnity;
use crate::ffield::{FFElem, FieldError, FieldTower, Level, TowerShape};
use crate::TorusKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("difference of {a:?} and {b:?} has positive depth; not modelled")]
    Cancellation { a: UnitVal, b: UnitVal },
    #[error("eta for {kind} expects level {expected}, got {got}")]
    WrongLevel { kind: TorusKind, expected: Level, got: Level },
}

/// `[u] * pi^val` in `E_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitVal {
    residue: FFElem,
    val: i64,
}

impl UnitVal {
    pub fn new(residue: FFElem, val: i64) -> Self {
        UnitVal { residue, val }
    }

    pub fn one(shape: &TowerShape, level: Level) -> Self {
        UnitVal { residue: shape.one(level), val: 0 }
    }

    pub fn uniformizer(shape: &TowerShape, level: Level) -> Self {
        UnitVal { residue: shape.one(level), val: 1 }
    }

    /// `[g^dlog] * pi^val`.
    pub fn from_parts(shape: &TowerShape, level: Level, dlog: i64, val: i64) -> Self {
        UnitVal { residue: shape.elem(level, dlog), val }
    }

    pub fn residue(&self) -> FFElem {
        self.residue
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn level(&self) -> Level {
        self.residue.level()
    }

    pub fn mul(&self, other: &Self, shape: &TowerShape) -> Result<Self, LocalError> {
        Ok(UnitVal { residue: shape.mul(self.residue, other.residue)?, val: self.val + other.val })
    }

    pub fn div(&self, other: &Self, shape: &TowerShape) -> Result<Self, LocalError> {
        self.mul(&other.inv(shape), shape)
    }

    pub fn inv(&self, shape: &TowerShape) -> Self {
        UnitVal { residue: shape.inv(self.residue), val: -self.val }
    }

    pub fn pow(&self, k: i64, shape: &TowerShape) -> Self {
        UnitVal { residue: shape.pow(self.residue, k), val: self.val * k }
    }

    /// The `j`-th power of the arithmetic Frobenius; `pi` is fixed.
    pub fn galois(&self, j: u32, shape: &TowerShape) -> Self {
        UnitVal { residue: shape.frobenius(self.residue, j), val: self.val }
    }

    /// Norm to the subextension of residue level `to`.
    pub fn norm_down(&self, to: Level, shape: &TowerShape) -> Result<Self, LocalError> {
        let residue = shape.norm(self.residue, to)?;
        let ratio = (self.level().degree() / to.degree()) as i64;
        Ok(UnitVal { residue, val: self.val * ratio })
    }

    /// Inclusion into a larger unramified extension.
    pub fn embed(&self, to: Level, shape: &TowerShape) -> Result<Self, LocalError> {
        Ok(UnitVal { residue: shape.embed(self.residue, to)?, val: self.val })
    }
}

/// `a - b` in the depth-zero model.
///
/// The term of smaller valuation dominates. At equal valuation the
/// residues are subtracted; equal residues would leave a difference of
/// positive depth, which is reported as [`LocalError::Cancellation`].
pub fn uv_diff(tower: &FieldTower, a: &UnitVal, b: &UnitVal) -> Result<UnitVal, LocalError> {
    if a.level() != b.level() {
        return Err(FieldError::LevelMismatch(a.level(), b.level()).into());
    }
    if a.val < b.val {
        return Ok(*a);
    }
    if b.val < a.val {
        return Ok(UnitVal { residue: tower.neg(b.residue), val: b.val });
    }
    match tower.sub(Some(a.residue), Some(b.residue))? {
        Some(r) => Ok(UnitVal { residue: r, val: a.val }),
        None => Err(LocalError::Cancellation { a: *a, b: *b }),
    }
}

/// Choice of the quartic sign character (`pi -> i` or `pi -> -i`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EtaBranch {
    #[default]
    Plus,
    Minus,
}

impl EtaBranch {
    pub const BOTH: [EtaBranch; 2] = [EtaBranch::Plus, EtaBranch::Minus];

    pub fn name(self) -> &'static str {
        match self {
            EtaBranch::Plus => "plus",
            EtaBranch::Minus => "minus",
        }
    }
}

/// The depth-zero sign character `eta` of `E^x`, trivial on units.
///
/// For `T1` (quadratic `E`) it is `pi -> -1`; for `T2` (quartic `E`) it is
/// `pi -> i` or `pi -> -i` according to `branch`.
pub fn eta(kind: TorusKind, a: &UnitVal, branch: EtaBranch) -> Result<RootOfUnity, LocalError> {
    if a.level() != kind.level() {
        return Err(LocalError::WrongLevel { kind, expected: kind.level(), got: a.level() });
    }
    Ok(match kind {
        TorusKind::T1 => RootOfUnity::new(2, a.val),
        TorusKind::T2 => match branch {
            EtaBranch::Plus => RootOfUnity::new(4, a.val),
            EtaBranch::Minus => RootOfUnity::new(4, -a.val),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::BuildOptions;

    #[test]
    fn diff_at_equal_valuation_uses_zech() {
        let t = FieldTower::for_q(3, &BuildOptions::default()).unwrap();
        let s = t.shape();
        let a = UnitVal::from_parts(&s, Level::Quadratic, 1, 2);
        let b = UnitVal::from_parts(&s, Level::Quadratic, 3, 2);
        let d = uv_diff(&t, &a, &b).unwrap();
        assert_eq!(d.val(), 2);
        let back = t.add(Some(d.residue()), Some(b.residue())).unwrap();
        assert_eq!(back, Some(a.residue()));
        assert!(matches!(uv_diff(&t, &a, &a), Err(LocalError::Cancellation { .. })));
    }

    #[test]
    fn diff_dominant_term() {
        let t = FieldTower::for_q(5, &BuildOptions::default()).unwrap();
        let s = t.shape();
        let a = UnitVal::from_parts(&s, Level::Quartic, 10, 0);
        let b = UnitVal::from_parts(&s, Level::Quartic, 3, 1);
        assert_eq!(uv_diff(&t, &a, &b).unwrap(), a);
        let d = uv_diff(&t, &b, &a).unwrap();
        assert_eq!(d.residue(), t.neg(a.residue()));
    }

    #[test]
    fn eta_values() {
        let s = TowerShape::for_q(3).unwrap();
        let pi2 = UnitVal::uniformizer(&s, Level::Quadratic);
        let pi4 = UnitVal::uniformizer(&s, Level::Quartic);
        assert_eq!(eta(TorusKind::T1, &pi2, EtaBranch::Plus).unwrap(), RootOfUnity::sign(true));
        assert_eq!(eta(TorusKind::T2, &pi4, EtaBranch::Plus).unwrap(), RootOfUnity::new(4, 1));
        assert_eq!(eta(TorusKind::T2, &pi4, EtaBranch::Minus).unwrap(), RootOfUnity::new(4, 3));
        assert!(eta(TorusKind::T1, &pi4, EtaBranch::Plus).is_err());
    }

    #[test]
    fn norm_scales_valuation() {
        let s = TowerShape::for_q(7).unwrap();
        let x = UnitVal::from_parts(&s, Level::Quartic, 123, 3);
        let mut prod = UnitVal::one(&s, Level::Quartic);
        for j in 0..4 {
            prod = prod.mul(&x.galois(j, &s), &s).unwrap();
        }
        let n = x.norm_down(Level::Base, &s).unwrap();
        assert_eq!(n.embed(Level::Quartic, &s).unwrap(), prod);
        assert_eq!(n.val(), 12);
    }
}
