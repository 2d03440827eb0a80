//! Exact finite models for depth-zero elliptic tori of `PGSp(4)` over a
//! `p`-adic field, their dual-group lifts, and the induced character
//! formulas.
//!
//! Everything is computed exactly: residue fields through discrete logs and
//! Zech tables, character values in cyclotomic integers.

pub mod arith;
pub mod characters;
pub mod charformula;
pub mod cyclo;
pub mod dualgroup;
pub mod ffield;
pub mod localmodel;
pub mod tori;
pub mod uniqueness;

use serde::{Deserialize, Serialize};

use crate::ffield::Level;

/// The two elliptic depth-zero tori.
///
/// `T1` splits over the unramified quadratic extension and its points are
/// pairs in that extension; `T2` splits over the unramified quartic
/// extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TorusKind {
    T1,
    T2,
}

impl TorusKind {
    pub const ALL: [TorusKind; 2] = [TorusKind::T1, TorusKind::T2];

    /// Residue level of the splitting field.
    pub fn level(self) -> Level {
        match self {
            TorusKind::T1 => Level::Quadratic,
            TorusKind::T2 => Level::Quartic,
        }
    }

    /// Order of the Galois group of the splitting field.
    pub fn galois_order(self) -> u32 {
        self.level().degree()
    }

    /// Number 1 or 2, as used in descriptors.
    pub fn index(self) -> u8 {
        match self {
            TorusKind::T1 => 1,
            TorusKind::T2 => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(TorusKind::T1),
            2 => Some(TorusKind::T2),
            _ => None,
        }
    }
}

impl std::fmt::Display for TorusKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "T{}", self.index())
    }
}
