//! Exact arithmetic in the cyclotomic integers `Z[zeta_N]`.
//!
//! Elements are stored reduced modulo the `N`-th cyclotomic polynomial, so two
//! elements are equal exactly when their coefficient vectors agree.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u64, u64),
    #[error("order {from} does not divide target order {to}")]
    NotDivisible { from: u64, to: u64 },
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
}

/// Precomputed data for one order `N`.
struct Ring {
    phi: usize,
    /// Reduced forms of `x^j` for `0 <= j < N`.
    powers: Vec<Vec<BigInt>>,
}

fn registry() -> &'static RwLock<HashMap<u64, Arc<Ring>>> {
    static REG: OnceLock<RwLock<HashMap<u64, Arc<Ring>>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(HashMap::new()))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic divisor; panics if the remainder is nonzero.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    assert!(den[dn].is_one(), "divisor must be monic");
    if rem.len() <= dn {
        assert!(rem.iter().all(Zero::is_zero));
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

/// Coefficients (low to high) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n > 0);
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn ring(n: u64) -> Arc<Ring> {
    if let Some(r) = registry().read().expect("cyclo registry poisoned").get(&n) {
        return r.clone();
    }
    let modulus = cyclotomic_polynomial(n);
    let phi = modulus.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and fold the overflow term back
        let top = cur[phi - 1].clone();
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigInt::zero();
        if !top.is_zero() {
            for i in 0..phi {
                cur[i] -= &top * &modulus[i];
            }
        }
    }
    let r = Arc::new(Ring { phi, powers });
    registry()
        .write()
        .expect("cyclo registry poisoned")
        .entry(n)
        .or_insert(r)
        .clone()
}

fn reduce_exp(k: i64, n: u64) -> usize {
    k.rem_euclid(n as i64) as usize
}

/// An element of `Z[zeta_N]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    order: u64,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(order: u64) -> Self {
        let phi = ring(order).phi;
        CycInt { order, coeffs: vec![BigInt::zero(); phi] }
    }

    pub fn one(order: u64) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u64, c: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = BigInt::from(c);
        z
    }

    /// `zeta_N^k`.
    pub fn root_of_unity(order: u64, k: i64) -> Self {
        let r = ring(order);
        CycInt { order, coeffs: r.powers[reduce_exp(k, order)].clone() }
    }

    /// `sum_j counts[j] * zeta_N^j`; `counts.len()` must equal `order`.
    pub fn from_exponent_counts(order: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len() as u64, order, "one count per exponent class is required");
        let r = ring(order);
        let mut coeffs = vec![BigInt::zero(); r.phi];
        for (j, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = BigInt::from(c);
            for (slot, p) in coeffs.iter_mut().zip(&r.powers[j]) {
                if !p.is_zero() {
                    *slot += &c * p;
                }
            }
        }
        CycInt { order, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_order(&self, other: &Self) -> Result<(), CycloError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(CycloError::OrderMismatch(self.order, other.order))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { order: self.order, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { order: self.order, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.same_order(other)?;
        let r = ring(self.order);
        let prod = poly_mul(&self.coeffs, &other.coeffs);
        let mut coeffs = vec![BigInt::zero(); r.phi];
        for (j, c) in prod.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &r.powers[j % self.order as usize];
            for (slot, b) in coeffs.iter_mut().zip(p) {
                if !b.is_zero() {
                    *slot += c * b;
                }
            }
        }
        Ok(CycInt { order: self.order, coeffs })
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        CycInt { order: self.order, coeffs: self.coeffs.iter().map(|a| a * &c).collect() }
    }

    /// Multiplication by `zeta_N^k`.
    pub fn mul_root(&self, k: i64) -> Self {
        let n = self.order as i64;
        let mut counts = vec![BigInt::zero(); self.order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            counts[reduce_exp(i as i64 + k, n as u64)] += c;
        }
        big_counts(self.order, &counts)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.order);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Reinterpret in `Z[zeta_M]` for a multiple `M` of the current order.
    pub fn to_order(&self, target: u64) -> Result<Self, CycloError> {
        if self.order == 0 || target == 0 {
            return Err(CycloError::ZeroOrder);
        }
        if !target.is_multiple_of(self.order) {
            return Err(CycloError::NotDivisible { from: self.order, to: target });
        }
        let step = target / self.order;
        let mut counts = vec![BigInt::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            counts[i * step as usize] += c;
        }
        Ok(big_counts(target, &counts))
    }

    /// If this element is `zeta_N^k`, return `k` in `[0, N)`.
    pub fn root_exponent(&self) -> Option<u64> {
        let r = ring(self.order);
        r.powers.iter().position(|p| *p == self.coeffs).map(|k| k as u64)
    }

    /// If this element is an integer, return it.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Floating-point image under `zeta_N -> exp(2 pi i / N)`; for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        let n = self.order as f64;
        for (i, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * i as f64 / n;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }
}

fn big_counts(order: u64, counts: &[BigInt]) -> CycInt {
    let r = ring(order);
    let mut coeffs = vec![BigInt::zero(); r.phi];
    for (j, c) in counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (slot, p) in coeffs.iter_mut().zip(&r.powers[j]) {
            if !p.is_zero() {
                *slot += c * p;
            }
        }
    }
    CycInt { order, coeffs }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[{}](", self.order)?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "z^{i}")?,
                _ => write!(f, "{mag}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! panicking_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $m(self, rhs: &CycInt) -> CycInt {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: CycInt) -> CycInt {
                (&self).$m(&rhs)
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -(&self)
    }
}

/// A root of unity `exp(2 pi i * exp / order)`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    order: u64,
    exp: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, exp: i64) -> Self {
        assert!(order > 0, "root of unity order must be positive");
        let e = exp.rem_euclid(order as i64) as u64;
        let g = e.gcd(&order);
        if e == 0 {
            return RootOfUnity { order: 1, exp: 0 };
        }
        RootOfUnity { order: order / g, exp: e / g }
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exp: 0 }
    }

    /// `+1` or `-1`.
    pub fn sign(negative: bool) -> Self {
        if negative {
            RootOfUnity { order: 2, exp: 1 }
        } else {
            Self::one()
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exp
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.order.lcm(&other.order);
        let e = self.exp * (l / self.order) + other.exp * (l / other.order);
        Self::new(l, (e % l) as i64)
    }

    pub fn inv(&self) -> Self {
        Self::new(self.order, -(self.exp as i64))
    }

    pub fn pow(&self, k: i64) -> Self {
        let e = (self.exp as i128 * k as i128).rem_euclid(self.order as i128);
        Self::new(self.order, e as i64)
    }

    /// Exponent of this root written over a denominator `target`.
    pub fn exponent_in(&self, target: u64) -> Result<u64, CycloError> {
        if !target.is_multiple_of(self.order) {
            return Err(CycloError::NotDivisible { from: self.order, to: target });
        }
        Ok(self.exp * (target / self.order))
    }

    pub fn to_cyc(&self, target: u64) -> Result<CycInt, CycloError> {
        let e = self.exponent_in(target)?;
        Ok(CycInt::root_of_unity(target, e as i64))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exp) {
            (1, _) => write!(f, "1"),
            (2, _) => write!(f, "-1"),
            (n, e) => write!(f, "zeta_{n}^{e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(15).len(), 9);
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for n in [2u64, 3, 4, 6, 10, 12, 20, 24] {
            let s = CycInt::from_exponent_counts(n, &vec![1; n as usize]);
            assert!(s.is_zero(), "order {n}");
        }
    }

    #[test]
    fn minus_one_is_half_turn() {
        for n in [2u64, 4, 8, 12, 24] {
            assert_eq!(CycInt::root_of_unity(n, n as i64 / 2), CycInt::from_int(n, -1));
        }
    }

    #[test]
    fn rescale_preserves_roots() {
        let z = CycInt::root_of_unity(6, 5);
        assert_eq!(z.to_order(24).unwrap(), CycInt::root_of_unity(24, 20));
        assert!(matches!(z.to_order(8), Err(CycloError::NotDivisible { .. })));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = CycInt::one(4);
        let b = CycInt::one(6);
        assert_eq!(a.checked_add(&b), Err(CycloError::OrderMismatch(4, 6)));
    }

    #[test]
    fn root_exponent_scan() {
        for k in 0..24 {
            assert_eq!(CycInt::root_of_unity(24, k).root_exponent(), Some(k as u64));
        }
        assert_eq!(CycInt::from_int(24, 2).root_exponent(), None);
    }

    #[test]
    fn reduced_root_equality() {
        assert_eq!(RootOfUnity::new(8, 4), RootOfUnity::new(2, 1));
        assert_eq!(RootOfUnity::new(12, 3).mul(&RootOfUnity::new(4, 1)), RootOfUnity::new(2, 1));
        assert!(RootOfUnity::new(5, 10).is_one());
    }

    #[test]
    fn display_is_readable() {
        let x = CycInt::from_exponent_counts(4, &[2, -1, 0, 0]);
        assert_eq!(x.to_string(), "2 - z^1");
    }
}
