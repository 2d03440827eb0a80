//! Polynomials over `F_p`, used to build and audit the Zech tables.
//!
//! Vectors are coefficient lists, lowest degree first.

use crate::arith::distinct_prime_factors;

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn add(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect()
}

/// Remainder of `a` modulo the monic `f`, padded to `deg f` coefficients.
pub fn rem(p: u64, a: &[u64], f: &[u64]) -> Vec<u64> {
    let n = f.len() - 1;
    let mut r = a.to_vec();
    if r.len() > n {
        for k in (n..r.len()).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            for (i, fi) in f.iter().enumerate().take(n + 1) {
                let idx = k - n + i;
                r[idx] = (r[idx] + p - c * fi % p) % p;
            }
        }
    }
    r.resize(n, 0);
    r
}

pub fn mul_mod(p: u64, a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(p, &prod, f)
}

pub fn pow_mod(p: u64, a: &[u64], mut e: u128, f: &[u64]) -> Vec<u64> {
    let mut acc = vec![0u64; f.len() - 1];
    acc[0] = 1;
    let mut base = rem(p, a, f);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(p, &acc, &base, f);
        }
        base = mul_mod(p, &base, &base, f);
        e >>= 1;
    }
    acc
}

fn poly_rem_general(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    let mut r = trim(a.to_vec());
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1] * lead_inv % p;
        for i in 0..=db {
            r[k + i] = (r[k + i] + p - c * b[i] % p) % p;
        }
        r = trim(r);
        if db == 0 {
            return vec![0];
        }
    }
    r
}

fn gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !(y.len() == 1 && y[0] == 0) {
        let r = poly_rem_general(p, &x, &y);
        x = y;
        y = r;
    }
    x
}

/// `x^(p^k)` modulo `f`.
fn x_pow_p_iter(p: u64, k: usize, f: &[u64]) -> Vec<u64> {
    let mut x = vec![0u64; f.len() - 1];
    if x.len() == 1 {
        x[0] = 0;
        return x;
    }
    x[1] = 1;
    for _ in 0..k {
        x = pow_mod(p, &x, p as u128, f);
    }
    x
}

/// Rabin's irreducibility test for a monic `f`.
pub fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let mut x = vec![0u64; n];
    x[1] = 1;
    if x_pow_p_iter(p, n, f) != x {
        return false;
    }
    for r in distinct_prime_factors(n as u64) {
        let mut h = x_pow_p_iter(p, n / r as usize, f);
        h[1] = (h[1] + p - 1) % p;
        let g = gcd(p, f, &h);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn digits(p: u64, mut idx: u64, n: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    for slot in v.iter_mut() {
        *slot = idx % p;
        idx /= p;
    }
    v
}

fn encode(p: u64, a: &[u64]) -> u64 {
    a.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn start_offset(seed: u64, modulus: u64) -> u64 {
    ((seed as u128 * 0x9E37_79B9_7F4A_7C15u128) % modulus as u128) as u64
}

/// First monic irreducible of degree `n`, scanning lower coefficients in
/// base-`p` order from a seed-dependent offset.
pub fn first_irreducible(p: u64, n: usize, seed: u64) -> Vec<u64> {
    let total = p.pow(n as u32);
    let start = start_offset(seed, total);
    for i in 0..total {
        let mut f = digits(p, (start + i) % total, n);
        f.push(1);
        if f[0] != 0 && is_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

pub fn is_primitive(p: u64, f: &[u64], g: &[u64]) -> bool {
    let n = f.len() - 1;
    let order = p.pow(n as u32) - 1;
    if g.iter().all(|&c| c == 0) {
        return false;
    }
    let mut one = vec![0u64; n];
    one[0] = 1;
    if pow_mod(p, g, order as u128, f) != one {
        return false;
    }
    distinct_prime_factors(order)
        .into_iter()
        .all(|r| pow_mod(p, g, (order / r) as u128, f) != one)
}

/// First primitive element modulo `f`, scanning from a seed-dependent offset.
pub fn first_primitive(p: u64, f: &[u64], seed: u64) -> Vec<u64> {
    let n = f.len() - 1;
    let total = p.pow(n as u32);
    let start = start_offset(seed, total);
    for i in 0..total {
        let g = digits(p, (start + i) % total, n);
        if is_primitive(p, f, &g) {
            return g;
        }
    }
    unreachable!("finite fields have primitive elements")
}

/// `zech[k] = log(1 + g^k)`, with [`super::ZECH_ZERO`] when the sum vanishes.
pub fn zech_table(p: u64, f: &[u64], g: &[u64]) -> Vec<u32> {
    let n = f.len() - 1;
    let total = p.pow(n as u32);
    let order = (total - 1) as usize;
    let mut exp = vec![0u32; order];
    let mut log = vec![super::ZECH_ZERO; total as usize];
    let mut cur = vec![0u64; n];
    cur[0] = 1;
    for (k, slot) in exp.iter_mut().enumerate() {
        let e = encode(p, &cur);
        *slot = e as u32;
        log[e as usize] = k as u32;
        cur = mul_mod(p, &cur, g, f);
    }
    exp.iter()
        .map(|&e| {
            let e = e as u64;
            let c0 = e % p;
            let shifted = e - c0 + (c0 + 1) % p;
            if shifted == 0 {
                super::ZECH_ZERO
            } else {
                log[shifted as usize]
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_small() {
        // x^2 + 1 over F_3 is irreducible, x^2 - 1 is not
        assert!(is_irreducible(3, &[1, 0, 1]));
        assert!(!is_irreducible(3, &[2, 0, 1]));
        // x^4 + 1 over F_3 factors
        assert!(!is_irreducible(3, &[1, 0, 0, 0, 1]));
        // count degree-2 monic irreducibles over F_5: (25 - 5)/2 = 10
        let c = (0..25)
            .filter(|&i| {
                let mut f = digits(5, i, 2);
                f.push(1);
                is_irreducible(5, &f)
            })
            .count();
        assert_eq!(c, 10);
    }

    #[test]
    fn seed_changes_choice_but_stays_valid() {
        let a = first_irreducible(3, 4, 0);
        let b = first_irreducible(3, 4, 17);
        assert!(is_irreducible(3, &a) && is_irreducible(3, &b));
        let g = first_primitive(3, &b, 17);
        assert!(is_primitive(3, &b, &g));
    }
}
