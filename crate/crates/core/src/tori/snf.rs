//! Smith normal form over the integers, with unimodular transforms, and the
//! subquotient computations built on it.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SnfError {
    #[error("integer overflow in Smith normal form")]
    Overflow,
    #[error("vector is not in the lattice")]
    NotInLattice,
    #[error("dimension mismatch")]
    Dimension,
}

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[i128]> = (0..self.rows).map(|i| self.row(i)).collect();
        write!(f, "{rows:?}")
    }
}

fn ck(x: Option<i128>) -> Result<i128, SnfError> {
    x.ok_or(SnfError::Overflow)
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_cols(cols: &[Vec<i128>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged matrix");
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn diag(d: &[i128]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i128) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &IMat) -> Result<IMat, SnfError> {
        if self.cols != other.rows {
            return Err(SnfError::Dimension);
        }
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = ck(a.checked_mul(other.get(k, j)))?;
                    let s = ck(out.get(i, j).checked_add(v))?;
                    out.set(i, j, s);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i128]) -> Result<Vec<i128>, SnfError> {
        let m = IMat::from_cols(&[v.to_vec()], v.len());
        Ok(self.mul(&m)?.col(0))
    }

    pub fn add(&self, other: &IMat) -> Result<IMat, SnfError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(SnfError::Dimension);
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| ck(a.checked_add(*b)))
            .collect::<Result<_, _>>()?;
        Ok(IMat { rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> IMat {
        IMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hcat(&self, other: &IMat) -> IMat {
        assert_eq!(self.rows, other.rows);
        let mut cols: Vec<Vec<i128>> = (0..self.cols).map(|j| self.col(j)).collect();
        cols.extend((0..other.cols).map(|j| other.col(j)));
        IMat::from_cols(&cols, self.rows)
    }

    /// Leading `n` rows.
    pub fn top(&self, n: usize) -> IMat {
        let rows: Vec<Vec<i128>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        if rows.is_empty() {
            return IMat::zeros(0, self.cols);
        }
        IMat::from_rows(&rows)
    }

    pub fn select_cols(&self, idx: impl IntoIterator<Item = usize>) -> IMat {
        let cols: Vec<Vec<i128>> = idx.into_iter().map(|j| self.col(j)).collect();
        IMat::from_cols(&cols, self.rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: i128) -> Result<(), SnfError> {
        for j in 0..self.cols {
            let v = ck(self.get(src, j).checked_mul(c))?;
            let s = ck(self.get(dst, j).checked_add(v))?;
            self.set(dst, j, s);
        }
        Ok(())
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: i128) -> Result<(), SnfError> {
        for i in 0..self.rows {
            let v = ck(self.get(i, src).checked_mul(c))?;
            let s = ck(self.get(i, dst).checked_add(v))?;
            self.set(i, dst, s);
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = self.get(i, j);
            self.set(i, j, -x);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = self.get(i, j);
            self.set(i, j, -x);
        }
    }
}

/// `u * a * v = d` with `d` diagonal, `d[i] | d[i+1]`, `d[i] >= 0`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IMat,
    pub u: IMat,
    pub u_inv: IMat,
    pub v: IMat,
    pub v_inv: IMat,
}

impl Snf {
    /// Diagonal entries, `min(rows, cols)` of them.
    pub fn invariants(&self) -> Vec<i128> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i)).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().iter().filter(|&&x| x != 0).count()
    }
}

pub fn smith(a: &IMat) -> Result<Snf, SnfError> {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IMat::identity(m);
    let mut u_inv = IMat::identity(m);
    let mut v = IMat::identity(n);
    let mut v_inv = IMat::identity(n);

    // every row op R on d is mirrored: u <- R u, u_inv <- u_inv R^-1
    macro_rules! row_add {
        ($dst:expr, $src:expr, $c:expr) => {{
            d.add_row($dst, $src, $c)?;
            u.add_row($dst, $src, $c)?;
            u_inv.add_col($src, $dst, -$c)?;
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $c:expr) => {{
            d.add_col($dst, $src, $c)?;
            v.add_col($dst, $src, $c)?;
            v_inv.add_row($src, $dst, -$c)?;
        }};
    }

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize, i128)> = None;
            for i in t..m {
                for j in t..n {
                    let x = d.get(i, j);
                    if x != 0 && best.is_none_or(|(_, _, b)| x.unsigned_abs() < b.unsigned_abs()) {
                        best = Some((i, j, x));
                    }
                }
            }
            let Some((bi, bj, _)) = best else {
                return finish(d, u, u_inv, v, v_inv);
            };
            if bi != t {
                d.swap_rows(t, bi);
                u.swap_rows(t, bi);
                u_inv.swap_cols(t, bi);
            }
            if bj != t {
                d.swap_cols(t, bj);
                v.swap_cols(t, bj);
                v_inv.swap_rows(t, bj);
            }
            let p = d.get(t, t);
            let mut clean = true;
            for i in t + 1..m {
                let qt = d.get(i, t) / p;
                if qt != 0 {
                    row_add!(i, t, -qt);
                }
                if d.get(i, t) != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let qt = d.get(t, j) / p;
                if qt != 0 {
                    col_add!(j, t, -qt);
                }
                if d.get(t, j) != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d.get(i, j) % p != 0));
            match bad {
                Some(i) => row_add!(t, i, 1),
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    finish(d, u, u_inv, v, v_inv)
}

fn finish(d: IMat, u: IMat, u_inv: IMat, v: IMat, v_inv: IMat) -> Result<Snf, SnfError> {
    Ok(Snf { d, u, u_inv, v, v_inv })
}

/// A finitely generated abelian group `⊕ Z/d_i` (with `d_i = 0` meaning `Z`),
/// together with generators as vectors in the ambient `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbGroup {
    pub invariants: Vec<i128>,
    pub generators: Vec<Vec<i128>>,
}

impl AbGroup {
    /// `None` when the group is infinite.
    pub fn order(&self) -> Option<u128> {
        self.invariants.iter().try_fold(1u128, |acc, &d| (d != 0).then(|| acc * d as u128))
    }

    /// Every element of a finite group, as an ambient vector.
    pub fn elements(&self) -> Option<Vec<Vec<i128>>> {
        self.order()?;
        let dim = self.generators.first().map_or(0, Vec::len);
        let mut out = vec![vec![0i128; dim]];
        for (g, &d) in self.generators.iter().zip(&self.invariants) {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for base in &out {
                for k in 0..d {
                    next.push(base.iter().zip(g).map(|(b, x)| b + k * x).collect());
                }
            }
            out = next;
        }
        Some(out)
    }
}

/// Basis of the lattice spanned by the columns of `s`.
fn lattice_basis(s: &IMat) -> Result<IMat, SnfError> {
    let f = smith(s)?;
    let r = f.rank();
    let sv = s.mul(&f.v)?;
    Ok(sv.select_cols(0..r))
}

/// Coordinates `c` with `b * c = x`, for `b` with independent columns.
fn solve_in_basis(b: &IMat, b_snf: &Snf, x: &[i128]) -> Result<Vec<i128>, SnfError> {
    let ux = b_snf.u.mul_vec(x)?;
    let inv = b_snf.invariants();
    let k = b.cols;
    let mut y = vec![0i128; k];
    for i in 0..ux.len() {
        let di = if i < k { inv[i] } else { 0 };
        if di == 0 {
            if ux[i] != 0 {
                return Err(SnfError::NotInLattice);
            }
        } else {
            if ux[i] % di != 0 {
                return Err(SnfError::NotInLattice);
            }
            y[i] = ux[i] / di;
        }
    }
    b_snf.v.mul_vec(&y)
}

/// `ker(g) / im(f)` inside `A = Z^n / rel`, where `g: A -> Z^k / target_rel`
/// and `f` maps into `A`. Relations and images are given as matrix columns.
pub fn subquotient(rel: &IMat, g: &IMat, target_rel: &IMat, f: &IMat) -> Result<AbGroup, SnfError> {
    let n = rel.rows;
    if g.cols != n || f.rows != n || target_rel.rows != g.rows {
        return Err(SnfError::Dimension);
    }
    // preimage of target_rel under g, from the kernel of [g | target_rel]
    let big = g.hcat(target_rel);
    let bs = smith(&big)?;
    let r = bs.rank();
    let ker_cols = bs.v.select_cols(r..big.cols);
    let spanning = ker_cols.top(n);
    let basis = if spanning.cols == 0 { IMat::zeros(n, 0) } else { lattice_basis(&spanning)? };
    let k = basis.cols;
    let sub = f.hcat(rel);
    if k == 0 {
        return Ok(AbGroup { invariants: vec![], generators: vec![] });
    }
    let b_snf = smith(&basis)?;
    let coords: Vec<Vec<i128>> =
        (0..sub.cols).map(|j| solve_in_basis(&basis, &b_snf, &sub.col(j))).collect::<Result<_, _>>()?;
    let c = if coords.is_empty() { IMat::zeros(k, 0) } else { IMat::from_cols(&coords, k) };
    let cs = smith(&c)?;
    let inv = cs.invariants();
    let gens_mat = basis.mul(&cs.u_inv)?;
    let mut invariants = Vec::new();
    let mut generators = Vec::new();
    for i in 0..k {
        let d = inv.get(i).copied().unwrap_or(0);
        if d == 1 {
            continue;
        }
        invariants.push(d);
        generators.push(gens_mat.col(i));
    }
    Ok(AbGroup { invariants, generators })
}

/// Number of `x in (Z/n)^cols` with `a x = 0 mod n`.
pub fn kernel_count_mod(a: &IMat, n: u64) -> Result<u128, SnfError> {
    let s = smith(a)?;
    let inv = s.invariants();
    let n = n as i128;
    let mut count = 1u128;
    for j in 0..a.cols {
        let d = inv.get(j).copied().unwrap_or(0);
        count *= gcd_i(d, n) as u128;
    }
    Ok(count)
}

fn gcd_i(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_example() {
        let a = IMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith(&a).unwrap();
        assert_eq!(s.invariants(), vec![2, 6, 12]);
        assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IMat::identity(3));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IMat::identity(3));
    }

    #[test]
    fn cyclic_quotient() {
        // Z^2 / <(2,0),(0,3)> modulo nothing extra is Z/6
        let rel = IMat::diag(&[2, 3]);
        let g = IMat::zeros(1, 2);
        let f = IMat::zeros(2, 0);
        let grp = subquotient(&rel, &g, &IMat::zeros(1, 0), &f).unwrap();
        assert_eq!(grp.invariants, vec![6]);
    }

    #[test]
    fn kernel_counts() {
        // x + y = 0 mod 6 has 6 solutions in (Z/6)^2
        let a = IMat::from_rows(&[vec![1, 1]]);
        assert_eq!(kernel_count_mod(&a, 6).unwrap(), 6);
        let a = IMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(kernel_count_mod(&a, 6).unwrap(), 6);
    }
}
