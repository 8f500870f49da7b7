//! Dense linear algebra over the prime field GF(p).
//!
//! Everything here is exact arithmetic on `u8` entries reduced mod p.
//! Matrices are tiny (dimensions bounded by the class-2 rank, at most a few
//! dozen), so the textbook algorithms are the right ones.

use crate::error::{CdError, Result};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CdError::InvalidPrime(p))
    }
}

#[inline]
pub fn add(p: u32, a: u8, b: u8) -> u8 {
    ((a as u32 + b as u32) % p) as u8
}

#[inline]
pub fn sub(p: u32, a: u8, b: u8) -> u8 {
    ((a as u32 + p - b as u32) % p) as u8
}

#[inline]
pub fn mul(p: u32, a: u8, b: u8) -> u8 {
    ((a as u32 * b as u32) % p) as u8
}

#[inline]
pub fn neg(p: u32, a: u8) -> u8 {
    if a == 0 {
        0
    } else {
        (p - a as u32) as u8
    }
}

/// Multiplicative inverse mod p, for a != 0.
pub fn inv(p: u32, a: u8) -> u8 {
    debug_assert!(a != 0);
    // p is small; brute force beats extended gcd bookkeeping here.
    for x in 1..p {
        if (a as u32 * x) % p == 1 {
            return x as u8;
        }
    }
    unreachable!("no inverse for {a} mod {p}")
}

/// Row-major matrix over GF(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfMatrix {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl GfMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        GfMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|&x| (x as u32 % p) as u8));
        }
        GfMatrix { p, rows: rows.len(), cols, data }
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matmul(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = GfMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)] as u32 + a as u32 * other[(k, j)] as u32;
                    out[(i, j)] = (v % self.p) as u8;
                }
            }
        }
        out
    }

    /// In-place reduction to the (unique) reduced row echelon form.
    /// Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let s = inv(p, self[(r, c)]);
            for j in c..self.cols {
                self[(r, j)] = mul(p, self[(r, j)], s);
            }
            for i in 0..self.rows {
                if i != r && self[(i, c)] != 0 {
                    let f = self[(i, c)];
                    for j in c..self.cols {
                        let v = sub(p, self[(i, j)], mul(p, f, self[(r, j)]));
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of { v : M v = 0 }, returned as the rows of a canonical subspace.
    pub fn nullspace(&self) -> Subspace {
        let mut m = self.clone();
        let pivots = m.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                // pivot variable = -sum of free-column entries
                v[pc] = neg(self.p, m[(ri, free)]);
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.p, self.cols, &basis)
    }

    /// Inverse of a square matrix; None when singular.
    pub fn inverse(&self) -> Option<GfMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = GfMatrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = 1;
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = GfMatrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)];
            }
        }
        Some(out)
    }
}

impl std::ops::Index<(usize, usize)> for GfMatrix {
    type Output = u8;
    fn index(&self, (i, j): (usize, usize)) -> &u8 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for GfMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u8 {
        &mut self.data[i * self.cols + j]
    }
}

/// A subspace of GF(p)^n held as a reduced-row-echelon basis, so equal
/// subspaces have byte-identical bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    pub p: u32,
    pub ambient_dim: usize,
    /// RREF rows, each of length `ambient_dim`; empty for the zero space.
    pub basis: Vec<Vec<u8>>,
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Self {
        Subspace { p, ambient_dim: n, basis: Vec::new() }
    }

    pub fn full(p: u32, n: usize) -> Self {
        let basis = (0..n)
            .map(|i| {
                let mut v = vec![0u8; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { p, ambient_dim: n, basis }
    }

    pub fn from_vectors(p: u32, n: usize, vectors: &[Vec<u8>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(p, n);
        }
        let mut m = GfMatrix::from_rows(p, vectors);
        assert_eq!(m.cols, n);
        let pivots = m.rref();
        let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace { p, ambient_dim: n, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        // Reduce v against the echelon basis.
        let mut v = v.to_vec();
        for row in &self.basis {
            let pc = row.iter().position(|&x| x != 0).unwrap();
            if v[pc] != 0 {
                let f = v[pc];
                for j in pc..self.ambient_dim {
                    v[j] = sub(self.p, v[j], mul(self.p, f, row[j]));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn leq(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|row| other.contains(row))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.p, self.ambient_dim, &rows)
    }

    /// Constraint form: the rows annihilating this subspace under the
    /// standard dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.p, self.ambient_dim);
        }
        GfMatrix::from_rows(self.p, &self.basis).nullspace()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let a = self.annihilator();
        let b = other.annihilator();
        if a.basis.is_empty() {
            return other.clone();
        }
        if b.basis.is_empty() {
            return self.clone();
        }
        let mut rows = a.basis;
        rows.extend(b.basis);
        GfMatrix::from_rows(self.p, &rows).nullspace()
    }

    /// Every vector of the subspace, in deterministic order.
    pub fn enumerate(&self) -> Vec<Vec<u8>> {
        let k = self.dim();
        let p = self.p;
        let total = (p as u64).pow(k as u32) as usize;
        let mut out = Vec::with_capacity(total);
        let mut coeff = vec![0u8; k];
        loop {
            let mut v = vec![0u8; self.ambient_dim];
            for (c, row) in coeff.iter().zip(&self.basis) {
                if *c != 0 {
                    for j in 0..self.ambient_dim {
                        v[j] = add(p, v[j], mul(p, *c, row[j]));
                    }
                }
            }
            out.push(v);
            // little-endian increment
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                coeff[i] += 1;
                if (coeff[i] as u32) < p {
                    break;
                }
                coeff[i] = 0;
                i += 1;
            }
        }
    }

    /// Stable byte serialization of the canonical basis.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 + self.basis.len() * self.ambient_dim);
        out.push(self.dim() as u8);
        out.push(self.ambient_dim as u8);
        for row in &self.basis {
            out.extend_from_slice(row);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = GfMatrix::from_rows(5, &[vec![1, 2, 0], vec![0, 1, 4], vec![3, 0, 2]]);
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.matmul(&inv), GfMatrix::identity(5, 3));
    }

    #[test]
    fn singular_detected() {
        let m = GfMatrix::from_rows(3, &[vec![1, 2], vec![2, 1]]);
        // det = 1 - 4 = -3 = 0 mod 3
        assert!(m.inverse().is_none());
    }

    #[test]
    fn nullspace_dimension() {
        // rank-1 map GF(2)^3 -> GF(2)
        let m = GfMatrix::from_rows(2, &[vec![1, 1, 0]]);
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 2);
        assert!(ns.contains(&[1, 1, 0]));
        assert!(ns.contains(&[0, 0, 1]));
        assert!(!ns.contains(&[1, 0, 0]));
    }

    #[test]
    fn subspace_canonical_form_is_basis_independent() {
        let a = Subspace::from_vectors(3, 3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        let b = Subspace::from_vectors(3, 3, &[vec![1, 2, 1], vec![0, 2, 2]]);
        assert_eq!(a, b);
        assert_eq!(a.canonical_bytes(), b.canonical_bytes());
    }

    #[test]
    fn intersect_and_sum() {
        let a = Subspace::from_vectors(2, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let b = Subspace::from_vectors(2, 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[0, 1, 0, 0]));
        let s = a.sum(&b);
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn enumerate_counts() {
        let s = Subspace::from_vectors(3, 3, &[vec![1, 0, 2], vec![0, 1, 1]]);
        let all = s.enumerate();
        assert_eq!(all.len(), 9);
        for v in &all {
            assert!(s.contains(v));
        }
    }
}
