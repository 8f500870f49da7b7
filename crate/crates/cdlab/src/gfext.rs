//! Small extension fields GF(p^n), p^n <= 64, over a fixed table of monic
//! irreducible polynomials. Just enough arithmetic to expand products of
//! basis powers into GF(p)-linear data; irreducibility of every table entry
//! is verified by brute force in the tests.

use crate::error::{CdError, Result};
use crate::gf;

/// (p, n, monic modulus coefficients low-to-high, length n+1)
const MODULI: &[(u32, usize, &[u8])] = &[
    (2, 2, &[1, 1, 1]),          // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]),       // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0, 1]),    // x^4 + x + 1
    (2, 5, &[1, 0, 1, 0, 0, 1]), // x^5 + x^2 + 1
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]), // x^6 + x^4 + x^3 + x + 1
    (3, 2, &[2, 2, 1]),          // x^2 + 2x + 2
    (3, 3, &[1, 2, 0, 1]),       // x^3 + 2x + 1
    (5, 2, &[2, 4, 1]),          // x^2 + 4x + 2
    (7, 2, &[3, 6, 1]),          // x^2 + 6x + 3
];

pub struct ExtField {
    p: u32,
    n: usize,
    modulus: Vec<u8>,
}

impl ExtField {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        gf::check_prime(p)?;
        if n == 1 {
            return Ok(ExtField { p, n, modulus: vec![0, 1] });
        }
        let entry = MODULI
            .iter()
            .find(|(mp, mn, _)| *mp == p && *mn == n)
            .ok_or_else(|| {
                CdError::CapExceeded(format!("no modulus table entry for GF({p}^{n})"))
            })?;
        Ok(ExtField { p, n, modulus: entry.2.to_vec() })
    }

    /// Product of two coefficient vectors, reduced mod the modulus.
    pub fn mul(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let p = self.p;
        let mut prod = vec![0u8; 2 * self.n - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = gf::add(p, prod[i + j], gf::mul(p, ai, bj));
            }
        }
        self.reduce(prod)
    }

    fn reduce(&self, mut v: Vec<u8>) -> Vec<u8> {
        let p = self.p;
        for k in (self.n..v.len()).rev() {
            let c = v[k];
            if c != 0 {
                v[k] = 0;
                // x^k = -(modulus without leading term) * x^(k-n)
                for (i, &mi) in self.modulus[..self.n].iter().enumerate() {
                    let t = gf::mul(p, c, mi);
                    v[k - self.n + i] = gf::sub(p, v[k - self.n + i], t);
                }
            }
        }
        v.truncate(self.n);
        v
    }

    /// Coefficients of theta^k, k < 2n - 1.
    pub fn basis_power(&self, k: usize) -> Vec<u8> {
        let mut v = vec![0u8; (k + 1).max(self.n)];
        v[k] = 1;
        self.reduce(v)
    }
}
