//! Power-commutator data for class-2 p-groups with a designated elementary
//! abelian central subgroup.
//!
//! Elements are normal-form pairs `(u, z)` with `u` in GF(p)^d the exponent
//! vector of the transversal word and `z` in GF(p)^e central. Multiplication
//! collects the second word through the first: moving `x_i^{b_i}` left past
//! `x_j^{a_j}` for `j > i` contributes `B[j][i]^(a_j b_i)` to the center, and
//! each exponent carry past p contributes one power-map value `q[i]`.

use crate::error::{CdError, Result};
use crate::gf::{self, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class2Data {
    p: u32,
    d: usize,
    e: usize,
    /// Full d*d commutator table; entry (i,j) is the exponent vector of
    /// [x_i, x_j] in GF(p)^e. Alternating by construction.
    commutators: Vec<Vec<u8>>,
    /// Power map: entry i is the exponent vector of x_i^p. Zero for odd p.
    powers: Vec<Vec<u8>>,
}

impl Class2Data {
    /// Build from the upper-triangular commutator entries `[x_i, x_j] = b[(i,j)]`
    /// for i < j; the rest of the table is filled by antisymmetry.
    pub fn new(
        p: u32,
        d: usize,
        e: usize,
        upper: &[((usize, usize), Vec<u8>)],
        powers: Option<Vec<Vec<u8>>>,
    ) -> Result<Self> {
        gf::check_prime(p)?;
        if d == 0 || d > 24 || e == 0 || e > 24 {
            return Err(CdError::InconsistentData(format!(
                "ranks out of range: d={d}, e={e}"
            )));
        }
        let mut commutators = vec![vec![0u8; e]; d * d];
        for ((i, j), z) in upper {
            if *i >= *j || *j >= d || z.len() != e {
                return Err(CdError::InconsistentData(format!(
                    "bad commutator entry ({i},{j})"
                )));
            }
            let zred: Vec<u8> = z.iter().map(|&x| (x as u32 % p) as u8).collect();
            commutators[i * d + j] = zred.clone();
            commutators[j * d + i] = zred.iter().map(|&x| gf::neg(p, x)).collect();
        }
        let powers = match powers {
            None => vec![vec![0u8; e]; d],
            Some(q) => {
                if q.len() != d || q.iter().any(|v| v.len() != e) {
                    return Err(CdError::InconsistentData("power map has wrong shape".into()));
                }
                let q: Vec<Vec<u8>> = q
                    .iter()
                    .map(|v| v.iter().map(|&x| (x as u32 % p) as u8).collect())
                    .collect();
                if p != 2 && q.iter().any(|v| v.iter().any(|&x| x != 0)) {
                    return Err(CdError::InconsistentData(
                        "nonzero power map requires p = 2".into(),
                    ));
                }
                q
            }
        };
        let data = Class2Data { p, d, e, commutators, powers };
        data.check_associativity()?;
        Ok(data)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn width(&self) -> usize {
        self.d + self.e
    }

    /// Group order p^(d+e), which may exceed any table cap.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow((self.d + self.e) as u32)
    }

    pub fn commutator_entry(&self, i: usize, j: usize) -> &[u8] {
        &self.commutators[i * self.d + j]
    }

    pub fn power_entry(&self, i: usize) -> &[u8] {
        &self.powers[i]
    }

    /// B(u, v) in GF(p)^e for arbitrary exponent vectors.
    pub fn form(&self, u: &[u8], v: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; self.e];
        for i in 0..self.d {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.d {
                if v[j] == 0 {
                    continue;
                }
                let c = gf::mul(self.p, u[i], v[j]);
                let entry = self.commutator_entry(i, j);
                for k in 0..self.e {
                    out[k] = gf::add(self.p, out[k], gf::mul(self.p, c, entry[k]));
                }
            }
        }
        out
    }

    /// Span of all commutator values: the derived subgroup inside GF(p)^e.
    pub fn derived_span(&self) -> Subspace {
        let mut rows = Vec::new();
        for i in 0..self.d {
            for j in (i + 1)..self.d {
                rows.push(self.commutator_entry(i, j).to_vec());
            }
        }
        Subspace::from_vectors(self.p, self.e, &rows)
    }

    /// Radical of the form: { u : B(u, v) = 0 for all v }.
    pub fn radical(&self) -> Subspace {
        // Stack the e*d maps v -> B(e_i, v) as one (d*e) x d matrix acting on u:
        // row (j,k) has entry commutators[(i,j)][k] at column i.
        let mut rows = Vec::new();
        for j in 0..self.d {
            for k in 0..self.e {
                let mut row = vec![0u8; self.d];
                for i in 0..self.d {
                    row[i] = self.commutator_entry(i, j)[k];
                }
                rows.push(row);
            }
        }
        gf::GfMatrix::from_rows(self.p, &rows).nullspace()
    }

    /// Collection product of normal-form digit strings (length d+e).
    /// Central accumulators are reduced once at the end; the intermediate
    /// sums stay far below u64 range for any p up to 251 and d up to 24.
    pub fn multiply(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let (p, d, e) = (self.p, self.d, self.e);
        let mut z = [0u64; 24];
        for k in 0..e {
            z[k] = a[d + k] as u64 + b[d + k] as u64;
        }
        for i in 0..d {
            let s = a[i] as u32 + b[i] as u32;
            if s >= p {
                out[i] = (s - p) as u8;
                let q = &self.powers[i];
                for k in 0..e {
                    z[k] += q[k] as u64;
                }
            } else {
                out[i] = s as u8;
            }
        }
        // commutator corrections: pairs j > i contribute B[j][i] * a_j * b_i
        for i in 0..d {
            if b[i] == 0 {
                continue;
            }
            for j in (i + 1)..d {
                if a[j] == 0 {
                    continue;
                }
                let c = a[j] as u64 * b[i] as u64;
                let entry = self.commutator_entry(j, i);
                for k in 0..e {
                    z[k] += c * entry[k] as u64;
                }
            }
        }
        let p = p as u64;
        for k in 0..e {
            out[d + k] = (z[k] % p) as u8;
        }
    }

    /// Whether the products in both orders agree. The central digits and
    /// carry terms of the two products are identical by symmetry, so only
    /// the commutator corrections need comparing.
    pub fn commutes(&self, a: &[u8], b: &[u8]) -> bool {
        let (d, e) = (self.d, self.e);
        let mut za = [0u64; 24];
        let mut zb = [0u64; 24];
        for i in 0..d {
            for j in (i + 1)..d {
                let ca = a[j] as u64 * b[i] as u64;
                let cb = b[j] as u64 * a[i] as u64;
                if ca == cb {
                    continue;
                }
                let entry = self.commutator_entry(j, i);
                for k in 0..e {
                    za[k] += ca * entry[k] as u64;
                    zb[k] += cb * entry[k] as u64;
                }
            }
        }
        let p = self.p as u64;
        (0..e).all(|k| za[k] % p == zb[k] % p)
    }

    pub fn inverse(&self, a: &[u8], out: &mut [u8]) {
        let (p, d, e) = (self.p, self.d, self.e);
        for i in 0..d {
            out[i] = gf::neg(p, a[i]);
        }
        // Solve a * a^-1 = 1 for the central part.
        let mut z = vec![0u32; e];
        for i in 0..d {
            if a[i] != 0 {
                // the exponents sum to exactly p, producing one carry
                let q = &self.powers[i];
                for k in 0..e {
                    z[k] += q[k] as u32;
                }
            }
        }
        for i in 0..d {
            if out[i] == 0 {
                continue;
            }
            for j in (i + 1)..d {
                if a[j] == 0 {
                    continue;
                }
                let c = (a[j] as u32 * out[i] as u32) % p;
                let entry = self.commutator_entry(j, i);
                for k in 0..e {
                    z[k] += c * entry[k] as u32;
                }
            }
        }
        for k in 0..e {
            let acc = (a[d + k] as u32 + z[k]) % p;
            out[d + k] = gf::neg(p, acc as u8);
        }
    }

    pub fn identity(&self) -> Vec<u8> {
        vec![0u8; self.width()]
    }

    /// Representation of the i-th transversal generator x_i.
    pub fn generator_rep(&self, i: usize) -> Vec<u8> {
        let mut v = self.identity();
        v[i] = 1;
        v
    }

    /// Representation of the j-th central generator z_j.
    pub fn central_rep(&self, j: usize) -> Vec<u8> {
        let mut v = self.identity();
        v[self.d + j] = 1;
        v
    }

    /// Associativity on all (generator, generator, generator) triples.
    fn check_associativity(&self) -> Result<()> {
        let w = self.width();
        let gens: Vec<Vec<u8>> = (0..self.d)
            .map(|i| self.generator_rep(i))
            .chain((0..self.e).map(|j| self.central_rep(j)))
            .collect();
        let mut ab = vec![0u8; w];
        let mut bc = vec![0u8; w];
        let mut left = vec![0u8; w];
        let mut right = vec![0u8; w];
        for a in &gens {
            for b in &gens {
                self.multiply(a, b, &mut ab);
                for c in &gens {
                    self.multiply(&ab, c, &mut left);
                    self.multiply(b, c, &mut bc);
                    self.multiply(a, &bc, &mut right);
                    if left != right {
                        return Err(CdError::InconsistentData(
                            "associativity fails on a generator triple".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}
