//! Finite groups as enumerated element tables with a multiplication oracle.
//!
//! Three base backends (permutation, GF(p) matrix, class-2 power-commutator
//! data) plus direct- and central-product combinators. Element index 0 is
//! always the identity; for the closure backends, indices follow BFS
//! discovery order from the generators, so tables are reproducible for a
//! fixed generator list.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use crate::class2::Class2Data;
use crate::error::{CdError, Result};
use crate::gf::{self, GfMatrix};

/// Closure cap for table-backed groups.
pub const DEFAULT_ELEMENT_CAP: usize = 50_000;

/// Groups up to this order get a full Cayley table on demand.
const CAYLEY_LIMIT: usize = 1024;

/// Bound on the intermediate pair table of a central product.
const PAIR_LIMIT: usize = 1 << 22;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendKind {
    Permutation,
    MatrixGfp,
    Class2,
    Product,
    CentralProduct,
}

#[derive(Debug)]
enum Backend {
    Permutation {
        degree: usize,
        reps: Vec<u8>,
    },
    MatrixGfp {
        p: u32,
        dim: usize,
        reps: Vec<u8>,
    },
    Class2 {
        data: Class2Data,
        reps: Vec<u8>,
        weights: Vec<u64>,
    },
    Product {
        left: Box<FiniteGroup>,
        right: Box<FiniteGroup>,
    },
    CentralProduct {
        left: Box<FiniteGroup>,
        right: Box<FiniteGroup>,
        /// canonical pair index of each coset
        coset_rep: Vec<u32>,
        /// pair index -> coset id
        pair_coset: Vec<u32>,
    },
}

#[derive(Debug)]
pub struct FiniteGroup {
    id: u64,
    order: usize,
    generators: Vec<usize>,
    inverses: Vec<u32>,
    backend: Backend,
    index: HashMap<Vec<u8>, u32>,
    cayley: OnceLock<Vec<u32>>,
}

fn fresh_id() -> u64 {
    NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed)
}

/// BFS closure of a generating set of fixed-width byte representations.
fn bfs_closure(
    identity: Vec<u8>,
    gens: &[Vec<u8>],
    mut mul: impl FnMut(&[u8], &[u8]) -> Vec<u8>,
    cap: usize,
) -> Result<(Vec<Vec<u8>>, HashMap<Vec<u8>, u32>)> {
    let mut elems = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0u32);
    let mut head = 0;
    while head < elems.len() {
        let cur = elems[head].clone();
        head += 1;
        for g in gens {
            let prod = mul(&cur, g);
            if !index.contains_key(&prod) {
                if elems.len() >= cap {
                    return Err(CdError::ElementCapExceeded { cap });
                }
                index.insert(prod.clone(), elems.len() as u32);
                elems.push(prod);
            }
        }
    }
    Ok((elems, index))
}

fn compose_perms(a: &[u8], b: &[u8]) -> Vec<u8> {
    // right action: (a*b)(x) = b(a(x))
    a.iter().map(|&x| b[x as usize]).collect()
}

impl FiniteGroup {
    /// Closure of permutation generators on `n` points; an empty generator
    /// list yields the trivial group on one point.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<Self> {
        let degree = generators.first().map_or(1, |g| g.len());
        if degree == 0 || degree > 255 {
            return Err(CdError::CapExceeded(format!(
                "permutation degree {degree} outside 1..=255"
            )));
        }
        let mut gen_reps = Vec::with_capacity(generators.len());
        for (gi, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(CdError::InvalidPermutation(gi));
            }
            let mut seen = vec![false; degree];
            for &img in g {
                if img >= degree || seen[img] {
                    return Err(CdError::InvalidPermutation(gi));
                }
                seen[img] = true;
            }
            gen_reps.push(g.iter().map(|&x| x as u8).collect::<Vec<u8>>());
        }
        let identity: Vec<u8> = (0..degree as u8).collect();
        let (elems, index) = bfs_closure(
            identity,
            &gen_reps,
            |a, b| compose_perms(a, b),
            DEFAULT_ELEMENT_CAP,
        )?;
        let order = elems.len();
        let mut inverses = vec![0u32; order];
        for (i, e) in elems.iter().enumerate() {
            let mut inv = vec![0u8; degree];
            for (x, &img) in e.iter().enumerate() {
                inv[img as usize] = x as u8;
            }
            inverses[i] = index[&inv];
        }
        let generator_indices = gen_reps.iter().map(|g| index[g] as usize).collect();
        let reps = elems.concat();
        Ok(FiniteGroup {
            id: fresh_id(),
            order,
            generators: generator_indices,
            inverses,
            backend: Backend::Permutation { degree, reps },
            index,
            cayley: OnceLock::new(),
        })
    }

    /// Closure of invertible dim x dim matrices over GF(p), row-major entries.
    pub fn from_matrices_gfp(p: u32, dim: usize, generators: &[Vec<u8>]) -> Result<Self> {
        gf::check_prime(p)?;
        if dim == 0 || dim > 16 {
            return Err(CdError::CapExceeded(format!("matrix dimension {dim} outside 1..=16")));
        }
        let mut gen_reps = Vec::with_capacity(generators.len());
        for (gi, g) in generators.iter().enumerate() {
            if g.len() != dim * dim {
                return Err(CdError::SingularGenerator(gi));
            }
            let reduced: Vec<u8> = g.iter().map(|&x| (x as u32 % p) as u8).collect();
            let m = GfMatrix { p, rows: dim, cols: dim, data: reduced.clone() };
            if m.inverse().is_none() {
                return Err(CdError::SingularGenerator(gi));
            }
            gen_reps.push(reduced);
        }
        let identity = GfMatrix::identity(p, dim).data;
        let matmul = |a: &[u8], b: &[u8]| -> Vec<u8> {
            let ma = GfMatrix { p, rows: dim, cols: dim, data: a.to_vec() };
            let mb = GfMatrix { p, rows: dim, cols: dim, data: b.to_vec() };
            ma.matmul(&mb).data
        };
        let (elems, index) = bfs_closure(identity, &gen_reps, matmul, DEFAULT_ELEMENT_CAP)?;
        let order = elems.len();
        let mut inverses = vec![0u32; order];
        for (i, e) in elems.iter().enumerate() {
            let m = GfMatrix { p, rows: dim, cols: dim, data: e.clone() };
            let inv = m.inverse().expect("closure elements are invertible");
            inverses[i] = index[&inv.data];
        }
        let generator_indices = gen_reps.iter().map(|g| index[g] as usize).collect();
        let reps = elems.concat();
        Ok(FiniteGroup {
            id: fresh_id(),
            order,
            generators: generator_indices,
            inverses,
            backend: Backend::MatrixGfp { p, dim, reps },
            index,
            cayley: OnceLock::new(),
        })
    }

    /// Full element table of a class-2 power-commutator presentation: all
    /// p^(d+e) digit strings in little-endian mixed-radix order, so the
    /// identity lands at index 0 without any search.
    pub fn from_class2_data(data: Class2Data) -> Result<Self> {
        let order = data.order();
        if order > DEFAULT_ELEMENT_CAP as u128 {
            return Err(CdError::ElementCapExceeded { cap: DEFAULT_ELEMENT_CAP });
        }
        let order = order as usize;
        let w = data.width();
        let p = data.p();
        let mut weights = vec![0u64; w];
        let mut acc = 1u64;
        for k in 0..w {
            weights[k] = acc;
            acc *= p as u64;
        }
        let mut reps = vec![0u8; order * w];
        for i in 1..order {
            let (prev, cur) = reps.split_at_mut(i * w);
            cur[..w].copy_from_slice(&prev[(i - 1) * w..]);
            // little-endian increment
            for k in 0..w {
                cur[k] += 1;
                if (cur[k] as u32) < p {
                    break;
                }
                cur[k] = 0;
            }
        }
        let mut inverses = vec![0u32; order];
        let mut buf = vec![0u8; w];
        for i in 0..order {
            data.inverse(&reps[i * w..(i + 1) * w], &mut buf);
            let mut idx = 0u64;
            for k in 0..w {
                idx += buf[k] as u64 * weights[k];
            }
            inverses[i] = idx as u32;
        }
        let mut generators: Vec<usize> = (0..data.d()).map(|i| weights[i] as usize).collect();
        generators.extend((0..data.e()).map(|j| weights[data.d() + j] as usize));
        Ok(FiniteGroup {
            id: fresh_id(),
            order,
            generators,
            inverses,
            backend: Backend::Class2 { data, reps, weights },
            index: HashMap::new(),
            cayley: OnceLock::new(),
        })
    }

    /// Componentwise product; element (i, j) has index i * |right| + j.
    pub fn direct_product(left: FiniteGroup, right: FiniteGroup) -> Result<Self> {
        let order = left
            .order
            .checked_mul(right.order)
            .filter(|&n| n <= DEFAULT_ELEMENT_CAP)
            .ok_or(CdError::ElementCapExceeded { cap: DEFAULT_ELEMENT_CAP })?;
        let r = right.order;
        let mut inverses = vec![0u32; order];
        for i in 0..left.order {
            let li = left.inverses[i] as usize;
            for j in 0..right.order {
                inverses[i * r + j] = (li * r + right.inverses[j] as usize) as u32;
            }
        }
        let mut generators: Vec<usize> = left.generators.iter().map(|&g| g * r).collect();
        generators.extend(right.generators.iter().copied());
        Ok(FiniteGroup {
            id: fresh_id(),
            order,
            generators,
            inverses,
            backend: Backend::Product { left: Box::new(left), right: Box::new(right) },
            index: HashMap::new(),
            cayley: OnceLock::new(),
        })
    }

    /// Quotient of the direct product identifying two central subgroups via
    /// the generator map z1_gens[k] -> z2_gens[k]. Empty maps degenerate to
    /// the direct product.
    pub fn central_product(
        left: FiniteGroup,
        right: FiniteGroup,
        z1_gens: &[usize],
        z2_gens: &[usize],
    ) -> Result<Self> {
        if z1_gens.len() != z2_gens.len() {
            return Err(CdError::NotIsomorphism);
        }
        for &z in z1_gens {
            if z >= left.order {
                return Err(CdError::IndexOutOfRange { index: z, order: left.order });
            }
            if !left.is_central_element(z) {
                return Err(CdError::NotCentral);
            }
        }
        for &z in z2_gens {
            if z >= right.order {
                return Err(CdError::IndexOutOfRange { index: z, order: right.order });
            }
            if !right.is_central_element(z) {
                return Err(CdError::NotCentral);
            }
        }
        // Build the isomorphism word by word and collect the anti-diagonal.
        let mut image: HashMap<usize, usize> = HashMap::new();
        image.insert(0, 0);
        let mut work = vec![0usize];
        let mut zorder = 1usize;
        while let Some(a) = work.pop() {
            let b = image[&a];
            for (&g1, &g2) in z1_gens.iter().zip(z2_gens) {
                let na = left.multiply(a, g1);
                let nb = right.multiply(b, g2);
                match image.get(&na) {
                    Some(&old) if old != nb => return Err(CdError::NotIsomorphism),
                    Some(_) => {}
                    None => {
                        image.insert(na, nb);
                        zorder += 1;
                        work.push(na);
                    }
                }
            }
        }
        let distinct_images: std::collections::HashSet<usize> = image.values().copied().collect();
        if distinct_images.len() != zorder {
            return Err(CdError::NotIsomorphism);
        }
        // The images must close: |Z2| as generated must equal |Z1|.
        {
            let mut seen = std::collections::HashSet::new();
            seen.insert(0usize);
            let mut work = vec![0usize];
            while let Some(b) = work.pop() {
                for &g2 in z2_gens {
                    let nb = right.multiply(b, g2);
                    if seen.insert(nb) {
                        work.push(nb);
                    }
                }
            }
            if seen.len() != zorder {
                return Err(CdError::NotIsomorphism);
            }
        }
        let pairs = left
            .order
            .checked_mul(right.order)
            .filter(|&n| n <= PAIR_LIMIT)
            .ok_or_else(|| CdError::CapExceeded("central product pair table too large".into()))?;
        let order = pairs / zorder;
        if order > DEFAULT_ELEMENT_CAP {
            return Err(CdError::ElementCapExceeded { cap: DEFAULT_ELEMENT_CAP });
        }
        let r = right.order;
        // anti-diagonal N = { (z, phi(z)^-1) }
        let diag: Vec<(usize, usize)> = image
            .iter()
            .map(|(&z, &im)| (z, right.inverses[im] as usize))
            .collect();
        let mut pair_coset = vec![u32::MAX; pairs];
        let mut coset_rep = Vec::with_capacity(order);
        for t in 0..pairs {
            if pair_coset[t] != u32::MAX {
                continue;
            }
            let (a, b) = (t / r, t % r);
            let mut members: Vec<usize> = diag
                .iter()
                .map(|&(z, zi)| left.multiply(a, z) * r + right.multiply(b, zi))
                .collect();
            members.sort_unstable();
            let id = coset_rep.len() as u32;
            coset_rep.push(members[0] as u32);
            for m in members {
                pair_coset[m] = id;
            }
        }
        debug_assert_eq!(coset_rep.len(), order);
        debug_assert_eq!(coset_rep[0], 0, "identity coset must come first");
        let mut inverses = vec![0u32; order];
        for (c, &rep) in coset_rep.iter().enumerate() {
            let (a, b) = (rep as usize / r, rep as usize % r);
            let ipair = left.inverses[a] as usize * r + right.inverses[b] as usize;
            inverses[c] = pair_coset[ipair];
        }
        let mut generators: Vec<usize> = left
            .generators
            .iter()
            .map(|&g| pair_coset[g * r] as usize)
            .collect();
        generators.extend(right.generators.iter().map(|&g| pair_coset[g] as usize));
        Ok(FiniteGroup {
            id: fresh_id(),
            order,
            generators,
            inverses,
            backend: Backend::CentralProduct {
                left: Box::new(left),
                right: Box::new(right),
                coset_rep,
                pair_coset,
            },
            index: HashMap::new(),
            cayley: OnceLock::new(),
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn backend_kind(&self) -> BackendKind {
        match &self.backend {
            Backend::Permutation { .. } => BackendKind::Permutation,
            Backend::MatrixGfp { .. } => BackendKind::MatrixGfp,
            Backend::Class2 { .. } => BackendKind::Class2,
            Backend::Product { .. } => BackendKind::Product,
            Backend::CentralProduct { .. } => BackendKind::CentralProduct,
        }
    }

    pub fn class2_data(&self) -> Option<&Class2Data> {
        match &self.backend {
            Backend::Class2 { data, .. } => Some(data),
            _ => None,
        }
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.order {
            Ok(())
        } else {
            Err(CdError::IndexOutOfRange { index: i, order: self.order })
        }
    }

    #[inline]
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        if let Some(t) = self.cayley.get() {
            return t[a * self.order + b] as usize;
        }
        self.multiply_raw(a, b)
    }

    fn multiply_raw(&self, a: usize, b: usize) -> usize {
        match &self.backend {
            Backend::Permutation { degree, reps } => {
                let ra = &reps[a * degree..(a + 1) * degree];
                let rb = &reps[b * degree..(b + 1) * degree];
                let prod: Vec<u8> = ra.iter().map(|&x| rb[x as usize]).collect();
                self.index[&prod] as usize
            }
            Backend::MatrixGfp { p, dim, reps } => {
                let d = *dim;
                let ma = GfMatrix { p: *p, rows: d, cols: d, data: reps[a * d * d..(a + 1) * d * d].to_vec() };
                let mb = GfMatrix { p: *p, rows: d, cols: d, data: reps[b * d * d..(b + 1) * d * d].to_vec() };
                self.index[&ma.matmul(&mb).data] as usize
            }
            Backend::Class2 { data, reps, weights } => {
                let w = data.width();
                let mut out = [0u8; 48];
                data.multiply(&reps[a * w..(a + 1) * w], &reps[b * w..(b + 1) * w], &mut out[..w]);
                let mut idx = 0u64;
                for k in 0..w {
                    idx += out[k] as u64 * weights[k];
                }
                idx as usize
            }
            Backend::Product { left, right } => {
                let r = right.order;
                left.multiply(a / r, b / r) * r + right.multiply(a % r, b % r)
            }
            Backend::CentralProduct { left, right, coset_rep, pair_coset } => {
                let r = right.order;
                let (pa, pb) = (coset_rep[a] as usize, coset_rep[b] as usize);
                let pair = left.multiply(pa / r, pb / r) * r + right.multiply(pa % r, pb % r);
                pair_coset[pair] as usize
            }
        }
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// Whether a and b commute: the two products compared, with the parts
    /// that agree by symmetry elided where the backend allows.
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        match &self.backend {
            Backend::Class2 { data, reps, .. } => {
                let w = data.width();
                data.commutes(&reps[a * w..(a + 1) * w], &reps[b * w..(b + 1) * w])
            }
            Backend::Product { left, right } => {
                let r = right.order;
                left.commutes(a / r, b / r) && right.commutes(a % r, b % r)
            }
            _ => self.multiply(a, b) == self.multiply(b, a),
        }
    }

    /// Conjugate of x by g: g^-1 x g.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.multiply(self.multiply(self.inverse(g), x), g)
    }

    /// [x, y] = x^-1 y^-1 x y.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let xi = self.inverse(x);
        let yi = self.inverse(y);
        self.multiply(self.multiply(self.multiply(xi, yi), x), y)
    }

    pub fn element_order(&self, x: usize) -> Result<usize> {
        self.check_index(x)?;
        let mut acc = x;
        let mut n = 1usize;
        while acc != 0 {
            acc = self.multiply(acc, x);
            n += 1;
        }
        debug_assert_eq!(self.order % n, 0, "element order must divide group order");
        Ok(n)
    }

    pub fn power(&self, x: usize, n: usize) -> usize {
        let mut acc = 0usize;
        for _ in 0..n {
            acc = self.multiply(acc, x);
        }
        acc
    }

    pub fn is_central_element(&self, x: usize) -> bool {
        self.generators.iter().all(|&g| self.commutes(x, g))
    }

    pub fn is_abelian_group(&self) -> bool {
        self.generators
            .iter()
            .all(|&g| self.generators.iter().all(|&h| self.multiply(g, h) == self.multiply(h, g)))
    }

    /// Canonical byte representation of an element, stable across runs.
    pub fn element_bytes(&self, i: usize) -> Vec<u8> {
        match &self.backend {
            Backend::Permutation { degree, reps } => reps[i * degree..(i + 1) * degree].to_vec(),
            Backend::MatrixGfp { dim, reps, .. } => {
                let d = dim * dim;
                reps[i * d..(i + 1) * d].to_vec()
            }
            Backend::Class2 { data, reps, .. } => {
                let w = data.width();
                reps[i * w..(i + 1) * w].to_vec()
            }
            Backend::Product { left, right } => {
                let r = right.order;
                let mut v = left.element_bytes(i / r);
                v.extend(right.element_bytes(i % r));
                v
            }
            Backend::CentralProduct { left, right, coset_rep, .. } => {
                let r = right.order;
                let rep = coset_rep[i] as usize;
                let mut v = left.element_bytes(rep / r);
                v.extend(right.element_bytes(rep % r));
                v
            }
        }
    }

    /// Element indices of the left/right factor images inside a product or
    /// central product.
    pub fn left_embedding_indices(&self) -> Option<Vec<usize>> {
        match &self.backend {
            Backend::Product { left, right } => {
                let r = right.order;
                Some((0..left.order).map(|i| i * r).collect())
            }
            Backend::CentralProduct { left, right, pair_coset, .. } => {
                let r = right.order;
                let mut v: Vec<usize> =
                    (0..left.order).map(|i| pair_coset[i * r] as usize).collect();
                v.sort_unstable();
                v.dedup();
                Some(v)
            }
            _ => None,
        }
    }

    pub fn right_embedding_indices(&self) -> Option<Vec<usize>> {
        match &self.backend {
            Backend::Product { right, .. } => Some((0..right.order).collect()),
            Backend::CentralProduct { right, pair_coset, .. } => {
                let mut v: Vec<usize> = (0..right.order).map(|j| pair_coset[j] as usize).collect();
                v.sort_unstable();
                v.dedup();
                Some(v)
            }
            _ => None,
        }
    }

    /// Force the full multiplication table; only sensible for small groups.
    pub fn ensure_cayley(&self) -> bool {
        if self.order > CAYLEY_LIMIT {
            return false;
        }
        self.cayley.get_or_init(|| {
            let n = self.order;
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = self.multiply_raw(a, b) as u32;
                }
            }
            t
        });
        true
    }
}
