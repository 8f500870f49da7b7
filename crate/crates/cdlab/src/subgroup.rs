//! Subgroups as bitsets over element indices, plus the centralizer machinery
//! the lattice computation is built on: generated subgroups, centralizers,
//! the intersection-closed family of element centralizers, and a bounded
//! all-subgroups oracle used only to validate the main path.

use std::collections::{HashMap, HashSet};

use crate::error::{CdError, Result};
use crate::group::FiniteGroup;

pub const DEFAULT_FAMILY_CAP: usize = 100_000;
pub const DEFAULT_ORACLE_CAP: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    group_id: u64,
    order: usize,
    bits: Box<[u64]>,
}

impl Subgroup {
    fn blocks_for(n: usize) -> usize {
        n.div_ceil(64)
    }

    pub(crate) fn from_bits(group_id: u64, bits: Box<[u64]>) -> Self {
        let order = bits.iter().map(|b| b.count_ones() as usize).sum();
        Subgroup { group_id, order, bits }
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits(&self) -> &[u64] {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        debug_assert_eq!(self.group_id, other.group_id);
        self.bits.iter().zip(other.bits.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        debug_assert_eq!(self.group_id, other.group_id);
        let bits: Box<[u64]> =
            self.bits.iter().zip(other.bits.iter()).map(|(a, b)| a & b).collect();
        Subgroup::from_bits(self.group_id, bits)
    }

    pub fn iter_elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(bi, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let t = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(bi * 64 + t)
                }
            })
        })
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter_elements().collect()
    }

    /// Deterministic sort key: order first, then the raw blocks.
    pub fn sort_key(&self) -> (usize, &[u64]) {
        (self.order, &self.bits)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order, &self.bits, self.group_id).cmp(&(other.order, &other.bits, other.group_id))
    }
}

/// The intersection closure of the element centralizers of a group. Every
/// centralizer of every subgroup lies in here, and so does every subgroup
/// that is its own bicentralizer.
#[derive(Debug)]
pub struct CentralizerFamily {
    pub members: Vec<Subgroup>,
    /// Element indices whose centralizers seeded the closure (one per
    /// distinct element centralizer, in discovery order).
    pub generated_from: Vec<usize>,
    pub(crate) elem_centralizer: Vec<u32>,
    pub(crate) distinct: Vec<Subgroup>,
}

impl CentralizerFamily {
    /// Centralizer of an arbitrary subgroup, assembled from the cached
    /// element-centralizer rows.
    pub fn centralizer_of(&self, g: &FiniteGroup, s: &Subgroup) -> Subgroup {
        let mut result = g.full_subgroup();
        for x in g.greedy_generators(s) {
            result = result.intersect(&self.distinct[self.elem_centralizer[x] as usize]);
        }
        result
    }
}

impl FiniteGroup {
    fn empty_bits(&self) -> Box<[u64]> {
        vec![0u64; Subgroup::blocks_for(self.order())].into_boxed_slice()
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut bits = self.empty_bits();
        bits[0] |= 1;
        Subgroup::from_bits(self.id(), bits)
    }

    pub fn full_subgroup(&self) -> Subgroup {
        let mut bits = self.empty_bits();
        let n = self.order();
        for block in 0..bits.len() {
            let lo = block * 64;
            let hi = (lo + 64).min(n);
            if hi - lo == 64 {
                bits[block] = u64::MAX;
            } else {
                for i in lo..hi {
                    bits[block] |= 1 << (i - lo);
                }
            }
        }
        Subgroup::from_bits(self.id(), bits)
    }

    /// Subgroup from an explicit element set; the caller asserts closure.
    pub fn subgroup_from_indices(&self, indices: &[usize]) -> Result<Subgroup> {
        let mut bits = self.empty_bits();
        for &i in indices {
            self.check_index(i)?;
            bits[i / 64] |= 1 << (i % 64);
        }
        bits[0] |= 1;
        Ok(Subgroup::from_bits(self.id(), bits))
    }

    /// Least subgroup containing the seed elements (BFS closure).
    pub fn generated_subgroup(&self, seeds: &[usize]) -> Result<Subgroup> {
        for &s in seeds {
            self.check_index(s)?;
        }
        Ok(self.generated_unchecked(seeds))
    }

    pub(crate) fn generated_unchecked(&self, seeds: &[usize]) -> Subgroup {
        let mut bits = self.empty_bits();
        bits[0] |= 1;
        let mut elems = vec![0usize];
        let mut head = 0;
        while head < elems.len() {
            let t = elems[head];
            head += 1;
            for &s in seeds {
                let n = self.multiply(t, s);
                if bits[n / 64] >> (n % 64) & 1 == 0 {
                    bits[n / 64] |= 1 << (n % 64);
                    elems.push(n);
                }
            }
        }
        let sg = Subgroup::from_bits(self.id(), bits);
        debug_assert_eq!(self.order() % sg.order(), 0, "Lagrange");
        sg
    }

    /// A small generating set for a subgroup, grown greedily over the
    /// element list in index order.
    pub fn greedy_generators(&self, s: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut have = self.trivial_subgroup();
        if have.order() == s.order() {
            return gens;
        }
        for x in s.iter_elements() {
            if !have.contains(x) {
                gens.push(x);
                have = self.generated_unchecked(&gens);
                if have.order() == s.order() {
                    break;
                }
            }
        }
        debug_assert_eq!(have.order(), s.order());
        gens
    }

    /// Centralizer of a single element, by scanning the table.
    pub fn element_centralizer(&self, x: usize) -> Subgroup {
        let mut bits = self.empty_bits();
        for g in 0..self.order() {
            if self.commutes(g, x) {
                bits[g / 64] |= 1 << (g % 64);
            }
        }
        Subgroup::from_bits(self.id(), bits)
    }

    /// C_G(H) via a generating set of H.
    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let gens = self.greedy_generators(h);
        let mut result = self.full_subgroup();
        for x in gens {
            result = result.intersect(&self.element_centralizer(x));
        }
        result
    }

    pub fn center(&self) -> Subgroup {
        let mut result = self.full_subgroup();
        for &g in self.generators() {
            result = result.intersect(&self.element_centralizer(g));
        }
        result
    }

    /// [A, B]: the subgroup generated by commutators, closed under
    /// conjugation by <A, B>.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let ga = self.greedy_generators(a);
        let gb = self.greedy_generators(b);
        let mut conj: Vec<usize> = ga.iter().chain(gb.iter()).copied().collect();
        conj.sort_unstable();
        conj.dedup();
        let mut gens: Vec<usize> = Vec::new();
        for &x in &ga {
            for &y in &gb {
                gens.push(self.commutator(x, y));
            }
        }
        loop {
            let s = self.generated_unchecked(&gens);
            let mut grew = false;
            for &g in &conj {
                for x in s.iter_elements() {
                    let c = self.conjugate(x, g);
                    if !s.contains(c) {
                        gens.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return s;
            }
        }
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let full = self.full_subgroup();
        self.commutator_subgroup(&full, &full)
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        let gens = self.greedy_generators(h);
        gens.iter()
            .all(|&x| gens.iter().all(|&y| self.commutes(x, y)))
    }

    /// Normality of H in G, tested by conjugating generators of H by
    /// generators of G.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let hgens = self.greedy_generators(h);
        self.generators()
            .iter()
            .all(|&g| hgens.iter().all(|&x| h.contains(self.conjugate(x, g))))
    }

    /// Normality of H inside an ambient subgroup M.
    pub fn is_normal_in(&self, m: &Subgroup, h: &Subgroup) -> bool {
        debug_assert!(h.is_subset_of(m));
        let mgens = self.greedy_generators(m);
        let hgens = self.greedy_generators(h);
        mgens
            .iter()
            .all(|&g| hgens.iter().all(|&x| h.contains(self.conjugate(x, g))))
    }

    /// The raw element set H*K (not necessarily a subgroup).
    pub fn setwise_product_bits(&self, a: &Subgroup, b: &Subgroup) -> Box<[u64]> {
        let mut bits = self.empty_bits();
        for x in a.iter_elements() {
            for y in b.iter_elements() {
                let m = self.multiply(x, y);
                bits[m / 64] |= 1 << (m % 64);
            }
        }
        bits
    }

    pub fn conjugate_subgroup(&self, s: &Subgroup, g: usize) -> Subgroup {
        let mut bits = self.empty_bits();
        for x in s.iter_elements() {
            let c = self.conjugate(x, g);
            bits[c / 64] |= 1 << (c % 64);
        }
        Subgroup::from_bits(self.id(), bits)
    }

    pub fn bicentralizer_family(&self) -> Result<CentralizerFamily> {
        self.bicentralizer_family_capped(DEFAULT_FAMILY_CAP)
    }

    /// Intersection closure of { C_G(x) : x in G }. Seeds are deduplicated
    /// element centralizers in element-index order; the closure worklist is
    /// processed over seeds sorted by (order, bitset) so the member list is
    /// reproducible.
    pub fn bicentralizer_family_capped(&self, cap: usize) -> Result<CentralizerFamily> {
        let n = self.order();
        self.ensure_cayley();
        // Elements sharing a centralizer for elementary reasons are scanned
        // once: C(x) = C(x^k) for k coprime to ord(x), and C(zx) = C(x) for
        // central z.
        let center: Vec<usize> = (0..n).filter(|&z| self.is_central_element(z)).collect();
        let mut class_of = vec![u32::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            let ord = self.element_order(x).expect("index in range");
            let mut power = x;
            for k in 1..=ord {
                if gcd(k, ord) == 1 {
                    for &z in &center {
                        class_of[self.multiply(z, power)] = id;
                    }
                }
                power = self.multiply(power, x);
            }
        }
        let rows: Vec<Box<[u64]>> = reps
            .iter()
            .map(|&x| {
                let mut bits = self.empty_bits();
                for g in 0..n {
                    if self.commutes(g, x) {
                        bits[g / 64] |= 1 << (g % 64);
                    }
                }
                bits
            })
            .collect();
        let mut distinct: Vec<Subgroup> = Vec::new();
        let mut generated_from = Vec::new();
        let mut row_ids: HashMap<Box<[u64]>, u32> = HashMap::new();
        let mut class_to_distinct = vec![0u32; reps.len()];
        for (class, (&x, bits)) in reps.iter().zip(rows).enumerate() {
            let next = distinct.len() as u32;
            let id = *row_ids.entry(bits.clone()).or_insert_with(|| {
                distinct.push(Subgroup::from_bits(self.id(), bits));
                generated_from.push(x);
                next
            });
            class_to_distinct[class] = id;
        }
        let elem_centralizer: Vec<u32> =
            class_of.iter().map(|&c| class_to_distinct[c as usize]).collect();
        let mut seeds: Vec<Subgroup> = distinct.clone();
        seeds.sort();
        seeds.dedup();
        let mut members = seeds.clone();
        let mut seen: HashSet<Box<[u64]>> = members.iter().map(|m| m.bits.clone()).collect();
        // closing against the seeds alone reaches every finite intersection
        let mut head = 0;
        while head < members.len() {
            let cur = members[head].clone();
            head += 1;
            for seed in &seeds {
                let inter = cur.intersect(seed);
                if !seen.contains(&inter.bits) {
                    if members.len() >= cap {
                        return Err(CdError::FamilyCapExceeded { cap });
                    }
                    seen.insert(inter.bits.clone());
                    members.push(inter);
                }
            }
        }
        members.sort();
        Ok(CentralizerFamily { members, generated_from, elem_centralizer, distinct })
    }

    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.all_subgroups_capped(DEFAULT_ORACLE_CAP)
    }

    /// Every subgroup, by iterated cyclic extension: extend each known
    /// subgroup by one new element and close, deduplicating along the way.
    /// Extension candidates are pruned to right-coset minima, which does not
    /// change the generated subgroups.
    pub fn all_subgroups_capped(&self, cap: usize) -> Result<Vec<Subgroup>> {
        let n = self.order();
        if n > cap {
            return Err(CdError::OracleCapExceeded { order: n, cap });
        }
        self.ensure_cayley();
        let trivial = self.trivial_subgroup();
        let mut known: HashSet<Box<[u64]>> = HashSet::new();
        known.insert(trivial.bits.clone());
        let mut out = vec![trivial];
        let mut head = 0;
        while head < out.len() {
            let s = out[head].clone();
            head += 1;
            let elems = s.indices();
            for x in 0..n {
                if s.contains(x) {
                    continue;
                }
                let coset_min = elems.iter().map(|&e| self.multiply(x, e)).min().unwrap();
                if coset_min != x {
                    continue;
                }
                let mut gens: Vec<usize> = elems.clone();
                gens.push(x);
                let t = self.generated_unchecked(&gens);
                if !known.contains(&t.bits) {
                    known.insert(t.bits.clone());
                    out.push(t);
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
