//! Abstract finite posets: products and isomorphism of small Hasse diagrams.
//!
//! Isomorphism testing refines a node coloring by iterated cover-degree and
//! level data, then backtracks over color-respecting assignments. Capped at
//! 64 nodes, which is all the lattices here need.

use std::collections::BTreeMap;

use crate::error::{CdError, Result};
use crate::shape::LatticeView;

pub const POSET_ISO_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
}

impl Poset {
    pub fn new(n: usize, leq_pairs: impl IntoIterator<Item = (usize, usize)>) -> Poset {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in leq_pairs {
            leq[a * n + b] = true;
        }
        let mut p = Poset { n, leq };
        p.transitive_close();
        p
    }

    /// A chain of the given length: length + 1 totally ordered nodes.
    pub fn chain(length: usize) -> Poset {
        let n = length + 1;
        Poset::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// A quasi-antichain: bottom, `width` middle nodes, top.
    pub fn quasi_antichain(width: usize) -> Poset {
        let n = width + 2;
        // node 0 = bottom, node n-1 = top
        Poset::new(
            n,
            (1..n - 1)
                .flat_map(move |m| [(0, m), (m, n - 1)])
                .chain([(0, n - 1)]),
        )
    }

    pub fn from_view(view: &LatticeView) -> Poset {
        let n = view.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = view.leq[i][j];
            }
        }
        Poset { n, leq }
    }

    fn transitive_close(&mut self) {
        let n = self.n;
        for k in 0..n {
            for i in 0..n {
                if self.leq[i * n + k] {
                    for j in 0..n {
                        if self.leq[k * n + j] {
                            self.leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            'upper: for j in 0..n {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    if k != i && k != j && self.leq(i, k) && self.leq(k, j) {
                        continue 'upper;
                    }
                }
                out.push((i, j));
            }
        }
        out
    }

    /// Componentwise order on pairs; node (i, j) has index i * |other| + j.
    pub fn product(&self, other: &Poset) -> Poset {
        let n = self.n * other.n;
        let mut leq = vec![false; n * n];
        for a1 in 0..self.n {
            for a2 in 0..other.n {
                for b1 in 0..self.n {
                    for b2 in 0..other.n {
                        if self.leq(a1, b1) && other.leq(a2, b2) {
                            leq[(a1 * other.n + a2) * n + (b1 * other.n + b2)] = true;
                        }
                    }
                }
            }
        }
        Poset { n, leq }
    }

    /// Stable coloring from iterated refinement over cover relations.
    fn refine_colors(&self) -> Vec<usize> {
        let n = self.n;
        let covers = self.covers();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(l, u) in &covers {
            up[l].push(u);
            down[u].push(l);
        }
        // initial color: (#below, #above, up-degree, down-degree)
        let mut colors: Vec<usize> = {
            let keys: Vec<(usize, usize, usize, usize)> = (0..n)
                .map(|i| {
                    let below = (0..n).filter(|&j| self.leq(j, i)).count();
                    let above = (0..n).filter(|&j| self.leq(i, j)).count();
                    (below, above, up[i].len(), down[i].len())
                })
                .collect();
            canonical_ids(&keys)
        };
        loop {
            let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
                .map(|i| {
                    let mut ku: Vec<usize> = up[i].iter().map(|&j| colors[j]).collect();
                    let mut kd: Vec<usize> = down[i].iter().map(|&j| colors[j]).collect();
                    ku.sort_unstable();
                    kd.sort_unstable();
                    (colors[i], ku, kd)
                })
                .collect();
            let next = canonical_ids(&keys);
            if next == colors {
                return colors;
            }
            colors = next;
        }
    }
}

/// Assign ids in sorted-key order, so equal key multisets get equal
/// numberings regardless of node order.
fn canonical_ids<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut map: BTreeMap<K, usize> = keys.iter().map(|k| (k.clone(), 0)).collect();
    for (i, v) in map.values_mut().enumerate() {
        *v = i;
    }
    keys.iter().map(|k| map[k]).collect()
}

pub fn lattice_product(a: &Poset, b: &Poset) -> Poset {
    a.product(b)
}

pub fn lattice_isomorphic(a: &Poset, b: &Poset) -> Result<bool> {
    if a.len() > POSET_ISO_LIMIT {
        return Err(CdError::TooLarge(a.len()));
    }
    if b.len() > POSET_ISO_LIMIT {
        return Err(CdError::TooLarge(b.len()));
    }
    if a.len() != b.len() {
        return Ok(false);
    }
    let ca = a.refine_colors();
    let cb = b.refine_colors();
    let mut hist_a = BTreeMap::new();
    let mut hist_b = BTreeMap::new();
    for &c in &ca {
        *hist_a.entry(c).or_insert(0usize) += 1;
    }
    for &c in &cb {
        *hist_b.entry(c).or_insert(0usize) += 1;
    }
    if hist_a != hist_b {
        return Ok(false);
    }
    // backtracking over color-respecting assignments
    let n = a.len();
    let mut order: Vec<usize> = (0..n).collect();
    // map most-constrained (rarest color) first
    order.sort_by_key(|&i| (hist_a[&ca[i]], ca[i], i));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn backtrack(
        a: &Poset,
        b: &Poset,
        ca: &[usize],
        cb: &[usize],
        order: &[usize],
        pos: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let x = order[pos];
        for y in 0..b.len() {
            if used[y] || cb[y] != ca[x] {
                continue;
            }
            let ok = order[..pos].iter().all(|&m| {
                let im = image[m];
                a.leq(x, m) == b.leq(y, im) && a.leq(m, x) == b.leq(im, y)
            });
            if ok {
                image[x] = y;
                used[y] = true;
                if backtrack(a, b, ca, cb, order, pos + 1, image, used) {
                    return true;
                }
                used[y] = false;
                image[x] = usize::MAX;
            }
        }
        false
    }
    Ok(backtrack(a, b, &ca, &cb, &order, 0, &mut image, &mut used))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_two_chains_is_diamond() {
        let c1 = Poset::chain(1);
        let p = lattice_product(&c1, &c1);
        assert_eq!(p.len(), 4);
        assert_eq!(p.covers().len(), 4);
        assert!(lattice_isomorphic(&p, &Poset::quasi_antichain(2)).unwrap());
    }

    #[test]
    fn chain_two_is_width_one_quasi_antichain() {
        assert!(lattice_isomorphic(&Poset::chain(2), &Poset::quasi_antichain(1)).unwrap());
    }

    #[test]
    fn chains_of_different_length_differ() {
        assert!(!lattice_isomorphic(&Poset::chain(2), &Poset::chain(3)).unwrap());
        assert!(!lattice_isomorphic(&Poset::chain(3), &Poset::quasi_antichain(2)).unwrap());
    }

    #[test]
    fn quasi_antichain_widths_distinguish() {
        assert!(!lattice_isomorphic(&Poset::quasi_antichain(3), &Poset::quasi_antichain(4))
            .unwrap());
        assert!(lattice_isomorphic(&Poset::quasi_antichain(5), &Poset::quasi_antichain(5))
            .unwrap());
    }

    #[test]
    fn size_cap() {
        let big = Poset::chain(64);
        assert!(matches!(
            lattice_isomorphic(&big, &big),
            Err(CdError::TooLarge(65))
        ));
    }

    #[test]
    fn product_symmetry() {
        let a = Poset::quasi_antichain(3);
        let b = Poset::chain(2);
        let p1 = lattice_product(&a, &b);
        let p2 = lattice_product(&b, &a);
        assert!(lattice_isomorphic(&p1, &p2).unwrap());
    }
}
