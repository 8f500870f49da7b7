//! Subspace fast path for class-2 data whose commutator form has trivial
//! radical.
//!
//! With the designated central subgroup equal to the full center, subgroups
//! containing it correspond to subspaces of GF(p)^d, centralizers to
//! nullspaces of the commutator form, and measures to exponent sums. The
//! lattice is then the argmax over the intersection closure of the
//! element-centralizer subspaces, with no element table at all. On every
//! instance small enough to expand, the member set is checked against the
//! generic path by the equivalence suite.

use num_bigint::BigUint;

use crate::class2::Class2Data;
use crate::error::{CdError, Result};
use crate::gf::{GfMatrix, Subspace};
use crate::group::FiniteGroup;
use crate::shape::LatticeView;
use crate::subgroup::{Subgroup, DEFAULT_FAMILY_CAP};

/// The commutator form of a class-2 presentation, restricted to the case
/// where the designated central subgroup is the whole center.
#[derive(Debug)]
pub struct BilinearModel {
    data: Class2Data,
}

impl BilinearModel {
    pub fn new(data: Class2Data) -> Result<Self> {
        if data.radical().dim() > 0 {
            return Err(CdError::RadicalNotTrivial);
        }
        Ok(BilinearModel { data })
    }

    pub fn p(&self) -> u32 {
        self.data.p()
    }

    pub fn d(&self) -> usize {
        self.data.d()
    }

    pub fn e(&self) -> usize {
        self.data.e()
    }

    pub fn data(&self) -> &Class2Data {
        &self.data
    }

    /// { v : B(u, v) = 0 } as a subspace of GF(p)^d.
    pub fn element_perp(&self, u: &[u8]) -> Subspace {
        let d = self.data.d();
        let e = self.data.e();
        let p = self.data.p();
        let mut rows = Vec::with_capacity(e);
        let mut cols = Vec::with_capacity(d);
        for i in 0..d {
            let mut basis = vec![0u8; d];
            basis[i] = 1;
            cols.push(self.data.form(u, &basis));
        }
        for k in 0..e {
            rows.push((0..d).map(|i| cols[i][k]).collect::<Vec<u8>>());
        }
        GfMatrix::from_rows(p, &rows).nullspace()
    }

    /// Centralizer subspace of a subgroup-subspace: intersection of the
    /// element perps of a basis.
    pub fn perp(&self, s: &Subspace) -> Subspace {
        let mut result = Subspace::full(self.data.p(), self.data.d());
        for row in &s.basis {
            result = result.intersect(&self.element_perp(row));
        }
        result
    }

    /// Does the form vanish on S x S?
    pub fn is_isotropic(&self, s: &Subspace) -> bool {
        s.basis.iter().all(|u| {
            s.basis.iter().all(|v| self.data.form(u, v).iter().all(|&x| x == 0))
        })
    }
}

#[derive(Debug)]
pub struct FastCdLattice {
    pub model: BilinearModel,
    /// Member subspaces sorted ascending by (dim, canonical bytes).
    pub members: Vec<Subspace>,
    /// log_p of the maximal measure.
    pub m_star_exp: u32,
    pub covers: Vec<(usize, usize)>,
    pub duality: Vec<usize>,
    pub top: usize,
    pub bottom: usize,
}

impl FastCdLattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn m_star(&self) -> BigUint {
        BigUint::from(self.model.p() as u64).pow(self.m_star_exp)
    }

    /// |member| = p^(e + dim).
    pub fn member_order(&self, i: usize) -> BigUint {
        BigUint::from(self.model.p() as u64)
            .pow((self.model.e() + self.members[i].dim()) as u32)
    }

    pub fn member_order_exp(&self, i: usize) -> u32 {
        (self.model.e() + self.members[i].dim()) as u32
    }

    /// Exact measure with the exponent pair (log_p |H|, log_p |C(H)|).
    pub fn member_measure(&self, i: usize) -> crate::lattice::MeasureValue {
        let h = self.member_order_exp(i);
        let c = self.member_order_exp(self.duality[i]);
        crate::lattice::MeasureValue {
            value: BigUint::from(self.model.p() as u64).pow(h + c),
            fast_exponents: Some((h, c)),
        }
    }

    pub fn view(&self) -> LatticeView {
        let n = self.members.len();
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| self.members[i].leq(&self.members[j])).collect())
            .collect();
        LatticeView {
            orders: (0..n).map(|i| self.member_order(i)).collect(),
            abelian: self.members.iter().map(|s| self.model.is_isotropic(s)).collect(),
            leq,
            covers: self.covers.clone(),
            duality: self.duality.iter().map(|&d| Some(d)).collect(),
            top: self.top,
            bottom: self.bottom,
        }
    }

    /// Member index of a given subspace, if present.
    pub fn member_index(&self, s: &Subspace) -> Option<usize> {
        self.members.iter().position(|m| m == s)
    }

    /// Expand the members to element bitsets of a table built from the same
    /// class-2 data. Only possible when the order fits the table cap.
    pub fn expand_members(&self, g: &FiniteGroup) -> Result<Vec<Subgroup>> {
        let data = g
            .class2_data()
            .ok_or_else(|| CdError::InvariantViolation("group lacks class-2 backend".into()))?;
        if data != self.model.data() {
            return Err(CdError::InvariantViolation(
                "group was built from different class-2 data".into(),
            ));
        }
        let p = data.p() as u64;
        let d = data.d();
        let e = data.e();
        let mut weights = vec![1u64; d + e];
        for k in 1..d + e {
            weights[k] = weights[k - 1] * p;
        }
        let central: u64 = p.pow(e as u32);
        let mut out = Vec::with_capacity(self.members.len());
        for m in &self.members {
            let mut indices = Vec::new();
            for u in m.enumerate() {
                let base: u64 = (0..d).map(|i| u[i] as u64 * weights[i]).sum();
                for z in 0..central {
                    // central part occupies the high digits
                    let mut idx = base;
                    let mut rest = z;
                    for k in 0..e {
                        idx += (rest % p) * weights[d + k];
                        rest /= p;
                    }
                    indices.push(idx as usize);
                }
            }
            out.push(g.subgroup_from_indices(&indices)?);
        }
        Ok(out)
    }
}

/// CD lattice from class-2 data alone, via the subspace closure.
///
/// The closure is pruned below dimension ceil(d/2): the measure is at least
/// that of the full space, so at a maximizing pair (V, V-perp) the dimensions
/// sum to at least d and one side has dimension >= ceil(d/2); a minimal
/// intersection chain reaching that side never dips below its dimension, so
/// every member is either found directly or recovered as the perp of one
/// that is. This keeps the p = 5 order-p^9 instance to a few thousand
/// subspaces instead of tens of thousands.
pub fn cd_lattice_fast(data: &Class2Data) -> Result<FastCdLattice> {
    let model = BilinearModel::new(data.clone())?;
    let p = model.p();
    let d = model.d();
    let threshold = d.div_ceil(2);

    // distinct element centralizers, one per projective line
    let mut seeds: Vec<Subspace> = vec![Subspace::full(p, d)];
    let mut seen: std::collections::HashSet<Vec<u8>> =
        seeds.iter().map(|s| s.canonical_bytes()).collect();
    let mut u = vec![0u8; d];
    loop {
        // little-endian increment over GF(p)^d
        let mut i = 0;
        loop {
            if i == d {
                u.clear();
                break;
            }
            u[i] += 1;
            if (u[i] as u32) < p {
                break;
            }
            u[i] = 0;
            i += 1;
        }
        if u.is_empty() {
            break;
        }
        // canonical line representatives: first nonzero digit is 1
        let first = u.iter().find(|&&x| x != 0).copied().unwrap();
        if first != 1 {
            continue;
        }
        let perp = model.element_perp(&u);
        if seen.insert(perp.canonical_bytes()) {
            seeds.push(perp);
        }
    }
    seeds.retain(|s| s.dim() >= threshold);
    seeds.sort_by(|a, b| (a.dim(), a.canonical_bytes()).cmp(&(b.dim(), b.canonical_bytes())));

    // kept = closed subspaces of dimension >= threshold; only members above
    // the threshold need expanding (an intersection through a smaller seed
    // or partial could never climb back up)
    let mut kept = seeds.clone();
    let mut head = 0;
    while head < kept.len() {
        let cur = kept[head].clone();
        head += 1;
        if cur.dim() == threshold {
            continue;
        }
        for s in &seeds {
            let inter = cur.intersect(s);
            if inter.dim() >= threshold && seen.insert(inter.canonical_bytes()) {
                if kept.len() >= DEFAULT_FAMILY_CAP {
                    return Err(CdError::FamilyCapExceeded { cap: DEFAULT_FAMILY_CAP });
                }
                kept.push(inter);
            }
        }
    }

    let e = model.e() as u32;
    let mut best = 0u32;
    let mut perps = Vec::with_capacity(kept.len());
    for s in &kept {
        let perp = model.perp(s);
        let exp = 2 * e + (s.dim() + perp.dim()) as u32;
        best = best.max(exp);
        perps.push((exp, perp));
    }
    let mut members: Vec<Subspace> = Vec::new();
    for (s, (exp, perp)) in kept.into_iter().zip(perps) {
        if exp == best {
            members.push(s);
            members.push(perp);
        }
    }
    members.sort_by(|a, b| (a.dim(), a.canonical_bytes()).cmp(&(b.dim(), b.canonical_bytes())));
    members.dedup();

    let n = members.len();
    let mut duality = Vec::with_capacity(n);
    for s in &members {
        let perp = model.perp(s);
        let idx = members.iter().position(|m| *m == perp).ok_or_else(|| {
            CdError::InvariantViolation("perp of a member is not a member".into())
        })?;
        duality.push(idx);
    }
    let mut covers = Vec::new();
    for i in 0..n {
        'upper: for j in 0..n {
            if i == j || !members[i].leq(&members[j]) {
                continue;
            }
            for k in 0..n {
                if k != i && k != j && members[i].leq(&members[k]) && members[k].leq(&members[j]) {
                    continue 'upper;
                }
            }
            covers.push((i, j));
        }
    }
    let top = (0..n)
        .find(|&j| (0..n).all(|i| members[i].leq(&members[j])))
        .ok_or_else(|| CdError::InvariantViolation("no maximum member".into()))?;
    let bottom = (0..n)
        .find(|&i| (0..n).all(|j| members[i].leq(&members[j])))
        .ok_or_else(|| CdError::InvariantViolation("no minimum member".into()))?;

    Ok(FastCdLattice { model, members, m_star_exp: best, covers, duality, top, bottom })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::cd_lattice;
    use crate::shape::{classify_shape, ShapeKind};

    fn extraspecial_data(p: u32) -> Class2Data {
        Class2Data::new(p, 2, 1, &[((0, 1), vec![1])], None).unwrap()
    }

    #[test]
    fn fast_path_rejects_degenerate_form() {
        let data = Class2Data::new(3, 3, 1, &[((0, 1), vec![1])], None).unwrap();
        assert!(matches!(cd_lattice_fast(&data), Err(CdError::RadicalNotTrivial)));
    }

    #[test]
    fn extraspecial_27_has_six_members() {
        let lat = cd_lattice_fast(&extraspecial_data(3)).unwrap();
        assert_eq!(lat.len(), 6);
        assert_eq!(lat.m_star_exp, 4); // p^4
        let shape = classify_shape(&lat.view());
        assert_eq!(
            shape.kind,
            ShapeKind::QuasiAntichain { width: 4, abelian_atoms: 4, nonabelian_pairs: 0 }
        );
    }

    #[test]
    fn fast_matches_generic_on_dihedral() {
        let data = extraspecial_data(2);
        let fast = cd_lattice_fast(&data).unwrap();
        let g = FiniteGroup::from_class2_data(data).unwrap();
        let generic = cd_lattice(&g).unwrap();
        let expanded = fast.expand_members(&g).unwrap();
        let mut expanded_sorted = expanded.clone();
        expanded_sorted.sort();
        assert_eq!(expanded_sorted, generic.members);
        assert_eq!(fast.m_star(), generic.m_star);
    }

    #[test]
    fn duality_is_involution() {
        let lat = cd_lattice_fast(&extraspecial_data(5)).unwrap();
        for i in 0..lat.len() {
            assert_eq!(lat.duality[lat.duality[i]], i);
        }
        assert_eq!(lat.duality[lat.top], lat.bottom);
    }

    #[test]
    fn member_measures_carry_exponents() {
        let lat = cd_lattice_fast(&extraspecial_data(5)).unwrap();
        for i in 0..lat.len() {
            let m = lat.member_measure(i);
            assert_eq!(m.value, lat.m_star());
            let (h, c) = m.fast_exponents.unwrap();
            assert_eq!(h + c, lat.m_star_exp);
        }
    }
}
