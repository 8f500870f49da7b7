//! The Chermak-Delgado lattice: the subgroups of maximal measure
//! |H| * |C_G(H)|, with Hasse covers and the centralizer duality.
//!
//! The search space is the intersection closure of the element centralizers.
//! This is sound because every maximal-measure subgroup equals its own
//! bicentralizer: C_G(C_G(H)) contains H and shares its centralizer, so its
//! measure is at least m(H), and strict containment would mean a strictly
//! larger measure. The all-subgroups oracle cross-checks this on every small
//! group in the test corpus.

use num_bigint::BigUint;

use crate::error::{CdError, Result};
use crate::group::FiniteGroup;
use crate::subgroup::{CentralizerFamily, Subgroup};

/// Exact measure |H| * |C_G(H)|; the exponent pair is carried by the
/// subspace fast path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureValue {
    pub value: BigUint,
    pub fast_exponents: Option<(u32, u32)>,
}

pub fn measure(g: &FiniteGroup, h: &Subgroup) -> MeasureValue {
    let c = g.centralizer(h);
    MeasureValue {
        value: BigUint::from(h.order() as u64 * c.order() as u64),
        fast_exponents: None,
    }
}

#[derive(Debug)]
pub struct CdLattice {
    group_id: u64,
    /// Members sorted ascending by (order, bitset).
    pub members: Vec<Subgroup>,
    pub m_star: BigUint,
    /// Hasse covers as (lower, upper) member indices.
    pub covers: Vec<(usize, usize)>,
    /// duality[i] = index of C_G(members[i]).
    pub duality: Vec<usize>,
    pub top: usize,
    pub bottom: usize,
}

impl CdLattice {
    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member_index(&self, s: &Subgroup) -> Option<usize> {
        self.members.binary_search(s).ok()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.members[i].is_subset_of(&self.members[j])
    }

    /// The centralizer duality as a member-to-member map.
    pub fn duality_map(&self, member: usize) -> Result<usize> {
        if member >= self.members.len() {
            return Err(CdError::NotAMember);
        }
        Ok(self.duality[member])
    }
}

/// CD lattice of G over the bicentralizer family.
pub fn cd_lattice(g: &FiniteGroup) -> Result<CdLattice> {
    let family = g.bicentralizer_family()?;
    build_lattice(g, &family, None)
}

/// Same, returning the family for reuse by the axiom checks.
pub fn cd_lattice_with_family(g: &FiniteGroup) -> Result<(CdLattice, CentralizerFamily)> {
    let family = g.bicentralizer_family()?;
    let lat = build_lattice(g, &family, None)?;
    Ok((lat, family))
}

/// CD lattice of a subgroup M computed inside M (centralizers intersected
/// with M, measures relative to M).
pub fn cd_lattice_within(g: &FiniteGroup, mask: &Subgroup) -> Result<CdLattice> {
    let family = g.bicentralizer_family()?;
    build_lattice(g, &family, Some(mask))
}

pub(crate) fn build_lattice(
    g: &FiniteGroup,
    family: &CentralizerFamily,
    mask: Option<&Subgroup>,
) -> Result<CdLattice> {
    let candidates: Vec<Subgroup> = match mask {
        None => family.members.clone(),
        Some(m) => masked_family(family, m)?,
    };
    let centralizer = |s: &Subgroup| -> Subgroup {
        let c = family.centralizer_of(g, s);
        match mask {
            None => c,
            Some(m) => c.intersect(m),
        }
    };
    let mut m_star = BigUint::default();
    let mut measures = Vec::with_capacity(candidates.len());
    for s in &candidates {
        let c = centralizer(s);
        let m = BigUint::from(s.order() as u64 * c.order() as u64);
        if m > m_star {
            m_star = m.clone();
        }
        measures.push(m);
    }
    let mut members: Vec<Subgroup> = candidates
        .into_iter()
        .zip(&measures)
        .filter(|(_, m)| **m == m_star)
        .map(|(s, _)| s)
        .collect();
    members.sort();
    members.dedup();

    let mut duality = Vec::with_capacity(members.len());
    for s in &members {
        let c = centralizer(s);
        let idx = members.binary_search(&c).map_err(|_| {
            CdError::InvariantViolation(
                "centralizer of a maximal-measure member is not itself a member".into(),
            )
        })?;
        duality.push(idx);
    }

    let n = members.len();
    let mut covers = Vec::new();
    for i in 0..n {
        'upper: for j in 0..n {
            if i == j || !members[i].is_subset_of(&members[j]) {
                continue;
            }
            for k in 0..n {
                if k != i
                    && k != j
                    && members[i].is_subset_of(&members[k])
                    && members[k].is_subset_of(&members[j])
                {
                    continue 'upper;
                }
            }
            covers.push((i, j));
        }
    }

    let top = (0..n)
        .find(|&j| (0..n).all(|i| members[i].is_subset_of(&members[j])))
        .ok_or_else(|| CdError::InvariantViolation("no maximum member".into()))?;
    let bottom = (0..n)
        .find(|&i| (0..n).all(|j| members[i].is_subset_of(&members[j])))
        .ok_or_else(|| CdError::InvariantViolation("no minimum member".into()))?;

    Ok(CdLattice { group_id: g.id(), members, m_star, covers, duality, top, bottom })
}

/// Closure of the element centralizers restricted to M.
fn masked_family(family: &CentralizerFamily, mask: &Subgroup) -> Result<Vec<Subgroup>> {
    use std::collections::HashSet;
    let mut seeds: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for x in mask.iter_elements() {
        let row = &family.distinct[family.elem_centralizer[x] as usize];
        let s = row.intersect(mask);
        if seen.insert(s.bits().to_vec()) {
            seeds.push(s);
        }
    }
    seeds.sort();
    let cap = crate::subgroup::DEFAULT_FAMILY_CAP;
    let mut members = seeds.clone();
    let mut head = 0;
    while head < members.len() {
        let cur = members[head].clone();
        head += 1;
        for seed in &seeds {
            let inter = cur.intersect(seed);
            if seen.insert(inter.bits().to_vec()) {
                if members.len() >= cap {
                    return Err(CdError::FamilyCapExceeded { cap });
                }
                members.push(inter);
            }
        }
    }
    Ok(members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]).unwrap()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    #[test]
    fn measure_examples() {
        let g = s3();
        let a3 = g.generated_subgroup(&[g.generators()[1]]).unwrap();
        assert_eq!(measure(&g, &a3).value, BigUint::from(9u32));
        let z = g.center();
        assert_eq!(measure(&g, &z).value, BigUint::from(6u32));
    }

    #[test]
    fn cd_of_abelian_is_whole_group() {
        let c6 = FiniteGroup::from_permutations(&[vec![1, 2, 3, 4, 5, 0]]).unwrap();
        let lat = cd_lattice(&c6).unwrap();
        assert_eq!(lat.members.len(), 1);
        assert_eq!(lat.m_star, BigUint::from(36u32));
        assert_eq!(lat.top, lat.bottom);
    }

    #[test]
    fn cd_of_d4() {
        let g = d4();
        let lat = cd_lattice(&g).unwrap();
        assert_eq!(lat.members.len(), 5);
        assert_eq!(lat.m_star, BigUint::from(16u32));
        let orders: Vec<usize> = lat.members.iter().map(|m| m.order()).collect();
        assert_eq!(orders, vec![2, 4, 4, 4, 8]);
        assert_eq!(lat.covers.len(), 6);
        // duality swaps top and bottom, fixes the abelian atoms
        assert_eq!(lat.duality[lat.top], lat.bottom);
        assert_eq!(lat.duality[lat.bottom], lat.top);
        for i in 0..lat.members.len() {
            assert_eq!(lat.duality[lat.duality[i]], i);
        }
    }

    #[test]
    fn cd_of_s3_is_single_member() {
        let g = s3();
        let lat = cd_lattice(&g).unwrap();
        assert_eq!(lat.members.len(), 1);
        assert_eq!(lat.members[0].order(), 3);
        assert_eq!(lat.m_star, BigUint::from(9u32));
    }

    #[test]
    fn cd_within_maximum_member_matches() {
        let g = d4();
        let lat = cd_lattice(&g).unwrap();
        let within = cd_lattice_within(&g, &lat.members[lat.top]).unwrap();
        assert_eq!(within.members, lat.members);
    }

    #[test]
    fn duality_map_rejects_bad_index() {
        let g = s3();
        let lat = cd_lattice(&g).unwrap();
        assert!(matches!(lat.duality_map(5), Err(CdError::NotAMember)));
    }
}
