//! Property tests: group axioms on random samples, class-2 structure facts,
//! and centralizer laws over random subgroups.

use cdlab::constructions as cons;
use cdlab::{Class2Data, FiniteGroup};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Group axioms on >= 1000 sampled triples per constructed group.
#[test]
fn sampled_associativity_and_inverses() {
    let groups: Vec<(String, FiniteGroup)> = [
        cons::ConstructionSpec::Dihedral { n: 4 },
        cons::ConstructionSpec::Quaternion { order: 16 },
        cons::ConstructionSpec::Semidihedral { order: 32 },
        cons::ConstructionSpec::Modular2 { order: 32 },
        cons::ConstructionSpec::Symmetric { n: 5 },
        cons::ConstructionSpec::Extraspecial { p: 5, variant: cons::Variant::Minus },
        cons::ConstructionSpec::Heisenberg { p: 3, n: 2 },
        cons::ConstructionSpec::Bigex { p: 3 },
        cons::ConstructionSpec::Width2Abelian { p: 3 },
        cons::ConstructionSpec::DirectProduct {
            left: Box::new(cons::ConstructionSpec::Dihedral { n: 4 }),
            right: Box::new(cons::ConstructionSpec::Cyclic { n: 9 }),
        },
    ]
    .into_iter()
    .map(|s| (s.to_string(), s.build().unwrap()))
    .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (name, g) in &groups {
        let n = g.order();
        for _ in 0..1000 {
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            assert_eq!(
                g.multiply(g.multiply(x, y), z),
                g.multiply(x, g.multiply(y, z)),
                "associativity fails in {name}"
            );
            assert_eq!(g.multiply(x, g.inverse(x)), 0, "inverse fails in {name}");
        }
    }
}

/// Central product of two extraspecial p^3 groups over their full centers is
/// extraspecial of order p^5.
#[test]
fn central_product_of_extraspecials_is_extraspecial() {
    for p in [2u32, 3] {
        let a = cons::extraspecial(p, cons::Variant::Plus).unwrap();
        let b = cons::extraspecial(p, cons::Variant::Plus).unwrap();
        let za = a.greedy_generators(&a.center());
        let zb = b.greedy_generators(&b.center());
        let g = FiniteGroup::central_product(a, b, &za, &zb).unwrap();
        assert_eq!(g.order(), (p as usize).pow(5));
        assert_eq!(g.center().order(), p as usize);
        assert_eq!(g.derived_subgroup().order(), p as usize);
    }
}

fn class2_strategy() -> impl Strategy<Value = Class2Data> {
    (2usize..=4, 1usize..=2, prop::sample::select(vec![2u32, 3, 5]))
        .prop_flat_map(|(d, e, p)| {
            let pairs = d * (d - 1) / 2;
            let entries = prop::collection::vec(
                prop::collection::vec(0u8..p as u8, e),
                pairs,
            );
            let powers = prop::collection::vec(prop::collection::vec(0u8..2u8, e), d);
            (Just(d), Just(e), Just(p), entries, powers)
        })
        .prop_map(|(d, e, p, entries, powers)| {
            let mut upper = Vec::new();
            let mut it = entries.into_iter();
            for i in 0..d {
                for j in (i + 1)..d {
                    upper.push(((i, j), it.next().unwrap()));
                }
            }
            let powers = (p == 2).then_some(powers);
            Class2Data::new(p, d, e, &upper, powers).expect("valid data")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Arbitrary alternating data yields an honest group whose center and
    /// derived subgroup match the form: |Z| = p^(e + dim radical) and
    /// [G, G] is the span of the commutator entries.
    #[test]
    fn class2_center_and_derived_match_form(data in class2_strategy()) {
        let p = data.p() as usize;
        let e = data.e() as u32;
        let g = FiniteGroup::from_class2_data(data.clone()).unwrap();
        let z = g.center();
        let expected_z = p.pow(e + data.radical().dim() as u32);
        prop_assert_eq!(z.order(), expected_z);
        prop_assert!(z.order() >= p.pow(e));
        let derived = g.derived_subgroup();
        prop_assert_eq!(derived.order(), p.pow(data.derived_span().dim() as u32));
        // nilpotence class at most 2
        prop_assert!(derived.is_subset_of(&z));
    }

    /// Centralizer laws on random generated subgroups of a fixed mid-size
    /// group: H <= C(C(H)) and C stabilizes after one double step.
    #[test]
    fn centralizer_laws_on_random_subgroups(seeds in prop::collection::vec(0usize..64, 0..4)) {
        let g = cons::heisenberg(2, 2).unwrap();
        let h = g.generated_subgroup(&seeds).unwrap();
        prop_assert_eq!(g.order() % h.order(), 0);
        let c1 = g.centralizer(&h);
        let c2 = g.centralizer(&c1);
        let c3 = g.centralizer(&c2);
        prop_assert!(h.is_subset_of(&c2));
        prop_assert_eq!(c1, c3);
    }

    /// Setwise products of lattice members commute and land on the join;
    /// sampled on the order-72 product group.
    #[test]
    fn member_products_commute(pick in (0usize..5, 0usize..5)) {
        let g = FiniteGroup::direct_product(
            cons::dihedral(4).unwrap(),
            cons::cyclic(9).unwrap(),
        ).unwrap();
        let lat = cdlab::cd_lattice(&g).unwrap();
        let (i, j) = (pick.0 % lat.len(), pick.1 % lat.len());
        let hk = g.setwise_product_bits(&lat.members[i], &lat.members[j]);
        let kh = g.setwise_product_bits(&lat.members[j], &lat.members[i]);
        prop_assert_eq!(&hk, &kh);
        let prod = g.subgroup_from_indices(
            &(0..g.order()).filter(|&x| hk[x / 64] >> (x % 64) & 1 == 1).collect::<Vec<_>>(),
        ).unwrap();
        prop_assert!(lat.member_index(&prod).is_some());
    }
}

/// Random permutation generators: the closure is a group whose element
/// orders divide the group order.
#[test]
fn random_permutation_closures_are_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..20 {
        let degree = rng.gen_range(3..7);
        let mut gens = Vec::new();
        for _ in 0..2 {
            let mut perm: Vec<usize> = (0..degree).collect();
            for i in (1..degree).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            gens.push(perm);
        }
        let g = FiniteGroup::from_permutations(&gens).unwrap();
        for x in 0..g.order() {
            assert_eq!(g.order() % g.element_order(x).unwrap(), 0);
        }
    }
}
