//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

mod common;

use std::time::Instant;

use cdlab::constructions::{self as cons, Variant};
use cdlab::gf::Subspace;
use cdlab::poset::{lattice_isomorphic, lattice_product, Poset};
use cdlab::shape::{classify_shape, interval, ShapeKind};
use cdlab::verify::{
    atom_compose, check_lattice_axioms, fast_lattice_axioms, fast_verify_interval,
    theorem_constraints_check, verify_interval_propositions,
};
use cdlab::{cd_lattice, cd_lattice_fast, cd_lattice_with_family, measure, FiniteGroup};
use common::{corpus_lattices, modinv, CorpusLattice};
use num_bigint::BigUint;

fn pass(line: &str) {
    println!("acceptance: {line}: PASS");
}

fn quasi_antichain_stats(kind: &ShapeKind) -> (usize, usize, usize) {
    match *kind {
        ShapeKind::QuasiAntichain { width, abelian_atoms, nonabelian_pairs } => {
            (width, abelian_atoms, nonabelian_pairs)
        }
        ref other => panic!("expected quasi-antichain, got {other:?}"),
    }
}

/// Criterion 1: extraspecial groups of order p^3, both variants, give a
/// width p+1 quasi-antichain with all atoms abelian and measure p^4.
#[test]
fn criterion_1_extraspecial_suite() {
    for p in [2u32, 3, 5] {
        for variant in [Variant::Plus, Variant::Minus] {
            let t0 = Instant::now();
            let g = cons::extraspecial(p, variant).unwrap();
            let lat = cd_lattice(&g).unwrap();
            let shape = classify_shape(&lat.view(&g));
            let (w, t, u) = quasi_antichain_stats(&shape.kind);
            assert_eq!(w, p as usize + 1, "width at p={p} {variant}");
            assert_eq!(t, w, "all atoms abelian at p={p} {variant}");
            assert_eq!(u, 0);
            assert_eq!(lat.m_star, BigUint::from(p).pow(4), "m* = p^4 at p={p}");
            let elapsed = t0.elapsed();
            assert!(elapsed.as_secs_f64() < 1.0, "runtime {elapsed:?} at p={p} {variant}");
        }
    }
    pass("1 extraspecial suite: width p+1, abelian atoms, m* = p^4, < 1 s each");
}

/// Criterion 2: unitriangular groups over GF(p^n): width p^n + 1, all atoms
/// abelian of order p^(2n), m* = p^(4n). Large cases via the fast path.
#[test]
fn criterion_2_heisenberg_suite() {
    for (p, n) in [(2u32, 1u32), (3, 1), (2, 2), (5, 1)] {
        let t0 = Instant::now();
        let g = cons::heisenberg(p, n as usize).unwrap();
        let lat = cd_lattice(&g).unwrap();
        let shape = classify_shape(&lat.view(&g));
        let (w, t, u) = quasi_antichain_stats(&shape.kind);
        assert_eq!(w, (p as usize).pow(n) + 1, "width at ({p},{n})");
        assert_eq!((t, u), (w, 0), "all atoms abelian at ({p},{n})");
        for a in &shape.atoms {
            assert_eq!(a.order, BigUint::from(p).pow(2 * n), "atom order at ({p},{n})");
        }
        assert_eq!(lat.m_star, BigUint::from(p).pow(4 * n));
        assert!(t0.elapsed().as_secs_f64() < 30.0);
    }
    for (p, n) in [(2u32, 3u32), (3, 2)] {
        let t0 = Instant::now();
        let lat = cd_lattice_fast(&cons::heisenberg_data(p, n as usize).unwrap()).unwrap();
        let shape = classify_shape(&lat.view());
        let (w, t, u) = quasi_antichain_stats(&shape.kind);
        assert_eq!(w, (p as usize).pow(n) + 1, "width at ({p},{n}) fast");
        assert_eq!((t, u), (w, 0));
        for a in &shape.atoms {
            assert_eq!(a.order, BigUint::from(p).pow(2 * n));
        }
        assert_eq!(lat.m_star(), BigUint::from(p).pow(4 * n));
        // |G/Z| = p^(2n) gives a = n, and w - 1 = p^n gives b = n
        let pd = shape.prime_data.unwrap();
        assert_eq!((pd.p, pd.a, pd.b), (p as u64, n, n));
        assert!(t0.elapsed().as_secs_f64() < 30.0);
    }
    pass("2 heisenberg suite: width p^n + 1, abelian atoms of order p^(2n), m* = p^(4n)");
}

/// The member of a p^9-example lattice equal to M_k (k = p means the second
/// factor), as a subspace.
fn mk_subspace(p: u32, k: u32) -> Subspace {
    let rows: Vec<Vec<u8>> = (0..3)
        .map(|i| {
            let mut v = vec![0u8; 6];
            if k == p {
                v[3 + i] = 1;
            } else {
                v[i] = 1;
                v[3 + i] = k as u8;
            }
            v
        })
        .collect();
    Subspace::from_vectors(p, 6, &rows)
}

fn check_bigex_family(
    p: u32,
    data: &cdlab::Class2Data,
    expected: (usize, usize, usize),
    dual_of_k: impl Fn(u64) -> u64,
) {
    let lat = cd_lattice_fast(data).unwrap();
    let view = lat.view();
    let shape = classify_shape(&view);
    assert_eq!(quasi_antichain_stats(&shape.kind), expected, "shape at p={p}");
    assert_eq!(lat.m_star(), BigUint::from(p).pow(12), "m* = p^12 at p={p}");
    // |G/Z| = p^6 gives a = 3; width p + 1 gives b = 1
    let pd = shape.prime_data.unwrap();
    assert_eq!((pd.p, pd.a, pd.b), (p as u64, 3, 1), "prime data at p={p}");
    let idx: Vec<usize> = (0..=p)
        .map(|k| lat.member_index(&mk_subspace(p, k)).expect("M_k is a member"))
        .collect();
    // the two factors centralize each other
    assert_eq!(lat.duality[idx[0]], idx[p as usize]);
    assert_eq!(lat.duality[idx[p as usize]], idx[0]);
    assert!(!view.abelian[idx[0]] && !view.abelian[idx[p as usize]]);
    for k in 1..p as u64 {
        let dual = dual_of_k(k);
        assert_eq!(
            lat.duality[idx[k as usize]],
            idx[dual as usize],
            "duality of M_{k} at p={p}"
        );
        // abelian atoms are exactly the self-dual ones
        assert_eq!(view.abelian[idx[k as usize]], dual == k, "abelian flag of M_{k} at p={p}");
    }
}

/// Criterion 3: the order-p^9 family with equal commutator signs.
#[test]
fn criterion_3_bigex_suite() {
    let t0 = Instant::now();
    let p5 = 5u64;
    check_bigex_family(2, &cons::bigex_data(2).unwrap(), (3, 1, 1), |k| k);
    check_bigex_family(3, &cons::bigex_data(3).unwrap(), (4, 0, 2), |k| (3 - modinv(k, 3)) % 3);
    check_bigex_family(5, &cons::bigex_data(5).unwrap(), (6, 2, 2), |k| (p5 - modinv(k, p5)) % p5);

    // p = 2 cross-checked on the expanded 512-element table
    let g = cons::bigex(2).unwrap();
    let generic = cd_lattice(&g).unwrap();
    let fast = cd_lattice_fast(&cons::bigex_data(2).unwrap()).unwrap();
    let mut expanded = fast.expand_members(&g).unwrap();
    let order: Vec<usize> = {
        let mut idx: Vec<usize> = (0..expanded.len()).collect();
        idx.sort_by(|&a, &b| expanded[a].cmp(&expanded[b]));
        idx
    };
    expanded.sort();
    assert_eq!(expanded, generic.members, "fast and generic members differ at p=2");
    // duality agrees through the expansion
    for (fast_i, &gen_pos) in order.iter().enumerate() {
        let dual_fast = fast.duality[order[fast_i]];
        // position of that dual in the sorted generic order
        let dual_gen_pos = order.iter().position(|&x| x == dual_fast).unwrap();
        let _ = gen_pos;
        assert_eq!(generic.duality[fast_i], dual_gen_pos, "duality mismatch at p=2");
    }
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "bigex suite took {elapsed:?}");
    pass("3 bigex suite: (w,t,u) per prime, m* = p^12, duality M_k -> M_(-1/k), generic cross-check");
}

/// Criterion 4: the variant with inverted commutator signs on the second
/// factor; duality becomes M_k -> M_(1/k).
#[test]
fn criterion_4_bigex2_suite() {
    check_bigex_family(2, &cons::bigex2_data(2).unwrap(), (3, 1, 1), |k| k);
    check_bigex_family(3, &cons::bigex2_data(3).unwrap(), (4, 2, 1), |k| modinv(k, 3));
    check_bigex_family(5, &cons::bigex2_data(5).unwrap(), (6, 2, 2), |k| modinv(k, 5));
    pass("4 bigex2 suite: (3,1,1), (4,2,1), (6,2,2) with duality M_k -> M_(1/k)");
}

/// Criterion 5: the order-256 width-2 example with both atoms abelian.
#[test]
fn criterion_5_width2_abelian_suite() {
    let g = cons::width2_abelian(2).unwrap();
    assert_eq!(g.order(), 256);
    let lat = cd_lattice(&g).unwrap();
    assert_eq!(lat.len(), 4);
    assert_eq!(lat.m_star, BigUint::from(2u32).pow(12));
    let shape = classify_shape(&lat.view(&g));
    assert_eq!(quasi_antichain_stats(&shape.kind), (2, 2, 0));
    // the atoms are exactly <m_1, m_2>Z and <n_1, n_2>Z
    let z = g.center();
    let gens = g.generators();
    let m = g.generated_subgroup(&[&gens[..2], &g.greedy_generators(&z)[..]].concat()).unwrap();
    let n = g.generated_subgroup(&[&gens[2..4], &g.greedy_generators(&z)[..]].concat()).unwrap();
    let atoms: Vec<&cdlab::Subgroup> =
        shape.atoms.iter().map(|a| &lat.members[a.member]).collect();
    assert!(atoms.contains(&&m) && atoms.contains(&&n));
    pass("5 width-2 example: CD = {G, Z, M, N}, both atoms abelian, m* = 2^12");
}

/// Criterion 6: on every catalog group of order <= 128 the bicentralizer
/// search agrees with the all-subgroups brute force.
#[test]
fn criterion_6_oracle_equivalence() {
    let specs = cons::catalog(128);
    let mut checked = 0;
    for spec in &specs {
        let g = spec.build().unwrap_or_else(|e| panic!("build {spec}: {e}"));
        let lat = cd_lattice(&g).unwrap_or_else(|e| panic!("cd {spec}: {e}"));
        let subs = g.all_subgroups().unwrap();
        let mut best = BigUint::default();
        let mut argmax: Vec<cdlab::Subgroup> = Vec::new();
        for s in subs {
            let m = measure(&g, &s).value;
            if m > best {
                best = m.clone();
                argmax.clear();
            }
            if m == best {
                argmax.push(s);
            }
        }
        argmax.sort();
        assert_eq!(argmax, lat.members, "oracle mismatch on {spec}");
        assert_eq!(best, lat.m_star, "m* mismatch on {spec}");
        checked += 1;
    }
    pass(&format!("6 oracle equivalence on {checked} catalog groups of order <= 128"));
}

/// Criterion 7: lattice axioms on every computed lattice: duality reversing
/// covers, modularity, join = product, meet = intersection, equal chain
/// lengths, normality in the maximum member, and CD(G) = CD(M).
#[test]
fn criterion_7_lattice_axioms() {
    let mut checked = 0;
    for entry in corpus_lattices() {
        match &entry {
            CorpusLattice::Generic { spec, group, lat, family } => {
                let v = check_lattice_axioms(group, lat, Some(family));
                assert!(v.is_empty(), "axiom violations on {spec}: {v:?}");
            }
            CorpusLattice::Fast { spec, lat } => {
                let v = fast_lattice_axioms(lat);
                assert!(v.is_empty(), "axiom violations on {spec}: {v:?}");
            }
        }
        checked += 1;
    }
    for spec in cons::catalog(128) {
        let g = spec.build().unwrap();
        let (lat, family) = cd_lattice_with_family(&g).unwrap();
        let v = check_lattice_axioms(&g, &lat, Some(&family));
        assert!(v.is_empty(), "axiom violations on {spec}: {v:?}");
        checked += 1;
    }
    pass(&format!("7 lattice axioms on {checked} computed lattices"));
}

/// Criterion 8: every quasi-antichain interval of width >= 3 in the corpus
/// satisfies the elementary-abelian quotient, index, and width facts.
#[test]
fn criterion_8_interval_propositions() {
    let mut checked = 0;
    let mut lattices = corpus_lattices();
    // include the catalog entries with more than one member
    let catalog_lats: Vec<CorpusLattice> = cons::catalog(128)
        .into_iter()
        .filter_map(|spec| {
            let g = spec.build().unwrap();
            let (lat, family) = cd_lattice_with_family(&g).unwrap();
            (lat.len() > 2).then_some(CorpusLattice::Generic { spec, group: g, lat, family })
        })
        .collect();
    lattices.extend(catalog_lats);
    for entry in &lattices {
        match entry {
            CorpusLattice::Generic { spec, group, lat, .. } => {
                for bottom in 0..lat.len() {
                    for top in 0..lat.len() {
                        if bottom == top || !lat.leq(bottom, top) {
                            continue;
                        }
                        let iv = interval(group, lat, bottom, top).unwrap();
                        let qa_width = iv.shape.width().unwrap_or(0);
                        if qa_width >= 3 {
                            assert!(iv.shape.violations.is_empty(), "{spec}: {:?}", iv.shape);
                            let rep = verify_interval_propositions(group, lat, &iv);
                            assert!(
                                rep.passed(),
                                "interval propositions fail on {spec} [{bottom},{top}]: {:?}",
                                rep.failures()
                            );
                            checked += 1;
                        }
                    }
                }
            }
            CorpusLattice::Fast { spec, lat } => {
                let view = lat.view();
                for bottom in 0..lat.len() {
                    for top in 0..lat.len() {
                        if bottom == top || !view.leq[bottom][top] {
                            continue;
                        }
                        let keep: Vec<usize> = (0..lat.len())
                            .filter(|&i| view.leq[bottom][i] && view.leq[i][top])
                            .collect();
                        let sub = view.sub_view(&keep);
                        let shape = classify_shape(&sub);
                        if shape.width().unwrap_or(0) >= 3 {
                            assert!(shape.violations.is_empty(), "{spec}: {shape:?}");
                            let rep = fast_verify_interval(lat, bottom, top).unwrap();
                            assert!(
                                rep.passed(),
                                "fast interval propositions fail on {spec}: {:?}",
                                rep.failures()
                            );
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 10, "expected many quasi-antichain intervals, found {checked}");
    pass(&format!("8 interval propositions on {checked} quasi-antichain intervals of width >= 3"));
}

/// Criterion 9: the constraint checker rejects the impossible width-6
/// signature and accepts every computed example.
#[test]
fn criterion_9_constraint_checker() {
    let violations = theorem_constraints_check(5, 6, 4, 1).unwrap();
    assert!(
        violations.iter().any(|v| v.contains("u + 1")),
        "width 6 with 4 abelian atoms must be rejected: {violations:?}"
    );
    let mut checked = 0;
    for entry in corpus_lattices() {
        let view = entry.view();
        let shape = classify_shape(&view);
        if let ShapeKind::QuasiAntichain { width, abelian_atoms, nonabelian_pairs } = shape.kind {
            if width >= 3 {
                let p = shape.prime_data.expect("prime data on corpus lattices").p;
                let v =
                    theorem_constraints_check(p as u32, width, abelian_atoms, nonabelian_pairs)
                        .unwrap();
                assert!(v.is_empty(), "checker rejects {}: {v:?}", entry.spec());
                checked += 1;
            }
        }
    }
    assert!(checked >= 12);
    pass(&format!(
        "9 constraint checker rejects (5,6,4,1) and accepts {checked} computed signatures"
    ));
}

/// Criterion 10: product lattices: CD(D4 x D4) is the lattice square of
/// CD(D4), and an abelian direct factor changes nothing.
#[test]
fn criterion_10_product_lattices() {
    let d4 = cons::dihedral(4).unwrap();
    let lat_d4 = cd_lattice(&d4).unwrap();
    let d4_poset = Poset::from_view(&lat_d4.view(&d4));

    let prod =
        FiniteGroup::direct_product(cons::dihedral(4).unwrap(), cons::dihedral(4).unwrap())
            .unwrap();
    let lat_prod = cd_lattice(&prod).unwrap();
    assert_eq!(lat_prod.len(), 25);
    let square = lattice_product(&d4_poset, &d4_poset);
    assert!(
        lattice_isomorphic(&Poset::from_view(&lat_prod.view(&prod)), &square).unwrap(),
        "CD(D4 x D4) is not the square of CD(D4)"
    );

    let e27 = cons::extraspecial(3, Variant::Plus).unwrap();
    let lat_e27 = cd_lattice(&e27).unwrap();
    let e27_poset = Poset::from_view(&lat_e27.view(&e27));
    let with_c5 =
        FiniteGroup::direct_product(cons::extraspecial(3, Variant::Plus).unwrap(), cons::cyclic(5).unwrap())
            .unwrap();
    let lat_v = cd_lattice(&with_c5).unwrap();
    assert!(
        lattice_isomorphic(&Poset::from_view(&lat_v.view(&with_c5)), &e27_poset).unwrap(),
        "CD(E27 x C5) is not CD(E27)"
    );
    pass("10 product lattices: CD(D4 x D4) = CD(D4)^2 (25 members), CD(E27 x C5) = CD(E27)");
}

/// Criterion 11: atom composition always lands on an atom of maximal
/// measure, and composing with the second base atom is the identity.
#[test]
fn criterion_11_atom_compose_suite() {
    let groups: Vec<(&str, FiniteGroup)> = vec![
        ("dihedral(4)", cons::dihedral(4).unwrap()),
        ("quaternion(8)", cons::quaternion(8).unwrap()),
        ("extraspecial(3, plus)", cons::extraspecial(3, Variant::Plus).unwrap()),
    ];
    let mut compositions = 0;
    for (name, g) in groups {
        let lat = cd_lattice(&g).unwrap();
        let iv = interval(&g, &lat, lat.bottom, lat.top).unwrap();
        let w = iv.shape.width().unwrap();
        let atoms: Vec<usize> =
            iv.shape.atoms.iter().map(|a| iv.member_indices[a.member]).collect();
        for i in 2..=w {
            for j in 2..=w {
                let member = atom_compose(&g, &lat, &iv, i, j).unwrap();
                assert!(atoms.contains(&member), "{name}: compose({i},{j}) not an atom");
                let m = measure(&g, &lat.members[member]);
                assert_eq!(m.value, lat.m_star, "{name}: compose({i},{j}) measure");
                if i >= 3 && j >= 3 {
                    // the composition is K_1 or another atom, never K_2
                    assert_ne!(member, atoms[1], "{name}: compose({i},{j}) hit K_2");
                }
                compositions += 1;
            }
        }
        for i in 3..=w {
            let member = atom_compose(&g, &lat, &iv, i, 2).unwrap();
            assert_eq!(member, atoms[i - 1], "{name}: compose({i}, 2) != K_{i}");
        }
    }
    pass(&format!("11 atom composition: {compositions} compositions, all atoms at m*"));
}
