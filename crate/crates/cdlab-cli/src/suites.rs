//! Named verification suites over the standard corpus and the small-group
//! catalog. Every suite prints one line per check and fails the process on
//! any violation.

use cdlab::constructions::{self as cons, ConstructionSpec, Variant};
use cdlab::gf::Subspace;
use cdlab::poset::{lattice_isomorphic, lattice_product, Poset};
use cdlab::shape::{classify_shape, interval, ShapeKind};
use cdlab::verify::{
    check_lattice_axioms, fast_lattice_axioms, fast_verify_interval, theorem_constraints_check,
    verify_interval_propositions, verify_omega_agemo, verify_pgrp_structure, VerificationReport,
};
use cdlab::{
    cd_lattice, cd_lattice_fast, cd_lattice_with_family, CdError, CdLattice, CentralizerFamily,
    FastCdLattice, FiniteGroup,
};

use crate::error::CliError;

pub const SUITES: &[&str] = &[
    "lattice-axioms",
    "omegaspt1",
    "basic",
    "centralizing",
    "theorem-w",
    "xspec",
    "pgrp",
    "s-gt-1",
    "corollary-w6",
    "examples",
];

#[derive(Default)]
pub struct SuiteOutcome {
    pub lines: Vec<(String, bool, String)>,
}

impl SuiteOutcome {
    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.lines.push((name.into(), pass, detail.into()));
    }

    fn absorb(&mut self, prefix: &str, report: &VerificationReport) {
        for c in &report.checks {
            self.push(format!("{prefix}: {}", c.name), c.pass, c.detail.clone());
        }
    }
}

enum Built {
    Table { group: FiniteGroup, lat: CdLattice, family: CentralizerFamily },
    Fast(FastCdLattice),
}

fn corpus() -> Result<Vec<(ConstructionSpec, Built)>, CliError> {
    let mut out = Vec::new();
    for spec in cons::standard_corpus() {
        let order = spec.order_hint().expect("corpus orders are predictable");
        let built = if order <= cdlab::group::DEFAULT_ELEMENT_CAP as u128 {
            let group = spec.build()?;
            let (lat, family) = cd_lattice_with_family(&group)?;
            Built::Table { group, lat, family }
        } else {
            let data = spec.class2_data().expect("large corpus entries are class-2")?;
            Built::Fast(cd_lattice_fast(&data)?)
        };
        out.push((spec, built));
    }
    Ok(out)
}

pub fn run_suite(name: &str, max_order: usize) -> Result<SuiteOutcome, CliError> {
    match name {
        "lattice-axioms" => lattice_axioms(max_order),
        "omegaspt1" => omegaspt1(max_order),
        "basic" => interval_suite(
            "basic",
            &[
                "atoms normal in H",
                "L normal in H",
                "[K_1, K_2] <= L",
                "[K_1*, K_2*] <= L*",
                "|K_1 : L| = |K_2* : L*|",
                "atom orders all equal",
                "|H/L| = |H/K_1|^2",
                "|H/L| = |H*/L*|",
            ],
        ),
        "centralizing" => interval_suite(
            "centralizing",
            &[
                "[H, H*] <= L /\\ L*",
                "L /\\ L* = C_G(HH*)",
                "H/L elementary abelian",
                "K_i/L all elementary abelian of equal order",
                "H/L and K_i/L elementary abelian",
            ],
        ),
        "theorem-w" => interval_suite("theorem-w", &["w = p^b + 1, b <= a", "(p, a, b) data"]),
        "xspec" => xspec(),
        "pgrp" => pgrp(),
        "s-gt-1" => s_gt_1(),
        "corollary-w6" => corollary_w6(),
        "examples" => examples(),
        other => Err(CliError::Parse(format!(
            "unknown suite {other:?}; available: {}",
            SUITES.join(", ")
        ))),
    }
}

fn lattice_axioms(max_order: usize) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::default();
    for (spec, built) in corpus()? {
        let violations = match &built {
            Built::Table { group, lat, family } => check_lattice_axioms(group, lat, Some(family)),
            Built::Fast(lat) => fast_lattice_axioms(lat),
        };
        out.push(format!("axioms: {spec}"), violations.is_empty(), violations.join("; "));
    }
    let mut catalog_ok = 0usize;
    let mut catalog_bad = Vec::new();
    for spec in cons::catalog(max_order.min(128)) {
        let g = spec.build()?;
        let (lat, family) = cd_lattice_with_family(&g)?;
        let v = check_lattice_axioms(&g, &lat, Some(&family));
        if v.is_empty() {
            catalog_ok += 1;
        } else {
            catalog_bad.push(format!("{spec}: {}", v.join("; ")));
        }
    }
    out.push(
        format!("axioms: catalog({}) [{catalog_ok} groups]", max_order.min(128)),
        catalog_bad.is_empty(),
        catalog_bad.join(" | "),
    );
    Ok(out)
}

fn omegaspt1(max_order: usize) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::default();
    let mut covered = 0usize;
    let mut failures = Vec::new();
    for spec in cons::catalog(max_order.min(128)) {
        let g = spec.build()?;
        let lat = cd_lattice(&g)?;
        for l in 0..lat.len() {
            for h in 0..lat.len() {
                if l == h || !lat.leq(l, h) {
                    continue;
                }
                let iv = interval(&g, &lat, l, h)?;
                let Some((p, _)) = cdlab::shape::prime_power(&iv.quotient_order) else {
                    continue;
                };
                match verify_omega_agemo(&g, &lat, l, h, p as u32, 1) {
                    Ok(rep) => {
                        covered += 1;
                        if !rep.passed() {
                            failures.push(format!("{spec} [{l},{h}]"));
                        }
                    }
                    Err(CdError::HypothesisViolated(_)) | Err(CdError::PrimeNotDividing { .. }) => {}
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    out.push(
        format!("omega/agemo members on {covered} intervals"),
        failures.is_empty(),
        failures.join(", "),
    );
    Ok(out)
}

/// Scan every quasi-antichain interval of width >= 3 in the corpus and
/// report only the checks whose names the suite selects.
fn interval_suite(suite: &str, selected: &[&str]) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::default();
    let mut scanned = 0usize;
    for (spec, built) in corpus()? {
        match &built {
            Built::Table { group, lat, .. } => {
                for l in 0..lat.len() {
                    for h in 0..lat.len() {
                        if l == h || !lat.leq(l, h) {
                            continue;
                        }
                        let iv = interval(group, lat, l, h)?;
                        if iv.shape.width().unwrap_or(0) < 3 {
                            continue;
                        }
                        scanned += 1;
                        let rep = verify_interval_propositions(group, lat, &iv);
                        for c in &rep.checks {
                            if selected.contains(&c.name.as_str()) && !c.pass {
                                out.push(
                                    format!("{suite}: {spec} [{l},{h}] {}", c.name),
                                    false,
                                    c.detail.clone(),
                                );
                            }
                        }
                    }
                }
            }
            Built::Fast(lat) => {
                let view = lat.view();
                for l in 0..lat.len() {
                    for h in 0..lat.len() {
                        if l == h || !view.leq[l][h] {
                            continue;
                        }
                        let keep: Vec<usize> = (0..lat.len())
                            .filter(|&i| view.leq[l][i] && view.leq[i][h])
                            .collect();
                        let shape = classify_shape(&view.sub_view(&keep));
                        if shape.width().unwrap_or(0) < 3 {
                            continue;
                        }
                        scanned += 1;
                        let rep = fast_verify_interval(lat, l, h)?;
                        for c in &rep.checks {
                            if selected.contains(&c.name.as_str()) && !c.pass {
                                out.push(
                                    format!("{suite}: {spec} [{l},{h}] {}", c.name),
                                    false,
                                    c.detail.clone(),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    let clean = out.lines.is_empty();
    out.push(
        format!("{suite}: {scanned} quasi-antichain intervals of width >= 3"),
        clean,
        "",
    );
    Ok(out)
}

fn xspec() -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::default();
    for p in [2u32, 3, 5] {
        for variant in [Variant::Plus, Variant::Minus] {
            let g = cons::extraspecial(p, variant)?;
            let lat = cd_lattice(&g)?;
            let shape = classify_shape(&lat.view(&g));
            let ok = matches!(
                shape.kind,
                ShapeKind::QuasiAntichain { width, abelian_atoms, .. }
                    if width == p as usize + 1 && abelian_atoms == width
            ) && lat.m_star == num_bigint::BigUint::from(p).pow(4)
                && g.derived_subgroup().order() == p as usize
                && g.center().order() == p as usize;
            out.push(
                format!("xspec: extraspecial({p}, {variant})"),
                ok,
                format!("{:?}, m* = {}", shape.kind, lat.m_star),
            );
        }
    }
    Ok(out)
}

fn pgrp() -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::default();
    let cases: Vec<(String, FiniteGroup)> = vec![
        ("extraspecial(2, plus)".into(), cons::extraspecial(2, Variant::Plus)?),
        ("extraspecial(2, minus)".into(), cons::extraspecial(2, Variant::Minus)?),
        (
            "extraspecial(3, plus) x cyclic(5)".into(),
            FiniteGroup::direct_product(cons::extraspecial(3, Variant::Plus)?, cons::cyclic(5)?)?,
        ),
        (
            "dihedral(4) x cyclic(9)".into(),
            FiniteGroup::direct_product(cons::dihedral(4)?, cons::cyclic(9)?)?,
        ),
    ];
    for (name, g) in cases {
        let rep = verify_pgrp_structure(&g)?;
        out.absorb(&format!("pgrp: {name}"), &rep);
    }
    Ok(out)
}

fn s_gt_1() -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::default();
    for (p, w, t, u) in [(5u32, 6usize, 4usize, 1usize), (2, 4, 0, 2)] {
        let v = theorem_constraints_check(p, w, t, u)?;
        out.push(
            format!("s-gt-1: rejects (p={p}, w={w}, t={t}, u={u})"),
            !v.is_empty(),
            v.join("; "),
        );
    }
    for (spec, built) in corpus()? {
        let view = match &built {
            Built::Table { group, lat, .. } => lat.view(group),
            Built::Fast(lat) => lat.view(),
        };
        let shape = classify_shape(&view);
        if let ShapeKind::QuasiAntichain { width, abelian_atoms, nonabelian_pairs } = shape.kind {
            if width >= 3 {
                let Some(pd) = shape.prime_data else {
                    out.push(format!("s-gt-1: {spec}"), false, "missing (p,a,b) data");
                    continue;
                };
                let v = theorem_constraints_check(
                    pd.p as u32,
                    width,
                    abelian_atoms,
                    nonabelian_pairs,
                )?;
                out.push(
                    format!("s-gt-1: accepts {spec} (w={width}, t={abelian_atoms}, u={nonabelian_pairs})"),
                    v.is_empty(),
                    v.join("; "),
                );
            }
        }
    }
    Ok(out)
}

fn corollary_w6() -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::default();
    let v = theorem_constraints_check(5, 6, 4, 1)?;
    out.push(
        "corollary-w6: rejects width 6 with 4 abelian atoms".to_string(),
        v.iter().any(|s| s.contains("u + 1")),
        v.join("; "),
    );
    let lat = cd_lattice_fast(&cons::bigex_data(5)?)?;
    let shape = classify_shape(&lat.view());
    let accepted = match shape.kind {
        ShapeKind::QuasiAntichain { width: 6, abelian_atoms: 2, nonabelian_pairs: 2 } => {
            theorem_constraints_check(5, 6, 2, 2)?.is_empty()
        }
        _ => false,
    };
    out.push(
        "corollary-w6: accepts the order-5^9 example (w=6, t=2, u=2)".to_string(),
        accepted,
        format!("{:?}", shape.kind),
    );
    Ok(out)
}

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

fn modinv(k: u64, p: u64) -> u64 {
    (1..p).find(|x| k * x % p == 1).expect("k invertible")
}

fn examples() -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::default();

    // a group with the two-member chain lattice, squared: width 2, no
    // abelian atoms
    let mut chain_instance = None;
    for spec in cons::catalog(128) {
        let g = spec.build()?;
        if g.is_abelian_group() {
            continue;
        }
        let lat = cd_lattice(&g)?;
        if lat.len() == 2 && lat.members[lat.top].order() == g.order() {
            chain_instance = Some(spec);
            break;
        }
    }
    match chain_instance {
        None => out.push("examples: CD(H) = {H, Z(H)} search", false, "none at order <= 128"),
        Some(spec) => {
            let g = FiniteGroup::direct_product(spec.build()?, spec.build()?)?;
            let lat = cd_lattice(&g)?;
            let shape = classify_shape(&lat.view(&g));
            let ok = shape.kind
                == ShapeKind::QuasiAntichain { width: 2, abelian_atoms: 0, nonabelian_pairs: 1 };
            out.push(
                format!("examples: width 2, no abelian atoms, from {spec} squared"),
                ok,
                format!("{:?}", shape.kind),
            );
        }
    }

    // width 2 with both atoms abelian
    let g = cons::width2_abelian(2)?;
    let lat = cd_lattice(&g)?;
    let shape = classify_shape(&lat.view(&g));
    out.push(
        "examples: width 2, both atoms abelian (order 256)",
        shape.kind
            == ShapeKind::QuasiAntichain { width: 2, abelian_atoms: 2, nonabelian_pairs: 0 }
            && lat.m_star == num_bigint::BigUint::from(2u32).pow(12),
        format!("{:?}, m* = {}", shape.kind, lat.m_star),
    );

    // duality closed forms on the order-p^9 families
    for p in [2u32, 3, 5] {
        let lat = cd_lattice_fast(&cons::bigex_data(p)?)?;
        let idx: Vec<usize> = (0..=p)
            .map(|k| lat.member_index(&mk_subspace(p, k)).expect("M_k member"))
            .collect();
        let mut ok = lat.duality[idx[0]] == idx[p as usize];
        for k in 1..p as u64 {
            let dual = (p as u64 - modinv(k, p as u64)) % p as u64;
            ok &= lat.duality[idx[k as usize]] == idx[dual as usize];
        }
        out.push(format!("examples: dual(M_k) = M_(-1/k) at p={p}"), ok, "");
        let lat2 = cd_lattice_fast(&cons::bigex2_data(p)?)?;
        let idx2: Vec<usize> = (0..=p)
            .map(|k| lat2.member_index(&mk_subspace(p, k)).expect("M_k member"))
            .collect();
        let mut ok2 = lat2.duality[idx2[0]] == idx2[p as usize];
        for k in 1..p as u64 {
            ok2 &= lat2.duality[idx2[k as usize]] == idx2[modinv(k, p as u64) as usize];
        }
        out.push(format!("examples: dual(M_k) = M_(1/k) at p={p} (inverted signs)"), ok2, "");
    }

    // unitriangular groups: centralizers of non-central elements
    let g = cons::heisenberg(2, 2)?;
    let z = g.center();
    let ok = (0..g.order())
        .filter(|&x| !z.contains(x))
        .all(|x| g.element_centralizer(x).order() == 16);
    out.push("examples: |C(x)| = p^(2n) off-center in heisenberg(2,2)", ok, "");

    // product lattice identity
    let d4 = cons::dihedral(4)?;
    let lat_d4 = cd_lattice(&d4)?;
    let poset_d4 = Poset::from_view(&lat_d4.view(&d4));
    let prod = FiniteGroup::direct_product(cons::dihedral(4)?, cons::dihedral(4)?)?;
    let lat_prod = cd_lattice(&prod)?;
    let iso = lattice_isomorphic(
        &Poset::from_view(&lat_prod.view(&prod)),
        &lattice_product(&poset_d4, &poset_d4),
    )?;
    out.push("examples: CD(D4 x D4) = CD(D4) x CD(D4)", iso, format!("{} members", lat_prod.len()));

    Ok(out)
}
