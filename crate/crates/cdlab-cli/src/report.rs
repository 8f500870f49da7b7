//! Analysis reports: deterministic structured text for a group file.
//! Numbers serialize as decimal strings so consumers never face overflow,
//! and subgroup ids are content hashes (element lists on the table path,
//! echelon bases on the subspace path). Timing is deliberately not part of
//! the serialized report; it goes to stderr.

use cdlab::shape::{classify_shape, LatticeView, ShapeKind, ShapeReport};
use cdlab::verify::{check_lattice_axioms, fast_lattice_axioms, theorem_constraints_check};
use cdlab::{cd_lattice_fast, cd_lattice_with_family, measure};
use num_bigint::BigUint;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::file::GroupFile;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub oracle: bool,
    pub fast: bool,
    pub max_order: usize,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub format_version: u32,
    pub engine_version: String,
    pub group: GroupSummary,
    pub lattice: LatticeSection,
    pub members: Vec<MemberLine>,
    pub shape: ShapeSection,
    /// duality as member index pairs (i, dual(i)) with i <= dual(i)
    pub duality: Vec<[usize; 2]>,
    pub checks: ChecksSection,
}

#[derive(Debug, Serialize)]
pub struct GroupSummary {
    pub order: String,
    pub center_order: String,
    pub derived_order: String,
    pub class_at_most_2: bool,
}

#[derive(Debug, Serialize)]
pub struct LatticeSection {
    pub path: String,
    pub m_star: String,
    pub member_count: usize,
}

#[derive(Debug, Serialize)]
pub struct MemberLine {
    pub order: String,
    pub id: String,
    pub abelian: bool,
}

#[derive(Debug, Serialize)]
pub struct ShapeSection {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abelian_atoms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonabelian_pairs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
}

#[derive(Debug, Serialize)]
pub struct ChecksSection {
    pub lattice_axioms: String,
    pub constraints: String,
    pub oracle: String,
}

fn hash_id(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn shape_section(shape: &ShapeReport) -> ShapeSection {
    let (kind, length, width, t, u) = match shape.kind {
        ShapeKind::Chain(n) => ("chain".to_string(), Some(n), None, None, None),
        ShapeKind::QuasiAntichain { width, abelian_atoms, nonabelian_pairs } => (
            "quasi_antichain".to_string(),
            None,
            Some(width),
            Some(abelian_atoms),
            Some(nonabelian_pairs),
        ),
        ShapeKind::Other => ("other".to_string(), None, None, None, None),
    };
    ShapeSection {
        kind,
        length,
        width,
        abelian_atoms: t,
        nonabelian_pairs: u,
        p: shape.prime_data.map(|d| d.p),
        a: shape.prime_data.map(|d| d.a),
        b: shape.prime_data.map(|d| d.b),
    }
}

fn constraint_line(shape: &ShapeReport) -> String {
    match shape.kind {
        ShapeKind::QuasiAntichain { width, abelian_atoms, nonabelian_pairs } if width >= 3 => {
            match shape.prime_data {
                Some(pd) => {
                    match theorem_constraints_check(pd.p as u32, width, abelian_atoms, nonabelian_pairs)
                    {
                        Ok(v) if v.is_empty() => "pass".into(),
                        Ok(v) => format!("violated: {}", v.join("; ")),
                        Err(e) => format!("violated: {e}"),
                    }
                }
                None => format!("violated: {}", shape.violations.join("; ")),
            }
        }
        _ => "skipped (not a quasi-antichain of width >= 3)".into(),
    }
}

fn duality_pairs(view: &LatticeView) -> Vec<[usize; 2]> {
    let mut pairs = Vec::new();
    for (i, d) in view.duality.iter().enumerate() {
        let d = d.expect("full lattice duality is total");
        if i <= d {
            pairs.push([i, d]);
        }
    }
    pairs
}

/// Full analysis of a parsed group file. Returns the report plus the lattice
/// view for DOT export. A degenerate commutator form makes the fast path
/// signal `RadicalNotTrivial`; the analysis then falls back to the table
/// path.
pub fn analyze(file: &GroupFile, opts: AnalyzeOptions) -> Result<(AnalysisReport, LatticeView), CliError> {
    if opts.fast {
        match analyze_fast(file, opts)? {
            Some(done) => return Ok(done),
            None => eprintln!(
                "cdlab: commutator form has a nontrivial radical; falling back to the table path"
            ),
        }
    }
    analyze_generic(file, opts)
}

fn analyze_generic(
    file: &GroupFile,
    opts: AnalyzeOptions,
) -> Result<(AnalysisReport, LatticeView), CliError> {
    let g = file.build_group()?;
    let (lat, family) = cd_lattice_with_family(&g)?;
    let view = lat.view(&g);
    let shape = classify_shape(&view);

    let center = g.center();
    let derived = g.derived_subgroup();
    let group = GroupSummary {
        order: g.order().to_string(),
        center_order: center.order().to_string(),
        derived_order: derived.order().to_string(),
        class_at_most_2: derived.is_subset_of(&center),
    };
    let members: Vec<MemberLine> = lat
        .members
        .iter()
        .zip(&view.abelian)
        .map(|(m, &ab)| {
            let mut bytes = Vec::with_capacity(4 * m.order());
            for i in m.iter_elements() {
                bytes.extend((i as u32).to_le_bytes());
            }
            MemberLine { order: m.order().to_string(), id: hash_id(&bytes), abelian: ab }
        })
        .collect();

    let axioms = check_lattice_axioms(&g, &lat, Some(&family));
    let axioms_line =
        if axioms.is_empty() { "pass".to_string() } else { format!("violated: {}", axioms.join("; ")) };

    let oracle_line = if opts.oracle {
        let cap = opts.max_order.max(1);
        match g.all_subgroups_capped(cap) {
            Ok(subs) => {
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
                if argmax == lat.members {
                    "pass".to_string()
                } else {
                    "violated: all-subgroups argmax differs".to_string()
                }
            }
            Err(cdlab::CdError::OracleCapExceeded { order, cap }) => {
                format!("skipped (order {order} > oracle cap {cap})")
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        "skipped (not requested)".to_string()
    };

    let report = AnalysisReport {
        format_version: crate::file::FORMAT_VERSION,
        engine_version: ENGINE_VERSION.to_string(),
        group,
        lattice: LatticeSection {
            path: "generic".into(),
            m_star: lat.m_star.to_string(),
            member_count: lat.len(),
        },
        members,
        shape: shape_section(&shape),
        duality: duality_pairs(&view),
        checks: ChecksSection {
            lattice_axioms: axioms_line,
            constraints: constraint_line(&shape),
            oracle: oracle_line,
        },
    };
    Ok((report, view))
}

fn analyze_fast(
    file: &GroupFile,
    opts: AnalyzeOptions,
) -> Result<Option<(AnalysisReport, LatticeView)>, CliError> {
    let data = file.class2_data()?.ok_or_else(|| {
        CliError::Parse("the fast path needs a class-2 description".into())
    })?;
    let lat = match cd_lattice_fast(&data) {
        Ok(lat) => lat,
        Err(cdlab::CdError::RadicalNotTrivial) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let view = lat.view();
    let shape = classify_shape(&view);
    let p = BigUint::from(data.p() as u64);
    let group = GroupSummary {
        order: p.pow(data.width() as u32).to_string(),
        center_order: p.pow((data.e() + data.radical().dim()) as u32).to_string(),
        derived_order: p.pow(data.derived_span().dim() as u32).to_string(),
        class_at_most_2: true,
    };
    let members: Vec<MemberLine> = lat
        .members
        .iter()
        .zip(&view.abelian)
        .enumerate()
        .map(|(i, (m, &ab))| MemberLine {
            order: lat.member_order(i).to_string(),
            id: hash_id(&m.canonical_bytes()),
            abelian: ab,
        })
        .collect();
    let axioms = fast_lattice_axioms(&lat);
    let axioms_line =
        if axioms.is_empty() { "pass".to_string() } else { format!("violated: {}", axioms.join("; ")) };
    let oracle_line = if opts.oracle {
        "skipped (fast path has no element table)".to_string()
    } else {
        "skipped (not requested)".to_string()
    };
    let report = AnalysisReport {
        format_version: crate::file::FORMAT_VERSION,
        engine_version: ENGINE_VERSION.to_string(),
        group,
        lattice: LatticeSection {
            path: "fast".into(),
            m_star: lat.m_star().to_string(),
            member_count: lat.len(),
        },
        members,
        shape: shape_section(&shape),
        duality: duality_pairs(&view),
        checks: ChecksSection {
            lattice_axioms: axioms_line,
            constraints: constraint_line(&shape),
            oracle: oracle_line,
        },
    };
    Ok(Some((report, view)))
}

impl AnalysisReport {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("reports always serialize")
    }

    /// Exit-code-2 condition: any check reported a violation.
    pub fn all_checks_clean(&self) -> bool {
        !self.checks.lattice_axioms.starts_with("violated")
            && !self.checks.constraints.starts_with("violated")
            && !self.checks.oracle.starts_with("violated")
    }
}
