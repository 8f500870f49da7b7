//! Shared corpus plumbing for the integration suites. Each suite uses
//! a different subset, so unused items are expected per-suite.
#![allow(dead_code)]

use cdlab::constructions::{standard_corpus, ConstructionSpec};
use cdlab::{
    cd_lattice_fast, cd_lattice_with_family, CdLattice, CentralizerFamily, FastCdLattice,
    FiniteGroup, LatticeView,
};

pub const TABLE_CAP: u128 = 50_000;

pub enum CorpusLattice {
    Generic {
        spec: ConstructionSpec,
        group: FiniteGroup,
        lat: CdLattice,
        family: CentralizerFamily,
    },
    Fast {
        spec: ConstructionSpec,
        lat: FastCdLattice,
    },
}

impl CorpusLattice {
    pub fn spec(&self) -> &ConstructionSpec {
        match self {
            CorpusLattice::Generic { spec, .. } => spec,
            CorpusLattice::Fast { spec, .. } => spec,
        }
    }

    pub fn view(&self) -> LatticeView {
        match self {
            CorpusLattice::Generic { group, lat, .. } => lat.view(group),
            CorpusLattice::Fast { lat, .. } => lat.view(),
        }
    }
}

/// Every standard-corpus entry, generic path when the table fits and the
/// subspace path otherwise.
pub fn corpus_lattices() -> Vec<CorpusLattice> {
    standard_corpus()
        .into_iter()
        .map(|spec| {
            let order = spec.order_hint().expect("corpus orders are predictable");
            if order <= TABLE_CAP {
                let group = spec.build().unwrap_or_else(|e| panic!("build {spec}: {e}"));
                let (lat, family) = cd_lattice_with_family(&group)
                    .unwrap_or_else(|e| panic!("cd_lattice {spec}: {e}"));
                CorpusLattice::Generic { spec, group, lat, family }
            } else {
                let data = spec
                    .class2_data()
                    .unwrap_or_else(|| panic!("{spec} has no class-2 data"))
                    .unwrap();
                let lat = cd_lattice_fast(&data)
                    .unwrap_or_else(|e| panic!("cd_lattice_fast {spec}: {e}"));
                CorpusLattice::Fast { spec, lat }
            }
        })
        .collect()
}

pub fn modinv(k: u64, p: u64) -> u64 {
    (1..p).find(|x| k * x % p == 1).expect("k invertible mod p")
}
