//! Finite-group engine for computing Chermak-Delgado lattices, classifying
//! their shape, and checking the structural constraints that quasi-antichain
//! lattices must satisfy.

pub mod class2;
pub mod constructions;
pub mod error;
pub mod fastpath;
pub mod gf;
mod gfext;
pub mod group;
pub mod lattice;
pub mod poset;
pub mod shape;
pub mod subgroup;
pub mod verify;

pub use class2::Class2Data;
pub use error::{CdError, Result};
pub use fastpath::{cd_lattice_fast, BilinearModel, FastCdLattice};
pub use group::{BackendKind, FiniteGroup};
pub use lattice::{
    cd_lattice, cd_lattice_with_family, cd_lattice_within, measure, CdLattice, MeasureValue,
};
pub use poset::{lattice_isomorphic, lattice_product, Poset};
pub use shape::{classify_shape, interval, IntervalReport, LatticeView, ShapeKind, ShapeReport};
pub use subgroup::{CentralizerFamily, Subgroup};
pub use verify::{
    agemo_subgroup, atom_compose, check_lattice_axioms, fast_lattice_axioms,
    fast_verify_interval, omega_subgroup, theorem_constraints_check, verify_interval_propositions,
    verify_omega_agemo, verify_pgrp_structure, VerificationReport,
};
