//! Error type shared by every module of the engine.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CdError>;

#[derive(Debug, Error)]
pub enum CdError {
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("generator {0} is not a bijection on the stated points")]
    InvalidPermutation(usize),

    #[error("generator {0} is singular mod p")]
    SingularGenerator(usize),

    #[error("element closure exceeded the cap of {cap} elements")]
    ElementCapExceeded { cap: usize },

    #[error("class-2 data is inconsistent: {0}")]
    InconsistentData(String),

    #[error("designated subgroup is not central")]
    NotCentral,

    #[error("generator map does not extend to an isomorphism of the central subgroups")]
    NotIsomorphism,

    #[error("{0} is not a valid prime for this construction")]
    InvalidPrime(u32),

    #[error("construction exceeds the configured cap: {0}")]
    CapExceeded(String),

    #[error("bicentralizer family exceeded the cap of {cap} members")]
    FamilyCapExceeded { cap: usize },

    #[error("all-subgroups oracle refuses groups of order > {cap} (got {order})")]
    OracleCapExceeded { order: usize, cap: usize },

    #[error("radical of the commutator form is nontrivial; fall back to the generic path")]
    RadicalNotTrivial,

    #[error("subgroup is not a member of the lattice")]
    NotAMember,

    #[error("the two members are not comparable")]
    NotComparable,

    #[error("interval is not a quasi-antichain")]
    NotQuasiAntichain,

    #[error("quasi-antichain width {0} is too small for this operation")]
    WidthTooSmall(usize),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("prime {p} does not divide the quotient order")]
    PrimeNotDividing { p: u32 },

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("lattice too large for isomorphism testing ({0} nodes, limit 64)")]
    TooLarge(usize),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}
