use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("modulus must be a positive integer")]
    InvalidModulus,

    #[error("scalar modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("division by zero in the scalar field")]
    DivisionByZero,

    #[error("unsupported Cartan type/rank: {0}")]
    InvalidCartanType(String),

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("elements belong to different twisted setups")]
    SetupMismatch,

    #[error("automorphism validation failed: {0}")]
    AutomorphismInvalid(String),

    #[error("automorphisms do not commute (pair {0}, {1})")]
    NonCommutingAutomorphisms(usize, usize),

    #[error("setup assumptions do not hold: {0}")]
    AssumptionsFailed(String),

    #[error("degree {0:?} lies outside the allowed lattice")]
    DegreeOutsideLattice(Vec<i64>),

    #[error("coroot/reflection requires a real root (nonzero finite part)")]
    ImaginaryRoot,

    #[error("matrix is not invertible over the integers (det {0})")]
    NotUnimodular(i64),

    #[error("coordinate changes are defined only on untwisted setups with all orders 1")]
    TwistedCoordChange,

    #[error("the zero central charge cannot be normalized")]
    ZeroCharge,

    #[error("element support escapes the truncation box")]
    SupportOutsideBox,

    #[error("graded module validation failed: {0}")]
    ModuleInvalid(String),

    #[error("graded automorphism rejected: {0}")]
    ThetaInvalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed input: {0}")]
    BadInput(String),
}
