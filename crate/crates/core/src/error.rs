//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian: defect {defect:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { defect: f64, tolerance: f64 },

    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("permutation degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("group closure exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("partitions do not have the same weight")]
    NotSamePartitionSize,

    #[error("symmetrizer is not idempotent: residual {0:.3e} (character is likely reducible)")]
    NotIdempotent(f64),

    #[error("symmetrized basis tensor vanishes; the symmetry class is degenerate")]
    DegenerateSymmetrizedTensor,

    #[error("subspace is not invariant under the tensor power: residual {0:.3e}")]
    SubspaceNotInvariant(f64),

    #[error("vector must be nonzero")]
    ZeroVector,

    #[error("vector is not unit: norm {0}")]
    NotUnit(f64),

    #[error("input matrix is not positive semidefinite: minimum eigenvalue {0:.3e}")]
    NotPsdInput(f64),

    #[error("group is not cyclic")]
    NotCyclic,

    #[error("value has non-negligible imaginary part {0:.3e}")]
    ImaginaryResidue(f64),

    #[error("non-finite entry encountered: {0}")]
    NonFinite(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
