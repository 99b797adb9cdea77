//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building states, applying gates,
/// measuring, or running protocols.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("theta = {0} is outside [0, pi/2]")]
    ThetaOutOfRange(f64),
    #[error("phi = {0} is outside [0, 2*pi)")]
    PhiOutOfRange(f64),
    #[error("probability parameter {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("duplicate qubit label `{0}` in register")]
    DuplicateLabel(String),
    #[error("label `{0}` is not part of the register")]
    UnknownLabel(String),
    #[error("registers overlap on label `{0}`")]
    OverlappingRegisters(String),
    #[error("registers do not match: `{0}` vs `{1}`")]
    RegisterMismatch(String, String),
    #[error("gate arity {arity} does not match {targets} target label(s)")]
    ArityMismatch { arity: usize, targets: usize },
    #[error("amplitude vector has length {got}, expected {expected}")]
    WrongDimension { expected: usize, got: usize },
    #[error("state norm deviates from 1 by {0:.3e}")]
    NotNormalized(f64),
    #[error("matrix is not unitary (max |G*G^dag - I| = {0:.3e})")]
    NotUnitary(f64),
    #[error("matrix is not Hermitian (max |M - M^dag| = {0:.3e})")]
    NotHermitian(f64),
    #[error("trace deviates from 1 by {0:.3e}")]
    BadTrace(f64),
    #[error("matrix is not positive semidefinite (eigenvalue {0:.3e})")]
    NotPositive(f64),
    #[error("mixture weights must be nonnegative and sum to 1 (sum deviates by {0:.3e})")]
    BadWeights(f64),
    #[error("measurement basis covers {basis} qubit(s) but {targets} target(s) were given")]
    BasisMismatch { basis: usize, targets: usize },
    #[error("basis vectors are not orthonormal/complete (max deviation {0:.3e})")]
    BadBasis(f64),
    #[error("shared key exhausted: every pad pair may be used only once")]
    KeyExhausted,
    #[error("bit stream is empty")]
    EmptyStream,
    #[error("unknown suite {0:?} (expected all, quantum, or classical)")]
    BadSuite(String),
}
