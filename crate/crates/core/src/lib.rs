//! Exact simulator and verification suite for quantum teleportation and its
//! classical analogues.
//!
//! The crate provides dense, double-precision linear algebra for up to four
//! labeled qubits and builds three teleportation procedures on top of it:
//!
//! * the standard protocol (Bell measurement, two classical bits, Pauli
//!   correction),
//! * a two-step decomposition (CNOT + z-measurement, then an x-measurement)
//!   that runs on either an entangled or a classically correlated resource,
//! * and the purely classical analogues: the one-time pad and XOR
//!   delocalization of a bit into the parity of shared randomness.
//!
//! # Conventions
//!
//! * A register is an ordered list of qubit labels. Basis-state indices follow
//!   the label order with the **first label most significant**: for register
//!   `[a, A, B]` the amplitude at index `0b101` belongs to `|1⟩_a|0⟩_A|1⟩_B`.
//! * Pure states are parameterized as `cosθ|0⟩ + e^{iφ} sinθ|1⟩` with
//!   θ ∈ [0, π/2] and φ ∈ [0, 2π); out-of-range angles are rejected, not
//!   canonicalized.
//! * All exact-arithmetic comparisons use an absolute tolerance of `1e-12`
//!   ([`TOL`]); dense double-precision algebra at dimension ≤ 16 stays well
//!   inside it.
//! * Measurement enumeration omits branches whose probability is below
//!   `1e-14` instead of carrying zero-probability branches with undefined
//!   post-states.
//! * Randomness derives from a single 64-bit master seed; every consumer
//!   draws from its own deterministic sub-stream so runs are reproducible
//!   bit for bit.

pub mod analysis;
pub mod bit;
pub mod classical;
pub mod density;
mod eigen;
pub mod error;
pub mod gate;
pub mod label;
pub mod measure;
pub mod metrics;
pub mod protocol;
pub mod qstate;
pub mod rng;
pub mod state;
pub mod verify;

pub use bit::Bit;
pub use density::DensityMatrix;
pub use error::{Error, Result};
pub use gate::Gate;
pub use label::{Label, Register};
pub use measure::{Branch, BranchSet, MeasurementBasis, Outcome};
pub use qstate::QuantumState;
pub use state::{Bell, BlochParams, StateVector};

/// Absolute tolerance for exact-arithmetic checks (norms, traces, unitarity,
/// probabilities).
pub const TOL: f64 = 1e-12;
