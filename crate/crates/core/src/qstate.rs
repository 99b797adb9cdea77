//! A register state that is either a pure state vector or a density matrix.
//!
//! Protocol runs on the entangled resource stay in the cheap pure-state
//! representation; runs on the classically correlated (mixed) resource use
//! density matrices throughout. This enum lets one protocol engine drive
//! both without duplicating the branching logic.

use crate::density::{self, DensityMatrix};
use crate::error::Result;
use crate::gate::{self, Gate};
use crate::label::{Label, Register};
use crate::measure::{self, Branch, BranchSet, MeasurementBasis};
use crate::metrics;
use crate::state::StateVector;

/// Pure or mixed state over a labeled register.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumState {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

impl QuantumState {
    pub fn register(&self) -> &Register {
        match self {
            QuantumState::Pure(s) => s.register(),
            QuantumState::Mixed(r) => r.register(),
        }
    }

    pub fn is_pure_representation(&self) -> bool {
        matches!(self, QuantumState::Pure(_))
    }

    /// Density-matrix view (projector for pure states).
    pub fn to_density(&self) -> DensityMatrix {
        match self {
            QuantumState::Pure(s) => density::density_from(s),
            QuantumState::Mixed(r) => r.clone(),
        }
    }

    /// Tensor product. Mixing representations converts to density matrices.
    pub fn tensor(&self, other: &QuantumState) -> Result<QuantumState> {
        match (self, other) {
            (QuantumState::Pure(a), QuantumState::Pure(b)) => {
                Ok(QuantumState::Pure(a.tensor(b)?))
            }
            _ => Ok(QuantumState::Mixed(
                self.to_density().tensor(&other.to_density())?,
            )),
        }
    }

    /// Apply a gate to the target labels.
    pub fn apply_gate(&self, g: &Gate, targets: &[Label]) -> Result<QuantumState> {
        match self {
            QuantumState::Pure(s) => Ok(QuantumState::Pure(gate::apply_gate(s, g, targets)?)),
            QuantumState::Mixed(r) => Ok(QuantumState::Mixed(r.apply_gate(g, targets)?)),
        }
    }

    /// Enumerate a projective measurement, staying in the current
    /// representation.
    pub fn measure(
        &self,
        basis: &MeasurementBasis,
        targets: &[Label],
    ) -> Result<BranchSet<QuantumState>> {
        match self {
            QuantumState::Pure(s) => {
                let set = measure::measure_state(s, basis, targets)?;
                BranchSet::new(
                    set.into_branches()
                        .into_iter()
                        .map(|b| Branch {
                            probability: b.probability,
                            outcomes: b.outcomes,
                            state: QuantumState::Pure(b.state),
                        })
                        .collect(),
                )
            }
            QuantumState::Mixed(r) => {
                let set = measure::measure_density(r, basis, targets)?;
                BranchSet::new(
                    set.into_branches()
                        .into_iter()
                        .map(|b| Branch {
                            probability: b.probability,
                            outcomes: b.outcomes,
                            state: QuantumState::Mixed(b.state),
                        })
                        .collect(),
                )
            }
        }
    }

    /// Reduced density matrix on the kept labels.
    pub fn partial_trace(&self, keep: &[Label]) -> Result<DensityMatrix> {
        density::partial_trace(&self.to_density(), keep)
    }

    /// Fidelity against a pure target on the same register.
    pub fn fidelity(&self, target: &StateVector) -> Result<f64> {
        match self {
            QuantumState::Pure(s) => metrics::fidelity_pure(s, target),
            QuantumState::Mixed(r) => metrics::fidelity(r, target),
        }
    }
}
