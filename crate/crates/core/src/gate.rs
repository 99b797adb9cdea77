//! Unitary gates and their action on labeled registers.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::label::{embed_index, Label};
use crate::state::StateVector;
use crate::TOL;

/// A named unitary on one or two qubits, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    name: String,
    matrix: Vec<Complex64>,
    arity: usize,
}

impl Gate {
    /// Build a gate from a row-major matrix, verifying `G·G† = I`.
    pub fn new(name: impl Into<String>, matrix: Vec<Complex64>, arity: usize) -> Result<Gate> {
        let dim = 1usize << arity;
        if matrix.len() != dim * dim {
            return Err(Error::WrongDimension {
                expected: dim * dim,
                got: matrix.len(),
            });
        }
        let mut max_dev = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                let mut entry = Complex64::new(0.0, 0.0);
                for k in 0..dim {
                    entry += matrix[i * dim + k] * matrix[j * dim + k].conj();
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                max_dev = max_dev.max((entry - expect).norm());
            }
        }
        if max_dev > TOL {
            return Err(Error::NotUnitary(max_dev));
        }
        Ok(Gate {
            name: name.into(),
            matrix,
            arity,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Identity on one qubit.
    pub fn identity() -> Gate {
        Gate::from_reals("I", &[1.0, 0.0, 0.0, 1.0], 1)
    }

    /// Pauli X.
    pub fn x() -> Gate {
        Gate::from_reals("X", &[0.0, 1.0, 1.0, 0.0], 1)
    }

    /// Pauli Y.
    pub fn y() -> Gate {
        let i = Complex64::new(0.0, 1.0);
        let zero = Complex64::new(0.0, 0.0);
        Gate::new("Y", vec![zero, -i, i, zero], 1).expect("unitary")
    }

    /// Pauli Z.
    pub fn z() -> Gate {
        Gate::from_reals("Z", &[1.0, 0.0, 0.0, -1.0], 1)
    }

    /// Hadamard.
    pub fn h() -> Gate {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Gate::from_reals("H", &[h, h, h, -h], 1)
    }

    /// CNOT with the first target label as control, the second as target.
    pub fn cnot() -> Gate {
        #[rustfmt::skip]
        let m = [
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
            0.0, 0.0, 1.0, 0.0,
        ];
        Gate::from_reals("CNOT", &m, 2)
    }

    fn from_reals(name: &str, entries: &[f64], arity: usize) -> Gate {
        let matrix = entries.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        Gate::new(name, matrix, arity).expect("unitary")
    }
}

/// Apply `gate` to the listed target labels of `state`, acting as identity on
/// the rest. The gate's basis follows the target list order, first target
/// most significant.
pub fn apply_gate(state: &StateVector, gate: &Gate, targets: &[Label]) -> Result<StateVector> {
    if targets.len() != gate.arity() {
        return Err(Error::ArityMismatch {
            arity: gate.arity(),
            targets: targets.len(),
        });
    }
    let register = state.register().clone();
    let n = register.len();
    let positions = register.positions(targets)?;
    let rest_positions = register.complement_positions(targets)?;
    let k = gate.arity();
    let sub_dim = 1usize << k;
    let rest_dim = 1usize << rest_positions.len();

    let mut out = vec![Complex64::new(0.0, 0.0); state.dim()];
    let amps = state.amplitudes();
    for rest in 0..rest_dim {
        // Gather the sub-vector on the targets, multiply, scatter back.
        let idx: Vec<usize> = (0..sub_dim)
            .map(|sub| embed_index(sub, &positions, rest, &rest_positions, n))
            .collect();
        for row in 0..sub_dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for col in 0..sub_dim {
                acc += gate.matrix()[row * sub_dim + col] * amps[idx[col]];
            }
            out[idx[row]] = acc;
        }
    }
    StateVector::new(register, out)
}
