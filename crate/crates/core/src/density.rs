//! Density matrices: Hermitian, trace-one, positive-semidefinite operators
//! over labeled registers.

use num_complex::Complex64;

use crate::eigen;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::label::{embed_index, Label, Register};
use crate::state::StateVector;
use crate::TOL;

/// A validated density matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    register: Register,
    matrix: Vec<Complex64>,
}

impl DensityMatrix {
    /// Build from a row-major matrix, checking Hermiticity (1e-12), unit
    /// trace (1e-12), and eigenvalues ≥ −1e-12.
    pub fn new(register: Register, matrix: Vec<Complex64>) -> Result<DensityMatrix> {
        let dim = register.dim();
        if matrix.len() != dim * dim {
            return Err(Error::WrongDimension {
                expected: dim * dim,
                got: matrix.len(),
            });
        }
        let mut herm_dev = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                herm_dev = herm_dev.max((matrix[i * dim + j] - matrix[j * dim + i].conj()).norm());
            }
        }
        if herm_dev > TOL {
            return Err(Error::NotHermitian(herm_dev));
        }
        let trace: Complex64 = (0..dim).map(|i| matrix[i * dim + i]).sum();
        if (trace.re - 1.0).abs() > TOL || trace.im.abs() > TOL {
            return Err(Error::BadTrace((trace - 1.0).norm()));
        }
        let eigenvalues = eigen::eigvalsh(&matrix, dim);
        if let Some(&lo) = eigenvalues.first() {
            if lo < -TOL {
                return Err(Error::NotPositive(lo));
            }
        }
        Ok(DensityMatrix { register, matrix })
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.register.dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[i * self.dim() + j]
    }

    /// Trace; 1 by construction, re-derived for invariant checks.
    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.entry(i, i)).sum()
    }

    /// Purity `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        let dim = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..dim {
            for j in 0..dim {
                acc += self.entry(i, j) * self.entry(j, i);
            }
        }
        acc.re
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigen::eigvalsh(&self.matrix, self.dim())
    }

    /// Largest absolute entrywise difference to another density matrix on
    /// the same register.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        if self.register != other.register {
            return Err(Error::RegisterMismatch(
                self.register.display(),
                other.register.display(),
            ));
        }
        Ok(self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Tensor product with a density matrix on a disjoint register.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        let register = self.register.concat(&other.register)?;
        let (da, db) = (self.dim(), other.dim());
        let dim = da * db;
        let mut matrix = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i1 in 0..da {
            for j1 in 0..da {
                for i2 in 0..db {
                    for j2 in 0..db {
                        matrix[(i1 * db + i2) * dim + (j1 * db + j2)] =
                            self.entry(i1, j1) * other.entry(i2, j2);
                    }
                }
            }
        }
        DensityMatrix::new(register, matrix)
    }

    /// Conjugate by an embedded gate: `ρ → U ρ U†`.
    pub fn apply_gate(&self, gate: &Gate, targets: &[Label]) -> Result<DensityMatrix> {
        if targets.len() != gate.arity() {
            return Err(Error::ArityMismatch {
                arity: gate.arity(),
                targets: targets.len(),
            });
        }
        let n = self.register.len();
        let positions = self.register.positions(targets)?;
        let rest_positions = self.register.complement_positions(targets)?;
        let k = gate.arity();
        let sub_dim = 1usize << k;
        let rest_dim = 1usize << rest_positions.len();
        let dim = self.dim();

        // Left multiply: A = U ρ (transform each column), then right multiply
        // by U†: B[i][j] = sum_k A[i][k] conj(U[j][k]) (transform each row).
        let mut a = self.matrix.clone();
        for col in 0..dim {
            for rest in 0..rest_dim {
                let idx: Vec<usize> = (0..sub_dim)
                    .map(|sub| embed_index(sub, &positions, rest, &rest_positions, n))
                    .collect();
                let gathered: Vec<Complex64> = idx.iter().map(|&i| a[i * dim + col]).collect();
                for row in 0..sub_dim {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for s in 0..sub_dim {
                        acc += gate.matrix()[row * sub_dim + s] * gathered[s];
                    }
                    a[idx[row] * dim + col] = acc;
                }
            }
        }
        for row in 0..dim {
            for rest in 0..rest_dim {
                let idx: Vec<usize> = (0..sub_dim)
                    .map(|sub| embed_index(sub, &positions, rest, &rest_positions, n))
                    .collect();
                let gathered: Vec<Complex64> = idx.iter().map(|&j| a[row * dim + j]).collect();
                for jcol in 0..sub_dim {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for s in 0..sub_dim {
                        acc += gathered[s] * gate.matrix()[jcol * sub_dim + s].conj();
                    }
                    a[row * dim + idx[jcol]] = acc;
                }
            }
        }
        DensityMatrix::new(self.register.clone(), a)
    }
}

/// The projector `|s⟩⟨s|` of a pure state.
pub fn density_from(state: &StateVector) -> DensityMatrix {
    let dim = state.dim();
    let mut matrix = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            matrix[i * dim + j] = state.amplitudes()[i] * state.amplitudes()[j].conj();
        }
    }
    DensityMatrix::new(state.register().clone(), matrix)
        .expect("projector of a normalized state is a valid density matrix")
}

/// Convex combination of density matrices on identical registers. Weights
/// must be nonnegative and sum to 1 within 1e-12.
pub fn mix(weighted: &[(f64, DensityMatrix)]) -> Result<DensityMatrix> {
    let Some((_, first)) = weighted.first() else {
        return Err(Error::BadWeights(1.0));
    };
    let register = first.register().clone();
    let mut sum = 0.0f64;
    for (w, rho) in weighted {
        if *w < 0.0 {
            return Err(Error::BadWeights(*w));
        }
        if rho.register() != &register {
            return Err(Error::RegisterMismatch(
                register.display(),
                rho.register().display(),
            ));
        }
        sum += w;
    }
    if (sum - 1.0).abs() > TOL {
        return Err(Error::BadWeights((sum - 1.0).abs()));
    }
    let dim = register.dim();
    let mut matrix = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (w, rho) in weighted {
        for (m, r) in matrix.iter_mut().zip(rho.matrix()) {
            *m += r * *w;
        }
    }
    DensityMatrix::new(register, matrix)
}

/// Convex combination of pure states on identical registers.
pub fn mix_pure(weighted: &[(f64, StateVector)]) -> Result<DensityMatrix> {
    let converted: Vec<(f64, DensityMatrix)> = weighted
        .iter()
        .map(|(w, s)| (*w, density_from(s)))
        .collect();
    mix(&converted)
}

/// Reduced density matrix on the kept labels (in the order given), tracing
/// out the rest.
pub fn partial_trace(rho: &DensityMatrix, keep: &[Label]) -> Result<DensityMatrix> {
    let n = rho.register().len();
    let keep_positions = rho.register().positions(keep)?;
    let rest_positions = rho.register().complement_positions(keep)?;
    let keep_dim = 1usize << keep_positions.len();
    let rest_dim = 1usize << rest_positions.len();

    let dim = rho.dim();
    let mut matrix = vec![Complex64::new(0.0, 0.0); keep_dim * keep_dim];
    for i in 0..keep_dim {
        for j in 0..keep_dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..rest_dim {
                let row = embed_index(i, &keep_positions, t, &rest_positions, n);
                let col = embed_index(j, &keep_positions, t, &rest_positions, n);
                acc += rho.matrix()[row * dim + col];
            }
            matrix[i * keep_dim + j] = acc;
        }
    }
    let register = Register::new(keep.to_vec())?;
    DensityMatrix::new(register, matrix)
}
