//! Projective measurements: basis definitions, exhaustive branch
//! enumeration, and seeded sampling.
//!
//! Enumeration returns every branch with its Born-rule probability and the
//! renormalized post-state; measured qubits are removed from the register and
//! their outcome recorded. Branches with probability below [`OMIT_PROB`] are
//! omitted rather than carried with undefined post-states.

use num_complex::Complex64;

use crate::bit::Bit;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::label::{embed_index, Label};
use crate::state::{Bell, StateVector};
use crate::TOL;

/// Probability threshold below which a branch counts as zero-probability and
/// is dropped from enumeration.
pub const OMIT_PROB: f64 = 1e-14;

/// Which named measurement basis a [`MeasurementBasis`] represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    ComputationalZ,
    XBasis,
    Bell,
}

impl BasisKind {
    pub fn name(&self) -> &'static str {
        match self {
            BasisKind::ComputationalZ => "computational-z",
            BasisKind::XBasis => "x-basis",
            BasisKind::Bell => "bell",
        }
    }
}

impl std::fmt::Display for BasisKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One basis vector together with its outcome label and bit encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisVector {
    pub label: String,
    pub bits: Vec<Bit>,
    pub ket: Vec<Complex64>,
}

/// An orthonormal, complete measurement basis on `qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    kind: BasisKind,
    qubits: usize,
    outcomes: Vec<BasisVector>,
}

impl MeasurementBasis {
    /// Build and validate: kets pairwise orthonormal and summing to the
    /// identity as projectors, within 1e-12.
    pub fn new(kind: BasisKind, qubits: usize, outcomes: Vec<BasisVector>) -> Result<MeasurementBasis> {
        let dim = 1usize << qubits;
        if outcomes.len() != dim {
            return Err(Error::WrongDimension {
                expected: dim,
                got: outcomes.len(),
            });
        }
        let mut max_dev = 0.0f64;
        for (i, a) in outcomes.iter().enumerate() {
            if a.ket.len() != dim {
                return Err(Error::WrongDimension {
                    expected: dim,
                    got: a.ket.len(),
                });
            }
            for (j, b) in outcomes.iter().enumerate() {
                let ip: Complex64 = a.ket.iter().zip(&b.ket).map(|(x, y)| x.conj() * y).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                max_dev = max_dev.max((ip - expect).norm());
            }
        }
        // For an orthonormal set of full cardinality, completeness
        // sum_o |o><o| = I follows; re-check explicitly anyway.
        for r in 0..dim {
            for c in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for o in &outcomes {
                    acc += o.ket[r] * o.ket[c].conj();
                }
                let expect = if r == c { 1.0 } else { 0.0 };
                max_dev = max_dev.max((acc - expect).norm());
            }
        }
        if max_dev > TOL {
            return Err(Error::BadBasis(max_dev));
        }
        Ok(MeasurementBasis {
            kind,
            qubits,
            outcomes,
        })
    }

    /// Single-qubit computational (σ_z eigen-) basis; outcomes `0`, `1`.
    pub fn z() -> MeasurementBasis {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        MeasurementBasis::new(
            BasisKind::ComputationalZ,
            1,
            vec![
                BasisVector {
                    label: "0".into(),
                    bits: vec![Bit::Zero],
                    ket: vec![one, zero],
                },
                BasisVector {
                    label: "1".into(),
                    bits: vec![Bit::One],
                    ket: vec![zero, one],
                },
            ],
        )
        .expect("orthonormal")
    }

    /// Single-qubit x basis `(|0⟩ ± |1⟩)/√2`; outcomes `+` (bit 0) and `-`
    /// (bit 1).
    pub fn x() -> MeasurementBasis {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        MeasurementBasis::new(
            BasisKind::XBasis,
            1,
            vec![
                BasisVector {
                    label: "+".into(),
                    bits: vec![Bit::Zero],
                    ket: vec![h, h],
                },
                BasisVector {
                    label: "-".into(),
                    bits: vec![Bit::One],
                    ket: vec![h, -h],
                },
            ],
        )
        .expect("orthonormal")
    }

    /// Two-qubit Bell basis; outcome labels `Phi+`, `Phi-`, `Psi+`, `Psi-`
    /// with the fixed two-bit encoding of [`Bell::bits`].
    pub fn bell() -> MeasurementBasis {
        let outcomes = Bell::ALL
            .into_iter()
            .map(|kind| BasisVector {
                label: kind.label().into(),
                bits: kind.bits().to_vec(),
                ket: kind.amplitudes().to_vec(),
            })
            .collect();
        MeasurementBasis::new(BasisKind::Bell, 2, outcomes).expect("orthonormal")
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn outcomes(&self) -> &[BasisVector] {
        &self.outcomes
    }
}

/// A recorded measurement outcome: which basis vector fired.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub basis: BasisKind,
    pub targets: Vec<Label>,
    pub label: String,
    pub bits: Vec<Bit>,
}

/// One enumerated branch: probability, the outcomes that led here, and the
/// renormalized post-state.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch<S> {
    pub probability: f64,
    pub outcomes: Vec<Outcome>,
    pub state: S,
}

/// An exhaustive set of measurement branches.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchSet<S> {
    branches: Vec<Branch<S>>,
}

impl<S> BranchSet<S> {
    /// Wrap branches, checking nonnegative probabilities summing to 1.
    pub fn new(branches: Vec<Branch<S>>) -> Result<BranchSet<S>> {
        let mut sum = 0.0f64;
        for b in &branches {
            if b.probability < 0.0 {
                return Err(Error::BadWeights(b.probability));
            }
            sum += b.probability;
        }
        if (sum - 1.0).abs() > TOL {
            return Err(Error::BadWeights((sum - 1.0).abs()));
        }
        Ok(BranchSet { branches })
    }

    pub fn branches(&self) -> &[Branch<S>] {
        &self.branches
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn into_branches(self) -> Vec<Branch<S>> {
        self.branches
    }

    /// Total probability; 1 by construction, re-derived for checks.
    pub fn total_probability(&self) -> f64 {
        self.branches.iter().map(|b| b.probability).sum()
    }

    /// Draw one branch index from the seeded stream by inverse transform
    /// over the branch probabilities.
    pub fn sample_index<R: rand::Rng>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (i, b) in self.branches.iter().enumerate() {
            acc += b.probability;
            if u < acc {
                return i;
            }
        }
        self.branches.len() - 1
    }

    /// Draw one branch from the seeded stream.
    pub fn sample<R: rand::Rng>(&self, rng: &mut R) -> &Branch<S> {
        &self.branches[self.sample_index(rng)]
    }
}

/// Enumerate a projective measurement on a pure state. Measured qubits are
/// removed from the register; each branch's post-state is renormalized.
pub fn measure_state(
    state: &StateVector,
    basis: &MeasurementBasis,
    targets: &[Label],
) -> Result<BranchSet<StateVector>> {
    if targets.len() != basis.qubits() {
        return Err(Error::BasisMismatch {
            basis: basis.qubits(),
            targets: targets.len(),
        });
    }
    let register = state.register();
    let n = register.len();
    let positions = register.positions(targets)?;
    let rest_positions = register.complement_positions(targets)?;
    let rest_register = register.without(targets)?;
    let sub_dim = 1usize << positions.len();
    let rest_dim = 1usize << rest_positions.len();

    let mut branches = Vec::new();
    for vector in basis.outcomes() {
        // Component on the remaining register: <e|state> contracted over the
        // target positions only.
        let mut component = vec![Complex64::new(0.0, 0.0); rest_dim];
        for rest in 0..rest_dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for sub in 0..sub_dim {
                let full = embed_index(sub, &positions, rest, &rest_positions, n);
                acc += vector.ket[sub].conj() * state.amplitudes()[full];
            }
            component[rest] = acc;
        }
        let probability: f64 = component.iter().map(|a| a.norm_sqr()).sum();
        if probability <= OMIT_PROB {
            continue;
        }
        let scale = probability.sqrt();
        let renormalized: Vec<Complex64> = component.iter().map(|a| a / scale).collect();
        branches.push(Branch {
            probability,
            outcomes: vec![Outcome {
                basis: basis.kind(),
                targets: targets.to_vec(),
                label: vector.label.clone(),
                bits: vector.bits.clone(),
            }],
            state: StateVector::new(rest_register.clone(), renormalized)?,
        });
    }
    BranchSet::new(branches)
}

/// Enumerate a projective measurement on a density matrix. The post-state of
/// each branch is `K ρ K† / p` with `K = (⟨e| ⊗ I)` mapping onto the
/// remaining register.
pub fn measure_density(
    rho: &DensityMatrix,
    basis: &MeasurementBasis,
    targets: &[Label],
) -> Result<BranchSet<DensityMatrix>> {
    if targets.len() != basis.qubits() {
        return Err(Error::BasisMismatch {
            basis: basis.qubits(),
            targets: targets.len(),
        });
    }
    let register = rho.register();
    let n = register.len();
    let positions = register.positions(targets)?;
    let rest_positions = register.complement_positions(targets)?;
    let rest_register = register.without(targets)?;
    let sub_dim = 1usize << positions.len();
    let rest_dim = 1usize << rest_positions.len();
    let dim = rho.dim();

    let mut branches = Vec::new();
    for vector in basis.outcomes() {
        // (K rho K^dag)[r][c] = sum_{s,t} conj(e_s) rho[(s,r)][(t,c)] e_t.
        let mut reduced = vec![Complex64::new(0.0, 0.0); rest_dim * rest_dim];
        for r in 0..rest_dim {
            for col in 0..rest_dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for s in 0..sub_dim {
                    let row_full = embed_index(s, &positions, r, &rest_positions, n);
                    for t in 0..sub_dim {
                        let col_full = embed_index(t, &positions, col, &rest_positions, n);
                        acc += vector.ket[s].conj()
                            * rho.matrix()[row_full * dim + col_full]
                            * vector.ket[t];
                    }
                }
                reduced[r * rest_dim + col] = acc;
            }
        }
        let probability: f64 = (0..rest_dim).map(|i| reduced[i * rest_dim + i].re).sum();
        if probability <= OMIT_PROB {
            continue;
        }
        for entry in &mut reduced {
            *entry /= probability;
        }
        branches.push(Branch {
            probability,
            outcomes: vec![Outcome {
                basis: basis.kind(),
                targets: targets.to_vec(),
                label: vector.label.clone(),
                bits: vector.bits.clone(),
            }],
            state: DensityMatrix::new(rest_register.clone(), reduced)?,
        });
    }
    BranchSet::new(branches)
}
