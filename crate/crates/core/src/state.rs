//! Pure states: Bloch-parameterized single qubits, Bell pairs, and tensor
//! products over labeled registers.

use num_complex::Complex64;

use crate::bit::Bit;
use crate::error::{Error, Result};
use crate::label::{Label, Register};
use crate::TOL;

/// The two real parameters of a pure qubit state
/// `cosθ|0⟩ + e^{iφ} sinθ|1⟩`, with θ ∈ [0, π/2] and φ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochParams {
    theta: f64,
    phi: f64,
}

impl BlochParams {
    /// Validate and build. Out-of-range angles are rejected, not wrapped.
    pub fn new(theta: f64, phi: f64) -> Result<BlochParams> {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
            return Err(Error::ThetaOutOfRange(theta));
        }
        if !(0.0..std::f64::consts::TAU).contains(&phi) {
            return Err(Error::PhiOutOfRange(phi));
        }
        Ok(BlochParams { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The two amplitudes `(cosθ, e^{iφ} sinθ)`.
    pub fn amplitudes(&self) -> [Complex64; 2] {
        [
            Complex64::new(self.theta.cos(), 0.0),
            Complex64::from_polar(self.theta.sin(), self.phi),
        ]
    }
}

/// The four maximally entangled two-qubit basis states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl Bell {
    /// All four, in the fixed two-bit encoding order.
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus];

    /// Display name.
    pub fn label(&self) -> &'static str {
        match self {
            Bell::PhiPlus => "Phi+",
            Bell::PhiMinus => "Phi-",
            Bell::PsiPlus => "Psi+",
            Bell::PsiMinus => "Psi-",
        }
    }

    /// Two-bit message encoding: Φ+↔00, Φ−↔01, Ψ+↔10, Ψ−↔11.
    /// The first bit selects Φ/Ψ, the second +/−.
    pub fn bits(&self) -> [Bit; 2] {
        match self {
            Bell::PhiPlus => [Bit::Zero, Bit::Zero],
            Bell::PhiMinus => [Bit::Zero, Bit::One],
            Bell::PsiPlus => [Bit::One, Bit::Zero],
            Bell::PsiMinus => [Bit::One, Bit::One],
        }
    }

    /// Inverse of [`Bell::bits`].
    pub fn from_bits(bits: [Bit; 2]) -> Bell {
        match (bits[0], bits[1]) {
            (Bit::Zero, Bit::Zero) => Bell::PhiPlus,
            (Bit::Zero, Bit::One) => Bell::PhiMinus,
            (Bit::One, Bit::Zero) => Bell::PsiPlus,
            (Bit::One, Bit::One) => Bell::PsiMinus,
        }
    }

    pub fn from_label(label: &str) -> Option<Bell> {
        Bell::ALL.into_iter().find(|b| b.label() == label)
    }

    /// The four amplitudes over the pair's computational basis, first label
    /// most significant.
    pub fn amplitudes(&self) -> [Complex64; 4] {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (p, m) = (Complex64::new(h, 0.0), Complex64::new(-h, 0.0));
        let zero = Complex64::new(0.0, 0.0);
        match self {
            Bell::PhiPlus => [p, zero, zero, p],
            Bell::PhiMinus => [p, zero, zero, m],
            Bell::PsiPlus => [zero, p, p, zero],
            Bell::PsiMinus => [zero, p, m, zero],
        }
    }
}

impl std::fmt::Display for Bell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A normalized pure state over an ordered register of labeled qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    register: Register,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Build from raw amplitudes, checking length and unit norm.
    pub fn new(register: Register, amps: Vec<Complex64>) -> Result<StateVector> {
        if amps.len() != register.dim() {
            return Err(Error::WrongDimension {
                expected: register.dim(),
                got: amps.len(),
            });
        }
        let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > TOL {
            return Err(Error::NotNormalized((norm2 - 1.0).abs()));
        }
        Ok(StateVector { register, amps })
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// Squared norm; 1 by construction, re-derived for invariant checks.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.register != other.register {
            return Err(Error::RegisterMismatch(
                self.register.display(),
                other.register.display(),
            ));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Tensor product; registers must be disjoint. The result's register is
    /// `self`'s labels followed by `other`'s.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let register = self.register.concat(&other.register)?;
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector::new(register, amps)
    }

    /// The same ray multiplied by a unit complex scalar. Used by the
    /// global-phase-robustness checks.
    pub fn with_global_phase(&self, phase: f64) -> StateVector {
        let z = Complex64::from_polar(1.0, phase);
        StateVector {
            register: self.register.clone(),
            amps: self.amps.iter().map(|a| a * z).collect(),
        }
    }
}

/// The single-qubit state `cosθ|0⟩ + e^{iφ} sinθ|1⟩` on the given label.
pub fn bloch_state(params: BlochParams, label: impl Into<Label>) -> StateVector {
    let register = Register::new(vec![label.into()]).expect("single label");
    let [a0, a1] = params.amplitudes();
    StateVector::new(register, vec![a0, a1]).expect("unit norm by construction")
}

/// One of the four Bell states on a pair of distinct labels.
pub fn bell_state(kind: Bell, labels: (impl Into<Label>, impl Into<Label>)) -> Result<StateVector> {
    let register = Register::new(vec![labels.0.into(), labels.1.into()])?;
    StateVector::new(register, kind.amplitudes().to_vec())
}

/// Computational basis state `|bits⟩` over the given register.
pub fn basis_state(register: Register, bits: &[Bit]) -> Result<StateVector> {
    if bits.len() != register.len() {
        return Err(Error::WrongDimension {
            expected: register.len(),
            got: bits.len(),
        });
    }
    let mut index = 0usize;
    for b in bits {
        index = (index << 1) | b.as_u8() as usize;
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); register.dim()];
    amps[index] = Complex64::new(1.0, 0.0);
    StateVector::new(register, amps)
}
