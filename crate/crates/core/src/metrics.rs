//! State-comparison metrics: fidelity against a pure target and two-qubit
//! concurrence.
//!
//! Comparison is always fidelity-based rather than amplitude-exact because
//! correction operators are defined only up to a global phase.

use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::eigen;
use crate::error::{Error, Result};
use crate::state::StateVector;

/// Fidelity `⟨target|ρ|target⟩ ∈ [0, 1]` of a state against a pure target on
/// the same register.
pub fn fidelity(rho: &DensityMatrix, target: &StateVector) -> Result<f64> {
    if rho.register() != target.register() {
        return Err(Error::RegisterMismatch(
            rho.register().display(),
            target.register().display(),
        ));
    }
    let dim = rho.dim();
    let t = target.amplitudes();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..dim {
        for j in 0..dim {
            acc += t[i].conj() * rho.entry(i, j) * t[j];
        }
    }
    Ok(acc.re)
}

/// Fidelity `|⟨a|b⟩|²` between two pure states on the same register.
pub fn fidelity_pure(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}

/// Two-qubit concurrence: `max(0, λ₁ − λ₂ − λ₃ − λ₄)` where the λᵢ are the
/// decreasing square roots of the eigenvalues of `√ρ · ρ̃ · √ρ` and
/// `ρ̃ = (σ_y ⊗ σ_y) ρ* (σ_y ⊗ σ_y)`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let dim = rho.dim();
    if dim != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            got: dim,
        });
    }

    // sigma_y x sigma_y is the anti-diagonal (-1, 1, 1, -1).
    let flip = |i: usize| 3 - i;
    let sign = |i: usize| if i == 0 || i == 3 { -1.0 } else { 1.0 };

    // rho_tilde[i][j] = sign(i) sign(j) conj(rho[flip(i)][flip(j)]).
    let mut tilde = vec![Complex64::new(0.0, 0.0); 16];
    for i in 0..4 {
        for j in 0..4 {
            tilde[i * 4 + j] = rho.entry(flip(i), flip(j)).conj() * (sign(i) * sign(j));
        }
    }

    // Matrix square root of rho via its eigendecomposition (clamping tiny
    // negative eigenvalues to zero).
    let (vals, vecs) = eigen::eigh(rho.matrix(), 4);
    let mut sqrt_rho = vec![Complex64::new(0.0, 0.0); 16];
    for k in 0..4 {
        let root = vals[k].max(0.0).sqrt();
        for i in 0..4 {
            for j in 0..4 {
                sqrt_rho[i * 4 + j] += vecs[i * 4 + k] * root * vecs[j * 4 + k].conj();
            }
        }
    }

    // K = sqrt(rho) * tilde * sqrt(rho), Hermitian PSD.
    let mut tmp = vec![Complex64::new(0.0, 0.0); 16];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                tmp[i * 4 + j] += sqrt_rho[i * 4 + k] * tilde[k * 4 + j];
            }
        }
    }
    let mut kmat = vec![Complex64::new(0.0, 0.0); 16];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                kmat[i * 4 + j] += tmp[i * 4 + k] * sqrt_rho[k * 4 + j];
            }
        }
    }

    // Eigenvalues of K that vanish analytically come back as O(1e-16) noise;
    // the square root would amplify that to O(1e-8). Clamp relative to the
    // largest eigenvalue before taking roots.
    let mu = eigen::eigvalsh(&kmat, 4);
    let mu_max = mu.iter().cloned().fold(0.0f64, f64::max);
    let mut lambdas: Vec<f64> = mu
        .into_iter()
        .map(|v| if v < mu_max * 1e-12 { 0.0 } else { v.sqrt() })
        .collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{density_from, mix_pure, partial_trace};
    use crate::label::{Label, Register};
    use crate::state::{basis_state, bell_state, bloch_state, Bell, BlochParams};
    use crate::Bit;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

    fn schmidt_pair(theta: f64, phi: f64) -> StateVector {
        // cos|00> + e^{i phi} sin|11> on register a,B.
        let r = Register::from_names(&["a", "B"]).unwrap();
        let amps = vec![
            Complex64::new(theta.cos(), 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::from_polar(theta.sin(), phi),
        ];
        StateVector::new(r, amps).unwrap()
    }

    #[test]
    fn fidelity_of_projector_with_itself_is_one() {
        let psi = bloch_state(BlochParams::new(0.9, 4.0).unwrap(), "q");
        let rho = density_from(&psi);
        assert!((fidelity(&rho, &psi).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fidelity_of_dephased_state_matches_expansion_oracle() {
        // fidelity(diag(cos^2, sin^2), bloch(theta, phi)) = cos^4 + sin^4.
        for (theta, phi) in [(0.3, 0.0), (FRAC_PI_4, 2.0), (1.2, 5.5)] {
            let target = bloch_state(BlochParams::new(theta, phi).unwrap(), "q");
            let r = Register::from_names(&["q"]).unwrap();
            let s0 = basis_state(r.clone(), &[Bit::Zero]).unwrap();
            let s1 = basis_state(r, &[Bit::One]).unwrap();
            let rho = mix_pure(&[
                (theta.cos().powi(2), s0),
                (theta.sin().powi(2), s1),
            ])
            .unwrap();
            let got = fidelity(&rho, &target).unwrap();

            // Independent oracle: expand <t|rho|t> entrywise.
            let t = target.amplitudes();
            let mut oracle = Complex64::new(0.0, 0.0);
            for i in 0..2 {
                for j in 0..2 {
                    oracle += t[i].conj() * rho.entry(i, j) * t[j];
                }
            }
            assert!((got - oracle.re).abs() < 1e-15);
            let closed = theta.cos().powi(4) + theta.sin().powi(4);
            assert!((got - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn fidelity_of_maximally_mixed_with_zero_is_half() {
        let r = Register::from_names(&["q"]).unwrap();
        let s0 = basis_state(r.clone(), &[Bit::Zero]).unwrap();
        let s1 = basis_state(r, &[Bit::One]).unwrap();
        let rho = mix_pure(&[(0.5, s0.clone()), (0.5, s1)]).unwrap();
        assert!((fidelity(&rho, &s0).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fidelity_requires_matching_registers() {
        let psi = bloch_state(BlochParams::new(0.4, 0.0).unwrap(), "q");
        let rho = density_from(&bloch_state(BlochParams::new(0.4, 0.0).unwrap(), "r"));
        assert!(fidelity(&rho, &psi).is_err());
    }

    #[test]
    fn concurrence_of_bell_states_is_one() {
        for kind in Bell::ALL {
            let rho = density_from(&bell_state(kind, ("A", "B")).unwrap());
            assert!((concurrence(&rho).unwrap() - 1.0).abs() < 1e-9, "{kind}");
        }
    }

    #[test]
    fn concurrence_of_classical_mixture_is_zero() {
        let r = Register::from_names(&["A", "B"]).unwrap();
        let s00 = basis_state(r.clone(), &[Bit::Zero, Bit::Zero]).unwrap();
        let s11 = basis_state(r, &[Bit::One, Bit::One]).unwrap();
        let rho = mix_pure(&[(0.5, s00), (0.5, s11)]).unwrap();
        assert!(concurrence(&rho).unwrap() < 1e-9);
    }

    #[test]
    fn concurrence_of_schmidt_pair_matches_oracle() {
        // For a pure two-qubit state with amplitude matrix M the concurrence
        // is 2|det M|; for cos|00> + e^{i phi} sin|11> that is |sin 2 theta|.
        for theta in [0.0, 0.2, 0.5, FRAC_PI_4, 1.1, FRAC_PI_2] {
            for phi in [0.0, 1.3, 4.4] {
                let state = schmidt_pair(theta, phi);
                let rho = density_from(&state);
                let got = concurrence(&rho).unwrap();

                let m = state.amplitudes();
                let det = m[0] * m[3] - m[1] * m[2];
                let oracle = 2.0 * det.norm();
                assert!(
                    (got - oracle).abs() < 1e-9,
                    "theta={theta} phi={phi}: got {got}, oracle {oracle}"
                );
                assert!((oracle - (2.0 * theta).sin().abs()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn concurrence_requires_two_qubits() {
        let rho = density_from(&bloch_state(BlochParams::new(0.3, 0.0).unwrap(), "q"));
        assert!(matches!(
            concurrence(&rho),
            Err(Error::WrongDimension { .. })
        ));
    }

    #[test]
    fn concurrence_of_separable_product_is_zero() {
        let a = bloch_state(BlochParams::new(0.7, 1.0).unwrap(), "A");
        let b = bloch_state(BlochParams::new(0.2, 2.5).unwrap(), "B");
        let rho = density_from(&a.tensor(&b).unwrap());
        assert!(concurrence(&rho).unwrap() < 1e-9);
    }

    proptest! {
        #[test]
        fn global_phase_leaves_metrics_unchanged(
            theta in 0.0..=FRAC_PI_2,
            phi in 0.0..TAU,
            alpha in 0.0..TAU,
        ) {
            let psi = bloch_state(BlochParams::new(theta, phi).unwrap(), "q");
            let rotated = psi.with_global_phase(alpha);
            // Density matrices coincide entrywise.
            let d1 = density_from(&psi);
            let d2 = density_from(&rotated);
            prop_assert!(d1.max_abs_diff(&d2).unwrap() < 1e-12);
            // Fidelity of the rotated ray against the original is 1.
            prop_assert!((fidelity_pure(&psi, &rotated).unwrap() - 1.0).abs() < 1e-12);
            prop_assert!((fidelity(&d2, &psi).unwrap() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn schmidt_concurrence_from_partial_trace_view(
            theta in 0.0..=FRAC_PI_2,
            phi in 0.0..TAU,
        ) {
            // The same |sin 2 theta| value must come out of the 2-qubit
            // density matrix reached through a partial trace of a product
            // with an idle ancilla.
            let pair = schmidt_pair(theta, phi);
            let idle = bloch_state(BlochParams::new(0.0, 0.0).unwrap(), "C");
            let padded = pair.tensor(&idle).unwrap();
            let rho = partial_trace(
                &density_from(&padded),
                &[Label::new("a"), Label::new("B")],
            ).unwrap();
            let got = concurrence(&rho).unwrap();
            prop_assert!((got - (2.0 * theta).sin().abs()).abs() < 1e-9);
        }
    }
}
