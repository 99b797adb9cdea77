//! Python bindings: run the teleportation protocols and classical analogues
//! from Python and get plain data back.
//!
//! Complex numbers cross the boundary as `(re, im)` tuples; bits as 0/1
//! integers. Branch lists preserve enumeration order, so probabilities,
//! outcome labels, and Bob's reduced density matrix line up with the JSON
//! transcripts the CLI emits.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qteleport::classical::{enumerate_delocalize, enumerate_otp};
use qteleport::protocol::{run_standard, run_two_step, ResourceKind, StopAfter, Transcript};
use qteleport::verify::{run_suite, Suite};
use qteleport::{Bell, BlochParams};

type ComplexPair = (f64, f64);

fn value_err(e: qteleport::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn params(theta: f64, phi: f64) -> PyResult<BlochParams> {
    BlochParams::new(theta, phi).map_err(value_err)
}

/// One enumerated protocol branch.
#[pyclass(frozen)]
struct Branch {
    /// Born probability of this branch.
    #[pyo3(get)]
    probability: f64,
    /// Measurement outcome labels in causal order.
    #[pyo3(get)]
    outcome_labels: Vec<String>,
    /// The same outcomes as bits.
    #[pyo3(get)]
    outcome_bits: Vec<u8>,
    /// Fidelity of Bob's reduced state against the input state.
    #[pyo3(get)]
    fidelity: f64,
    /// Bob's 2x2 reduced density matrix, row-major `(re, im)` entries.
    #[pyo3(get)]
    b_density: Vec<Vec<ComplexPair>>,
}

#[pymethods]
impl Branch {
    fn __repr__(&self) -> String {
        format!(
            "Branch(probability={:.6}, outcome={:?}, fidelity={:.6})",
            self.probability, self.outcome_labels, self.fidelity
        )
    }
}

fn branch_from(t: &Transcript) -> PyResult<Branch> {
    let rho = t.final_b_density().map_err(value_err)?;
    let dim = rho.dim();
    let b_density = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let e = rho.entry(i, j);
                    (e.re, e.im)
                })
                .collect()
        })
        .collect();
    Ok(Branch {
        probability: t.probability,
        outcome_labels: t.outcome_labels.clone(),
        outcome_bits: t.outcome_bits.iter().map(|b| b.as_u8()).collect(),
        fidelity: t.fidelity_to_target().map_err(value_err)?,
        b_density,
    })
}

/// Amplitudes of cos(theta)|0> + e^{i phi} sin(theta)|1> as `(re, im)` pairs.
#[pyfunction]
fn bloch_amplitudes(theta: f64, phi: f64) -> PyResult<Vec<ComplexPair>> {
    let sv = qteleport::state::bloch_state(params(theta, phi)?, "q");
    Ok(sv.amplitudes().iter().map(|c| (c.re, c.im)).collect())
}

/// Amplitudes of a Bell state by label ("Phi+", "Phi-", "Psi+", "Psi-").
#[pyfunction]
fn bell_amplitudes(name: &str) -> PyResult<Vec<ComplexPair>> {
    let kind = Bell::from_label(name).ok_or_else(|| {
        PyValueError::new_err(format!(
            "unknown Bell label {name:?} (expected Phi+, Phi-, Psi+, or Psi-)"
        ))
    })?;
    let sv = qteleport::state::bell_state(kind, ("A", "B")).map_err(value_err)?;
    Ok(sv.amplitudes().iter().map(|c| (c.re, c.im)).collect())
}

/// All four branches of the standard protocol for the given input.
#[pyfunction(name = "run_standard")]
fn py_run_standard(theta: f64, phi: f64) -> PyResult<Vec<Branch>> {
    run_standard(params(theta, phi)?)
        .map_err(value_err)?
        .iter()
        .map(branch_from)
        .collect()
}

/// All branches of the two-step protocol. `resource` is "entangled" or
/// "classical"; `stop_after` is "step1" or "step2".
#[pyfunction(name = "run_two_step")]
fn py_run_two_step(
    theta: f64,
    phi: f64,
    resource: &str,
    stop_after: &str,
) -> PyResult<Vec<Branch>> {
    let resource = match resource {
        "entangled" => ResourceKind::Entangled,
        "classical" => ResourceKind::ClassicalCorrelated,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown resource {other:?} (expected entangled or classical)"
            )))
        }
    };
    let stop_after = match stop_after {
        "step1" => StopAfter::Step1,
        "step2" => StopAfter::Step2,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown stop point {other:?} (expected step1 or step2)"
            )))
        }
    };
    run_two_step(params(theta, phi)?, resource, stop_after)
        .map_err(value_err)?
        .iter()
        .map(branch_from)
        .collect()
}

/// The four one-time-pad rows as `(probability, a, A, B, a_xor_A,
/// a_xor_A_xor_B)` tuples, with `P(a = 0) = p`.
#[pyfunction]
fn otp_table(p: f64) -> PyResult<Vec<(f64, u8, u8, u8, u8, u8)>> {
    Ok(enumerate_otp(p)
        .map_err(value_err)?
        .iter()
        .map(|r| {
            (
                r.probability,
                r.a.as_u8(),
                r.key_a.as_u8(),
                r.key_b.as_u8(),
                r.communicated.as_u8(),
                r.recovered.as_u8(),
            )
        })
        .collect())
}

/// The four delocalization rows as `(probability, d, x, y, x_tilde,
/// x_tilde_xor_y)` tuples, with `P(d = 0) = p`.
#[pyfunction]
fn delocalize_table(p: f64) -> PyResult<Vec<(f64, u8, u8, u8, u8, u8)>> {
    Ok(enumerate_delocalize(p)
        .map_err(value_err)?
        .iter()
        .map(|r| {
            (
                r.probability,
                r.d.as_u8(),
                r.x.as_u8(),
                r.y.as_u8(),
                r.x_tilde.as_u8(),
                r.x_tilde_xor_y.as_u8(),
            )
        })
        .collect())
}

/// P(communicated bit = 0) of the pad; exactly 1/2 for every bias.
#[pyfunction]
fn p_communicated_zero(p: f64) -> PyResult<f64> {
    let rows = enumerate_otp(p).map_err(value_err)?;
    Ok(qteleport::classical::p_communicated_zero(&rows))
}

/// P(delocalized bit = 0); exactly 1/2 for every bias.
#[pyfunction]
fn p_delocalized_zero(p: f64) -> PyResult<f64> {
    let rows = enumerate_delocalize(p).map_err(value_err)?;
    Ok(qteleport::classical::p_delocalized_zero(&rows))
}

/// Recover theta from the frequency of outcome 0 in a z-measurement of
/// Bob's corrected state: arccos(sqrt(f_zero)).
#[pyfunction]
fn estimate_theta(f_zero: f64) -> f64 {
    qteleport::analysis::estimate_theta(f_zero)
}

/// Run the verification suite ("all", "quantum", or "classical") and return
/// `(passed, failing_check_names)`.
#[pyfunction]
fn verify(suite: &str, seed: u64) -> PyResult<(bool, Vec<String>)> {
    let suite: Suite = suite
        .parse()
        .map_err(|e: qteleport::Error| PyValueError::new_err(e.to_string()))?;
    let report = run_suite(suite, seed).map_err(value_err)?;
    let failing = report
        .failing()
        .iter()
        .map(|c| c.name.clone())
        .collect();
    Ok((report.passed, failing))
}

#[pymodule]
fn qteleport_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Branch>()?;
    m.add_function(wrap_pyfunction!(bloch_amplitudes, m)?)?;
    m.add_function(wrap_pyfunction!(bell_amplitudes, m)?)?;
    m.add_function(wrap_pyfunction!(py_run_standard, m)?)?;
    m.add_function(wrap_pyfunction!(py_run_two_step, m)?)?;
    m.add_function(wrap_pyfunction!(otp_table, m)?)?;
    m.add_function(wrap_pyfunction!(delocalize_table, m)?)?;
    m.add_function(wrap_pyfunction!(p_communicated_zero, m)?)?;
    m.add_function(wrap_pyfunction!(p_delocalized_zero, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_theta, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
