//! Estimation and scan utilities on top of the protocol runners.
//!
//! * [`estimate_theta`] inverts Bob's z-statistics, `θ̂ = arccos √P(0)`;
//! * [`phi_scan`] demonstrates which stage of the two-step protocol makes
//!   the input phase visible: after step 1 no marginal depends on φ, while
//!   the full run transports φ if and only if the resource is entangled;
//! * [`cross_check`] compares sampled frequencies against the enumerated
//!   distribution under three-sigma binomial bounds, plus the exact
//!   enumerated identities under the numeric tolerance.

use crate::bit::Bit;
use crate::density::{mix, DensityMatrix};
use crate::error::Result;
use crate::label::Label;
use crate::measure::MeasurementBasis;
use crate::protocol::{
    run_standard, run_two_step, sample_standard, sample_two_step, ResourceKind, StopAfter,
};
use crate::rng::SeedStream;
use crate::state::BlochParams;
use crate::TOL;

/// Invert `P(z = 0) = cos²θ` to the Bloch colatitude. The argument is
/// clamped into `[0, 1]` so sampled frequencies just outside the range (or
/// rounding above 1) stay finite.
pub fn estimate_theta(freq_zero: f64) -> f64 {
    freq_zero.clamp(0.0, 1.0).sqrt().acos()
}

/// Outcome of a phase scan at a fixed colatitude.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiScan {
    pub theta: f64,
    pub resource: ResourceKind,
    pub phis: Vec<f64>,
    /// Largest entry-wise deviation of Bob's corrected step-1 marginal from
    /// its value at the first scanned phase.
    pub step1_b_deviation: f64,
    /// Same for Alice's remaining qubit `a` after step 1.
    pub step1_a_deviation: f64,
    /// Largest entry-wise deviation of the full-protocol output from its
    /// value at the first scanned phase.
    pub output_deviation: f64,
}

/// Branch-weighted corrected marginal of one register after a run.
fn weighted_marginal(
    transcripts: &[crate::protocol::Transcript],
    keep: &str,
) -> Result<DensityMatrix> {
    let weighted: Vec<(f64, DensityMatrix)> = transcripts
        .iter()
        .map(|t| {
            t.final_state
                .partial_trace(&[Label::new(keep)])
                .map(|rho| (t.probability, rho))
        })
        .collect::<Result<_>>()?;
    mix(&weighted)
}

/// Scan the input phase at fixed `theta` and record how far any observable
/// marginal moves. A scan needs at least two phases to compare.
pub fn phi_scan(theta: f64, phis: &[f64], resource: ResourceKind) -> Result<PhiScan> {
    assert!(phis.len() >= 2, "scan needs at least two phases");
    let mut b_ref: Option<DensityMatrix> = None;
    let mut a_ref: Option<DensityMatrix> = None;
    let mut out_ref: Option<DensityMatrix> = None;
    let mut b_dev = 0.0f64;
    let mut a_dev = 0.0f64;
    let mut out_dev = 0.0f64;

    for &phi in phis {
        let params = BlochParams::new(theta, phi)?;

        let step1 = run_two_step(params, resource, StopAfter::Step1)?;
        let rho_b = weighted_marginal(&step1, "B")?;
        let rho_a = weighted_marginal(&step1, "a")?;

        let full = run_two_step(params, resource, StopAfter::Step2)?;
        let rho_out = weighted_marginal(&full, "B")?;

        match (&b_ref, &a_ref, &out_ref) {
            (None, _, _) => {
                b_ref = Some(rho_b);
                a_ref = Some(rho_a);
                out_ref = Some(rho_out);
            }
            (Some(b0), Some(a0), Some(o0)) => {
                b_dev = b_dev.max(rho_b.max_abs_diff(b0)?);
                a_dev = a_dev.max(rho_a.max_abs_diff(a0)?);
                out_dev = out_dev.max(rho_out.max_abs_diff(o0)?);
            }
            _ => unreachable!("references are set together"),
        }
    }

    Ok(PhiScan {
        theta,
        resource,
        phis: phis.to_vec(),
        step1_b_deviation: b_dev,
        step1_a_deviation: a_dev,
        output_deviation: out_dev,
    })
}

/// One named comparison in an ensemble report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportEntry {
    pub name: String,
    pub observed: f64,
    pub expected: f64,
    pub bound: f64,
    pub pass: bool,
}

impl ReportEntry {
    fn new(name: &str, observed: f64, expected: f64, bound: f64) -> ReportEntry {
        ReportEntry {
            name: name.to_string(),
            observed,
            expected,
            bound,
            pass: (observed - expected).abs() <= bound,
        }
    }
}

/// Enumeration-versus-sampling consistency report.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleReport {
    pub shots: usize,
    pub seed: u64,
    pub entries: Vec<ReportEntry>,
    pub pass: bool,
}

/// Estimate the colatitude by z-measuring Bob's corrected output over
/// sampled standard-protocol runs. Returns the estimate and its
/// three-sigma delta-method bound `3 / (2√N)` (valid away from the poles).
pub fn theta_estimate_ensemble<R: rand::Rng>(
    params: BlochParams,
    shots: usize,
    rng: &mut R,
) -> Result<(f64, f64)> {
    let mut zeros = 0usize;
    for _ in 0..shots {
        let t = sample_standard(params, rng)?;
        let set = t.final_state.measure(&MeasurementBasis::z(), &[Label::new("B")])?;
        let branch = set.sample(rng);
        if branch.outcomes[0].bits[0] == Bit::Zero {
            zeros += 1;
        }
    }
    let freq = zeros as f64 / shots as f64;
    Ok((estimate_theta(freq), 1.5 / (shots as f64).sqrt()))
}

/// Compare sampled protocol statistics against the enumerated branch
/// distribution at the given parameters.
///
/// Exact enumerated identities are checked to the numeric tolerance;
/// sampled frequencies to three-sigma binomial bounds. The theta-estimate
/// entry assumes the input is away from the Bloch poles.
pub fn cross_check(params: BlochParams, seed: u64, shots: usize) -> Result<EnsembleReport> {
    assert!(shots > 0, "ensemble needs at least one shot");
    let seeds = SeedStream::new(seed);
    let mut entries = Vec::new();

    // Enumerated: the Bell branch distribution is exactly uniform.
    let enumerated = run_standard(params)?;
    let max_dev = enumerated
        .iter()
        .map(|t| (t.probability - 0.25).abs())
        .fold(0.0f64, f64::max);
    entries.push(ReportEntry::new(
        "enumerated-branch-uniformity",
        max_dev,
        0.0,
        TOL,
    ));

    // Sampled: standard-protocol branch frequencies against 1/4.
    let sigma_quarter = (0.25 * 0.75 / shots as f64).sqrt();
    let mut rng = seeds.substream(0);
    let mut counts = std::collections::BTreeMap::<String, usize>::new();
    for _ in 0..shots {
        let t = sample_standard(params, &mut rng)?;
        *counts.entry(t.outcome_labels[0].clone()).or_insert(0) += 1;
    }
    let worst_freq_dev = enumerated
        .iter()
        .map(|t| {
            let n = counts.get(&t.outcome_labels[0]).copied().unwrap_or(0);
            (n as f64 / shots as f64 - 0.25).abs()
        })
        .fold(0.0f64, f64::max);
    entries.push(ReportEntry::new(
        "sampled-branch-frequencies",
        worst_freq_dev,
        0.0,
        3.0 * sigma_quarter,
    ));

    // Sampled: the two-step joint outcomes (z-bit of A, x-bit of a) are
    // uniform over the four pairs.
    let mut rng = seeds.substream(1);
    let mut joint = [0usize; 4];
    for _ in 0..shots {
        let t = sample_two_step(params, ResourceKind::Entangled, StopAfter::Step2, &mut rng)?;
        let idx = (t.outcome_bits[0].as_u8() as usize) * 2 + t.outcome_bits[1].as_u8() as usize;
        joint[idx] += 1;
    }
    let worst_joint_dev = joint
        .iter()
        .map(|n| (*n as f64 / shots as f64 - 0.25).abs())
        .fold(0.0f64, f64::max);
    entries.push(ReportEntry::new(
        "sampled-two-step-joint-frequencies",
        worst_joint_dev,
        0.0,
        3.0 * sigma_quarter,
    ));

    // Sampled: the colatitude estimated from Bob's output statistics.
    let mut rng = seeds.substream(2);
    let (theta_hat, bound) = theta_estimate_ensemble(params, shots, &mut rng)?;
    entries.push(ReportEntry::new(
        "sampled-theta-estimate",
        theta_hat,
        params.theta(),
        bound,
    ));

    let pass = entries.iter().all(|e| e.pass);
    Ok(EnsembleReport {
        shots,
        seed,
        entries,
        pass,
    })
}
