//! The verification suite: every library invariant as a named, seeded,
//! deterministic check.
//!
//! Checks come in two flavors. Exact checks compare enumerated quantities
//! against closed forms under the numeric tolerance (or under literal
//! floating-point equality where the arithmetic is arranged to be exact, in
//! which case the bound is 0). Sampled checks pin a seed and compare
//! empirical frequencies under three-sigma binomial bounds, so the whole
//! suite is reproducible bit for bit.

use crate::analysis::{estimate_theta, phi_scan, theta_estimate_ensemble};
use crate::bit::Bit;
use crate::classical::{
    bias_of, enumerate_delocalize, enumerate_otp, p_communicated_zero, p_delocalized_zero,
    p_localized_zero, p_recovered_zero, run_otp, BitSource, CopyDiscipline, SharedKey,
};
use crate::density::{density_from, mix, partial_trace, DensityMatrix};
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::label::Label;
use crate::measure::MeasurementBasis;
use crate::metrics::{concurrence, fidelity_pure};
use crate::protocol::{
    bell_outcome_for, run_standard, run_standard_with, run_two_step, CorrectionTable,
    ResourceKind, StopAfter, Transcript,
};
use crate::rng::{weighted_index, SeedStream};
use crate::state::{bloch_state, BlochParams, StateVector};
use crate::TOL;
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

/// Which group of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Quantum,
    Classical,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Quantum => "quantum",
            Suite::Classical => "classical",
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "all" => Ok(Suite::All),
            "quantum" => Ok(Suite::Quantum),
            "classical" => Ok(Suite::Classical),
            _ => Err(Error::BadSuite(s.to_string())),
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// The measured quantity the check gates on (usually a worst-case
    /// deviation; see `detail`).
    pub observed: f64,
    /// The bound the measured quantity was compared against.
    pub bound: f64,
    pub detail: String,
}

impl CheckResult {
    /// A check that passes when `observed <= bound`.
    fn bounded(name: &str, observed: f64, bound: f64, detail: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            passed: observed <= bound,
            observed,
            bound,
            detail: detail.into(),
        }
    }

    /// A check with an explicitly computed verdict.
    fn judged(
        name: &str,
        passed: bool,
        observed: f64,
        bound: f64,
        detail: impl Into<String>,
    ) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            passed,
            observed,
            bound,
            detail: detail.into(),
        }
    }
}

/// Full report of a suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failing(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn rand_params<R: rand::Rng>(rng: &mut R) -> BlochParams {
    let theta = rng.random::<f64>() * FRAC_PI_2;
    let phi = rng.random::<f64>() * TAU;
    BlochParams::new(theta, phi).expect("generated in range")
}

fn label(name: &str) -> Label {
    Label::new(name)
}

const P_GRID: [f64; 7] = [0.0, 0.1, 0.3, 0.5, 0.77, 0.9, 1.0];

// ---------------------------------------------------------------------------
// Quantum checks
// ---------------------------------------------------------------------------

fn random_three_qubit_state<R: rand::Rng>(rng: &mut R) -> StateVector {
    // A product of Bloch states; check bodies entangle it with gates.
    let s_a = bloch_state(rand_params(rng), "a");
    let s_b = bloch_state(rand_params(rng), "A");
    let s_c = bloch_state(rand_params(rng), "B");
    s_a.tensor(&s_b).unwrap().tensor(&s_c).unwrap()
}

fn apply_random_gates<R: rand::Rng>(state: &StateVector, n: usize, rng: &mut R) -> StateVector {
    let labels = [label("a"), label("A"), label("B")];
    let mut s = state.clone();
    for _ in 0..n {
        match rng.random_range(0..4u32) {
            0 => {
                let t = &labels[rng.random_range(0..3usize)];
                s = crate::gate::apply_gate(&s, &Gate::h(), std::slice::from_ref(t)).unwrap();
            }
            1 => {
                let t = &labels[rng.random_range(0..3usize)];
                s = crate::gate::apply_gate(&s, &Gate::x(), std::slice::from_ref(t)).unwrap();
            }
            2 => {
                let t = &labels[rng.random_range(0..3usize)];
                s = crate::gate::apply_gate(&s, &Gate::z(), std::slice::from_ref(t)).unwrap();
            }
            _ => {
                let c = rng.random_range(0..3usize);
                let mut t = rng.random_range(0..3usize);
                while t == c {
                    t = rng.random_range(0..3usize);
                }
                s = crate::gate::apply_gate(
                    &s,
                    &Gate::cnot(),
                    &[labels[c].clone(), labels[t].clone()],
                )
                .unwrap();
            }
        }
    }
    s
}

fn check_norm_preservation(seeds: &SeedStream) -> Result<CheckResult> {
    let mut rng = seeds.substream(0);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let mut s = random_three_qubit_state(&mut rng);
        for _ in 0..6 {
            s = apply_random_gates(&s, 1, &mut rng);
            worst = worst.max((s.norm_sqr() - 1.0).abs());
        }
    }
    Ok(CheckResult::bounded(
        "norm-preservation",
        worst,
        TOL,
        "max |norm^2 - 1| over 50 random states x 6 random gates each",
    ))
}

fn check_born_completeness(seeds: &SeedStream) -> Result<CheckResult> {
    let mut rng = seeds.substream(1);
    let mut worst = 0.0f64;
    for _ in 0..30 {
        let s = apply_random_gates(&random_three_qubit_state(&mut rng), 5, &mut rng);
        let q = crate::qstate::QuantumState::Pure(s);
        let cases: Vec<(MeasurementBasis, Vec<Label>)> = vec![
            (MeasurementBasis::z(), vec![label("a")]),
            (MeasurementBasis::x(), vec![label("A")]),
            (MeasurementBasis::bell(), vec![label("a"), label("B")]),
            (MeasurementBasis::bell(), vec![label("B"), label("A")]),
            (MeasurementBasis::z(), vec![label("B")]),
        ];
        for (basis, targets) in cases {
            let set = q.measure(&basis, &targets)?;
            let total: f64 = set.branches().iter().map(|b| b.probability).sum();
            worst = worst.max((total - 1.0).abs());
        }
    }
    Ok(CheckResult::bounded(
        "born-completeness",
        worst,
        TOL,
        "max |sum of branch probabilities - 1| over random states and bases",
    ))
}

fn check_bell_branch_uniformity(seeds: &SeedStream) -> Result<CheckResult> {
    let mut rng = seeds.substream(2);
    let mut worst = 0.0f64;
    let mut count_ok = true;
    for _ in 0..100 {
        let ts = run_standard(rand_params(&mut rng))?;
        count_ok &= ts.len() == 4;
        for t in &ts {
            worst = worst.max((t.probability - 0.25).abs());
        }
    }
    Ok(CheckResult::judged(
        "bell-branch-uniformity",
        count_ok && worst <= TOL,
        worst,
        TOL,
        "standard protocol yields exactly 4 branches of probability (1/4, 1/4, 1/4, 1/4); \
         max |p - 1/4| over 100 random inputs",
    ))
}

/// Teleportation correctness over `trials` random inputs with an explicit
/// correction table. Public so the corrupted-table fixture can be driven
/// from tests.
pub fn check_teleportation_correctness(
    table: &CorrectionTable,
    trials: usize,
    seed: u64,
) -> Result<CheckResult> {
    let mut rng = SeedStream::new(seed).substream(3);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        for t in run_standard_with(rand_params(&mut rng), table)? {
            worst = worst.max((1.0 - t.fidelity_to_target()?).abs());
        }
    }
    Ok(CheckResult::bounded(
        "teleportation-correctness",
        worst,
        TOL,
        format!("max |1 - fidelity| over all branches of {trials} random inputs"),
    ))
}

fn match_branches<'a>(
    two_step: &'a Transcript,
    standard: &'a [Transcript],
) -> &'a Transcript {
    let kind = bell_outcome_for(two_step.outcome_bits[0], two_step.outcome_bits[1]);
    standard
        .iter()
        .find(|s| s.outcome_labels[0] == kind.label())
        .expect("all four bell branches present")
}

fn ray_gap(a: &crate::qstate::QuantumState, b: &crate::qstate::QuantumState) -> Result<f64> {
    let (crate::qstate::QuantumState::Pure(x), crate::qstate::QuantumState::Pure(y)) = (a, b)
    else {
        // Entangled-resource runs stay pure; anything else is a failure.
        return Ok(1.0);
    };
    Ok((1.0 - fidelity_pure(x, y)?).abs())
}

fn check_two_step_equivalence(seeds: &SeedStream) -> Result<CheckResult> {
    let mut rng = seeds.substream(4);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p = rand_params(&mut rng);
        let standard = run_standard(p)?;
        for t in run_two_step(p, ResourceKind::Entangled, StopAfter::Step2)? {
            let partner = match_branches(&t, &standard);
            worst = worst.max((t.probability - partner.probability).abs());
            worst = worst.max(ray_gap(&t.final_state, &partner.final_state)?);
        }
    }
    Ok(CheckResult::bounded(
        "two-step-equivalence",
        worst,
        TOL,
        "corrected branch set of the two-step run matches the standard protocol \
         under (z, x) -> Bell outcome, over 100 random inputs",
    ))
}

fn check_measurement_order_equivalence(seeds: &SeedStream) -> Result<CheckResult> {
    let mut rng = seeds.substream(5);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p = rand_params(&mut rng);
        let standard = run_standard(p)?;
        for t in run_two_step(p, ResourceKind::Entangled, StopAfter::Step2)? {
            let partner = match_branches(&t, &standard);
            worst = worst.max((t.probability - partner.probability).abs());
            worst = worst.max(ray_gap(&t.uncorrected_state, &partner.uncorrected_state)?);
        }
    }
    Ok(CheckResult::bounded(
        "measurement-order-equivalence",
        worst,
        TOL,
        "CNOT + z then x measurements give the same uncorrected (probability, B-state) \
         set as one Bell measurement, over 100 random inputs",
    ))
}

fn check_global_phase_robustness(seeds: &SeedStream) -> Result<CheckResult> {
    let mut rng = seeds.substream(6);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let p = rand_params(&mut rng);
        let alpha = rng.random::<f64>() * TAU;
        let s = bloch_state(p, "a");
        let shifted = s.with_global_phase(alpha);
        worst = worst.max(density_from(&s).max_abs_diff(&density_from(&shifted))?);
        worst = worst.max((fidelity_pure(&s, &shifted)? - 1.0).abs());
    }
    Ok(CheckResult::bounded(
        "global-phase-robustness",
        worst,
        TOL,
        "density matrices and fidelity are invariant under a unit scalar on the state",
    ))
}

fn check_partial_trace_consistency(seeds: &SeedStream) -> Result<CheckResult> {
    let mut rng = seeds.substream(7);
    let mut worst = 0.0f64;
    for _ in 0..30 {
        let s = apply_random_gates(&random_three_qubit_state(&mut rng), 5, &mut rng);
        let rho = density_from(&s);
        for keep in [
            vec![label("a")],
            vec![label("A")],
            vec![label("B")],
            vec![label("a"), label("B")],
            vec![label("A"), label("B")],
        ] {
            let reduced = partial_trace(&rho, &keep)?;
            worst = worst.max((reduced.trace().re - 1.0).abs());
            worst = worst.max(reduced.trace().im.abs());
        }
        // Tracing out in two stages agrees with tracing out at once.
        let via_two = partial_trace(&partial_trace(&rho, &[label("a"), label("B")])?, &[label("B")])?;
        let direct = partial_trace(&rho, &[label("B")])?;
        worst = worst.max(via_two.max_abs_diff(&direct)?);
    }
    Ok(CheckResult::bounded(
        "partial-trace-consistency",
        worst,
        TOL,
        "partial traces have unit trace and compose (iterated = direct)",
    ))
}

fn check_zero_branch_omission() -> Result<CheckResult> {
    let mut violations = 0usize;
    // At the poles one z-outcome has probability exactly 0 and must vanish
    // from the branch set.
    let pole0 = crate::qstate::QuantumState::Pure(bloch_state(
        BlochParams::new(0.0, 0.0)?,
        "a",
    ));
    let set = pole0.measure(&MeasurementBasis::z(), &[label("a")])?;
    if set.len() != 1 || (set.branches()[0].probability - 1.0).abs() > TOL {
        violations += 1;
    }
    if set.branches()[0].outcomes[0].bits != vec![Bit::Zero] {
        violations += 1;
    }
    let pole1 = crate::qstate::QuantumState::Pure(bloch_state(
        BlochParams::new(FRAC_PI_2, 1.0)?,
        "a",
    ));
    let set = pole1.measure(&MeasurementBasis::z(), &[label("a")])?;
    if set.len() != 1 || set.branches()[0].outcomes[0].bits != vec![Bit::One] {
        violations += 1;
    }
    // The x-basis analogue: |+> has no "-" branch.
    let plus = crate::qstate::QuantumState::Pure(bloch_state(
        BlochParams::new(FRAC_PI_4, 0.0)?,
        "a",
    ));
    let set = plus.measure(&MeasurementBasis::x(), &[label("a")])?;
    if set.len() != 1 || set.branches()[0].outcomes[0].label != "+" {
        violations += 1;
    }
    Ok(CheckResult::bounded(
        "zero-branch-omission",
        violations as f64,
        0.0,
        "zero-probability branches are omitted from enumerated branch sets",
    ))
}

fn check_parameter_validation() -> Result<CheckResult> {
    let mut violations = 0usize;
    for (theta, phi, ok) in [
        (-0.1, 0.0, false),
        (1.6, 0.0, false),
        (0.3, -0.1, false),
        (0.3, TAU, false),
        (f64::NAN, 0.0, false),
        (0.3, f64::NAN, false),
        (0.0, 0.0, true),
        (FRAC_PI_2, 0.0, true),
        (0.3, 6.2, true),
    ] {
        if BlochParams::new(theta, phi).is_ok() != ok {
            violations += 1;
        }
    }
    Ok(CheckResult::bounded(
        "parameter-validation",
        violations as f64,
        0.0,
        "theta outside [0, pi/2] or phi outside [0, 2pi) is rejected, not canonicalized",
    ))
}

fn check_step1_marginal() -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for resource in [ResourceKind::Entangled, ResourceKind::ClassicalCorrelated] {
        for i in 0..50 {
            let theta = FRAC_PI_2 * i as f64 / 49.0;
            let p = BlochParams::new(theta, 1.3)?;
            for t in run_two_step(p, resource, StopAfter::Step1)? {
                let rho_b = t.final_b_density()?;
                worst = worst.max((rho_b.entry(0, 0).re - theta.cos().powi(2)).abs());
                worst = worst.max((rho_b.entry(1, 1).re - theta.sin().powi(2)).abs());
                worst = worst.max(rho_b.entry(0, 1).norm());
                worst = worst.max(rho_b.entry(1, 0).norm());
            }
        }
    }
    Ok(CheckResult::bounded(
        "step1-marginal",
        worst,
        TOL,
        "rho_B after step 1 equals diag(cos^2 theta, sin^2 theta) on a 50-point grid, \
         both resources",
    ))
}

fn check_phi_inaccessibility() -> Result<CheckResult> {
    let phis = [0.0, 1.0, 2.0, 3.0, FRAC_PI_2, PI];
    let mut worst = 0.0f64;
    for resource in [ResourceKind::Entangled, ResourceKind::ClassicalCorrelated] {
        for theta in [0.0, 0.3, FRAC_PI_4, 1.2, FRAC_PI_2] {
            let scan = phi_scan(theta, &phis, resource)?;
            worst = worst.max(scan.step1_b_deviation);
            worst = worst.max(scan.step1_a_deviation);
        }
    }
    Ok(CheckResult::bounded(
        "phi-inaccessibility",
        worst,
        TOL,
        "after step 1 neither rho_B nor rho_a depends on the input phase",
    ))
}

fn check_phi_transport_step2() -> Result<CheckResult> {
    // Contrast check: the full entangled run must move the output across the
    // phase scan, while the classical run must not.
    let phis = [0.0, 2.0];
    let entangled = phi_scan(FRAC_PI_4, &phis, ResourceKind::Entangled)?.output_deviation;
    let classical =
        phi_scan(FRAC_PI_4, &phis, ResourceKind::ClassicalCorrelated)?.output_deviation;
    let threshold = 0.5;
    Ok(CheckResult::judged(
        "phi-transport-step2",
        entangled > threshold && classical <= TOL,
        entangled,
        threshold,
        format!(
            "entangled full-run outputs must differ across the phase scan (observed must \
             EXCEED the bound here); classical counterpart stays put (deviation {classical:.2e})"
        ),
    ))
}

fn check_entanglement_bookkeeping() -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for i in 0..25 {
        let theta = FRAC_PI_2 * i as f64 / 24.0;
        let p = BlochParams::new(theta, 0.7)?;
        // Entangled resource: concurrence moves from (A,B) to (a,B).
        let initial = crate::qstate::QuantumState::Pure(bloch_state(p, "a"))
            .tensor(&crate::protocol::make_resource(ResourceKind::Entangled))?;
        let before = concurrence(&initial.partial_trace(&[label("A"), label("B")])?)?;
        worst = worst.max((before - 1.0).abs());
        for t in run_two_step(p, ResourceKind::Entangled, StopAfter::Step1)? {
            let after = concurrence(&t.final_state.to_density())?;
            worst = worst.max((after - (2.0 * theta).sin().abs()).abs());
        }
        // Classical resource: identically zero at both stages.
        let initial = crate::qstate::QuantumState::Pure(bloch_state(p, "a"))
            .tensor(&crate::protocol::make_resource(ResourceKind::ClassicalCorrelated))?;
        worst = worst.max(concurrence(&initial.partial_trace(&[label("A"), label("B")])?)?);
        for t in run_two_step(p, ResourceKind::ClassicalCorrelated, StopAfter::Step1)? {
            worst = worst.max(concurrence(&t.final_state.to_density())?);
        }
    }
    Ok(CheckResult::bounded(
        "entanglement-bookkeeping",
        worst,
        1e-9,
        "concurrence(A,B) = 1 before step 1 and concurrence(a,B) = |sin 2 theta| after; \
         0 throughout with the classical resource",
    ))
}

fn check_classical_step2_failure() -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for i in 0..50 {
        let theta = FRAC_PI_2 * i as f64 / 49.0;
        let p = BlochParams::new(theta, 2.1)?;
        let expect = theta.cos().powi(4) + theta.sin().powi(4);
        for t in run_two_step(p, ResourceKind::ClassicalCorrelated, StopAfter::Step2)? {
            worst = worst.max((t.fidelity_to_target()? - expect).abs());
        }
    }
    Ok(CheckResult::bounded(
        "classical-step2-failure",
        worst,
        TOL,
        "classical-resource full run ends at fidelity cos^4 + sin^4 (1/2 at theta = pi/4)",
    ))
}

fn check_resource_indistinguishability() -> Result<CheckResult> {
    // Everything Bob can observe locally after step 1 is identical for the
    // two resources: branch probabilities and his reduced state, branch for
    // branch.
    let mut worst = 0.0f64;
    for i in 0..25 {
        let theta = FRAC_PI_2 * i as f64 / 24.0;
        let p = BlochParams::new(theta, 0.9)?;
        let ent = run_two_step(p, ResourceKind::Entangled, StopAfter::Step1)?;
        let cl = run_two_step(p, ResourceKind::ClassicalCorrelated, StopAfter::Step1)?;
        for (e, c) in ent.iter().zip(&cl) {
            assert_eq!(e.outcome_labels, c.outcome_labels);
            worst = worst.max((e.probability - c.probability).abs());
            worst = worst.max(e.final_b_density()?.max_abs_diff(&c.final_b_density()?)?);
        }
    }
    Ok(CheckResult::bounded(
        "resource-indistinguishability",
        worst,
        TOL,
        "Bob's step-1 branch probabilities and reduced states cannot tell the \
         entangled resource from the classical one",
    ))
}

fn check_message_unbiasedness(seeds: &SeedStream) -> Result<CheckResult> {
    let mut rng = seeds.substream(16);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let p = rand_params(&mut rng);
        let mut runs = vec![run_standard(p)?];
        for resource in [ResourceKind::Entangled, ResourceKind::ClassicalCorrelated] {
            runs.push(run_two_step(p, resource, StopAfter::Step2)?);
        }
        for ts in runs {
            for pos in 0..2 {
                let p0: f64 = ts
                    .iter()
                    .filter(|t| t.outcome_bits[pos] == Bit::Zero)
                    .map(|t| t.probability)
                    .sum();
                worst = worst.max((p0 - 0.5).abs());
            }
        }
    }
    Ok(CheckResult::bounded(
        "message-unbiasedness",
        worst,
        TOL,
        "every classical bit Alice sends is 0 with probability exactly 1/2, \
         independent of the input",
    ))
}

fn check_no_signaling(seeds: &SeedStream) -> Result<CheckResult> {
    let mut rng = seeds.substream(17);
    let mut worst = 0.0f64;
    for _ in 0..30 {
        let p = rand_params(&mut rng);
        let runs: Vec<(Vec<Transcript>, ResourceKind)> = vec![
            (run_standard(p)?, ResourceKind::Entangled),
            (
                run_two_step(p, ResourceKind::Entangled, StopAfter::Step2)?,
                ResourceKind::Entangled,
            ),
            (
                run_two_step(p, ResourceKind::ClassicalCorrelated, StopAfter::Step2)?,
                ResourceKind::ClassicalCorrelated,
            ),
        ];
        for (ts, resource) in runs {
            let initial = crate::qstate::QuantumState::Pure(bloch_state(p, "a"))
                .tensor(&crate::protocol::make_resource(resource))?;
            let prior = initial.partial_trace(&[label("B")])?;
            let weighted: Vec<(f64, DensityMatrix)> = ts
                .iter()
                .map(|t| Ok((t.probability, t.uncorrected_b_density()?)))
                .collect::<Result<_>>()?;
            let posterior = mix(&weighted)?;
            worst = worst.max(posterior.max_abs_diff(&prior)?);
        }
    }
    Ok(CheckResult::bounded(
        "no-signaling",
        worst,
        TOL,
        "before corrections, the branch mixture of rho_B equals the pre-measurement \
         marginal for every protocol and resource",
    ))
}

fn check_estimator_consistency() -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for i in 0..=100 {
        let theta = FRAC_PI_2 * i as f64 / 100.0;
        worst = worst.max((estimate_theta(theta.cos().powi(2)) - theta).abs());
    }
    Ok(CheckResult::bounded(
        "estimator-consistency",
        worst,
        TOL,
        "arccos(sqrt(f0)) inverts exact probabilities on a 100-point theta grid",
    ))
}

fn check_sampling_consistency(seeds: &SeedStream) -> Result<CheckResult> {
    // Draw branch indices from the enumerated distribution at three shot
    // counts; every frequency must sit within its own 3-sigma bound. The
    // observed value is the worst deviation measured in units of the bound.
    let p = BlochParams::new(0.7, 1.9)?;
    let ts = run_standard(p)?;
    let weights: Vec<f64> = ts.iter().map(|t| t.probability).collect();
    let mut rng = seeds.substream(18);
    let mut worst_ratio = 0.0f64;
    let mut detail = String::from("max |freq - 1/4| / (3 sigma) at shots = ");
    for (i, shots) in [1_000usize, 10_000, 100_000].into_iter().enumerate() {
        let mut counts = [0usize; 4];
        for _ in 0..shots {
            counts[weighted_index(&weights, &mut rng)] += 1;
        }
        let bound = 3.0 * (0.25 * 0.75 / shots as f64).sqrt();
        let dev = counts
            .iter()
            .map(|n| (*n as f64 / shots as f64 - 0.25).abs())
            .fold(0.0f64, f64::max);
        worst_ratio = worst_ratio.max(dev / bound);
        if i > 0 {
            detail.push_str(", ");
        }
        detail.push_str(&shots.to_string());
    }
    Ok(CheckResult::bounded(
        "sampling-consistency",
        worst_ratio,
        1.0,
        detail,
    ))
}

fn check_theta_estimation_sampled(seeds: &SeedStream) -> Result<CheckResult> {
    let theta = 0.9;
    let p = BlochParams::new(theta, 2.2)?;
    let shots = 4000;
    let mut rng = seeds.substream(19);
    let (hat, bound) = theta_estimate_ensemble(p, shots, &mut rng)?;
    Ok(CheckResult::bounded(
        "theta-estimation-sampled",
        (hat - theta).abs(),
        bound,
        format!("|theta_hat - theta| from {shots} sampled runs vs the 3/(2 sqrt(N)) bound"),
    ))
}

// ---------------------------------------------------------------------------
// Classical checks
// ---------------------------------------------------------------------------

fn check_otp_correctness() -> Result<CheckResult> {
    let mut rows_ok = true;
    let mut worst = 0.0f64;
    for p in P_GRID {
        let rows = enumerate_otp(p)?;
        rows_ok &= rows.len() == 4;
        for row in &rows {
            rows_ok &= row.recovered == row.a;
            rows_ok &= row.key_a == row.key_b;
        }
        worst = worst.max((p_recovered_zero(&rows) - p).abs());
    }
    Ok(CheckResult::judged(
        "otp-correctness",
        rows_ok && worst == 0.0,
        worst,
        0.0,
        "recovered = input in every enumerated row; P(recovered = 0) equals the \
         input bias with zero floating-point error",
    ))
}

fn check_otp_unbiasedness() -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for p in P_GRID {
        let rows = enumerate_otp(p)?;
        worst = worst.max((p_communicated_zero(&rows) - 0.5).abs());
    }
    Ok(CheckResult::bounded(
        "otp-unbiasedness",
        worst,
        0.0,
        "P(communicated = 0) is exactly 1/2 for every input bias (zero error bound)",
    ))
}

fn check_otp_independence() -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for p in P_GRID {
        let rows = enumerate_otp(p)?;
        for a in Bit::ALL {
            for c in Bit::ALL {
                let joint: f64 = rows
                    .iter()
                    .filter(|r| r.a == a && r.communicated == c)
                    .map(|r| r.probability)
                    .sum();
                let pa: f64 = rows
                    .iter()
                    .filter(|r| r.a == a)
                    .map(|r| r.probability)
                    .sum();
                let pc: f64 = rows
                    .iter()
                    .filter(|r| r.communicated == c)
                    .map(|r| r.probability)
                    .sum();
                worst = worst.max((joint - pa * pc).abs());
            }
        }
    }
    Ok(CheckResult::bounded(
        "otp-independence",
        worst,
        0.0,
        "the joint distribution of (input, communicated) factorizes exactly: \
         P(a, c) = P(a) P(c) for every bias",
    ))
}

fn check_key_one_time(seeds: &SeedStream) -> Result<CheckResult> {
    let mut violations = 0usize;
    let mut rng = seeds.substream(24);
    let mut key = SharedKey::generate(5, &mut rng);
    for _ in 0..5 {
        if key.next_pair().is_err() {
            violations += 1;
        }
    }
    if !matches!(key.next_pair(), Err(Error::KeyExhausted)) {
        violations += 1;
    }
    // A run demanding more shots than key pairs must fail, not reuse pairs.
    let source = BitSource::new(0.5)?;
    let mut short = SharedKey::generate(3, &mut rng);
    let mut rng2 = seeds.substream(25);
    if !matches!(
        run_otp(&source, &mut short, 4, CopyDiscipline::Destroy, &mut rng2),
        Err(Error::KeyExhausted)
    ) {
        violations += 1;
    }
    Ok(CheckResult::bounded(
        "key-one-time",
        violations as f64,
        0.0,
        "every key pair is consumed at most once; exhaustion is an error, never reuse",
    ))
}

fn check_copy_discipline_equivalence(seeds: &SeedStream) -> Result<CheckResult> {
    let source = BitSource::new(0.7)?;
    let shots = 256;
    let run = |discipline| -> Result<crate::classical::OtpRun> {
        let mut key = SharedKey::generate(shots, &mut seeds.substream(26));
        let mut rng = seeds.substream(27);
        run_otp(&source, &mut key, shots, discipline, &mut rng)
    };
    let kept = run(CopyDiscipline::Keep)?;
    let destroyed = run(CopyDiscipline::Destroy)?;
    let equal = crate::classical::records_equal_modulo_copy(&kept.records, &destroyed.records);
    let copies_ok = kept.records.iter().all(|r| r.input_copy == Some(r.input))
        && destroyed.records.iter().all(|r| r.input_copy.is_none());
    Ok(CheckResult::judged(
        "copy-discipline-equivalence",
        equal && copies_ok,
        if equal && copies_ok { 0.0 } else { 1.0 },
        0.0,
        "destroying Alice's copy after encoding changes nothing Bob observes",
    ))
}

fn check_distribution_transport(seeds: &SeedStream) -> Result<CheckResult> {
    // Exact half: the enumerated recovered distribution equals the source
    // distribution bit for bit.
    let mut exact_ok = true;
    for p in P_GRID {
        let rows = enumerate_otp(p)?;
        exact_ok &= p_recovered_zero(&rows) == p;
    }
    // Sampled half: a seeded run reproduces the bias within 3 sigma.
    let p = 0.3;
    let shots = 10_000;
    let source = BitSource::new(p)?;
    let mut key = SharedKey::generate(shots, &mut seeds.substream(28));
    let mut rng = seeds.substream(29);
    let run = run_otp(&source, &mut key, shots, CopyDiscipline::Destroy, &mut rng)?;
    let (freq, _) = bias_of(&run.recovered_bits())?;
    let bound = 3.0 * (p * (1.0 - p) / shots as f64).sqrt();
    let dev = (freq - p).abs();
    Ok(CheckResult::judged(
        "distribution-transport",
        exact_ok && dev <= bound && run.transport_accuracy() == 1.0,
        dev,
        bound,
        "Bob samples the source exactly: enumerated P(recovered = 0) = p with zero \
         error, and a 10^4-shot seeded run lands within 3 sigma",
    ))
}

fn check_delocalize_truth_table() -> Result<CheckResult> {
    let mut violations = 0usize;
    let rows = enumerate_delocalize(0.5)?;
    let expect: [(u8, u8, u8, u8, u8); 4] = [
        (0, 0, 0, 0, 0),
        (0, 1, 1, 1, 0),
        (1, 0, 0, 1, 1),
        (1, 1, 1, 0, 1),
    ];
    if rows.len() != 4 {
        violations += 1;
    }
    for (row, (d, x, y, xt, back)) in rows.iter().zip(expect) {
        if row.probability != 0.25
            || row.d.as_u8() != d
            || row.x.as_u8() != x
            || row.y.as_u8() != y
            || row.x_tilde.as_u8() != xt
            || row.x_tilde_xor_y.as_u8() != back
        {
            violations += 1;
        }
    }
    // Parity recovers d at every bias, not just the fair one.
    for p in P_GRID {
        for row in enumerate_delocalize(p)? {
            if row.x_tilde_xor_y != row.d || row.y != row.x {
                violations += 1;
            }
        }
    }
    Ok(CheckResult::bounded(
        "delocalize-truth-table",
        violations as f64,
        0.0,
        "the four delocalization rows are reproduced exactly and the parity column \
         equals the data bit at every bias",
    ))
}

fn check_delocalize_unbiasedness() -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for p in P_GRID {
        let rows = enumerate_delocalize(p)?;
        worst = worst.max((p_delocalized_zero(&rows) - 0.5).abs());
    }
    Ok(CheckResult::bounded(
        "delocalize-unbiasedness",
        worst,
        0.0,
        "P(delocalized bit = 0) is exactly 1/2 for every data bias (zero error bound)",
    ))
}

fn check_localize_roundtrip() -> Result<CheckResult> {
    let mut violations = 0usize;
    for d in Bit::ALL {
        for x in Bit::ALL {
            if crate::classical::localize(crate::classical::delocalize(d, x), x) != d {
                violations += 1;
            }
            if crate::classical::otp_decode(crate::classical::otp_encode(d, x), x) != d {
                violations += 1;
            }
        }
    }
    let mut worst = 0.0f64;
    for p in P_GRID {
        let rows = enumerate_delocalize(p)?;
        worst = worst.max((p_localized_zero(&rows) - p).abs());
    }
    Ok(CheckResult::judged(
        "localize-roundtrip",
        violations == 0 && worst == 0.0,
        worst,
        0.0,
        "localize after delocalize is the identity on all inputs and transports \
         the exact distribution",
    ))
}

fn check_bias_estimator(seeds: &SeedStream) -> Result<CheckResult> {
    if !matches!(bias_of(&[]), Err(Error::EmptyStream)) {
        return Ok(CheckResult::judged(
            "bias-estimator",
            false,
            1.0,
            0.0,
            "empty streams must be rejected",
        ));
    }
    let source = BitSource::new(0.5)?;
    let mut rng = seeds.substream(30);
    let stream: Vec<Bit> = (0..100_000).map(|_| source.sample(&mut rng)).collect();
    let (freq, sigma) = bias_of(&stream)?;
    Ok(CheckResult::bounded(
        "bias-estimator",
        (freq - 0.5).abs(),
        3.0 * sigma,
        "10^5 fair seeded bits land within 3 sigma of 1/2; empty streams error",
    ))
}

fn check_bit_source_validation(seeds: &SeedStream) -> Result<CheckResult> {
    let mut violations = 0usize;
    for bad in [-0.1, 1.1, f64::NAN] {
        if BitSource::new(bad).is_ok() {
            violations += 1;
        }
    }
    if BitSource::new(0.0).is_err() || BitSource::new(1.0).is_err() {
        violations += 1;
    }
    // Honestly generated keys are perfectly correlated and unbiased.
    let mut rng = seeds.substream(31);
    let n = 10_000;
    let mut key = SharedKey::generate(n, &mut rng);
    let mut a_bits = Vec::with_capacity(n);
    for _ in 0..n {
        let (ka, kb) = key.next_pair()?;
        if ka != kb {
            violations += 1;
        }
        a_bits.push(ka);
    }
    let (freq, _) = bias_of(&a_bits)?;
    let bound = 3.0 * (0.25 / n as f64).sqrt();
    Ok(CheckResult::judged(
        "bit-source-validation",
        violations == 0 && (freq - 0.5).abs() <= bound,
        (freq - 0.5).abs(),
        bound,
        "source biases outside [0, 1] are rejected; generated keys are correlated \
         (A = B) with an unbiased marginal",
    ))
}

// ---------------------------------------------------------------------------
// Suite driver
// ---------------------------------------------------------------------------

fn quantum_checks(
    seeds: &SeedStream,
    seed: u64,
    table: &CorrectionTable,
) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_norm_preservation(seeds)?,
        check_born_completeness(seeds)?,
        check_bell_branch_uniformity(seeds)?,
        check_teleportation_correctness(table, 1000, seed)?,
        check_two_step_equivalence(seeds)?,
        check_measurement_order_equivalence(seeds)?,
        check_global_phase_robustness(seeds)?,
        check_partial_trace_consistency(seeds)?,
        check_zero_branch_omission()?,
        check_parameter_validation()?,
        check_step1_marginal()?,
        check_phi_inaccessibility()?,
        check_phi_transport_step2()?,
        check_entanglement_bookkeeping()?,
        check_classical_step2_failure()?,
        check_resource_indistinguishability()?,
        check_message_unbiasedness(seeds)?,
        check_no_signaling(seeds)?,
        check_estimator_consistency()?,
        check_sampling_consistency(seeds)?,
        check_theta_estimation_sampled(seeds)?,
    ])
}

fn classical_checks(seeds: &SeedStream) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_otp_correctness()?,
        check_otp_unbiasedness()?,
        check_otp_independence()?,
        check_key_one_time(seeds)?,
        check_copy_discipline_equivalence(seeds)?,
        check_distribution_transport(seeds)?,
        check_delocalize_truth_table()?,
        check_delocalize_unbiasedness()?,
        check_localize_roundtrip()?,
        check_bias_estimator(seeds)?,
        check_bit_source_validation(seeds)?,
    ])
}

/// Run the selected suite deterministically under the given master seed.
pub fn run_suite(suite: Suite, seed: u64) -> Result<VerifyReport> {
    run_suite_with_table(suite, seed, &CorrectionTable::standard())
}

/// Variant of [`run_suite`] that lets callers substitute the correction table
/// used by the teleportation-correctness check. Intended for exercising the
/// failure path: a deliberately corrupted table must make that check fail.
pub fn run_suite_with_table(
    suite: Suite,
    seed: u64,
    table: &CorrectionTable,
) -> Result<VerifyReport> {
    let seeds = SeedStream::new(seed);
    let mut checks = Vec::new();
    if matches!(suite, Suite::All | Suite::Quantum) {
        checks.extend(quantum_checks(&seeds, seed, table)?);
    }
    if matches!(suite, Suite::All | Suite::Classical) {
        checks.extend(classical_checks(&seeds)?);
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        suite,
        seed,
        checks,
        passed,
    })
}
