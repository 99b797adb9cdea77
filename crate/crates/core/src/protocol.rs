//! Teleportation as explicit two-party protocols with a recorded classical
//! channel.
//!
//! Three procedures are provided:
//!
//! * [`run_standard`] — Bell measurement on (a, A), one two-bit message,
//!   Pauli correction on B;
//! * [`run_two_step`] — CNOT(a→A) followed by a z-measurement of A (step 1,
//!   one bit, optional σ_x correction) and an x-measurement of a (step 2,
//!   one bit, optional σ_z correction);
//! * the two-step variant on a classically correlated resource, which runs
//!   the identical circuit on a mixed state.
//!
//! Alice holds `a` and `A`; Bob holds `B`. Every run records gate
//! applications, measurement outcomes, messages, and corrections in causal
//! order, and keeps both the corrected and the uncorrected post-states so
//! no-signaling checks can reconstruct Bob's pre-message marginal.

use crate::bit::Bit;
use crate::density::mix_pure;
use crate::error::Result;
use crate::gate::Gate;
use crate::label::{Label, Register};
use crate::measure::{BasisKind, MeasurementBasis};
use crate::qstate::QuantumState;
use crate::rng;
use crate::state::{basis_state, bell_state, bloch_state, Bell, BlochParams};

/// The two protocol parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    pub fn name(&self) -> &'static str {
        match self {
            Party::Alice => "Alice",
            Party::Bob => "Bob",
        }
    }
}

impl std::fmt::Display for Party {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which shared resource the parties start from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResourceKind {
    /// The maximally entangled pair `|Φ+⟩_AB`.
    Entangled,
    /// The separable mixture `½|00⟩⟨00| + ½|11⟩⟨11|` on (A, B).
    ClassicalCorrelated,
}

impl ResourceKind {
    pub fn name(&self) -> &'static str {
        match self {
            ResourceKind::Entangled => "entangled",
            ResourceKind::ClassicalCorrelated => "classical",
        }
    }
}

impl std::fmt::Display for ResourceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a two-step run stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopAfter {
    Step1,
    Step2,
}

/// A classical message on the recorded channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalMessage {
    pub sender: Party,
    pub receiver: Party,
    pub bits: Vec<Bit>,
    pub step_tag: String,
}

/// One causally ordered protocol event.
#[derive(Debug, Clone, PartialEq)]
pub enum Event {
    GateApplied {
        gate: String,
        targets: Vec<Label>,
    },
    Measured {
        basis: BasisKind,
        targets: Vec<Label>,
        outcome: String,
        bits: Vec<Bit>,
    },
    MessageSent(ClassicalMessage),
    CorrectionApplied {
        gate: String,
        target: Label,
    },
}

/// The correction Bob applies for each Bell outcome.
///
/// The standard table is Φ+→[I], Φ−→[σ_z], Ψ+→[σ_x], Ψ−→[σ_x then σ_z];
/// the last equals σ_y up to a global phase, which fidelity-based comparison
/// ignores. A deliberately corrupted table (X and Z swapped) is available as
/// a test fixture for the verification suite.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionTable {
    x_gate: Gate,
    z_gate: Gate,
}

impl CorrectionTable {
    /// The correct table.
    pub fn standard() -> CorrectionTable {
        CorrectionTable {
            x_gate: Gate::x(),
            z_gate: Gate::z(),
        }
    }

    /// Mutation fixture: the roles of σ_x and σ_z swapped. Teleportation
    /// correctness must fail under this table.
    pub fn swapped_x_z() -> CorrectionTable {
        CorrectionTable {
            x_gate: Gate::z(),
            z_gate: Gate::x(),
        }
    }

    /// Gate sequence for a Bell outcome, applied left to right.
    pub fn gates_for(&self, outcome: Bell) -> Vec<Gate> {
        let [flip, phase] = outcome.bits();
        let mut gates = Vec::new();
        if flip.is_one() {
            gates.push(self.x_gate.clone());
        }
        if phase.is_one() {
            gates.push(self.z_gate.clone());
        }
        if gates.is_empty() {
            gates.push(Gate::identity());
        }
        gates
    }
}

/// Correction sequence for a Bell outcome under the standard table.
pub fn correction_for(outcome: Bell) -> Vec<Gate> {
    CorrectionTable::standard().gates_for(outcome)
}

/// Step-1 correction: σ_x on B iff the z-outcome of A was 1.
pub fn step1_correction(bit: Bit) -> Gate {
    match bit {
        Bit::Zero => Gate::identity(),
        Bit::One => Gate::x(),
    }
}

/// Step-2 correction: σ_z on B iff the x-outcome of a was `-` (bit 1).
pub fn step2_correction(bit: Bit) -> Gate {
    match bit {
        Bit::Zero => Gate::identity(),
        Bit::One => Gate::z(),
    }
}

/// The shared resource on labels (A, B).
pub fn make_resource(kind: ResourceKind) -> QuantumState {
    match kind {
        ResourceKind::Entangled => QuantumState::Pure(
            bell_state(Bell::PhiPlus, ("A", "B")).expect("distinct labels"),
        ),
        ResourceKind::ClassicalCorrelated => {
            let r = Register::from_names(&["A", "B"]).expect("distinct labels");
            let s00 = basis_state(r.clone(), &[Bit::Zero, Bit::Zero]).expect("basis state");
            let s11 = basis_state(r, &[Bit::One, Bit::One]).expect("basis state");
            QuantumState::Mixed(mix_pure(&[(0.5, s00), (0.5, s11)]).expect("valid mixture"))
        }
    }
}

/// Ordered record of one protocol branch: every event, the branch
/// probability, and the corrected and uncorrected post-states on whatever
/// register remains unmeasured (`a,B` after step 1, `B` after a full run).
#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    pub protocol: String,
    pub input: BlochParams,
    pub resource: ResourceKind,
    pub probability: f64,
    pub outcome_labels: Vec<String>,
    pub outcome_bits: Vec<Bit>,
    pub events: Vec<Event>,
    pub final_state: QuantumState,
    pub uncorrected_state: QuantumState,
}

impl Transcript {
    /// The target state on Bob's label.
    pub fn target(&self) -> crate::state::StateVector {
        bloch_state(self.input, "B")
    }

    /// Bob's reduced density matrix of the corrected final state.
    pub fn final_b_density(&self) -> Result<crate::density::DensityMatrix> {
        self.final_state.partial_trace(&[Label::new("B")])
    }

    /// Bob's reduced density matrix of the uncorrected final state.
    pub fn uncorrected_b_density(&self) -> Result<crate::density::DensityMatrix> {
        self.uncorrected_state.partial_trace(&[Label::new("B")])
    }

    /// Fidelity of Bob's corrected marginal against the teleportation target.
    pub fn fidelity_to_target(&self) -> Result<f64> {
        crate::metrics::fidelity(&self.final_b_density()?, &self.target())
    }

    /// All classical messages, in the order they were sent.
    pub fn messages(&self) -> Vec<&ClassicalMessage> {
        self.events
            .iter()
            .filter_map(|e| match e {
                Event::MessageSent(m) => Some(m),
                _ => None,
            })
            .collect()
    }
}

fn label(name: &str) -> Label {
    Label::new(name)
}

/// Standard teleportation with the given correction table, enumerated
/// exhaustively: prepares `a ⊗ Φ+_{AB}`, Bell-measures (a, A), sends both
/// bits in one message, and applies the table's correction on B.
pub fn run_standard_with(
    params: BlochParams,
    table: &CorrectionTable,
) -> Result<Vec<Transcript>> {
    let psi = bloch_state(params, "a");
    let resource = make_resource(ResourceKind::Entangled);
    let initial = QuantumState::Pure(psi).tensor(&resource)?;

    let targets = [label("a"), label("A")];
    let set = initial.measure(&MeasurementBasis::bell(), &targets)?;

    let mut transcripts = Vec::with_capacity(set.len());
    for branch in set.branches() {
        let outcome = &branch.outcomes[0];
        let kind = Bell::from_label(&outcome.label).expect("bell outcome label");
        let bits = outcome.bits.clone();

        let mut events = vec![
            Event::Measured {
                basis: BasisKind::Bell,
                targets: targets.to_vec(),
                outcome: outcome.label.clone(),
                bits: bits.clone(),
            },
            Event::MessageSent(ClassicalMessage {
                sender: Party::Alice,
                receiver: Party::Bob,
                bits: bits.clone(),
                step_tag: "bell".into(),
            }),
        ];

        let mut corrected = branch.state.clone();
        for gate in table.gates_for(kind) {
            corrected = corrected.apply_gate(&gate, &[label("B")])?;
            events.push(Event::CorrectionApplied {
                gate: gate.name().to_string(),
                target: label("B"),
            });
        }

        transcripts.push(Transcript {
            protocol: "standard".into(),
            input: params,
            resource: ResourceKind::Entangled,
            probability: branch.probability,
            outcome_labels: vec![outcome.label.clone()],
            outcome_bits: bits,
            events,
            final_state: corrected,
            uncorrected_state: branch.state.clone(),
        });
    }
    Ok(transcripts)
}

/// Standard teleportation with the standard correction table.
pub fn run_standard(params: BlochParams) -> Result<Vec<Transcript>> {
    run_standard_with(params, &CorrectionTable::standard())
}

/// Draw a single standard-protocol branch from the seeded stream.
pub fn sample_standard<R: rand::Rng>(params: BlochParams, rng: &mut R) -> Result<Transcript> {
    let transcripts = run_standard(params)?;
    let weights: Vec<f64> = transcripts.iter().map(|t| t.probability).collect();
    let idx = rng::weighted_index(&weights, rng);
    Ok(transcripts.into_iter().nth(idx).expect("index in range"))
}

/// The two-step protocol, enumerated exhaustively.
///
/// Step 1: CNOT(a→A), z-measurement of A, one bit to Bob, σ_x correction on
/// B iff the bit is 1. Step 2: x-measurement of a, one bit to Bob, σ_z
/// correction iff the outcome was `-`. `stop_after` selects how far to run;
/// the classically correlated resource is simulated as a density matrix
/// through the identical circuit.
pub fn run_two_step(
    params: BlochParams,
    resource: ResourceKind,
    stop_after: StopAfter,
) -> Result<Vec<Transcript>> {
    let psi = bloch_state(params, "a");
    let shared = make_resource(resource);
    let initial = QuantumState::Pure(psi).tensor(&shared)?;

    let cnot_targets = [label("a"), label("A")];
    let after_cnot = initial.apply_gate(&Gate::cnot(), &cnot_targets)?;
    let base_events = vec![Event::GateApplied {
        gate: "CNOT".into(),
        targets: cnot_targets.to_vec(),
    }];

    let step1_set = after_cnot.measure(&MeasurementBasis::z(), &[label("A")])?;

    let mut transcripts = Vec::new();
    for s1 in step1_set.branches() {
        let z_outcome = &s1.outcomes[0];
        let z_bit = z_outcome.bits[0];

        let mut events = base_events.clone();
        events.push(Event::Measured {
            basis: BasisKind::ComputationalZ,
            targets: vec![label("A")],
            outcome: z_outcome.label.clone(),
            bits: vec![z_bit],
        });
        events.push(Event::MessageSent(ClassicalMessage {
            sender: Party::Alice,
            receiver: Party::Bob,
            bits: vec![z_bit],
            step_tag: "step1".into(),
        }));

        let gate1 = step1_correction(z_bit);
        let corrected1 = s1.state.apply_gate(&gate1, &[label("B")])?;
        events.push(Event::CorrectionApplied {
            gate: gate1.name().to_string(),
            target: label("B"),
        });
        let uncorrected1 = s1.state.clone();

        if stop_after == StopAfter::Step1 {
            transcripts.push(Transcript {
                protocol: "two-step".into(),
                input: params,
                resource,
                probability: s1.probability,
                outcome_labels: vec![z_outcome.label.clone()],
                outcome_bits: vec![z_bit],
                events,
                final_state: corrected1,
                uncorrected_state: uncorrected1,
            });
            continue;
        }

        // Step 2 on the corrected and uncorrected tracks. The step-1
        // correction acts on B only, so the x-measurement statistics of a
        // agree branch for branch.
        let step2_set = corrected1.measure(&MeasurementBasis::x(), &[label("a")])?;
        let raw_set = uncorrected1.measure(&MeasurementBasis::x(), &[label("a")])?;

        for s2 in step2_set.branches() {
            let x_outcome = &s2.outcomes[0];
            let x_bit = x_outcome.bits[0];
            let raw_state = raw_set
                .branches()
                .iter()
                .find(|b| b.outcomes[0].label == x_outcome.label)
                .map(|b| b.state.clone())
                .expect("uncorrected track has the same outcomes");

            let mut events = events.clone();
            events.push(Event::Measured {
                basis: BasisKind::XBasis,
                targets: vec![label("a")],
                outcome: x_outcome.label.clone(),
                bits: vec![x_bit],
            });
            events.push(Event::MessageSent(ClassicalMessage {
                sender: Party::Alice,
                receiver: Party::Bob,
                bits: vec![x_bit],
                step_tag: "step2".into(),
            }));

            let gate2 = step2_correction(x_bit);
            let corrected2 = s2.state.apply_gate(&gate2, &[label("B")])?;
            events.push(Event::CorrectionApplied {
                gate: gate2.name().to_string(),
                target: label("B"),
            });

            transcripts.push(Transcript {
                protocol: "two-step".into(),
                input: params,
                resource,
                probability: s1.probability * s2.probability,
                outcome_labels: vec![z_outcome.label.clone(), x_outcome.label.clone()],
                outcome_bits: vec![z_bit, x_bit],
                events,
                final_state: corrected2,
                uncorrected_state: raw_state,
            });
        }
    }
    Ok(transcripts)
}

/// Draw a single two-step branch from the seeded stream.
pub fn sample_two_step<R: rand::Rng>(
    params: BlochParams,
    resource: ResourceKind,
    stop_after: StopAfter,
    rng: &mut R,
) -> Result<Transcript> {
    let transcripts = run_two_step(params, resource, stop_after)?;
    let weights: Vec<f64> = transcripts.iter().map(|t| t.probability).collect();
    let idx = rng::weighted_index(&weights, rng);
    Ok(transcripts.into_iter().nth(idx).expect("index in range"))
}

/// Map a two-step joint outcome (z-bit of A, x-bit of a) to the Bell outcome
/// the product measurement implements: (0,+)→Φ+, (0,−)→Φ−, (1,+)→Ψ+,
/// (1,−)→Ψ−.
pub fn bell_outcome_for(z_bit: Bit, x_bit: Bit) -> Bell {
    Bell::from_bits([z_bit, x_bit])
}
