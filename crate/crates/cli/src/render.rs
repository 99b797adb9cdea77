//! Serialization of transcripts and verification reports.
//!
//! JSON documents share one envelope: `{schema_version, config, branches}`,
//! where each branch is `{probability, events, final_state, ...}` and every
//! complex number is a `[re, im]` pair. State vectors are listed in register
//! bit order; density matrices are flattened row-major. Sampled records gain
//! a leading `shot` index. CSV output exists for the classical protocols
//! only and mirrors the enumerated truth tables column for column.

use qteleport::classical::{DelocalizeRow, OtpRecord, OtpRow};
use qteleport::protocol::{Event, Transcript};
use qteleport::verify::VerifyReport;
use qteleport::{Label, QuantumState};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: &str = "1.0";

/// Wrap a config echo and a branch list in the top-level document and
/// pretty-print it with a trailing newline.
pub fn document(config: Value, branches: Vec<Value>) -> String {
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "branches": branches,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}

fn complex_pair(re: f64, im: f64) -> Value {
    json!([re, im])
}

/// `{labels, matrix_or_vector, representation}` for a pure or mixed state.
pub fn state_json(state: &QuantumState) -> Value {
    let labels: Vec<&str> = state
        .register()
        .labels()
        .iter()
        .map(Label::as_str)
        .collect();
    match state {
        QuantumState::Pure(sv) => {
            let amps: Vec<Value> = sv
                .amplitudes()
                .iter()
                .map(|c| complex_pair(c.re, c.im))
                .collect();
            json!({
                "labels": labels,
                "matrix_or_vector": amps,
                "representation": "state-vector",
            })
        }
        QuantumState::Mixed(rho) => {
            let dim = rho.dim();
            let mut entries = Vec::with_capacity(dim * dim);
            for i in 0..dim {
                for j in 0..dim {
                    let e = rho.entry(i, j);
                    entries.push(complex_pair(e.re, e.im));
                }
            }
            json!({
                "labels": labels,
                "matrix_or_vector": entries,
                "representation": "density-matrix",
            })
        }
    }
}

fn bits_json(bits: &[qteleport::Bit]) -> Value {
    Value::Array(bits.iter().map(|b| json!(b.as_u8())).collect())
}

fn labels_json(labels: &[Label]) -> Value {
    Value::Array(labels.iter().map(|l| json!(l.as_str())).collect())
}

/// One causally ordered protocol event as a typed object.
pub fn event_json(event: &Event) -> Value {
    match event {
        Event::GateApplied { gate, targets } => json!({
            "type": "gate",
            "gate": gate,
            "targets": labels_json(targets),
        }),
        Event::Measured {
            basis,
            targets,
            outcome,
            bits,
        } => json!({
            "type": "measurement",
            "basis": basis.name(),
            "targets": labels_json(targets),
            "outcome": outcome,
            "bits": bits_json(bits),
        }),
        Event::MessageSent(msg) => json!({
            "type": "message",
            "sender": msg.sender.name(),
            "receiver": msg.receiver.name(),
            "bits": bits_json(&msg.bits),
            "step": msg.step_tag,
        }),
        Event::CorrectionApplied { gate, target } => json!({
            "type": "correction",
            "gate": gate,
            "target": target.as_str(),
        }),
    }
}

/// One quantum branch: Born probability, causal event list, final state, and
/// the fidelity of Bob's reduced state against the input.
pub fn quantum_branch(t: &Transcript, fidelity: f64, shot: Option<u64>) -> Value {
    let mut m = Map::new();
    if let Some(s) = shot {
        m.insert("shot".into(), json!(s));
    }
    m.insert("probability".into(), json!(t.probability));
    m.insert(
        "events".into(),
        Value::Array(t.events.iter().map(event_json).collect()),
    );
    m.insert("final_state".into(), state_json(&t.final_state));
    m.insert("fidelity".into(), json!(fidelity));
    Value::Object(m)
}

fn classical_branch(
    probability: f64,
    source_label: &str,
    source_bit: qteleport::Bit,
    key_labels: [&str; 2],
    key_bits: [qteleport::Bit; 2],
    step: &str,
    sent: qteleport::Bit,
    out_label: &str,
    out_bit: qteleport::Bit,
    shot: Option<u64>,
) -> Value {
    let mut m = Map::new();
    if let Some(s) = shot {
        m.insert("shot".into(), json!(s));
    }
    m.insert("probability".into(), json!(probability));
    m.insert(
        "events".into(),
        json!([
            {"type": "source", "label": source_label, "bit": source_bit.as_u8()},
            {"type": "key-pair", "labels": key_labels, "bits": [key_bits[0].as_u8(), key_bits[1].as_u8()]},
            {"type": "message", "sender": "Alice", "receiver": "Bob", "bits": [sent.as_u8()], "step": step},
            {"type": "decode", "label": out_label, "bit": out_bit.as_u8()},
        ]),
    );
    m.insert(
        "final_state".into(),
        json!({
            "labels": [out_label],
            "matrix_or_vector": [out_bit.as_u8()],
            "representation": "bit",
        }),
    );
    Value::Object(m)
}

pub fn otp_branch(row: &OtpRow, shot: Option<u64>) -> Value {
    classical_branch(
        row.probability,
        "a",
        row.a,
        ["A", "B"],
        [row.key_a, row.key_b],
        "otp",
        row.communicated,
        "B",
        row.recovered,
        shot,
    )
}

/// A sampled pad shot; `probability` is the chance of drawing this record's
/// `(input, key)` combination.
pub fn otp_record_branch(rec: &OtpRecord, probability: f64, shot: u64) -> Value {
    classical_branch(
        probability,
        "a",
        rec.input,
        ["A", "B"],
        [rec.key_a, rec.key_b],
        "otp",
        rec.communicated,
        "B",
        rec.recovered,
        Some(shot),
    )
}

pub fn delocalize_branch(row: &DelocalizeRow, shot: Option<u64>) -> Value {
    classical_branch(
        row.probability,
        "d",
        row.d,
        ["x", "y"],
        [row.x, row.y],
        "delocalize",
        row.x_tilde,
        "x_tilde_xor_y",
        row.x_tilde_xor_y,
        shot,
    )
}

pub fn otp_csv(rows: &[OtpRow]) -> String {
    let mut out = String::from("probability,a,A,B,a_xor_A,a_xor_A_xor_B\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.probability, r.a, r.key_a, r.key_b, r.communicated, r.recovered
        ));
    }
    out
}

pub fn otp_sample_csv(records: &[OtpRecord]) -> String {
    let mut out = String::from("shot,a,A,B,a_xor_A,a_xor_A_xor_B\n");
    for (i, r) in records.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            i, r.input, r.key_a, r.key_b, r.communicated, r.recovered
        ));
    }
    out
}

pub fn delocalize_csv(rows: &[DelocalizeRow]) -> String {
    let mut out = String::from("probability,d,x,y,x_tilde,x_tilde_xor_y\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.probability, r.d, r.x, r.y, r.x_tilde, r.x_tilde_xor_y
        ));
    }
    out
}

pub fn delocalize_sample_csv(rows: &[DelocalizeRow]) -> String {
    let mut out = String::from("shot,d,x,y,x_tilde,x_tilde_xor_y\n");
    for (i, r) in rows.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            i, r.d, r.x, r.y, r.x_tilde, r.x_tilde_xor_y
        ));
    }
    out
}

/// Human-readable verification report: one line per check plus a summary.
pub fn report_text(report: &VerifyReport) -> String {
    let mut out = format!(
        "verification suite: {} (seed {})\n",
        report.suite, report.seed
    );
    for c in &report.checks {
        let status = if c.passed { "[ ok ]" } else { "[FAIL]" };
        out.push_str(&format!(
            "{status} {:<38} observed {:<12.5e} bound {:<12.5e} {}\n",
            c.name, c.observed, c.bound, c.detail
        ));
    }
    let total = report.checks.len();
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let verdict = if report.passed { "PASS" } else { "FAIL" };
    out.push_str(&format!("result: {verdict} ({passed}/{total} checks passed)\n"));
    out
}

/// Machine-readable verification report.
pub fn report_json(report: &VerifyReport) -> String {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "passed": c.passed,
                "observed": c.observed,
                "bound": c.bound,
                "detail": c.detail,
            })
        })
        .collect();
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "suite": report.suite.name(),
        "seed": report.seed,
        "passed": report.passed,
        "checks": checks,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}
