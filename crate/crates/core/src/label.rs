//! Qubit labels and ordered registers.
//!
//! A register fixes both the tensor ordering and the basis-index convention:
//! basis indices follow the label order with the first label most
//! significant. All index arithmetic that embeds sub-register bit patterns
//! into full-register indices lives here so gates and measurements share one
//! implementation.

use std::fmt;

use crate::error::{Error, Result};

/// Symbolic name of a single qubit (for example `a`, `A`, `B`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(String);

impl Label {
    pub fn new(name: impl Into<String>) -> Label {
        Label(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Label {
        Label::new(s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An ordered list of distinct qubit labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register(Vec<Label>);

impl Register {
    /// Build a register, rejecting duplicate labels.
    pub fn new(labels: Vec<Label>) -> Result<Register> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.as_str().to_string()));
            }
        }
        Ok(Register(labels))
    }

    /// Convenience constructor from string slices.
    pub fn from_names(names: &[&str]) -> Result<Register> {
        Register::new(names.iter().map(|n| Label::new(*n)).collect())
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    /// Number of qubits.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Hilbert-space dimension, `2^len`.
    pub fn dim(&self) -> usize {
        1 << self.0.len()
    }

    /// Position of a label within the register.
    pub fn position(&self, label: &Label) -> Result<usize> {
        self.0
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.as_str().to_string()))
    }

    /// Positions of several labels, in the order given.
    pub fn positions(&self, labels: &[Label]) -> Result<Vec<usize>> {
        let mut seen: Vec<usize> = Vec::with_capacity(labels.len());
        for l in labels {
            let p = self.position(l)?;
            if seen.contains(&p) {
                return Err(Error::DuplicateLabel(l.as_str().to_string()));
            }
            seen.push(p);
        }
        Ok(seen)
    }

    /// Positions of every label *not* listed, in register order.
    pub fn complement_positions(&self, labels: &[Label]) -> Result<Vec<usize>> {
        let picked = self.positions(labels)?;
        Ok((0..self.len()).filter(|p| !picked.contains(p)).collect())
    }

    /// Concatenate two disjoint registers.
    pub fn concat(&self, other: &Register) -> Result<Register> {
        for l in other.labels() {
            if self.0.contains(l) {
                return Err(Error::OverlappingRegisters(l.as_str().to_string()));
            }
        }
        let mut labels = self.0.clone();
        labels.extend_from_slice(other.labels());
        Register::new(labels)
    }

    /// The register left after removing the given labels, preserving order.
    pub fn without(&self, labels: &[Label]) -> Result<Register> {
        let drop = self.positions(labels)?;
        let kept = self
            .0
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, l)| l.clone())
            .collect();
        Register::new(kept)
    }

    /// Human-readable label list, e.g. `a,A,B`.
    pub fn display(&self) -> String {
        self.0
            .iter()
            .map(Label::as_str)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// The bit significance (shift amount) of the register position `pos` in an
/// `n`-qubit register: the first label is most significant.
pub(crate) fn shift_of(pos: usize, n: usize) -> usize {
    n - 1 - pos
}

/// Assemble a full-register basis index from a sub-index `sub` over the
/// register positions `positions` (most significant sub-bit first) and a
/// second sub-index `rest` over `rest_positions`.
pub(crate) fn embed_index(
    sub: usize,
    positions: &[usize],
    rest: usize,
    rest_positions: &[usize],
    n: usize,
) -> usize {
    let mut full = 0usize;
    let k = positions.len();
    for (j, &pos) in positions.iter().enumerate() {
        let bit = (sub >> (k - 1 - j)) & 1;
        full |= bit << shift_of(pos, n);
    }
    let m = rest_positions.len();
    for (j, &pos) in rest_positions.iter().enumerate() {
        let bit = (rest >> (m - 1 - j)) & 1;
        full |= bit << shift_of(pos, n);
    }
    full
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        let err = Register::from_names(&["a", "A", "a"]).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("a".into()));
    }

    #[test]
    fn positions_and_complement() {
        let r = Register::from_names(&["a", "A", "B"]).unwrap();
        let targets = [Label::new("a"), Label::new("A")];
        assert_eq!(r.positions(&targets).unwrap(), vec![0, 1]);
        assert_eq!(r.complement_positions(&targets).unwrap(), vec![2]);
        let rev = [Label::new("B"), Label::new("a")];
        assert_eq!(r.positions(&rev).unwrap(), vec![2, 0]);
        assert_eq!(r.complement_positions(&rev).unwrap(), vec![1]);
        assert!(r.position(&Label::new("x")).is_err());
    }

    #[test]
    fn concat_rejects_overlap() {
        let r1 = Register::from_names(&["a"]).unwrap();
        let r2 = Register::from_names(&["a", "B"]).unwrap();
        assert!(r1.concat(&r2).is_err());
        let r3 = Register::from_names(&["A", "B"]).unwrap();
        assert_eq!(r1.concat(&r3).unwrap().display(), "a,A,B");
    }

    #[test]
    fn embedding_first_label_most_significant() {
        // Register [a, A, B]; sub-index over (a, B), rest over (A).
        // sub = 0b10 means a=1, B=0; rest = 0b1 means A=1 -> index 0b110.
        let positions = [0usize, 2usize];
        let rest_positions = [1usize];
        assert_eq!(embed_index(0b10, &positions, 0b1, &rest_positions, 3), 0b110);
        assert_eq!(embed_index(0b01, &positions, 0b0, &rest_positions, 3), 0b001);
        // Reversed target order (B, a): sub bit 1 is B, bit 0 is a.
        let rev = [2usize, 0usize];
        assert_eq!(embed_index(0b10, &rev, 0b1, &rest_positions, 3), 0b011);
    }

    #[test]
    fn without_preserves_order() {
        let r = Register::from_names(&["a", "A", "B"]).unwrap();
        let rest = r.without(&[Label::new("A")]).unwrap();
        assert_eq!(rest.display(), "a,B");
        let empty = r
            .without(&[Label::new("a"), Label::new("A"), Label::new("B")])
            .unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.dim(), 1);
    }
}
