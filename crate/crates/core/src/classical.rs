//! Classical analogues of teleportation: the one-time pad and XOR
//! delocalization.
//!
//! Both protocols transport one classical bit using a shared random pair and
//! a single communicated bit, and both leave the communicated bit exactly
//! unbiased regardless of the input distribution:
//!
//! * one-time pad — Alice XORs her bit `a` with her key half `A` and sends
//!   `c = a ⊕ A`; Bob recovers `(a ⊕ A) ⊕ B`, which equals `a` whenever
//!   `A = B`;
//! * delocalization — a data bit `d` is split against a random bit `x` into
//!   `x̃ = d ⊕ x`; afterwards neither `x̃` nor `x` alone carries any
//!   information about `d`, while `x̃ ⊕ y` with a correlated copy `y = x`
//!   restores it.
//!
//! Enumeration functions list all four `(input, key)` combinations with
//! exact probability weights; sampling functions draw shots from a seeded
//! stream. Probabilities are accumulated so that the unbiasedness identity
//! `P(c = 0) = p·½ + (1−p)·½ = ½` and the transport identity
//! `P(recovered = 0) = p·½ + p·½ = p` hold exactly in floating point, not
//! merely up to rounding.

use crate::bit::Bit;
use crate::error::{Error, Result};

/// A Bernoulli source over bits with `P(0) = p_zero`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BitSource {
    p_zero: f64,
}

impl BitSource {
    pub fn new(p_zero: f64) -> Result<BitSource> {
        if !(0.0..=1.0).contains(&p_zero) {
            return Err(Error::ProbabilityOutOfRange(p_zero));
        }
        Ok(BitSource { p_zero })
    }

    pub fn p_zero(&self) -> f64 {
        self.p_zero
    }

    pub fn p_one(&self) -> f64 {
        1.0 - self.p_zero
    }

    pub fn sample<R: rand::Rng>(&self, rng: &mut R) -> Bit {
        if rng.random::<f64>() < self.p_zero {
            Bit::Zero
        } else {
            Bit::One
        }
    }
}

/// A finite store of shared key pairs `(A, B)`, consumed strictly once.
///
/// An honestly generated key has `A = B` in every pair; corrupted pairs can
/// be injected for tests that demonstrate how correlation failure breaks
/// recovery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedKey {
    pairs: Vec<(Bit, Bit)>,
    cursor: usize,
}

impl SharedKey {
    /// `n` uniformly random perfectly correlated pairs.
    pub fn generate<R: rand::Rng>(n: usize, rng: &mut R) -> SharedKey {
        let pairs = (0..n)
            .map(|_| {
                let k = Bit::from(rng.random::<bool>());
                (k, k)
            })
            .collect();
        SharedKey { pairs, cursor: 0 }
    }

    /// A key from explicit pairs (possibly decorrelated, for tests).
    pub fn from_pairs(pairs: Vec<(Bit, Bit)>) -> SharedKey {
        SharedKey { pairs, cursor: 0 }
    }

    /// Consume the next pair; each pair is handed out exactly once.
    pub fn next_pair(&mut self) -> Result<(Bit, Bit)> {
        if self.cursor >= self.pairs.len() {
            return Err(Error::KeyExhausted);
        }
        let pair = self.pairs[self.cursor];
        self.cursor += 1;
        Ok(pair)
    }

    pub fn remaining(&self) -> usize {
        self.pairs.len() - self.cursor
    }
}

/// Alice's encoding: the communicated bit `a ⊕ A`.
pub fn otp_encode(a: Bit, key_a: Bit) -> Bit {
    a ^ key_a
}

/// Bob's decoding: `(a ⊕ A) ⊕ B`.
pub fn otp_decode(communicated: Bit, key_b: Bit) -> Bit {
    communicated ^ key_b
}

/// Split a data bit against a random bit: `x̃ = d ⊕ x`.
pub fn delocalize(d: Bit, x: Bit) -> Bit {
    d ^ x
}

/// Recombine with a correlated copy: `x̃ ⊕ y`.
pub fn localize(x_tilde: Bit, y: Bit) -> Bit {
    x_tilde ^ y
}

/// Whether Alice erases her input bit after encoding (the analogue of the
/// quantum no-cloning discipline) or keeps a copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopyDiscipline {
    Keep,
    Destroy,
}

/// One enumerated one-time-pad row: an `(a, A)` combination with `B = A`,
/// in the column order input, key halves, communicated, recovered.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OtpRow {
    pub probability: f64,
    pub a: Bit,
    pub key_a: Bit,
    pub key_b: Bit,
    pub communicated: Bit,
    pub recovered: Bit,
}

/// One enumerated delocalization row with `y = x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelocalizeRow {
    pub probability: f64,
    pub d: Bit,
    pub x: Bit,
    pub y: Bit,
    pub x_tilde: Bit,
    pub x_tilde_xor_y: Bit,
}

/// All four `(a, A)` combinations of the one-time pad, rows ordered
/// `(0,0), (0,1), (1,0), (1,1)`, with `P(a = 0) = p_zero` and a fair key.
pub fn enumerate_otp(p_zero: f64) -> Result<Vec<OtpRow>> {
    let source = BitSource::new(p_zero)?;
    let mut rows = Vec::with_capacity(4);
    for a in Bit::ALL {
        for key in Bit::ALL {
            let p_a = if a.is_one() { source.p_one() } else { source.p_zero() };
            let communicated = otp_encode(a, key);
            rows.push(OtpRow {
                probability: p_a * 0.5,
                a,
                key_a: key,
                key_b: key,
                communicated,
                recovered: otp_decode(communicated, key),
            });
        }
    }
    Ok(rows)
}

/// All four `(d, x)` combinations of delocalization, rows ordered
/// `(0,0), (0,1), (1,0), (1,1)`, with `P(d = 0) = p_zero` and `y = x`.
pub fn enumerate_delocalize(p_zero: f64) -> Result<Vec<DelocalizeRow>> {
    let source = BitSource::new(p_zero)?;
    let mut rows = Vec::with_capacity(4);
    for d in Bit::ALL {
        for x in Bit::ALL {
            let p_d = if d.is_one() { source.p_one() } else { source.p_zero() };
            let x_tilde = delocalize(d, x);
            rows.push(DelocalizeRow {
                probability: p_d * 0.5,
                d,
                x,
                y: x,
                x_tilde,
                x_tilde_xor_y: localize(x_tilde, x),
            });
        }
    }
    Ok(rows)
}

/// `P(communicated = 0)` of an enumerated one-time pad. Equals ½ exactly
/// for every input bias.
pub fn p_communicated_zero(rows: &[OtpRow]) -> f64 {
    rows.iter()
        .filter(|r| r.communicated == Bit::Zero)
        .map(|r| r.probability)
        .sum()
}

/// `P(recovered = 0)` of an enumerated one-time pad. Equals the input bias
/// exactly when the key is honest.
pub fn p_recovered_zero(rows: &[OtpRow]) -> f64 {
    rows.iter()
        .filter(|r| r.recovered == Bit::Zero)
        .map(|r| r.probability)
        .sum()
}

/// `P(x̃ = 0)` of an enumerated delocalization.
pub fn p_delocalized_zero(rows: &[DelocalizeRow]) -> f64 {
    rows.iter()
        .filter(|r| r.x_tilde == Bit::Zero)
        .map(|r| r.probability)
        .sum()
}

/// `P(x̃ ⊕ y = 0)` of an enumerated delocalization.
pub fn p_localized_zero(rows: &[DelocalizeRow]) -> f64 {
    rows.iter()
        .filter(|r| r.x_tilde_xor_y == Bit::Zero)
        .map(|r| r.probability)
        .sum()
}

/// One sampled one-time-pad shot. `input_copy` is `Some` only under
/// [`CopyDiscipline::Keep`]; everything Bob sees is independent of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OtpRecord {
    pub input: Bit,
    pub key_a: Bit,
    pub key_b: Bit,
    pub communicated: Bit,
    pub recovered: Bit,
    pub input_copy: Option<Bit>,
}

/// A sampled one-time-pad run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OtpRun {
    pub discipline: CopyDiscipline,
    pub records: Vec<OtpRecord>,
}

impl OtpRun {
    /// Fraction of shots whose recovered bit equals the input bit.
    pub fn transport_accuracy(&self) -> f64 {
        if self.records.is_empty() {
            return 1.0;
        }
        let hits = self
            .records
            .iter()
            .filter(|r| r.recovered == r.input)
            .count();
        hits as f64 / self.records.len() as f64
    }

    pub fn communicated_bits(&self) -> Vec<Bit> {
        self.records.iter().map(|r| r.communicated).collect()
    }

    pub fn recovered_bits(&self) -> Vec<Bit> {
        self.records.iter().map(|r| r.recovered).collect()
    }
}

/// Run the one-time pad for `shots` inputs drawn from `source`, consuming
/// one key pair per shot.
pub fn run_otp<R: rand::Rng>(
    source: &BitSource,
    key: &mut SharedKey,
    shots: usize,
    discipline: CopyDiscipline,
    rng: &mut R,
) -> Result<OtpRun> {
    let mut records = Vec::with_capacity(shots);
    for _ in 0..shots {
        let input = source.sample(rng);
        let (key_a, key_b) = key.next_pair()?;
        let communicated = otp_encode(input, key_a);
        let recovered = otp_decode(communicated, key_b);
        records.push(OtpRecord {
            input,
            key_a,
            key_b,
            communicated,
            recovered,
            input_copy: match discipline {
                CopyDiscipline::Keep => Some(input),
                CopyDiscipline::Destroy => None,
            },
        });
    }
    Ok(OtpRun {
        discipline,
        records,
    })
}

/// True when two runs agree on every field Bob can observe, ignoring
/// whether Alice kept her copy.
pub fn records_equal_modulo_copy(a: &[OtpRecord], b: &[OtpRecord]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            x.input == y.input
                && x.key_a == y.key_a
                && x.key_b == y.key_b
                && x.communicated == y.communicated
                && x.recovered == y.recovered
        })
}

/// Empirical frequency of zero in a bit stream, with its one-sigma binomial
/// error `√(f(1−f)/N)`.
pub fn bias_of(stream: &[Bit]) -> Result<(f64, f64)> {
    if stream.is_empty() {
        return Err(Error::EmptyStream);
    }
    let n = stream.len() as f64;
    let zeros = stream.iter().filter(|b| **b == Bit::Zero).count() as f64;
    let f = zeros / n;
    Ok((f, (f * (1.0 - f) / n).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedStream;
    use proptest::prelude::*;

    #[test]
    fn bit_source_validates_and_hits_extremes() {
        assert!(BitSource::new(-0.1).is_err());
        assert!(BitSource::new(1.1).is_err());
        assert!(BitSource::new(f64::NAN).is_err());
        let mut rng = SeedStream::new(1).substream(0);
        let always_zero = BitSource::new(1.0).unwrap();
        let always_one = BitSource::new(0.0).unwrap();
        for _ in 0..64 {
            assert_eq!(always_zero.sample(&mut rng), Bit::Zero);
            assert_eq!(always_one.sample(&mut rng), Bit::One);
        }
    }

    #[test]
    fn otp_table_at_fair_input() {
        // The four rows of the pad with a fair input: every combination has
        // weight 1/4, the communicated column is the XOR pattern 0,1,1,0,
        // and recovery is perfect.
        let rows = enumerate_otp(0.5).unwrap();
        assert_eq!(rows.len(), 4);
        let expect: [(u8, u8, u8, u8, u8); 4] = [
            (0, 0, 0, 0, 0),
            (0, 1, 1, 1, 0),
            (1, 0, 0, 1, 1),
            (1, 1, 1, 0, 1),
        ];
        for (row, (a, ka, kb, c, r)) in rows.iter().zip(expect) {
            assert_eq!(row.probability, 0.25);
            assert_eq!(row.a.as_u8(), a);
            assert_eq!(row.key_a.as_u8(), ka);
            assert_eq!(row.key_b.as_u8(), kb);
            assert_eq!(row.communicated.as_u8(), c);
            assert_eq!(row.recovered.as_u8(), r);
            assert_eq!(row.recovered, row.a);
        }
    }

    #[test]
    fn otp_distributions_are_exact() {
        for p in [0.0, 0.1, 0.5, 0.9, 1.0] {
            let rows = enumerate_otp(p).unwrap();
            // Bitwise equality, not approximate: the sums are arranged so no
            // rounding occurs.
            assert!(p_communicated_zero(&rows) == 0.5, "p = {p}");
            assert!(p_recovered_zero(&rows) == p, "p = {p}");
        }
    }

    #[test]
    fn communicated_bit_is_independent_of_input() {
        // P(c = 0 | a) = 1/2 for both values of a, at a skewed input bias.
        let rows = enumerate_otp(0.23).unwrap();
        for a in Bit::ALL {
            let total: f64 = rows
                .iter()
                .filter(|r| r.a == a)
                .map(|r| r.probability)
                .sum();
            let zero: f64 = rows
                .iter()
                .filter(|r| r.a == a && r.communicated == Bit::Zero)
                .map(|r| r.probability)
                .sum();
            assert!((zero / total - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn delocalize_table_matches_truth_table() {
        let rows = enumerate_delocalize(0.5).unwrap();
        assert_eq!(rows.len(), 4);
        let expect: [(u8, u8, u8, u8, u8); 4] = [
            (0, 0, 0, 0, 0),
            (0, 1, 1, 1, 0),
            (1, 0, 0, 1, 1),
            (1, 1, 1, 0, 1),
        ];
        for (row, (d, x, y, xt, back)) in rows.iter().zip(expect) {
            assert_eq!(row.probability, 0.25);
            assert_eq!(row.d.as_u8(), d);
            assert_eq!(row.x.as_u8(), x);
            assert_eq!(row.y.as_u8(), y);
            assert_eq!(row.x_tilde.as_u8(), xt);
            assert_eq!(row.x_tilde_xor_y.as_u8(), back);
            assert_eq!(row.x_tilde_xor_y, row.d);
        }
    }

    #[test]
    fn delocalized_bit_is_unbiased_and_recoverable() {
        for p in [0.0, 0.1, 0.5, 0.9, 1.0] {
            let rows = enumerate_delocalize(p).unwrap();
            assert!(p_delocalized_zero(&rows) == 0.5, "p = {p}");
            assert!(p_localized_zero(&rows) == p, "p = {p}");
        }
    }

    #[test]
    fn corrupted_key_flips_recovery() {
        // A decorrelated pair (A, B) = (0, 1) makes Bob decode the
        // complement of the input, for both input values.
        for a in Bit::ALL {
            let mut key = SharedKey::from_pairs(vec![(Bit::Zero, Bit::One)]);
            let (ka, kb) = key.next_pair().unwrap();
            let r = otp_decode(otp_encode(a, ka), kb);
            assert_eq!(r, !a);
        }
    }

    #[test]
    fn key_pairs_are_single_use() {
        let mut rng = SeedStream::new(3).substream(0);
        let mut key = SharedKey::generate(2, &mut rng);
        assert_eq!(key.remaining(), 2);
        key.next_pair().unwrap();
        key.next_pair().unwrap();
        assert_eq!(key.remaining(), 0);
        assert!(matches!(key.next_pair(), Err(Error::KeyExhausted)));
        // A run demanding more shots than pairs fails rather than reusing.
        let source = BitSource::new(0.5).unwrap();
        let mut short = SharedKey::generate(3, &mut rng);
        let mut rng2 = SeedStream::new(3).substream(1);
        let res = run_otp(&source, &mut short, 4, CopyDiscipline::Destroy, &mut rng2);
        assert!(matches!(res, Err(Error::KeyExhausted)));
    }

    #[test]
    fn sampled_run_transports_the_distribution() {
        let p = 0.3;
        let shots = 10_000;
        let source = BitSource::new(p).unwrap();
        let seeds = SeedStream::new(11);
        let mut key = SharedKey::generate(shots, &mut seeds.substream(0));
        let mut rng = seeds.substream(1);
        let run = run_otp(&source, &mut key, shots, CopyDiscipline::Destroy, &mut rng).unwrap();
        assert_eq!(run.transport_accuracy(), 1.0);

        let (f_comm, _) = bias_of(&run.communicated_bits()).unwrap();
        let sigma_comm = (0.5 * 0.5 / shots as f64).sqrt();
        assert!((f_comm - 0.5).abs() < 3.0 * sigma_comm, "{f_comm}");

        let (f_rec, _) = bias_of(&run.recovered_bits()).unwrap();
        let sigma_rec = (p * (1.0 - p) / shots as f64).sqrt();
        assert!((f_rec - p).abs() < 3.0 * sigma_rec, "{f_rec}");
    }

    #[test]
    fn copy_discipline_does_not_affect_bob() {
        let p = 0.7;
        let shots = 512;
        let source = BitSource::new(p).unwrap();
        let seeds = SeedStream::new(21);
        let run = |discipline| {
            let mut key = SharedKey::generate(shots, &mut seeds.substream(0));
            let mut rng = seeds.substream(1);
            run_otp(&source, &mut key, shots, discipline, &mut rng).unwrap()
        };
        let kept = run(CopyDiscipline::Keep);
        let destroyed = run(CopyDiscipline::Destroy);
        assert!(records_equal_modulo_copy(&kept.records, &destroyed.records));
        assert!(kept.records.iter().all(|r| r.input_copy == Some(r.input)));
        assert!(destroyed.records.iter().all(|r| r.input_copy.is_none()));
    }

    #[test]
    fn bias_of_rejects_empty_and_measures_bias() {
        assert!(matches!(bias_of(&[]), Err(Error::EmptyStream)));
        let stream = vec![Bit::Zero, Bit::Zero, Bit::Zero, Bit::One];
        let (f, sigma) = bias_of(&stream).unwrap();
        assert!((f - 0.75).abs() < 1e-15);
        assert!((sigma - (0.75f64 * 0.25 / 4.0).sqrt()).abs() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn exact_identities_hold_for_every_bias(p in 0.0..=1.0f64) {
            let rows = enumerate_otp(p).unwrap();
            prop_assert!(p_communicated_zero(&rows) == 0.5);
            prop_assert!(p_recovered_zero(&rows) == p);
            let total: f64 = rows.iter().map(|r| r.probability).sum();
            prop_assert!((total - 1.0).abs() < 1e-15);

            let rows = enumerate_delocalize(p).unwrap();
            prop_assert!(p_delocalized_zero(&rows) == 0.5);
            prop_assert!(p_localized_zero(&rows) == p);
        }

        #[test]
        fn xor_roundtrip(a: bool, k: bool) {
            let a = Bit::from(a);
            let k = Bit::from(k);
            prop_assert_eq!(otp_decode(otp_encode(a, k), k), a);
            prop_assert_eq!(localize(delocalize(a, k), k), a);
        }
    }
}
