//! Measurement of final kets.
//!
//! Probabilities are exact rationals. Collapse keeps the surviving amplitudes
//! as they are and records the squared norm of what remains, so the
//! renormalization factor `1/√norm_sq` stays symbolic.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use rand::distributions::{Distribution as _, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::amplitude::Probability;
use crate::ket::Ket;
use crate::state::BasisState;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("cannot measure an empty ket")]
    EmptyKet,
    #[error("qubit {qubit} out of range for {width} qubit(s)")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),
    #[error("pattern {pattern} has {got} bit(s) but {expected} qubit(s) are measured")]
    PatternWidth {
        pattern: String,
        got: usize,
        expected: usize,
    },
    #[error("outcome {0} has probability zero")]
    ZeroProbability(String),
}

/// Result of observing `observed` on a subset of qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementOutcome {
    pub observed: BasisState,
    pub probability: Probability,
    /// Entries consistent with `observed`, amplitudes unchanged.
    pub collapsed: Ket,
    /// Σ |amp|² over `collapsed`.
    pub norm_sq: Probability,
}

fn check_qubits(ket: &Ket, qubits: &[usize]) -> Result<(), MeasureError> {
    let width = ket.width().ok_or(MeasureError::EmptyKet)?;
    for (i, &qubit) in qubits.iter().enumerate() {
        if qubit >= width {
            return Err(MeasureError::QubitOutOfRange { qubit, width });
        }
        if qubits[..i].contains(&qubit) {
            return Err(MeasureError::DuplicateQubit(qubit));
        }
    }
    Ok(())
}

/// Probability of each bit pattern on `qubits` (patterns in `qubits` order).
/// Patterns with probability zero are omitted.
pub fn outcome_distribution(
    ket: &Ket,
    qubits: &[usize],
) -> Result<BTreeMap<BasisState, Probability>, MeasureError> {
    check_qubits(ket, qubits)?;
    let total = ket.norm_sq();
    let mut weights: BTreeMap<BasisState, Probability> = BTreeMap::new();
    for (state, amp) in ket.iter() {
        *weights
            .entry(state.project(qubits))
            .or_insert_with(Probability::zero) += amp.probability();
    }
    Ok(weights
        .into_iter()
        .map(|(pattern, w)| (pattern, w / total))
        .collect())
}

pub fn collapse(
    ket: &Ket,
    qubits: &[usize],
    observed: &BasisState,
) -> Result<MeasurementOutcome, MeasureError> {
    check_qubits(ket, qubits)?;
    if observed.width() != qubits.len() {
        return Err(MeasureError::PatternWidth {
            pattern: observed.to_string(),
            got: observed.width(),
            expected: qubits.len(),
        });
    }
    let collapsed: Ket = ket
        .iter()
        .filter(|(state, _)| state.matches(qubits, observed))
        .map(|(state, amp)| (state.clone(), amp))
        .collect();
    if collapsed.is_empty() {
        return Err(MeasureError::ZeroProbability(observed.to_string()));
    }
    let norm_sq = collapsed.norm_sq();
    Ok(MeasurementOutcome {
        observed: observed.clone(),
        probability: norm_sq / ket.norm_sq(),
        collapsed,
        norm_sq,
    })
}

/// Draws `shots` independent outcomes on `qubits`.
///
/// The generator is ChaCha8 seeded with `seed`, so equal inputs always give
/// equal draws.
pub fn sample(
    ket: &Ket,
    qubits: &[usize],
    seed: u64,
    shots: usize,
) -> Result<Vec<BasisState>, MeasureError> {
    let dist = outcome_distribution(ket, qubits)?;
    let (patterns, weights): (Vec<_>, Vec<_>) = dist
        .into_iter()
        .map(|(p, w)| (p, w.to_f64().unwrap_or(0.0)))
        .unzip();
    let index = WeightedIndex::new(&weights).map_err(|_| MeasureError::EmptyKet)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..shots)
        .map(|_| patterns[index.sample(&mut rng)].clone())
        .collect())
}

/// Occurrence count per pattern.
pub fn tally(samples: &[BasisState]) -> BTreeMap<BasisState, usize> {
    let mut counts = BTreeMap::new();
    for s in samples {
        *counts.entry(s.clone()).or_insert(0) += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use num_rational::Ratio;

    use super::*;
    use crate::fixtures;
    use crate::interpreter::run_hash;

    fn s(bits: &str) -> BasisState {
        bits.parse().unwrap()
    }

    fn half() -> Probability {
        Ratio::new(1, 2)
    }

    #[test]
    fn simon_distribution_on_top_pair() {
        let ket = run_hash(&fixtures::simon(), &s("0000"));
        let dist = outcome_distribution(&ket, &[0, 1]).unwrap();
        assert_eq!(dist, BTreeMap::from([(s("00"), half()), (s("11"), half())]));
    }

    #[test]
    fn bell_collapse_on_first_qubit() {
        let ket = run_hash(&fixtures::bell(), &s("00"));
        let out = collapse(&ket, &[0], &s("1")).unwrap();
        assert_eq!(out.collapsed.len(), 1);
        assert!(out.collapsed.get(&s("11")).is_some());
        assert_eq!(out.norm_sq, half());
        assert_eq!(out.probability, half());
    }

    #[test]
    fn deterministic_ket() {
        let ket = Ket::singleton(s("0"), crate::Amplitude::one());
        let dist = outcome_distribution(&ket, &[0]).unwrap();
        assert_eq!(dist, BTreeMap::from([(s("0"), Ratio::from_integer(1))]));
        let draws = sample(&ket, &[0], 7, 100).unwrap();
        assert_eq!(draws.len(), 100);
        assert!(draws.iter().all(|d| *d == s("0")));
    }

    #[test]
    fn error_paths() {
        let ket = run_hash(&fixtures::bell(), &s("00"));
        assert_eq!(
            outcome_distribution(&Ket::new(), &[0]),
            Err(MeasureError::EmptyKet)
        );
        assert_eq!(sample(&Ket::new(), &[0], 1, 1), Err(MeasureError::EmptyKet));
        assert_eq!(
            outcome_distribution(&ket, &[2]),
            Err(MeasureError::QubitOutOfRange { qubit: 2, width: 2 })
        );
        assert_eq!(
            outcome_distribution(&ket, &[1, 1]),
            Err(MeasureError::DuplicateQubit(1))
        );
        assert!(matches!(
            collapse(&ket, &[0, 1], &s("01")),
            Err(MeasureError::ZeroProbability(_))
        ));
        assert!(matches!(
            collapse(&ket, &[0, 1], &s("1")),
            Err(MeasureError::PatternWidth { .. })
        ));
    }

    #[test]
    fn sampling_is_reproducible() {
        let ket = run_hash(&fixtures::bell(), &s("00"));
        let a = sample(&ket, &[0, 1], 42, 500).unwrap();
        let b = sample(&ket, &[0, 1], 42, 500).unwrap();
        assert_eq!(a, b);
        let counts = tally(&a);
        assert_eq!(
            counts.keys().cloned().collect::<Vec<_>>(),
            vec![s("00"), s("11")]
        );
    }

    #[test]
    fn simon_samples_only_see_valid_shifts() {
        let ket = run_hash(&fixtures::simon(), &s("0000"));
        for seed in 0..20 {
            let counts = tally(&sample(&ket, &[0, 1], seed, 50).unwrap());
            assert!(counts.keys().all(|p| *p == s("00") || *p == s("11")));
        }
    }
}
