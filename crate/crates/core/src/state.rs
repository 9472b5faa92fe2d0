use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid bitstring {0:?}: expected only '0' and '1'")]
pub struct BitstringError(pub String);

/// A computational basis state over `width` qubits.
///
/// Qubit 0 is the top wire; it is printed leftmost and is the most
/// significant bit of [`BasisState::to_index`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasisState {
    width: usize,
    words: Vec<u64>,
}

impl BasisState {
    pub fn zeros(width: usize) -> Self {
        BasisState {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut state = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            state.set(i, b);
        }
        state
    }

    /// Inverse of [`BasisState::to_index`].
    pub fn from_index(index: usize, width: usize) -> Self {
        let mut state = Self::zeros(width);
        for q in 0..width {
            let shift = width - 1 - q;
            if shift < usize::BITS as usize && (index >> shift) & 1 == 1 {
                state.set(q, true);
            }
        }
        state
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, qubit: usize) -> bool {
        assert!(
            qubit < self.width,
            "qubit {qubit} out of range for width {}",
            self.width
        );
        (self.words[qubit / 64] >> (qubit % 64)) & 1 == 1
    }

    pub fn set(&mut self, qubit: usize, value: bool) {
        assert!(
            qubit < self.width,
            "qubit {qubit} out of range for width {}",
            self.width
        );
        let mask = 1u64 << (qubit % 64);
        if value {
            self.words[qubit / 64] |= mask;
        } else {
            self.words[qubit / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, qubit: usize) {
        assert!(
            qubit < self.width,
            "qubit {qubit} out of range for width {}",
            self.width
        );
        self.words[qubit / 64] ^= 1u64 << (qubit % 64);
    }

    /// Copy with `qubit` negated.
    pub fn flipped(&self, qubit: usize) -> Self {
        let mut next = self.clone();
        next.flip(qubit);
        next
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width).map(|q| self.get(q))
    }

    /// Dense vector index with qubit 0 as the most significant bit.
    pub fn to_index(&self) -> usize {
        assert!(
            self.width <= usize::BITS as usize,
            "basis state too wide for a dense index"
        );
        self.bits().fold(0, |acc, b| (acc << 1) | usize::from(b))
    }

    /// The sub-pattern seen on `qubits`, in the given order.
    pub fn project(&self, qubits: &[usize]) -> BasisState {
        let mut out = BasisState::zeros(qubits.len());
        for (i, &q) in qubits.iter().enumerate() {
            out.set(i, self.get(q));
        }
        out
    }

    pub fn matches(&self, qubits: &[usize], pattern: &BasisState) -> bool {
        qubits
            .iter()
            .enumerate()
            .all(|(i, &q)| self.get(q) == pattern.get(i))
    }

    /// Ket rendering, `|0101⟩` or `|0101>` with `ascii`.
    pub fn ket(&self, ascii: bool) -> String {
        let close = if ascii { '>' } else { '⟩' };
        format!("|{self}{close}")
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{self}⟩")
    }
}

impl FromStr for BasisState {
    type Err = BitstringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(BitstringError(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BasisState::from_bits(&bits))
    }
}

/// Shorter widths first, then lexicographic in display order.
impl Ord for BasisState {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| self.bits().cmp(other.bits()))
    }
}

impl PartialOrd for BasisState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_puts_qubit_zero_first() {
        let mut s = BasisState::zeros(4);
        s.set(0, true);
        assert_eq!(s.to_string(), "1000");
        assert_eq!(s.to_index(), 8);
        assert_eq!(s.ket(false), "|1000⟩");
        assert_eq!(s.ket(true), "|1000>");
    }

    #[test]
    fn parse_and_index_agree() {
        let s: BasisState = "0110".parse().unwrap();
        assert_eq!(s.to_index(), 6);
        assert_eq!(BasisState::from_index(6, 4), s);
        assert!("01a".parse::<BasisState>().is_err());
    }

    #[test]
    fn wide_states_span_words() {
        let mut s = BasisState::zeros(130);
        s.flip(129);
        s.flip(64);
        assert!(s.get(129) && s.get(64) && !s.get(63));
        assert_eq!(s.flipped(129).flipped(64), BasisState::zeros(130));
    }

    #[test]
    fn projection() {
        let s: BasisState = "0111".parse().unwrap();
        assert_eq!(s.project(&[2, 3]).to_string(), "11");
        assert_eq!(s.project(&[3, 0]).to_string(), "10");
        assert!(s.matches(&[1, 0], &"10".parse().unwrap()));
    }

    #[test]
    fn ordering_is_lexicographic() {
        let a: BasisState = "0011".parse().unwrap();
        let b: BasisState = "0100".parse().unwrap();
        assert!(a < b);
    }
}
