use indexmap::IndexMap;

use crate::amplitude::{Amplitude, AmplitudeError, Probability};
use crate::state::BasisState;

/// A superposition: basis states mapped to nonzero amplitudes.
///
/// Entries keep the order in which they were first inserted, and an entry
/// whose amplitude sums to zero is removed immediately. Equality ignores
/// entry order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ket {
    entries: IndexMap<BasisState, Amplitude>,
}

impl Ket {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(state: BasisState, amp: Amplitude) -> Self {
        let mut ket = Ket::new();
        if !amp.is_zero() {
            ket.entries.insert(state, amp);
        }
        ket
    }

    /// Builds a ket by summing the amplitudes of repeated states.
    pub fn from_entries<I>(entries: I) -> Result<Self, AmplitudeError>
    where
        I: IntoIterator<Item = (BasisState, Amplitude)>,
    {
        let mut ket = Ket::new();
        for (state, amp) in entries {
            ket.add(state, amp)?;
        }
        Ok(ket)
    }

    /// Adds `amp` to the entry for `state`, dropping it if the sum is zero.
    pub fn add(&mut self, state: BasisState, amp: Amplitude) -> Result<(), AmplitudeError> {
        if amp.is_zero() {
            return Ok(());
        }
        match self.entries.get_index_of(&state) {
            Some(i) => {
                let sum = self.entries[i].checked_add(amp)?;
                if sum.is_zero() {
                    self.entries.shift_remove_index(i);
                } else {
                    self.entries[i] = sum;
                }
            }
            None => {
                self.entries.insert(state, amp);
            }
        }
        Ok(())
    }

    /// Union with `+` on shared states; entries of `self` come first.
    pub fn merge(mut self, other: Ket) -> Result<Ket, AmplitudeError> {
        for (state, amp) in other.entries {
            self.add(state, amp)?;
        }
        Ok(self)
    }

    pub fn get(&self, state: &BasisState) -> Option<Amplitude> {
        self.entries.get(state).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisState, Amplitude)> + '_ {
        self.entries.iter().map(|(s, a)| (s, *a))
    }

    pub fn states(&self) -> impl Iterator<Item = &BasisState> + '_ {
        self.entries.keys()
    }

    /// Qubit count of the entries, if any.
    pub fn width(&self) -> Option<usize> {
        self.entries.keys().next().map(BasisState::width)
    }

    /// Σ |amp|², exactly.
    pub fn norm_sq(&self) -> Probability {
        self.entries.values().map(|a| a.probability()).sum()
    }

    /// Smallest half-exponent at which every numerator is an integer, or
    /// `None` when entries mix half-exponent parities.
    pub fn common_half_exp(&self) -> Option<u32> {
        let max = self.entries.values().map(|a| a.half_exp()).max()?;
        self.entries
            .values()
            .all(|a| (max - a.half_exp()) % 2 == 0)
            .then_some(max)
    }

    /// Numerators written over `(1/√2)^half_exp`, in entry order.
    pub fn numerators_at(&self, half_exp: u32) -> Option<Vec<i64>> {
        self.entries
            .values()
            .map(|a| a.numerator_at(half_exp))
            .collect()
    }
}

impl FromIterator<(BasisState, Amplitude)> for Ket {
    /// # Panics
    /// If two amplitudes for the same state cannot be added.
    fn from_iter<I: IntoIterator<Item = (BasisState, Amplitude)>>(iter: I) -> Self {
        Ket::from_entries(iter).expect("incompatible amplitudes in ket")
    }
}

impl<'a> IntoIterator for &'a Ket {
    type Item = (&'a BasisState, &'a Amplitude);
    type IntoIter = indexmap::map::Iter<'a, BasisState, Amplitude>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}
