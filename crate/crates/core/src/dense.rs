//! Dense state-vector simulator used as an independent reference.
//!
//! Index `i` of the vector is the basis state whose bits, read with qubit 0 as
//! the most significant, spell `i`.

use std::f64::consts::SQRT_2;

use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::ket::Ket;
use crate::state::BasisState;

pub const MAX_DENSE_QUBITS: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DenseError {
    #[error("dense simulation of {0} qubits exceeds the limit of {MAX_DENSE_QUBITS}")]
    TooManyQubits(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<f64>,
}

impl StateVector {
    /// Unit vector at `init`.
    pub fn basis(init: &BasisState) -> Result<Self, DenseError> {
        let qubits = init.width();
        if qubits > MAX_DENSE_QUBITS {
            return Err(DenseError::TooManyQubits(qubits));
        }
        let mut amps = vec![0.0; 1 << qubits];
        amps[init.to_index()] = 1.0;
        Ok(StateVector { qubits, amps })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amps
    }

    pub fn get(&self, state: &BasisState) -> f64 {
        self.amps[state.to_index()]
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum()
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.qubits - 1 - qubit)
    }

    pub fn apply(&mut self, gate: &Gate) {
        match *gate {
            Gate::H { target } => {
                let bit = self.mask(target);
                for i in (0..self.amps.len()).filter(|i| i & bit == 0) {
                    let (a, b) = (self.amps[i], self.amps[i | bit]);
                    self.amps[i] = (a + b) / SQRT_2;
                    self.amps[i | bit] = (a - b) / SQRT_2;
                }
            }
            Gate::Ccx { controls, target } => {
                let bit = self.mask(target);
                let mut required = 0;
                for control in controls {
                    match control {
                        crate::Control::Wire(q) => required |= self.mask(q),
                        crate::Control::Const(true) => {}
                        crate::Control::Const(false) => return,
                    }
                }
                for i in (0..self.amps.len()).filter(|i| i & bit == 0 && i & required == required) {
                    self.amps.swap(i, i | bit);
                }
            }
        }
    }

    /// Basis states with an amplitude above `eps` in magnitude, in index order.
    pub fn nonzero(&self, eps: f64) -> impl Iterator<Item = (BasisState, f64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.abs() > eps)
            .map(|(i, &a)| (BasisState::from_index(i, self.qubits), a))
    }

    /// Float projection of an exact ket onto a dense vector.
    pub fn from_ket(ket: &Ket, qubits: usize) -> Result<Self, DenseError> {
        if qubits > MAX_DENSE_QUBITS {
            return Err(DenseError::TooManyQubits(qubits));
        }
        let mut amps = vec![0.0; 1 << qubits];
        for (state, amp) in ket.iter() {
            amps[state.to_index()] = amp.to_f64();
        }
        Ok(StateVector { qubits, amps })
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        assert_eq!(self.qubits, other.qubits);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn dense_apply(mut sv: StateVector, gate: &Gate) -> StateVector {
    sv.apply(gate);
    sv
}

pub fn dense_run(circuit: &Circuit, init: &BasisState) -> Result<StateVector, DenseError> {
    assert_eq!(
        init.width(),
        circuit.qubits(),
        "initial state width mismatch"
    );
    Ok(circuit
        .gates()
        .iter()
        .fold(StateVector::basis(init)?, dense_apply))
}
