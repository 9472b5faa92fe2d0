//! Gate and circuit representation.
//!
//! The IR has exactly two gates, CCX and H. `X` and `CX` are CCX with one or
//! both controls fixed to `true`, and a `false` control turns a CCX into the
//! identity.

use std::fmt;

use thiserror::Error;

use crate::state::BasisState;

/// A CCX control: a wire, or a boolean constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Control {
    Wire(usize),
    Const(bool),
}

impl Control {
    pub fn is_satisfied(self, state: &BasisState) -> bool {
        match self {
            Control::Wire(q) => state.get(q),
            Control::Const(b) => b,
        }
    }

    pub fn wire(self) -> Option<usize> {
        match self {
            Control::Wire(q) => Some(q),
            Control::Const(_) => None,
        }
    }
}

impl fmt::Display for Control {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Control::Wire(q) => write!(f, "{q}"),
            Control::Const(true) => f.write_str("#t"),
            Control::Const(false) => f.write_str("#f"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Ccx {
        controls: [Control; 2],
        target: usize,
    },
    H {
        target: usize,
    },
}

impl Gate {
    pub fn ccx(c1: Control, c2: Control, target: usize) -> Self {
        Gate::Ccx {
            controls: [c1, c2],
            target,
        }
    }

    pub fn h(target: usize) -> Self {
        Gate::H { target }
    }

    /// `X t` is `CCX(#t, #t, t)`.
    pub fn x(target: usize) -> Self {
        Self::ccx(Control::Const(true), Control::Const(true), target)
    }

    /// `CX c t` is `CCX(#t, c, t)`.
    pub fn cx(control: usize, target: usize) -> Self {
        Self::ccx(Control::Const(true), Control::Wire(control), target)
    }

    pub fn target(&self) -> usize {
        match *self {
            Gate::Ccx { target, .. } | Gate::H { target } => target,
        }
    }

    pub fn is_h(&self) -> bool {
        matches!(self, Gate::H { .. })
    }

    /// All wires this gate touches, target last.
    pub fn wires(&self) -> Vec<usize> {
        match *self {
            Gate::Ccx { controls, target } => controls
                .iter()
                .filter_map(|c| c.wire())
                .chain(std::iter::once(target))
                .collect(),
            Gate::H { target } => vec![target],
        }
    }

    fn check(&self, qubits: usize) -> Result<(), GateFault> {
        let wires = self.wires();
        if let Some(&wire) = wires.iter().find(|&&w| w >= qubits) {
            return Err(GateFault::WireOutOfRange { wire, qubits });
        }
        for (i, w) in wires.iter().enumerate() {
            if wires[..i].contains(w) {
                return Err(GateFault::DuplicateWire { wire: *w });
            }
        }
        Ok(())
    }
}

/// Renders one line of the circuit file format.
impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H { target } => write!(f, "h {target}"),
            Gate::Ccx {
                controls: [Control::Const(true), Control::Const(true)],
                target,
            } => write!(f, "x {target}"),
            Gate::Ccx {
                controls: [Control::Const(true), Control::Wire(c)],
                target,
            } => write!(f, "cx {c} {target}"),
            Gate::Ccx {
                controls: [a, b],
                target,
            } => write!(f, "ccx {a} {b} {target}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GateFault {
    #[error("wire {wire} out of range for {qubits} qubit(s)")]
    WireOutOfRange { wire: usize, qubits: usize },
    #[error("wire {wire} used more than once in one gate")]
    DuplicateWire { wire: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("a circuit needs at least one qubit")]
    NoQubits,
    #[error("gate {index}: {fault}")]
    Gate { index: usize, fault: GateFault },
}

/// A validated sequence of gates over a fixed number of qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubits: usize, gates: Vec<Gate>) -> Result<Self, ValidationError> {
        if qubits == 0 {
            return Err(ValidationError::NoQubits);
        }
        for (index, gate) in gates.iter().enumerate() {
            gate.check(qubits)
                .map_err(|fault| ValidationError::Gate { index, fault })?;
        }
        Ok(Circuit { qubits, gates })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Number of H gates; every evaluation path crosses each of them once.
    pub fn h_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_h()).count()
    }

    /// Circuit running `self` then `other`.
    pub fn then(&self, other: &Circuit) -> Result<Circuit, ValidationError> {
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Circuit::new(self.qubits.max(other.qubits), gates)
    }
}

/// Pretty-prints in the format accepted by [`crate::parse::parse_circuit`].
impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.qubits)?;
        for gate in &self.gates {
            writeln!(f, "{gate}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sugar_desugars_to_ccx() {
        assert_eq!(
            Gate::x(0),
            Gate::ccx(Control::Const(true), Control::Const(true), 0)
        );
        assert_eq!(
            Gate::cx(0, 1),
            Gate::ccx(Control::Const(true), Control::Wire(0), 1)
        );
    }

    #[test]
    fn validation_rejects_bad_wires() {
        assert_eq!(
            Circuit::new(2, vec![Gate::cx(5, 1)]),
            Err(ValidationError::Gate {
                index: 0,
                fault: GateFault::WireOutOfRange { wire: 5, qubits: 2 }
            })
        );
        assert_eq!(
            Circuit::new(
                2,
                vec![Gate::h(0), Gate::ccx(Control::Wire(0), Control::Wire(0), 1)]
            ),
            Err(ValidationError::Gate {
                index: 1,
                fault: GateFault::DuplicateWire { wire: 0 }
            })
        );
        assert_eq!(
            Circuit::new(2, vec![Gate::cx(1, 1)]).unwrap_err(),
            ValidationError::Gate {
                index: 0,
                fault: GateFault::DuplicateWire { wire: 1 }
            }
        );
        assert_eq!(Circuit::new(0, vec![]), Err(ValidationError::NoQubits));
    }

    #[test]
    fn h_count() {
        assert_eq!(Circuit::new(1, vec![]).unwrap().h_count(), 0);
        let hxh = Circuit::new(1, vec![Gate::h(0), Gate::x(0), Gate::h(0)]).unwrap();
        assert_eq!(hxh.h_count(), 2);
    }

    #[test]
    fn pretty_print() {
        let c = Circuit::new(
            3,
            vec![
                Gate::h(0),
                Gate::x(1),
                Gate::cx(0, 1),
                Gate::ccx(Control::Wire(0), Control::Wire(1), 2),
                Gate::ccx(Control::Wire(2), Control::Const(false), 0),
            ],
        )
        .unwrap();
        assert_eq!(
            c.to_string(),
            "qubits 3\nh 0\nx 1\ncx 0 1\nccx 0 1 2\nccx 2 #f 0\n"
        );
    }
}
