//! Small reference circuits.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{Circuit, Control, Gate};
use crate::state::BasisState;

/// `H 0; CX 0 1` on two qubits.
pub fn bell() -> Circuit {
    Circuit::new(2, vec![Gate::h(0), Gate::cx(0, 1)]).unwrap()
}

/// `H 0; X 0; H 0` on one qubit.
pub fn hxh() -> Circuit {
    Circuit::new(1, vec![Gate::h(0), Gate::x(0), Gate::h(0)]).unwrap()
}

/// Input superposition and oracle of the two-bit Simon instance with hidden
/// shift `11`: H on qubits 0 and 1, then the CX layer copying them onto 2, 3.
pub fn simon_oracle() -> Circuit {
    Circuit::new(
        4,
        vec![
            Gate::h(0),
            Gate::h(1),
            Gate::cx(0, 2),
            Gate::cx(0, 3),
            Gate::cx(1, 2),
            Gate::cx(1, 3),
        ],
    )
    .unwrap()
}

/// The closing H layer on qubits 0 and 1.
pub fn simon_readout() -> Circuit {
    Circuit::new(4, vec![Gate::h(0), Gate::h(1)]).unwrap()
}

/// The pure (measurement-free) Simon circuit: oracle then readout.
pub fn simon() -> Circuit {
    simon_oracle().then(&simon_readout()).unwrap()
}

/// A random valid circuit on `qubits` wires with `gates` gates. Roughly a
/// third of the gates are H; CCX controls are distinct wires or constants.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, qubits: usize, gates: usize) -> Circuit {
    assert!(qubits > 0, "need at least one qubit");
    let mut wires: Vec<usize> = (0..qubits).collect();
    let gates = (0..gates)
        .map(|_| {
            wires.shuffle(rng);
            if rng.gen_ratio(1, 3) {
                return Gate::h(wires[0]);
            }
            let mut spare = wires[1..].iter().copied();
            let mut control = |rng: &mut R| match (rng.gen_range(0..4), spare.next()) {
                (0, _) | (_, None) => Control::Const(rng.gen_ratio(7, 8)),
                (_, Some(w)) => Control::Wire(w),
            };
            let c1 = control(rng);
            let c2 = control(rng);
            Gate::ccx(c1, c2, wires[0])
        })
        .collect();
    Circuit::new(qubits, gates).expect("generated circuits are valid")
}

/// A random basis state of the given width.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, width: usize) -> BasisState {
    let bits: Vec<bool> = (0..width).map(|_| rng.gen()).collect();
    BasisState::from_bits(&bits)
}
