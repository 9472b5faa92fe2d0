//! Continuation-tree evaluation of circuits.
//!
//! Evaluating a circuit from a weighted basis state is a fold over its gates.
//! CCX gates rewrite the state in place. An H gate splits the evaluation: the
//! rest of the circuit (the continuation) runs once for each branch, and a
//! [`Collector`] combines the two results. At the end of the gate sequence the
//! collector's `inject` turns the final weighted state into a result.
//!
//! The continuation is reified as "evaluate the remaining gate suffix", so
//! the shape of the computation is a binary tree with one level per H gate and
//! `2^h` leaves.

use crate::amplitude::{Amplitude, AmplitudeError};
use crate::circuit::{Circuit, Control, Gate};
use crate::ket::Ket;
use crate::state::BasisState;

/// An amplitude paired with the basis state it weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedState {
    pub amp: Amplitude,
    pub state: BasisState,
}

impl WeightedState {
    pub fn new(amp: Amplitude, state: BasisState) -> Self {
        WeightedState { amp, state }
    }

    /// Amplitude one on `state`.
    pub fn basis(state: BasisState) -> Self {
        WeightedState::new(Amplitude::one(), state)
    }

    /// Text rendering, e.g. `(+0.25|0000⟩)`.
    pub fn render(&self, ascii: bool) -> String {
        format!("({}{})", self.amp, self.state.ket(ascii))
    }
}

/// How the results of the two branches of every H split are combined.
pub trait Collector {
    type Output;

    /// Result for a single completed path.
    fn inject(&self, leaf: WeightedState) -> Self::Output;

    /// Combines the results of the left and right branch of a split.
    fn merge(&self, left: Self::Output, right: Self::Output) -> Self::Output;
}

/// Marker for collectors whose `merge` is associative and commutative, so
/// branches may be evaluated in any order or concurrently.
pub trait CommutativeCollector: Collector {}

/// Keeps every leaf, in depth-first left-to-right order.
#[derive(Debug, Clone, Copy, Default)]
pub struct ListCollector;

impl Collector for ListCollector {
    type Output = Vec<WeightedState>;

    fn inject(&self, leaf: WeightedState) -> Vec<WeightedState> {
        vec![leaf]
    }

    fn merge(
        &self,
        mut left: Vec<WeightedState>,
        mut right: Vec<WeightedState>,
    ) -> Vec<WeightedState> {
        left.append(&mut right);
        left
    }
}

/// Sums amplitudes per basis state, so that paths interfere.
#[derive(Debug, Clone, Copy, Default)]
pub struct HashCollector;

impl Collector for HashCollector {
    type Output = Ket;

    fn inject(&self, leaf: WeightedState) -> Ket {
        Ket::singleton(leaf.state, leaf.amp)
    }

    fn merge(&self, left: Ket, right: Ket) -> Ket {
        // All leaves of one evaluation share a half-exponent parity.
        left.merge(right)
            .expect("amplitudes of one evaluation are always addable")
    }
}

impl CommutativeCollector for HashCollector {}

/// Negates `target` when both controls are satisfied.
pub fn apply_ccx(mut v: WeightedState, c1: Control, c2: Control, target: usize) -> WeightedState {
    if c1.is_satisfied(&v.state) && c2.is_satisfied(&v.state) {
        v.state.flip(target);
    }
    v
}

/// The two weighted states an H gate produces, in collection order.
///
/// Target unset: `(d/√2, bs)` then `(d/√2, bs with target set)`.
/// Target set: `(d/√2, bs with target cleared)` then `(-d/√2, bs)`.
pub fn h_branches(v: WeightedState, target: usize) -> (WeightedState, WeightedState) {
    let scaled = v.amp.mul_hscale();
    if v.state.get(target) {
        let flipped = v.state.flipped(target);
        (
            WeightedState::new(scaled, flipped),
            WeightedState::new(-scaled, v.state),
        )
    } else {
        let flipped = v.state.flipped(target);
        (
            WeightedState::new(scaled, v.state),
            WeightedState::new(scaled, flipped),
        )
    }
}

/// Evaluates one gate, handing the resulting state(s) to the continuation `k`.
pub fn eval_gate<C, K>(v: WeightedState, gate: &Gate, collector: &C, mut k: K) -> C::Output
where
    C: Collector + ?Sized,
    K: FnMut(WeightedState) -> C::Output,
{
    match *gate {
        Gate::Ccx {
            controls: [c1, c2],
            target,
        } => k(apply_ccx(v, c1, c2, target)),
        Gate::H { target } => {
            let (left, right) = h_branches(v, target);
            let a = k(left);
            let b = k(right);
            collector.merge(a, b)
        }
    }
}

/// Runs `gates` from `v`; the end of the sequence is the delimiter where the
/// collector injects the final state.
pub fn eval_gates<C>(mut v: WeightedState, mut gates: &[Gate], collector: &C) -> C::Output
where
    C: Collector + ?Sized,
{
    loop {
        match gates.split_first() {
            None => return collector.inject(v),
            Some((h @ Gate::H { .. }, rest)) => {
                return eval_gate(v, h, collector, |w| eval_gates(w, rest, collector));
            }
            Some((
                &Gate::Ccx {
                    controls: [c1, c2],
                    target,
                },
                rest,
            )) => {
                v = apply_ccx(v, c1, c2, target);
                gates = rest;
            }
        }
    }
}

/// Evaluates the whole circuit from `v`.
///
/// # Panics
/// If the width of `v.state` differs from the circuit's qubit count.
pub fn eval_circuit<C>(v: WeightedState, circuit: &Circuit, collector: &C) -> C::Output
where
    C: Collector + ?Sized,
{
    check_width(&v.state, circuit);
    eval_gates(v, circuit.gates(), collector)
}

/// Every path of the evaluation tree, depth-first, left branch first.
pub fn run_list(circuit: &Circuit, init: &BasisState) -> Vec<WeightedState> {
    eval_circuit(WeightedState::basis(init.clone()), circuit, &ListCollector)
}

/// Final superposition with interference applied.
pub fn run_hash(circuit: &Circuit, init: &BasisState) -> Ket {
    eval_circuit(WeightedState::basis(init.clone()), circuit, &HashCollector)
}

/// Same result as [`run_hash`], evaluating the top `depth` levels of H splits
/// on the rayon thread pool.
pub fn run_hash_parallel(circuit: &Circuit, init: &BasisState, depth: usize) -> Ket {
    check_width(init, circuit);
    eval_gates_parallel(
        WeightedState::basis(init.clone()),
        circuit.gates(),
        &HashCollector,
        depth,
    )
}

/// Parallel fold for commutative collectors. Merge order is still left then
/// right, so the result is identical to the sequential one.
pub fn eval_gates_parallel<C>(
    mut v: WeightedState,
    mut gates: &[Gate],
    collector: &C,
    depth: usize,
) -> C::Output
where
    C: CommutativeCollector + Sync,
    C::Output: Send,
{
    if depth == 0 {
        return eval_gates(v, gates, collector);
    }
    loop {
        match gates.split_first() {
            None => return collector.inject(v),
            Some((&Gate::H { target }, rest)) => {
                let (left, right) = h_branches(v, target);
                let (a, b) = rayon::join(
                    || eval_gates_parallel(left, rest, collector, depth - 1),
                    || eval_gates_parallel(right, rest, collector, depth - 1),
                );
                return collector.merge(a, b);
            }
            Some((
                &Gate::Ccx {
                    controls: [c1, c2],
                    target,
                },
                rest,
            )) => {
                v = apply_ccx(v, c1, c2, target);
                gates = rest;
            }
        }
    }
}

/// Continues a superposition through `circuit`: each entry is evaluated with
/// its own amplitude and the results are summed.
pub fn run_hash_ket(circuit: &Circuit, ket: &Ket) -> Result<Ket, AmplitudeError> {
    if let Some(first) = ket.iter().next() {
        let parity = first.1.half_exp() % 2;
        if let Some((_, bad)) = ket.iter().find(|(_, a)| a.half_exp() % 2 != parity) {
            return Err(AmplitudeError::IncompatibleHalfExp {
                left: first.1.half_exp(),
                right: bad.half_exp(),
            });
        }
    }
    ket.iter().try_fold(Ket::new(), |acc, (state, amp)| {
        let branch = eval_circuit(
            WeightedState::new(amp, state.clone()),
            circuit,
            &HashCollector,
        );
        acc.merge(branch)
    })
}

fn check_width(state: &BasisState, circuit: &Circuit) {
    assert_eq!(
        state.width(),
        circuit.qubits(),
        "initial state has {} qubit(s) but the circuit has {}",
        state.width(),
        circuit.qubits()
    );
}
