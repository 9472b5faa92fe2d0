//! Simulation of {CCX, H} quantum circuits as trees of continuations.
//!
//! Each H gate splits the evaluation into two branches that both run the rest
//! of the circuit. A [`Collector`] decides what the leaves of that tree become:
//!
//! - [`ListCollector`] keeps every path, in depth-first order;
//! - [`HashCollector`] sums amplitudes per basis state, so paths interfere;
//! - [`prob::ProbCollector`] builds a classical expectation functional.
//!
//! Amplitudes are exact ([`Amplitude`]), so destructive interference cancels
//! to an exact zero. [`dense`] is an independent state-vector simulator used
//! for cross-checking.
//!
//! ```
//! use qkont::{fixtures, run_hash, BasisState};
//!
//! let ket = run_hash(&fixtures::hxh(), &BasisState::zeros(1));
//! assert_eq!(ket.len(), 1);
//! ```

pub mod amplitude;
pub mod circuit;
pub mod dense;
pub mod fixtures;
pub mod interpreter;
pub mod ket;
pub mod measure;
pub mod parse;
pub mod prob;
pub mod state;
pub mod trace;

pub use amplitude::{format_amplitude, Amplitude, AmplitudeError, Probability};
pub use circuit::{Circuit, Control, Gate, GateFault, ValidationError};
pub use interpreter::{
    apply_ccx, eval_circuit, eval_gate, run_hash, run_hash_ket, run_hash_parallel, run_list,
    Collector, CommutativeCollector, HashCollector, ListCollector, WeightedState,
};
pub use ket::Ket;
pub use parse::{parse_circuit, ParseError};
pub use prob::run_prob;
pub use state::BasisState;
