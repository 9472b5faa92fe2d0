//! Classical distributions encoded as expectation functionals.
//!
//! A distribution over `A` is a function taking an event `A -> f64` to its
//! expected value. Plugged into the circuit evaluator as a collector, with a
//! fair `choose_p` at every H split, it weights paths by probability instead
//! of by amplitude, so nothing ever cancels.

use std::cell::RefCell;
use std::fmt;
use std::sync::Arc;

use crate::circuit::Circuit;
use crate::interpreter::{eval_circuit, Collector, WeightedState};
use crate::state::BasisState;

type Expect<A> = dyn Fn(&dyn Fn(&A) -> f64) -> f64 + Send + Sync;

/// An expectation functional over values of type `A`.
pub struct Distribution<A> {
    expect: Arc<Expect<A>>,
}

impl<A> Clone for Distribution<A> {
    fn clone(&self) -> Self {
        Distribution {
            expect: Arc::clone(&self.expect),
        }
    }
}

impl<A> fmt::Debug for Distribution<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Distribution(..)")
    }
}

impl<A> Distribution<A> {
    pub fn from_fn<F>(expect: F) -> Self
    where
        F: Fn(&dyn Fn(&A) -> f64) -> f64 + Send + Sync + 'static,
    {
        Distribution {
            expect: Arc::new(expect),
        }
    }

    /// Applies the distribution to an event.
    pub fn apply(&self, event: &dyn Fn(&A) -> f64) -> f64 {
        (self.expect)(event)
    }
}

/// Point mass: `f ↦ f(a)`.
pub fn const_p<A>(a: A) -> Distribution<A>
where
    A: Send + Sync + 'static,
{
    Distribution::from_fn(move |f| f(&a))
}

/// Convex combination: `f ↦ p·k1(f) + (1-p)·k2(f)`.
///
/// # Panics
/// If `p` is outside `[0, 1]`.
pub fn choose_p<A: 'static>(p: f64, k1: Distribution<A>, k2: Distribution<A>) -> Distribution<A> {
    assert!((0.0..=1.0).contains(&p), "bias {p} is not a probability");
    Distribution::from_fn(move |f| {
        let p1 = p * k1.apply(f);
        let p2 = (1.0 - p) * k2.apply(f);
        p1 + p2
    })
}

pub fn expectation<A>(f: &dyn Fn(&A) -> f64, k: &Distribution<A>) -> f64 {
    k.apply(f)
}

/// Every value the distribution applies an event to, in application order.
///
/// For distributions built from [`const_p`] and [`choose_p`] this is the
/// leaf sequence of the choice tree, left branch first.
pub fn support<A: Clone>(k: &Distribution<A>) -> Vec<A> {
    let seen = RefCell::new(Vec::new());
    k.apply(&|a: &A| {
        seen.borrow_mut().push(a.clone());
        0.0
    });
    seen.into_inner()
}

/// Collector injecting leaves with [`const_p`] and merging with a biased
/// [`choose_p`].
#[derive(Debug, Clone, Copy)]
pub struct ProbCollector {
    pub bias: f64,
}

impl Default for ProbCollector {
    fn default() -> Self {
        ProbCollector { bias: 0.5 }
    }
}

impl Collector for ProbCollector {
    type Output = Distribution<WeightedState>;

    fn inject(&self, leaf: WeightedState) -> Self::Output {
        const_p(leaf)
    }

    fn merge(&self, left: Self::Output, right: Self::Output) -> Self::Output {
        choose_p(self.bias, left, right)
    }
}

/// Distribution over the leaves of the evaluation tree with unbiased choices.
pub fn run_prob_distribution(circuit: &Circuit, init: &BasisState) -> Distribution<WeightedState> {
    eval_circuit(
        WeightedState::basis(init.clone()),
        circuit,
        &ProbCollector::default(),
    )
}

/// Leaf contributions reachable through the unbiased choice tree, in
/// evaluation order.
pub fn run_prob(circuit: &Circuit, init: &BasisState) -> Vec<WeightedState> {
    support(&run_prob_distribution(circuit, init))
}
