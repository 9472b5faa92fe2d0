use std::collections::BTreeMap;

use num_rational::Ratio;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qkont::dense::{dense_run, StateVector};
use qkont::measure::{collapse, outcome_distribution};
use qkont::prob::{choose_p, const_p, expectation, Distribution};
use qkont::{
    fixtures, parse_circuit, run_hash, run_list, run_prob, Amplitude, BasisState, Circuit, Control,
    Gate, Ket, Probability,
};

fn circuit_and_init() -> impl Strategy<Value = (Circuit, BasisState)> {
    (1usize..=6, 0usize..=12, any::<u64>()).prop_map(|(n, g, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = fixtures::random_circuit(&mut rng, n, g);
        let init = fixtures::random_state(&mut rng, n);
        (c, init)
    })
}

fn amplitude() -> impl Strategy<Value = Amplitude> {
    (-(1i64 << 20)..(1i64 << 20), 0u32..24).prop_map(|(k, h)| Amplitude::new(k, h))
}

/// Amplitudes whose half-exponents share a parity.
fn same_parity_triple() -> impl Strategy<Value = (Amplitude, Amplitude, Amplitude)> {
    (
        any::<bool>(),
        prop::array::uniform3((-(1i64 << 20)..(1i64 << 20), 0u32..12)),
    )
        .prop_map(|(odd, xs)| {
            let [a, b, c] = xs.map(|(k, h)| Amplitude::new(k, 2 * h + u32::from(odd)));
            (a, b, c)
        })
}

fn group_by_state(leaves: &[qkont::WeightedState]) -> Ket {
    Ket::from_entries(leaves.iter().map(|w| (w.state.clone(), w.amp))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonicalization_is_idempotent(a in amplitude()) {
        prop_assert_eq!(Amplitude::new(a.numerator(), a.half_exp()), a);
        prop_assert!(a.numerator() == 0 && a.half_exp() == 0 || a.numerator() % 2 != 0 || a.half_exp() < 2);
    }

    #[test]
    fn addition_is_exact_and_lawful((a, b, c) in same_parity_triple()) {
        prop_assert_eq!(a.checked_add(-a).unwrap().numerator(), 0);
        prop_assert_eq!(a.checked_add(b).unwrap(), b.checked_add(a).unwrap());
        let left = a.checked_add(b).unwrap().checked_add(c).unwrap();
        let right = a.checked_add(b.checked_add(c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let sum = a.checked_add(b).unwrap().to_f64();
        prop_assert!((sum - (a.to_f64() + b.to_f64())).abs() <= 1e-12 * (1.0 + sum.abs()));
    }

    #[test]
    fn probability_matches_float_square(a in amplitude()) {
        let p = a.probability();
        let f = a.to_f64();
        let exact = *p.numer() as f64 / *p.denom() as f64;
        prop_assert!((exact - f * f).abs() <= 1e-9 * (1.0 + f * f));
    }

    #[test]
    fn leaf_count_is_two_to_the_h((c, init) in circuit_and_init()) {
        prop_assert_eq!(run_list(&c, &init).len(), 1usize << c.h_count());
    }

    #[test]
    fn list_grouping_equals_hash((c, init) in circuit_and_init()) {
        let grouped = group_by_state(&run_list(&c, &init));
        let hashed = run_hash(&c, &init);
        prop_assert_eq!(&grouped, &hashed);
        // first-reached order agrees when no state cancels and reappears
        prop_assert!(hashed.iter().all(|(_, a)| !a.is_zero()));
    }

    #[test]
    fn exact_norm_conservation((c, init) in circuit_and_init()) {
        let h = c.h_count() as u32;
        let ket = run_hash(&c, &init);
        let numerators = ket.numerators_at(h).unwrap();
        let sum: i128 = numerators.iter().map(|&k| i128::from(k) * i128::from(k)).sum();
        prop_assert_eq!(sum, 1i128 << h);
        prop_assert_eq!(ket.norm_sq(), Probability::from_integer(1));
    }

    #[test]
    fn hash_matches_dense_oracle((c, init) in circuit_and_init()) {
        let exact = StateVector::from_ket(&run_hash(&c, &init), c.qubits()).unwrap();
        let dense = dense_run(&c, &init).unwrap();
        prop_assert!(exact.max_abs_diff(&dense) <= 1e-9);
        prop_assert!((dense.norm_sq() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn double_gates_are_identity((c, init) in circuit_and_init(), pick in any::<prop::sample::Index>()) {
        let n = c.qubits();
        let q = pick.index(n);
        let hh = Circuit::new(n, vec![Gate::h(q), Gate::h(q)]).unwrap();
        prop_assert_eq!(run_hash(&hh, &init), Ket::singleton(init.clone(), Amplitude::one()));

        // doubling any CCX of a random circuit leaves its result unchanged
        let base = run_hash(&c, &init);
        for (i, g) in c.gates().iter().enumerate().filter(|(_, g)| !g.is_h()) {
            let mut gates = c.gates().to_vec();
            gates.insert(i, *g);
            gates.insert(i, *g);
            let doubled = Circuit::new(n, gates).unwrap();
            prop_assert_eq!(&run_hash(&doubled, &init), &base);
        }
    }

    #[test]
    fn merge_order_is_irrelevant((c, init) in circuit_and_init(), seed in any::<u64>()) {
        let mut leaves = run_list(&c, &init);
        leaves.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let singles: Vec<Ket> = leaves.iter().map(|w| Ket::singleton(w.state.clone(), w.amp)).collect();
        let left = singles.iter().cloned().try_fold(Ket::new(), |a, b| a.merge(b)).unwrap();
        let right = singles.iter().rev().cloned().try_fold(Ket::new(), |a, b| b.merge(a)).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&left, &run_hash(&c, &init));
    }

    #[test]
    fn hadamard_sign_rule(n in 1usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut init = fixtures::random_state(&mut rng, n);
        let t = seed as usize % n;
        init.set(t, true);
        let out = run_list(&Circuit::new(n, vec![Gate::h(t)]).unwrap(), &init);
        prop_assert_eq!(out.len(), 2);
        prop_assert_eq!(&out[0].state, &init.flipped(t));
        prop_assert_eq!(out[0].amp, Amplitude::new(1, 1));
        prop_assert_eq!(&out[1].state, &init);
        prop_assert_eq!(out[1].amp, Amplitude::new(-1, 1));
    }

    #[test]
    fn print_parse_round_trip((c, _init) in circuit_and_init()) {
        prop_assert_eq!(parse_circuit(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn prob_run_keeps_every_path((c, init) in circuit_and_init()) {
        let prob = run_prob(&c, &init);
        let list = run_list(&c, &init);
        prop_assert_eq!(prob.len(), list.len());
        let mut a: Vec<_> = prob.iter().map(|w| w.amp.abs()).collect();
        let mut b: Vec<_> = list.iter().map(|w| w.amp.abs()).collect();
        a.sort_by_key(|x| (x.half_exp(), x.numerator()));
        b.sort_by_key(|x| (x.half_exp(), x.numerator()));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn distribution_linearity(
        values in prop::collection::vec(-10.0f64..10.0, 1..8),
        biases in prop::collection::vec(0.0f64..=1.0, 8),
        fs in prop::collection::vec(-5.0f64..5.0, 8),
        gs in prop::collection::vec(-5.0f64..5.0, 8),
        alpha in -3.0f64..3.0,
        beta in -3.0f64..3.0,
    ) {
        let mut leaves: Vec<Distribution<usize>> = (0..values.len()).map(const_p).collect();
        let mut i = 0;
        while leaves.len() > 1 {
            let right = leaves.pop().unwrap();
            let left = leaves.pop().unwrap();
            leaves.push(choose_p(biases[i % biases.len()], left, right));
            i += 1;
        }
        let d = leaves.pop().unwrap();
        let f = |x: &usize| fs[*x];
        let g = |x: &usize| gs[*x];
        let combined = |x: &usize| alpha * fs[*x] + beta * gs[*x];
        let lhs = expectation(&combined, &d);
        let rhs = alpha * expectation(&f, &d) + beta * expectation(&g, &d);
        prop_assert!((lhs - rhs).abs() <= 1e-9);
        prop_assert!((expectation(&|_: &usize| 1.0, &d) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn outcome_probabilities_sum_to_one((c, init) in circuit_and_init(), seed in any::<u64>()) {
        let ket = run_hash(&c, &init);
        let mut qubits: Vec<usize> = (0..c.qubits()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        qubits.shuffle(&mut rng);
        let k = 1 + seed as usize % c.qubits();
        let subset = &qubits[..k];
        let dist = outcome_distribution(&ket, subset).unwrap();
        prop_assert_eq!(dist.values().sum::<Probability>(), Probability::from_integer(1));

        // collapsing on any outcome yields a point mass on it
        for pattern in dist.keys() {
            let outcome = collapse(&ket, subset, pattern).unwrap();
            prop_assert_eq!(outcome.norm_sq, dist[pattern]);
            let again = outcome_distribution(&outcome.collapsed, subset).unwrap();
            prop_assert_eq!(again, BTreeMap::from([(pattern.clone(), Probability::from_integer(1))]));
        }
    }

    #[test]
    fn two_stage_measurement_matches_joint((c, init) in circuit_and_init(), seed in any::<u64>()) {
        prop_assume!(c.qubits() >= 2);
        let ket = run_hash(&c, &init);
        let mut qubits: Vec<usize> = (0..c.qubits()).collect();
        qubits.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let split = 1 + seed as usize % (c.qubits() - 1);
        let (first, second) = qubits.split_at(split);
        let joint = outcome_distribution(&ket, &qubits).unwrap();

        let mut staged: BTreeMap<BasisState, Probability> = BTreeMap::new();
        for (a, pa) in outcome_distribution(&ket, first).unwrap() {
            let collapsed = collapse(&ket, first, &a).unwrap().collapsed;
            for (b, pb) in outcome_distribution(&collapsed, second).unwrap() {
                let bits: Vec<bool> = a.bits().chain(b.bits()).collect();
                staged.insert(BasisState::from_bits(&bits), pa * pb);
            }
        }
        prop_assert_eq!(staged, joint);
    }
}

#[test]
fn x_is_ccx_with_true_controls() {
    for n in 1..4 {
        for idx in 0..(1usize << n) {
            let init = BasisState::from_index(idx, n);
            for t in 0..n {
                let sugar = Circuit::new(n, vec![Gate::x(t)]).unwrap();
                let raw = Circuit::new(
                    n,
                    vec![Gate::ccx(Control::Const(true), Control::Const(true), t)],
                )
                .unwrap();
                assert_eq!(run_list(&sugar, &init), run_list(&raw, &init));
                assert_eq!(run_list(&sugar, &init)[0].state, init.flipped(t));
            }
        }
    }
}

/// Brute force over the two Bell paths: each is reached with probability 1/2.
#[test]
fn bell_indicator_expectation_by_enumeration() {
    let init: BasisState = "00".parse().unwrap();
    let target: BasisState = "00".parse().unwrap();
    let leaves = run_list(&fixtures::bell(), &init);
    let weight = 1.0 / leaves.len() as f64;
    let oracle: f64 = leaves
        .iter()
        .filter(|w| w.state == target)
        .map(|_| weight)
        .sum();
    assert_eq!(oracle, 0.5);

    let d = qkont::prob::run_prob_distribution(&fixtures::bell(), &init);
    let indicator = |w: &qkont::WeightedState| f64::from(u8::from(w.state == target));
    assert_eq!(expectation(&indicator, &d), oracle);
}

#[test]
fn simon_walkthrough_collapse() {
    let init = BasisState::zeros(4);
    let after_oracle = run_hash(&fixtures::simon_oracle(), &init);
    let expected: Ket = ["0000", "0111", "1011", "1100"]
        .iter()
        .map(|b| (b.parse().unwrap(), Amplitude::new(1, 2)))
        .collect();
    assert_eq!(after_oracle, expected);

    let outcome = collapse(&after_oracle, &[2, 3], &"11".parse().unwrap()).unwrap();
    let states: Vec<String> = outcome.collapsed.states().map(|s| s.to_string()).collect();
    assert_eq!(states, ["0111", "1011"]);
    assert!(outcome
        .collapsed
        .iter()
        .all(|(_, a)| a == Amplitude::new(1, 2)));
    assert_eq!(outcome.norm_sq, Ratio::new(1, 2));
}
