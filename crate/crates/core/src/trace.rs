//! Explicit evaluation trees and their Graphviz rendering.

use std::fmt::Write as _;

use indexmap::IndexMap;
use thiserror::Error;

use crate::amplitude::format_amplitude;
use crate::circuit::{Circuit, Gate};
use crate::interpreter::{apply_ccx, h_branches, WeightedState};
use crate::state::BasisState;

/// Default cap on the number of H gates a traced circuit may contain.
pub const DEFAULT_MAX_H: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("circuit has {h_count} H gates; tracing is limited to {limit} (2^h leaves)")]
    TooLarge { h_count: usize, limit: usize },
}

/// One node of the evaluation tree.
///
/// Inner nodes hold the state that reaches an H gate and its two branches;
/// leaves hold a final weighted state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalTree {
    pub state: WeightedState,
    pub split: Option<Split>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    /// Index of the H gate in the circuit.
    pub gate: usize,
    pub children: Box<[EvalTree; 2]>,
}

impl EvalTree {
    pub fn is_leaf(&self) -> bool {
        self.split.is_none()
    }

    /// Leaves in depth-first, left-first order.
    pub fn leaves(&self) -> Vec<&WeightedState> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a WeightedState>) {
        match &self.split {
            None => out.push(&self.state),
            Some(split) => split.children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match &self.split {
            None => 1,
            Some(split) => split.children.iter().map(EvalTree::leaf_count).sum(),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .split
            .as_ref()
            .map_or(0, |s| s.children.iter().map(EvalTree::node_count).sum())
    }
}

pub fn trace_tree(
    circuit: &Circuit,
    init: &BasisState,
    max_h: usize,
) -> Result<EvalTree, TraceError> {
    let h_count = circuit.h_count();
    if h_count > max_h {
        return Err(TraceError::TooLarge {
            h_count,
            limit: max_h,
        });
    }
    assert_eq!(
        init.width(),
        circuit.qubits(),
        "initial state width mismatch"
    );
    Ok(build(
        WeightedState::basis(init.clone()),
        circuit.gates(),
        0,
    ))
}

fn build(mut v: WeightedState, gates: &[Gate], offset: usize) -> EvalTree {
    for (i, gate) in gates.iter().enumerate() {
        match *gate {
            Gate::Ccx {
                controls: [c1, c2],
                target,
            } => v = apply_ccx(v, c1, c2, target),
            Gate::H { target } => {
                let rest = &gates[i + 1..];
                let (left, right) = h_branches(v.clone(), target);
                let children = Box::new([
                    build(left, rest, offset + i + 1),
                    build(right, rest, offset + i + 1),
                ]);
                return EvalTree {
                    state: v,
                    split: Some(Split {
                        gate: offset + i,
                        children,
                    }),
                };
            }
        }
    }
    EvalTree {
        state: v,
        split: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Interference {
    /// Same state, opposite amplitudes.
    Annihilate,
    /// Same state, same amplitude.
    Reinforce,
}

/// Two leaves (by index into the leaf sequence) that reach the same state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeafPair {
    pub first: usize,
    pub second: usize,
    pub kind: Interference,
}

/// Pairs up leaves reaching the same basis state. Within each state, a leaf
/// is matched first with the earliest later leaf of opposite amplitude, then
/// with the earliest of equal amplitude; leaves with no partner stay unpaired.
pub fn interference_pairs(leaves: &[&WeightedState]) -> Vec<LeafPair> {
    let mut groups: IndexMap<&BasisState, Vec<usize>> = IndexMap::new();
    for (i, leaf) in leaves.iter().enumerate() {
        groups.entry(&leaf.state).or_default().push(i);
    }
    let mut pairs = Vec::new();
    for mut group in groups.into_values() {
        while let Some(first) = (!group.is_empty()).then(|| group.remove(0)) {
            let amp = leaves[first].amp;
            let partner = group
                .iter()
                .position(|&j| leaves[j].amp == -amp)
                .map(|p| (p, Interference::Annihilate))
                .or_else(|| {
                    group
                        .iter()
                        .position(|&j| leaves[j].amp == amp)
                        .map(|p| (p, Interference::Reinforce))
                });
            if let Some((p, kind)) = partner {
                let second = group.remove(p);
                pairs.push(LeafPair {
                    first,
                    second,
                    kind,
                });
            }
        }
    }
    pairs.sort_by_key(|p| p.first);
    pairs
}

/// Renders the tree as a left-to-right DOT digraph. Edges carry the child's
/// amplitude; leaves reaching the same state are joined by dashed red
/// (annihilate) or solid blue (reinforce) connectors.
pub fn to_dot(tree: &EvalTree, ascii: bool) -> String {
    let mut out = String::from("digraph evaluation {\n  rankdir=LR;\n  node [shape=plaintext];\n");
    let mut leaf_ids = Vec::new();
    let mut next_id = 0;
    emit_node(tree, ascii, &mut out, &mut next_id, &mut leaf_ids);

    let leaves = tree.leaves();
    for pair in interference_pairs(&leaves) {
        let (style, color, label) = match pair.kind {
            Interference::Annihilate => ("dashed", "red", "annihilate"),
            Interference::Reinforce => ("solid", "blue", "reinforce"),
        };
        let _ = writeln!(
            out,
            "  n{} -> n{} [dir=both, constraint=false, style={style}, color={color}, label=\"{label}\"];",
            leaf_ids[pair.first], leaf_ids[pair.second]
        );
    }
    out.push_str("}\n");
    out
}

fn emit_node(
    tree: &EvalTree,
    ascii: bool,
    out: &mut String,
    next_id: &mut usize,
    leaf_ids: &mut Vec<usize>,
) -> usize {
    let id = *next_id;
    *next_id += 1;
    let _ = writeln!(out, "  n{id} [label=\"{}\"];", tree.state.state.ket(ascii));
    match &tree.split {
        None => leaf_ids.push(id),
        Some(split) => {
            for child in split.children.iter() {
                let child_id = emit_node(child, ascii, out, next_id, leaf_ids);
                let _ = writeln!(
                    out,
                    "  n{id} -> n{child_id} [label=\"{}\"];",
                    format_amplitude(child.state.amp.to_f64())
                );
            }
        }
    }
    id
}
