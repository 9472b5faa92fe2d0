//! Line-oriented circuit files.
//!
//! ```text
//! # Bell pair
//! qubits 2
//! h 0
//! cx 0 1
//! ```
//!
//! Blank lines and `#` comments are ignored. The first significant line is
//! `qubits <n>`; every further line is `h t`, `x t`, `cx c t` or
//! `ccx c1 c2 t`. CCX controls may also be the constants `#t` / `#f`.

use thiserror::Error;

use crate::circuit::{Circuit, Control, Gate, GateFault, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `qubits <n>` header")]
    MissingHeader,
    #[error("line {line}: {fault}")]
    Invalid { line: usize, fault: GateFault },
    #[error("line {line}: a circuit needs at least one qubit")]
    NoQubits { line: usize },
}

impl ParseError {
    /// True for well-formed input that describes an invalid circuit.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            ParseError::Invalid { .. } | ParseError::NoQubits { .. }
        )
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut qubits = None;
    let mut gates = Vec::new();
    let mut gate_lines = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens = significant_tokens(raw);
        let Some((&head, args)) = tokens.split_first() else {
            continue;
        };
        let syntax = |message: String| ParseError::Syntax { line, message };

        if qubits.is_none() {
            if head != "qubits" {
                return Err(ParseError::MissingHeader);
            }
            let [count] = args else {
                return Err(syntax("expected `qubits <n>`".into()));
            };
            let count = parse_index(count).map_err(syntax)?;
            if count == 0 {
                return Err(ParseError::NoQubits { line });
            }
            qubits = Some(count);
            continue;
        }

        let gate = match (head, args) {
            ("qubits", _) => return Err(syntax("duplicate `qubits` header".into())),
            ("h", [t]) => Gate::h(parse_target(t).map_err(syntax)?),
            ("x", [t]) => Gate::x(parse_target(t).map_err(syntax)?),
            ("cx", [c, t]) => Gate::cx(
                parse_index(c).map_err(syntax)?,
                parse_target(t).map_err(syntax)?,
            ),
            ("ccx", [a, b, t]) => Gate::ccx(
                parse_control(a).map_err(syntax)?,
                parse_control(b).map_err(syntax)?,
                parse_target(t).map_err(syntax)?,
            ),
            ("h" | "x" | "cx" | "ccx", _) => {
                return Err(syntax(format!(
                    "wrong number of operands for `{head}` (got {})",
                    args.len()
                )))
            }
            _ => return Err(syntax(format!("unknown gate `{head}`"))),
        };
        gates.push(gate);
        gate_lines.push(line);
    }

    let qubits = qubits.ok_or(ParseError::MissingHeader)?;
    Circuit::new(qubits, gates).map_err(|err| match err {
        ValidationError::NoQubits => ParseError::NoQubits { line: 0 },
        ValidationError::Gate { index, fault } => ParseError::Invalid {
            line: gate_lines[index],
            fault,
        },
    })
}

/// Tokens before any comment. `#t` and `#f` are operands, any other token
/// starting with `#` opens a comment.
fn significant_tokens(line: &str) -> Vec<&str> {
    line.split_whitespace()
        .take_while(|tok| !tok.starts_with('#') || *tok == "#t" || *tok == "#f")
        .collect()
}

fn parse_index(tok: &str) -> Result<usize, String> {
    if !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected a decimal index, found `{tok}`"));
    }
    tok.parse()
        .map_err(|_| format!("index `{tok}` is too large"))
}

fn parse_target(tok: &str) -> Result<usize, String> {
    if tok == "#t" || tok == "#f" {
        return Err(format!(
            "gate target must be a wire, found constant `{tok}`"
        ));
    }
    parse_index(tok)
}

fn parse_control(tok: &str) -> Result<Control, String> {
    match tok {
        "#t" => Ok(Control::Const(true)),
        "#f" => Ok(Control::Const(false)),
        _ => parse_index(tok).map(Control::Wire),
    }
}
