//! Parser for the line-oriented `.qc` circuit format:
//!
//! ```text
//! # comments run to end of line
//! qubits 3
//! h 0
//! cx 0 1
//! rz 2 0.785
//! ```

use std::fmt;

use super::{Circuit, Gate, GateKind, MAX_CIRCUIT_QUBITS};

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    MissingHeader,
    DuplicateHeader,
    InvalidQubitCount(String),
    UnknownMnemonic(String),
    ArityMismatch {
        mnemonic: String,
        expected: usize,
        found: usize,
    },
    InvalidIndex(String),
    QubitOutOfRange {
        index: usize,
        n: usize,
    },
    RepeatedIndex(usize),
    MissingAngle(String),
    UnexpectedAngle(String),
    InvalidAngle(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        match self {
            MissingHeader => write!(f, "expected `qubits <n>` before any gate"),
            DuplicateHeader => write!(f, "duplicate `qubits` header"),
            InvalidQubitCount(s) => {
                write!(
                    f,
                    "invalid qubit count `{s}` (expected 1..={MAX_CIRCUIT_QUBITS})"
                )
            }
            UnknownMnemonic(m) => write!(f, "unknown mnemonic `{m}`"),
            ArityMismatch {
                mnemonic,
                expected,
                found,
            } => {
                write!(
                    f,
                    "`{mnemonic}` takes {expected} qubit index(es), found {found}"
                )
            }
            InvalidIndex(s) => write!(f, "invalid qubit index `{s}`"),
            QubitOutOfRange { index, n } => {
                write!(f, "qubit index {index} out of range for {n} qubits")
            }
            RepeatedIndex(q) => write!(f, "qubit {q} repeated within one gate"),
            MissingAngle(m) => write!(f, "`{m}` requires an angle in radians"),
            UnexpectedAngle(m) => write!(f, "`{m}` takes no angle"),
            InvalidAngle(s) => write!(f, "invalid angle `{s}`"),
        }
    }
}

/// A diagnostic with 1-based line and column of the offending token.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in code.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((byte, col + 1)),
            (true, Some((b, c))) => {
                tokens.push(Token {
                    text: &code[b..byte],
                    column: c,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &code[b..],
            column: c,
        });
    }
    tokens
}

fn looks_like_angle(s: &str) -> bool {
    s.parse::<usize>().is_err() && s.parse::<f64>().is_ok()
}

/// Parses `.qc` source into a circuit, keeping gates in source order.
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    let mut last_line = 1;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let tokens = tokenize(line);
        let Some(head) = tokens.first() else { continue };
        let err = |column: usize, kind: ParseErrorKind| ParseError {
            line: line_no,
            column,
            kind,
        };

        if head.text == "qubits" {
            if circuit.is_some() {
                return Err(err(head.column, ParseErrorKind::DuplicateHeader));
            }
            let (count_tok, rest) = match &tokens[1..] {
                [count, rest @ ..] => (count, rest),
                [] => {
                    return Err(err(
                        head.column,
                        ParseErrorKind::InvalidQubitCount(String::new()),
                    ))
                }
            };
            if let Some(extra) = rest.first() {
                return Err(err(
                    extra.column,
                    ParseErrorKind::InvalidQubitCount(extra.text.to_string()),
                ));
            }
            let n = count_tok
                .text
                .parse::<usize>()
                .ok()
                .and_then(|n| Circuit::new(n).ok())
                .ok_or_else(|| {
                    err(
                        count_tok.column,
                        ParseErrorKind::InvalidQubitCount(count_tok.text.to_string()),
                    )
                })?;
            circuit = Some(n);
            continue;
        }

        let kind: GateKind = head.text.parse().map_err(|_| {
            err(
                head.column,
                ParseErrorKind::UnknownMnemonic(head.text.to_string()),
            )
        })?;
        let Some(circ) = circuit.as_mut() else {
            return Err(err(head.column, ParseErrorKind::MissingHeader));
        };
        let n = circ.n();
        let args = &tokens[1..];
        let arity = kind.arity();

        let (index_toks, angle) = if kind.is_rotation() {
            match args.len() {
                len if len == arity && !looks_like_angle(args[arity - 1].text) => {
                    let last = &args[arity - 1];
                    return Err(err(
                        last.column + last.text.chars().count(),
                        ParseErrorKind::MissingAngle(head.text.to_string()),
                    ));
                }
                len if len == arity + 1 => {
                    let tok = &args[arity];
                    let theta = tok
                        .text
                        .parse::<f64>()
                        .ok()
                        .filter(|t| t.is_finite())
                        .ok_or_else(|| {
                            err(
                                tok.column,
                                ParseErrorKind::InvalidAngle(tok.text.to_string()),
                            )
                        })?;
                    (&args[..arity], Some(theta))
                }
                len => {
                    let found = len.saturating_sub(1);
                    return Err(err(
                        head.column,
                        ParseErrorKind::ArityMismatch {
                            mnemonic: head.text.to_string(),
                            expected: arity,
                            found,
                        },
                    ));
                }
            }
        } else {
            if args.len() == arity + 1 && looks_like_angle(args[arity].text) {
                return Err(err(
                    args[arity].column,
                    ParseErrorKind::UnexpectedAngle(head.text.to_string()),
                ));
            }
            if args.len() != arity {
                return Err(err(
                    head.column,
                    ParseErrorKind::ArityMismatch {
                        mnemonic: head.text.to_string(),
                        expected: arity,
                        found: args.len(),
                    },
                ));
            }
            (args, None)
        };

        let mut targets = Vec::with_capacity(arity);
        for tok in index_toks {
            let q = tok.text.parse::<usize>().map_err(|_| {
                err(
                    tok.column,
                    ParseErrorKind::InvalidIndex(tok.text.to_string()),
                )
            })?;
            if q >= n {
                return Err(err(
                    tok.column,
                    ParseErrorKind::QubitOutOfRange { index: q, n },
                ));
            }
            if targets.contains(&q) {
                return Err(err(tok.column, ParseErrorKind::RepeatedIndex(q)));
            }
            targets.push(q);
        }
        let gate = Gate::new(kind, &targets, angle).expect("validated above");
        circ.push(gate).expect("validated above");
    }

    circuit.ok_or(ParseError {
        line: last_line,
        column: 1,
        kind: ParseErrorKind::MissingHeader,
    })
}
