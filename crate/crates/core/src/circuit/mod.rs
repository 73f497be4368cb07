//! Circuit representation and the `.qc` text format.

mod gate;
mod parse;

use std::fmt;

pub use gate::{Gate, GateKind};
pub use parse::{parse_circuit, ParseError, ParseErrorKind};

use crate::error::{Error, Result};

/// Largest qubit count a circuit may declare; basis indices must fit in a `usize`.
pub const MAX_CIRCUIT_QUBITS: usize = 48;

/// An ordered gate list on `n` qubits. Qubit 0 is the polarized qubit and
/// the most significant bit of every basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_CIRCUIT_QUBITS {
            return Err(Error::InvalidCircuit(format!(
                "qubit count must be in 1..={MAX_CIRCUIT_QUBITS}, got {n}"
            )));
        }
        Ok(Circuit {
            n,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(n: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Circuit::new(n)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        if gate.max_target() >= self.n {
            return Err(Error::InvalidCircuit(format!(
                "gate `{gate}` addresses qubit {} of a {}-qubit circuit",
                gate.max_target(),
                self.n
            )));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// The adjoint circuit: gates reversed, each replaced by its adjoint.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n: self.n,
            gates: self.gates.iter().rev().map(Gate::adjoint).collect(),
        }
    }
}

/// Serializes to the `.qc` format accepted by [`parse_circuit`].
impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}
