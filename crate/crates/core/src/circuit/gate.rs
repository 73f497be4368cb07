use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The supported gate set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    Cx,
    Cz,
    Swap,
    Ccx,
}

impl GateKind {
    pub const ALL: [GateKind; 15] = [
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Rx,
        GateKind::Ry,
        GateKind::Rz,
        GateKind::Cx,
        GateKind::Cz,
        GateKind::Swap,
        GateKind::Ccx,
    ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cx | GateKind::Cz | GateKind::Swap => 2,
            GateKind::Ccx => 3,
            _ => 1,
        }
    }

    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz)
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
            GateKind::Swap => "swap",
            GateKind::Ccx => "ccx",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GateKind::ALL
            .iter()
            .copied()
            .find(|k| k.mnemonic() == s)
            .ok_or_else(|| Error::InvalidGate(format!("unknown mnemonic `{s}`")))
    }
}

/// A gate applied to specific qubits. Immutable once constructed.
///
/// For controlled gates the controls come first: `cx c t`, `ccx c1 c2 t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    targets: Vec<usize>,
    angle: Option<f64>,
}

impl Gate {
    /// Builds a gate, checking arity, distinctness of targets and the angle.
    pub fn new(kind: GateKind, targets: &[usize], angle: Option<f64>) -> Result<Self> {
        if targets.len() != kind.arity() {
            return Err(Error::InvalidGate(format!(
                "`{kind}` acts on {} qubit(s), got {}",
                kind.arity(),
                targets.len()
            )));
        }
        for (i, q) in targets.iter().enumerate() {
            if targets[..i].contains(q) {
                return Err(Error::InvalidGate(format!(
                    "qubit {q} repeated within `{kind}`"
                )));
            }
        }
        match (kind.is_rotation(), angle) {
            (true, None) => {
                return Err(Error::InvalidGate(format!("`{kind}` requires an angle")));
            }
            (false, Some(_)) => {
                return Err(Error::InvalidGate(format!("`{kind}` takes no angle")));
            }
            (true, Some(theta)) if !theta.is_finite() => {
                return Err(Error::InvalidGate(format!("non-finite angle {theta}")));
            }
            _ => {}
        }
        Ok(Gate {
            kind,
            targets: targets.to_vec(),
            angle,
        })
    }

    fn fixed(kind: GateKind, targets: &[usize]) -> Self {
        Gate::new(kind, targets, None).expect("gate targets must be distinct")
    }

    pub fn x(q: usize) -> Self {
        Gate::fixed(GateKind::X, &[q])
    }

    pub fn y(q: usize) -> Self {
        Gate::fixed(GateKind::Y, &[q])
    }

    pub fn z(q: usize) -> Self {
        Gate::fixed(GateKind::Z, &[q])
    }

    pub fn h(q: usize) -> Self {
        Gate::fixed(GateKind::H, &[q])
    }

    pub fn s(q: usize) -> Self {
        Gate::fixed(GateKind::S, &[q])
    }

    pub fn t(q: usize) -> Self {
        Gate::fixed(GateKind::T, &[q])
    }

    pub fn tdg(q: usize) -> Self {
        Gate::fixed(GateKind::Tdg, &[q])
    }

    /// Panics if `theta` is not finite.
    pub fn rotation(kind: GateKind, q: usize, theta: f64) -> Self {
        Gate::new(kind, &[q], Some(theta)).expect("rotation kind with finite angle")
    }

    /// Panics if `control == target`.
    pub fn cx(control: usize, target: usize) -> Self {
        Gate::fixed(GateKind::Cx, &[control, target])
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Gate::fixed(GateKind::Cz, &[a, b])
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Gate::fixed(GateKind::Swap, &[a, b])
    }

    pub fn ccx(c1: usize, c2: usize, target: usize) -> Self {
        Gate::fixed(GateKind::Ccx, &[c1, c2, target])
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn angle(&self) -> Option<f64> {
        self.angle
    }

    pub fn max_target(&self) -> usize {
        self.targets.iter().copied().max().unwrap_or(0)
    }

    pub fn adjoint(&self) -> Gate {
        use GateKind::*;
        let kind = match self.kind {
            S => Sdg,
            Sdg => S,
            T => Tdg,
            Tdg => T,
            k => k,
        };
        Gate {
            kind,
            targets: self.targets.clone(),
            angle: self.angle.map(|theta| -theta),
        }
    }

    /// Dense local matrix, row-major, of dimension `2^arity`. The first
    /// target is the most significant bit of the local index.
    pub fn matrix(&self) -> Vec<Complex64> {
        use GateKind::*;
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let theta = self.angle.unwrap_or(0.0);
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        match self.kind {
            X => vec![zero, one, one, zero],
            Y => vec![zero, -i, i, zero],
            Z => vec![one, zero, zero, -one],
            H => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                vec![h, h, h, -h]
            }
            S => vec![one, zero, zero, i],
            Sdg => vec![one, zero, zero, -i],
            T => vec![
                one,
                zero,
                zero,
                Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            ],
            Tdg => vec![
                one,
                zero,
                zero,
                Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
            ],
            Rx => vec![
                Complex64::new(c, 0.0),
                Complex64::new(0.0, -s),
                Complex64::new(0.0, -s),
                Complex64::new(c, 0.0),
            ],
            Ry => vec![
                Complex64::new(c, 0.0),
                Complex64::new(-s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(c, 0.0),
            ],
            Rz => vec![Complex64::new(c, -s), zero, zero, Complex64::new(c, s)],
            Cx | Cz | Swap | Ccx => {
                let dim = 1 << self.kind.arity();
                let mut m = vec![zero; dim * dim];
                for col in 0..dim {
                    let (row, phase) = match self.kind {
                        Cx if col >= 2 => (col ^ 1, one),
                        Cz if col == 3 => (col, -one),
                        Swap => (((col & 1) << 1) | (col >> 1), one),
                        Ccx if col >= 6 => (col ^ 1, one),
                        _ => (col, one),
                    };
                    m[row * dim + col] = phase;
                }
                m
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.mnemonic())?;
        for q in &self.targets {
            write!(f, " {q}")?;
        }
        if let Some(theta) = self.angle {
            write!(f, " {theta}")?;
        }
        Ok(())
    }
}
