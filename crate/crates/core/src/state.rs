//! Pure-state vectors and in-place gate kernels.

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

const NORM_TOLERANCE: f64 = 1e-9;

/// `2^n` amplitudes; basis state `z_1..z_n` lives at index `sum z_i 2^(n-i)`
/// so qubit 0 is the most significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The computational basis state `|index>`.
    pub fn basis(n: usize, index: usize) -> Self {
        assert!(
            index < 1 << n,
            "basis index {index} out of range for {n} qubits"
        );
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { n, amps }
    }

    pub fn zero(n: usize) -> Self {
        StateVector::basis(n, 0)
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1 << n {
            return Err(Error::InvalidCircuit(format!(
                "expected {} amplitudes for {n} qubits, got {}",
                1usize << n,
                amps.len()
            )));
        }
        let sv = StateVector { n, amps };
        let norm = sv.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Normalization { sum: norm });
        }
        Ok(sv)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Overwrites the state with `|index>` without reallocating.
    pub(crate) fn reset_to_basis(&mut self, index: usize) {
        self.amps.fill(Complex64::new(0.0, 0.0));
        self.amps[index] = Complex64::new(1.0, 0.0);
    }

    /// Probability that measuring qubit 0 yields 0.
    pub fn first_qubit_zero_probability(&self) -> f64 {
        let half = self.amps.len() / 2;
        self.amps[..half].iter().map(|a| a.norm_sqr()).sum()
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.n - 1 - qubit)
    }

    /// Applies one gate in place. The caller guarantees the targets are in range.
    pub fn apply_gate(&mut self, gate: &Gate) {
        let t = gate.targets();
        match gate.kind() {
            GateKind::X => self.apply_x(t[0]),
            GateKind::Z => self.apply_phase(t[0], Complex64::new(-1.0, 0.0)),
            GateKind::S => self.apply_phase(t[0], Complex64::new(0.0, 1.0)),
            GateKind::Sdg => self.apply_phase(t[0], Complex64::new(0.0, -1.0)),
            GateKind::T => self.apply_phase(
                t[0],
                Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            ),
            GateKind::Tdg => self.apply_phase(
                t[0],
                Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
            ),
            GateKind::Y | GateKind::H | GateKind::Rx | GateKind::Ry | GateKind::Rz => {
                let m = gate.matrix();
                self.apply_single([m[0], m[1], m[2], m[3]], t[0]);
            }
            GateKind::Cx => self.apply_controlled_x(&t[..1], t[1]),
            GateKind::Ccx => self.apply_controlled_x(&t[..2], t[2]),
            GateKind::Cz => {
                let both = self.mask(t[0]) | self.mask(t[1]);
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & both == both {
                        *a = -*a;
                    }
                }
            }
            GateKind::Swap => {
                let (ma, mb) = (self.mask(t[0]), self.mask(t[1]));
                for i in 0..self.amps.len() {
                    if i & ma != 0 && i & mb == 0 {
                        self.amps.swap(i, i ^ ma ^ mb);
                    }
                }
            }
        }
    }

    fn apply_single(&mut self, m: [Complex64; 4], qubit: usize) {
        let stride = self.mask(qubit);
        for block in self.amps.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = m[0] * x + m[1] * y;
                *b = m[2] * x + m[3] * y;
            }
        }
    }

    fn apply_x(&mut self, qubit: usize) {
        let stride = self.mask(qubit);
        for block in self.amps.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            lo.swap_with_slice(hi);
        }
    }

    fn apply_phase(&mut self, qubit: usize, phase: Complex64) {
        let stride = self.mask(qubit);
        for block in self.amps.chunks_exact_mut(2 * stride) {
            for a in &mut block[stride..] {
                *a *= phase;
            }
        }
    }

    fn apply_controlled_x(&mut self, controls: &[usize], target: usize) {
        let cmask = controls.iter().fold(0, |acc, &q| acc | self.mask(q));
        let tmask = self.mask(target);
        for i in 0..self.amps.len() {
            if i & cmask == cmask && i & tmask == 0 {
                self.amps.swap(i, i | tmask);
            }
        }
    }

    /// Applies every gate of `c` in order.
    pub fn apply_circuit_in_place(&mut self, c: &Circuit) -> Result<()> {
        if c.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: c.n(),
                found: self.n,
            });
        }
        for g in c.gates() {
            self.apply_gate(g);
        }
        Ok(())
    }
}

/// Returns `U|s>` for the unitary `U` of `c`.
pub fn apply_circuit(c: &Circuit, s: &StateVector) -> Result<StateVector> {
    let mut out = s.clone();
    out.apply_circuit_in_place(c)?;
    Ok(out)
}
