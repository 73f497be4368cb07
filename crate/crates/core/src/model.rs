//! The one non-clean qubit model: qubit 0 starts in
//! `(1+eps)/2 |0><0| + (1-eps)/2 |1><1|`, every other qubit maximally mixed,
//! then a circuit `U` acts and all qubits are measured.

use rayon::prelude::*;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::state::StateVector;

/// Largest `n` accepted by [`exact_distribution`] unless a cap is given.
pub const DEFAULT_MAX_QUBITS: usize = 14;

pub(crate) const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Polarization `eps` of the probed qubit, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Polarization(f64);

impl Polarization {
    pub const CLEAN: Polarization = Polarization(1.0);
    pub const MIXED: Polarization = Polarization(0.0);

    pub fn new(epsilon: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&epsilon) {
            Ok(Polarization(epsilon))
        } else {
            Err(Error::InvalidPolarization(epsilon))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Weight of `|b>` on the probed qubit.
    pub fn weight(self, bit: usize) -> f64 {
        if bit == 0 {
            (1.0 + self.0) / 2.0
        } else {
            (1.0 - self.0) / 2.0
        }
    }

    /// `eps / (1 - eps)`, the multiplicative error the uniform distribution achieves.
    pub fn uniform_bound(self) -> Result<f64> {
        if self.0 >= 1.0 {
            Err(Error::BoundUndefined)
        } else {
            Ok(self.0 / (1.0 - self.0))
        }
    }
}

/// A probability vector over `{0,1}^n` in the [`StateVector`] index order.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    n: usize,
    probs: Vec<f64>,
}

impl Distribution {
    /// Validates length, sign and normalization. Nothing is renormalized.
    pub fn new(n: usize, probs: Vec<f64>) -> Result<Self> {
        if n == 0 || n >= usize::BITS as usize || probs.len() != 1 << n {
            return Err(Error::InvalidDistribution(format!(
                "{} probabilities do not describe {n} qubits",
                probs.len()
            )));
        }
        if let Some((z, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(Error::InvalidDistribution(format!("entry {z} is {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::Normalization { sum });
        }
        Ok(Distribution { n, probs })
    }

    pub fn uniform(n: usize) -> Self {
        let dim = 1usize << n;
        Distribution {
            n,
            probs: vec![1.0 / dim as f64; dim],
        }
    }

    pub fn point_mass(n: usize, index: usize) -> Self {
        let mut probs = vec![0.0; 1 << n];
        probs[index] = 1.0;
        Distribution { n, probs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn get(&self, z: usize) -> f64 {
        self.probs[z]
    }

    pub(crate) fn ensure_same_n(&self, other: &Distribution) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Clamps roundoff negatives to zero, then validates.
    pub(crate) fn from_accumulated(n: usize, mut probs: Vec<f64>) -> Result<Self> {
        for p in &mut probs {
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        Distribution::new(n, probs)
    }
}

/// Formats a basis index as an `n`-character bitstring, qubit 0 first.
pub fn bitstring(index: usize, n: usize) -> String {
    (0..n)
        .map(|q| {
            if (index >> (n - 1 - q)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

pub fn parse_bitstring(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return None;
    }
    usize::from_str_radix(s, 2).ok()
}

/// Exact output distribution with the default qubit cap.
pub fn exact_distribution(c: &Circuit, eps: Polarization) -> Result<Distribution> {
    exact_distribution_capped(c, eps, DEFAULT_MAX_QUBITS)
}

/// Exact output distribution as an ensemble average over pure inputs.
///
/// The initial state is the mixture of `|b,y>` with weight
/// `w_b / 2^(n-1)`, where `w_0 = (1+eps)/2` and `w_1 = (1-eps)/2`. Each member
/// is propagated as a state vector and `w |<z|U|b,y>|^2` accumulated. Members
/// are grouped into chunks whose size depends only on `n`; chunk partials are
/// summed in chunk order, so the result does not depend on the thread count.
pub fn exact_distribution_capped(
    c: &Circuit,
    eps: Polarization,
    max_qubits: usize,
) -> Result<Distribution> {
    let n = c.n();
    if n > max_qubits {
        return Err(Error::QubitCap { n, cap: max_qubits });
    }
    if eps.value() == 0.0 {
        return Ok(Distribution::uniform(n));
    }
    let dim = 1usize << n;
    let half = dim / 2;
    let members: Vec<(usize, f64)> = (0..dim)
        .map(|m| (m, eps.weight(m / half) / half as f64))
        .filter(|&(_, w)| w > 0.0)
        .collect();

    let chunk = (dim / 128).max(16);
    let partials: Vec<Vec<f64>> = members
        .par_chunks(chunk)
        .map(|batch| {
            let mut acc = vec![0.0; dim];
            let mut state = StateVector::zero(n);
            for &(m, w) in batch {
                state.reset_to_basis(m);
                for g in c.gates() {
                    state.apply_gate(g);
                }
                for (p, a) in acc.iter_mut().zip(state.amplitudes()) {
                    *p += w * a.norm_sqr();
                }
            }
            acc
        })
        .collect();

    let mut probs = vec![0.0; dim];
    for part in &partials {
        for (p, x) in probs.iter_mut().zip(part) {
            *p += x;
        }
    }
    Distribution::from_accumulated(n, probs)
}

/// `(P(first qubit = 0), P(first qubit = 1))`.
pub fn marginal_first_qubit(d: &Distribution) -> (f64, f64) {
    let (lo, hi) = d.probs().split_at(d.len() / 2);
    (lo.iter().sum(), hi.iter().sum())
}

/// Largest polarization for which the uniform distribution meets the
/// multiplicative error `1 - 2^-n`: `1/2 - 1/(2^(n+2) - 2)`.
pub fn clean_qubit_required_epsilon(n: u32) -> f64 {
    0.5 - 1.0 / (2f64.powi(n as i32 + 2) - 2.0)
}
