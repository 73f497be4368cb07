//! Density-matrix reference simulator.
//!
//! Evolves the full `2^n x 2^n` initial state by conjugation `G rho G^dagger`
//! with each gate embedded into the whole register by its element formula.
//! It shares nothing with the state-vector kernels beyond the small gate
//! matrices, which makes it a useful cross-check for small `n`.

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::model::{Distribution, Polarization};

pub const ORACLE_MAX_QUBITS: usize = 8;

/// Row-sparse embedding of a gate: for every row `i`, the columns `k` that
/// agree with `i` outside the gate's targets, with their matrix elements.
fn embed(gate: &Gate, n: usize) -> Vec<Vec<(usize, Complex64)>> {
    let local = gate.matrix();
    let targets = gate.targets();
    let arity = targets.len();
    let ldim = 1 << arity;
    let bit = |q: usize| 1usize << (n - 1 - q);
    let target_mask = targets.iter().fold(0, |m, &q| m | bit(q));
    let spread = |l: usize| {
        targets
            .iter()
            .enumerate()
            .filter(|&(pos, _)| (l >> (arity - 1 - pos)) & 1 == 1)
            .fold(0, |m, (_, &q)| m | bit(q))
    };
    let gather = |i: usize| {
        targets
            .iter()
            .fold(0, |l, &q| (l << 1) | usize::from(i & bit(q) != 0))
    };
    (0..1usize << n)
        .map(|i| {
            let row = gather(i);
            let rest = i & !target_mask;
            (0..ldim)
                .map(|col| (rest | spread(col), local[row * ldim + col]))
                .filter(|(_, v)| v.norm_sqr() > 0.0)
                .collect()
        })
        .collect()
}

/// Output distribution computed from the evolved density matrix diagonal.
pub fn oracle_distribution(c: &Circuit, eps: Polarization) -> Result<Distribution> {
    let n = c.n();
    if n > ORACLE_MAX_QUBITS {
        return Err(Error::QubitCap {
            n,
            cap: ORACLE_MAX_QUBITS,
        });
    }
    let dim = 1usize << n;
    let half = (dim / 2) as f64;
    let zero = Complex64::new(0.0, 0.0);

    let mut rho = vec![zero; dim * dim];
    for i in 0..dim {
        let top = i >> (n - 1);
        rho[i * dim + i] = Complex64::new(eps.weight(top) / half, 0.0);
    }

    let mut tmp = vec![zero; dim * dim];
    for gate in c.gates() {
        let g = embed(gate, n);
        // tmp = G rho
        for i in 0..dim {
            for j in 0..dim {
                tmp[i * dim + j] = g[i].iter().map(|&(k, v)| v * rho[k * dim + j]).sum();
            }
        }
        // rho = tmp G^dagger
        for i in 0..dim {
            for j in 0..dim {
                rho[i * dim + j] = g[j].iter().map(|&(k, v)| tmp[i * dim + k] * v.conj()).sum();
            }
        }
    }

    let diag = (0..dim).map(|i| rho[i * dim + i].re).collect();
    Distribution::from_accumulated(n, diag)
}
