//! Seeded random circuits.
//!
//! `depth` counts gates. Each gate kind is drawn from a weighted mix
//! (kinds whose arity exceeds `n` are dropped), its qubits are a uniformly
//! random ordered selection of distinct indices, and rotation angles are
//! uniform in `[-pi, pi)`. The generator is `ChaCha8Rng::seed_from_u64(seed)`.

use std::f64::consts::PI;
use std::str::FromStr;

use rand::distributions::{Distribution as _, WeightedIndex};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Relative weights per gate kind.
#[derive(Debug, Clone, PartialEq)]
pub struct GateMix {
    weights: Vec<(GateKind, f64)>,
}

impl Default for GateMix {
    /// `h:3 t:2 tdg:1 s:1 sdg:1 x:1 y:1 z:1 rx:1 ry:1 rz:1 cx:3 cz:1 swap:1 ccx:1`
    fn default() -> Self {
        use GateKind::*;
        GateMix {
            weights: vec![
                (H, 3.0),
                (T, 2.0),
                (Tdg, 1.0),
                (S, 1.0),
                (Sdg, 1.0),
                (X, 1.0),
                (Y, 1.0),
                (Z, 1.0),
                (Rx, 1.0),
                (Ry, 1.0),
                (Rz, 1.0),
                (Cx, 3.0),
                (Cz, 1.0),
                (Swap, 1.0),
                (Ccx, 1.0),
            ],
        }
    }
}

impl GateMix {
    pub fn new(weights: Vec<(GateKind, f64)>) -> Result<Self> {
        if weights.iter().any(|&(_, w)| !(w >= 0.0 && w.is_finite())) {
            return Err(Error::InvalidGate(
                "gate weights must be finite and non-negative".into(),
            ));
        }
        if !weights.iter().any(|&(_, w)| w > 0.0) {
            return Err(Error::InvalidGate("gate mix has no positive weight".into()));
        }
        Ok(GateMix { weights })
    }

    /// `h t tdg cx`, equally weighted.
    pub fn clifford_t() -> Self {
        use GateKind::*;
        GateMix {
            weights: vec![(H, 1.0), (T, 1.0), (Tdg, 1.0), (Cx, 1.0)],
        }
    }

    /// `rx ry rz cz`, equally weighted.
    pub fn rotations() -> Self {
        use GateKind::*;
        GateMix {
            weights: vec![(Rx, 1.0), (Ry, 1.0), (Rz, 1.0), (Cz, 1.0)],
        }
    }

    pub fn weights(&self) -> &[(GateKind, f64)] {
        &self.weights
    }
}

/// Accepts `default`, `clifford-t`, `rotations` or a list like `h=2,cx=1,rz=0.5`.
impl FromStr for GateMix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => return Ok(GateMix::default()),
            "clifford-t" => return Ok(GateMix::clifford_t()),
            "rotations" => return Ok(GateMix::rotations()),
            _ => {}
        }
        let weights = s
            .split(',')
            .map(|item| {
                let (name, w) = item.split_once('=').ok_or_else(|| {
                    Error::InvalidGate(format!("expected `gate=weight`, got `{item}`"))
                })?;
                let w: f64 = w
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidGate(format!("bad weight `{w}`")))?;
                Ok((name.trim().parse::<GateKind>()?, w))
            })
            .collect::<Result<Vec<_>>>()?;
        GateMix::new(weights)
    }
}

/// A deterministic random circuit of `depth` gates.
pub fn gen_random_circuit(n: usize, depth: usize, seed: u64, mix: &GateMix) -> Result<Circuit> {
    let mut circuit = Circuit::new(n)?;
    if depth == 0 {
        return Ok(circuit);
    }
    let usable: Vec<(GateKind, f64)> = mix
        .weights
        .iter()
        .copied()
        .filter(|&(k, w)| k.arity() <= n && w > 0.0)
        .collect();
    if usable.is_empty() {
        return Err(Error::InvalidGate(format!(
            "no gate in the mix fits on {n} qubit(s)"
        )));
    }
    let picker = WeightedIndex::new(usable.iter().map(|&(_, w)| w))
        .map_err(|e| Error::InvalidGate(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..depth {
        let kind = usable[picker.sample(&mut rng)].0;
        let targets = index::sample(&mut rng, n, kind.arity()).into_vec();
        let angle = kind.is_rotation().then(|| rng.gen_range(-PI..PI));
        circuit.push(Gate::new(kind, &targets, angle)?)?;
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_depth_is_empty() {
        assert!(gen_random_circuit(4, 0, 1, &GateMix::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn deterministic() {
        let a = gen_random_circuit(5, 80, 42, &GateMix::default()).unwrap();
        let b = gen_random_circuit(5, 80, 42, &GateMix::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 80);
        let c = gen_random_circuit(5, 80, 43, &GateMix::default()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn single_qubit_skips_multi_qubit_gates() {
        let c = gen_random_circuit(1, 50, 3, &GateMix::default()).unwrap();
        assert!(c.gates().iter().all(|g| g.kind().arity() == 1));
        assert!(gen_random_circuit(1, 5, 3, &"cx=1".parse().unwrap()).is_err());
    }

    #[test]
    fn mix_parsing() {
        let m: GateMix = "h=2, cx=1".parse().unwrap();
        assert_eq!(m.weights(), &[(GateKind::H, 2.0), (GateKind::Cx, 1.0)]);
        assert!("h=-1".parse::<GateMix>().is_err());
        assert!("foo=1".parse::<GateMix>().is_err());
        assert!("h=0".parse::<GateMix>().is_err());
        assert_eq!(
            "clifford-t".parse::<GateMix>().unwrap(),
            GateMix::clifford_t()
        );
    }
}
