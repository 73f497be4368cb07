//! Multiplicative and additive error between distributions, the uniform
//! approximation check and the adversarial circuit that defeats any sampler
//! claiming a smaller multiplicative error.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::model::{
    bitstring, exact_distribution, marginal_first_qubit, Distribution, Polarization,
};

/// Slack used when comparing a computed error against an analytic bound.
pub const BOUND_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    /// Least `c` with `|p_z - q_z| <= c p_z` for all `z`; infinite when unattainable.
    pub c_star: f64,
    /// `|p_{0^n} - q_{0^n}|`.
    pub eta_point: f64,
    /// `sum_z |p_z - q_z|`.
    pub eta_l1: f64,
    pub bound: f64,
    pub pass: bool,
    pub witness: Option<String>,
}

/// The least multiplicative error of `q` as an approximation of `p`.
pub fn multiplicative_error(p: &Distribution, q: &Distribution) -> Result<f64> {
    p.ensure_same_n(q)?;
    Ok(p.probs()
        .iter()
        .zip(q.probs())
        .map(|(&pz, &qz)| pointwise_multiplicative(pz, qz))
        .fold(0.0, f64::max))
}

fn pointwise_multiplicative(p: f64, q: f64) -> f64 {
    let diff = (p - q).abs();
    if diff == 0.0 {
        0.0
    } else if p == 0.0 {
        f64::INFINITY
    } else {
        diff / p
    }
}

/// `(c_star, eta_point, eta_l1)` of `q` against `p`.
pub fn compare(p: &Distribution, q: &Distribution) -> Result<(f64, f64, f64)> {
    let c_star = multiplicative_error(p, q)?;
    let eta_point = (p.get(0) - q.get(0)).abs();
    let eta_l1 = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok((c_star, eta_point, eta_l1))
}

/// Checks that the uniform distribution approximates the model's output
/// with multiplicative error at most `eps / (1 - eps)`.
pub fn uniform_check(c: &Circuit, eps: Polarization) -> Result<ErrorReport> {
    let bound = eps.uniform_bound()?;
    let p = exact_distribution(c, eps)?;
    let q = Distribution::uniform(c.n());
    let (c_star, eta_point, eta_l1) = compare(&p, &q)?;
    Ok(ErrorReport {
        c_star,
        eta_point,
        eta_l1,
        bound,
        pass: c_star <= bound + BOUND_TOLERANCE,
        witness: None,
    })
}

/// The same check on the first-qubit marginal against `(1/2, 1/2)`.
pub fn marginal_error_check(c: &Circuit, eps: Polarization) -> Result<ErrorReport> {
    let bound = eps.uniform_bound()?;
    let p = exact_distribution(c, eps)?;
    let (p0, p1) = marginal_first_qubit(&p);
    let c_star = pointwise_multiplicative(p0, 0.5).max(pointwise_multiplicative(p1, 0.5));
    let pass = [p0, p1]
        .iter()
        .all(|&px| (px - 0.5).abs() <= bound * px + BOUND_TOLERANCE);
    Ok(ErrorReport {
        c_star,
        eta_point: (p0 - 0.5).abs(),
        eta_l1: (p0 - 0.5).abs() + (p1 - 0.5).abs(),
        bound,
        pass,
        witness: None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Adversary {
    pub circuit: Circuit,
    pub witness: usize,
    pub report: ErrorReport,
}

/// Builds `U = X^(y_1 xor 1) (x) I` for the first `y` with `q_y >= 2^-n`, at
/// which the model puts mass exactly `(1-eps)/2^n` and `q` misses it by more
/// than `c` times that.
///
/// `c` must satisfy `0 <= c < eps/(1-eps)`. The analytic value of `p_y` is
/// cross-checked against the simulator; the report compares `q` with the
/// simulated distribution and carries `bound = c`.
pub fn adversarial_circuit(q: &Distribution, eps: Polarization, c: f64) -> Result<Adversary> {
    let threshold = eps.uniform_bound()?;
    if !(c >= 0.0 && c < threshold) {
        return Err(Error::Precondition(format!(
            "need 0 <= c < eps/(1-eps) = {threshold}, got c = {c}"
        )));
    }
    let n = q.n();
    let floor = 1.0 / q.len() as f64;
    let witness = q
        .probs()
        .iter()
        .position(|&qy| qy >= floor)
        .unwrap_or_else(|| {
            // Only reachable when roundoff leaves every entry a hair below 2^-n.
            q.probs()
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (z, &v)| {
                    if v > best.1 {
                        (z, v)
                    } else {
                        best
                    }
                })
                .0
        });

    let first_bit = witness >> (n - 1);
    let mut circuit = Circuit::new(n)?;
    if first_bit == 0 {
        circuit.push(Gate::x(0))?;
    }

    let analytic = (1.0 - eps.value()) / q.len() as f64;
    let p = exact_distribution(&circuit, eps)?;
    let simulated = p.get(witness);
    if (simulated - analytic).abs() > BOUND_TOLERANCE {
        return Err(Error::Verification(format!(
            "p_y = {simulated} but the construction gives {analytic}"
        )));
    }

    let (c_star, eta_point, eta_l1) = compare(&p, q)?;
    let qy = q.get(witness);
    let pass = (analytic - qy).abs() > c * analytic;
    Ok(Adversary {
        circuit,
        witness,
        report: ErrorReport {
            c_star,
            eta_point,
            eta_l1,
            bound: c,
            pass,
            witness: Some(bitstring(witness, n)),
        },
    })
}
