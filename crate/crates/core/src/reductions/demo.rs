//! End-to-end run of the sampling reduction on a concrete promise circuit `V`.
//!
//! With `U = V^dagger` the model's probability of `0^n` is
//! `(2 eps a + 1 - eps) / 2^n`, where `a` is the probability that the first
//! qubit of `V|0^n>` reads 0. Any sampler within the error model then lands
//! on the yes or no side of the gap certificate's thresholds.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::model::{exact_distribution_capped, Polarization, DEFAULT_MAX_QUBITS};
use crate::state::StateVector;

use super::gap::{sbp_gap, ErrorModel, GapCertificate, ReductionParams};
use super::{Promise, TOLERANCE};

/// Residual allowed between the simulated `p_{0^n}` and the closed form.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionDemo {
    pub acceptance: f64,
    pub promise: Promise,
    pub p_zero: f64,
    pub p_zero_expected: f64,
    pub identity_residual: f64,
    /// Range of `q_{0^n}` any sampler within the error model may produce.
    pub q_range: (f64, f64),
    pub yes_threshold: f64,
    pub no_threshold: f64,
    pub certificate: GapCertificate,
    pub pass: bool,
}

/// First-qubit acceptance `<0^n|V^dagger (|0><0| (x) I) V|0^n>`.
pub fn first_qubit_acceptance(v: &Circuit) -> Result<f64> {
    let mut s = StateVector::zero(v.n());
    s.apply_circuit_in_place(v)?;
    Ok(s.first_qubit_zero_probability())
}

/// Classifies an acceptance probability against the `2^-r` promise.
pub fn classify_promise(acceptance: f64, r: u32) -> Result<Promise> {
    let tail = 2f64.powi(-(r as i32));
    if acceptance >= 1.0 - tail {
        Ok(Promise::Yes)
    } else if acceptance <= tail {
        Ok(Promise::No)
    } else {
        Err(Error::NoPromise { acceptance, r })
    }
}

pub fn reduction_demo(
    v: &Circuit,
    eps: Polarization,
    error: ErrorModel,
    delta: f64,
) -> Result<ReductionDemo> {
    let n = v.n();
    let params = match error {
        ErrorModel::Multiplicative(c) => ReductionParams::multiplicative(eps.value(), c, delta, n)?,
        ErrorModel::Additive(eta) => ReductionParams::additive(eps.value(), eta, delta, n)?,
    };
    let certificate = sbp_gap(&params)?;

    let acceptance = first_qubit_acceptance(v)?;
    let promise = classify_promise(acceptance, params.r)?;

    let u = v.inverse();
    let p_zero = exact_distribution_capped(&u, eps, DEFAULT_MAX_QUBITS)?.get(0);
    let scale = params.scale();
    let e = eps.value();
    let p_zero_expected = (2.0 * e * acceptance + 1.0 - e) / scale;
    let identity_residual = (p_zero - p_zero_expected).abs();

    let q_range = match error {
        ErrorModel::Multiplicative(c) => (p_zero * (1.0 - c), p_zero * (1.0 + c)),
        ErrorModel::Additive(eta) => (p_zero - eta, p_zero + eta),
    };
    let yes_threshold = certificate.yes_lower / scale;
    let no_threshold = certificate.no_upper / scale;
    let slack = TOLERANCE / scale;
    let side_ok = match promise {
        Promise::Yes => q_range.0 >= yes_threshold - slack,
        Promise::No => q_range.1 <= no_threshold + slack,
    };

    Ok(ReductionDemo {
        acceptance,
        promise,
        p_zero,
        p_zero_expected,
        identity_residual,
        q_range,
        yes_threshold,
        no_threshold,
        pass: side_ok && certificate.pass && identity_residual <= IDENTITY_TOLERANCE,
        certificate,
    })
}
