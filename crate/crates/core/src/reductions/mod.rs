//! Arithmetic of the sampling-hardness reductions, checked on concrete
//! promise instances.

mod demo;
mod gap;
mod nqp;
mod sbp;

pub use demo::{
    classify_promise, first_qubit_acceptance, reduction_demo, ReductionDemo, IDENTITY_TOLERANCE,
};
pub use gap::{
    choose_r, multiplicative_gap_unchecked, sbp_gap, sbp_gap_additive, sbp_gap_multiplicative,
    ErrorModel, GapCertificate, ReductionParams,
};
pub use nqp::{nqp_np_implication, nqp_probability_map, NqpClass, NqpImplication};
pub use sbp::{
    least_k, sbp_amplify, simulate_amplification, AmplificationReport, MonteCarloEstimate,
    SbpParams,
};

pub(crate) const TOLERANCE: f64 = 1e-12;

/// Side of a bounded-error promise an instance falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Promise {
    Yes,
    No,
}
