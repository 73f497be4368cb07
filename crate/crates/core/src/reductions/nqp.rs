use crate::error::{Error, Result};

use super::TOLERANCE;

/// Clean-qubit probability of reading 1 for the circuit built from an
/// acceptance probability `p`: `4 p (1 - p) / 2^(n-1)`.
pub fn nqp_probability_map(p_acc: f64, n: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_acc) || n == 0 {
        return Err(Error::Precondition(format!(
            "need 0 <= p <= 1 and n >= 1, got p = {p_acc}, n = {n}"
        )));
    }
    Ok(4.0 / 2f64.powi(n as i32 - 1) * p_acc * (1.0 - p_acc))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NqpClass {
    /// `q >= p~/2^n > 0`: an accepting path exists.
    YesWitness,
    /// `q = 0`.
    Zero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NqpImplication {
    pub class: NqpClass,
    pub p_tilde: f64,
    pub q: f64,
    /// `p~ / 2^n`
    pub lower: f64,
    /// `(2 - 2^-n) p~`
    pub upper: f64,
}

/// Given a sampler probability `q` with `|p~ - q| <= (1 - 2^-n) p~`, decides
/// whether `q` certifies `p~ > 0` and checks the implied bounds.
pub fn nqp_np_implication(p_tilde: f64, q: f64, n: u32) -> Result<NqpImplication> {
    if !(p_tilde >= 0.0 && p_tilde.is_finite()) || !(0.0..=1.0).contains(&q) || n == 0 {
        return Err(Error::Precondition(format!(
            "need p~ >= 0, 0 <= q <= 1, n >= 1; got p~ = {p_tilde}, q = {q}, n = {n}"
        )));
    }
    let inv = 2f64.powi(-(n as i32));
    let allowed = (1.0 - inv) * p_tilde;
    if (p_tilde - q).abs() > allowed + TOLERANCE * p_tilde {
        return Err(Error::Precondition(format!(
            "|p~ - q| = {} exceeds (1 - 2^-n) p~ = {allowed}",
            (p_tilde - q).abs()
        )));
    }
    let lower = p_tilde * inv;
    let upper = (2.0 - inv) * p_tilde;
    let class = if p_tilde > 0.0 {
        if !(q > 0.0 && q >= lower * (1.0 - TOLERANCE)) {
            return Err(Error::Verification(format!(
                "q = {q} below p~/2^n = {lower}"
            )));
        }
        NqpClass::YesWitness
    } else {
        if q > upper {
            return Err(Error::Verification(format!(
                "q = {q} above (2 - 2^-n) p~ = 0"
            )));
        }
        NqpClass::Zero
    };
    if q > upper * (1.0 + TOLERANCE) {
        return Err(Error::Verification(format!(
            "q = {q} above (2 - 2^-n) p~ = {upper}"
        )));
    }
    Ok(NqpImplication {
        class,
        p_tilde,
        q,
        lower,
        upper,
    })
}
