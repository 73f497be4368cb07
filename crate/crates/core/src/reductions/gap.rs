use crate::error::{Error, Result};

use super::TOLERANCE;

/// How a hypothetical classical sampler approximates `p_{0^n}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErrorModel {
    /// `|p - q| <= c p`.
    Multiplicative(f64),
    /// `|p - q| <= eta`.
    Additive(f64),
}

/// Parameters of the sampling-hardness reductions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionParams {
    pub epsilon: f64,
    pub delta: f64,
    pub r: u32,
    pub n: usize,
    pub error: ErrorModel,
}

/// Least `r >= 1` with `eps 2^(1-r) <= 1/(2 delta)`.
pub fn choose_r(eps: f64, delta: f64) -> Result<u32> {
    if !(0.0..=1.0).contains(&eps) || !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::Precondition(format!(
            "choose_r needs 0 <= eps <= 1 and delta > 0, got eps = {eps}, delta = {delta}"
        )));
    }
    let target = 1.0 / (2.0 * delta);
    (1..=1024u32)
        .find(|&r| r_satisfies(eps, delta, r))
        .ok_or_else(|| Error::Precondition(format!("no r <= 1024 reaches 1/(2 delta) = {target}")))
}

fn r_satisfies(eps: f64, delta: f64, r: u32) -> bool {
    eps * 2f64.powi(1 - r as i32) <= 1.0 / (2.0 * delta)
}

impl ReductionParams {
    /// Multiplicative-error mode with the least admissible `r`.
    pub fn multiplicative(epsilon: f64, c: f64, delta: f64, n: usize) -> Result<Self> {
        let r = choose_r(epsilon, delta)?;
        ReductionParams {
            epsilon,
            delta,
            r,
            n,
            error: ErrorModel::Multiplicative(c),
        }
        .validated()
    }

    /// Additive-error mode with the least admissible `r`.
    pub fn additive(epsilon: f64, eta: f64, delta: f64, n: usize) -> Result<Self> {
        let r = choose_r(epsilon, delta)?;
        ReductionParams {
            epsilon,
            delta,
            r,
            n,
            error: ErrorModel::Additive(eta),
        }
        .validated()
    }

    /// Replaces `r` by a larger admissible value.
    pub fn with_r(self, r: u32) -> Result<Self> {
        ReductionParams { r, ..self }.validated()
    }

    pub fn scale(&self) -> f64 {
        2f64.powi(self.n as i32)
    }

    fn validated(self) -> Result<Self> {
        let ReductionParams {
            epsilon,
            delta,
            r,
            n,
            error,
        } = self;
        if !(0.0..=1.0).contains(&epsilon) || !(delta > 0.0 && delta.is_finite()) || n == 0 {
            return Err(Error::Precondition(format!(
                "need 0 <= eps <= 1, delta > 0, n >= 1; got eps = {epsilon}, delta = {delta}, n = {n}"
            )));
        }
        if r == 0 || !r_satisfies(epsilon, delta, r) {
            return Err(Error::Precondition(format!(
                "r = {r} violates eps 2^(1-r) <= 1/(2 delta)"
            )));
        }
        let room = epsilon - 1.0 / delta;
        match error {
            ErrorModel::Multiplicative(c) => {
                if !(c >= 0.0 && c <= room + TOLERANCE) {
                    return Err(Error::Precondition(format!(
                        "need 0 <= c <= eps - 1/delta = {room}, got c = {c}"
                    )));
                }
            }
            ErrorModel::Additive(eta) => {
                let cap = room / self.scale();
                if !(eta >= 0.0 && eta <= cap + TOLERANCE / self.scale()) {
                    return Err(Error::Precondition(format!(
                        "need 0 <= eta <= (eps - 1/delta) 2^-n = {cap}, got eta = {eta}"
                    )));
                }
            }
        }
        Ok(self)
    }
}

/// Lower bound on `2^n q_{0^n}` for yes instances, upper bound for no
/// instances, and their difference.
#[derive(Debug, Clone, PartialEq)]
pub struct GapCertificate {
    pub params: ReductionParams,
    pub yes_lower: f64,
    pub no_upper: f64,
    pub gap: f64,
    /// `1/delta`, the separation the reduction needs.
    pub bound: f64,
    pub pass: bool,
}

impl GapCertificate {
    fn new(params: ReductionParams, yes_lower: f64, no_upper: f64) -> Self {
        let gap = yes_lower - no_upper;
        let bound = 1.0 / params.delta;
        GapCertificate {
            params,
            yes_lower,
            no_upper,
            gap,
            bound,
            pass: gap >= bound - TOLERANCE && yes_lower > no_upper,
        }
    }
}

/// `eps 2^(1-r)`, the acceptance leakage term of a promise circuit.
fn leak(p: &ReductionParams) -> f64 {
    p.epsilon * 2f64.powi(1 - p.r as i32)
}

/// Certificate for a sampler with multiplicative error `c` at `0^n`:
/// `(1-c)(1+eps-eps 2^(1-r))` against `(1+c)(1-eps+eps 2^(1-r))`.
pub fn sbp_gap_multiplicative(p: &ReductionParams) -> Result<GapCertificate> {
    let ErrorModel::Multiplicative(c) = p.error else {
        return Err(Error::Precondition(
            "expected multiplicative-error parameters".into(),
        ));
    };
    let p = p.validated()?;
    let l = leak(&p);
    let eps = p.epsilon;
    Ok(GapCertificate::new(
        p,
        (1.0 - c) * (1.0 + eps - l),
        (1.0 + c) * (1.0 - eps + l),
    ))
}

/// Certificate for a sampler with additive error `eta` at `0^n`:
/// `1+eps-eps 2^(1-r)-2^n eta` against `1-eps+eps 2^(1-r)+2^n eta`.
pub fn sbp_gap_additive(p: &ReductionParams) -> Result<GapCertificate> {
    let ErrorModel::Additive(eta) = p.error else {
        return Err(Error::Precondition(
            "expected additive-error parameters".into(),
        ));
    };
    let p = p.validated()?;
    let l = leak(&p);
    let eps = p.epsilon;
    let spread = p.scale() * eta;
    Ok(GapCertificate::new(
        p,
        1.0 + eps - l - spread,
        1.0 - eps + l + spread,
    ))
}

/// Dispatches on the error model.
pub fn sbp_gap(p: &ReductionParams) -> Result<GapCertificate> {
    match p.error {
        ErrorModel::Multiplicative(_) => sbp_gap_multiplicative(p),
        ErrorModel::Additive(_) => sbp_gap_additive(p),
    }
}

/// Closed-form multiplicative gap `2(eps - eps 2^(1-r) - c)` without any
/// precondition, for sweeps that cross out of the hard regime.
pub fn multiplicative_gap_unchecked(eps: f64, c: f64, r: u32) -> f64 {
    let l = eps * 2f64.powi(1 - r as i32);
    (1.0 - c) * (1.0 + eps - l) - (1.0 + c) * (1.0 - eps + l)
}
