//! Rescaling SBP acceptance bounds `(a 2^-r, b 2^-r)` back to a factor-two
//! gap: filter each acceptance with probability `1/(a 2^k)`, then repeat
//! `reps` times and accept only if every run accepts.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sampling::{batch_rng, batches};

use super::{Promise, TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SbpParams {
    pub a: f64,
    pub b: f64,
    pub q_poly: f64,
    pub k: u32,
    pub r: u32,
    pub reps: u32,
}

/// Least `k >= 0` with `a > 2^-k`.
pub fn least_k(a: f64) -> Result<u32> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Precondition(format!("need 0 < a <= 1, got {a}")));
    }
    (0..=1100u32)
        .find(|&k| a > 2f64.powi(-(k as i32)))
        .ok_or_else(|| Error::Precondition(format!("a = {a} is too small")))
}

impl SbpParams {
    /// `reps` defaults to `ceil(q_poly)`; any explicit value must be at least `q_poly`.
    pub fn new(a: f64, b: f64, q_poly: f64, r: u32, reps: Option<u32>) -> Result<Self> {
        if !(0.0 <= b && b < a && a <= 1.0) {
            return Err(Error::Precondition(format!(
                "need 0 <= b < a <= 1, got a = {a}, b = {b}"
            )));
        }
        if !(q_poly > 0.0 && q_poly.is_finite()) || a - b < 1.0 / q_poly - TOLERANCE {
            return Err(Error::Precondition(format!(
                "need a - b >= 1/q_poly, got a - b = {}, q_poly = {q_poly}",
                a - b
            )));
        }
        if q_poly > u32::MAX as f64 {
            return Err(Error::Precondition(format!("q_poly = {q_poly} too large")));
        }
        let min_reps = q_poly.ceil() as u32;
        let reps = reps.unwrap_or(min_reps);
        if reps < min_reps {
            return Err(Error::Precondition(format!(
                "reps = {reps} is below q_poly = {q_poly}"
            )));
        }
        Ok(SbpParams {
            a,
            b,
            q_poly,
            k: least_k(a)?,
            r,
            reps,
        })
    }

    /// `1 / (a 2^k)`, the acceptance probability of the post-filter.
    pub fn filter(&self) -> f64 {
        1.0 / (self.a * 2f64.powi(self.k as i32))
    }

    /// `2^-((r+k) reps)`.
    pub fn yes_bound(&self) -> f64 {
        2f64.powi(-((self.r + self.k) as i32) * self.reps as i32)
    }

    pub fn no_bound(&self) -> f64 {
        0.5 * self.yes_bound()
    }

    /// Acceptance of the filtered-and-repeated process for an original acceptance `p`.
    pub fn amplified(&self, p_acc: f64) -> f64 {
        (p_acc * self.filter()).powi(self.reps as i32)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmplificationReport {
    pub params: SbpParams,
    pub p_acc: f64,
    pub promise: Promise,
    pub filtered: f64,
    pub amplified: f64,
    /// Amplified acceptance at the yes threshold `a 2^-r`.
    pub yes_closed_form: f64,
    /// Amplified acceptance at the no threshold `b 2^-r`.
    pub no_closed_form: f64,
    pub yes_bound: f64,
    pub no_bound: f64,
    pub pass: bool,
}

pub fn sbp_amplify(s: &SbpParams, p_acc: f64) -> Result<AmplificationReport> {
    let s = SbpParams::new(s.a, s.b, s.q_poly, s.r, Some(s.reps))?;
    if !(0.0..=1.0).contains(&p_acc) {
        return Err(Error::Precondition(format!(
            "need 0 <= p_acc <= 1, got {p_acc}"
        )));
    }
    let scale = 2f64.powi(-(s.r as i32));
    let yes_threshold = s.a * scale;
    let no_threshold = s.b * scale;
    let promise = if p_acc >= yes_threshold {
        Promise::Yes
    } else if p_acc <= no_threshold {
        Promise::No
    } else {
        return Err(Error::NoPromise {
            acceptance: p_acc,
            r: s.r,
        });
    };

    let amplified = s.amplified(p_acc);
    let yes_closed_form = s.amplified(yes_threshold);
    let no_closed_form = s.amplified(no_threshold);
    let (yes_bound, no_bound) = (s.yes_bound(), s.no_bound());
    let closed_forms_ok = yes_closed_form >= yes_bound * (1.0 - TOLERANCE)
        && no_closed_form <= no_bound * (1.0 + TOLERANCE);
    let instance_ok = match promise {
        Promise::Yes => amplified >= yes_bound * (1.0 - TOLERANCE),
        Promise::No => amplified <= no_bound * (1.0 + TOLERANCE),
    };
    Ok(AmplificationReport {
        params: s,
        p_acc,
        promise,
        filtered: p_acc * s.filter(),
        amplified,
        yes_closed_form,
        no_closed_form,
        yes_bound,
        no_bound,
        pass: closed_forms_ok && instance_ok,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloEstimate {
    pub trials: u64,
    pub accepted: u64,
    pub estimate: f64,
    pub expected: f64,
    pub std_error: f64,
}

impl MonteCarloEstimate {
    /// `|estimate - expected|` in units of the standard error.
    pub fn z_score(&self) -> f64 {
        if self.std_error == 0.0 {
            if self.estimate == self.expected {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.estimate - self.expected).abs() / self.std_error
        }
    }
}

/// Runs the filter-and-repeat process `trials` times: each repetition
/// accepts with probability `p_acc`, then survives the filter with
/// probability `1/(a 2^k)`.
pub fn simulate_amplification(
    s: &SbpParams,
    p_acc: f64,
    trials: u64,
    seed: u64,
) -> MonteCarloEstimate {
    let filter = s.filter();
    let reps = s.reps;
    let accepted: u64 = batches(trials)
        .map(|(b, size)| {
            let mut rng = batch_rng(seed, b);
            (0..size)
                .filter(|_| {
                    (0..reps).all(|_| rng.gen::<f64>() < p_acc && rng.gen::<f64>() < filter)
                })
                .count() as u64
        })
        .sum();
    let expected = s.amplified(p_acc);
    MonteCarloEstimate {
        trials,
        accepted,
        estimate: accepted as f64 / trials as f64,
        expected,
        std_error: (expected * (1.0 - expected) / trials as f64).sqrt(),
    }
}
