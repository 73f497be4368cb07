//! JSON encodings of distributions, shot records and reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::error_analysis::ErrorReport;
use crate::model::{bitstring, parse_bitstring, Distribution};
use crate::reductions::{
    AmplificationReport, ErrorModel, GapCertificate, MonteCarloEstimate, NqpClass, NqpImplication,
    Promise, ReductionDemo,
};
use crate::sampling::ShotRecord;

/// `{"n": .., "epsilon": .., "probabilities": [..]}`. `epsilon` may be absent
/// on input, for distributions that do not come from the model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub probabilities: Vec<f64>,
}

impl DistributionFile {
    pub fn new(d: &Distribution, epsilon: Option<f64>) -> Self {
        DistributionFile {
            n: d.n(),
            epsilon,
            probabilities: d.probs().to_vec(),
        }
    }

    pub fn into_distribution(self) -> Result<Distribution> {
        Distribution::new(self.n, self.probabilities)
    }
}

pub fn distribution_from_json(text: &str) -> Result<Distribution> {
    let file: DistributionFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidDistribution(format!("malformed JSON: {e}")))?;
    file.into_distribution()
}

/// `{"seed": .., "shots": .., "histogram": {"<bitstring>": count}}`, listing
/// only observed outcomes in ascending index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotRecordFile {
    pub seed: u64,
    pub shots: u64,
    pub histogram: BTreeMap<String, u64>,
}

impl From<&ShotRecord> for ShotRecordFile {
    fn from(r: &ShotRecord) -> Self {
        let histogram = r
            .histogram
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(z, &k)| (bitstring(z, r.n), k))
            .collect();
        ShotRecordFile {
            seed: r.seed,
            shots: r.shots,
            histogram,
        }
    }
}

impl ShotRecordFile {
    pub fn into_record(self) -> Result<ShotRecord> {
        let n = self.histogram.keys().next().map_or(0, String::len);
        if n == 0 || self.histogram.keys().any(|k| k.len() != n) {
            return Err(Error::InvalidDistribution(
                "histogram keys must be equal-length bitstrings".into(),
            ));
        }
        let mut histogram = vec![0u64; 1 << n];
        for (key, count) in self.histogram {
            let z = parse_bitstring(&key)
                .ok_or_else(|| Error::InvalidDistribution(format!("bad bitstring `{key}`")))?;
            histogram[z] = count;
        }
        if histogram.iter().sum::<u64>() != self.shots {
            return Err(Error::InvalidDistribution(
                "histogram total differs from shots".into(),
            ));
        }
        Ok(ShotRecord {
            n,
            seed: self.seed,
            shots: self.shots,
            histogram,
        })
    }
}

/// Serializes infinity as the string `"inf"`.
pub mod inf_float {
    use super::*;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if v.is_infinite() && *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*v)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Str(s) if s == "inf" => Ok(f64::INFINITY),
            Repr::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got {s:?}"
            ))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ErrorReportFile {
    #[serde(with = "inf_float")]
    c_star: f64,
    eta_point: f64,
    eta_l1: f64,
    bound: f64,
    pass: bool,
    witness: Option<String>,
}

impl Serialize for ErrorReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ErrorReportFile {
            c_star: self.c_star,
            eta_point: self.eta_point,
            eta_l1: self.eta_l1,
            bound: self.bound,
            pass: self.pass,
            witness: self.witness.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ErrorReport {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = ErrorReportFile::deserialize(d)?;
        Ok(ErrorReport {
            c_star: f.c_star,
            eta_point: f.eta_point,
            eta_l1: f.eta_l1,
            bound: f.bound,
            pass: f.pass,
            witness: f.witness,
        })
    }
}

fn promise_str(p: Promise) -> &'static str {
    match p {
        Promise::Yes => "yes",
        Promise::No => "no",
    }
}

pub fn gap_certificate_json(cert: &GapCertificate) -> Value {
    let p = &cert.params;
    let (mode, key, value) = match p.error {
        ErrorModel::Multiplicative(c) => ("multiplicative", "c", c),
        ErrorModel::Additive(eta) => ("additive", "eta", eta),
    };
    let mut v = json!({
        "mode": mode,
        "epsilon": p.epsilon,
        "delta": p.delta,
        "n": p.n,
        "r": p.r,
        "yes_lower": cert.yes_lower,
        "no_upper": cert.no_upper,
        "gap": cert.gap,
        "bound": cert.bound,
        "pass": cert.pass,
    });
    v[key] = json!(value);
    v
}

pub fn reduction_demo_json(d: &ReductionDemo) -> Value {
    json!({
        "acceptance": d.acceptance,
        "promise": promise_str(d.promise),
        "p_zero": d.p_zero,
        "p_zero_expected": d.p_zero_expected,
        "identity_residual": d.identity_residual,
        "q_range": [d.q_range.0, d.q_range.1],
        "yes_threshold": d.yes_threshold,
        "no_threshold": d.no_threshold,
        "certificate": gap_certificate_json(&d.certificate),
        "pass": d.pass,
    })
}

pub fn amplification_json(rep: &AmplificationReport, mc: Option<&MonteCarloEstimate>) -> Value {
    let s = &rep.params;
    let mut v = json!({
        "a": s.a,
        "b": s.b,
        "q_poly": s.q_poly,
        "k": s.k,
        "r": s.r,
        "reps": s.reps,
        "filter": s.filter(),
        "p_acc": rep.p_acc,
        "promise": promise_str(rep.promise),
        "filtered": rep.filtered,
        "amplified": rep.amplified,
        "yes_closed_form": rep.yes_closed_form,
        "no_closed_form": rep.no_closed_form,
        "yes_bound": rep.yes_bound,
        "no_bound": rep.no_bound,
        "pass": rep.pass,
    });
    if let Some(mc) = mc {
        v["monte_carlo"] = json!({
            "trials": mc.trials,
            "accepted": mc.accepted,
            "estimate": mc.estimate,
            "expected": mc.expected,
            "std_error": mc.std_error,
            "z_score": mc.z_score(),
        });
    }
    v
}

pub fn nqp_json(r: &NqpImplication) -> Value {
    json!({
        "class": match r.class { NqpClass::YesWitness => "yes-witness", NqpClass::Zero => "zero" },
        "p_tilde": r.p_tilde,
        "q": r.q,
        "lower": r.lower,
        "upper": r.upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distribution_json_shape() {
        let d = Distribution::new(1, vec![0.75, 0.25]).unwrap();
        let text = serde_json::to_string(&DistributionFile::new(&d, Some(0.5))).unwrap();
        assert_eq!(text, r#"{"n":1,"epsilon":0.5,"probabilities":[0.75,0.25]}"#);
        assert_eq!(distribution_from_json(&text).unwrap(), d);
        assert!(distribution_from_json(r#"{"n":1,"probabilities":[0.5,0.5]}"#).is_ok());
        assert!(distribution_from_json(r#"{"n":2,"probabilities":[0.5,0.5]}"#).is_err());
        assert!(distribution_from_json("not json").is_err());
    }

    #[test]
    fn infinite_c_star_is_a_string() {
        let r = ErrorReport {
            c_star: f64::INFINITY,
            eta_point: 0.5,
            eta_l1: 1.0,
            bound: 0.0,
            pass: false,
            witness: None,
        };
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["c_star"], "inf");
        assert_eq!(v["witness"], Value::Null);
        let back: ErrorReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn shot_record_round_trip() {
        let rec = ShotRecord {
            n: 2,
            seed: 9,
            shots: 5,
            histogram: vec![3, 0, 2, 0],
        };
        let file = ShotRecordFile::from(&rec);
        let text = serde_json::to_string(&file).unwrap();
        assert_eq!(text, r#"{"seed":9,"shots":5,"histogram":{"00":3,"10":2}}"#);
        let back: ShotRecordFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_record().unwrap(), rec);
    }
}
