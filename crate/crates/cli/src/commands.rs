use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use dqc1_core::corpus::{load_dir, CorpusSpec, NamedCircuit};
use dqc1_core::io::{
    amplification_json, distribution_from_json, gap_certificate_json, reduction_demo_json,
    DistributionFile, ShotRecordFile,
};
use dqc1_core::reductions::{
    reduction_demo, sbp_amplify, sbp_gap, simulate_amplification, ErrorModel, ReductionParams,
    SbpParams,
};
use dqc1_core::sweep::{run_sweep, write_csv, SweepSpec};
use dqc1_core::{
    adversarial_circuit, exact_distribution_capped, gen_random_circuit, marginal_error_check,
    parse_circuit, sample as draw, uniform_check, Circuit, GateMix, Polarization,
};

use crate::{
    AdversaryArgs, AmplifyArgs, CheckUniformArgs, GenArgs, ReductionArgs, SampleArgs, SimulateArgs,
    SweepArgs,
};

pub enum Outcome {
    Pass,
    Fail,
}

impl From<bool> for Outcome {
    fn from(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

pub fn parse_epsilon(s: &str) -> std::result::Result<f64, String> {
    let eps: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    Polarization::new(eps)
        .map(|_| eps)
        .map_err(|e| e.to_string())
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(out: Option<&Path>, value: &Value) -> Result<()> {
    emit(out, &format!("{}\n", serde_json::to_string_pretty(value)?))
}

fn read_circuit(path: &Path) -> Result<Circuit> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_circuit(&text).with_context(|| format!("parsing {}", path.display()))
}

fn polarization(eps: f64) -> Result<Polarization> {
    Ok(Polarization::new(eps)?)
}

pub fn simulate(a: SimulateArgs, out: Option<&Path>) -> Result<Outcome> {
    let circuit = read_circuit(&a.circuit)?;
    let d = exact_distribution_capped(&circuit, polarization(a.epsilon)?, a.max_qubits)?;
    emit_json(
        out,
        &serde_json::to_value(DistributionFile::new(&d, Some(a.epsilon)))?,
    )?;
    Ok(Outcome::Pass)
}

pub fn sample(a: SampleArgs, out: Option<&Path>) -> Result<Outcome> {
    let circuit = read_circuit(&a.circuit)?;
    let d = exact_distribution_capped(
        &circuit,
        polarization(a.epsilon)?,
        dqc1_core::model::DEFAULT_MAX_QUBITS,
    )?;
    let record = draw(&d, a.seed, a.shots)?;
    emit_json(out, &serde_json::to_value(ShotRecordFile::from(&record))?)?;
    Ok(Outcome::Pass)
}

pub fn check_uniform(a: CheckUniformArgs, out: Option<&Path>) -> Result<Outcome> {
    let eps = polarization(a.epsilon)?;
    let check = |c: &Circuit| {
        if a.marginal {
            marginal_error_check(c, eps)
        } else {
            uniform_check(c, eps)
        }
    };
    if a.circuit.is_dir() {
        let corpus = load_dir(&a.circuit)?;
        if corpus.is_empty() {
            bail!("no .qc files in {}", a.circuit.display());
        }
        let mut all_pass = true;
        let mut reports = Vec::new();
        for NamedCircuit { id, circuit } in &corpus {
            let report = check(circuit).with_context(|| format!("checking {id}"))?;
            all_pass &= report.pass;
            reports.push(json!({ "circuit": id, "report": report }));
        }
        emit_json(out, &Value::Array(reports))?;
        Ok(all_pass.into())
    } else {
        let report = check(&read_circuit(&a.circuit)?)?;
        emit_json(out, &serde_json::to_value(&report)?)?;
        Ok(report.pass.into())
    }
}

pub fn adversary(a: AdversaryArgs, out: Option<&Path>) -> Result<Outcome> {
    let text =
        fs::read_to_string(&a.dist).with_context(|| format!("reading {}", a.dist.display()))?;
    let q =
        distribution_from_json(&text).with_context(|| format!("loading {}", a.dist.display()))?;
    let adv = adversarial_circuit(&q, polarization(a.epsilon)?, a.c)?;
    if let Some(path) = &a.circuit_out {
        fs::write(path, adv.circuit.to_string())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    emit_json(out, &serde_json::to_value(&adv.report)?)?;
    Ok(adv.report.pass.into())
}

pub fn reduction(a: ReductionArgs, out: Option<&Path>) -> Result<Outcome> {
    let error = match (a.c, a.eta) {
        (Some(c), None) => ErrorModel::Multiplicative(c),
        (None, Some(eta)) => ErrorModel::Additive(eta),
        _ => bail!("exactly one of --c and --eta is required"),
    };
    let eps = polarization(a.epsilon)?;
    if let Some(path) = &a.circuit {
        if a.r.is_some() {
            bail!("--r cannot be combined with --circuit");
        }
        let v = read_circuit(path)?;
        if a.n.is_some_and(|n| n != v.n()) {
            bail!(
                "--n {} disagrees with the {}-qubit circuit",
                a.n.unwrap_or(0),
                v.n()
            );
        }
        let demo = reduction_demo(&v, eps, error, a.delta)?;
        emit_json(out, &reduction_demo_json(&demo))?;
        return Ok(demo.pass.into());
    }
    let n = match (a.n, error) {
        (Some(n), _) => n,
        (None, ErrorModel::Multiplicative(_)) => 1,
        (None, ErrorModel::Additive(_)) => bail!("--n is required with --eta"),
    };
    let mut params = match error {
        ErrorModel::Multiplicative(c) => ReductionParams::multiplicative(a.epsilon, c, a.delta, n)?,
        ErrorModel::Additive(eta) => ReductionParams::additive(a.epsilon, eta, a.delta, n)?,
    };
    if let Some(r) = a.r {
        params = params.with_r(r)?;
    }
    let cert = sbp_gap(&params)?;
    emit_json(out, &gap_certificate_json(&cert))?;
    Ok(cert.pass.into())
}

pub fn amplify(a: AmplifyArgs, out: Option<&Path>) -> Result<Outcome> {
    let params = SbpParams::new(a.a, a.b, a.qpoly, a.r, a.reps)?;
    let report = sbp_amplify(&params, a.pacc)?;
    let mc = (a.trials > 0).then(|| simulate_amplification(&params, a.pacc, a.trials, a.seed));
    emit_json(out, &amplification_json(&report, mc.as_ref()))?;
    let mc_ok = mc.as_ref().is_none_or(|m| m.z_score() <= 3.0);
    Ok((report.pass && mc_ok).into())
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (lo, hi) = s.split_once(':').unwrap_or((s, s));
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

pub fn sweep(a: SweepArgs, out: Option<&Path>) -> Result<Outcome> {
    let corpus = match (&a.corpus, &a.gen_n) {
        (Some(dir), _) => CorpusSpec::Directory(dir.clone()),
        (None, Some(range)) => {
            let (n_min, n_max) =
                parse_range(range).with_context(|| format!("--gen-n `{range}`"))?;
            CorpusSpec::Generated {
                n_min,
                n_max,
                depth: a.gen_depth,
                count: a.gen_count,
                seed: a.gen_seed,
                mix: a.gen_mix.parse()?,
            }
        }
        (None, None) => bail!("one of --corpus or --gen-n is required"),
    };
    let spec = SweepSpec {
        epsilons: a.epsilon.parse()?,
        c_grid: a.c.parse()?,
        delta: a.delta,
        circuits: corpus.load()?,
    };
    let rows = run_sweep(&spec)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    emit(out, &String::from_utf8(buf)?)?;
    Ok(rows.iter().all(|r| r.values.is_ok()).into())
}

pub fn gen(a: GenArgs, out: Option<&Path>) -> Result<Outcome> {
    let mix: GateMix = a.mix.parse()?;
    let circuit = gen_random_circuit(a.n, a.depth, a.seed, &mix)?;
    emit(out, &circuit.to_string())?;
    Ok(Outcome::Pass)
}
