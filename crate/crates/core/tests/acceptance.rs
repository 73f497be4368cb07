//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use dqc1_core::corpus::{load_dir, NamedCircuit};
use dqc1_core::io::ShotRecordFile;
use dqc1_core::reductions::{
    choose_r, first_qubit_acceptance, nqp_np_implication, nqp_probability_map, sbp_gap_additive,
    sbp_gap_multiplicative, simulate_amplification, NqpClass, ReductionParams, SbpParams,
};
use dqc1_core::sampling::DEFAULT_SEED;
use dqc1_core::{
    adversarial_circuit, exact_distribution, gen_random_circuit, oracle_distribution, sample,
    uniform_check, Circuit, Distribution, GateMix, Polarization,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const EPS_GRID: [f64; 5] = [0.0, 0.1, 0.3, 0.5, 0.9];

fn corpus() -> Vec<NamedCircuit> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    load_dir(&dir).expect("bundled corpus loads")
}

fn random_circuits() -> Vec<Circuit> {
    let mix = GateMix::default();
    (0..200u64)
        .map(|i| {
            let n = 2 + (i % 9) as usize;
            let depth = 1 + ((i * 53) % 100) as usize;
            gen_random_circuit(n, depth, 7_000 + i, &mix).unwrap()
        })
        .collect()
}

fn pol(eps: f64) -> Polarization {
    Polarization::new(eps).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn band_property(circuits: &[Circuit]) -> Outcome {
    let start = Instant::now();
    let mut worst = 0f64;
    for (i, c) in circuits.iter().enumerate() {
        let dim = (1u64 << c.n()) as f64;
        for eps in EPS_GRID {
            let d = exact_distribution(c, pol(eps)).map_err(|e| e.to_string())?;
            let (lo, hi) = ((1.0 - eps) / dim, (1.0 + eps) / dim);
            for (z, &p) in d.probs().iter().enumerate() {
                let excess = (lo - p).max(p - hi);
                worst = worst.max(excess);
                ensure(excess <= 1e-12, || {
                    format!("circuit {i}, eps {eps}, z {z}: p = {p} outside [{lo}, {hi}]")
                })?;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "{} circuits x {} eps, worst excess {worst:.1e}, {secs:.1} s",
        circuits.len(),
        EPS_GRID.len()
    ))
}

fn uniform_bound(circuits: &[Circuit]) -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for (i, c) in circuits.iter().enumerate() {
        for eps in EPS_GRID {
            let rep = uniform_check(c, pol(eps)).map_err(|e| e.to_string())?;
            let bound = eps / (1.0 - eps);
            worst = worst.max(rep.c_star - bound);
            ensure(rep.c_star <= bound + 1e-12 && rep.pass, || {
                format!("circuit {i}, eps {eps}: c* = {} above {bound}", rep.c_star)
            })?;
        }
    }
    for n in [1, 2, 5, 10] {
        let id = Circuit::new(n).unwrap();
        for eps in EPS_GRID {
            let rep = uniform_check(&id, pol(eps)).map_err(|e| e.to_string())?;
            let bound = eps / (1.0 - eps);
            ensure((rep.c_star - bound).abs() <= 1e-12, || {
                format!(
                    "identity n {n}, eps {eps}: c* = {} not saturating {bound}",
                    rep.c_star
                )
            })?;
        }
    }
    Ok(format!("max c* - bound = {worst:.1e}; identity saturates"))
}

fn generated_distribution(i: u64) -> Distribution {
    let n = 1 + (i % 8) as usize;
    let dim = 1usize << n;
    let mut rng = ChaCha20Rng::seed_from_u64(0xAD_0000 + i);
    match i % 4 {
        0 => Distribution::uniform(n),
        1 => Distribution::point_mass(n, rng.gen_range(0..dim)),
        kind => {
            let w: Vec<f64> = (0..dim)
                .map(|_| {
                    let u: f64 = rng.gen();
                    if kind == 2 {
                        u
                    } else {
                        u.powi(8)
                    }
                })
                .collect();
            let total: f64 = w.iter().sum();
            Distribution::new(n, w.iter().map(|x| x / total).collect()).unwrap()
        }
    }
}

fn adversary() -> Outcome {
    let mut count = 0;
    for i in 0..100 {
        let q = generated_distribution(i);
        let dim = q.len() as f64;
        for eps in [0.2, 0.6] {
            let c = 0.9 * eps / (1.0 - eps);
            let adv = adversarial_circuit(&q, pol(eps), c).map_err(|e| format!("dist {i}: {e}"))?;
            let y = adv.witness;
            let p = oracle_distribution(&adv.circuit, pol(eps)).map_err(|e| e.to_string())?;
            let (p_y, q_y) = (p.get(y), q.get(y));
            let expected = (1.0 - eps) / dim;
            ensure((p_y - expected).abs() <= 1e-12, || {
                format!("dist {i}, eps {eps}: p_y = {p_y}, expected {expected}")
            })?;
            ensure((p_y - q_y).abs() > c * p_y && adv.report.pass, || {
                format!(
                    "dist {i}, eps {eps}: |p_y - q_y| = {} not above c p_y = {}",
                    (p_y - q_y).abs(),
                    c * p_y
                )
            })?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} witnesses confirmed by density-matrix simulation"
    ))
}

fn oracle_and_affinity(corpus: &[NamedCircuit]) -> Outcome {
    let mut oracle_worst = 0f64;
    let mut affine_worst = 0f64;
    let mut small = 0;
    for NamedCircuit { id, circuit } in corpus {
        let p0 = exact_distribution(circuit, pol(0.0)).map_err(|e| e.to_string())?;
        let p1 = exact_distribution(circuit, pol(1.0)).map_err(|e| e.to_string())?;
        if circuit.n() <= 6 {
            small += 1;
        }
        for eps in EPS_GRID.into_iter().chain([1.0]) {
            let p = exact_distribution(circuit, pol(eps)).map_err(|e| e.to_string())?;
            for z in 0..p.len() {
                let affine = (1.0 - eps) * p0.get(z) + eps * p1.get(z);
                affine_worst = affine_worst.max((p.get(z) - affine).abs());
            }
            ensure(affine_worst <= 1e-12, || {
                format!("{id}, eps {eps}: affinity residual {affine_worst:.2e}")
            })?;
            if circuit.n() <= 6 {
                let o = oracle_distribution(circuit, pol(eps)).map_err(|e| e.to_string())?;
                for z in 0..p.len() {
                    oracle_worst = oracle_worst.max((p.get(z) - o.get(z)).abs());
                }
                ensure(oracle_worst <= 1e-10, || {
                    format!("{id}, eps {eps}: oracle residual {oracle_worst:.2e}")
                })?;
            }
        }
    }
    Ok(format!(
        "oracle on {small} circuits: {oracle_worst:.1e}; affinity on {}: {affine_worst:.1e}",
        corpus.len()
    ))
}

fn reduction_identity(corpus: &[NamedCircuit]) -> Outcome {
    let mut worst = 0f64;
    for NamedCircuit { id, circuit } in corpus {
        let a = first_qubit_acceptance(circuit).map_err(|e| e.to_string())?;
        let u = circuit.inverse();
        let dim = (1u64 << circuit.n()) as f64;
        for eps in EPS_GRID.into_iter().chain([1.0]) {
            let p = exact_distribution(&u, pol(eps))
                .map_err(|e| e.to_string())?
                .get(0);
            let expected = (2.0 * eps * a + 1.0 - eps) / dim;
            worst = worst.max((p - expected).abs());
            ensure(worst <= 1e-10, || {
                format!("{id}, eps {eps}: p = {p}, expected {expected}")
            })?;
        }
    }
    Ok(format!(
        "{} circuits, worst residual {worst:.1e}",
        corpus.len()
    ))
}

fn gap_certificates() -> Outcome {
    let n = 5;
    let mut worst = f64::INFINITY;
    for i in 0..20 {
        let delta = 1.25 + i as f64; // spans 1.25..=20.25
        for j in 0..20 {
            let eps = 1.0 / delta + (1.0 - 1.0 / delta) * j as f64 / 20.0;
            let c = eps - 1.0 / delta;
            let eta = c * 2f64.powi(-(n as i32));
            let mult = ReductionParams::multiplicative(eps, c, delta, n)
                .and_then(|p| sbp_gap_multiplicative(&p))
                .map_err(|e| format!("eps {eps}, delta {delta}: {e}"))?;
            let add = ReductionParams::additive(eps, eta, delta, n)
                .and_then(|p| sbp_gap_additive(&p))
                .map_err(|e| format!("eps {eps}, delta {delta}: {e}"))?;
            for cert in [&mult, &add] {
                worst = worst.min(cert.gap - 1.0 / delta);
                ensure(cert.gap >= 1.0 / delta - 1e-12 && cert.pass, || {
                    format!(
                        "eps {eps}, delta {delta}: gap {} below {}",
                        cert.gap,
                        1.0 / delta
                    )
                })?;
            }
        }
    }
    let r = choose_r(0.5, 4.0).map_err(|e| e.to_string())?;
    ensure(r == 3, || format!("boundary r = {r}"))?;
    let mult =
        ReductionParams::multiplicative(0.5, 0.25, 4.0, n).and_then(|p| sbp_gap_multiplicative(&p));
    let add =
        ReductionParams::additive(0.5, 0.25 / 32.0, 4.0, n).and_then(|p| sbp_gap_additive(&p));
    for cert in [mult, add] {
        let cert = cert.map_err(|e| e.to_string())?;
        ensure((cert.gap - 0.25).abs() <= 1e-12, || {
            format!("boundary gap {}", cert.gap)
        })?;
    }
    Ok(format!(
        "400 grid points, min gap - 1/delta = {worst:.1e}; boundary gap 0.25"
    ))
}

fn amplification() -> Outcome {
    let mut points = 0;
    for a in [1.0, 0.9, 0.75, 0.6, 0.5, 0.3, 0.1] {
        for q_poly in [1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0] {
            for frac in [0.0, 0.25, 0.5, 1.0] {
                let b = (a - 1.0 / q_poly) * frac;
                if b < 0.0 || a - b < 1.0 / q_poly {
                    continue;
                }
                for r in [1, 2, 4] {
                    let s = SbpParams::new(a, b, q_poly, r, None).map_err(|e| e.to_string())?;
                    let scale = 2f64.powi(-(r as i32));
                    let yes = s.amplified(a * scale);
                    let no = s.amplified(b * scale);
                    ensure(
                        yes >= 2.0 * no
                            && yes >= s.yes_bound() * (1.0 - 1e-12)
                            && no <= s.no_bound() * (1.0 + 1e-12),
                        || format!("a {a}, b {b}, q {q_poly}, r {r}: yes {yes}, no {no}"),
                    )?;
                    points += 1;
                }
            }
        }
    }
    let mut zs = Vec::new();
    for (a, b, q_poly, r, p) in [
        (1.0, 0.5, 2.0, 2, 0.25),
        (0.75, 0.25, 2.0, 1, 0.375),
        (0.6, 0.1, 2.0, 1, 0.05),
    ] {
        let s = SbpParams::new(a, b, q_poly, r, None).map_err(|e| e.to_string())?;
        let mc = simulate_amplification(&s, p, 1_000_000, DEFAULT_SEED);
        let z = mc.z_score();
        ensure(z <= 3.0, || {
            format!(
                "a {a}, p {p}: estimate {} vs {} (z = {z:.2})",
                mc.estimate, mc.expected
            )
        })?;
        zs.push(format!("{z:.2}"));
    }
    Ok(format!(
        "{points} grid points; Monte Carlo z-scores {}",
        zs.join(", ")
    ))
}

fn nqp_arithmetic() -> Outcome {
    for n in [1, 5, 10] {
        for p in [0.0, 1.0] {
            let v = nqp_probability_map(p, n).map_err(|e| e.to_string())?;
            ensure(v == 0.0, || format!("map({p}, {n}) = {v}"))?;
        }
    }
    let mut checks = 0;
    for n in 1..=10u32 {
        let inv = 2f64.powi(-(n as i32));
        for i in 0..=20 {
            let p_acc = i as f64 / 20.0;
            let pt = nqp_probability_map(p_acc, n).map_err(|e| e.to_string())?;
            let (lo, hi) = (pt * inv, (2.0 - inv) * pt);
            for k in 0..10 {
                let q = (lo + (hi - lo) * k as f64 / 9.0).min(1.0);
                let imp = nqp_np_implication(pt, q, n)
                    .map_err(|e| format!("p_acc {p_acc}, n {n}, q {q}: {e}"))?;
                let expected = if pt > 0.0 {
                    NqpClass::YesWitness
                } else {
                    NqpClass::Zero
                };
                ensure(imp.class == expected, || {
                    format!("p_acc {p_acc}, n {n}: class {:?}", imp.class)
                })?;
                ensure(
                    imp.lower <= q * (1.0 + 1e-12) && q <= imp.upper * (1.0 + 1e-12),
                    || {
                        format!(
                            "p_acc {p_acc}, n {n}: q {q} outside [{}, {}]",
                            imp.lower, imp.upper
                        )
                    },
                )?;
                checks += 1;
            }
        }
    }
    Ok(format!("endpoints exactly 0; {checks} implication checks"))
}

fn sampling_statistics(corpus: &[NamedCircuit]) -> Outcome {
    let shots = 1_000_000;
    let mut worst_ratio = 0f64;
    let mut count = 0;
    for NamedCircuit { id, circuit } in corpus.iter().filter(|c| c.circuit.n() <= 6) {
        let d = exact_distribution(circuit, pol(0.5)).map_err(|e| e.to_string())?;
        let rec = sample(&d, DEFAULT_SEED, shots).map_err(|e| e.to_string())?;
        let tv = rec.total_variation(&d);
        let limit = 4.0 * ((d.len() as f64) / shots as f64).sqrt();
        worst_ratio = worst_ratio.max(tv / limit);
        ensure(tv <= limit, || {
            format!("{id}: TV {tv:.2e} above {limit:.2e}")
        })?;
        let again = sample(&d, DEFAULT_SEED, shots).map_err(|e| e.to_string())?;
        let bytes = |r| serde_json::to_vec(&ShotRecordFile::from(r)).unwrap();
        ensure(bytes(&rec) == bytes(&again), || {
            format!("{id}: repeat differs")
        })?;
        count += 1;
    }
    Ok(format!(
        "{count} circuits, worst TV / limit = {worst_ratio:.2}; repeats identical"
    ))
}

fn performance() -> Outcome {
    let c = gen_random_circuit(12, 100, 12_100, &GateMix::default()).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let d = exact_distribution(&c, pol(0.5)).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(d.len() == 4096, || "wrong dimension".into())?;
    ensure(secs < 60.0, || format!("took {secs:.2} s"))?;
    Ok(format!("n = 12, 100 gates in {secs:.2} s"))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let circuits = random_circuits();
    let criteria: Vec<Criterion> = vec![
        ("band property", Box::new(|| band_property(&circuits))),
        (
            "uniform multiplicative bound",
            Box::new(|| uniform_bound(&circuits)),
        ),
        ("adversarial construction", Box::new(adversary)),
        (
            "oracle equivalence and affinity",
            Box::new(|| oracle_and_affinity(&corpus)),
        ),
        (
            "reduction identity",
            Box::new(|| reduction_identity(&corpus)),
        ),
        ("gap certificates", Box::new(gap_certificates)),
        ("amplification", Box::new(amplification)),
        ("nqp arithmetic", Box::new(nqp_arithmetic)),
        (
            "sampling statistics",
            Box::new(|| sampling_statistics(&corpus)),
        ),
        ("performance floor", Box::new(performance)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
