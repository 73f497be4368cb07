use proptest::prelude::*;

use dqc1_core::error_analysis::compare;
use dqc1_core::reductions::{sbp_amplify, sbp_gap_multiplicative, ReductionParams, SbpParams};
use dqc1_core::{
    apply_circuit, exact_distribution, gen_random_circuit, oracle_distribution, parse_circuit,
    Circuit, Distribution, GateMix, Polarization, StateVector,
};

fn circuit(max_n: usize, max_depth: usize) -> impl Strategy<Value = Circuit> {
    (1..=max_n, 0..=max_depth, any::<u64>()).prop_map(|(n, depth, seed)| {
        gen_random_circuit(n, depth, seed, &GateMix::default()).unwrap()
    })
}

fn distribution(n: usize) -> impl Strategy<Value = Distribution> {
    prop::collection::vec(0.01f64..1.0, 1 << n).prop_map(move |w| {
        let total: f64 = w.iter().sum();
        Distribution::new(n, w.iter().map(|x| x / total).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn statevector_norm_is_preserved(c in circuit(8, 200), index in any::<usize>()) {
        let s = StateVector::basis(c.n(), index % (1 << c.n()));
        let out = apply_circuit(&c, &s).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn inverse_round_trips(c in circuit(8, 200), index in any::<usize>()) {
        let index = index % (1 << c.n());
        let s = StateVector::basis(c.n(), index);
        let back = apply_circuit(&c.inverse(), &apply_circuit(&c, &s).unwrap()).unwrap();
        for (z, a) in back.amplitudes().iter().enumerate() {
            let target = if z == index { 1.0 } else { 0.0 };
            prop_assert!((a.re - target).abs() < 1e-9 && a.im.abs() < 1e-9);
        }
    }

    #[test]
    fn text_format_round_trips(c in circuit(10, 60)) {
        prop_assert_eq!(parse_circuit(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn probabilities_stay_in_band(c in circuit(7, 60), eps in 0.0f64..=1.0) {
        let d = exact_distribution(&c, Polarization::new(eps).unwrap()).unwrap();
        let dim = d.len() as f64;
        for &p in d.probs() {
            prop_assert!(p >= (1.0 - eps) / dim - 1e-12 && p <= (1.0 + eps) / dim + 1e-12);
        }
        prop_assert!((d.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distribution_is_affine_in_epsilon(c in circuit(7, 60), eps in 0.0f64..=1.0) {
        let at = |e: f64| exact_distribution(&c, Polarization::new(e).unwrap()).unwrap();
        let (p, p0, p1) = (at(eps), at(0.0), at(1.0));
        for z in 0..p.len() {
            prop_assert!((p.get(z) - ((1.0 - eps) * p0.get(z) + eps * p1.get(z))).abs() < 1e-12);
        }
    }

    #[test]
    fn ensemble_matches_density_matrix(c in circuit(6, 80), eps in 0.0f64..=1.0) {
        let eps = Polarization::new(eps).unwrap();
        let (a, b) = (exact_distribution(&c, eps).unwrap(), oracle_distribution(&c, eps).unwrap());
        for z in 0..a.len() {
            prop_assert!((a.get(z) - b.get(z)).abs() < 1e-10);
        }
    }

    #[test]
    fn metrics_are_permutation_invariant(
        (p, q) in (1usize..=5).prop_flat_map(|n| (distribution(n), distribution(n))),
        shift in any::<usize>(),
    ) {
        let dim = p.len();
        let perm = |d: &Distribution| {
            let probs = (0..dim).map(|z| d.get((z * 5 + shift) % dim)).collect();
            Distribution::new(d.n(), probs).unwrap()
        };
        let (c, eta_point, eta_l1) = compare(&p, &q).unwrap();
        let (pc, _, pl1) = compare(&perm(&p), &perm(&q)).unwrap();
        prop_assert!((c - pc).abs() < 1e-12 && (eta_l1 - pl1).abs() < 1e-12);
        prop_assert!(eta_point <= eta_l1 + 1e-15);
    }

    #[test]
    fn gap_certificate_matches_regime(eps in 0.05f64..0.99, delta in 1.01f64..50.0, frac in 0.0f64..=1.0) {
        prop_assume!(eps >= 1.0 / delta);
        let c = frac * (eps - 1.0 / delta);
        let cert = sbp_gap_multiplicative(&ReductionParams::multiplicative(eps, c, delta, 4).unwrap()).unwrap();
        prop_assert!(cert.pass && cert.yes_lower > cert.no_upper);
        prop_assert!(ReductionParams::multiplicative(eps, eps - 1.0 / delta + 1e-6, delta, 4).is_err());
    }

    #[test]
    fn amplification_is_monotone(a in 0.2f64..=1.0, frac in 0.0f64..0.5, p1 in 0.0f64..=1.0, p2 in 0.0f64..=1.0) {
        let b = a * frac;
        let s = SbpParams::new(a, b, 2.0 / (a - b), 1, None).unwrap();
        let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        prop_assert!(s.amplified(lo) <= s.amplified(hi));
        prop_assert!(s.yes_bound() >= 2.0 * s.no_bound());
        if let Ok(rep) = sbp_amplify(&s, hi) {
            prop_assert!(rep.pass);
        }
    }
}

#[test]
fn generated_corpus_is_deterministic_and_sized() {
    let mix = GateMix::default();
    for seed in 0..20 {
        let a = gen_random_circuit(4, 30, seed, &mix).unwrap();
        assert_eq!(a, gen_random_circuit(4, 30, seed, &mix).unwrap());
        assert_eq!(a.len(), 30);
    }
    assert!(gen_random_circuit(3, 0, 1, &mix).unwrap().is_empty());
}
