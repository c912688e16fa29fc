//! Cross-checks between the exact GF(2) construction and dense simulation.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use twirl_core::{span, verify_condition, Pauli, PauliString, TwirlPlan};
use twirl_sim::{
    apply_kraus, build_twirl_plan, choi_of_twirled, exact_twirl, is_pauli_channel, pauli_conjugate,
    pauli_matrix, predicted_channel, random_density, reconstruct, run_standard_checks, CMatrix,
    DensityMatrix, KrausOperator, NoiseChannel, PauliSum, VerifyConfig,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn all_paulis(n: usize) -> Vec<PauliString> {
    let mut out = Vec::new();
    for code in 0..4usize.pow(n as u32) {
        let mut paulis = Vec::new();
        let mut k = code;
        for _ in 0..n {
            paulis.push(match k % 4 {
                0 => Pauli::I,
                1 => Pauli::X,
                2 => Pauli::Y,
                _ => Pauli::Z,
            });
            k /= 4;
        }
        out.push(PauliString::from_paulis(&paulis).unwrap());
    }
    out
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Random operator with healthy coefficient magnitudes, as a channel.
fn random_channel(n: usize, terms: usize, rng: &mut ChaCha20Rng) -> NoiseChannel {
    let everyone = all_paulis(n);
    let mut sum = PauliSum::new(n);
    while sum.len() < terms {
        let pick = everyone[rng.random_range(0..everyone.len())].clone();
        let magnitude = 0.3 + 0.7 * rng.random::<f64>();
        let angle = rng.random::<f64>() * std::f64::consts::TAU;
        sum.add_term(pick, c(magnitude * angle.cos(), magnitude * angle.sin()))
            .unwrap();
    }
    NoiseChannel::single(KrausOperator::Sum(sum)).unwrap()
}

#[test]
fn zeta_agrees_with_dense_commutators_exhaustively() {
    let everyone = all_paulis(2);
    for a in &everyone {
        let ma = pauli_matrix(a).unwrap();
        for b in &everyone {
            let mb = pauli_matrix(b).unwrap();
            let commutator = &ma * &mb - &mb * &ma;
            let anticommutator = &ma * &mb + &mb * &ma;
            match a.zeta(b).unwrap() {
                1 => {
                    assert_eq!(max_abs(&commutator), 0.0);
                    assert!(max_abs(&anticommutator) > 0.0);
                }
                _ => {
                    assert_eq!(max_abs(&anticommutator), 0.0);
                    assert!(max_abs(&commutator) > 0.0);
                }
            }
        }
    }
}

#[test]
fn star_agrees_with_dense_products_up_to_phase() {
    let phases = [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)];
    let everyone = all_paulis(2);
    for a in &everyone {
        let ma = pauli_matrix(a).unwrap();
        for b in &everyone {
            let product = &ma * pauli_matrix(b).unwrap();
            let star = pauli_matrix(&a.star(b).unwrap()).unwrap();
            let matched = phases
                .iter()
                .any(|phase| max_abs(&(&star * *phase - &product)) == 0.0);
            assert!(matched, "{a} * {b} differs from the matrix product by a non-Pauli phase");
        }
    }
}

#[test]
fn constructed_plans_match_the_predicted_channel_on_states() {
    let mut rng = ChaCha20Rng::seed_from_u64(100);
    for round in 0..30 {
        let n = 1 + (round % 3);
        let channel = random_channel(n, 2 + round % 5, &mut rng);
        let plan = build_twirl_plan(&channel, 0.0).unwrap();
        let w = plan.twirl_set().unwrap();
        let m = reconstruct(
            &channel.operators()[0].to_pauli_sum().unwrap().normalized(),
        )
        .unwrap();
        let predicted = predicted_channel(&channel, 0.0).unwrap();
        assert!((predicted.total() - 1.0).abs() < 1e-12);
        for _ in 0..20 {
            let rho = random_density(n, &mut rng).unwrap();
            let twirled = exact_twirl(&w, m.matrix(), &rho).unwrap();
            let expected = predicted.apply(&rho).unwrap();
            assert!(twirled.max_abs_diff(&expected).unwrap() < 1e-10);
        }
    }
}

#[test]
fn twirled_outputs_are_valid_density_matrices() {
    let mut rng = ChaCha20Rng::seed_from_u64(101);
    for round in 0..10 {
        let n = 1 + (round % 3);
        let channel = random_channel(n, 3 + round % 4, &mut rng);
        let plan = build_twirl_plan(&channel, 0.0).unwrap();
        let w = plan.twirl_set().unwrap();
        let m = reconstruct(
            &channel.operators()[0].to_pauli_sum().unwrap().normalized(),
        )
        .unwrap();
        let rho = random_density(n, &mut rng).unwrap();
        let twirled = exact_twirl(&w, m.matrix(), &rho).unwrap();
        twirled.validate().unwrap();
    }
}

#[test]
fn twirl_preserves_the_operator_mass_as_trace() {
    // For a valid twirling set the output trace is tr(M†M)/2^n regardless of
    // the state; with the operator normalised that is exactly one.
    let mut rng = ChaCha20Rng::seed_from_u64(102);
    for round in 0..10 {
        let n = 1 + (round % 3);
        let channel = random_channel(n, 2 + round % 5, &mut rng);
        let plan = build_twirl_plan(&channel, 0.0).unwrap();
        let w = plan.twirl_set().unwrap();
        let sum = channel.operators()[0].to_pauli_sum().unwrap();
        let m = reconstruct(&sum).unwrap();
        let rho = random_density(n, &mut rng).unwrap();
        let twirled = exact_twirl(&w, m.matrix(), &rho).unwrap();
        assert!((twirled.trace().re - sum.frobenius_mass()).abs() < 1e-10);
        assert!(twirled.trace().im.abs() < 1e-12);
    }
}

#[test]
fn nested_one_gate_twirls_equal_the_span_twirl() {
    let mut rng = ChaCha20Rng::seed_from_u64(103);
    for round in 0..50 {
        let n = 1 + (round % 2);
        let channel = random_channel(n, 2 + round % 4, &mut rng);
        let plan = build_twirl_plan(&channel, 0.0).unwrap();
        let m = reconstruct(
            &channel.operators()[0].to_pauli_sum().unwrap().normalized(),
        )
        .unwrap();
        let rho = random_density(n, &mut rng).unwrap();

        // Nesting one-gate twirls multiplies out to a branch per subset.
        let mut branches = vec![m.matrix().clone()];
        for w in &plan.w_tilde {
            let mut next = Vec::with_capacity(branches.len() * 2);
            for b in &branches {
                next.push(b.clone());
                next.push(pauli_conjugate(w, b).unwrap());
            }
            branches = next;
        }
        let dim = 1usize << n;
        let mut nested = CMatrix::zeros(dim, dim);
        for b in &branches {
            nested += apply_kraus(b, rho.matrix()).unwrap();
        }
        nested /= c(branches.len() as f64, 0.0);

        let spanned = exact_twirl(&plan.twirl_set().unwrap(), m.matrix(), &rho).unwrap();
        assert!(max_abs(&(nested - spanned.matrix())) < 1e-12);
    }
}

#[test]
fn condition_violations_show_up_as_process_cross_terms() {
    let mut rng = ChaCha20Rng::seed_from_u64(104);
    let mut counterexamples = 0;
    while counterexamples < 100 {
        let n = 1 + (counterexamples % 2);
        let channel = random_channel(n, 2 + counterexamples % 4, &mut rng);
        let basis = twirl_sim::pauli_basis(&channel, 0.0).unwrap();
        if basis.len() < 2 {
            continue;
        }
        // A random small gate set, usually not a valid twirling set.
        let everyone = all_paulis(n);
        let mut w: Vec<PauliString> = (0..rng.random_range(1..=3))
            .map(|_| everyone[rng.random_range(0..everyone.len())].clone())
            .collect();
        w.sort();
        w.dedup();
        let report = verify_condition(&w, &basis).unwrap();
        if report.satisfied {
            continue;
        }
        let chi = choi_of_twirled(&channel, &w).unwrap();
        for violation in &report.violations {
            let entry = chi.entry(&violation.left, &violation.right).unwrap();
            assert!(
                entry.norm() > 1e-9,
                "violating pair left no trace in the process matrix"
            );
        }
        assert!(!is_pauli_channel(&chi, 1e-10));
        counterexamples += 1;
    }
}

#[test]
fn satisfied_condition_means_pauli_channel() {
    let mut rng = ChaCha20Rng::seed_from_u64(105);
    for round in 0..25 {
        let n = 1 + (round % 2);
        let channel = random_channel(n, 2 + round % 5, &mut rng);
        let plan = build_twirl_plan(&channel, 0.0).unwrap();
        let w = plan.twirl_set().unwrap();
        let chi = choi_of_twirled(&channel, &w).unwrap();
        assert!(is_pauli_channel(&chi, 1e-10));
        // Diagonal entries are the predicted probabilities.
        let predicted = predicted_channel(&channel, 0.0).unwrap();
        for (g, value) in chi.diagonal() {
            assert!((value - predicted.probability(&g)).abs() < 1e-10);
        }
    }
}

#[test]
fn standard_checks_pass_for_the_worked_example() {
    let sum = PauliSum::from_terms(
        2,
        [
            ("IX", 1.0),
            ("IZ", 1.0),
            ("YX", 1.0),
            ("ZX", 1.0 / 2.0f64.sqrt()),
            ("YY", 1.0),
        ]
        .iter()
        .map(|(g, w)| (g.parse().unwrap(), c(*w, 0.0))),
    )
    .unwrap();
    let channel = NoiseChannel::single(KrausOperator::Sum(sum)).unwrap();
    let plan = build_twirl_plan(&channel, 0.0).unwrap();
    let report = run_standard_checks(
        &channel,
        &plan,
        &VerifyConfig {
            baseline: true,
            ..VerifyConfig::default()
        },
    )
    .unwrap();
    assert!(report.all_passed, "{report}");
    let text = format!("{report}");
    assert!(text.contains("twirling condition"));
    assert!(text.contains("pass"));
}

#[test]
fn plan_from_multi_operator_channel_uses_the_union_basis() {
    let a = PauliSum::from_terms(1, [("I".parse().unwrap(), c(0.9, 0.0))]).unwrap();
    let b = PauliSum::from_terms(1, [("X".parse().unwrap(), c(0.4, 0.0))]).unwrap();
    let channel = NoiseChannel::new(
        vec![KrausOperator::Sum(a), KrausOperator::Sum(b)],
        Some(vec![0.8, 0.2]),
    )
    .unwrap();
    let plan = build_twirl_plan(&channel, 0.0).unwrap();
    assert_eq!(plan.v.len(), 2);
    let predicted = predicted_channel(&channel, 0.0).unwrap();
    assert!((predicted.probability(&"I".parse().unwrap()) - 0.8).abs() < 1e-12);
    assert!((predicted.probability(&"X".parse().unwrap()) - 0.2).abs() < 1e-12);

    let mut rng = ChaCha20Rng::seed_from_u64(106);
    let rho = random_density(1, &mut rng).unwrap();
    let w = plan.twirl_set().unwrap();
    let ma = reconstruct(&channel.operators()[0].to_pauli_sum().unwrap().normalized()).unwrap();
    let mb = reconstruct(&channel.operators()[1].to_pauli_sum().unwrap().normalized()).unwrap();
    let twirled = exact_twirl(&w, ma.matrix(), &rho).unwrap().matrix().scale(0.8)
        + exact_twirl(&w, mb.matrix(), &rho).unwrap().matrix().scale(0.2);
    let expected = predicted.apply(&rho).unwrap();
    assert!(max_abs(&(twirled - expected.matrix())) < 1e-12);
}
