//! Property tests for the crate-wide invariants.

use num_complex::Complex64;
use proptest::prelude::*;

use qnl_core::entangle::{
    build_u, check_perfect_correlation, make_max_entangled, partner_operator,
    verify_basis_invariance,
};
use qnl_core::hilbert::{
    commutator, eigendecompose, orthonormality_deviation, tensor_product, ComplexMatrix,
    StateVector,
};
use qnl_core::measure::{run_epr_ensemble, MeasureOrder};
use qnl_core::nogo::{
    enumerate_colorings, peres_rays, search_coloring, verify_coloring, ColoringOutcome,
};
use qnl_core::sampling::{random_hermitian, random_orthonormal_basis, rng_from_seed};
use qnl_core::stats::binomial_five_sigma;

fn matrix_strategy(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |entries| {
        ComplexMatrix::new(
            dim,
            entries
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )
        .unwrap()
    })
}

fn hermitian_strategy(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix_strategy(dim).prop_map(|m| m.add(&m.adjoint()).unwrap().scale(Complex64::new(0.5, 0.0)))
}

fn vector_strategy(dim: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim).prop_map(|entries| {
        StateVector::new(
            entries
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn tensor_product_respects_the_mixed_product_rule(
        a in matrix_strategy(2),
        b in matrix_strategy(3),
        x in vector_strategy(2),
        y in vector_strategy(3),
    ) {
        let joint = tensor_product(&a, &b).apply(&x.tensor(&y)).unwrap();
        let split = a.apply(&x).unwrap().tensor(&b.apply(&y).unwrap());
        prop_assert!(joint.sub(&split).norm() <= 1e-12);
    }

    #[test]
    fn eigenvectors_are_mutually_orthonormal(h in hermitian_strategy(4)) {
        let pairs = eigendecompose(&h).unwrap();
        let basis: Vec<StateVector> = pairs.into_iter().map(|(_, v)| v).collect();
        prop_assert!(orthonormality_deviation(&basis) <= 1e-9);
    }

    #[test]
    fn commutator_of_hermitians_is_anti_hermitian(
        a in hermitian_strategy(3),
        b in hermitian_strategy(3),
    ) {
        let c = commutator(&a, &b).unwrap();
        // C + C† = 0
        prop_assert!(c.add(&c.adjoint()).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn report_floats_round_trip_exactly(x in prop::num::f64::NORMAL | prop::num::f64::ZERO) {
        use qnl_core::report::Json;
        let text = Json::object().with("x", x).render();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        let back = parsed["x"].as_f64().unwrap();
        prop_assert_eq!(back.to_bits(), x.to_bits());
    }
}

#[test]
fn partner_spectra_match_across_dimensions() {
    let mut rng = rng_from_seed(101);
    for dim in [2usize, 3, 4, 5] {
        let state = make_max_entangled(
            random_orthonormal_basis(dim, &mut rng),
            random_orthonormal_basis(dim, &mut rng),
        )
        .unwrap();
        for _ in 0..10 {
            let o = random_hermitian(dim, &mut rng);
            let partner = partner_operator(&state, &o).unwrap();
            let spec_o: Vec<f64> = eigendecompose(&o).unwrap().iter().map(|p| p.0).collect();
            let spec_p: Vec<f64> = eigendecompose(&partner)
                .unwrap()
                .iter()
                .map(|p| p.0)
                .collect();
            for (x, y) in spec_o.iter().zip(&spec_p) {
                assert!((x - y).abs() <= 1e-9);
            }
        }
    }
}

#[test]
fn swapped_state_partner_inverts_the_original() {
    let mut rng = rng_from_seed(102);
    for dim in [2usize, 3, 4] {
        let state = make_max_entangled(
            random_orthonormal_basis(dim, &mut rng),
            random_orthonormal_basis(dim, &mut rng),
        )
        .unwrap();
        let o = random_hermitian(dim, &mut rng);
        let partner = partner_operator(&state, &o).unwrap();
        let back = partner_operator(&state.swap_roles(), &partner).unwrap();
        assert!(back.sub(&o).unwrap().max_abs() <= 1e-9);
    }
}

#[test]
fn perfect_correlation_residual_is_universally_small() {
    let mut rng = rng_from_seed(103);
    for dim in [2usize, 3, 4] {
        let state = make_max_entangled(
            random_orthonormal_basis(dim, &mut rng),
            random_orthonormal_basis(dim, &mut rng),
        )
        .unwrap();
        for _ in 0..20 {
            let o = random_hermitian(dim, &mut rng);
            assert!(check_perfect_correlation(&state, &o).unwrap() <= 1e-9);
        }
    }
}

#[test]
fn basis_invariance_residual_is_universally_small() {
    let mut rng = rng_from_seed(104);
    let state = make_max_entangled(
        random_orthonormal_basis(3, &mut rng),
        random_orthonormal_basis(3, &mut rng),
    )
    .unwrap();
    for _ in 0..50 {
        let basis = random_orthonormal_basis(3, &mut rng);
        assert!(verify_basis_invariance(&state, &basis).unwrap() <= 1e-9);
    }
}

#[test]
fn anti_unitarity_holds_on_random_pairs() {
    let mut rng = rng_from_seed(105);
    let state = make_max_entangled(
        random_orthonormal_basis(4, &mut rng),
        random_orthonormal_basis(4, &mut rng),
    )
    .unwrap();
    let u = build_u(&state).unwrap();
    for _ in 0..100 {
        let x = qnl_core::sampling::random_state(4, &mut rng);
        let y = qnl_core::sampling::random_state(4, &mut rng);
        let lhs = u.apply(&x).inner(&u.apply(&y));
        let rhs = y.inner(&x);
        assert!((lhs - rhs).norm() <= 1e-10);
    }
}

#[test]
fn epr_values_match_for_arbitrary_hermitians() {
    let mut rng = rng_from_seed(106);
    for dim in [2usize, 3, 4] {
        let state = make_max_entangled(
            random_orthonormal_basis(dim, &mut rng),
            random_orthonormal_basis(dim, &mut rng),
        )
        .unwrap();
        let o = random_hermitian(dim, &mut rng);
        let (records, report) = run_epr_ensemble(&state, &o, "random", 400, 7).unwrap();
        assert_eq!(report.match_count, 400);
        for r in records {
            assert_eq!(r.alice_value, r.bob_value);
        }
    }
}

#[test]
fn epr_marginals_are_uniform_within_five_sigma() {
    let mut rng = rng_from_seed(107);
    let dim = 3;
    let state = make_max_entangled(
        random_orthonormal_basis(dim, &mut rng),
        random_orthonormal_basis(dim, &mut rng),
    )
    .unwrap();
    let o = ComplexMatrix::diagonal(&[-1.0, 0.0, 1.0]);
    let trials = 20_000;
    let (_, report) = run_epr_ensemble(&state, &o, "diag", trials, 11).unwrap();
    let bound = binomial_five_sigma(1.0 / dim as f64, trials);
    for freq in report.marginal_freqs() {
        assert!((freq - 1.0 / dim as f64).abs() <= bound);
    }
    assert!(report.order_independent);
}

#[test]
fn epr_single_order_runs_agree_with_alternating_runs() {
    // same seeds, forced single order: joint outcome sets coincide
    let state = qnl_core::entangle::singlet();
    let o = ComplexMatrix::diagonal(&[1.0, -1.0]);
    for seed in 0..50 {
        let alice_first =
            qnl_core::measure::run_epr_trial(&state, &o, "z", MeasureOrder::AliceFirst, seed)
                .unwrap();
        let bob_first =
            qnl_core::measure::run_epr_trial(&state, &o, "z", MeasureOrder::BobFirst, seed)
                .unwrap();
        assert_eq!(alice_first.alice_value, alice_first.bob_value);
        assert_eq!(bob_first.alice_value, bob_first.bob_value);
    }
}

#[test]
fn complete_colorings_put_exactly_one_zero_per_triple() {
    let rays = peres_rays();
    for take in [5usize, 8, 10, 12] {
        let sub = rays.subset(&(0..take).collect::<Vec<_>>()).unwrap();
        if let ColoringOutcome::Satisfiable(coloring) = search_coloring(&sub) {
            assert!(verify_coloring(&sub, &coloring));
            for t in sub.triples() {
                let sum: u8 = t.iter().map(|&i| coloring.value(i).unwrap()).sum();
                assert_eq!(sum, 2, "exactly one zero per triple");
            }
        }
    }
}

#[test]
fn search_is_sound_and_complete_on_small_subsets() {
    let rays = peres_rays();
    let mut rng = rng_from_seed(108);
    use rand::seq::SliceRandom;
    let mut indices: Vec<usize> = (0..rays.len()).collect();
    for round in 0..25 {
        indices.shuffle(&mut rng);
        let take = 3 + round % 10;
        let subset = rays.subset(&indices[..take]).unwrap();
        let searched = search_coloring(&subset).is_satisfiable();
        let enumerated = !enumerate_colorings(&subset).is_empty();
        assert_eq!(searched, enumerated, "round {round}");
    }
}

#[test]
fn trajectories_do_not_cross_each_other() {
    use qnl_core::bohm::{integrate_trajectory, PacketParams, Procedure, SpinorPacketState};
    let params = PacketParams {
        dt: 5e-3,
        ..PacketParams::default()
    };
    let packet = SpinorPacketState::new(params.sigma, params.speed, Procedure::Standard);
    let starts: Vec<f64> = (1..=30).map(|k| -3.0 + 6.0 * k as f64 / 31.0).collect();
    let finals: Vec<f64> = starts
        .iter()
        .map(|&z0| {
            let z0 = if z0 == 0.0 { 1e-6 } else { z0 };
            integrate_trajectory(&packet, z0, params.t_end, params.dt)
                .unwrap()
                .samples
                .last()
                .unwrap()
                .1
        })
        .collect();
    for pair in finals.windows(2) {
        assert!(pair[0] < pair[1], "equivariance: order preserved");
    }
}

#[test]
fn calibration_algebra_flips_reversed_outcomes() {
    use qnl_core::bohm::{contextuality_demo, PacketParams};
    let params = PacketParams {
        dt: 5e-3,
        ..PacketParams::default()
    };
    let mut rng = rng_from_seed(109);
    for _ in 0..40 {
        let z0 = 3.0 * qnl_core::sampling::standard_normal(&mut rng);
        let z0 = if z0 == 0.0 { 0.1 } else { z0 };
        let (standard, reversed) = contextuality_demo(z0, &params).unwrap();
        assert_eq!(standard, -reversed);
    }
}
