mod common;

use common::*;
use nqr_core::entanglement::{concurrence, entanglement_of_formation, measure_all, spin_flip, subsystem_entropy};
use nqr_core::nqr_model::{quadrupole_hamiltonian, rotation_operator, thermal_state, ModelParams, NqrModel, Orientation};
use nqr_core::spin_algebra::{
    hermitian_eig, matrix_exp_hermitian, partial_trace, spin_operators, ComplexMatrix, SpinSystem, Subsystem,
};
use nqr_core::QubitMapping;
use proptest::prelude::*;
use rand::Rng;
use std::f64::consts::{PI, TAU};

const S32: SpinSystem = SpinSystem::THREE_HALVES;

#[test]
fn eig_reconstruction_and_unitarity() {
    let mut rng = rng(1);
    for n in [4usize; 50].into_iter().chain([2, 3, 5, 8, 16]) {
        let m = random_hermitian(&mut rng, n);
        let eig = hermitian_eig(&m).unwrap();
        assert!(eig.reconstruct().max_abs_diff(&m) < 1e-11);
        assert!(eig.vectors.is_unitary(1e-11));
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }
    for _ in 0..100 {
        let m = random_hermitian(&mut rng, 4);
        let v = hermitian_eig(&m).unwrap().vectors;
        assert!((&v.adjoint() * &v).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-11);
    }
}

#[test]
fn exp_matches_taylor_oracle() {
    let mut rng = rng(2);
    for _ in 0..100 {
        let m = shrink_below_unit_norm(&random_hermitian(&mut rng, 4), 0.9);
        let fast = matrix_exp_hermitian(&m, 1.0).unwrap();
        assert!(fast.max_abs_diff(&taylor_exp(&m, 1.0)) < 1e-10);
        assert!(fast.is_hermitian(1e-12));
        assert!(hermitian_eig(&fast.hermitian_part()).unwrap().values[0] > 0.0);
    }
}

#[test]
fn exp_inverse_pair() {
    let mut rng = rng(3);
    for _ in 0..50 {
        let m = random_hermitian(&mut rng, 4);
        let s = rng.gen_range(-2.0..2.0);
        let prod = &matrix_exp_hermitian(&m, s).unwrap() * &matrix_exp_hermitian(&m, -s).unwrap();
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-10);
    }
}

#[test]
fn partial_trace_matches_brute_force() {
    let mut rng = rng(4);
    for _ in 0..100 {
        let rho = random_density(&mut rng, 4);
        let fast = partial_trace(&rho, Subsystem::A).unwrap();
        assert!(fast.max_abs_diff(&brute_partial_trace_a(&rho)) < 1e-14);
        assert!((fast.trace() - rho.trace()).norm() < 1e-12);
        assert!(partial_trace(&rho, Subsystem::B).unwrap().is_hermitian(1e-15));
    }
}

#[test]
fn commutators_for_several_spins() {
    let i = num_complex::Complex64::new(0.0, 1.0);
    for two_i in 1..=5 {
        let ops = spin_operators(SpinSystem::new(two_i));
        assert!(ops.ix.commutator(&ops.iy).max_abs_diff(&ops.iz.scale(i)) < 1e-12);
        assert!(ops.iy.commutator(&ops.iz).max_abs_diff(&ops.ix.scale(i)) < 1e-12);
        assert!(ops.iz.commutator(&ops.ix).max_abs_diff(&ops.iy.scale(i)) < 1e-12);
    }
}

#[test]
fn rotations_are_unitary() {
    let mut rng = rng(5);
    for two_i in [1, 3, 5] {
        for _ in 0..100 {
            let o = Orientation::new(rng.gen_range(0.0..=PI), rng.gen_range(0.0..TAU)).unwrap();
            assert!(rotation_operator(SpinSystem::new(two_i), o).is_unitary(1e-11));
        }
    }
}

#[test]
fn quadrupole_spectrum_is_orientation_independent() {
    let mut rng = rng(6);
    for _ in 0..100 {
        let eta = rng.gen_range(0.0..=1.0);
        let o = Orientation::new(rng.gen_range(0.0..=PI), rng.gen_range(0.0..TAU)).unwrap();
        let h = quadrupole_hamiltonian(S32, eta, o).unwrap();
        assert!(h.is_hermitian(1e-11));
        assert!(h.trace().norm() < 1e-11);
        let rotated = hermitian_eig(&h.hermitian_part()).unwrap().values;
        let paf = hermitian_eig(&quadrupole_hamiltonian(S32, eta, Orientation::POLAR).unwrap())
            .unwrap()
            .values;
        for (a, b) in rotated.iter().zip(&paf) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn thermal_states_are_valid() {
    let mut rng = rng(7);
    let model = NqrModel::new(S32);
    for _ in 0..200 {
        let p = ModelParams::from_angles(
            rng.gen_range(-20.0..=20.0),
            rng.gen_range(-20.0..=20.0),
            rng.gen_range(0.0..=1.0),
            rng.gen_range(0.0..=PI),
            rng.gen_range(0.0..TAU),
        )
        .unwrap();
        let rho = model.thermal_state(&p).unwrap();
        assert!(rho.is_hermitian(1e-12));
        assert!((rho.trace().re - 1.0).abs() < 1e-12 && rho.trace().im.abs() < 1e-12);
        let vals = hermitian_eig(&rho).unwrap().values;
        assert!(vals[0] >= -1e-12 && vals[3] <= 1.0 + 1e-12);
    }
}

#[test]
fn zero_beta_state_commutes_with_iz() {
    let iz = spin_operators(S32).iz;
    for alpha in [-3.0, 0.4, 7.0] {
        let p = ModelParams::from_angles(alpha, 0.0, 0.5, 1.1, 0.3).unwrap();
        let rho = thermal_state(S32, &p).unwrap();
        assert!(rho.commutator(&iz).max_abs() < 1e-12);
    }
    let p = ModelParams::from_angles(1e-14, 1e-14, 0.5, 1.1, 0.3).unwrap();
    let rho = thermal_state(S32, &p).unwrap();
    assert!(rho.max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25)) < 1e-12);
}

#[test]
fn concurrence_bounds_and_symmetries() {
    let mut rng = rng(8);
    let swap = QubitMapping::new([0, 2, 1, 3]).unwrap();
    for _ in 0..500 {
        let rho = random_density(&mut rng, 4);
        let c = concurrence(&rho, QubitMapping::IDENTITY).unwrap();
        assert!((0.0..=1.0).contains(&c.value));
        assert!(c.nu.windows(2).all(|w| w[0] >= w[1]) && c.nu[3] >= 0.0);
        let c_swapped = concurrence(&rho, swap).unwrap().value;
        assert!((c.value - c_swapped).abs() < 1e-10);
    }
}

#[test]
fn concurrence_local_unitary_invariance() {
    let mut rng = rng(9);
    for _ in 0..100 {
        // bias toward entangled states so the check is not trivially 0 = 0
        let psi = random_pure(&mut rng, 4);
        let noise = random_density(&mut rng, 4);
        let rho = &ComplexMatrix::projector(&psi).scale_real(0.8) + &noise.scale_real(0.2);
        let uv = random_unitary(&mut rng, 2).kron(&random_unitary(&mut rng, 2));
        let rotated = (&(&uv * &rho) * &uv.adjoint()).hermitian_part();
        let c0 = concurrence(&rho, QubitMapping::IDENTITY).unwrap().value;
        let c1 = concurrence(&rotated, QubitMapping::IDENTITY).unwrap().value;
        assert!((c0 - c1).abs() < 1e-9, "{c0} vs {c1}");
    }
}

#[test]
fn wootters_consistency_on_pure_states() {
    let mut rng = rng(10);
    for _ in 0..200 {
        let rho = ComplexMatrix::projector(&random_pure(&mut rng, 4));
        let r = measure_all(&rho, QubitMapping::IDENTITY).unwrap();
        let s_a = subsystem_entropy(&rho, Subsystem::A, QubitMapping::IDENTITY).unwrap();
        assert!((r.eof - s_a).abs() < 1e-9);
        assert!((r.entropy_a - r.entropy_b).abs() < 1e-10);
    }
}

#[test]
fn eof_is_monotone() {
    let mut prev = 0.0;
    for k in 0..=1000 {
        let e = entanglement_of_formation(k as f64 * 1e-3).unwrap();
        assert!(e >= prev && (0.0..=1.0).contains(&e));
        prev = e;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spin_flip_is_an_involution(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let rho = random_density(&mut rng, 4);
        let twice = spin_flip(&spin_flip(&rho).unwrap()).unwrap();
        prop_assert!(twice.max_abs_diff(&rho) < 1e-14);
    }

    #[test]
    fn eof_zero_iff_concurrence_zero(seed in any::<u64>(), mix in 0.0f64..1.0) {
        let mut rng = rng(seed);
        let pure = ComplexMatrix::projector(&random_pure(&mut rng, 4));
        let rho = &pure.scale_real(1.0 - mix) + &ComplexMatrix::identity(4).scale_real(mix / 4.0);
        let r = measure_all(&rho, QubitMapping::IDENTITY).unwrap();
        prop_assert_eq!(r.eof == 0.0, r.concurrence == 0.0);
        prop_assert!((r.concurrence - (r.nu[0] - r.nu[1] - r.nu[2] - r.nu[3]).max(0.0)).abs() < 1e-12);
    }

    #[test]
    fn thermal_trace_is_one(alpha in -20.0f64..20.0, beta in -20.0f64..20.0,
                            eta in 0.0f64..=1.0, theta in 0.0f64..=PI, phi in 0.0f64..TAU) {
        let p = ModelParams::from_angles(alpha, beta, eta, theta, phi).unwrap();
        let rho = thermal_state(S32, &p).unwrap();
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-12);
    }
}
