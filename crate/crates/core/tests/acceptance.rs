//! Acceptance criteria. Each criterion is its own test and prints one
//! `[PASS]`/`[FAIL]` line.

mod common;

use common::*;
use nqr_core::entanglement::{concurrence, entanglement_of_formation, measure_all, subsystem_entropy};
use nqr_core::nqr_model::{quadrupole_hamiltonian, temperature_for_beta, NqrModel, UnitConvention};
use nqr_core::scan::{Axis, AxisSpec, Scanner, SweepSpec};
use nqr_core::spin_algebra::{hermitian_eig, matrix_exp_hermitian, partial_trace, ComplexMatrix, SpinSystem, Subsystem};
use nqr_core::{ModelParams, Orientation, QubitMapping};
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::{PI, TAU};
use std::io::Write;

const S32: SpinSystem = SpinSystem::THREE_HALVES;

fn verdict(n: u32, name: &str, ok: bool, detail: String) {
    // straight to stderr so the line shows even when the harness captures output
    let line = format!("[{}] criterion {n:>2} {name}: {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

fn c_at(s: &Scanner, alpha: f64, beta: f64, eta: f64, theta: f64, phi: f64) -> f64 {
    let p = ModelParams::from_angles(alpha, beta, eta, theta, phi).unwrap();
    s.concurrence_at(&p).unwrap()
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

#[test]
fn criterion_01_zero_field_separability() {
    let s = Scanner::default();
    let mut worst = 0.0f64;
    for beta in [0.5, 2.0, 6.0, 8.0, 12.0] {
        for eta in [0.0, 0.14, 0.92] {
            for theta in [0.0, 0.3, 0.94, 1.5, PI] {
                for phi in [0.0, 1.0, PI] {
                    worst = worst.max(c_at(&s, 0.0, beta, eta, theta, phi));
                }
            }
        }
    }
    verdict(1, "zero-field separability", worst < 1e-10, format!("max C(alpha=0) = {worst:e} (< 1e-10)"));
}

#[test]
fn criterion_02_polar_axis_separability() {
    let s = Scanner::default();
    let mut worst = 0.0f64;
    for theta in [0.0, PI] {
        for alpha in [1.0, 5.0, 10.0] {
            for beta in [2.0, 6.0, 12.0] {
                for eta in [0.14, 0.92] {
                    worst = worst.max(c_at(&s, alpha, beta, eta, theta, 0.0));
                }
            }
        }
    }
    verdict(2, "polar-axis separability", worst < 1e-10, format!("max C(theta in {{0, pi}}) = {worst:e} (< 1e-10)"));
}

#[test]
fn criterion_03_optimal_orientation() {
    // Locate the ridge maximum on a coarse angle grid, then optimize there with default settings.
    let mut coarse = Scanner::default();
    coarse.angle_grid = 37;
    let surface = coarse
        .max_over_angles_surface(
            AxisSpec::linear(Axis::Alpha, 0.0, 10.0, 11),
            AxisSpec::linear(Axis::Beta, 0.0, 12.0, 13),
            0.14,
        )
        .unwrap();
    let best = surface
        .rows
        .iter()
        .fold(None::<&nqr_core::SweepRow>, |acc, r| match acc {
            Some(b) if b.concurrence >= r.concurrence => Some(b),
            _ => Some(r),
        })
        .unwrap();
    let (alpha, beta) = (best.coords[0], best.coords[1]);
    let opt = Scanner::default().maximize_over_angles(alpha, beta, 0.14).unwrap();
    let theta_ok = (opt.theta_star - 0.94).abs() <= 0.05;
    let phi_err = circular_distance(opt.phi_star, 0.0).min(circular_distance(opt.phi_star, PI));
    verdict(
        3,
        "optimal orientation",
        theta_ok && phi_err <= 0.05,
        format!(
            "ridge max at (alpha, beta) = ({alpha}, {beta}), C* = {:.6}; theta* = {:.4} (0.94 +- 0.05), phi* = {:.4} (0 or pi +- 0.05)",
            opt.c_star, opt.theta_star, opt.phi_star
        ),
    );
}

#[test]
fn criterion_04_critical_beta() {
    let s = Scanner::default();
    let cp = s
        .critical_beta(1.0, 0.14, Orientation::new(0.94, 0.0).unwrap(), 1e-6, 1e-3)
        .unwrap();
    verdict(
        4,
        "critical beta",
        (cp.beta_star - 0.60).abs() <= 0.05,
        format!("beta* = {:.5} (expected 0.60 +- 0.05), bracket {:?}", cp.beta_star, cp.bracket),
    );
}

#[test]
fn criterion_05_temperature_conversion() {
    let full = temperature_for_beta(62.8, S32, 0.6, UnitConvention::Full).unwrap() * 1e3;
    let reduced = temperature_for_beta(62.8, S32, 0.6, UnitConvention::Reduced).unwrap() * 1e3;
    // arithmetic oracle: h nu / (n beta k_B)
    let oracle = |n: f64| 6.626_070_15e-34 * 62.8e6 / (n * 0.6 * 1.380_649e-23) * 1e3;
    let ok = (full - 5.0).abs() <= 0.02 * 5.0
        && (reduced - 0.419).abs() <= 0.02 * 0.419
        && (full - oracle(1.0)).abs() < 1e-12
        && (reduced - oracle(12.0)).abs() < 1e-12;
    verdict(
        5,
        "temperature conversion",
        ok,
        format!("full T = {full:.4} mK (5.0 +- 2%), reduced T = {reduced:.4} mK (0.419 +- 2%)"),
    );
}

#[test]
fn criterion_06_field_non_monotonicity() {
    let s = Scanner::default();
    let mut details = Vec::new();
    let mut ok = true;
    for beta in [2.0, 6.0, 8.0, 12.0] {
        let spec = SweepSpec {
            axis1: AxisSpec::linear(Axis::Alpha, 0.0, 10.0 * beta, 201),
            axis2: None,
            fixed: ModelParams::from_angles(0.0, beta, 0.14, 0.94, 0.0).unwrap(),
            ratio: None,
        };
        let c: Vec<f64> = s.sweep(&spec).unwrap().rows.iter().map(|r| r.concurrence).collect();
        let (imax, cmax) = c
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |b, (i, x)| if x > b.1 { (i, x) } else { b });
        let last = *c.last().unwrap();
        let this_ok = c[0] < 1e-10 && imax > 0 && imax < c.len() - 1 && cmax - last >= 0.1 * cmax;
        ok &= this_ok;
        details.push(format!(
            "beta={beta}: peak {cmax:.4} at alpha={:.2}, end {last:.4}",
            10.0 * beta * imax as f64 / 200.0
        ));
    }
    verdict(6, "field non-monotonicity", ok, details.join("; "));
}

#[test]
fn criterion_07_temperature_plateau() {
    let s = Scanner::default();
    let o = Orientation::new(0.94, 0.0).unwrap();
    let mut details = Vec::new();
    let mut ok = true;
    for ratio in [0.5, 1.0, 2.0] {
        // beta from 1e-2 to 1e2, 20 points per decade; rows go from hot to cold
        let scan = s.temperature_scan(ratio, 0.14, o, 1e-2, 1e2, 81).unwrap();
        let c: Vec<f64> = scan.rows.iter().map(|r| r.concurrence).collect();
        let worst_drop = c.windows(2).map(|w| w[0] - w[1]).fold(f64::NEG_INFINITY, f64::max);
        let at_10 = c[60];
        let at_100 = c[80];
        let rel = (at_100 - at_10).abs() / at_100;
        let this_ok = worst_drop <= 1e-9 && rel < 0.01 && c[0] < 1e-10;
        ok &= this_ok;
        details.push(format!(
            "ratio={ratio}: max step drop {worst_drop:.1e}, plateau {at_100:.6}, last-decade change {:.3}%",
            rel * 100.0
        ));
    }
    verdict(7, "temperature monotonicity and plateau", ok, details.join("; "));
}

#[test]
fn criterion_08_wootters_consistency() {
    let mut rng = rng(808);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let rho = ComplexMatrix::projector(&random_pure(&mut rng, 4));
        let c = concurrence(&rho, QubitMapping::IDENTITY).unwrap().value;
        let s = subsystem_entropy(&rho, Subsystem::A, QubitMapping::IDENTITY).unwrap();
        worst = worst.max((entanglement_of_formation(c).unwrap() - s).abs());
    }
    let psi = [Complex64::new(0.6, 0.0), 0.0.into(), 0.0.into(), Complex64::new(0.8, 0.0)];
    let r = measure_all(&ComplexMatrix::projector(&psi), QubitMapping::IDENTITY).unwrap();
    let ok = worst < 1e-9 && (r.concurrence - 0.96).abs() < 1e-12 && (r.eof - 0.9427).abs() < 5e-5;
    verdict(
        8,
        "Wootters consistency",
        ok,
        format!(
            "max |EoF - S_A| over 200 pure states = {worst:.1e}; C = {:.12}, EoF = {:.6}",
            r.concurrence, r.eof
        ),
    );
}

#[test]
fn criterion_09_state_validity() {
    let mut rng = rng(909);
    let model = NqrModel::new(S32);
    let (mut herm, mut trace, mut min_eig) = (0.0f64, 0.0f64, f64::INFINITY);
    for _ in 0..500 {
        let p = ModelParams::from_angles(
            rng.gen_range(-20.0..=20.0),
            rng.gen_range(-20.0..=20.0),
            rng.gen_range(0.0..=1.0),
            rng.gen_range(0.0..=PI),
            rng.gen_range(0.0..TAU),
        )
        .unwrap();
        let rho = model.thermal_state(&p).unwrap();
        herm = herm.max(rho.hermiticity_defect());
        trace = trace.max((rho.trace() - Complex64::new(1.0, 0.0)).norm());
        min_eig = min_eig.min(hermitian_eig(&rho).unwrap().values[0]);
    }
    let (mut q_trace, mut q_spec) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let eta = rng.gen_range(0.0..=1.0);
        let o = Orientation::new(rng.gen_range(0.0..=PI), rng.gen_range(0.0..TAU)).unwrap();
        let h = quadrupole_hamiltonian(S32, eta, o).unwrap();
        q_trace = q_trace.max(h.trace().norm());
        let a = hermitian_eig(&h.hermitian_part()).unwrap().values;
        let b = hermitian_eig(&quadrupole_hamiltonian(S32, eta, Orientation::POLAR).unwrap())
            .unwrap()
            .values;
        q_spec = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(q_spec, f64::max);
    }
    let ok = herm <= 1e-12 && trace <= 1e-12 && min_eig >= -1e-12 && q_trace <= 1e-10 && q_spec <= 1e-10;
    verdict(
        9,
        "state validity",
        ok,
        format!(
            "hermiticity {herm:.1e}, trace {trace:.1e}, min eig {min_eig:.1e}; H_Q trace {q_trace:.1e}, spectrum drift {q_spec:.1e}"
        ),
    );
}

#[test]
fn criterion_10_oracle_equivalence() {
    let mut rng = rng(1010);
    let mut exp_err = 0.0f64;
    for _ in 0..100 {
        let m = shrink_below_unit_norm(&random_hermitian(&mut rng, 4), 0.95);
        exp_err = exp_err.max(matrix_exp_hermitian(&m, 1.0).unwrap().max_abs_diff(&taylor_exp(&m, 1.0)));
    }
    let mut pt_err = 0.0f64;
    for _ in 0..100 {
        let rho = random_density(&mut rng, 4);
        pt_err = pt_err.max(partial_trace(&rho, Subsystem::A).unwrap().max_abs_diff(&brute_partial_trace_a(&rho)));
    }
    let mut lu_err = 0.0f64;
    for _ in 0..100 {
        let psi = random_pure(&mut rng, 4);
        let rho = &ComplexMatrix::projector(&psi).scale_real(0.8) + &random_density(&mut rng, 4).scale_real(0.2);
        let uv = random_unitary(&mut rng, 2).kron(&random_unitary(&mut rng, 2));
        let moved = (&(&uv * &rho) * &uv.adjoint()).hermitian_part();
        let c0 = concurrence(&rho, QubitMapping::IDENTITY).unwrap().value;
        let c1 = concurrence(&moved, QubitMapping::IDENTITY).unwrap().value;
        lu_err = lu_err.max((c0 - c1).abs());
    }
    let ok = exp_err < 1e-10 && pt_err < 1e-14 && lu_err < 1e-9;
    verdict(
        10,
        "oracle equivalence",
        ok,
        format!("exp vs Taylor {exp_err:.1e}; partial trace vs brute force {pt_err:.1e}; local-unitary drift {lu_err:.1e}"),
    );
}
