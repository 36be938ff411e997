#![allow(dead_code)]

use nqr_core::spin_algebra::{unitary_exp, ComplexMatrix};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn gauss_c(rng: &mut StdRng) -> Complex64 {
    // Box-Muller; rand_distr is not worth a dependency here
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let t = std::f64::consts::TAU * u2;
    Complex64::new(r * t.cos(), r * t.sin())
}

pub fn random_matrix(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_vec((0..n * n).map(|_| gauss_c(rng)).collect()).unwrap()
}

pub fn random_hermitian(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    random_matrix(rng, n).hermitian_part()
}

/// Normalized A A^dagger.
pub fn random_density(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    let a = random_matrix(rng, n);
    let m = (&a * &a.adjoint()).hermitian_part();
    let tr = m.trace().re;
    m.scale_real(1.0 / tr)
}

pub fn random_pure(rng: &mut StdRng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n).map(|_| gauss_c(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn random_unitary(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    unitary_exp(&random_hermitian(rng, n), 1.0).unwrap()
}

/// exp(scale * m) by a 30-term Taylor series.
pub fn taylor_exp(m: &ComplexMatrix, scale: f64) -> ComplexMatrix {
    let n = m.dim();
    let sm = m.scale_real(scale);
    let mut term = ComplexMatrix::identity(n);
    let mut sum = term.clone();
    for k in 1..30 {
        term = (&term * &sm).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    sum
}

/// Spectral norm bound via the Frobenius norm.
pub fn shrink_below_unit_norm(m: &ComplexMatrix, target: f64) -> ComplexMatrix {
    let f = m.frobenius_norm();
    m.scale_real(target / f)
}

/// <ab| rho |a'b'> contracted over b by explicit basis kets e_a (x) e_b.
pub fn brute_partial_trace_a(rho: &ComplexMatrix) -> ComplexMatrix {
    let basis = |k: usize| -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); 2];
        v[k] = Complex64::new(1.0, 0.0);
        v
    };
    let ket = |a: usize, b: usize| -> Vec<Complex64> {
        let (ea, eb) = (basis(a), basis(b));
        ea.iter().flat_map(|x| eb.iter().map(move |y| x * y)).collect()
    };
    let mut out = ComplexMatrix::zeros(2);
    for a in 0..2 {
        for ap in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for b in 0..2 {
                let bra = ket(a, b);
                let col = rho.matvec(&ket(ap, b));
                acc += bra.iter().zip(&col).map(|(x, y)| x.conj() * y).sum::<Complex64>();
            }
            out[(a, ap)] = acc;
        }
    }
    out
}
