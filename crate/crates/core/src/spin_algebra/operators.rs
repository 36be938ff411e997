use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, I};

/// A single spin of quantum number `two_i / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinSystem {
    two_i: u32,
}

impl SpinSystem {
    pub const HALF: SpinSystem = SpinSystem { two_i: 1 };
    pub const THREE_HALVES: SpinSystem = SpinSystem { two_i: 3 };

    /// Panics if `two_i == 0`.
    pub fn new(two_i: u32) -> Self {
        assert!(two_i >= 1, "spin must be at least 1/2");
        Self { two_i }
    }

    pub fn two_i(&self) -> u32 {
        self.two_i
    }

    pub fn spin(&self) -> f64 {
        self.two_i as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.two_i as usize + 1
    }

    /// Magnetic quantum numbers in basis order (descending).
    pub fn m_values(&self) -> Vec<f64> {
        let s = self.spin();
        (0..self.dim()).map(|k| s - k as f64).collect()
    }

    /// 4I(2I-1), the denominator of the quadrupole energy scale.
    pub fn quadrupole_denominator(&self) -> f64 {
        let s = self.spin();
        4.0 * s * (2.0 * s - 1.0)
    }
}

/// Angular momentum matrices in the |I, m> basis ordered by descending m, units of hbar.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub ix: ComplexMatrix,
    pub iy: ComplexMatrix,
    pub iz: ComplexMatrix,
    pub i_plus: ComplexMatrix,
    pub i_minus: ComplexMatrix,
    pub i_squared: ComplexMatrix,
}

pub fn spin_operators(spin: SpinSystem) -> SpinOperators {
    let s = spin.spin();
    let m = spin.m_values();
    let n = spin.dim();

    let iz = ComplexMatrix::from_diag(&m);
    let mut i_plus = ComplexMatrix::zeros(n);
    // <m+1| I+ |m> sits at (k-1, k) since index k holds m = I - k
    for k in 1..n {
        let mk = m[k];
        i_plus[(k - 1, k)] = Complex64::new((s * (s + 1.0) - mk * (mk + 1.0)).sqrt(), 0.0);
    }
    let i_minus = i_plus.adjoint();
    let ix = (&i_plus + &i_minus).scale_real(0.5);
    let iy = (&i_plus - &i_minus).scale(-I * 0.5);
    let i_squared = ComplexMatrix::identity(n).scale_real(s * (s + 1.0));

    SpinOperators {
        ix,
        iy,
        iz,
        i_plus,
        i_minus,
        i_squared,
    }
}
