use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// One of the two effective qubits. Row index of a 4x4 operator is `2a + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

const TRACE_TOL: f64 = 1e-10;

/// Reduced 2x2 state of the kept qubit.
pub fn partial_trace(rho: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(Error::BadDimension {
            expected: 4,
            found: rho.dim(),
        });
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::InvalidDensityMatrix(format!("trace {tr} is not 1")));
    }
    Ok(partial_trace_unchecked(rho, keep))
}

pub(crate) fn partial_trace_unchecked(rho: &ComplexMatrix, keep: Subsystem) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(2);
    for x in 0..2 {
        for y in 0..2 {
            out[(x, y)] = (0..2)
                .map(|t| match keep {
                    Subsystem::A => rho[(2 * x + t, 2 * y + t)],
                    Subsystem::B => rho[(2 * t + x, 2 * t + y)],
                })
                .sum();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_algebra::matrix::{ONE, ZERO};
    use num_complex::Complex64;

    #[test]
    fn product_state() {
        let rho = ComplexMatrix::projector(&[ONE, ZERO, ZERO, ZERO]);
        let a = partial_trace(&rho, Subsystem::A).unwrap();
        assert_eq!(a, ComplexMatrix::from_diag(&[1.0, 0.0]));
    }

    #[test]
    fn bell_state_reduces_to_mixed() {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let rho = ComplexMatrix::projector(&[h, ZERO, ZERO, h]);
        for keep in [Subsystem::A, Subsystem::B] {
            let r = partial_trace(&rho, keep).unwrap();
            assert!(r.max_abs_diff(&ComplexMatrix::from_diag(&[0.5, 0.5])) < 1e-15);
        }
    }

    #[test]
    fn distinguishes_subsystems() {
        // |01><01|: A in |0>, B in |1>
        let rho = ComplexMatrix::projector(&[ZERO, ONE, ZERO, ZERO]);
        assert_eq!(
            partial_trace(&rho, Subsystem::A).unwrap(),
            ComplexMatrix::from_diag(&[1.0, 0.0])
        );
        assert_eq!(
            partial_trace(&rho, Subsystem::B).unwrap(),
            ComplexMatrix::from_diag(&[0.0, 1.0])
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            partial_trace(&ComplexMatrix::identity(2), Subsystem::A),
            Err(Error::BadDimension { .. })
        ));
        assert!(matches!(
            partial_trace(&ComplexMatrix::identity(4), Subsystem::A),
            Err(Error::InvalidDensityMatrix(_))
        ));
    }
}
