use num_complex::Complex64;

use super::params::{check_eta, ModelParams, Orientation};
use crate::error::{Error, Result};
use crate::spin_algebra::{hermitian_eig, spin_operators, unitary_exp, ComplexMatrix, HermitianEig, SpinOperators, SpinSystem};

/// Largest allowed |alpha| + |beta| * ||H_Q|| in the thermal exponent.
pub const EXPONENT_GUARD: f64 = 700.0;

/// Operators of one spin with the pieces reused by every thermal-state evaluation.
#[derive(Debug, Clone)]
pub struct NqrModel {
    spin: SpinSystem,
    ops: SpinOperators,
    iy_eig: HermitianEig,
    /// 3 Iz^2 - I^2 in the principal-axes frame
    axial: ComplexMatrix,
    /// (I+^2 + I-^2) / 2
    rhombic: ComplexMatrix,
}

impl NqrModel {
    pub fn new(spin: SpinSystem) -> Self {
        let ops = spin_operators(spin);
        let iy_eig = hermitian_eig(&ops.iy).expect("Iy is Hermitian");
        let iz2 = &ops.iz * &ops.iz;
        let axial = &iz2.scale_real(3.0) - &ops.i_squared;
        let plus2 = &ops.i_plus * &ops.i_plus;
        let minus2 = &ops.i_minus * &ops.i_minus;
        let rhombic = (&plus2 + &minus2).scale_real(0.5);
        Self {
            spin,
            ops,
            iy_eig,
            axial,
            rhombic,
        }
    }

    pub fn spin(&self) -> SpinSystem {
        self.spin
    }

    pub fn operators(&self) -> &SpinOperators {
        &self.ops
    }

    /// exp(-i phi Iz) exp(-i theta Iy) exp(i phi Iz)
    pub fn rotation(&self, o: Orientation) -> ComplexMatrix {
        let m = self.spin.m_values();
        let phase = |sign: f64| -> ComplexMatrix {
            let d: Vec<Complex64> = m.iter().map(|&mk| Complex64::from_polar(1.0, sign * o.phi() * mk)).collect();
            ComplexMatrix::from_complex_diag(&d)
        };
        let ry = self.iy_eig.map(|l| Complex64::from_polar(1.0, -o.theta() * l));
        &(&phase(-1.0) * &ry) * &phase(1.0)
    }

    /// Quadrupole operator shape in the lab frame, without the eQq/4I(2I-1) prefactor.
    pub fn quadrupole(&self, eta: f64, o: Orientation) -> Result<ComplexMatrix> {
        check_eta(eta)?;
        let paf = &self.axial + &self.rhombic.scale_real(eta);
        let u = self.rotation(o);
        Ok(&(&u * &paf) * &u.adjoint())
    }

    /// H_M in units of gamma H0: -Iz.
    pub fn zeeman(&self) -> ComplexMatrix {
        -&self.ops.iz
    }

    /// The Hermitian matrix whose exponential is the unnormalized thermal state.
    pub fn thermal_exponent(&self, p: &ModelParams) -> Result<ComplexMatrix> {
        p.validate()?;
        let hq = self.quadrupole(p.eta, p.orientation)?;
        let hq_norm = hermitian_eig(&hq)?
            .values
            .iter()
            .fold(0.0f64, |acc, l| acc.max(l.abs()));
        let magnitude = p.alpha.abs() + p.beta.abs() * hq_norm;
        if magnitude > EXPONENT_GUARD {
            return Err(Error::Overflow {
                magnitude,
                limit: EXPONENT_GUARD,
            });
        }
        let zeeman_term = self.ops.iz.scale_real(p.zeeman_sign.factor() * p.alpha);
        let quad_term = hq.scale_real(-p.beta);
        Ok((&zeeman_term + &quad_term).hermitian_part())
    }

    /// Normalized Gibbs state `exp(X) / Tr exp(X)` with X from [`Self::thermal_exponent`].
    pub fn thermal_state(&self, p: &ModelParams) -> Result<ComplexMatrix> {
        let x = self.thermal_exponent(p)?;
        let eig = hermitian_eig(&x)?;
        // shift by the top eigenvalue; Z cancels the shift
        let top = eig.values.last().copied().unwrap_or(0.0);
        let weights: Vec<f64> = eig.values.iter().map(|l| (l - top).exp()).collect();
        let z: f64 = weights.iter().sum();
        let rho = eig.map(|l| Complex64::new((l - top).exp() / z, 0.0));
        Ok(rho.hermitian_part())
    }
}

pub fn rotation_operator(spin: SpinSystem, o: Orientation) -> ComplexMatrix {
    NqrModel::new(spin).rotation(o)
}

/// Reference route through the generic unitary exponential; used to cross-check [`NqrModel::rotation`].
pub fn rotation_operator_generic(spin: SpinSystem, o: Orientation) -> Result<ComplexMatrix> {
    let ops = spin_operators(spin);
    let a = unitary_exp(&ops.iz, o.phi())?;
    let b = unitary_exp(&ops.iy, o.theta())?;
    let c = unitary_exp(&ops.iz, -o.phi())?;
    Ok(&(&a * &b) * &c)
}

pub fn quadrupole_hamiltonian(spin: SpinSystem, eta: f64, o: Orientation) -> Result<ComplexMatrix> {
    NqrModel::new(spin).quadrupole(eta, o)
}

pub fn zeeman_hamiltonian(spin: SpinSystem) -> ComplexMatrix {
    NqrModel::new(spin).zeeman()
}

pub fn thermal_state(spin: SpinSystem, p: &ModelParams) -> Result<ComplexMatrix> {
    NqrModel::new(spin).thermal_state(p)
}
