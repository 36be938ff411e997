//! Two-qubit entanglement measures for a spin-3/2 density matrix.
//!
//! The four spin levels |3/2>, |1/2>, |-1/2>, |-3/2> are identified with the
//! two-qubit basis |00>, |01>, |10>, |11> through a [`QubitMapping`]; the
//! identity permutation is the default. Row index `2a + b` carries qubit A in
//! the high bit.
//!
//! Concurrence follows Wootters: with `rho~ = G conj(rho) G`, the numbers
//! `nu_i` are the square roots of the eigenvalues of `rho rho~`, and
//! `C = max(0, nu_1 - nu_2 - nu_3 - nu_4)`. The `nu_i` are evaluated as the
//! singular values of `sqrt(rho) G conj(sqrt(rho))`, which are the same
//! numbers but do not lose half the significant digits when some `nu_i` are
//! tiny.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spin_algebra::{hermitian_eig, partial_trace_unchecked, singular_values, ComplexMatrix, Subsystem, HERMITIAN_TOL};

/// Tolerance for trace and positivity checks on input states.
pub const DENSITY_TOL: f64 = 1e-10;
/// Eigenvalues of rho * rho~ below minus this are an error.
pub const SPECTRUM_ERROR: f64 = 1e-8;

/// Identification of spin levels (descending m) with two-qubit basis states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 4]", into = "[usize; 4]")]
pub struct QubitMapping([usize; 4]);

impl QubitMapping {
    pub const IDENTITY: QubitMapping = QubitMapping([0, 1, 2, 3]);

    /// `perm[s]` is the two-qubit index assigned to spin level `s`.
    pub fn new(perm: [usize; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &p in &perm {
            if p >= 4 || seen[p] {
                return Err(Error::InvalidMapping(perm.to_vec()));
            }
            seen[p] = true;
        }
        Ok(Self(perm))
    }

    pub fn from_slice(perm: &[usize]) -> Result<Self> {
        let arr: [usize; 4] = perm.try_into().map_err(|_| Error::InvalidMapping(perm.to_vec()))?;
        Self::new(arr)
    }

    pub fn permutation(&self) -> [usize; 4] {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Expresses a spin-basis operator in the two-qubit basis.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        if self.is_identity() {
            rho.clone()
        } else {
            rho.permute_basis(&self.0)
        }
    }
}

impl Default for QubitMapping {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl TryFrom<[usize; 4]> for QubitMapping {
    type Error = Error;
    fn try_from(p: [usize; 4]) -> Result<Self> {
        Self::new(p)
    }
}

impl From<QubitMapping> for [usize; 4] {
    fn from(m: QubitMapping) -> Self {
        m.0
    }
}

/// The anti-diagonal spin-flip matrix G = sigma_y (x) sigma_y.
pub fn spin_flip_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ])
    .expect("4x4")
}

fn check_dim4(rho: &ComplexMatrix) -> Result<()> {
    if rho.dim() == 4 {
        Ok(())
    } else {
        Err(Error::BadDimension {
            expected: 4,
            found: rho.dim(),
        })
    }
}

/// G conj(rho) G
pub fn spin_flip(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dim4(rho)?;
    Ok(flip_unchecked(rho))
}

fn flip_unchecked(rho: &ComplexMatrix) -> ComplexMatrix {
    // G is a signed anti-diagonal permutation: (G X G)_{ij} = g_i g_j X_{3-i, 3-j}
    const SIGNS: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    let mut out = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] = rho[(3 - i, 3 - j)].conj() * (SIGNS[i] * SIGNS[j]);
        }
    }
    out
}

/// Checks Hermiticity, unit trace and positivity; returns the spectral decomposition.
fn validated_eig(rho: &ComplexMatrix) -> Result<crate::spin_algebra::HermitianEig> {
    check_dim4(rho)?;
    let dev = rho.hermiticity_defect();
    if dev > HERMITIAN_TOL || !dev.is_finite() {
        return Err(Error::InvalidDensityMatrix(format!("not Hermitian (deviation {dev:e})")));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
        return Err(Error::InvalidDensityMatrix(format!("trace {tr} is not 1")));
    }
    let eig = hermitian_eig(rho)?;
    if eig.values[0] < -DENSITY_TOL {
        return Err(Error::InvalidDensityMatrix(format!(
            "negative eigenvalue {:e}",
            eig.values[0]
        )));
    }
    Ok(eig)
}

/// Concurrence together with the descending `nu_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Concurrence {
    pub value: f64,
    pub nu: [f64; 4],
}

pub fn concurrence(rho: &ComplexMatrix, mapping: QubitMapping) -> Result<Concurrence> {
    check_dim4(rho)?;
    let rho = mapping.apply(rho);
    let eig = validated_eig(&rho)?;
    let sqrt_rho = eig.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));

    // Spectrum of R = rho rho~ via the Hermitian similar matrix sqrt(rho) rho~ sqrt(rho).
    let flipped = flip_unchecked(&rho);
    let similar = (&(&sqrt_rho * &flipped) * &sqrt_rho).hermitian_part();
    let r_spectrum = hermitian_eig(&similar)?.values;
    if let Some(&worst) = r_spectrum.first() {
        if worst < -SPECTRUM_ERROR {
            return Err(Error::NonphysicalSpectrum { value: worst });
        }
    }

    let g = spin_flip_matrix();
    let y = &(&sqrt_rho * &g) * &sqrt_rho.conj();
    let sv = singular_values(&y);
    let nu = [sv[0], sv[1], sv[2], sv[3]];
    let value = (nu[0] - nu[1] - nu[2] - nu[3]).clamp(0.0, 1.0);
    Ok(Concurrence { value, nu })
}

/// Binary entropy in bits with 0 log 0 = 0.
fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Entanglement of formation from concurrence, x = (1 + sqrt(1 - C^2)) / 2.
pub fn entanglement_of_formation(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::OutOfRange {
            value: c,
            range: "[0, 1]",
        });
    }
    let x = 0.5 * (1.0 + (1.0 - c * c).sqrt());
    Ok(binary_entropy(x).clamp(0.0, 1.0))
}

fn von_neumann_bits(m: &ComplexMatrix) -> Result<f64> {
    let vals = hermitian_eig(&m.hermitian_part())?.values;
    let s: f64 = vals.iter().map(|&l| if l <= 0.0 { 0.0 } else { -l * l.log2() }).sum();
    Ok(s.clamp(0.0, 1.0))
}

/// von Neumann entropy (bits) of the reduced state of one qubit.
pub fn subsystem_entropy(rho: &ComplexMatrix, keep: Subsystem, mapping: QubitMapping) -> Result<f64> {
    check_dim4(rho)?;
    let rho = mapping.apply(rho);
    validated_eig(&rho)?;
    von_neumann_bits(&partial_trace_unchecked(&rho, keep))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub concurrence: f64,
    pub eof: f64,
    pub entropy_a: f64,
    pub entropy_b: f64,
    /// Square roots of the eigenvalues of rho * rho~, descending.
    pub nu: [f64; 4],
}

pub fn measure_all(rho: &ComplexMatrix, mapping: QubitMapping) -> Result<EntanglementReport> {
    let c = concurrence(rho, mapping)?;
    let mapped = mapping.apply(rho);
    Ok(EntanglementReport {
        concurrence: c.value,
        eof: entanglement_of_formation(c.value)?,
        entropy_a: von_neumann_bits(&partial_trace_unchecked(&mapped, Subsystem::A))?,
        entropy_b: von_neumann_bits(&partial_trace_unchecked(&mapped, Subsystem::B))?,
        nu: c.nu,
    })
}
