//! Parameter-space exploration: grid sweeps, temperature scans, the onset of
//! entanglement in beta, and the orientation that maximizes concurrence.
//!
//! Grid points are evaluated in parallel with rayon but always assembled in
//! lexicographic axis order, so results do not depend on scheduling.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entanglement::{measure_all, EntanglementReport, QubitMapping};
use crate::error::{Error, Result};
use crate::nqr_model::{ModelParams, NqrModel, Orientation, ZeemanSign};
use crate::spin_algebra::{SpinSystem, HERMITIAN_TOL};

/// Lower end of the beta bracket searched by [`Scanner::critical_beta`].
pub const CRITICAL_BETA_LO: f64 = 1e-3;
/// Upper end of the beta bracket searched by [`Scanner::critical_beta`].
pub const CRITICAL_BETA_HI: f64 = 50.0;
/// Refinement steps must beat the incumbent by more than this to be accepted.
const IMPROVE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Alpha,
    Beta,
    Theta,
    Phi,
    Eta,
    /// Dimensionless temperature 1/beta; needs a fixed alpha/beta ratio.
    Temperature,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Alpha => "alpha",
            Axis::Beta => "beta",
            Axis::Theta => "theta",
            Axis::Phi => "phi",
            Axis::Eta => "eta",
            Axis::Temperature => "temperature",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "alpha" => Axis::Alpha,
            "beta" => Axis::Beta,
            "theta" => Axis::Theta,
            "phi" => Axis::Phi,
            "eta" => Axis::Eta,
            "t" | "temp" | "temperature" => Axis::Temperature,
            other => return Err(Error::InvalidSpec(format!("unknown axis `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    /// Geometric; both ends must be positive.
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub axis: Axis,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl AxisSpec {
    pub fn linear(axis: Axis, min: f64, max: f64, count: usize) -> Self {
        Self {
            axis,
            min,
            max,
            count,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(axis: Axis, min: f64, max: f64, count: usize) -> Self {
        Self {
            spacing: Spacing::Log,
            ..Self::linear(axis, min, max, count)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let name = self.axis.name();
        if self.count < 2 {
            return Err(Error::InvalidSpec(format!("{name}: count {} < 2", self.count)));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(Error::InvalidSpec(format!(
                "{name}: need finite min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return Err(Error::InvalidSpec(format!("{name}: log spacing needs min > 0")));
        }
        Ok(())
    }

    /// Grid values, endpoints included exactly.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|k| {
                if k == 0 {
                    return self.min;
                }
                if k == n - 1 {
                    return self.max;
                }
                let f = k as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.min + f * (self.max - self.min),
                    Spacing::Log => (self.min.ln() + f * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

/// One- or two-axis grid over the model parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis1: AxisSpec,
    pub axis2: Option<AxisSpec>,
    /// Values of every parameter not on an axis.
    pub fixed: ModelParams,
    /// When set, alpha is always `ratio * beta`.
    pub ratio: Option<f64>,
}

impl SweepSpec {
    pub fn axes(&self) -> Vec<AxisSpec> {
        std::iter::once(self.axis1).chain(self.axis2).collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.fixed.validate()?;
        let axes = self.axes();
        for a in &axes {
            a.validate()?;
        }
        if axes.len() == 2 && axes[0].axis == axes[1].axis {
            return Err(Error::InvalidSpec(format!("axis `{}` given twice", axes[0].axis)));
        }
        let has = |x: Axis| axes.iter().any(|a| a.axis == x);
        match self.ratio {
            Some(r) => {
                if !(r.is_finite()) {
                    return Err(Error::InvalidSpec(format!("ratio {r} is not finite")));
                }
                if has(Axis::Alpha) {
                    return Err(Error::InvalidSpec(
                        "alpha cannot be swept when alpha/beta is fixed".into(),
                    ));
                }
                if has(Axis::Temperature) && has(Axis::Beta) {
                    return Err(Error::InvalidSpec("temperature and beta axes both set beta".into()));
                }
            }
            None => {
                if has(Axis::Temperature) {
                    return Err(Error::InvalidSpec("temperature axis needs a fixed alpha/beta ratio".into()));
                }
            }
        }
        if let Some(t) = axes.iter().find(|a| a.axis == Axis::Temperature) {
            if t.min <= 0.0 {
                return Err(Error::InvalidSpec("temperature must be positive".into()));
            }
        }
        Ok(())
    }

    /// Model parameters at the given axis coordinates.
    pub fn resolve(&self, coords: &[f64]) -> Result<ModelParams> {
        let mut p = self.fixed;
        let (mut theta, mut phi) = (p.orientation.theta(), p.orientation.phi());
        for (a, &v) in self.axes().iter().zip(coords) {
            match a.axis {
                Axis::Alpha => p.alpha = v,
                Axis::Beta => p.beta = v,
                Axis::Theta => theta = v,
                Axis::Phi => phi = v,
                Axis::Eta => p.eta = v,
                Axis::Temperature => p.beta = 1.0 / v,
            }
        }
        if let Some(r) = self.ratio {
            p.alpha = r * p.beta;
        }
        p.orientation = Orientation::new(theta, phi)?;
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// One value per axis, in axis order.
    pub coords: Vec<f64>,
    pub concurrence: f64,
    pub eof: f64,
    pub entropy_a: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_star: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_star: Option<f64>,
}

impl SweepRow {
    fn from_report(coords: Vec<f64>, r: &EntanglementReport) -> Self {
        Self {
            coords,
            concurrence: r.concurrence,
            eof: r.eof,
            entropy_a: r.entropy_a,
            theta_star: None,
            phi_star: None,
        }
    }
}

/// Conventions a result was computed under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMeta {
    pub qubit_mapping: [usize; 4],
    pub mapping_is_default: bool,
    pub zeeman_sign: ZeemanSign,
    pub eta_sign_convention: String,
    pub eof_x_convention: String,
    pub hermitian_tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

pub const ETA_SIGN_CONVENTION: &str = "(eta/2)(I+^2 + I-^2)";
pub const EOF_X_CONVENTION: &str = "x = (1 + sqrt(1 - C^2))/2";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    /// Axis names, matching `SweepRow::coords`.
    pub columns: Vec<String>,
    pub rows: Vec<SweepRow>,
    pub meta: SweepMeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub beta_star: f64,
    pub ratio: f64,
    /// Final bisection interval.
    pub bracket: (f64, f64),
    pub threshold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleOptimum {
    pub theta_star: f64,
    pub phi_star: f64,
    pub c_star: f64,
}

/// Evaluation context shared by all scan operations.
#[derive(Debug, Clone)]
pub struct Scanner {
    model: NqrModel,
    pub mapping: QubitMapping,
    pub zeeman_sign: ZeemanSign,
    /// Coarse theta grid size of the angle optimizer (phi gets 2(n-1) points).
    pub angle_grid: usize,
    /// Golden-section steps per refinement pass.
    pub refine_iters: usize,
    pub parallel: bool,
}

impl Default for Scanner {
    fn default() -> Self {
        Self::new(SpinSystem::THREE_HALVES)
    }
}

impl Scanner {
    pub fn new(spin: SpinSystem) -> Self {
        Self {
            model: NqrModel::new(spin),
            mapping: QubitMapping::IDENTITY,
            zeeman_sign: ZeemanSign::Paper,
            angle_grid: 181,
            refine_iters: 40,
            parallel: true,
        }
    }

    pub fn with_mapping(mut self, mapping: QubitMapping) -> Self {
        self.mapping = mapping;
        self
    }

    pub fn with_zeeman_sign(mut self, sign: ZeemanSign) -> Self {
        self.zeeman_sign = sign;
        self
    }

    pub fn model(&self) -> &NqrModel {
        &self.model
    }

    pub fn meta(&self, ratio: Option<f64>) -> SweepMeta {
        SweepMeta {
            qubit_mapping: self.mapping.permutation(),
            mapping_is_default: self.mapping.is_identity(),
            zeeman_sign: self.zeeman_sign,
            eta_sign_convention: ETA_SIGN_CONVENTION.into(),
            eof_x_convention: EOF_X_CONVENTION.into(),
            hermitian_tol: HERMITIAN_TOL,
            ratio,
            timestamp: None,
        }
    }

    /// Thermal state at `p` (with this scanner's Zeeman sign) and its entanglement.
    pub fn evaluate(&self, p: &ModelParams) -> Result<EntanglementReport> {
        let p = p.with_zeeman_sign(self.zeeman_sign);
        let rho = self.model.thermal_state(&p)?;
        measure_all(&rho, self.mapping)
    }

    pub fn concurrence_at(&self, p: &ModelParams) -> Result<f64> {
        let p = p.with_zeeman_sign(self.zeeman_sign);
        let rho = self.model.thermal_state(&p)?;
        Ok(crate::entanglement::concurrence(&rho, self.mapping)?.value)
    }

    fn map_ordered<T, U, F>(&self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send + Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        if self.parallel {
            items.par_iter().map(f).collect()
        } else {
            items.iter().map(f).collect()
        }
    }

    fn run_points(&self, columns: Vec<String>, points: Vec<(Vec<f64>, ModelParams)>, ratio: Option<f64>) -> Result<SweepResult> {
        let results = self.map_ordered(points, |(coords, p)| {
            self.evaluate(p)
                .map(|r| SweepRow::from_report(coords.clone(), &r))
                .map_err(|e| point_error(&columns, coords, e))
        });
        let rows = results.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(SweepResult {
            columns,
            rows,
            meta: self.meta(ratio),
        })
    }

    pub fn sweep(&self, spec: &SweepSpec) -> Result<SweepResult> {
        spec.validate()?;
        let axes = spec.axes();
        let columns: Vec<String> = axes.iter().map(|a| a.axis.name().to_owned()).collect();
        let grids: Vec<Vec<f64>> = axes.iter().map(AxisSpec::values).collect();
        let coords: Vec<Vec<f64>> = match grids.as_slice() {
            [g1] => g1.iter().map(|&x| vec![x]).collect(),
            [g1, g2] => g1.iter().flat_map(|&x| g2.iter().map(move |&y| vec![x, y])).collect(),
            _ => unreachable!("one or two axes"),
        };
        let points = coords
            .into_iter()
            .map(|c| {
                let p = spec.resolve(&c).map_err(|e| point_error(&columns, &c, e))?;
                Ok((c, p))
            })
            .collect::<Result<Vec<_>>>()?;
        self.run_points(columns, points, spec.ratio)
    }

    /// Concurrence against dimensionless temperature `1/beta` at fixed `alpha/beta`.
    ///
    /// Beta is spaced geometrically from `beta_min` to `beta_max`; rows come in
    /// order of increasing beta, i.e. decreasing temperature.
    pub fn temperature_scan(
        &self,
        ratio: f64,
        eta: f64,
        o: Orientation,
        beta_min: f64,
        beta_max: f64,
        count: usize,
    ) -> Result<SweepResult> {
        if !(ratio > 0.0 && ratio.is_finite()) {
            return Err(Error::InvalidSpec(format!("ratio {ratio} must be positive")));
        }
        let axis = AxisSpec::log(Axis::Beta, beta_min, beta_max, count);
        axis.validate()?;
        let columns = vec![Axis::Temperature.name().to_owned()];
        let points = axis
            .values()
            .into_iter()
            .map(|b| Ok((vec![1.0 / b], ModelParams::new(ratio * b, b, eta, o)?)))
            .collect::<Result<Vec<_>>>()?;
        self.run_points(columns, points, Some(ratio))
    }

    /// Smallest beta (with alpha = ratio * beta) at which concurrence exceeds `threshold`.
    pub fn critical_beta(&self, ratio: f64, eta: f64, o: Orientation, threshold: f64, tol: f64) -> Result<CriticalPoint> {
        if !(ratio > 0.0 && ratio.is_finite()) {
            return Err(Error::InvalidSpec(format!("ratio {ratio} must be positive")));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidSpec(format!("tol {tol} must be positive")));
        }
        if !(0.0..1.0).contains(&threshold) {
            return Err(Error::InvalidSpec(format!("threshold {threshold} outside [0, 1)")));
        }
        let c_at = |b: f64| -> Result<f64> { self.concurrence_at(&ModelParams::new(ratio * b, b, eta, o)?) };
        let (mut lo, mut hi) = (CRITICAL_BETA_LO, CRITICAL_BETA_HI);
        let c_hi = c_at(hi)?;
        if c_hi <= threshold {
            return Err(Error::NoTransition(format!(
                "C(beta={hi}) = {c_hi:e} <= threshold {threshold:e} at ratio {ratio}, eta {eta}, theta {}, phi {}",
                o.theta(),
                o.phi()
            )));
        }
        let c_lo = c_at(lo)?;
        if c_lo > threshold {
            return Err(Error::NoTransition(format!(
                "already entangled at beta={lo} (C = {c_lo:e})"
            )));
        }
        while hi - lo >= tol {
            let mid = 0.5 * (lo + hi);
            if c_at(mid)? > threshold {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(CriticalPoint {
            beta_star: 0.5 * (lo + hi),
            ratio,
            bracket: (lo, hi),
            threshold,
        })
    }

    /// Orientation maximizing the concurrence at fixed (alpha, beta, eta).
    ///
    /// Coarse grid over theta in [0, pi] and phi in [0, 2 pi), then alternating
    /// golden-section refinement in theta and phi within one grid cell. Ties keep
    /// the smaller angles.
    pub fn maximize_over_angles(&self, alpha: f64, beta: f64, eta: f64) -> Result<AngleOptimum> {
        let n = self.angle_grid;
        if n < 3 {
            return Err(Error::InvalidSpec(format!("angle grid {n} < 3")));
        }
        let step = PI / (n - 1) as f64;
        let c_at = |theta: f64, phi: f64| -> Result<f64> {
            let o = Orientation::with_wrapped_phi(theta.clamp(0.0, PI), phi)?;
            self.concurrence_at(&ModelParams::new(alpha, beta, eta, o)?)
        };

        let thetas: Vec<usize> = (0..n).collect();
        let row_best = self.map_ordered(thetas, |&j| -> Result<(f64, f64, f64)> {
            let theta = j as f64 * step;
            let mut best = (f64::NEG_INFINITY, theta, 0.0);
            for k in 0..2 * (n - 1) {
                let phi = k as f64 * step;
                let c = c_at(theta, phi)?;
                if c > best.0 + IMPROVE_TOL {
                    best = (c, theta, phi);
                }
            }
            Ok(best)
        });
        let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
        for r in row_best {
            let r = r?;
            if r.0 > best.0 + IMPROVE_TOL {
                best = r;
            }
        }
        let (mut c_best, mut theta, mut phi) = best;

        for pass in 0..3 {
            if pass % 2 == 0 {
                let (lo, hi) = ((theta - step).max(0.0), (theta + step).min(PI));
                let (t, c) = golden_max(lo, hi, self.refine_iters, |t| c_at(t, phi))?;
                if c > c_best + IMPROVE_TOL {
                    theta = t;
                    c_best = c;
                }
            } else {
                let (p, c) = golden_max(phi - step, phi + step, self.refine_iters, |p| c_at(theta, p))?;
                if c > c_best + IMPROVE_TOL {
                    phi = p.rem_euclid(TAU);
                    c_best = c;
                }
            }
        }
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(AngleOptimum {
            theta_star: theta,
            phi_star: phi,
            c_star: c_best,
        })
    }

    /// Angle-maximized concurrence over an (alpha, beta) grid.
    pub fn max_over_angles_surface(&self, alpha: AxisSpec, beta: AxisSpec, eta: f64) -> Result<SweepResult> {
        for (a, want) in [(&alpha, Axis::Alpha), (&beta, Axis::Beta)] {
            a.validate()?;
            if a.axis != want {
                return Err(Error::InvalidSpec(format!("expected a {want} axis, got {}", a.axis)));
            }
        }
        let columns = vec!["alpha".to_owned(), "beta".to_owned()];
        let cells: Vec<(f64, f64)> = alpha
            .values()
            .into_iter()
            .flat_map(|a| beta.values().into_iter().map(move |b| (a, b)))
            .collect();
        let results = self.map_ordered(cells, |&(a, b)| -> Result<SweepRow> {
            let coords = vec![a, b];
            let cell = || -> Result<SweepRow> {
                let opt = self.maximize_over_angles(a, b, eta)?;
                let o = Orientation::new(opt.theta_star, opt.phi_star)?;
                let report = self.evaluate(&ModelParams::new(a, b, eta, o)?)?;
                Ok(SweepRow {
                    theta_star: Some(opt.theta_star),
                    phi_star: Some(opt.phi_star),
                    concurrence: opt.c_star,
                    ..SweepRow::from_report(coords.clone(), &report)
                })
            };
            cell().map_err(|e| point_error(&columns, &coords, e))
        });
        let rows = results.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(SweepResult {
            columns,
            rows,
            meta: self.meta(None),
        })
    }
}

fn point_error(columns: &[String], coords: &[f64], e: Error) -> Error {
    let coords = columns
        .iter()
        .zip(coords)
        .map(|(c, v)| format!("{c}={v}"))
        .collect::<Vec<_>>()
        .join(", ");
    Error::PointFailed {
        coords,
        source: Box::new(e),
    }
}

/// Golden-section search for a maximum on [lo, hi]; returns the best point seen.
fn golden_max(lo: f64, hi: f64, iters: usize, mut f: impl FnMut(f64) -> Result<f64>) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..iters {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}
