//! Batch front end for `nqr-core`: single points, sweeps, critical points,
//! orientation optimization and unit conversion, written as CSV or JSON.

pub mod args;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use nqr_core::nqr_model::{find_preset, load_presets_file, merged_presets, temperature_unit_kelvin, BOLTZMANN, PLANCK};
use nqr_core::scan::{Axis, AxisSpec, Spacing, SweepMeta};
use nqr_core::{
    builtin_presets, physical_to_dimensionless, temperature_for_beta, AngleOptimum, CriticalPoint, EntanglementReport,
    Error, MaterialPreset, ModelParams, Orientation, PhysicalConditions, QubitMapping, Scanner, SpinSystem,
    SweepResult, SweepRow, SweepSpec, UnitConvention,
};
use serde::{Deserialize, Serialize};

use args::{Cli, Command, Common, Format};
use output::{render_csv, render_json, Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable naming an extra preset file.
pub const PRESETS_ENV: &str = "NQR_PRESETS";

const SPIN: SpinSystem = SpinSystem::THREE_HALVES;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Compute(_) => EXIT_FAILURE,
        }
    }
}

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

/// Metadata attached to every document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(flatten)]
    pub conventions: SweepMeta,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ModelParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_convention: Option<UnitConvention>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDoc {
    pub rho_re: Vec<Vec<f64>>,
    pub rho_im: Vec<Vec<f64>>,
    pub meta: Meta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureDoc {
    #[serde(flatten)]
    pub report: EntanglementReport,
    pub meta: Meta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDoc {
    pub columns: Vec<String>,
    pub rows: Vec<SweepRow>,
    pub meta: Meta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalDoc {
    #[serde(flatten)]
    pub point: CriticalPoint,
    /// Critical temperature when a material and unit convention are given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperature_k: Option<f64>,
    pub meta: Meta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeDoc {
    #[serde(flatten)]
    pub optimum: AngleOptimum,
    pub meta: Meta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvertDoc {
    pub material: String,
    pub eqq_zz_mhz: f64,
    pub unit_convention: UnitConvention,
    /// Kelvin per unit of 1/beta.
    pub temperature_unit_k: f64,
    pub temp_k: f64,
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_mhz_per_t: Option<f64>,
    pub meta: Meta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresetsDoc {
    pub presets: Vec<MaterialPreset>,
    pub meta: Meta,
}

/// Parse `argv` (program name first), run the command and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], with explicit sinks for results (when no `--output` is given) and diagnostics.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => match write_output(cli.common.output.as_deref(), &text, out) {
            Ok(()) => EXIT_OK,
            Err(msg) => {
                let _ = writeln!(err, "nqr: {msg}");
                EXIT_FAILURE
            }
        },
        Err(f) => {
            match &f {
                Failure::Usage(msg) => {
                    let _ = writeln!(err, "nqr: error: {msg}\n\nFor more information, try '--help'.");
                }
                Failure::Compute(msg) => {
                    let _ = writeln!(err, "nqr: {msg}");
                }
            }
            f.exit_code()
        }
    }
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display()))
        }
        _ => out
            .write_all(text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| format!("cannot write standard output: {e}")),
    }
}

fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Everything derived from the shared flags before any computation.
struct Context<'a> {
    common: &'a Common,
    scanner: Scanner,
    presets: Vec<MaterialPreset>,
}

impl<'a> Context<'a> {
    fn new(common: &'a Common) -> Result<Self, Failure> {
        let mapping = match &common.qubit_mapping {
            None => QubitMapping::IDENTITY,
            Some(s) => {
                let perm: Vec<usize> = s
                    .split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| usage(format!("--qubit-mapping `{s}`: expected four comma-separated indices")))?;
                QubitMapping::from_slice(&perm).map_err(usage)?
            }
        };
        let presets = load_presets()?;
        if !(common.threshold.is_finite() && common.threshold >= 0.0) {
            return Err(usage(format!("--threshold {} must be a non-negative number", common.threshold)));
        }
        if !(common.tol.is_finite() && common.tol > 0.0) {
            return Err(usage(format!("--tol {} must be positive", common.tol)));
        }
        if let Some(t) = common.temp_k {
            if !(t > 0.0) {
                return Err(usage(Error::NonpositiveTemperature(t)));
            }
        }
        Ok(Self {
            common,
            scanner: Scanner::default()
                .with_mapping(mapping)
                .with_zeeman_sign(common.zeeman_sign.into()),
            presets,
        })
    }

    fn meta(&self, command: &str, ratio: Option<f64>) -> Meta {
        let mut conventions = self.scanner.meta(ratio);
        conventions.timestamp = Some(timestamp());
        Meta {
            conventions,
            command: command.to_owned(),
            params: None,
            unit_convention: self.common.unit_convention.map(Into::into),
            material: self.common.material.clone(),
        }
    }

    fn angle(&self, x: f64) -> f64 {
        if self.common.degrees {
            x * std::f64::consts::PI / 180.0
        } else {
            x
        }
    }

    fn material(&self) -> Result<Option<&MaterialPreset>, Failure> {
        match &self.common.material {
            None => Ok(None),
            Some(label) => find_preset(&self.presets, label).map(Some).map_err(usage),
        }
    }

    fn require_material(&self, why: &str) -> Result<&MaterialPreset, Failure> {
        self.material()?.ok_or_else(|| usage(format!("--material is required {why}")))
    }

    fn require_convention(&self, why: &str) -> Result<UnitConvention, Failure> {
        self.common
            .unit_convention
            .map(Into::into)
            .ok_or_else(|| usage(format!("--unit-convention full|reduced is required {why}")))
    }

    fn orientation(&self) -> Result<Orientation, Failure> {
        let theta = self.common.theta.ok_or_else(|| usage("--theta is required"))?;
        let phi = self.common.phi.unwrap_or(0.0);
        orientation(self.angle(theta), self.angle(phi))
    }

    fn eta(&self) -> Result<f64, Failure> {
        let eta = match (self.common.eta, self.material()?) {
            (Some(eta), _) => eta,
            (None, Some(m)) => m.eta,
            (None, None) => return Err(usage("--eta (or --material) is required")),
        };
        if !(0.0..=1.0).contains(&eta) {
            return Err(usage(Error::EtaOutOfRange(eta)));
        }
        Ok(eta)
    }

    fn ratio(&self) -> Result<f64, Failure> {
        let r = self.common.ratio.ok_or_else(|| usage("--ratio is required"))?;
        if !(r > 0.0 && r.is_finite()) {
            return Err(usage(format!("--ratio {r} must be positive")));
        }
        Ok(r)
    }

    /// Parameters of a single point, either dimensionless or from laboratory values.
    fn point(&self) -> Result<ModelParams, Failure> {
        let c = self.common;
        let o = self.orientation()?;
        let eta = self.eta()?;
        let p = if c.temp_k.is_some() || c.field_t.is_some() {
            if c.alpha.is_some() || c.beta.is_some() {
                return Err(usage("give either --alpha/--beta or laboratory values (--temp-k, --field-t), not both"));
            }
            let material = self.require_material("with laboratory values")?;
            let conv = self.require_convention("with laboratory values")?;
            let temp = c.temp_k.ok_or_else(|| usage("--temp-k is required with --field-t"))?;
            let field = c.field_t.unwrap_or(0.0);
            let gamma = match c.gamma_mhz_per_t {
                Some(g) => g,
                None if field == 0.0 => 0.0,
                None => return Err(usage("--gamma-mhz-per-t is required with --field-t")),
            };
            let cond = PhysicalConditions {
                gamma_mhz_per_tesla: gamma,
                field_tesla: field,
                temp_kelvin: temp,
                orientation: o,
            };
            let mut p = physical_to_dimensionless(material, SPIN, &cond, conv).map_err(usage)?;
            p.eta = eta;
            p
        } else {
            let alpha = c.alpha.ok_or_else(|| usage("--alpha is required"))?;
            let beta = c.beta.ok_or_else(|| usage("--beta is required"))?;
            ModelParams::new(alpha, beta, eta, o).map_err(usage)?
        };
        Ok(p.with_zeeman_sign(self.scanner.zeeman_sign))
    }

    fn grid(&self) -> Result<Vec<AxisSpec>, Failure> {
        let grids = &self.common.grid;
        if grids.is_empty() || grids.len() > 2 {
            return Err(usage(format!("--grid must be given once or twice, got {}", grids.len())));
        }
        grids.iter().map(|g| self.parse_grid(g)).collect()
    }

    fn parse_grid(&self, text: &str) -> Result<AxisSpec, Failure> {
        let bad = |why: &str| usage(format!("--grid `{text}`: {why} (expected AXIS:MIN:MAX:COUNT[:log])"));
        let parts: Vec<&str> = text.split(':').collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(bad("wrong number of fields"));
        }
        let axis: Axis = parts[0].parse().map_err(|_| bad("unknown axis"))?;
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("bounds must be numbers"));
        let (mut min, mut max) = (num(parts[1])?, num(parts[2])?);
        let count: usize = parts[3].trim().parse().map_err(|_| bad("count must be a non-negative integer"))?;
        if matches!(axis, Axis::Theta | Axis::Phi) {
            min = self.angle(min);
            max = self.angle(max);
        }
        let spacing = match parts.get(4).map(|s| s.trim()) {
            None | Some("lin") | Some("linear") => Spacing::Linear,
            Some("log") => Spacing::Log,
            Some(_) => return Err(bad("spacing must be lin or log")),
        };
        let spec = AxisSpec {
            axis,
            min,
            max,
            count,
            spacing,
        };
        spec.validate().map_err(|e| usage(format!("--grid `{text}`: {e}")))?;
        let in_range = |lo: f64, hi: f64| (lo..=hi).contains(&min) && (lo..=hi).contains(&max);
        match axis {
            Axis::Eta if !in_range(0.0, 1.0) => Err(bad("eta must lie in [0, 1]")),
            Axis::Theta if !in_range(0.0, std::f64::consts::PI) => Err(bad("theta must lie in [0, pi]")),
            Axis::Temperature if !(min > 0.0 && max > 0.0) => Err(bad("temperature must be positive")),
            _ => Ok(spec),
        }
    }
}

fn orientation(theta: f64, phi: f64) -> Result<Orientation, Failure> {
    if !phi.is_finite() {
        return Err(usage(Error::NonFinite { name: "phi", value: phi }));
    }
    Orientation::with_wrapped_phi(theta, phi).map_err(usage)
}

fn load_presets() -> Result<Vec<MaterialPreset>, Failure> {
    match std::env::var_os(PRESETS_ENV) {
        Some(path) if !path.is_empty() => {
            let extra = load_presets_file(Path::new(&path))
                .map_err(|e| usage(format!("{PRESETS_ENV}={}: {e}", Path::new(&path).display())))?;
            Ok(merged_presets(extra))
        }
        _ => Ok(builtin_presets()),
    }
}

fn compute<'a>(op: &'a str, at: impl FnOnce() -> String + 'a) -> impl FnOnce(Error) -> Failure + 'a {
    move |e| match e {
        Error::PointFailed { .. } => Failure::Compute(format!("{op} failed: {e}")),
        _ => Failure::Compute(format!("{op} failed at {}: {e}", at())),
    }
}

fn describe(p: &ModelParams) -> String {
    format!(
        "alpha={}, beta={}, eta={}, theta={}, phi={}",
        p.alpha,
        p.beta,
        p.eta,
        p.orientation.theta(),
        p.orientation.phi()
    )
}

fn conventions_table(table: &mut Table, meta: &Meta) {
    let c = &meta.conventions;
    table.comment("command", &meta.command);
    table.comment("eta_sign_convention", &c.eta_sign_convention);
    table.comment("eof_x_convention", &c.eof_x_convention);
    let mapping: Vec<String> = c.qubit_mapping.iter().map(ToString::to_string).collect();
    table.comment("qubit_mapping", mapping.join(","));
    table.comment("zeeman_sign", c.zeeman_sign);
    table.comment("hermitian_tol", output::format_float(c.hermitian_tol));
    table.comment("angles", "rad");
    if let Some(r) = c.ratio {
        table.comment("ratio", output::format_float(r));
    }
    if let Some(u) = meta.unit_convention {
        table.comment("unit_convention", u);
    }
    if let Some(m) = &meta.material {
        table.comment("material", m);
    }
    if let Some(p) = &meta.params {
        table.comment("params", describe(p));
    }
    // last, so that runs differ only in this line
    if let Some(t) = &c.timestamp {
        table.comment("timestamp", t);
    }
}

fn emit<T: Serialize>(format: Format, doc: &T, table: impl FnOnce() -> Table) -> Result<String, Failure> {
    match format {
        Format::Json => render_json(doc).map_err(Failure::Compute),
        Format::Csv => render_csv(&table()).map_err(Failure::Compute),
    }
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let ctx = Context::new(&cli.common)?;
    let c = &cli.common;
    let format = c.format.unwrap_or(match cli.command {
        Command::Sweep(_) | Command::ScanTemp(_) => Format::Csv,
        _ => Format::Json,
    });
    match &cli.command {
        Command::State => {
            let p = ctx.point()?;
            let rho = ctx
                .scanner
                .model()
                .thermal_state(&p)
                .map_err(compute("state", || describe(&p)))?;
            let mut meta = ctx.meta("state", None);
            meta.params = Some(p);
            let grid = |im: bool| -> Vec<Vec<f64>> {
                (0..4)
                    .map(|i| (0..4).map(|j| if im { rho[(i, j)].im } else { rho[(i, j)].re }).collect())
                    .collect()
            };
            let doc = StateDoc {
                rho_re: grid(false),
                rho_im: grid(true),
                meta,
            };
            emit(format, &doc, || {
                let mut t = Table::new(["row", "col", "re", "im"]);
                conventions_table(&mut t, &doc.meta);
                for i in 0..4 {
                    for j in 0..4 {
                        t.push(vec![i.into(), j.into(), doc.rho_re[i][j].into(), doc.rho_im[i][j].into()]);
                    }
                }
                t
            })
        }
        Command::Measure => {
            let p = ctx.point()?;
            let report = ctx.scanner.evaluate(&p).map_err(compute("measure", || describe(&p)))?;
            let mut meta = ctx.meta("measure", None);
            meta.params = Some(p);
            let doc = MeasureDoc { report, meta };
            emit(format, &doc, || {
                let mut t = Table::new(["concurrence", "eof", "entropy_a", "entropy_b", "nu_1", "nu_2", "nu_3", "nu_4"]);
                conventions_table(&mut t, &doc.meta);
                let r = &doc.report;
                let mut row: Vec<Cell> = vec![r.concurrence.into(), r.eof.into(), r.entropy_a.into(), r.entropy_b.into()];
                row.extend(r.nu.iter().map(|&x| Cell::from(x)));
                t.push(row);
                t
            })
        }
        Command::Sweep(a) => {
            let axes = ctx.grid()?;
            let mut scanner = ctx.scanner.clone();
            scanner.angle_grid = a.angle_grid;
            let (result, fixed) = if a.optimize_angles {
                let (alpha, beta) = match axes.as_slice() {
                    [x, y] if x.axis == Axis::Alpha && y.axis == Axis::Beta => (*x, *y),
                    _ => return Err(usage("--optimize-angles needs --grid alpha:... followed by --grid beta:...")),
                };
                if a.angle_grid < 3 {
                    return Err(usage("--angle-grid must be at least 3"));
                }
                let eta = ctx.eta()?;
                let res = scanner
                    .max_over_angles_surface(alpha, beta, eta)
                    .map_err(compute("sweep", || format!("eta={eta}")))?;
                (res, None)
            } else {
                let spec = sweep_spec(&ctx, axes)?;
                let res = scanner.sweep(&spec).map_err(compute("sweep", || describe(&spec.fixed)))?;
                (res, Some(spec.fixed))
            };
            let mut meta = ctx.meta("sweep", result.meta.ratio);
            meta.params = fixed;
            sweep_output(format, result, meta)
        }
        Command::ScanTemp(a) => {
            let ratio = ctx.ratio()?;
            let eta = ctx.eta()?;
            let o = ctx.orientation()?;
            let axis = AxisSpec::log(Axis::Beta, a.beta_min, a.beta_max, a.points);
            axis.validate().map_err(usage)?;
            let result = ctx
                .scanner
                .temperature_scan(ratio, eta, o, a.beta_min, a.beta_max, a.points)
                .map_err(compute("scan-temp", || format!("ratio={ratio}, eta={eta}")))?;
            let meta = ctx.meta("scan-temp", Some(ratio));
            sweep_output(format, result, meta)
        }
        Command::Critical => {
            let ratio = ctx.ratio()?;
            let eta = ctx.eta()?;
            let o = ctx.orientation()?;
            let conv = c.unit_convention.map(UnitConvention::from);
            let material = ctx.material()?;
            let point = ctx
                .scanner
                .critical_beta(ratio, eta, o, c.threshold, c.tol)
                .map_err(compute("critical", || {
                    format!("ratio={ratio}, eta={eta}, theta={}, phi={}", o.theta(), o.phi())
                }))?;
            let temperature_k = match (material, conv) {
                (Some(m), Some(conv)) => Some(
                    temperature_for_beta(m.eqq_zz_mhz, SPIN, point.beta_star, conv)
                        .map_err(compute("critical", || format!("beta={}", point.beta_star)))?,
                ),
                _ => None,
            };
            let doc = CriticalDoc {
                point,
                temperature_k,
                meta: ctx.meta("critical", Some(ratio)),
            };
            emit(format, &doc, || {
                let mut header = vec!["beta_star", "ratio", "bracket_lo", "bracket_hi", "threshold"];
                let p = &doc.point;
                let mut row: Vec<Cell> = vec![
                    p.beta_star.into(),
                    p.ratio.into(),
                    p.bracket.0.into(),
                    p.bracket.1.into(),
                    p.threshold.into(),
                ];
                if let Some(t) = doc.temperature_k {
                    header.push("temperature_k");
                    row.push(t.into());
                }
                let mut t = Table::new(header);
                conventions_table(&mut t, &doc.meta);
                t.push(row);
                t
            })
        }
        Command::Optimize(a) => {
            let alpha = c.alpha.ok_or_else(|| usage("--alpha is required"))?;
            let beta = c.beta.ok_or_else(|| usage("--beta is required"))?;
            let eta = ctx.eta()?;
            for (name, value) in [("alpha", alpha), ("beta", beta)] {
                if !value.is_finite() {
                    return Err(usage(Error::NonFinite { name, value }));
                }
            }
            if a.angle_grid < 3 {
                return Err(usage("--angle-grid must be at least 3"));
            }
            let mut scanner = ctx.scanner.clone();
            scanner.angle_grid = a.angle_grid;
            let optimum = scanner
                .maximize_over_angles(alpha, beta, eta)
                .map_err(compute("optimize", || format!("alpha={alpha}, beta={beta}, eta={eta}")))?;
            let mut meta = ctx.meta("optimize", None);
            meta.params = Some(
                ModelParams::new(alpha, beta, eta, Orientation::POLAR)
                    .map_err(usage)?
                    .with_zeeman_sign(scanner.zeeman_sign),
            );
            let doc = OptimizeDoc { optimum, meta };
            emit(format, &doc, || {
                let mut t = Table::new(["theta_star", "phi_star", "c_star"]);
                conventions_table(&mut t, &doc.meta);
                let o = &doc.optimum;
                t.push(vec![o.theta_star.into(), o.phi_star.into(), o.c_star.into()]);
                t
            })
        }
        Command::Convert => {
            let doc = convert(&ctx)?;
            emit(format, &doc, || {
                let mut header = vec!["temp_k", "beta", "temperature_unit_k", "eqq_zz_mhz"];
                let mut row: Vec<Cell> = vec![
                    doc.temp_k.into(),
                    doc.beta.into(),
                    doc.temperature_unit_k.into(),
                    doc.eqq_zz_mhz.into(),
                ];
                for (name, v) in [("alpha", doc.alpha), ("field_t", doc.field_t), ("gamma_mhz_per_t", doc.gamma_mhz_per_t)] {
                    if let Some(v) = v {
                        header.push(name);
                        row.push(v.into());
                    }
                }
                let mut t = Table::new(header);
                conventions_table(&mut t, &doc.meta);
                t.push(row);
                t
            })
        }
        Command::Presets => {
            let doc = PresetsDoc {
                presets: ctx.presets.clone(),
                meta: ctx.meta("presets", None),
            };
            emit(format, &doc, || {
                let mut t = Table::new(["label", "eqq_zz_mhz", "eta", "quadrupole_moment_cm2", "site"]);
                conventions_table(&mut t, &doc.meta);
                for p in &doc.presets {
                    t.push(vec![
                        p.label.as_str().into(),
                        p.eqq_zz_mhz.into(),
                        p.eta.into(),
                        p.quadrupole_moment.into(),
                        p.site.as_str().into(),
                    ]);
                }
                t
            })
        }
    }
}

fn sweep_spec(ctx: &Context, axes: Vec<AxisSpec>) -> Result<SweepSpec, Failure> {
    let c = ctx.common;
    let on_axis = |a: Axis| axes.iter().any(|s| s.axis == a);
    let ratio = match c.ratio {
        Some(_) => Some(ctx.ratio()?),
        None => None,
    };
    let value = |name: &str, given: Option<f64>, covered: bool| -> Result<f64, Failure> {
        match (given, covered) {
            (Some(v), _) => Ok(v),
            (None, true) => Ok(0.0),
            (None, false) => Err(usage(format!("--{name} is required unless it is a --grid axis"))),
        }
    };
    let alpha = value("alpha", c.alpha, on_axis(Axis::Alpha) || ratio.is_some())?;
    let beta = value("beta", c.beta, on_axis(Axis::Beta) || on_axis(Axis::Temperature))?;
    let eta = if on_axis(Axis::Eta) {
        c.eta.or(ctx.material()?.map(|m| m.eta)).unwrap_or(0.0)
    } else {
        ctx.eta()?
    };
    let theta = value("theta", c.theta.map(|t| ctx.angle(t)), on_axis(Axis::Theta))?;
    let phi = ctx.angle(c.phi.unwrap_or(0.0));
    let fixed = ModelParams::new(alpha, beta, eta, orientation(theta, phi)?)
        .map_err(usage)?
        .with_zeeman_sign(ctx.scanner.zeeman_sign);
    let mut it = axes.into_iter();
    let spec = SweepSpec {
        axis1: it.next().expect("at least one axis"),
        axis2: it.next(),
        fixed,
        ratio,
    };
    spec.validate().map_err(usage)?;
    Ok(spec)
}

fn sweep_output(format: Format, result: SweepResult, meta: Meta) -> Result<String, Failure> {
    let doc = SweepDoc {
        columns: result.columns,
        rows: result.rows,
        meta,
    };
    emit(format, &doc, || {
        let optimized = doc.rows.first().is_some_and(|r| r.theta_star.is_some());
        let mut header = doc.columns.clone();
        header.extend(["concurrence", "eof", "entropy_a"].map(String::from));
        if optimized {
            header.extend(["theta_star", "phi_star"].map(String::from));
        }
        let mut t = Table::new(header);
        conventions_table(&mut t, &doc.meta);
        for r in &doc.rows {
            let mut row: Vec<Cell> = r.coords.iter().map(|&x| Cell::from(x)).collect();
            row.extend([r.concurrence, r.eof, r.entropy_a].map(Cell::from));
            if optimized {
                row.push(r.theta_star.unwrap_or(f64::NAN).into());
                row.push(r.phi_star.unwrap_or(f64::NAN).into());
            }
            t.push(row);
        }
        t
    })
}

fn convert(ctx: &Context) -> Result<ConvertDoc, Failure> {
    let c = ctx.common;
    let material = ctx.require_material("for convert")?;
    let conv = ctx.require_convention("for convert")?;
    let unit = temperature_unit_kelvin(material.eqq_zz_mhz, SPIN, conv);
    // alpha per (MHz of gamma*B) at temperature T: h * 1e6 / (k_B T)
    let alpha_per_mhz = |t: f64| PLANCK * 1e6 / (BOLTZMANN * t);
    let (temp_k, beta, alpha, field_t) = match (c.temp_k, c.beta) {
        (Some(_), Some(_)) => return Err(usage("give --temp-k or --beta, not both")),
        (Some(t), None) => {
            let beta = unit / t;
            let (alpha, field) = match (c.field_t, c.gamma_mhz_per_t) {
                (Some(b), Some(g)) => (Some(alpha_per_mhz(t) * g * b), Some(b)),
                (Some(_), None) => return Err(usage("--gamma-mhz-per-t is required with --field-t")),
                (None, _) => (None, None),
            };
            (t, beta, alpha, field)
        }
        (None, Some(beta)) => {
            let t = temperature_for_beta(material.eqq_zz_mhz, SPIN, beta, conv).map_err(usage)?;
            let field = match (c.alpha, c.gamma_mhz_per_t) {
                (Some(a), Some(g)) if g != 0.0 => Some(a / (alpha_per_mhz(t) * g)),
                (Some(_), _) => return Err(usage("--gamma-mhz-per-t (nonzero) is required to convert --alpha")),
                (None, _) => None,
            };
            (t, beta, c.alpha, field)
        }
        (None, None) => return Err(usage("convert needs --temp-k or --beta")),
    };
    Ok(ConvertDoc {
        material: material.label.clone(),
        eqq_zz_mhz: material.eqq_zz_mhz,
        unit_convention: conv,
        temperature_unit_k: unit,
        temp_k,
        beta,
        alpha,
        field_t,
        gamma_mhz_per_t: c.gamma_mhz_per_t,
        meta: ctx.meta("convert", None),
    })
}
