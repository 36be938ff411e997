use thiserror::Error;

/// Errors produced anywhere in the simulator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("bad dimension: expected {expected}, found {found}")]
    BadDimension { expected: usize, found: usize },

    #[error("asymmetry parameter eta = {0} outside [0, 1]")]
    EtaOutOfRange(f64),

    #[error("{name} = {value} outside {range}")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("non-finite model parameter {name} = {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("exponent magnitude {magnitude} exceeds the guard {limit}")]
    Overflow { magnitude: f64, limit: f64 },

    #[error("temperature must be positive, got {0} K")]
    NonpositiveTemperature(f64),

    #[error("no preset named `{0}`")]
    NotFound(String),

    #[error("invalid preset `{label}`: {reason}")]
    InvalidPreset { label: String, reason: String },

    #[error("preset file: {0}")]
    PresetFile(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("nonphysical spectrum of rho * rho~: eigenvalue {value:e}")]
    NonphysicalSpectrum { value: f64 },

    #[error("value {value} outside {range}")]
    OutOfRange { value: f64, range: &'static str },

    #[error("invalid qubit mapping {0:?}: not a permutation of 0..4")]
    InvalidMapping(Vec<usize>),

    #[error("no entanglement transition: {0}")]
    NoTransition(String),

    #[error("invalid sweep: {0}")]
    InvalidSpec(String),

    #[error("evaluation failed at {coords}: {source}")]
    PointFailed {
        coords: String,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
