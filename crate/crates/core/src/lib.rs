//! Thermal-equilibrium entanglement of a single quadrupolar nucleus.
//!
//! A spin-3/2 nucleus has a four-dimensional state space, which can be read as
//! two effective qubits. In a combined electric-field-gradient and magnetic
//! field the Gibbs state of that spin can be entangled in this two-qubit
//! sense. This crate builds the Hamiltonians, the thermal density matrix, the
//! entanglement measures (concurrence, entanglement of formation, subsystem
//! entropy) and parameter-space scans over field, temperature and
//! crystal orientation.
//!
//! ```
//! use nqr_core::{measure_all, thermal_state, ModelParams, QubitMapping, SpinSystem};
//!
//! let p = ModelParams::from_angles(2.0, 6.0, 0.14, 0.94, 0.0).unwrap();
//! let rho = thermal_state(SpinSystem::THREE_HALVES, &p).unwrap();
//! let report = measure_all(&rho, QubitMapping::IDENTITY).unwrap();
//! assert!(report.concurrence > 0.0);
//! ```

pub mod entanglement;
pub mod error;
pub mod nqr_model;
pub mod scan;
pub mod spin_algebra;

pub use entanglement::{
    concurrence, entanglement_of_formation, measure_all, spin_flip, spin_flip_matrix, subsystem_entropy, Concurrence,
    EntanglementReport, QubitMapping,
};
pub use error::{Error, Result};
pub use nqr_model::{
    builtin_presets, physical_to_dimensionless, quadrupole_hamiltonian, rotation_operator, temperature_for_beta,
    thermal_state, zeeman_hamiltonian, MaterialPreset, ModelParams, NqrModel, Orientation, PhysicalConditions,
    UnitConvention, ZeemanSign,
};
pub use scan::{
    AngleOptimum, Axis, AxisSpec, CriticalPoint, Scanner, Spacing, SweepMeta, SweepResult, SweepRow, SweepSpec,
};
pub use spin_algebra::{
    hermitian_eig, matrix_exp_hermitian, partial_trace, spin_operators, ComplexMatrix, HermitianEig, SpinOperators,
    SpinSystem, Subsystem,
};
