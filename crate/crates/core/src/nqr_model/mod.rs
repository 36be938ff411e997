//! Zeeman and quadrupole Hamiltonians of a single nucleus, the thermal state
//! they generate, material presets and physical-unit conversion.

mod hamiltonian;
mod params;
mod presets;
mod units;

pub use hamiltonian::{
    quadrupole_hamiltonian, rotation_operator, rotation_operator_generic, thermal_state, zeeman_hamiltonian, NqrModel,
    EXPONENT_GUARD,
};
pub use params::{ModelParams, Orientation, ZeemanSign};
pub use presets::{
    builtin_presets, find_preset, load_presets_file, lookup_builtin, merged_presets, parse_presets_json, MaterialPreset,
};
pub use units::{
    physical_to_dimensionless, temperature_for_beta, temperature_unit_kelvin, PhysicalConditions, UnitConvention,
    BOLTZMANN, PLANCK,
};
