use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quadrupolar nucleus at a specific crystal site.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialPreset {
    pub label: String,
    /// cm^2; informational only.
    #[serde(rename = "quadrupole_moment_cm2")]
    pub quadrupole_moment: f64,
    pub eqq_zz_mhz: f64,
    pub eta: f64,
    pub site: String,
}

impl MaterialPreset {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Error::InvalidPreset {
            label: self.label.clone(),
            reason,
        };
        if !(self.eqq_zz_mhz > 0.0 && self.eqq_zz_mhz.is_finite()) {
            return Err(bad(format!("eqq_zz_mhz = {} must be positive", self.eqq_zz_mhz)));
        }
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(bad(format!("eta = {} outside [0, 1]", self.eta)));
        }
        Ok(())
    }
}

const CU63_Q: f64 = -0.211e-24;
const CU65_Q: f64 = -0.195e-24;

const SITE_PLANE: &str = "YBa2Cu3O7-d, four-coordinated Cu in the oxygen rhombus plane";
const SITE_PYRAMID: &str = "YBa2Cu3O7-d, five-coordinated Cu in the apically elongated pyramid";

/// Copper sites of YBa2Cu3O7-d.
///
/// Only the Cu-63 coupling constants are measured values. The Cu-65 entries
/// assume the same field gradient, so their eQq scales with the quadrupole
/// moment ratio Q(65)/Q(63).
pub fn builtin_presets() -> Vec<MaterialPreset> {
    let cu65_scale = CU65_Q / CU63_Q;
    let entry = |label: &str, q: f64, eqq: f64, eta: f64, site: &str| MaterialPreset {
        label: label.to_owned(),
        quadrupole_moment: q,
        eqq_zz_mhz: eqq,
        eta,
        site: site.to_owned(),
    };
    vec![
        // eta >= 0.92 at this site; lower bound stored
        entry("cu63-4coord", CU63_Q, 38.2, 0.92, SITE_PLANE),
        entry("cu63-5coord", CU63_Q, 62.8, 0.14, SITE_PYRAMID),
        entry("cu65-4coord", CU65_Q, 38.2 * cu65_scale, 0.92, SITE_PLANE),
        entry("cu65-5coord", CU65_Q, 62.8 * cu65_scale, 0.14, SITE_PYRAMID),
    ]
}

pub fn find_preset<'a>(presets: &'a [MaterialPreset], label: &str) -> Result<&'a MaterialPreset> {
    presets
        .iter()
        .find(|p| p.label.eq_ignore_ascii_case(label))
        .ok_or_else(|| Error::NotFound(label.to_owned()))
}

pub fn lookup_builtin(label: &str) -> Result<MaterialPreset> {
    find_preset(&builtin_presets(), label).cloned()
}

/// Parses a JSON array of presets and validates each entry.
pub fn parse_presets_json(text: &str) -> Result<Vec<MaterialPreset>> {
    let presets: Vec<MaterialPreset> = serde_json::from_str(text).map_err(|e| Error::PresetFile(e.to_string()))?;
    for p in &presets {
        p.validate()?;
    }
    Ok(presets)
}

pub fn load_presets_file(path: &Path) -> Result<Vec<MaterialPreset>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::PresetFile(format!("{}: {e}", path.display())))?;
    parse_presets_json(&text)
}

/// Built-ins followed by the file entries; a file entry replaces a built-in with the same label.
pub fn merged_presets(extra: Vec<MaterialPreset>) -> Vec<MaterialPreset> {
    let mut all = builtin_presets();
    for p in extra {
        match all.iter_mut().find(|q| q.label.eq_ignore_ascii_case(&p.label)) {
            Some(slot) => *slot = p,
            None => all.push(p),
        }
    }
    all
}
