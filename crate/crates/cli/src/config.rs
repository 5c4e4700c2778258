//! INI-style configuration files merged under command-line flags.
//!
//! Two section kinds are recognized:
//!
//! ```text
//! [material.NAME]         # a custom metal usable as --plate1/--plate2 NAME
//! kind = superconductor   # plasma | drude | superconductor
//! omega_p_eV = 8.7
//! gamma_eV = 0.035        # optional; defaults to the built-in value
//! t_c_K = 9.2             # superconductor kind only
//!
//! [run]                   # defaults for flags, same names with _ for -
//! gap_nm = 1000
//! temp_K = 300
//! ```
//!
//! Lines starting with `#` or `;` are comments. Flags always win over
//! `[run]` values; the resolved configuration is echoed in output headers.

use std::collections::BTreeMap;
use std::path::Path;

use casimir_core::materials::{MaterialModel, DEFAULT_GAMMA};

/// Parsed configuration file contents.
#[derive(Debug, Clone, Default)]
pub struct FileConfig {
    /// Custom materials by section name.
    pub materials: BTreeMap<String, MaterialModel>,
    /// Raw `[run]` key = value pairs.
    pub run: BTreeMap<String, String>,
}

impl FileConfig {
    /// Fallback lookup for a flag: the flag value if given, else the parsed
    /// `[run]` entry, else `None`.
    pub fn fall<T: std::str::FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
    ) -> Result<Option<T>, String> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.run.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| format!("config [run] {key} = {raw}: cannot parse value")),
        }
    }
}

/// Parse configuration text.
pub fn parse(text: &str) -> Result<FileConfig, String> {
    enum Section {
        None,
        Run,
        Material,
    }
    fn finish_material(
        materials: &mut BTreeMap<String, MaterialModel>,
        name: &str,
        keys: &mut BTreeMap<String, String>,
    ) -> Result<(), String> {
        let material = build_material(name, keys)?;
        keys.clear();
        config_insert(materials, name, material)
    }

    let mut config = FileConfig::default();
    let mut section = Section::None;
    let mut pending: BTreeMap<String, String> = BTreeMap::new();
    let mut pending_name = String::new();

    for (number, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            if let Section::Material = section {
                finish_material(&mut config.materials, &pending_name, &mut pending)?;
            }
            let name = name.trim();
            section = if name == "run" {
                Section::Run
            } else if let Some(material_name) = name.strip_prefix("material.") {
                let material_name = material_name.trim();
                if material_name.is_empty() {
                    return Err(format!("line {}: empty material name", number + 1));
                }
                pending_name = material_name.to_string();
                Section::Material
            } else {
                return Err(format!(
                    "line {}: unknown section [{name}] (expected [run] or [material.NAME])",
                    number + 1
                ));
            };
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("line {}: expected key = value, got {line:?}", number + 1));
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        match &section {
            Section::None => {
                return Err(format!("line {}: key outside any section", number + 1));
            }
            Section::Run => {
                config.run.insert(key, value);
            }
            Section::Material => {
                pending.insert(key, value);
            }
        }
    }
    if let Section::Material = section {
        finish_material(&mut config.materials, &pending_name, &mut pending)?;
    }
    Ok(config)
}

fn config_insert(
    materials: &mut BTreeMap<String, MaterialModel>,
    name: &str,
    material: MaterialModel,
) -> Result<(), String> {
    if materials.insert(name.to_string(), material).is_some() {
        return Err(format!("material {name} defined twice"));
    }
    Ok(())
}

fn build_material(name: &str, keys: &BTreeMap<String, String>) -> Result<MaterialModel, String> {
    let get_f64 = |key: &str| -> Result<Option<f64>, String> {
        match keys.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<f64>()
                .map(Some)
                .map_err(|_| format!("material {name}: {key} = {raw} is not a number")),
        }
    };
    for key in keys.keys() {
        if !matches!(key.as_str(), "kind" | "omega_p_eV" | "gamma_eV" | "t_c_K") {
            return Err(format!("material {name}: unknown key {key}"));
        }
    }
    let kind = keys
        .get("kind")
        .ok_or_else(|| format!("material {name}: missing kind"))?
        .to_lowercase();
    let omega_p = get_f64("omega_p_eV")?
        .ok_or_else(|| format!("material {name}: missing omega_p_eV"))?;
    let gamma = get_f64("gamma_eV")?.unwrap_or(DEFAULT_GAMMA);
    let result = match kind.as_str() {
        "plasma" => MaterialModel::plasma(omega_p),
        "drude" => MaterialModel::drude(omega_p, gamma),
        "superconductor" => {
            let t_c = get_f64("t_c_K")?
                .ok_or_else(|| format!("material {name}: superconductor needs t_c_K"))?;
            MaterialModel::superconductor(omega_p, gamma, t_c)
        }
        other => {
            return Err(format!(
                "material {name}: unknown kind {other} (plasma | drude | superconductor)"
            ))
        }
    };
    result.map_err(|e| format!("material {name}: {e}"))
}

/// Load and parse a configuration file.
pub fn load(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse(&text)
}

/// Resolve a plate name: built-in presets first (case-insensitive), then
/// custom materials from the configuration file (exact name).
pub fn resolve_material(name: &str, file: &FileConfig) -> Result<MaterialModel, String> {
    if let Some(preset) = MaterialModel::preset(name) {
        return Ok(preset);
    }
    if let Some(custom) = file.materials.get(name) {
        return Ok(custom.clone());
    }
    let mut known: Vec<&str> = vec!["nb", "au", "ideal"];
    let customs: Vec<&str> = file.materials.keys().map(|s| s.as_str()).collect();
    known.extend(customs);
    Err(format!(
        "unknown material {name:?} (known: {})",
        known.join(", ")
    ))
}

/// One-line description of a material for provenance headers.
pub fn describe_material(m: &MaterialModel) -> String {
    use casimir_core::materials::MaterialKind;
    match m.kind {
        MaterialKind::Plasma => format!("plasma(omega_p_eV = {})", m.omega_p),
        MaterialKind::Drude => format!(
            "drude(omega_p_eV = {}, gamma_eV = {})",
            m.omega_p, m.gamma
        ),
        MaterialKind::Superconductor => format!(
            "superconductor(omega_p_eV = {}, gamma_eV = {}, t_c_K = {})",
            m.omega_p, m.gamma, m.t_c
        ),
    }
}
