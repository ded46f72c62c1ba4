//! Named materials, with optional overrides loaded from JSON.
//!
//! The file is a flat object mapping names to tagged models; parameters are
//! in ω₀ = 10¹⁶ s⁻¹ units:
//!
//! ```json
//! {
//!   "au-bulk": { "model": "drude", "omega_p": 1.319, "gamma": 0.005556 },
//!   "si":      { "model": "lorentz_oscillator", "eps_static": 11.7, "omega_res": 0.7 },
//!   "film":    { "model": "drude_smith", "omega_p": 0.125, "gamma": 0.00125, "c1": -0.7 }
//! }
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

use super::{bulk_gold, silicon, DielectricModel};

#[derive(Debug, Clone, PartialEq)]
pub struct MaterialRegistry {
    entries: BTreeMap<String, DielectricModel>,
}

impl Default for MaterialRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl MaterialRegistry {
    /// `au-bulk` and `si` with their default parameters.
    pub fn builtin() -> Self {
        let mut entries = BTreeMap::new();
        entries.insert("au-bulk".to_owned(), bulk_gold());
        entries.insert("si".to_owned(), silicon());
        Self { entries }
    }

    pub fn get(&self, name: &str) -> Result<DielectricModel> {
        self.entries
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownMaterial(name.to_owned()))
    }

    pub fn insert(&mut self, name: impl Into<String>, model: DielectricModel) {
        self.entries.insert(name.into(), model);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Adds or replaces entries from a JSON document.
    pub fn merge_json(&mut self, json: &str) -> Result<()> {
        let parsed: BTreeMap<String, DielectricModel> = serde_json::from_str(json)?;
        self.entries.extend(parsed);
        Ok(())
    }

    /// Built-in materials overridden by the contents of `path`.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        let mut registry = Self::builtin();
        registry.merge_json(&text)?;
        Ok(registry)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("models always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn builtins() {
        let reg = MaterialRegistry::builtin();
        assert_eq!(reg.names().collect::<Vec<_>>(), ["au-bulk", "si"]);
        assert!(matches!(reg.get("gold"), Err(Error::UnknownMaterial(_))));
    }

    #[test]
    fn override_from_file() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        write!(
            file,
            r#"{{"si": {{"model": "lorentz_oscillator", "eps_static": 11.7, "omega_res": 0.7}},
                "ito": {{"model": "drude", "omega_p": 0.3, "gamma": 0.02}}}}"#
        )
        .unwrap();
        let reg = MaterialRegistry::load(file.path()).unwrap();
        assert_eq!(
            reg.get("si").unwrap(),
            DielectricModel::lorentz(11.7, 0.7).unwrap()
        );
        assert_eq!(
            reg.get("ito").unwrap(),
            DielectricModel::drude(0.3, 0.02).unwrap()
        );
        assert_eq!(reg.get("au-bulk").unwrap(), bulk_gold());
    }

    #[test]
    fn invalid_entries_are_rejected() {
        let mut reg = MaterialRegistry::builtin();
        let err = reg.merge_json(r#"{"x": {"model": "plasma", "omega_p": -1.0}}"#);
        assert!(matches!(err, Err(Error::Json(_))));
        let err = reg.merge_json(r#"{"x": {"model": "hydrodynamic", "omega_p": 1.0}}"#);
        assert!(err.is_err());
    }

    #[test]
    fn json_round_trip() {
        let reg = MaterialRegistry::builtin();
        let mut other = MaterialRegistry {
            entries: BTreeMap::new(),
        };
        other.merge_json(&reg.to_json()).unwrap();
        assert_eq!(other, reg);
    }
}
