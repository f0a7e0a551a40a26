//! Global settings: command-line flags layered over an optional TOML file.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
    Md,
}

/// Keys accepted in the config file; they mirror the global flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub precision: Option<usize>,
    pub strict: Option<bool>,
    pub budget: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Settings {
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub precision: usize,
    pub strict: bool,
    pub budget: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { format: Format::Text, out: None, precision: 256, strict: false, budget: 200 }
    }
}

impl Settings {
    /// Flags win over the file, the file over the defaults.
    pub fn resolve(flags: FileConfig, file: FileConfig) -> Settings {
        let d = Settings::default();
        Settings {
            format: flags.format.or(file.format).unwrap_or(d.format),
            out: flags.out.or(file.out),
            precision: flags.precision.or(file.precision).unwrap_or(d.precision),
            strict: flags.strict.or(file.strict).unwrap_or(d.strict),
            budget: flags.budget.or(file.budget).unwrap_or(d.budget),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win() {
        let file: FileConfig = toml::from_str("format = \"md\"\nprecision = 512\nstrict = true").unwrap();
        let flags = FileConfig { precision: Some(300), ..Default::default() };
        let s = Settings::resolve(flags, file);
        assert_eq!((s.format, s.precision, s.strict, s.budget), (Format::Md, 300, true, 200));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
    }
}
