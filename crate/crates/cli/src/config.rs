//! Optional JSON configuration. Precedence: command-line flags, then the
//! config file, then built-in defaults.

use std::path::{Path, PathBuf};

use bwc_core::bounds::RuleSet;
use bwc_core::exact::assets::asset_dir;
use bwc_core::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::report::Format;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Asset directory; `$BWC_ASSETS` and the shipped assets come after it.
    pub assets: Option<PathBuf>,
    pub rules: Option<RuleSet>,
    pub asymptotic_rules: Option<bool>,
    pub sdp_tol: Option<f64>,
    pub sdp_max_iterations: Option<usize>,
    pub budget_secs: Option<u64>,
    pub threads: Option<usize>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
}

impl Config {
    /// An unreadable or malformed file is a usage error.
    pub fn load(path: &Path) -> Result<Self> {
        let bad = |e: &dyn std::fmt::Display| Error::InvalidParameters(format!("config {}: {e}", path.display()));
        let text = std::fs::read_to_string(path).map_err(|e| bad(&e))?;
        serde_json::from_str(&text).map_err(|e| bad(&e))
    }

    pub fn assets(&self, flag: Option<PathBuf>) -> PathBuf {
        flag.or_else(|| self.assets.clone()).unwrap_or_else(asset_dir)
    }
}

/// The flag if given, else the config value, else the default.
pub fn pick<T>(flag: Option<T>, config: Option<T>, default: T) -> T {
    flag.or(config).unwrap_or(default)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(pick(Some(1), Some(2), 3), 1);
        assert_eq!(pick(None, Some(2), 3), 2);
        assert_eq!(pick(None, None, 3), 3);
    }

    #[test]
    fn parses_known_fields_only() {
        let c: Config = serde_json::from_str(r#"{"rules": "elementary", "sdp_tol": 1e-7, "format": "csv"}"#).unwrap();
        assert_eq!(c.rules, Some(RuleSet::Elementary));
        assert_eq!(c.format, Some(Format::Csv));
        assert!(serde_json::from_str::<Config>(r#"{"tol": 1}"#).is_err());
        let c = Config { assets: Some("/x".into()), ..Default::default() };
        assert_eq!(c.assets(None), PathBuf::from("/x"));
        assert_eq!(c.assets(Some("/y".into())), PathBuf::from("/y"));
    }
}
