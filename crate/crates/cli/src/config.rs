//! Run-configuration resolution: command-line flags override an optional
//! JSON config file, which overrides built-in defaults.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use teichwp::verify::VerifyConfig;

/// Optional overrides read from a `--config` JSON file. Unknown keys are
/// rejected so typos fail loudly instead of silently using defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n_radial: Option<usize>,
    pub n_angular: Option<usize>,
    pub degree: Option<usize>,
    pub tol_scale: Option<f64>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
}

/// Flag-level overrides collected from the command line (all optional).
#[derive(Debug, Default, Clone, Copy)]
pub struct FlagOverrides {
    pub n_radial: Option<usize>,
    pub n_angular: Option<usize>,
    pub degree: Option<usize>,
    pub tol_scale: Option<f64>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
}

/// Fully resolved configuration; also the shape echoed into reports.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Resolved {
    pub n_radial: usize,
    pub n_angular: usize,
    pub degree: usize,
    pub tol_scale: f64,
    pub seed: u64,
    pub trials: Option<usize>,
}

impl Resolved {
    pub fn to_verify_config(self) -> VerifyConfig {
        VerifyConfig {
            n_radial: self.n_radial,
            n_angular: self.n_angular,
            degree: self.degree,
            tol_scale: self.tol_scale,
            seed: self.seed,
            trials_override: self.trials,
        }
    }

    /// Canonical text form used for the report digest; field order is fixed.
    pub fn canonical_string(&self) -> String {
        format!(
            "n_radial={};n_angular={};degree={};tol_scale={};seed={};trials={}",
            self.n_radial,
            self.n_angular,
            self.degree,
            self.tol_scale,
            self.seed,
            match self.trials {
                Some(t) => t.to_string(),
                None => "default".to_string(),
            }
        )
    }
}

pub fn read_file_config(path: &Path) -> Result<FileConfig> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("malformed config file {}", path.display()))
}

/// Merge defaults < config file < flags.
pub fn resolve(config_path: Option<&Path>, flags: FlagOverrides) -> Result<Resolved> {
    let file = match config_path {
        Some(p) => read_file_config(p)?,
        None => FileConfig::default(),
    };
    let d = VerifyConfig::default();
    Ok(Resolved {
        n_radial: flags.n_radial.or(file.n_radial).unwrap_or(d.n_radial),
        n_angular: flags.n_angular.or(file.n_angular).unwrap_or(d.n_angular),
        degree: flags.degree.or(file.degree).unwrap_or(d.degree),
        tol_scale: flags.tol_scale.or(file.tol_scale).unwrap_or(d.tol_scale),
        seed: flags.seed.or(file.seed).unwrap_or(d.seed),
        trials: flags.trials.or(file.trials),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_library() {
        let r = resolve(None, FlagOverrides::default()).unwrap();
        assert_eq!(r.n_radial, 64);
        assert_eq!(r.n_angular, 256);
        assert_eq!(r.degree, 32);
        assert_eq!(r.tol_scale, 1.0);
        assert_eq!(r.seed, 42);
        assert_eq!(r.trials, None);
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join("teichwp-cli-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cfg.json");
        std::fs::write(&path, r#"{"n_radial": 16, "seed": 7}"#).unwrap();
        let flags = FlagOverrides {
            seed: Some(9),
            ..Default::default()
        };
        let r = resolve(Some(&path), flags).unwrap();
        assert_eq!(r.n_radial, 16); // from file
        assert_eq!(r.seed, 9); // flag wins
        assert_eq!(r.n_angular, 256); // default
    }

    #[test]
    fn unknown_key_rejected() {
        let dir = std::env::temp_dir().join("teichwp-cli-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.json");
        std::fs::write(&path, r#"{"n_radia": 16}"#).unwrap();
        assert!(resolve(Some(&path), FlagOverrides::default()).is_err());
    }

    #[test]
    fn canonical_string_is_stable() {
        let r = resolve(None, FlagOverrides::default()).unwrap();
        assert_eq!(
            r.canonical_string(),
            "n_radial=64;n_angular=256;degree=32;tol_scale=1;seed=42;trials=default"
        );
    }
}
