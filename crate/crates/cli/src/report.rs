//! Verification report serialization. Reports are deterministic: rerunning
//! with the same flags produces byte-identical JSON (per-check `runtime_ms`
//! stays 0 unless timings are explicitly requested).

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use teichwp::verify::CheckOutcome;

use crate::config::Resolved;

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub value: f64,
    pub bound: f64,
    pub tol: f64,
    pub pass: bool,
    pub anchor: String,
    pub runtime_ms: u64,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub inputs_digest: String,
    pub config: Resolved,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn from_outcomes(
        command: &str,
        cfg: Resolved,
        outcomes: &[CheckOutcome],
        runtimes_ms: Option<&[u64]>,
    ) -> Self {
        let checks: Vec<CheckRecord> = outcomes
            .iter()
            .enumerate()
            .map(|(i, o)| CheckRecord {
                check: o.name.to_string(),
                value: o.value,
                bound: o.bound,
                tol: o.tol,
                pass: o.pass,
                anchor: o.anchor.to_string(),
                runtime_ms: runtimes_ms.map_or(0, |r| r[i]),
            })
            .collect();
        Report {
            command: command.to_string(),
            seed: cfg.seed,
            inputs_digest: sha256_hex(cfg.canonical_string().as_bytes()),
            config: cfg,
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{resolve, FlagOverrides};

    #[test]
    fn digest_is_stable_and_seed_sensitive() {
        let a = resolve(None, FlagOverrides::default()).unwrap();
        let b = resolve(
            None,
            FlagOverrides {
                seed: Some(43),
                ..Default::default()
            },
        )
        .unwrap();
        let da = sha256_hex(a.canonical_string().as_bytes());
        let db = sha256_hex(b.canonical_string().as_bytes());
        assert_eq!(da.len(), 64);
        assert_ne!(da, db);
        assert_eq!(da, sha256_hex(a.canonical_string().as_bytes()));
    }

    #[test]
    fn report_serializes_with_expected_fields() {
        let cfg = resolve(None, FlagOverrides::default()).unwrap();
        let outcome = CheckOutcome {
            name: "cayley_factor",
            anchor: "test",
            value: 1.0e-16,
            bound: 1.0e-12,
            tol: 1.0e-12,
            pass: true,
        };
        let report = Report::from_outcomes("verify", cfg, &[outcome], None);
        let json = serde_json::to_string(&report).unwrap();
        for key in [
            "\"command\"",
            "\"seed\"",
            "\"inputs_digest\"",
            "\"config\"",
            "\"pass\"",
            "\"checks\"",
            "\"check\"",
            "\"value\"",
            "\"bound\"",
            "\"tol\"",
            "\"anchor\"",
            "\"runtime_ms\"",
        ] {
            assert!(json.contains(key), "missing {key} in {json}");
        }
    }
}
