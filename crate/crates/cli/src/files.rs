//! On-disk formats: coefficient files (JSON) and node/value/table files (CSV).
//!
//! Coefficient file schema:
//! `{ "kind": "taylor" | "laurent" | "harmonic_beltrami",
//!    "offset": <index of first coefficient>,
//!    "re": [...], "im": [...] }`
//! `re` and `im` must have equal nonzero length and finite entries. For
//! `taylor` and `harmonic_beltrami` the offset must be >= 0 (leading zeros are
//! padded in); `laurent` offsets may be negative.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use teichwp::diff::HarmonicBeltrami;
use teichwp::quad::QuadratureRule;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffFile {
    pub kind: String,
    pub offset: i64,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

pub const KIND_TAYLOR: &str = "taylor";
pub const KIND_LAURENT: &str = "laurent";
pub const KIND_HARMONIC: &str = "harmonic_beltrami";

impl CoeffFile {
    pub fn from_complex(kind: &str, offset: i64, coeffs: &[Complex64]) -> Self {
        CoeffFile {
            kind: kind.to_string(),
            offset,
            re: coeffs.iter().map(|c| c.re).collect(),
            im: coeffs.iter().map(|c| c.im).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.kind.as_str(), KIND_TAYLOR | KIND_LAURENT | KIND_HARMONIC) {
            bail!(
                "unknown coefficient kind {:?} (expected {:?}, {:?} or {:?})",
                self.kind,
                KIND_TAYLOR,
                KIND_LAURENT,
                KIND_HARMONIC
            );
        }
        if self.re.is_empty() || self.re.len() != self.im.len() {
            bail!(
                "re/im arrays must have equal nonzero length (got {} and {})",
                self.re.len(),
                self.im.len()
            );
        }
        if self.kind != KIND_LAURENT && self.offset < 0 {
            bail!("kind {:?} requires offset >= 0 (got {})", self.kind, self.offset);
        }
        for (i, (&re, &im)) in self.re.iter().zip(&self.im).enumerate() {
            if !re.is_finite() || !im.is_finite() {
                bail!("non-finite coefficient at index {}", self.offset + i as i64);
            }
        }
        Ok(())
    }

    pub fn coeffs(&self) -> Vec<Complex64> {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect()
    }

    /// Interpret as harmonic-Beltrami coefficients, left-padding up to offset.
    pub fn to_harmonic(&self) -> Result<HarmonicBeltrami> {
        self.validate()?;
        if self.kind != KIND_HARMONIC {
            bail!(
                "expected a {:?} coefficient file, got kind {:?}",
                KIND_HARMONIC,
                self.kind
            );
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.offset as usize];
        coeffs.extend(self.coeffs());
        Ok(HarmonicBeltrami::new(coeffs))
    }
}

pub fn read_coeff_file(path: &Path) -> Result<CoeffFile> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let file: CoeffFile = serde_json::from_str(&text)
        .with_context(|| format!("malformed coefficient file {}", path.display()))?;
    file.validate()
        .with_context(|| format!("invalid coefficient file {}", path.display()))?;
    Ok(file)
}

pub fn write_coeff_file(path: &Path, file: &CoeffFile) -> Result<()> {
    let mut text = serde_json::to_string_pretty(file)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

/// Write quadrature nodes as CSV rows `index,re,im,weight`.
pub fn write_nodes_csv(path: &Path, rule: &QuadratureRule) -> Result<()> {
    let mut w = csv::Writer::from_path(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    w.write_record(["index", "re", "im", "weight"])?;
    for (i, (z, wt)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
        w.write_record([
            i.to_string(),
            z.re.to_string(),
            z.im.to_string(),
            wt.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Read node-sample values as CSV rows `index,re,im`, in node order.
/// Rows must be contiguous from index 0 and every value finite; errors carry
/// the 1-based line number of the offending row.
pub fn read_values_csv(path: &Path, expected_len: usize) -> Result<Vec<Complex64>> {
    let mut r = csv::Reader::from_path(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    {
        let headers = r.headers().context("missing CSV header")?;
        let expect = ["index", "re", "im"];
        if headers.len() != 3 || headers.iter().zip(expect).any(|(h, e)| h != e) {
            bail!(
                "{}: expected CSV header `index,re,im`, got `{}`",
                path.display(),
                headers.iter().collect::<Vec<_>>().join(",")
            );
        }
    }
    let mut values = Vec::with_capacity(expected_len);
    for (row, record) in r.records().enumerate() {
        let record = record.with_context(|| format!("{}: unreadable row", path.display()))?;
        let line = record
            .position()
            .map(|p| p.line())
            .unwrap_or((row + 2) as u64);
        let field = |idx: usize, name: &str| -> Result<f64> {
            let raw = record.get(idx).with_context(|| {
                format!("{}: line {}: missing column {}", path.display(), line, name)
            })?;
            let v: f64 = raw.trim().parse().with_context(|| {
                format!(
                    "{}: line {}: cannot parse {} value {:?}",
                    path.display(),
                    line,
                    name,
                    raw
                )
            })?;
            if !v.is_finite() {
                bail!(
                    "{}: line {}: non-finite {} value {:?}",
                    path.display(),
                    line,
                    name,
                    raw
                );
            }
            Ok(v)
        };
        let index = field(0, "index")?;
        if index != values.len() as f64 {
            bail!(
                "{}: line {}: expected index {}, got {}",
                path.display(),
                line,
                values.len(),
                index
            );
        }
        values.push(Complex64::new(field(1, "re")?, field(2, "im")?));
    }
    if values.len() != expected_len {
        bail!(
            "{}: expected {} rows (one per quadrature node), got {}",
            path.display(),
            expected_len,
            values.len()
        );
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmpdir() -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!("teichwp-files-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn coeff_roundtrip() {
        let dir = tmpdir();
        let path = dir.join("c.json");
        let coeffs = [Complex64::new(0.5, -0.25), Complex64::new(0.0, 1.0)];
        let file = CoeffFile::from_complex(KIND_HARMONIC, 0, &coeffs);
        write_coeff_file(&path, &file).unwrap();
        let back = read_coeff_file(&path).unwrap();
        assert_eq!(back.coeffs(), coeffs.to_vec());
        let mu = back.to_harmonic().unwrap();
        assert_eq!(mu.coeff(0), coeffs[0]);
    }

    #[test]
    fn harmonic_offset_pads_zeros() {
        let file = CoeffFile::from_complex(KIND_HARMONIC, 2, &[Complex64::new(1.0, 0.0)]);
        let mu = file.to_harmonic().unwrap();
        assert_eq!(mu.coeff(0), Complex64::new(0.0, 0.0));
        assert_eq!(mu.coeff(2), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn rejects_bad_kind_and_lengths() {
        let mut f = CoeffFile::from_complex("fourier", 0, &[Complex64::new(1.0, 0.0)]);
        assert!(f.validate().is_err());
        f.kind = KIND_TAYLOR.into();
        f.im.push(0.0);
        assert!(f.validate().is_err());
        f.im.clear();
        f.re.clear();
        assert!(f.validate().is_err());
    }

    #[test]
    fn rejects_non_finite() {
        let f = CoeffFile {
            kind: KIND_HARMONIC.into(),
            offset: 0,
            re: vec![f64::NAN],
            im: vec![0.0],
        };
        let err = f.validate().unwrap_err().to_string();
        assert!(err.contains("non-finite"), "{err}");
    }

    #[test]
    fn values_csv_errors_carry_line_numbers() {
        let dir = tmpdir();
        let path = dir.join("v.csv");
        std::fs::write(&path, "index,re,im\n0,0.5,0.0\n1,NaN,0.0\n").unwrap();
        let err = format!("{:#}", read_values_csv(&path, 2).unwrap_err());
        assert!(err.contains("line 3"), "{err}");
        assert!(err.contains("non-finite"), "{err}");
    }
}
