//! Versioned JSON reports.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const SCHEMA: &str = "1";

/// One numeric claim with its residual and the tolerance it was judged against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// `value` should equal `expected`.
    pub fn equals(name: impl Into<String>, value: f64, expected: f64, tolerance: f64) -> Self {
        let residual = (value - expected).abs();
        Self { name: name.into(), value, expected, residual, tolerance, pass: residual <= tolerance }
    }

    /// A residual that should vanish.
    pub fn vanishes(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self::equals(name, residual, 0.0, tolerance)
    }

    /// `value ≤ bound`; the residual is the excess.
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64, tolerance: f64) -> Self {
        let residual = (value - bound).max(0.0);
        Self { name: name.into(), value, expected: bound, residual, tolerance, pass: residual <= tolerance }
    }

    /// `value ≥ bound`; the residual is the shortfall.
    pub fn at_least(name: impl Into<String>, value: f64, bound: f64, tolerance: f64) -> Self {
        let residual = (bound - value).max(0.0);
        Self { name: name.into(), value, expected: bound, residual, tolerance, pass: residual <= tolerance }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, seed: u64, config: BTreeMap<String, String>) -> Self {
        Self {
            schema: SCHEMA.into(),
            command: command.into(),
            seed,
            config,
            checks: vec![],
            values: BTreeMap::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_judge_residuals() {
        assert!(Check::equals("x", 1.0 + 1e-12, 1.0, 1e-10).pass);
        assert!(!Check::vanishes("x", 1e-3, 1e-10).pass);
        let c = Check::at_most("x", 2.5, 2.0, 1e-10);
        assert!(!c.pass && c.residual == 0.5);
        assert!(Check::at_least("x", 1.0, 0.5, 0.0).pass);
    }

    #[test]
    fn pass_flag_tracks_checks() {
        let mut r = Report::new("verify", 7, BTreeMap::new());
        r.push(Check::vanishes("a", 0.0, 1e-10));
        assert!(r.pass);
        r.push(Check::vanishes("b", 1.0, 1e-10));
        assert!(!r.pass && r.failures() == 1);
        let json = r.to_json().unwrap();
        assert!(json.contains("\"schema\": \"1\""));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
