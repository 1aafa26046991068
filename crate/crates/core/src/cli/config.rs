//! Command line flags and `key=value` configuration files.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::catalog::{Kind, ModeWindow};
use crate::error::{Error, Result};

pub const MAX_WINDOW: usize = 4096;
pub const MAX_NMAX: usize = 12;
pub const MAX_N: usize = 100_000;

/// Keys accepted in configuration files, matching the flag names.
pub const KEYS: [&str; 11] = [
    "model", "window", "nmax", "tol", "observable", "target", "n", "gamma", "subseq", "out", "seed",
];

#[derive(Debug, Parser)]
#[command(name = "dfock", version, about = "Deformed Fock space experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the residual suite for one model and emit a JSON report.
    Verify(ExperimentArgs),
    /// Cesàro distance curve of an observable, as CSV.
    Ergodic(ExperimentArgs),
    /// Monotone normal form and state values of an expression.
    Reduce(ReduceArgs),
    /// Invariant-state checks for the monotone or Boolean model.
    States(ExperimentArgs),
    /// Merge JSON reports into one summary.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ExperimentArgs {
    /// free, bose, fermi, boolean, monotone or antimonotone.
    #[arg(long)]
    pub model: Option<String>,
    /// Mode window `LO..HI`, inclusive.
    #[arg(long)]
    pub window: Option<String>,
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// A word or polynomial, or `rank-one e_X,e_Y` for the Boolean model.
    #[arg(long)]
    pub observable: Option<String>,
    /// omega, vacuum-projection, zero or identity.
    #[arg(long)]
    pub target: Option<String>,
    /// `A..B` or a comma separated list.
    #[arg(long)]
    pub n: Option<String>,
    /// Comma separated values in [0, 1].
    #[arg(long)]
    pub gamma: Option<String>,
    /// Comma separated shift subsequence.
    #[arg(long)]
    pub subseq: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// File of `key=value` lines; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ReduceArgs {
    pub expr: String,
    #[arg(long)]
    pub gamma: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub model: Kind,
    pub window: Option<ModeWindow>,
    pub nmax: Option<usize>,
    pub tol: f64,
    pub observable: Option<String>,
    pub target: Option<String>,
    pub n: Option<Vec<usize>>,
    pub gamma: Option<Vec<String>>,
    pub subseq: Option<Vec<i64>>,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl ExperimentConfig {
    /// Echo of the resolved settings for report headers.
    pub fn summary(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("model".into(), self.model.to_string());
        if let Some(w) = self.window {
            m.insert("window".into(), w.to_string());
        }
        if let Some(n) = self.nmax {
            m.insert("nmax".into(), n.to_string());
        }
        m.insert("tol".into(), format!("{:e}", self.tol));
        if let Some(o) = &self.observable {
            m.insert("observable".into(), o.clone());
        }
        if let Some(g) = &self.gamma {
            m.insert("gamma".into(), g.join(","));
        }
        m.insert("seed".into(), self.seed.to_string());
        m
    }
}

fn config_error(message: impl Into<String>) -> Error {
    Error::Invalid(message.into())
}

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(config_error(format!("line {}: expected key=value", no + 1)));
        };
        let key = k.trim();
        if !KEYS.contains(&key) {
            return Err(config_error(format!("line {}: unknown key `{key}`", no + 1)));
        }
        map.insert(key.to_string(), v.trim().to_string());
    }
    Ok(map)
}

/// `A..B` (inclusive) or `a,b,c`; entries must be positive.
pub fn parse_n_list(text: &str) -> Result<Vec<usize>> {
    let bad = || config_error(format!("bad index list `{text}`"));
    let list: Vec<usize> = if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if list.is_empty() || list.contains(&0) || list.iter().any(|&n| n > MAX_N) {
        return Err(config_error(format!("indices in `{text}` must lie in 1..={MAX_N}")));
    }
    Ok(list)
}

fn parse_i64_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| config_error(format!("bad integer list `{text}`"))))
        .collect()
}

fn flag_map(args: &ExperimentArgs) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    let mut put = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            m.insert(k.to_string(), v);
        }
    };
    put("model", args.model.clone());
    put("window", args.window.clone());
    put("nmax", args.nmax.map(|v| v.to_string()));
    put("tol", args.tol.map(|v| v.to_string()));
    put("observable", args.observable.clone());
    put("target", args.target.clone());
    put("n", args.n.clone());
    put("gamma", args.gamma.clone());
    put("subseq", args.subseq.clone());
    put("out", args.out.as_ref().map(|p| p.display().to_string()));
    put("seed", args.seed.map(|v| v.to_string()));
    m
}

/// Merges the configuration file (if any) with the flags, flags winning.
pub fn resolve(args: &ExperimentArgs) -> Result<ExperimentConfig> {
    let mut map = match &args.config {
        Some(path) => parse_config_text(&std::fs::read_to_string(path)?)?,
        None => BTreeMap::new(),
    };
    map.extend(flag_map(args));
    from_map(&map)
}

pub fn from_map(map: &BTreeMap<String, String>) -> Result<ExperimentConfig> {
    let get = |k: &str| map.get(k).map(String::as_str);
    let model = get("model").unwrap_or("monotone").parse()?;
    let window = get("window").map(str::parse::<ModeWindow>).transpose()?;
    if let Some(w) = window {
        if w.dim() > MAX_WINDOW {
            return Err(Error::SizeCap { dim: w.dim(), cap: MAX_WINDOW });
        }
    }
    let nmax = get("nmax")
        .map(|s| s.parse::<usize>().map_err(|_| config_error(format!("bad nmax `{s}`"))))
        .transpose()?;
    if let Some(n) = nmax {
        if n == 0 || n > MAX_NMAX {
            return Err(config_error(format!("nmax must lie in 1..={MAX_NMAX}")));
        }
    }
    let tol = match get("tol") {
        Some(s) => s.parse::<f64>().map_err(|_| config_error(format!("bad tolerance `{s}`")))?,
        None => crate::linalg::DEFAULT_TOL,
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(config_error("tolerance must be positive"));
    }
    let seed = match get("seed") {
        Some(s) => s.parse().map_err(|_| config_error(format!("bad seed `{s}`")))?,
        None => 0,
    };
    Ok(ExperimentConfig {
        model,
        window,
        nmax,
        tol,
        observable: get("observable").map(str::to_string),
        target: get("target").map(str::to_string),
        n: get("n").map(parse_n_list).transpose()?,
        gamma: get("gamma").map(|s| s.split(',').map(|g| g.trim().to_string()).collect()),
        subseq: get("subseq").map(parse_i64_list).transpose()?,
        out: get("out").map(PathBuf::from),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_lists() {
        assert_eq!(parse_n_list("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_n_list("3, 5,9").unwrap(), vec![3, 5, 9]);
        assert!(parse_n_list("0..3").is_err());
        assert!(parse_n_list("4..2").is_err());
        assert!(parse_n_list("x").is_err());
    }

    #[test]
    fn file_then_flags() {
        let file = parse_config_text("# run\nmodel = bose\nnmax=3\n\nwindow=0..4\n").unwrap();
        let mut map = file;
        map.extend(flag_map(&ExperimentArgs { nmax: Some(2), ..Default::default() }));
        let c = from_map(&map).unwrap();
        assert_eq!(c.model, Kind::Bose);
        assert_eq!(c.nmax, Some(2));
        assert_eq!(c.window, Some(ModeWindow::new(0, 4).unwrap()));
        assert_eq!(c.tol, 1e-10);
    }

    #[test]
    fn rejects_bad_config() {
        assert!(parse_config_text("colour=red").is_err());
        assert!(parse_config_text("model").is_err());
        let m = |k: &str, v: &str| BTreeMap::from([(k.to_string(), v.to_string())]);
        assert!(from_map(&m("tol", "-1")).is_err());
        assert!(from_map(&m("model", "anyonic")).is_err());
        assert!(from_map(&m("nmax", "0")).is_err());
        assert!(from_map(&m("window", "3..1")).is_err());
    }
}
