use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Dimension of W.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Scalar arithmetic.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for random-input checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Identity-check tolerance; float mode only.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// JSON file with any of the keys n, mode, format, out, seed, tol.
    /// Command line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    n: Option<usize>,
    mode: Option<Mode>,
    format: Option<Format>,
    out: Option<PathBuf>,
    seed: Option<u64>,
    tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub mode: Mode,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub tol: Option<f64>,
}

/// Invalid invocation; reported with exit status 64.
#[derive(Debug)]
pub struct UsageError(pub String);

fn read_config(path: &Path) -> Result<FileConfig, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("bad config {}: {e}", path.display())))
}

impl RunConfig {
    pub fn resolve(args: &GlobalArgs, default_n: usize) -> Result<Self, UsageError> {
        let file = match &args.config {
            Some(p) => read_config(p)?,
            None => FileConfig::default(),
        };
        let cfg = RunConfig {
            n: args.n.or(file.n).unwrap_or(default_n),
            mode: args.mode.or(file.mode).unwrap_or(Mode::Exact),
            format: args.format.or(file.format).unwrap_or(Format::Json),
            out: args.out.clone().or(file.out),
            seed: args.seed.or(file.seed).unwrap_or(0),
            tol: args.tol.or(file.tol),
        };
        if let Some(t) = cfg.tol {
            if cfg.mode == Mode::Exact {
                return Err(UsageError("--tol only applies with --mode float".into()));
            }
            if !(t.is_finite() && t > 0.0) {
                return Err(UsageError(format!("--tol {t} must be positive")));
            }
        }
        Ok(cfg)
    }

    pub fn exact(&self) -> bool {
        self.mode == Mode::Exact
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn flags_override_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, r#"{{"n": 5, "mode": "float", "seed": 9}}"#).unwrap();
        let args = GlobalArgs { n: Some(4), config: Some(f.path().to_path_buf()), ..Default::default() };
        let cfg = RunConfig::resolve(&args, 3).unwrap();
        assert_eq!((cfg.n, cfg.mode, cfg.seed), (4, Mode::Float, 9));
    }

    #[test]
    fn exact_rejects_tolerance() {
        let args = GlobalArgs { tol: Some(1e-6), ..Default::default() };
        assert!(RunConfig::resolve(&args, 3).is_err());
        let args = GlobalArgs { tol: Some(1e-6), mode: Some(Mode::Float), ..Default::default() };
        assert_eq!(RunConfig::resolve(&args, 3).unwrap().tol, Some(1e-6));
    }
}
