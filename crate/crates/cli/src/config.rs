//! Experiment configuration: a flat TOML file merged under command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use concave_core::{Error, Result};

/// Output encoding for data files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Every setting a command may read. Unset fields fall back to the
/// command's defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warn_only: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_grid: Option<String>,
}

pub const DEFAULT_SEED: u64 = 20_130_801;

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidInput(format!("config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Fields set in `self` win over those in `base`.
    pub fn over(self, base: ExperimentConfig) -> ExperimentConfig {
        ExperimentConfig {
            n: self.n.or(base.n),
            n_max: self.n_max.or(base.n_max),
            samples: self.samples.or(base.samples),
            seed: self.seed.or(base.seed),
            tail_eps: self.tail_eps.or(base.tail_eps),
            threshold: self.threshold.or(base.threshold),
            trials: self.trials.or(base.trials),
            out: self.out.or(base.out),
            manifest: self.manifest.or(base.manifest),
            format: self.format.or(base.format),
            workers: self.workers.or(base.workers),
            warn_only: self.warn_only.or(base.warn_only),
            y_grid: self.y_grid.or(base.y_grid),
        }
    }

    /// Rejects non-positive numeric settings.
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidInput(format!("{what} must be positive")));
        if self.n == Some(0) {
            return bad("n");
        }
        if self.samples == Some(0) {
            return bad("samples");
        }
        if self.trials == Some(0) {
            return bad("trials");
        }
        if self.workers == Some(0) {
            return bad("workers");
        }
        if let Some(e) = self.tail_eps {
            if !(e > 0.0 && e < 1.0) {
                return Err(Error::InvalidInput(format!("tail_eps {e} not in (0, 1)")));
            }
        }
        if let Some(t) = self.threshold {
            if !(t > 0.0 && t.is_finite()) {
                return bad("threshold");
            }
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn workers(&self) -> usize {
        self.workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn tail_eps(&self) -> f64 {
        self.tail_eps
            .unwrap_or(concave_core::sampler::DEFAULT_TAIL_EPS)
    }
}

/// Parses `a:b:step` (inclusive range) or a comma-separated list.
pub fn parse_y_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidInput(format!("cannot parse y grid {spec:?}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let grid = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [a, b, step] = parts[..] else {
            return Err(bad());
        };
        let (a, b, step) = (num(a)?, num(b)?, num(step)?);
        if step.is_nan() || step <= 0.0 || b < a {
            return Err(bad());
        }
        let count = ((b - a) / step + 1e-9).floor() as usize;
        (0..=count).map(|i| a + step * i as f64).collect()
    } else {
        spec.split(',').map(num).collect::<Result<Vec<f64>>>()?
    };
    if grid.is_empty() {
        return Err(bad());
    }
    Ok(grid)
}

pub const DEFAULT_Y_GRID: &str = "0.5:3:0.05";
