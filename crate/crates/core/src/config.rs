use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::env::ArmSet;
use crate::error::{Error, Result};
use crate::policy::{PolicyKind, PolicyParams};

/// First mean vector used in the reference experiments.
pub const MU1: [f64; 10] = [0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.01];
/// Second, flatter mean vector.
pub const MU2: [f64; 10] = [0.7, 0.68, 0.66, 0.64, 0.62, 0.4, 0.38, 0.36, 0.34, 0.32];

/// A single connectivity or a list to sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaSpec {
    Single(f64),
    Sweep(Vec<f64>),
}

impl AlphaSpec {
    pub fn values(&self) -> Vec<f64> {
        match self {
            AlphaSpec::Single(a) => vec![*a],
            AlphaSpec::Sweep(v) => v.clone(),
        }
    }

    /// `0, 0.1, ..., 1.0`, computed as `i / 10` so every entry is exact to the ulp.
    pub fn default_sweep() -> Self {
        AlphaSpec::Sweep((0..=10).map(|i| i as f64 / 10.0).collect())
    }
}

impl Default for AlphaSpec {
    fn default() -> Self {
        Self::default_sweep()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::config(format!(
                "unknown format {other:?} (expected csv or json)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub means: Vec<f64>,
    pub n_players: usize,
    pub algorithm: PolicyKind,
    pub alpha: AlphaSpec,
    pub turns: usize,
    pub repetitions: usize,
    pub base_seed: u64,
    /// Spacing of the turn checkpoints reported by regret curves.
    pub checkpoint_every: usize,
    pub policy: PolicyParams,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            means: MU1.to_vec(),
            n_players: 5,
            algorithm: PolicyKind::Thompson,
            alpha: AlphaSpec::default(),
            turns: 5000,
            repetitions: 50,
            base_seed: 2017,
            checkpoint_every: 100,
            policy: PolicyParams::default(),
            output: None,
            format: OutputFormat::Csv,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            path: PathBuf::from("<inline>"),
            message: e.to_string(),
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Read {
            path: path.to_owned(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_owned(),
            message: e.to_string(),
        })
    }

    pub fn arms(&self) -> Result<ArmSet> {
        ArmSet::new(self.means.clone())
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.alpha.values()
    }

    pub fn validate(&self) -> Result<()> {
        let arms = self.arms()?;
        arms.check_players(self.n_players)?;
        if self.turns < arms.len() {
            return Err(Error::config(format!(
                "turns ({}) must be at least the arm count ({})",
                self.turns,
                arms.len()
            )));
        }
        if self.repetitions == 0 {
            return Err(Error::config("repetitions must be at least 1"));
        }
        if self.checkpoint_every == 0 {
            return Err(Error::config("checkpoint spacing must be at least 1"));
        }
        let alphas = self.alphas();
        if alphas.is_empty() {
            return Err(Error::config("alpha list is empty"));
        }
        if let Some(a) = alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(Error::config(format!("alpha {a} outside [0, 1]")));
        }
        self.policy.validate()
    }

    /// Turns at which curves are reported: every `checkpoint_every`, plus the last.
    pub fn checkpoints(&self) -> Vec<usize> {
        let mut points: Vec<usize> = (1..)
            .map(|i| i * self.checkpoint_every)
            .take_while(|&t| t <= self.turns)
            .collect();
        if points.last() != Some(&self.turns) {
            points.push(self.turns);
        }
        points
    }
}

/// Parses `"0.9, 0.8,0.7"`.
pub fn parse_float_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::config(format!("bad number {t:?}: {e}")))
        })
        .collect()
}
