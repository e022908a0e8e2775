//! Versioned JSON experiment configuration.
//!
//! ```json
//! {"version":1, "group":{"type":"cyclic","N":20}, "experiment":"stationary-h1",
//!  "k":1, "t":1.0, "m":100, "steps":10, "mode":"exact",
//!  "initial_chips":20000, "paper_literal_d10":false}
//! ```
//!
//! Only `version`, `group` and `experiment` are required. Unknown fields
//! are rejected.

use std::path::Path;

use popdyn_core::dynamics::{EvolutionMode, Rounding};
use popdyn_core::GroupSpec;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// `H = (S + S*)/2`, stationary state `psi_k`.
    StationaryH1,
    /// `H = (S + S* + iS - iS*)/4`, stationary state `psi_k`.
    StationaryH2,
    /// `exp(i t H)` on a delta state via the truncated product.
    TimeEvolution,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::StationaryH1 => "stationary-h1",
            ExperimentKind::StationaryH2 => "stationary-h2",
            ExperimentKind::TimeEvolution => "time-evolution",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub version: u32,
    pub group: GroupSpec,
    pub experiment: ExperimentKind,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default = "default_t")]
    pub t: f64,
    #[serde(default = "default_m")]
    pub m: usize,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_mode")]
    pub mode: EvolutionMode,
    #[serde(default = "default_chips")]
    pub initial_chips: u64,
    #[serde(default)]
    pub paper_literal_d10: bool,
    /// How stacks are cut into integer shares in chip mode.
    #[serde(default = "default_rounding")]
    pub rounding: Rounding,
}

fn default_k() -> usize {
    1
}
fn default_t() -> f64 {
    1.0
}
fn default_m() -> usize {
    100
}
fn default_steps() -> usize {
    10
}
fn default_mode() -> EvolutionMode {
    EvolutionMode::Exact
}
fn default_chips() -> u64 {
    20_000
}
fn default_rounding() -> Rounding {
    Rounding::LargestRemainder
}

impl ExperimentConfig {
    /// Defaults for `kind` on `Z_20`.
    pub fn new(kind: ExperimentKind) -> Self {
        Self {
            version: CONFIG_VERSION,
            group: GroupSpec::Cyclic { n: 20 },
            experiment: kind,
            k: default_k(),
            t: default_t(),
            m: default_m(),
            steps: default_steps(),
            mode: default_mode(),
            initial_chips: default_chips(),
            paper_literal_d10: false,
            rounding: default_rounding(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Order `N` of the cyclic base group.
    pub fn n(&self) -> usize {
        match self.group {
            GroupSpec::Cyclic { n } => n,
            GroupSpec::Product { .. } => 0,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.version != CONFIG_VERSION {
            return bad(format!(
                "unsupported config version {} (expected {CONFIG_VERSION})",
                self.version
            ));
        }
        let GroupSpec::Cyclic { n } = self.group else {
            return bad("only cyclic groups are supported".into());
        };
        if n == 0 {
            return bad("group order N must be positive".into());
        }
        if self.k >= n {
            return bad(format!("mode index k = {} is not in Z_{n}", self.k));
        }
        if self.m == 0 {
            return bad("m must be at least 1".into());
        }
        if self.initial_chips == 0 {
            return bad("initial_chips must be at least 1".into());
        }
        if !self.t.is_finite() || self.t <= 0.0 {
            return bad(format!("t must be a positive number, got {}", self.t));
        }
        if self.experiment == ExperimentKind::TimeEvolution && n % 2 != 0 {
            return bad(format!(
                "time evolution starts at N/2 and needs even N, got {n}"
            ));
        }
        Ok(())
    }
}
