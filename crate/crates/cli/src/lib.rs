//! Command-line experiments for decorated population dynamics.

pub mod config;
pub mod error;
pub mod experiment;
pub mod output;

pub use config::{ExperimentConfig, ExperimentKind, CONFIG_VERSION};
pub use error::CliError;
pub use experiment::{run, ExperimentOutput, FidelityReport, ProjectionReport};
