//! Engine configuration shared by the metrics, ranking, and store modules.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("preference threshold must be in (0, 1], got {0}")]
    ThresholdOutOfRange(f64),
}

/// How strongly a tag represents a resource.
///
/// `Raw` is the assignment count of the tag on the resource. `Tf` divides
/// that count by the resource's total assignment count, so per-resource
/// values sum to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReprMode {
    #[default]
    Raw,
    Tf,
}

/// Tag vector weights: assignment counts or 0/1 membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorMode {
    #[default]
    Count,
    Binary,
}

impl fmt::Display for ReprMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReprMode::Raw => "raw",
            ReprMode::Tf => "tf",
        })
    }
}

impl fmt::Display for VectorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VectorMode::Count => "count",
            VectorMode::Binary => "binary",
        })
    }
}

/// Scoring parameters. The defaults are the engine's canonical behavior:
/// raw representativeness, count vectors, the 70% preference rule, and the
/// asymmetric combination formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub repr_mode: ReprMode,
    pub vector_mode: VectorMode,
    pub pref_threshold: f64,
    pub symmetric: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            repr_mode: ReprMode::Raw,
            vector_mode: VectorMode::Count,
            pref_threshold: 0.7,
            symmetric: false,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.pref_threshold > 0.0 && self.pref_threshold <= 1.0) {
            return Err(ConfigError::ThresholdOutOfRange(self.pref_threshold));
        }
        Ok(())
    }
}
