//! Index persistence: a single versioned JSON document holding the config
//! snapshot, corpus statistics, and the canonical assignment list.

use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{ConfigError, EngineConfig};
use crate::model::{Folksonomy, TagAssignment};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("reading {path}")]
    Read {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("writing {path}")]
    Write {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("index is not a valid index document")]
    Json(#[from] serde_json::Error),
    #[error("index has no integer schema_version field")]
    MissingSchemaVersion,
    #[error("index schema version {found} is unsupported (expected {SCHEMA_VERSION})")]
    SchemaVersion { found: u64 },
    #[error("index stats mismatch: {field} recorded as {recorded}, corpus has {actual}")]
    StatsMismatch {
        field: &'static str,
        recorded: usize,
        actual: usize,
    },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub users: usize,
    pub resources: usize,
    pub tags: usize,
    pub assignments: usize,
}

impl CorpusStats {
    pub fn of(f: &Folksonomy) -> Self {
        CorpusStats {
            users: f.user_count(),
            resources: f.resource_count(),
            tags: f.tag_count(),
            assignments: f.assignment_count(),
        }
    }
}

/// On-disk index layout. Assignments are stored sorted by
/// (user, resource, tag); the recorded stats are cross-checked against the
/// rebuilt corpus on load.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndexFile {
    pub schema_version: u64,
    pub config: EngineConfig,
    pub stats: CorpusStats,
    pub assignments: Vec<TagAssignment>,
}

pub fn save_index(path: &Path, f: &Folksonomy, config: &EngineConfig) -> Result<(), StoreError> {
    let index = IndexFile {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        stats: CorpusStats::of(f),
        assignments: f.assignments().to_vec(),
    };
    let mut json = serde_json::to_string_pretty(&index)?;
    json.push('\n');
    std::fs::write(path, json).map_err(|source| StoreError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads an index, rebuilds the corpus, and verifies the schema version,
/// the config, and the recorded stats.
pub fn load_index(path: &Path) -> Result<(Folksonomy, EngineConfig), StoreError> {
    let text = std::fs::read_to_string(path).map_err(|source| StoreError::Read {
        path: path.to_path_buf(),
        source,
    })?;

    let value: serde_json::Value = serde_json::from_str(&text)?;
    let found = value
        .get("schema_version")
        .and_then(serde_json::Value::as_u64)
        .ok_or(StoreError::MissingSchemaVersion)?;
    if found != SCHEMA_VERSION {
        return Err(StoreError::SchemaVersion { found });
    }

    let index: IndexFile = serde_json::from_value(value)?;
    index.config.validate()?;

    let folksonomy = Folksonomy::build(index.assignments);
    let actual = CorpusStats::of(&folksonomy);
    let checks = [
        ("users", index.stats.users, actual.users),
        ("resources", index.stats.resources, actual.resources),
        ("tags", index.stats.tags, actual.tags),
        ("assignments", index.stats.assignments, actual.assignments),
    ];
    for (field, recorded, actual) in checks {
        if recorded != actual {
            return Err(StoreError::StatsMismatch {
                field,
                recorded,
                actual,
            });
        }
    }

    Ok((folksonomy, index.config))
}
