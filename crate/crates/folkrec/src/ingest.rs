//! Corpus ingestion: parses bookmark files into tag assignments and applies
//! syntactic tag normalization.
//!
//! Two line-oriented formats are supported. JSONL carries one record per
//! line: `{"user": ..., "uri": ..., "tags": [...], "timestamp": optional}`.
//! TSV carries `user<TAB>uri<TAB>tag,tag,...`. Blank lines are ignored.
//! Malformed records are skipped and reported, never fatal; only an
//! unreadable file is.

use std::io;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{ModelError, ResourceId, Tag, TagAssignment, UserId};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("reading {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum InputFormat {
    #[default]
    Jsonl,
    Tsv,
}

/// One bookmark: a user, a resource, and the raw tags attached to it.
/// Timestamps are parsed and ignored.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct BookmarkRecord {
    pub user: String,
    pub uri: String,
    pub tags: Vec<String>,
    #[serde(default)]
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedRecord {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedTag {
    pub line: usize,
    pub raw: String,
}

/// Outcome accounting for one parse run. For accepted records,
/// `assignments_emitted + tags_rejected` equals the number of raw tags seen.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReport {
    pub lines_total: usize,
    pub records_accepted: usize,
    pub records_skipped: usize,
    pub assignments_emitted: usize,
    pub tags_rejected: usize,
    pub skipped_records: Vec<SkippedRecord>,
    pub rejected_tags: Vec<RejectedTag>,
}

/// Normalizes a raw tag: trim, lowercase, collapse internal whitespace runs
/// to a single hyphen. Rejects tags that are empty afterwards. No spelling
/// correction and no synonym folding; "web2.0" and "web-2.0" stay distinct.
pub fn normalize_tag(raw: &str) -> Result<Tag, ModelError> {
    Tag::new(raw)
}

/// Reads and parses a corpus file. Only I/O failure is an error; everything
/// else lands in the report.
pub fn load_corpus(
    path: &Path,
    format: InputFormat,
) -> Result<(Vec<TagAssignment>, IngestReport), IngestError> {
    let text = std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(parse_corpus(&text, format))
}

/// Parses corpus text. Each accepted record yields one assignment per
/// normalized tag; raw tags that normalize to empty are rejected
/// individually without sinking their record.
pub fn parse_corpus(text: &str, format: InputFormat) -> (Vec<TagAssignment>, IngestReport) {
    let mut assignments = Vec::new();
    let mut report = IngestReport::default();

    for (index, line) in text.lines().enumerate() {
        let line_no = index + 1;
        if line.trim().is_empty() {
            continue;
        }
        report.lines_total += 1;

        let record = match parse_record(line, format) {
            Ok(record) => record,
            Err(reason) => {
                report.records_skipped += 1;
                report.skipped_records.push(SkippedRecord {
                    line: line_no,
                    reason,
                });
                continue;
            }
        };

        let (user, resource) = match validate_record(&record) {
            Ok(ids) => ids,
            Err(reason) => {
                report.records_skipped += 1;
                report.skipped_records.push(SkippedRecord {
                    line: line_no,
                    reason,
                });
                continue;
            }
        };

        report.records_accepted += 1;
        for raw in &record.tags {
            match normalize_tag(raw) {
                Ok(tag) => {
                    assignments.push(TagAssignment::new(user.clone(), tag, resource.clone()));
                    report.assignments_emitted += 1;
                }
                Err(_) => {
                    report.tags_rejected += 1;
                    report.rejected_tags.push(RejectedTag {
                        line: line_no,
                        raw: raw.clone(),
                    });
                }
            }
        }
    }

    (assignments, report)
}

fn parse_record(line: &str, format: InputFormat) -> Result<BookmarkRecord, String> {
    match format {
        InputFormat::Jsonl => {
            serde_json::from_str(line).map_err(|e| format!("invalid JSON record: {e}"))
        }
        InputFormat::Tsv => {
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(format!(
                    "expected 3 tab-separated fields (user, uri, tags), got {}",
                    fields.len()
                ));
            }
            let tags = if fields[2].trim().is_empty() {
                Vec::new()
            } else {
                fields[2].split(',').map(str::to_string).collect()
            };
            Ok(BookmarkRecord {
                user: fields[0].to_string(),
                uri: fields[1].to_string(),
                tags,
                timestamp: None,
            })
        }
    }
}

fn validate_record(record: &BookmarkRecord) -> Result<(UserId, ResourceId), String> {
    let user = UserId::new(&record.user).map_err(|_| "empty user".to_string())?;
    let resource = ResourceId::new(&record.uri).map_err(|_| "empty uri".to_string())?;
    if record.tags.is_empty() {
        return Err("empty tags list".to_string());
    }
    Ok((user, resource))
}
