//! Acceptance-replay evaluation: per-participant accepted-recommendation
//! counts in, summary statistics out.

use std::collections::BTreeMap;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvaluationError {
    #[error("acceptance sample is empty")]
    EmptySample,
    #[error("participant {index}: accepted count {count} exceeds set size {set_size}")]
    CountOutOfRange {
        index: usize,
        count: usize,
        set_size: usize,
    },
    #[error("line {line}: expected an accepted count in 0..={set_size}, got {text:?}")]
    InvalidLine {
        line: usize,
        set_size: usize,
        text: String,
    },
    #[error("reading {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// Accepted-recommendation counts, one per participant, each in
/// 0..=set_size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationSample {
    pub accepted_counts: Vec<usize>,
    pub set_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Excellent,
    Satisfactory,
    NeedsReview,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Excellent => "excellent",
            Verdict::Satisfactory => "satisfactory",
            Verdict::NeedsReview => "needs-review",
        })
    }
}

/// Summary statistics over an evaluation sample. `standard_error` is always
/// `sample_std_dev / sqrt(n)`, and `acceptance_rate * n * set_size`
/// recovers the total accepted count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub n: usize,
    pub set_size: usize,
    pub mean: f64,
    pub sample_std_dev: f64,
    pub standard_error: f64,
    pub acceptance_rate: f64,
    pub histogram: BTreeMap<usize, usize>,
    pub above_threshold_fraction: f64,
    pub verdict: Verdict,
}

/// Computes the full report. The sample standard deviation uses the n-1
/// denominator (0 by convention for a single participant); the
/// above-threshold fraction counts participants strictly above the mean;
/// the verdict is excellent at acceptance rate >= 0.80, satisfactory at
/// >= 0.50, needs-review below.
pub fn compute_report(sample: &EvaluationSample) -> Result<EvaluationReport, EvaluationError> {
    if sample.accepted_counts.is_empty() {
        return Err(EvaluationError::EmptySample);
    }
    for (index, &count) in sample.accepted_counts.iter().enumerate() {
        if count > sample.set_size {
            return Err(EvaluationError::CountOutOfRange {
                index,
                count,
                set_size: sample.set_size,
            });
        }
    }

    let n = sample.accepted_counts.len();
    let total: usize = sample.accepted_counts.iter().sum();
    let mean = total as f64 / n as f64;

    let sample_std_dev = if n == 1 {
        0.0
    } else {
        let squared_deviations: f64 = sample
            .accepted_counts
            .iter()
            .map(|&c| {
                let d = c as f64 - mean;
                d * d
            })
            .sum();
        (squared_deviations / (n - 1) as f64).sqrt()
    };
    let standard_error = sample_std_dev / (n as f64).sqrt();

    let acceptance_rate = total as f64 / (n * sample.set_size) as f64;

    let mut histogram: BTreeMap<usize, usize> = (0..=sample.set_size).map(|c| (c, 0)).collect();
    for &count in &sample.accepted_counts {
        *histogram.get_mut(&count).expect("count validated above") += 1;
    }

    let above = sample
        .accepted_counts
        .iter()
        .filter(|&&c| c as f64 > mean)
        .count();
    let above_threshold_fraction = above as f64 / n as f64;

    let verdict = if acceptance_rate >= 0.80 {
        Verdict::Excellent
    } else if acceptance_rate >= 0.50 {
        Verdict::Satisfactory
    } else {
        Verdict::NeedsReview
    };

    Ok(EvaluationReport {
        n,
        set_size: sample.set_size,
        mean,
        sample_std_dev,
        standard_error,
        acceptance_rate,
        histogram,
        above_threshold_fraction,
        verdict,
    })
}

/// Parses an acceptance file: one integer count per line, or CSV
/// `participant_id,count`. Blank lines are skipped. Counts outside
/// 0..=set_size and non-integer lines are fatal, with the line number.
pub fn load_acceptances(path: &Path, set_size: usize) -> Result<EvaluationSample, EvaluationError> {
    let text = std::fs::read_to_string(path).map_err(|source| EvaluationError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_acceptances(&text, set_size)
}

pub fn parse_acceptances(text: &str, set_size: usize) -> Result<EvaluationSample, EvaluationError> {
    let mut accepted_counts = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let invalid = || EvaluationError::InvalidLine {
            line: index + 1,
            set_size,
            text: trimmed.to_string(),
        };
        let count_field = match trimmed.split(',').collect::<Vec<_>>()[..] {
            [count] => count,
            [_participant, count] => count,
            _ => return Err(invalid()),
        };
        let count: usize = count_field.trim().parse().map_err(|_| invalid())?;
        if count > set_size {
            return Err(invalid());
        }
        accepted_counts.push(count);
    }
    Ok(EvaluationSample {
        accepted_counts,
        set_size,
    })
}
