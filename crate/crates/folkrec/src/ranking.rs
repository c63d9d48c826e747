//! Tag vectors, cosine similarity, the combined similarity score, and
//! personalized top-k recommendation.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::config::{EngineConfig, VectorMode};
use crate::metrics::{self, MetricsError};
use crate::model::{Folksonomy, ResourceId, Tag, UserId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RankingError {
    #[error("cannot compare resource {0} with itself")]
    SelfComparison(ResourceId),
    #[error("top-k must be at least 1")]
    ZeroK,
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// Sparse tag vector of a resource. Dimension order is the corpus
/// vocabulary order; zero-weight entries are never stored.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TagVector {
    pub resource: ResourceId,
    pub entries: BTreeMap<Tag, f64>,
}

/// The inputs that produced one score. `combine` recomputes the score
/// bit-for-bit, which keeps every rendered score explainable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorBreakdown {
    pub ds_anchor: f64,
    pub ds_candidate: f64,
    pub cosine: f64,
    pub boost_tag: Option<Tag>,
    pub boost: f64,
}

impl FactorBreakdown {
    /// Combination formula. Asymmetric: [Ds_anchor + Ds_candidate × cos] ×
    /// boost. Symmetric variant: (Ds_anchor + Ds_candidate) × cos × boost.
    pub fn combine(&self, symmetric: bool) -> f64 {
        let bracket = if symmetric {
            (self.ds_anchor + self.ds_candidate) * self.cosine
        } else {
            self.ds_anchor + self.ds_candidate * self.cosine
        };
        bracket * self.boost
    }
}

/// One candidate scored against one of the user's own bookmarks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoredCandidate {
    pub candidate: ResourceId,
    pub anchor: ResourceId,
    pub score: f64,
    pub factors: FactorBreakdown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecommendationList {
    pub user: UserId,
    pub k: usize,
    pub items: Vec<ScoredCandidate>,
}

pub fn tag_vector(resource: &ResourceId, f: &Folksonomy, mode: VectorMode) -> TagVector {
    let entries = f
        .tags_of(resource)
        .iter()
        .map(|(tag, &count)| {
            let weight = match mode {
                VectorMode::Count => count as f64,
                VectorMode::Binary => 1.0,
            };
            (tag.clone(), weight)
        })
        .collect();
    TagVector {
        resource: resource.clone(),
        entries,
    }
}

/// Cosine of the angle between two nonnegative sparse vectors, in [0, 1].
/// Zero when either vector is empty.
pub fn cosine(a: &TagVector, b: &TagVector) -> f64 {
    if a.entries.is_empty() || b.entries.is_empty() {
        return 0.0;
    }
    let mut dot = 0.0;
    for (tag, wa) in &a.entries {
        if let Some(wb) = b.entries.get(tag) {
            dot += wa * wb;
        }
    }
    let norm_a: f64 = a.entries.values().map(|w| w * w).sum::<f64>().sqrt();
    let norm_b: f64 = b.entries.values().map(|w| w * w).sum::<f64>().sqrt();
    (dot / (norm_a * norm_b)).clamp(0.0, 1.0)
}

/// Preference boost for recommending `candidate` to `user`: 1 + affinity of
/// the user's best preference tag present on the candidate, or a neutral 1
/// when no preference tag matches (or the user has no assignments). Affinity
/// ties break to the lexicographically smallest tag.
fn preference_boost(
    user: &UserId,
    candidate: &ResourceId,
    f: &Folksonomy,
    threshold: f64,
) -> (Option<Tag>, f64) {
    let prefs = metrics::preference_set(user, f, threshold);
    if prefs.is_empty() {
        return (None, 1.0);
    }
    let mut best: Option<(Tag, f64)> = None;
    for tag in f.tags_of(candidate).keys() {
        if !prefs.contains(tag) {
            continue;
        }
        let affinity = metrics::affinity(user, tag, f)
            .expect("non-empty preference set implies the user has assignments");
        let better = match &best {
            None => true,
            Some((_, current)) => affinity > *current,
        };
        if better {
            best = Some((tag.clone(), affinity));
        }
    }
    match best {
        Some((tag, affinity)) => (Some(tag), 1.0 + affinity),
        None => (None, 1.0),
    }
}

/// Scores `candidate` against the user's bookmark `anchor` with the full
/// factor breakdown attached.
pub fn combined_similarity(
    anchor: &ResourceId,
    candidate: &ResourceId,
    user: &UserId,
    f: &Folksonomy,
    cfg: &EngineConfig,
) -> Result<ScoredCandidate, RankingError> {
    if anchor == candidate {
        return Err(RankingError::SelfComparison(anchor.clone()));
    }
    let ds_anchor = metrics::document_score(anchor, f, cfg.repr_mode)?.score;
    let ds_candidate = metrics::document_score(candidate, f, cfg.repr_mode)?.score;
    let cos = cosine(
        &tag_vector(anchor, f, cfg.vector_mode),
        &tag_vector(candidate, f, cfg.vector_mode),
    );
    let (boost_tag, boost) = preference_boost(user, candidate, f, cfg.pref_threshold);
    let factors = FactorBreakdown {
        ds_anchor,
        ds_candidate,
        cosine: cos,
        boost_tag,
        boost,
    };
    let score = factors.combine(cfg.symmetric);
    Ok(ScoredCandidate {
        candidate: candidate.clone(),
        anchor: anchor.clone(),
        score,
        factors,
    })
}

/// Top-k recommendations for a user: every resource the user has not
/// bookmarked, scored as the maximum combined similarity over the user's
/// own bookmarks, ordered by score descending with ties broken by resource
/// id ascending. A user with no bookmarks gets an empty list.
pub fn recommend(
    user: &UserId,
    f: &Folksonomy,
    k: usize,
    cfg: &EngineConfig,
) -> Result<RecommendationList, RankingError> {
    if k == 0 {
        return Err(RankingError::ZeroK);
    }
    let owned = f.resources_of_user(user);
    if owned.is_empty() {
        return Ok(RecommendationList {
            user: user.clone(),
            k,
            items: Vec::new(),
        });
    }

    let mut scores: BTreeMap<&ResourceId, f64> = BTreeMap::new();
    let mut vectors: BTreeMap<&ResourceId, TagVector> = BTreeMap::new();
    for r in f.resources() {
        scores.insert(r, metrics::document_score(r, f, cfg.repr_mode)?.score);
        vectors.insert(r, tag_vector(r, f, cfg.vector_mode));
    }

    let mut items = Vec::new();
    for candidate in f.resources() {
        if owned.contains(candidate) {
            continue;
        }
        let (boost_tag, boost) = preference_boost(user, candidate, f, cfg.pref_threshold);
        let mut best: Option<ScoredCandidate> = None;
        for anchor in owned {
            let factors = FactorBreakdown {
                ds_anchor: scores[anchor],
                ds_candidate: scores[candidate],
                cosine: cosine(&vectors[anchor], &vectors[candidate]),
                boost_tag: boost_tag.clone(),
                boost,
            };
            let score = factors.combine(cfg.symmetric);
            let better = match &best {
                None => true,
                Some(current) => score > current.score,
            };
            if better {
                best = Some(ScoredCandidate {
                    candidate: candidate.clone(),
                    anchor: anchor.clone(),
                    score,
                    factors,
                });
            }
        }
        items.extend(best);
    }

    items.sort_by(|x, y| {
        y.score
            .total_cmp(&x.score)
            .then_with(|| x.candidate.cmp(&y.candidate))
    });
    items.truncate(k);
    Ok(RecommendationList {
        user: user.clone(),
        k,
        items,
    })
}
