//! The four per-corpus factors behind the combined similarity: tag
//! popularity, tag representativeness, document score, and user-tag
//! affinity, plus the 70%-rule preference set.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::config::ReprMode;
use crate::model::{Folksonomy, ResourceId, Tag, UserId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("corpus has no resources")]
    EmptyCorpus,
    #[error("user {0} has no tag assignments")]
    NoAssignments(UserId),
}

/// A resource's standalone score: the product of its summed tag
/// popularities and summed tag representativeness values. Zero only for a
/// tagless resource.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DocumentScore {
    pub resource: ResourceId,
    pub score: f64,
}

/// Per-user tag usage summary and the preference set derived from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserProfile {
    pub user: UserId,
    pub tag_counts: BTreeMap<Tag, usize>,
    pub distinct_tag_count: usize,
    pub preference_set: BTreeSet<Tag>,
}

/// Fraction of all resources carrying the tag, in [0, 1]. Zero for a tag
/// absent from the corpus.
pub fn popularity(tag: &Tag, f: &Folksonomy) -> Result<f64, MetricsError> {
    if f.resource_count() == 0 {
        return Err(MetricsError::EmptyCorpus);
    }
    Ok(popularity_ratio(tag, f))
}

fn popularity_ratio(tag: &Tag, f: &Folksonomy) -> f64 {
    f.resources_of_tag(tag).len() as f64 / f.resource_count() as f64
}

/// How strongly `tag` characterizes `resource`. Raw mode is the assignment
/// count; tf mode divides by the resource's total assignment count (0 for a
/// tagless resource, so no division happens).
pub fn representativeness(tag: &Tag, resource: &ResourceId, f: &Folksonomy, mode: ReprMode) -> f64 {
    let count = f.tags_of(resource).get(tag).copied().unwrap_or(0);
    match mode {
        ReprMode::Raw => count as f64,
        ReprMode::Tf => {
            let total = f.resource_assignment_total(resource);
            if total == 0 {
                0.0
            } else {
                count as f64 / total as f64
            }
        }
    }
}

/// Document score: (Σ popularity of the resource's tags) × (Σ their
/// representativeness). Tags absent from the resource contribute zero to
/// both sums, so summing over its own tags and over the whole vocabulary
/// coincide. Sums run in vocabulary (lexicographic) order.
pub fn document_score(
    resource: &ResourceId,
    f: &Folksonomy,
    mode: ReprMode,
) -> Result<DocumentScore, MetricsError> {
    if f.resource_count() == 0 {
        return Err(MetricsError::EmptyCorpus);
    }
    let mut popularity_sum = 0.0;
    let mut representativeness_sum = 0.0;
    for tag in f.tags_of(resource).keys() {
        popularity_sum += popularity_ratio(tag, f);
        representativeness_sum += representativeness(tag, resource, f, mode);
    }
    Ok(DocumentScore {
        resource: resource.clone(),
        score: popularity_sum * representativeness_sum,
    })
}

/// Distinct resources the user tagged with `tag`, divided by the user's
/// distinct tag count. Errors for a user with no assignments at all; the
/// ranking layer maps that to a neutral boost.
pub fn affinity(user: &UserId, tag: &Tag, f: &Folksonomy) -> Result<f64, MetricsError> {
    let tags = f.tags_of_user(user);
    if tags.is_empty() {
        return Err(MetricsError::NoAssignments(user.clone()));
    }
    Ok(f.user_tag_document_count(user, tag) as f64 / tags.len() as f64)
}

/// Tags whose distinct-resource usage count reaches `threshold` times the
/// user's maximum count. Empty exactly when the user has no tags: a user
/// without tags has no clear preference.
pub fn preference_set(user: &UserId, f: &Folksonomy, threshold: f64) -> BTreeSet<Tag> {
    assert!(
        threshold > 0.0 && threshold <= 1.0,
        "preference threshold must be in (0, 1], got {threshold}"
    );
    let counts = f.tags_of_user(user);
    let Some(max) = counts.values().copied().max() else {
        return BTreeSet::new();
    };
    counts
        .iter()
        .filter(|&(_, &count)| count as f64 >= threshold * max as f64)
        .map(|(tag, _)| tag.clone())
        .collect()
}

pub fn user_profile(user: &UserId, f: &Folksonomy, threshold: f64) -> UserProfile {
    let tag_counts = f.tags_of_user(user).clone();
    UserProfile {
        user: user.clone(),
        distinct_tag_count: tag_counts.len(),
        preference_set: preference_set(user, f, threshold),
        tag_counts,
    }
}
