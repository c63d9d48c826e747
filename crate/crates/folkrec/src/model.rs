//! Folksonomy data model: users, tags, resources, assignments, and the
//! immutable indexed corpus every other module queries.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("user id is empty")]
    EmptyUser,
    #[error("resource id is empty")]
    EmptyResource,
    #[error("tag is empty after normalization")]
    EmptyTag,
    #[error("assignment {position}: {cause}")]
    InvalidAssignment {
        position: usize,
        #[source]
        cause: Box<ModelError>,
    },
}

/// Case-sensitive opaque user identifier. Surrounding whitespace is trimmed;
/// the remainder must be non-empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct UserId(String);

impl UserId {
    pub fn new(value: impl AsRef<str>) -> Result<Self, ModelError> {
        let trimmed = value.as_ref().trim();
        if trimmed.is_empty() {
            return Err(ModelError::EmptyUser);
        }
        Ok(UserId(trimmed.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Resource identifier, canonically a URI. Doubles as the deterministic
/// tie-break key (lexicographic by code point) throughout the engine.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ResourceId(String);

impl ResourceId {
    pub fn new(value: impl AsRef<str>) -> Result<Self, ModelError> {
        let trimmed = value.as_ref().trim();
        if trimmed.is_empty() {
            return Err(ModelError::EmptyResource);
        }
        Ok(ResourceId(trimmed.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// A normalized tag. Construction applies the syntactic normalization rules
/// (trim, Unicode lowercase, internal whitespace runs become a single
/// hyphen), so every stored `Tag` is already in canonical form and
/// re-normalizing is a no-op.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Tag(String);

impl Tag {
    pub fn new(raw: impl AsRef<str>) -> Result<Self, ModelError> {
        let normalized = normalize(raw.as_ref());
        if normalized.is_empty() {
            return Err(ModelError::EmptyTag);
        }
        Ok(Tag(normalized))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

fn normalize(raw: &str) -> String {
    let lowered = raw.trim().to_lowercase();
    let mut out = String::with_capacity(lowered.len());
    let mut in_whitespace = false;
    for ch in lowered.chars() {
        if ch.is_whitespace() {
            in_whitespace = true;
        } else {
            if in_whitespace && !out.is_empty() {
                out.push('-');
            }
            in_whitespace = false;
            out.push(ch);
        }
    }
    out
}

macro_rules! string_newtype_impls {
    ($ty:ident) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl TryFrom<String> for $ty {
            type Error = ModelError;
            fn try_from(value: String) -> Result<Self, Self::Error> {
                $ty::new(value)
            }
        }

        impl From<$ty> for String {
            fn from(value: $ty) -> String {
                value.0
            }
        }
    };
}

string_newtype_impls!(UserId);
string_newtype_impls!(ResourceId);
string_newtype_impls!(Tag);

/// One (user, tag, resource) triple of the tagging relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TagAssignment {
    pub user: UserId,
    pub tag: Tag,
    pub resource: ResourceId,
}

impl TagAssignment {
    pub fn new(user: UserId, tag: Tag, resource: ResourceId) -> Self {
        TagAssignment {
            user,
            tag,
            resource,
        }
    }
}

// Canonical order is (user, resource, tag); it is also the on-disk order of
// the index file.
impl Ord for TagAssignment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.user, &self.resource, &self.tag).cmp(&(&other.user, &other.resource, &other.tag))
    }
}

impl PartialOrd for TagAssignment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

static EMPTY_TAG_COUNTS: BTreeMap<Tag, usize> = BTreeMap::new();
static EMPTY_RESOURCES: BTreeSet<ResourceId> = BTreeSet::new();

/// Immutable indexed corpus of tag assignments.
///
/// Duplicate (user, tag, resource) triples collapse to a single assignment:
/// a user's tag on a bookmark is a set membership, not a count. All indexes
/// are derived from the deduplicated multiset at build time and the corpus
/// never changes afterwards, so it is safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Folksonomy {
    assignments: Vec<TagAssignment>,
    tags_of_resource: BTreeMap<ResourceId, BTreeMap<Tag, usize>>,
    resources_of_tag: BTreeMap<Tag, BTreeSet<ResourceId>>,
    tags_of_user: BTreeMap<UserId, BTreeMap<Tag, usize>>,
    resources_of_user: BTreeMap<UserId, BTreeSet<ResourceId>>,
    vocabulary: Vec<Tag>,
}

impl Folksonomy {
    /// Builds the indexed corpus from valid assignments. Input order is
    /// irrelevant: the same multiset always yields an identical corpus,
    /// including vocabulary order (lexicographic by tag value).
    pub fn build(assignments: impl IntoIterator<Item = TagAssignment>) -> Self {
        let deduped: BTreeSet<TagAssignment> = assignments.into_iter().collect();

        let mut tags_of_resource: BTreeMap<ResourceId, BTreeMap<Tag, usize>> = BTreeMap::new();
        let mut resources_of_tag: BTreeMap<Tag, BTreeSet<ResourceId>> = BTreeMap::new();
        let mut tags_of_user: BTreeMap<UserId, BTreeMap<Tag, BTreeSet<ResourceId>>> =
            BTreeMap::new();
        let mut resources_of_user: BTreeMap<UserId, BTreeSet<ResourceId>> = BTreeMap::new();

        for a in &deduped {
            *tags_of_resource
                .entry(a.resource.clone())
                .or_default()
                .entry(a.tag.clone())
                .or_insert(0) += 1;
            resources_of_tag
                .entry(a.tag.clone())
                .or_default()
                .insert(a.resource.clone());
            tags_of_user
                .entry(a.user.clone())
                .or_default()
                .entry(a.tag.clone())
                .or_default()
                .insert(a.resource.clone());
            resources_of_user
                .entry(a.user.clone())
                .or_default()
                .insert(a.resource.clone());
        }

        let tags_of_user = tags_of_user
            .into_iter()
            .map(|(user, per_tag)| {
                let counts = per_tag.into_iter().map(|(t, rs)| (t, rs.len())).collect();
                (user, counts)
            })
            .collect();

        let vocabulary: Vec<Tag> = resources_of_tag.keys().cloned().collect();

        Folksonomy {
            assignments: deduped.into_iter().collect(),
            tags_of_resource,
            resources_of_tag,
            tags_of_user,
            resources_of_user,
            vocabulary,
        }
    }

    /// Builds a corpus from raw (user, tag, resource) string triples,
    /// rejecting any triple with an empty field and reporting its position.
    pub fn from_triples<S: AsRef<str>>(
        triples: impl IntoIterator<Item = (S, S, S)>,
    ) -> Result<Self, ModelError> {
        let mut assignments = Vec::new();
        for (position, (user, tag, resource)) in triples.into_iter().enumerate() {
            let wrap = |cause: ModelError| ModelError::InvalidAssignment {
                position,
                cause: Box::new(cause),
            };
            assignments.push(TagAssignment::new(
                UserId::new(user).map_err(wrap)?,
                Tag::new(tag).map_err(wrap)?,
                ResourceId::new(resource).map_err(wrap)?,
            ));
        }
        Ok(Self::build(assignments))
    }

    /// Deduplicated assignments in canonical (user, resource, tag) order.
    pub fn assignments(&self) -> &[TagAssignment] {
        &self.assignments
    }

    pub fn assignment_count(&self) -> usize {
        self.assignments.len()
    }

    pub fn resource_count(&self) -> usize {
        self.tags_of_resource.len()
    }

    pub fn user_count(&self) -> usize {
        self.resources_of_user.len()
    }

    pub fn tag_count(&self) -> usize {
        self.vocabulary.len()
    }

    /// All tags in the corpus, lexicographically ordered. This is the
    /// dimension order of every tag vector.
    pub fn vocabulary(&self) -> &[Tag] {
        &self.vocabulary
    }

    pub fn resources(&self) -> impl Iterator<Item = &ResourceId> {
        self.tags_of_resource.keys()
    }

    pub fn users(&self) -> impl Iterator<Item = &UserId> {
        self.resources_of_user.keys()
    }

    /// Assignment count per tag for one resource. Empty for unknown resources.
    pub fn tags_of(&self, resource: &ResourceId) -> &BTreeMap<Tag, usize> {
        self.tags_of_resource
            .get(resource)
            .unwrap_or(&EMPTY_TAG_COUNTS)
    }

    /// Total assignments on one resource (the term-frequency denominator).
    pub fn resource_assignment_total(&self, resource: &ResourceId) -> usize {
        self.tags_of(resource).values().sum()
    }

    pub fn resources_of_tag(&self, tag: &Tag) -> &BTreeSet<ResourceId> {
        self.resources_of_tag.get(tag).unwrap_or(&EMPTY_RESOURCES)
    }

    /// Distinct-resource usage count per tag for one user.
    pub fn tags_of_user(&self, user: &UserId) -> &BTreeMap<Tag, usize> {
        self.tags_of_user.get(user).unwrap_or(&EMPTY_TAG_COUNTS)
    }

    pub fn resources_of_user(&self, user: &UserId) -> &BTreeSet<ResourceId> {
        self.resources_of_user.get(user).unwrap_or(&EMPTY_RESOURCES)
    }

    /// Number of distinct resources that `user` tagged with `tag`.
    pub fn user_tag_document_count(&self, user: &UserId, tag: &Tag) -> usize {
        self.tags_of_user(user).get(tag).copied().unwrap_or(0)
    }
}
