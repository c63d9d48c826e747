//! folkrec: a personalized tag-based recommender over folksonomy corpora.
//!
//! A corpus is a set of (user, tag, resource) assignments, as produced by
//! social bookmarking. Resources are ranked for a user by combining cosine
//! similarity over tag vectors with three corpus factors: tag popularity,
//! tag representativeness, and the user's affinity to their own preferred
//! tags. The `evaluation` module replays recorded acceptance judgments and
//! computes the summary statistics used to assess recommendation quality.
//!
//! Pipeline: [`ingest`] parses bookmark files into assignments, [`model`]
//! indexes them into an immutable [`model::Folksonomy`], [`metrics`] and
//! [`ranking`] score and rank candidates, [`store`] persists the index, and
//! the `folkrec` binary ties it all together.

pub mod config;
pub mod evaluation;
pub mod ingest;
pub mod metrics;
pub mod model;
pub mod ranking;
pub mod store;
