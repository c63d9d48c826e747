//! Brute-force reference implementation. Every quantity is recomputed by
//! straight-line scans over the raw (user, tag, resource) triple list, with
//! no shared code or indexes from the engine, so agreement between the two
//! is meaningful. Sums run in lexicographic order, mirroring the engine's
//! documented iteration order.

use std::collections::BTreeSet;

use folkrec::config::{EngineConfig, ReprMode, VectorMode};

pub struct Oracle {
    triples: Vec<(String, String, String)>,
}

impl Oracle {
    /// Deduplicates the raw triples, matching the corpus collapse rule.
    pub fn new(raw: &[(String, String, String)]) -> Self {
        let set: BTreeSet<(String, String, String)> = raw.iter().cloned().collect();
        Oracle {
            triples: set.into_iter().collect(),
        }
    }

    pub fn resources(&self) -> Vec<String> {
        self.triples
            .iter()
            .map(|(_, _, r)| r.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn users(&self) -> Vec<String> {
        self.triples
            .iter()
            .map(|(u, _, _)| u.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn tags(&self) -> Vec<String> {
        self.triples
            .iter()
            .map(|(_, t, _)| t.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn tags_of_resource(&self, resource: &str) -> Vec<String> {
        self.triples
            .iter()
            .filter(|(_, _, r)| r == resource)
            .map(|(_, t, _)| t.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    fn assignment_count(&self, tag: &str, resource: &str) -> usize {
        self.triples
            .iter()
            .filter(|(_, t, r)| t == tag && r == resource)
            .count()
    }

    fn resource_total(&self, resource: &str) -> usize {
        self.triples
            .iter()
            .filter(|(_, _, r)| r == resource)
            .count()
    }

    pub fn popularity(&self, tag: &str) -> f64 {
        let with_tag = self
            .triples
            .iter()
            .filter(|(_, t, _)| t == tag)
            .map(|(_, _, r)| r.clone())
            .collect::<BTreeSet<_>>()
            .len();
        with_tag as f64 / self.resources().len() as f64
    }

    pub fn representativeness(&self, tag: &str, resource: &str, mode: ReprMode) -> f64 {
        let count = self.assignment_count(tag, resource);
        match mode {
            ReprMode::Raw => count as f64,
            ReprMode::Tf => {
                let total = self.resource_total(resource);
                if total == 0 {
                    0.0
                } else {
                    count as f64 / total as f64
                }
            }
        }
    }

    pub fn document_score(&self, resource: &str, mode: ReprMode) -> f64 {
        let mut popularity_sum = 0.0;
        let mut representativeness_sum = 0.0;
        for tag in self.tags_of_resource(resource) {
            popularity_sum += self.popularity(&tag);
            representativeness_sum += self.representativeness(&tag, resource, mode);
        }
        popularity_sum * representativeness_sum
    }

    pub fn user_tags(&self, user: &str) -> Vec<String> {
        self.triples
            .iter()
            .filter(|(u, _, _)| u == user)
            .map(|(_, t, _)| t.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn user_resources(&self, user: &str) -> Vec<String> {
        self.triples
            .iter()
            .filter(|(u, _, _)| u == user)
            .map(|(_, _, r)| r.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    fn user_tag_resources(&self, user: &str, tag: &str) -> usize {
        self.triples
            .iter()
            .filter(|(u, t, _)| u == user && t == tag)
            .map(|(_, _, r)| r.clone())
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn affinity(&self, user: &str, tag: &str) -> f64 {
        self.user_tag_resources(user, tag) as f64 / self.user_tags(user).len() as f64
    }

    pub fn preference_set(&self, user: &str, threshold: f64) -> Vec<String> {
        let tags = self.user_tags(user);
        let counts: Vec<usize> = tags
            .iter()
            .map(|t| self.user_tag_resources(user, t))
            .collect();
        let Some(&max) = counts.iter().max() else {
            return Vec::new();
        };
        tags.into_iter()
            .zip(counts)
            .filter(|&(_, count)| count as f64 >= threshold * max as f64)
            .map(|(tag, _)| tag)
            .collect()
    }

    fn vector(&self, resource: &str, mode: VectorMode) -> Vec<(String, f64)> {
        self.tags_of_resource(resource)
            .into_iter()
            .map(|tag| {
                let weight = match mode {
                    VectorMode::Count => self.assignment_count(&tag, resource) as f64,
                    VectorMode::Binary => 1.0,
                };
                (tag, weight)
            })
            .collect()
    }

    pub fn cosine(&self, a: &str, b: &str, mode: VectorMode) -> f64 {
        let va = self.vector(a, mode);
        let vb = self.vector(b, mode);
        if va.is_empty() || vb.is_empty() {
            return 0.0;
        }
        let mut dot = 0.0;
        for (tag, wa) in &va {
            if let Some((_, wb)) = vb.iter().find(|(t, _)| t == tag) {
                dot += wa * wb;
            }
        }
        let norm_a: f64 = va.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
        let norm_b: f64 = vb.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
        (dot / (norm_a * norm_b)).clamp(0.0, 1.0)
    }

    /// Boost for recommending `candidate` to `user`: the winning preference
    /// tag (affinity argmax, ties to the lexicographically smaller tag) and
    /// 1 + its affinity; (None, 1.0) when nothing matches.
    pub fn boost(&self, user: &str, candidate: &str, threshold: f64) -> (Option<String>, f64) {
        let prefs = self.preference_set(user, threshold);
        if prefs.is_empty() {
            return (None, 1.0);
        }
        let mut best: Option<(String, f64)> = None;
        for tag in self.tags_of_resource(candidate) {
            if !prefs.contains(&tag) {
                continue;
            }
            let affinity = self.affinity(user, &tag);
            let better = match &best {
                None => true,
                Some((_, current)) => affinity > *current,
            };
            if better {
                best = Some((tag, affinity));
            }
        }
        match best {
            Some((tag, affinity)) => (Some(tag), 1.0 + affinity),
            None => (None, 1.0),
        }
    }

    pub fn combined(
        &self,
        anchor: &str,
        candidate: &str,
        user: &str,
        cfg: &EngineConfig,
    ) -> (f64, Option<String>) {
        let ds_anchor = self.document_score(anchor, cfg.repr_mode);
        let ds_candidate = self.document_score(candidate, cfg.repr_mode);
        let cos = self.cosine(anchor, candidate, cfg.vector_mode);
        let (boost_tag, boost) = self.boost(user, candidate, cfg.pref_threshold);
        let bracket = if cfg.symmetric {
            (ds_anchor + ds_candidate) * cos
        } else {
            ds_anchor + ds_candidate * cos
        };
        (bracket * boost, boost_tag)
    }

    /// Full recommendation: every unowned candidate scored as the max over
    /// the user's own resources (first anchor wins ties), sorted by score
    /// descending then candidate ascending, truncated to k. Items are
    /// (candidate, anchor, score).
    pub fn recommend(
        &self,
        user: &str,
        k: usize,
        cfg: &EngineConfig,
    ) -> Vec<(String, String, f64)> {
        let owned = self.user_resources(user);
        if owned.is_empty() {
            return Vec::new();
        }
        let mut items = Vec::new();
        for candidate in self.resources() {
            if owned.contains(&candidate) {
                continue;
            }
            let mut best: Option<(String, f64)> = None;
            for anchor in &owned {
                let (score, _) = self.combined(anchor, &candidate, user, cfg);
                let better = match &best {
                    None => true,
                    Some((_, current)) => score > *current,
                };
                if better {
                    best = Some((anchor.clone(), score));
                }
            }
            let (anchor, score) = best.expect("owned is non-empty");
            items.push((candidate, anchor, score));
        }
        items.sort_by(|x, y| y.2.total_cmp(&x.2).then_with(|| x.0.cmp(&y.0)));
        items.truncate(k);
        items
    }
}
