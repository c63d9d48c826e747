//! Seeded random corpus and config generation for equivalence and
//! invariant testing.

use folkrec::config::{EngineConfig, ReprMode, VectorMode};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random small corpus: at most 5 users, 12 tags, 10 resources, with 1 to
/// 60 raw triples (duplicates included, as in real exports). Identifiers
/// are zero-padded so lexicographic and numeric order coincide.
pub fn random_triples(seed: u64) -> Vec<(String, String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let users = rng.random_range(1..=5);
    let tags = rng.random_range(1..=12);
    let resources = rng.random_range(1..=10);
    let triples = rng.random_range(1..=60);
    (0..triples)
        .map(|_| {
            (
                format!("u{}", rng.random_range(0..users)),
                format!("t{:02}", rng.random_range(0..tags)),
                format!("r{:02}", rng.random_range(0..resources)),
            )
        })
        .collect()
}

/// Random engine config drawn from the full option space.
pub fn random_config(seed: u64) -> EngineConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0f1_9000_0000);
    EngineConfig {
        repr_mode: if rng.random_bool(0.5) {
            ReprMode::Raw
        } else {
            ReprMode::Tf
        },
        vector_mode: if rng.random_bool(0.5) {
            VectorMode::Count
        } else {
            VectorMode::Binary
        },
        pref_threshold: [0.3, 0.5, 0.7, 1.0][rng.random_range(0..4)],
        symmetric: rng.random_bool(0.5),
    }
}

/// A synthetic corpus at the evaluation-scale shape: exactly `resources`
/// bookmarks over `users` users, with 100 shared topic tags plus enough
/// unique niche tags to reach `distinct_tags` in total.
pub fn scale_corpus_jsonl(resources: usize, distinct_tags: usize, users: usize) -> String {
    assert!(distinct_tags > 100, "need room for the 100 topic tags");
    let niche_total = distinct_tags - 100;
    let base = niche_total / resources;
    let extra = niche_total % resources;

    let mut out = String::new();
    let mut niche = 0usize;
    for i in 0..resources {
        let user = format!("user{:02}", i % users);
        let uri = format!("https://example.org/page/{i:04}");
        let mut tags = vec![
            format!("topic-{:03}", (i * 7) % 100),
            format!("topic-{:03}", (i * 13 + 1) % 100),
        ];
        let niche_here = base + usize::from(i < extra);
        for _ in 0..niche_here {
            tags.push(format!("niche-{niche:05}"));
            niche += 1;
        }
        let tags_json: Vec<String> = tags.iter().map(|t| format!("\"{t}\"")).collect();
        out.push_str(&format!(
            "{{\"user\":\"{user}\",\"uri\":\"{uri}\",\"tags\":[{}]}}\n",
            tags_json.join(",")
        ));
    }
    out
}
