#![allow(dead_code)]

pub mod corpus;
pub mod oracle;

use std::path::PathBuf;

use folkrec::model::Folksonomy;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture_triples() -> Vec<(String, String, String)> {
    [
        ("alice", "ajax", "GW"),
        ("alice", "programming", "GW"),
        ("alice", "web", "GW"),
        ("alice", "google", "GW"),
        ("bob", "ajax", "WK"),
        ("bob", "programming", "WK"),
        ("bob", "web", "WK"),
        ("bob", "java", "WK"),
        ("carol", "web", "SW"),
        ("carol", "mail", "SW"),
    ]
    .iter()
    .map(|&(u, t, r)| (u.to_string(), t.to_string(), r.to_string()))
    .collect()
}

pub fn fixture_folksonomy() -> Folksonomy {
    folksonomy_from(&fixture_triples())
}

pub fn folksonomy_from(triples: &[(String, String, String)]) -> Folksonomy {
    Folksonomy::from_triples(
        triples
            .iter()
            .map(|(u, t, r)| (u.as_str(), t.as_str(), r.as_str())),
    )
    .unwrap()
}

/// Relative-tolerance comparison for scores: |a - b| within `tol` scaled by
/// the larger magnitude (at least 1).
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}
