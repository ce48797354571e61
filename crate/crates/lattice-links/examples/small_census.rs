//! Exhaustive census of lattice links by stick count.
//!
//! Enumerates every link up to the given total number of sticks (default 10),
//! classifies each one, and prints which link types appear at each size plus
//! a first-appearance table.
//!
//!     cargo run --example small_census -- 10

use lattice_links::{classify, enumerate_leveled, profiles_for, SearchMode};
use std::collections::BTreeMap;
use std::time::Instant;

fn main() {
    let max: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(10);
    let mut first_seen: BTreeMap<String, usize> = BTreeMap::new();
    for n in 4..=max {
        let started = Instant::now();
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for profile in profiles_for(n, None, SearchMode::Unconstrained) {
            for link in enumerate_leveled(&profile, SearchMode::Unconstrained) {
                let label = match classify(&link) {
                    Ok(t) => t.to_string(),
                    Err(e) => format!("unclassifiable ({e})"),
                };
                *counts.entry(label.clone()).or_default() += 1;
                first_seen.entry(label).or_insert(n);
            }
        }
        let total: usize = counts.values().sum();
        println!(
            "n = {n:2}: {total} links ({:.2?})",
            started.elapsed()
        );
        for (label, k) in &counts {
            println!("    {label}  x{k}");
        }
    }
    println!("\nfirst appearance:");
    for (label, n) in &first_seen {
        println!("    {label} at {n} sticks");
    }
}
