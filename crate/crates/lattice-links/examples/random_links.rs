//! Samples random lattice links, canonicalizes them, and tallies what they
//! are. Two scrambles of the same underlying polygon always canonicalize to
//! embeddings of the same link type.
//!
//!     cargo run --example random_links -- [count] [seed]

use lattice_links::{canonicalize, classify, random_link, serialize_link};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let count: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: BTreeMap<String, usize> = BTreeMap::new();
    let mut canonical_forms: BTreeMap<String, usize> = BTreeMap::new();
    for _ in 0..count {
        let link = random_link(&mut rng, 10);
        let label = classify(&link).expect("ten-stick links classify");
        *labels.entry(label.to_string()).or_default() += 1;
        *canonical_forms
            .entry(serialize_link(&canonicalize(&link)))
            .or_default() += 1;
    }

    println!("{count} random links with at most 10 sticks (seed {seed}):");
    for (label, k) in &labels {
        println!("    {label}  x{k}");
    }
    println!(
        "{} distinct canonical embeddings underneath",
        canonical_forms.len()
    );
}
