//! Finds the smallest stick count realizing a link type, with a witness.
//!
//!     cargo run --example find_witness -- 2_1^2 10
//!
//! Search runs unconstrained through 12 sticks; 13 and 14 use the
//! planar-reduction (constrained) profiles.

use lattice_links::{minimal_witness, serialize_link, LinkType};
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let label = args.get(1).map(String::as_str).unwrap_or("2_1^2");
    let max: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(10);
    let Some(target) = LinkType::parse(label) else {
        eprintln!("unknown link type: {label}");
        std::process::exit(2);
    };
    let t0 = Instant::now();
    match minimal_witness(&target, max) {
        Some((link, n)) => {
            println!("{label} realized with {n} sticks ({:.2?})", t0.elapsed());
            print!("{}", serialize_link(&link));
        }
        None => {
            println!(
                "{label} not realizable with at most {max} sticks ({:.2?})",
                t0.elapsed()
            );
        }
    }
}
