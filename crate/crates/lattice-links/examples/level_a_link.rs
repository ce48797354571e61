//! Takes a messy (randomly generated, then scrambled) link and rebuilds it in
//! leveled normal form, checking that stick counts and the link type survive.
//!
//!     cargo run --example level_a_link -- [seed]

use lattice_links::{classify, level_all, random_link, serialize_link, stick_counts, LatticeLink};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Extent of the bounding box along each axis.
fn extents(link: &LatticeLink) -> [i64; 3] {
    let mut lo = [i64::MAX; 3];
    let mut hi = [i64::MIN; 3];
    for component in &link.components {
        for v in component.vertices() {
            for (w, c) in v.coords().into_iter().enumerate() {
                lo[w] = lo[w].min(c);
                hi[w] = hi[w].max(c);
            }
        }
    }
    [hi[0] - lo[0] + 1, hi[1] - lo[1] + 1, hi[2] - lo[2] + 1]
}

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let messy = random_link(&mut rng, 10);
    let before = stick_counts(&messy).expect("generated links are valid");
    let [bx, by, bz] = extents(&messy);
    println!("before (bounding box {bx} x {by} x {bz}):");
    print!("{}", serialize_link(&messy));

    let leveled = level_all(&messy).expect("leveling a valid link succeeds");
    let after = stick_counts(&leveled).expect("leveling preserves validity");
    let [ax, ay, az] = extents(&leveled);
    println!("\nafter (bounding box {ax} x {ay} x {az}):");
    print!("{}", serialize_link(&leveled));

    assert_eq!(before, after, "leveling must not change stick counts");
    assert_eq!(
        classify(&messy).expect("small links classify"),
        classify(&leveled).expect("small links classify"),
        "leveling must not change the link type"
    );
    println!("\nstick counts {before} and the link type are unchanged");
}
