//! Seeded random lattice links for fuzzing.
//!
//! Links are drawn from the exhaustive enumerations at small stick counts
//! (so every sample is known-valid) and then scrambled by moves that change
//! the presentation but not the link type: lattice symmetries, translations,
//! per-axis monotone stretches (the inverse of leveling compression), cyclic
//! re-rooting and reversal of each component, and component reordering.
//! Stick counts per axis are preserved up to permutation by the symmetry;
//! the stretch keeps them exactly.

use crate::enumerate::{enumerate_leveled, profiles_for, SearchMode};
use crate::link::{Component, LatticeLink};
use crate::point::{Axis, LatticePoint, LatticeSymmetry, SignedPermutation};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn pool(max_sticks: usize) -> Vec<LatticeLink> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Vec<LatticeLink>>>> = OnceLock::new();
    let pools = POOLS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = pools.lock().unwrap();
    guard
        .entry(max_sticks)
        .or_insert_with(|| {
            let mut all = Vec::new();
            for n in 4..=max_sticks {
                for profile in profiles_for(n, None, SearchMode::Unconstrained) {
                    all.extend(enumerate_leveled(&profile, SearchMode::Unconstrained));
                }
            }
            all
        })
        .clone()
}

/// A uniformly random canonical link with at most `max_sticks` sticks
/// (valid by construction). Panics if `max_sticks < 4`.
pub fn random_canonical_link(rng: &mut impl Rng, max_sticks: usize) -> LatticeLink {
    let pool = pool(max_sticks);
    assert!(!pool.is_empty(), "no links with at most {max_sticks} sticks");
    pool[rng.gen_range(0..pool.len())].clone()
}

/// Applies a random presentation change: symmetry, stretch, translation,
/// re-rooted/reversed component cycles, shuffled component order. The result
/// is a valid link of the same type as the input.
pub fn scramble(rng: &mut impl Rng, link: &LatticeLink) -> LatticeLink {
    let symmetries = SignedPermutation::all();
    let sym = LatticeSymmetry {
        linear: symmetries[rng.gen_range(0..symmetries.len())],
        translation: LatticePoint::new(
            rng.gen_range(-5..=5),
            rng.gen_range(-5..=5),
            rng.gen_range(-5..=5),
        ),
    };
    let moved = crate::canonical::apply_symmetry(link, &sym);

    // Monotone stretch: send the occupied levels of each axis to a random
    // strictly increasing sequence. Planes move apart but never cross, so
    // the embedding's type is untouched.
    let mut maps: [HashMap<i64, i64>; 3] = Default::default();
    for (i, &axis) in Axis::ALL.iter().enumerate() {
        let mut levels: Vec<i64> = moved
            .components
            .iter()
            .flat_map(|c| c.vertices().iter().map(|p| p[axis]))
            .collect();
        levels.sort_unstable();
        levels.dedup();
        let mut next = levels.first().copied().unwrap_or(0);
        for &l in &levels {
            maps[i].insert(l, next);
            next += 1 + rng.gen_range(0..3);
        }
    }
    let stretched: Vec<Component> = moved
        .components
        .iter()
        .map(|c| {
            Component::new(
                c.vertices()
                    .iter()
                    .map(|p| {
                        LatticePoint::new(
                            maps[0][&p[Axis::X]],
                            maps[1][&p[Axis::Y]],
                            maps[2][&p[Axis::Z]],
                        )
                    })
                    .collect(),
            )
        })
        .collect();

    // Re-root and possibly reverse each cycle, then shuffle the components.
    let mut comps: Vec<Component> = stretched
        .into_iter()
        .map(|c| {
            let mut verts: Vec<LatticePoint> = c.vertices().to_vec();
            let k = rng.gen_range(0..verts.len());
            verts.rotate_left(k);
            if rng.gen_bool(0.5) {
                verts.reverse();
            }
            Component::new(verts)
        })
        .collect();
    comps.shuffle(rng);
    LatticeLink::new(comps)
}

/// A random valid link with at most `max_sticks` sticks in a randomized
/// (generally unleveled, non-canonical) presentation.
pub fn random_link(rng: &mut impl Rng, max_sticks: usize) -> LatticeLink {
    let base = random_canonical_link(rng, max_sticks);
    scramble(rng, &base)
}
