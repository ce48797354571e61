//! Canonical forms of links under the full lattice symmetry group.
//!
//! Two embeddings that differ by a signed axis permutation, a translation,
//! re-rooting or reversing a component's vertex cycle, or reordering the
//! components describe the same geometric object. [`canonicalize`] picks a
//! distinguished representative of that finite orbit so a census can count
//! each embedding exactly once.

use crate::link::{Component, LatticeLink};
use crate::point::{Axis, LatticePoint, LatticeSymmetry, SignedPermutation};

/// Pointwise image of the link under `g`. Validity, stick structure, and
/// component order are preserved; axis counts are permuted by `g`'s linear part.
pub fn apply_symmetry(link: &LatticeLink, g: &LatticeSymmetry) -> LatticeLink {
    LatticeLink::new(
        link.components
            .iter()
            .map(|c| Component::new(c.vertices().iter().map(|&p| g.apply(p)).collect()))
            .collect(),
    )
}

/// The lexicographically least rotation or reversed rotation of a cyclic
/// vertex sequence, comparing vertices as integer triples.
fn min_cycle(vertices: &[LatticePoint]) -> Vec<LatticePoint> {
    let n = vertices.len();
    let mut seq = vertices.to_vec();
    let mut best: Option<Vec<LatticePoint>> = None;
    for _ in 0..2 {
        for shift in 0..n {
            let candidate: Vec<LatticePoint> = (0..n).map(|i| seq[(i + shift) % n]).collect();
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
        seq.reverse();
    }
    best.unwrap()
}

/// The distinguished representative of the link's orbit under the 48 signed
/// axis permutations, integer translations, per-component cyclic rotation and
/// reversal, and component reordering.
///
/// For each linear map the link is transformed, translated so the bounding
/// box's minimal corner sits at the origin, each component is rotated/reversed
/// to its least vertex sequence, and components are sorted; the least of the
/// 48 results (comparing vertex sequences as integer tuples) wins. The result
/// is idempotent and constant on orbits.
pub fn canonicalize(link: &LatticeLink) -> LatticeLink {
    let mut best: Option<LatticeLink> = None;
    for perm in SignedPermutation::all() {
        let candidate = canonical_for_perm(link, &perm);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    best.expect("canonicalize requires a nonempty link")
}

fn canonical_for_perm(link: &LatticeLink, perm: &SignedPermutation) -> LatticeLink {
    let transformed: Vec<Vec<LatticePoint>> = link
        .components
        .iter()
        .map(|c| c.vertices().iter().map(|&p| perm.apply(p)).collect())
        .collect();
    let mut lo = LatticePoint::new(i64::MAX, i64::MAX, i64::MAX);
    for p in transformed.iter().flatten() {
        for axis in Axis::ALL {
            lo[axis] = lo[axis].min(p[axis]);
        }
    }
    let mut comps: Vec<Component> = transformed
        .into_iter()
        .map(|vs| {
            let shifted: Vec<LatticePoint> = vs.into_iter().map(|p| p - lo).collect();
            Component::new(min_cycle(&shifted))
        })
        .collect();
    comps.sort();
    LatticeLink::new(comps)
}
