//! Planar-diagram codes and Reidemeister I/II simplification.
//!
//! A crossing is written `X(a,b,c,d)`: the four incident arc labels in
//! counterclockwise order starting from the incoming under-arc, the standard
//! planar-diagram convention. Consequently `c` is the outgoing under-arc, and
//! the over-strand runs `d -> b` at a positive crossing, `b -> d` at a
//! negative one. Under this labeling the Kauffman A-smoothing always joins
//! `a`–`b` and `c`–`d`, independent of sign.

use crate::diagram::Diagram;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PdCrossing {
    /// `(a, b, c, d)` counterclockwise from the incoming under-arc.
    pub arcs: [u32; 4],
    pub sign: i8,
    pub over_component: u32,
    pub under_component: u32,
}

impl PdCrossing {
    /// The two under slots `(a, c)`.
    pub fn under_arcs(&self) -> [u32; 2] {
        [self.arcs[0], self.arcs[2]]
    }

    /// The two over slots `(b, d)`.
    pub fn over_arcs(&self) -> [u32; 2] {
        [self.arcs[1], self.arcs[3]]
    }
}

/// A planar diagram code: crossings plus crossing-free closed loops.
/// Arc labels are `1..=num_edges`, each appearing exactly twice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PdCode {
    pub crossings: Vec<PdCrossing>,
    pub free_loops: usize,
    pub num_edges: u32,
}

impl PdCode {
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// A PD with no crossings and `loops` free loops.
    pub fn unlink(loops: usize) -> PdCode {
        PdCode {
            crossings: Vec::new(),
            free_loops: loops,
            num_edges: 0,
        }
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.crossings {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "X({},{},{},{})", x.arcs[0], x.arcs[1], x.arcs[2], x.arcs[3])?;
        }
        for _ in 0..self.free_loops {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "O")?;
        }
        if first {
            write!(f, "(empty)")?;
        }
        Ok(())
    }
}

/// Extracts the PD code of a generic diagram. Arc labels are assigned per
/// component in traversal order (components in stored order), making the code
/// deterministic for a fixed diagram.
pub fn pd_code(diagram: &Diagram) -> PdCode {
    // Passages of each component through crossings, ordered along traversal.
    #[derive(Clone, Copy)]
    struct Passage {
        stick: usize,
        dist: i64,
        crossing: usize,
        over: bool,
    }
    let mut passages: Vec<Vec<Passage>> = vec![Vec::new(); diagram.strands.len()];
    for (id, c) in diagram.crossings.iter().enumerate() {
        passages[c.over.component].push(Passage {
            stick: c.over.stick,
            dist: c.over_dist,
            crossing: id,
            over: true,
        });
        passages[c.under.component].push(Passage {
            stick: c.under.stick,
            dist: c.under_dist,
            crossing: id,
            over: false,
        });
    }

    let mut free_loops = 0;
    let mut next_label: u32 = 1;
    // For each crossing: the (incoming, outgoing) arc labels of its over and
    // under passage.
    let mut over_io = vec![(0u32, 0u32); diagram.crossings.len()];
    let mut under_io = vec![(0u32, 0u32); diagram.crossings.len()];
    for comp_passages in &mut passages {
        if comp_passages.is_empty() {
            free_loops += 1;
            continue;
        }
        comp_passages.sort_by_key(|p| (p.stick, p.dist));
        let k = comp_passages.len();
        debug_assert!(k >= 2, "a closed strand crosses an even number of times");
        let first_label = next_label;
        next_label += k as u32;
        for (j, p) in comp_passages.iter().enumerate() {
            let incoming = first_label + ((j + k - 1) % k) as u32;
            let outgoing = first_label + j as u32;
            let slot = if p.over {
                &mut over_io[p.crossing]
            } else {
                &mut under_io[p.crossing]
            };
            *slot = (incoming, outgoing);
        }
    }

    let crossings = diagram
        .crossings
        .iter()
        .enumerate()
        .map(|(id, c)| {
            let (a, out_under) = under_io[id];
            let (over_in, over_out) = over_io[id];
            let arcs = if c.sign > 0 {
                // Over strand runs d -> b.
                [a, over_out, out_under, over_in]
            } else {
                [a, over_in, out_under, over_out]
            };
            PdCrossing {
                arcs,
                sign: c.sign,
                over_component: c.over.component as u32,
                under_component: c.under.component as u32,
            }
        })
        .collect();

    PdCode {
        crossings,
        free_loops,
        num_edges: next_label - 1,
    }
}

/// Minimal union-find over arc labels.
struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }
}

/// Repeatedly removes Reidemeister-I kinks and Reidemeister-II bigons until
/// neither pattern remains. Strands that lose their last crossing become free
/// loops. The link type, linking matrix, and normalized Jones polynomial are
/// unchanged (writhe changes with each R1, consistently with the surviving
/// signs, so the `(-A)^{-3w}` normalization still matches the code).
pub fn simplify_r1_r2(pd: &PdCode) -> PdCode {
    let mut live: Vec<Option<PdCrossing>> = pd.crossings.iter().copied().map(Some).collect();
    let mut uf = UnionFind::new(pd.num_edges as usize + 1);
    loop {
        let slots = |uf: &mut UnionFind, x: &PdCrossing| x.arcs.map(|e| uf.find(e));

        // Reidemeister I: the same arc in two cyclically adjacent slots.
        let mut removed = false;
        for i in 0..live.len() {
            let Some(x) = live[i] else { continue };
            let s = slots(&mut uf, &x);
            for k in 0..4 {
                if s[k] == s[(k + 1) % 4] {
                    let loop_arc = s[k];
                    let p = s[(k + 2) % 4];
                    let q = s[(k + 3) % 4];
                    uf.union(p, q);
                    uf.union(p, loop_arc);
                    live[i] = None;
                    removed = true;
                    break;
                }
            }
            if removed {
                break;
            }
            debug_assert!(
                s[0] != s[2] && s[1] != s[3],
                "opposite slots equal: not a planar closed diagram"
            );
        }
        if removed {
            continue;
        }

        // Reidemeister II: two crossings joined by an arc that is over at
        // both and an arc that is under at both, the pair bounding a bigon
        // face (the two arcs appear as a CCW-adjacent slot pair at one
        // crossing and as the reversed pair at the other).
        'pairs: for i in 0..live.len() {
            let Some(x) = live[i] else { continue };
            let sx = slots(&mut uf, &x);
            for j in i + 1..live.len() {
                let Some(y) = live[j] else { continue };
                let sy = slots(&mut uf, &y);
                let over_x = [sx[1], sx[3]];
                let under_x = [sx[0], sx[2]];
                let over_y = [sy[1], sy[3]];
                let under_y = [sy[0], sy[2]];
                let shared_over = over_x.iter().find(|e| over_y.contains(e)).copied();
                let shared_under = under_x.iter().find(|e| under_y.contains(e)).copied();
                let (Some(e), Some(f)) = (shared_over, shared_under) else {
                    continue;
                };
                if e == f {
                    continue;
                }
                let adj = |s: &[u32; 4], p: u32, q: u32| {
                    (0..4).any(|k| s[k] == p && s[(k + 1) % 4] == q)
                };
                let bigon = (adj(&sx, e, f) && adj(&sy, f, e))
                    || (adj(&sx, f, e) && adj(&sy, e, f));
                if !bigon {
                    continue;
                }
                debug_assert_eq!(x.sign, -y.sign, "a bigon pair has opposite signs");
                let outer = |pair: [u32; 2], shared: u32| {
                    if pair[0] == shared {
                        pair[1]
                    } else {
                        pair[0]
                    }
                };
                let (po, qo) = (outer(over_x, e), outer(over_y, e));
                let (pu, qu) = (outer(under_x, f), outer(under_y, f));
                uf.union(po, e);
                uf.union(qo, e);
                uf.union(pu, f);
                uf.union(qu, f);
                live[i] = None;
                live[j] = None;
                removed = true;
                break 'pairs;
            }
        }
        if !removed {
            break;
        }
    }

    // Compact relabeling: arc classes still attached to crossings get labels
    // 1..; classes with no remaining attachment are closed circles.
    let survivors: Vec<PdCrossing> = live.into_iter().flatten().collect();
    let mut class_label = std::collections::HashMap::new();
    let mut crossings = Vec::with_capacity(survivors.len());
    for x in &survivors {
        let arcs = x.arcs.map(|e| {
            let root = uf.find(e);
            let next = class_label.len() as u32 + 1;
            *class_label.entry(root).or_insert(next)
        });
        crossings.push(PdCrossing { arcs, ..*x });
    }
    let mut detached_classes = std::collections::HashSet::new();
    for e in 1..=pd.num_edges {
        let root = uf.find(e);
        if !class_label.contains_key(&root) {
            detached_classes.insert(root);
        }
    }
    PdCode {
        crossings,
        free_loops: pd.free_loops + detached_classes.len(),
        num_edges: class_label.len() as u32,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::sheared_projection;
    use crate::link::fixtures::{h8, p, u4};
    use crate::link::{Component, LatticeLink};
    use crate::point::Axis;

    fn label_counts(pd: &PdCode) -> Vec<usize> {
        let mut counts = vec![0usize; pd.num_edges as usize + 1];
        for x in &pd.crossings {
            for e in x.arcs {
                counts[e as usize] += 1;
            }
        }
        counts.into_iter().skip(1).collect()
    }

    #[test]
    fn u4_pd_is_one_free_loop() {
        let pd = pd_code(&sheared_projection(&u4(), Axis::Z));
        assert_eq!(pd, PdCode::unlink(1));
        assert_eq!(pd.to_string(), "O");
    }

    #[test]
    fn two_unlink_pd_is_two_free_loops() {
        let link = LatticeLink::new(vec![
            Component::new(vec![p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(0, 1, 0)]),
            Component::new(vec![p(8, 0, 5), p(9, 0, 5), p(9, 1, 5), p(8, 1, 5)]),
        ]);
        let pd = pd_code(&sheared_projection(&link, Axis::Z));
        assert_eq!(pd, PdCode::unlink(2));
        assert_eq!(pd.to_string(), "O O");
    }

    #[test]
    fn h8_pd_matches_hand_derivation() {
        // Hand derivation from the H8 coordinates under the z-shear: both
        // crossings lie on A's y=1 stick (traversed right to left, so the
        // x=1+z=1 crossing comes first along A); arcs 1,2 belong to A and 3,4
        // to B; both signs are negative for the stored orientations.
        let pd = pd_code(&sheared_projection(&h8(), Axis::Z));
        assert_eq!(pd.free_loops, 0);
        assert_eq!(pd.num_edges, 4);
        let arcs: Vec<[u32; 4]> = pd.crossings.iter().map(|x| x.arcs).collect();
        assert_eq!(arcs, vec![[4, 1, 3, 2], [2, 3, 1, 4]]);
        assert_eq!(pd.crossings[0].sign, -1);
        assert_eq!(pd.crossings[1].sign, -1);
        assert_eq!(pd.writhe(), -2);
        assert_eq!(label_counts(&pd), vec![2, 2, 2, 2]);
        assert_eq!(pd.to_string(), "X(4,1,3,2) X(2,3,1,4)");
    }

    #[test]
    fn h8_pd_is_irreducible() {
        let pd = pd_code(&sheared_projection(&h8(), Axis::Z));
        let reduced = simplify_r1_r2(&pd);
        assert_eq!(reduced.crossings.len(), 2);
        assert_eq!(reduced.free_loops, 0);
        assert_eq!(reduced.writhe(), pd.writhe());
    }

    #[test]
    fn r1_kink_simplifies_to_unknot() {
        // One-crossing unknot diagrams, both chiralities, written by hand.
        for (arcs, sign) in [([1, 2, 2, 1], -1i8), ([1, 1, 2, 2], 1i8)] {
            let pd = PdCode {
                crossings: vec![PdCrossing {
                    arcs,
                    sign,
                    over_component: 0,
                    under_component: 0,
                }],
                free_loops: 0,
                num_edges: 2,
            };
            let reduced = simplify_r1_r2(&pd);
            assert_eq!(reduced, PdCode::unlink(1), "kink {arcs:?}");
        }
    }

    #[test]
    fn r2_bigon_on_stacked_squares() {
        let stacked = LatticeLink::new(vec![
            Component::new(vec![p(0, 0, 0), p(2, 0, 0), p(2, 2, 0), p(0, 2, 0)]),
            Component::new(vec![p(1, 1, 1), p(3, 1, 1), p(3, 3, 1), p(1, 3, 1)]),
        ]);
        let pd = pd_code(&sheared_projection(&stacked, Axis::Z));
        assert_eq!(pd.crossings.len(), 2);
        assert_eq!(pd.writhe(), 0, "opposite-sign bigon");
        let reduced = simplify_r1_r2(&pd);
        assert_eq!(reduced, PdCode::unlink(2));
    }

    #[test]
    fn labels_appear_exactly_twice_on_fixtures() {
        for link in [u4(), h8()] {
            for axis in Axis::ALL {
                let pd = pd_code(&sheared_projection(&link, axis));
                assert!(label_counts(&pd).iter().all(|&c| c == 2));
            }
        }
    }

    #[test]
    fn consecutive_kinks_collapse() {
        // One strand with two positive kinks: the cyclic edge walk is
        // e1 (loop at c1), e2 (c1 to c2), e3 (loop at c2), e4 (c2 to c1),
        // giving X(4,2,1,1) and X(2,4,3,3).
        let pd = PdCode {
            crossings: vec![
                PdCrossing {
                    arcs: [4, 2, 1, 1],
                    sign: 1,
                    over_component: 0,
                    under_component: 0,
                },
                PdCrossing {
                    arcs: [2, 4, 3, 3],
                    sign: 1,
                    over_component: 0,
                    under_component: 0,
                },
            ],
            free_loops: 0,
            num_edges: 4,
        };
        let reduced = simplify_r1_r2(&pd);
        assert_eq!(reduced, PdCode::unlink(1));
    }

    #[test]
    fn disjoint_kinks_collapse_to_two_loops() {
        let pd = PdCode {
            crossings: vec![
                PdCrossing {
                    arcs: [1, 1, 2, 2],
                    sign: 1,
                    over_component: 0,
                    under_component: 0,
                },
                PdCrossing {
                    arcs: [3, 3, 4, 4],
                    sign: 1,
                    over_component: 1,
                    under_component: 1,
                },
            ],
            free_loops: 0,
            num_edges: 4,
        };
        assert_eq!(simplify_r1_r2(&pd), PdCode::unlink(2));
    }
}
