//! Symmetry-reduced exhaustive enumeration of extended properly leveled
//! lattice links with prescribed stick budgets.
//!
//! Completeness rests on the leveling reduction: every link type realizable
//! with given per-axis stick counts has a representative produced by
//! `level_all`, and such representatives have a rigid shape — along each axis,
//! every level hosts exactly one "portion" (either a whole flat component or
//! one arc between two sticks of that axis), levels are exactly
//! `0..sticks+flats`, and each non-flat level sees exactly two stick
//! endpoints. The search therefore walks vertex cycles directly in level
//! coordinates, maintaining per-level endpoint tallies (capped at two),
//! exclusive reservations for flat components, and a shared occupancy grid.
//! A counting argument shows the caps force the exact leveled structure at
//! completion, so no post-hoc filtering is needed.
//!
//! Symmetry reduction: translations are killed by the level coordinates
//! (every level is used), reflections by requiring the first stick placed
//! along each axis to point in the positive direction, and axis permutations
//! by enumerating only sorted count profiles. Residual duplicates (e.g. from
//! profiles with equal counts) are removed by canonicalizing every emitted
//! link and deduplicating.

use crate::canonical::canonicalize;
use crate::classify::{classify_full, linking_matrix, reference_table, LinkType};
use crate::diagram::sheared_projection;
use crate::link::{Component, LatticeLink};
use crate::point::{Axis, LatticePoint};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;
use std::sync::{Mutex, OnceLock};

/// Enumeration target: per-axis stick totals (kept sorted ascending by the
/// profile generators) and the number of components.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Profile {
    /// Total sticks along x, y, z.
    pub counts: [usize; 3],
    pub components: usize,
}

impl Profile {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

impl std::fmt::Display for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{},{},{} m={}",
            self.counts[0], self.counts[1], self.counts[2], self.components
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Plain exhaustive search: complete for everything.
    Unconstrained,
    /// Adds the planar-component reduction for 13/14-stick runs: profiles
    /// need at least four sticks per axis, and a completed flat component
    /// must be pierced by exactly four perpendicular sticks, two through its
    /// bounded region and two outside. Complete only for non-split targets
    /// other than the Hopf link and the chain; results are labeled with the
    /// mode so the caveat travels with them.
    Constrained,
}

impl std::fmt::Display for SearchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchMode::Unconstrained => write!(f, "unconstrained"),
            SearchMode::Constrained => write!(f, "constrained"),
        }
    }
}

/// Is `triple` a legal per-component stick-count assignment? Closed lattice
/// polygons have four sticks or at least six, never exactly one stick along
/// an axis, at most half the total along any axis, and a component flat in
/// one axis must alternate its other two axes (equal counts).
pub fn admissible_triple(triple: [usize; 3]) -> bool {
    let n = triple.iter().sum::<usize>();
    if n != 4 && n < 6 {
        return false;
    }
    for &c in &triple {
        if c == 1 || 2 * c > n {
            return false;
        }
    }
    match triple.iter().filter(|&&c| c == 0).count() {
        0 => true,
        1 => {
            let nonzero: Vec<usize> = triple.iter().copied().filter(|&c| c != 0).collect();
            nonzero[0] == nonzero[1]
        }
        _ => false,
    }
}

/// All ways to split the per-axis totals into `m` admissible component
/// triples, as lexicographically sorted multisets (deterministic order).
pub fn admissible_partitions(
    counts: [usize; 3],
    m: usize,
    mode: SearchMode,
) -> Vec<Vec<[usize; 3]>> {
    let mut out = Vec::new();
    let mut cur: Vec<[usize; 3]> = Vec::with_capacity(m);
    fn rec(
        counts: [usize; 3],
        left: usize,
        min: [usize; 3],
        cur: &mut Vec<[usize; 3]>,
        out: &mut Vec<Vec<[usize; 3]>>,
    ) {
        if left == 0 {
            if counts == [0, 0, 0] {
                out.push(cur.clone());
            }
            return;
        }
        // Remaining components need at least 4 sticks each.
        let total: usize = counts.iter().sum();
        if total < 4 * left {
            return;
        }
        for x in 0..=counts[0] {
            for y in 0..=counts[1] {
                for z in 0..=counts[2] {
                    let t = [x, y, z];
                    if t < min || !admissible_triple(t) {
                        continue;
                    }
                    cur.push(t);
                    rec(
                        [counts[0] - x, counts[1] - y, counts[2] - z],
                        left - 1,
                        t,
                        cur,
                        out,
                    );
                    cur.pop();
                }
            }
        }
    }
    rec(counts, m, [0, 0, 0], &mut cur, &mut out);
    if mode == SearchMode::Constrained {
        // A flat component forces exactly four sticks perpendicular to its
        // plane (the planar reduction), so partitions violating that cannot
        // carry the targets the constrained mode is allowed to claim.
        out.retain(|part| {
            part.iter()
                .all(|t| (0..3).all(|w| t[w] != 0 || counts[w] == 4))
        });
    }
    out
}

/// Profiles worth searching at `n` total sticks: sorted per-axis totals
/// with at least one admissible partition. `components` restricts the
/// component count; otherwise every feasible count is included.
pub fn profiles_for(n: usize, components: Option<usize>, mode: SearchMode) -> Vec<Profile> {
    let mut out = Vec::new();
    let ms: Vec<usize> = match components {
        Some(m) => vec![m],
        None => (1..=n / 4).collect(),
    };
    for a in 0..=n / 3 {
        for b in a..=(n - a) / 2 {
            let c = n - a - b;
            if c < b {
                continue;
            }
            if mode == SearchMode::Constrained && a < 4 {
                continue;
            }
            for &m in &ms {
                let counts = [a, b, c];
                if !admissible_partitions(counts, m, mode).is_empty() {
                    out.push(Profile {
                        counts,
                        components: m,
                    });
                }
            }
        }
    }
    out
}

/// Cyclic axis words for one component: sequences over {x,y,z} with the
/// triple's multiplicities, no two cyclically adjacent letters equal, kept
/// only as canonical representatives of their rotation/reversal class.
fn words_for(triple: [usize; 3]) -> std::sync::Arc<Vec<Vec<u8>>> {
    static CACHE: OnceLock<Mutex<HashMap<[usize; 3], std::sync::Arc<Vec<Vec<u8>>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&triple) {
        return hit.clone();
    }
    let n: usize = triple.iter().sum();
    let mut words = Vec::new();
    let mut word: Vec<u8> = Vec::with_capacity(n);
    let mut left = triple;
    fn rec(n: usize, word: &mut Vec<u8>, left: &mut [usize; 3], words: &mut Vec<Vec<u8>>) {
        if word.len() == n {
            if word[0] != word[n - 1] && is_canonical_cycle(word) {
                words.push(word.clone());
            }
            return;
        }
        for axis in 0..3u8 {
            if left[axis as usize] == 0 {
                continue;
            }
            if let Some(&prev) = word.last() {
                if prev == axis {
                    continue;
                }
            }
            left[axis as usize] -= 1;
            word.push(axis);
            rec(n, word, left, words);
            word.pop();
            left[axis as usize] += 1;
        }
    }
    rec(n, &mut word, &mut left, &mut words);
    let arc = std::sync::Arc::new(words);
    cache.lock().unwrap().insert(triple, arc.clone());
    arc
}

fn is_canonical_cycle(word: &[u8]) -> bool {
    let n = word.len();
    let mut rotated: Vec<u8> = Vec::with_capacity(n);
    for rev in [false, true] {
        for start in 0..n {
            rotated.clear();
            if rev {
                rotated.extend((0..n).map(|i| word[(start + n - i) % n]));
            } else {
                rotated.extend((0..n).map(|i| word[(start + i) % n]));
            }
            if rotated.as_slice() < word {
                return false;
            }
        }
    }
    true
}

const NO_OWNER: u8 = u8::MAX;

/// Mutable search state: a partially embedded link plus the bookkeeping the
/// pruning rules read. All placements check *before* mutating, so a failed
/// placement leaves the state untouched.
pub struct PartialEmbedding {
    dims: [usize; 3],
    partition: Vec<[usize; 3]>,
    grid: Vec<bool>,
    tally: [Vec<u8>; 3],
    flat_owner: [Vec<u8>; 3],
    vcount: [Vec<u8>; 3],
    touched: [usize; 3],
    /// Remaining endpoint capacity per axis: 2 per unreserved level minus
    /// endpoints already placed.
    capacity: [isize; 3],
    rem_sticks: [isize; 3],
    rem_flats: [isize; 3],
    unstarted: usize,
    first_stick_done: [bool; 3],
    verts: Vec<[i32; 3]>,
    comp_start: Vec<usize>,
    words: Vec<Vec<u8>>,
    /// suffix[c][k][w] = sticks along w at positions ≥ k of component c's word.
    suffix: Vec<Vec<[u16; 3]>>,
    cur_stick: usize,
}

/// Undo token for one stick placement.
pub struct StickMove {
    axis: usize,
    from: i32,
    to: i32,
    new_vertex: bool,
    first_stick_set: bool,
    touched_to: bool,
}

/// Undo token for starting a component.
pub struct StartMove {
    opened: [bool; 3],
    flat_axis: Option<usize>,
}

impl PartialEmbedding {
    pub fn new(partition: Vec<[usize; 3]>) -> PartialEmbedding {
        let mut counts = [0usize; 3];
        let mut flats = [0isize; 3];
        for t in &partition {
            for w in 0..3 {
                counts[w] += t[w];
            }
            for w in 0..3 {
                if t[w] == 0 {
                    flats[w] += 1;
                }
            }
        }
        let dims = [
            counts[0] + flats[0] as usize,
            counts[1] + flats[1] as usize,
            counts[2] + flats[2] as usize,
        ];
        let cells = dims[0].max(1) * dims[1].max(1) * dims[2].max(1);
        PartialEmbedding {
            dims,
            grid: vec![false; cells],
            tally: [vec![0; dims[0]], vec![0; dims[1]], vec![0; dims[2]]],
            flat_owner: [
                vec![NO_OWNER; dims[0]],
                vec![NO_OWNER; dims[1]],
                vec![NO_OWNER; dims[2]],
            ],
            vcount: [vec![0; dims[0]], vec![0; dims[1]], vec![0; dims[2]]],
            touched: [0; 3],
            capacity: [2 * dims[0] as isize, 2 * dims[1] as isize, 2 * dims[2] as isize],
            rem_sticks: [counts[0] as isize, counts[1] as isize, counts[2] as isize],
            rem_flats: flats,
            unstarted: partition.len(),
            first_stick_done: [false; 3],
            verts: Vec::new(),
            comp_start: Vec::new(),
            words: Vec::new(),
            suffix: Vec::new(),
            cur_stick: 0,
            partition,
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    fn cell(&self, p: [i32; 3]) -> usize {
        (p[0] as usize * self.dims[1].max(1) + p[1] as usize) * self.dims[2].max(1)
            + p[2] as usize
    }

    fn started(&self) -> usize {
        self.words.len()
    }

    /// True while the state can still extend to a full leveled link:
    /// endpoint capacity suffices for the sticks not yet placed, reserved
    /// levels remain for the flat components not yet placed, untouched
    /// levels don't outnumber the placements that could still open them, and
    /// the walk in progress can still close up along every axis.
    /// (Sound, not exact: `true` does not promise an extension exists.)
    pub fn prune_profile(&self) -> bool {
        for w in 0..3 {
            if 2 * self.rem_sticks[w] + 2 * self.rem_flats[w] > self.capacity[w] {
                return false;
            }
            let untouched = (self.dims[w] - self.touched[w]) as isize;
            if untouched > self.rem_sticks[w] + self.unstarted as isize {
                return false;
            }
        }
        if self.started() > 0 && !self.component_done() {
            let suffix = &self.suffix.last().unwrap()[self.cur_stick];
            let head = self.head();
            let v0 = self.v0();
            for w in 0..3 {
                let displaced = head[w] != v0[w];
                // No sticks left along an axis that still needs to return,
                // or exactly one left with nothing to do but leave: dead.
                if (suffix[w] == 0 && displaced) || (suffix[w] == 1 && !displaced) {
                    return false;
                }
            }
        }
        true
    }

    fn current_word(&self) -> &[u8] {
        self.words.last().expect("a component is in progress")
    }

    fn component_done(&self) -> bool {
        self.started() == 0 || self.cur_stick == self.current_word().len()
    }

    pub fn is_complete(&self) -> bool {
        self.started() == self.partition.len() && self.component_done()
    }

    fn v0(&self) -> [i32; 3] {
        self.verts[*self.comp_start.last().unwrap()]
    }

    fn head(&self) -> [i32; 3] {
        *self.verts.last().unwrap()
    }

    /// Starts the next component with the given axis word at vertex `v0`.
    /// Flat components reserve their level exclusively here.
    pub fn start_component(&mut self, word: Vec<u8>, v0: [i32; 3]) -> Option<StartMove> {
        debug_assert!(self.component_done() && self.started() < self.partition.len());
        let c = self.started();
        let triple = self.partition[c];
        for w in 0..3 {
            if v0[w] < 0 || v0[w] as usize >= self.dims[w] {
                return None;
            }
            if self.flat_owner[w][v0[w] as usize] != NO_OWNER {
                return None;
            }
        }
        if self.grid[self.cell(v0)] {
            return None;
        }
        let flat_axis = (0..3).find(|&w| triple[w] == 0);
        if let Some(w) = flat_axis {
            // Exclusive whole-component level: no endpoints, no foreign
            // vertices, now or later.
            if self.tally[w][v0[w] as usize] != 0 || self.vcount[w][v0[w] as usize] != 0 {
                return None;
            }
        }
        let mut opened = [false; 3];
        for w in 0..3 {
            opened[w] = self.vcount[w][v0[w] as usize] == 0;
        }

        let v0_cell = self.cell(v0);
        self.grid[v0_cell] = true;
        for w in 0..3 {
            self.vcount[w][v0[w] as usize] += 1;
            if opened[w] {
                self.touched[w] += 1;
            }
        }
        if let Some(w) = flat_axis {
            self.flat_owner[w][v0[w] as usize] = c as u8;
            self.capacity[w] -= 2;
            self.rem_flats[w] -= 1;
        }
        self.unstarted -= 1;
        self.comp_start.push(self.verts.len());
        self.verts.push(v0);
        let mut suffix = vec![[0u16; 3]; word.len() + 1];
        for k in (0..word.len()).rev() {
            suffix[k] = suffix[k + 1];
            suffix[k][word[k] as usize] += 1;
        }
        self.suffix.push(suffix);
        self.words.push(word);
        self.cur_stick = 0;
        Some(StartMove { opened, flat_axis })
    }

    pub fn undo_start_component(&mut self, mv: StartMove) {
        let c = self.started() - 1;
        let v0 = self.verts[self.comp_start[c]];
        self.words.pop();
        self.suffix.pop();
        self.comp_start.pop();
        self.verts.pop();
        self.unstarted += 1;
        if let Some(w) = mv.flat_axis {
            self.flat_owner[w][v0[w] as usize] = NO_OWNER;
            self.capacity[w] += 2;
            self.rem_flats[w] += 1;
        }
        for w in 0..3 {
            self.vcount[w][v0[w] as usize] -= 1;
            if mv.opened[w] {
                self.touched[w] -= 1;
            }
        }
        let v0_cell = self.cell(v0);
        self.grid[v0_cell] = false;
        self.cur_stick = match self.words.last() {
            Some(word) => word.len(),
            None => 0,
        };
    }

    /// Places the next stick of the current component, ending at level
    /// `target` along the word's axis. The final stick must land exactly on
    /// the start vertex; intermediate sticks obey the closure, leveling, and
    /// reflection-anchor rules.
    pub fn place_stick(&mut self, target: i32) -> Option<StickMove> {
        let word = self.words.last().expect("component in progress");
        let k = self.cur_stick;
        debug_assert!(k < word.len());
        let axis = word[k] as usize;
        let head = self.head();
        let from = head[axis];
        let to = target;
        if to == from || to < 0 || to as usize >= self.dims[axis] {
            return None;
        }
        let closing = k == word.len() - 1;
        let v0 = self.v0();
        // Closure feasibility along this axis.
        let rem_after = self.suffix.last().unwrap()[k + 1][axis];
        if rem_after == 0 && to != v0[axis] {
            return None;
        }
        if rem_after == 1 && to == v0[axis] {
            return None;
        }
        if closing {
            // The two perpendicular coordinates must already agree (the
            // closure rule forces this; keep it as a cheap guard).
            let mut end = head;
            end[axis] = to;
            if end != v0 {
                return None;
            }
        }
        // Reflection anchor: the first stick along each axis points up.
        let first = !self.first_stick_done[axis];
        if first && to < from {
            return None;
        }
        // Endpoint tallies: departure at `from`, arrival at `to`.
        if self.tally[axis][from as usize] >= 2 || self.tally[axis][to as usize] >= 2 {
            return None;
        }
        // Stick endpoints may not land on reserved flat levels. (The
        // component's own reservation is perpendicular to every axis it has
        // sticks in, so no self-exception is needed here.)
        if self.flat_owner[axis][to as usize] != NO_OWNER
            || self.flat_owner[axis][from as usize] != NO_OWNER
        {
            return None;
        }
        // Occupancy: interior points, plus the new vertex unless closing.
        let step = if to > from { 1 } else { -1 };
        let mut p = head;
        let mut lvl = from + step;
        loop {
            p[axis] = lvl;
            let last = lvl == to;
            if !(last && closing) && self.grid[self.cell(p)] {
                return None;
            }
            if last {
                break;
            }
            lvl += step;
        }
        if !closing {
            // The new vertex may not sit on a reserved flat level, except the
            // current component's own plane.
            let me = (self.started() - 1) as u8;
            let mut end = head;
            end[axis] = to;
            for w in 0..3 {
                let owner = self.flat_owner[w][end[w] as usize];
                if owner != NO_OWNER && owner != me {
                    return None;
                }
            }
        }

        // Commit.
        let mut p = head;
        let mut lvl = from + step;
        loop {
            p[axis] = lvl;
            if !(lvl == to && closing) {
                let cell = self.cell(p);
                self.grid[cell] = true;
            }
            if lvl == to {
                break;
            }
            lvl += step;
        }
        self.tally[axis][from as usize] += 1;
        self.tally[axis][to as usize] += 1;
        self.capacity[axis] -= 2;
        self.rem_sticks[axis] -= 1;
        if first {
            self.first_stick_done[axis] = true;
        }
        let mut touched_to = false;
        let mut new_vertex = false;
        if !closing {
            let mut end = head;
            end[axis] = to;
            for w in 0..3 {
                if self.vcount[w][end[w] as usize] == 0 {
                    debug_assert!(w == axis, "only the moved coordinate can be fresh");
                    self.touched[w] += 1;
                    touched_to = true;
                }
                self.vcount[w][end[w] as usize] += 1;
            }
            self.verts.push(end);
            new_vertex = true;
        }
        self.cur_stick += 1;
        Some(StickMove {
            axis,
            from,
            to,
            new_vertex,
            first_stick_set: first,
            touched_to,
        })
    }

    pub fn undo_place_stick(&mut self, mv: StickMove) {
        self.cur_stick -= 1;
        if mv.new_vertex {
            let end = self.verts.pop().unwrap();
            for w in 0..3 {
                self.vcount[w][end[w] as usize] -= 1;
            }
            if mv.touched_to {
                self.touched[mv.axis] -= 1;
            }
        }
        if mv.first_stick_set {
            self.first_stick_done[mv.axis] = false;
        }
        self.rem_sticks[mv.axis] += 1;
        self.capacity[mv.axis] += 2;
        self.tally[mv.axis][mv.from as usize] -= 1;
        self.tally[mv.axis][mv.to as usize] -= 1;
        let head = self.head();
        let closing = !mv.new_vertex;
        let step = if mv.to > mv.from { 1 } else { -1 };
        let mut p = head;
        p[mv.axis] = mv.from;
        let mut lvl = mv.from + step;
        loop {
            p[mv.axis] = lvl;
            if !(lvl == mv.to && closing) {
                let cell = self.cell(p);
                self.grid[cell] = false;
            }
            if lvl == mv.to {
                break;
            }
            lvl += step;
        }
    }

    /// The completed link in level coordinates.
    pub fn to_link(&self) -> LatticeLink {
        assert!(self.is_complete());
        let mut comps = Vec::with_capacity(self.partition.len());
        for c in 0..self.partition.len() {
            let start = self.comp_start[c];
            let end = if c + 1 < self.comp_start.len() {
                self.comp_start[c + 1]
            } else {
                self.verts.len()
            };
            let pts = self.verts[start..end]
                .iter()
                .map(|v| LatticePoint::new(v[0] as i64, v[1] as i64, v[2] as i64))
                .collect();
            comps.push(Component::new(pts));
        }
        LatticeLink::new(comps)
    }
}

/// Everything known about one completed flat component and the sticks
/// piercing its plane.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PlanarComponentInfo {
    pub axis: Axis,
    pub level: i64,
    /// Perpendicular sticks of the whole link (the flat component itself has
    /// none).
    pub perpendicular_total: usize,
    /// How many of them cross the plane inside the component's bounded
    /// region.
    pub bounded_piercings: usize,
    /// …and outside it.
    pub unbounded_piercings: usize,
}

/// Computes the piercing data of component `comp` if it is flat
/// (perpendicular to exactly one axis), `None` otherwise. The link must be
/// valid.
pub fn planar_component_info(link: &LatticeLink, comp: usize) -> Option<PlanarComponentInfo> {
    let counts = link.components[comp].axis_counts().ok()?;
    let axis = *Axis::ALL.iter().find(|&&w| counts[w] == 0)?;
    let (u, v) = axis.others();
    let level = link.components[comp].vertices()[0][axis];
    // The component's polygon in (u, v) coordinates.
    let poly: Vec<(i64, i64)> = link.components[comp]
        .vertices()
        .iter()
        .map(|p| (p[u], p[v]))
        .collect();
    let inside = |qu: i64, qv: i64| -> bool {
        // Ray cast along +u with the half-open rule; the query point is
        // never on the polygon (occupancy would have rejected it).
        let mut crossings = 0;
        for i in 0..poly.len() {
            let (au, av) = poly[i];
            let (bu, bv) = poly[(i + 1) % poly.len()];
            if av == bv {
                continue;
            }
            let (lo, hi) = if av < bv { (av, bv) } else { (bv, av) };
            if lo <= qv && qv < hi && au > qu {
                debug_assert_eq!(au, bu);
                crossings += 1;
            }
        }
        crossings % 2 == 1
    };
    let mut info = PlanarComponentInfo {
        axis,
        level,
        perpendicular_total: 0,
        bounded_piercings: 0,
        unbounded_piercings: 0,
    };
    for (ci, other) in link.components.iter().enumerate() {
        for stick in other.sticks().ok()? {
            if stick.axis != axis {
                continue;
            }
            info.perpendicular_total += 1;
            if ci == comp {
                continue;
            }
            let (lo, hi) = stick.span();
            if lo < level && level < hi {
                if inside(stick.start[u], stick.start[v]) {
                    info.bounded_piercings += 1;
                } else {
                    info.unbounded_piercings += 1;
                }
            }
        }
    }
    Some(info)
}

/// The planar reduction test: a link containing a flat component can only be
/// one of the constrained-mode targets if exactly four sticks run
/// perpendicular to the plane, two piercing the bounded region and two the
/// unbounded one. Returns `true` when the configuration survives.
pub fn prune_planar(info: &PlanarComponentInfo) -> bool {
    info.perpendicular_total == 4 && info.bounded_piercings == 2 && info.unbounded_piercings == 2
}

/// One independent unit of search work: a profile plus the decision prefix
/// pinning the first choices of the search tree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct WorkUnit {
    pub profile: Profile,
    pub prefix: Vec<u32>,
}

enum Drive<'a> {
    Run {
        sink: &'a mut dyn FnMut(LatticeLink) -> ControlFlow<()>,
    },
    Collect {
        depth: usize,
        out: &'a mut Vec<Vec<u32>>,
    },
}

struct SearchCtx<'a> {
    partitions: Vec<Vec<[usize; 3]>>,
    mode: SearchMode,
    guide: &'a [u32],
    path: Vec<u32>,
    drive: Drive<'a>,
    seen: HashSet<String>,
}

impl<'a> SearchCtx<'a> {
    fn candidates(&self, all: std::ops::Range<u32>) -> std::ops::Range<u32> {
        match self.guide.get(self.path.len()) {
            Some(&g) if (all.start..all.end).contains(&g) => g..g + 1,
            Some(_) => 0..0,
            None => all,
        }
    }

    fn collecting_here(&self) -> bool {
        matches!(&self.drive, Drive::Collect { depth, .. } if *depth == self.path.len())
    }

    fn record(&mut self) {
        if let Drive::Collect { out, .. } = &mut self.drive {
            out.push(self.path.clone());
        }
    }

    fn run(&mut self) -> ControlFlow<()> {
        if self.collecting_here() {
            self.record();
            return ControlFlow::Continue(());
        }
        for pi in self.candidates(0..self.partitions.len() as u32) {
            self.path.push(pi);
            if self.collecting_here() {
                self.record();
            } else {
                let partition = self.partitions[pi as usize].clone();
                let mut pe = PartialEmbedding::new(partition);
                let flow = self.dfs(&mut pe);
                if flow.is_break() {
                    self.path.pop();
                    return ControlFlow::Break(());
                }
            }
            self.path.pop();
        }
        ControlFlow::Continue(())
    }

    fn dfs(&mut self, pe: &mut PartialEmbedding) -> ControlFlow<()> {
        if pe.is_complete() {
            if matches!(self.drive, Drive::Collect { .. }) {
                // A leaf shallower than the shard depth still needs a unit.
                self.record();
                return ControlFlow::Continue(());
            }
            return self.emit(pe);
        }
        if self.collecting_here() {
            return self.frontier(pe);
        }
        if pe.component_done() {
            self.next_component(pe)
        } else {
            self.next_stick(pe)
        }
    }

    /// At the shard-collection depth: record each valid child as a prefix
    /// without recursing.
    fn frontier(&mut self, pe: &mut PartialEmbedding) -> ControlFlow<()> {
        if pe.component_done() {
            let c = pe.started();
            let words = words_for(pe.partition[c]);
            let lo = self.word_lower_bound(pe);
            for wi in lo..words.len() as u32 {
                self.path.push(wi);
                self.record();
                self.path.pop();
            }
        } else {
            let word = pe.words.last().unwrap();
            let axis = word[pe.cur_stick] as usize;
            for t in 0..pe.dims[axis] as u32 {
                if let Some(mv) = pe.place_stick(t as i32) {
                    pe.undo_place_stick(mv);
                    self.path.push(t);
                    self.record();
                    self.path.pop();
                }
            }
        }
        ControlFlow::Continue(())
    }

    /// Components with identical triples are interchangeable; force their
    /// word indices to be non-decreasing.
    fn word_lower_bound(&self, pe: &PartialEmbedding) -> u32 {
        let c = pe.started();
        if c == 0 || pe.partition[c] != pe.partition[c - 1] {
            return 0;
        }
        let prev = &pe.words[c - 1];
        let words = words_for(pe.partition[c]);
        words.iter().position(|w| w == prev).map_or(0, |i| i as u32)
    }

    fn next_component(&mut self, pe: &mut PartialEmbedding) -> ControlFlow<()> {
        let c = pe.started();
        let words = words_for(pe.partition[c]);
        let lo = self.word_lower_bound(pe);
        for wi in self.candidates(lo..words.len() as u32) {
            self.path.push(wi);
            let flow = self.place_v0(pe, words[wi as usize].clone());
            self.path.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn place_v0(&mut self, pe: &mut PartialEmbedding, word: Vec<u8>) -> ControlFlow<()> {
        let dims = pe.dims;
        let total = (dims[0] * dims[1] * dims[2]) as u32;
        if self.collecting_here() {
            for enc in 0..total {
                let v0 = decode_v0(enc, dims);
                if let Some(mv) = pe.start_component(word.clone(), v0) {
                    pe.undo_start_component(mv);
                    self.path.push(enc);
                    self.record();
                    self.path.pop();
                }
            }
            return ControlFlow::Continue(());
        }
        for enc in self.candidates(0..total) {
            let v0 = decode_v0(enc, dims);
            if let Some(mv) = pe.start_component(word.clone(), v0) {
                self.path.push(enc);
                let flow = if pe.prune_profile() {
                    self.dfs(pe)
                } else {
                    ControlFlow::Continue(())
                };
                self.path.pop();
                pe.undo_start_component(mv);
                flow?;
            }
        }
        ControlFlow::Continue(())
    }

    fn next_stick(&mut self, pe: &mut PartialEmbedding) -> ControlFlow<()> {
        let word = pe.words.last().unwrap();
        let axis = word[pe.cur_stick] as usize;
        for t in self.candidates(0..pe.dims[axis] as u32) {
            if let Some(mv) = pe.place_stick(t as i32) {
                self.path.push(t);
                let flow = if pe.prune_profile() {
                    self.dfs(pe)
                } else {
                    ControlFlow::Continue(())
                };
                self.path.pop();
                pe.undo_place_stick(mv);
                flow?;
            }
        }
        ControlFlow::Continue(())
    }

    fn emit(&mut self, pe: &mut PartialEmbedding) -> ControlFlow<()> {
        let link = pe.to_link();
        debug_assert!(link.validate().is_valid(), "engine emitted an invalid link");
        if self.mode == SearchMode::Constrained {
            for c in 0..link.components.len() {
                if let Some(info) = planar_component_info(&link, c) {
                    if !prune_planar(&info) {
                        return ControlFlow::Continue(());
                    }
                }
            }
        }
        let canonical = canonicalize(&link);
        let key = crate::format::serialize_link(&canonical);
        if !self.seen.insert(key) {
            return ControlFlow::Continue(());
        }
        match &mut self.drive {
            Drive::Run { sink } => sink(canonical),
            Drive::Collect { .. } => unreachable!("collection never reaches emission"),
        }
    }
}

fn decode_v0(enc: u32, dims: [usize; 3]) -> [i32; 3] {
    let dz = dims[2].max(1) as u32;
    let dy = dims[1].max(1) as u32;
    let z = enc % dz;
    let y = (enc / dz) % dy;
    let x = enc / (dz * dy);
    [x as i32, y as i32, z as i32]
}

/// Splits a profile's search tree into independent work units by collecting
/// every live node at the given decision depth (plus any complete leaves
/// above it). The union of `run_shard` outputs over the units equals
/// `enumerate_leveled` on the profile, up to duplicates removed by the
/// consumer.
pub fn shards(profile: &Profile, mode: SearchMode, depth: usize) -> Vec<WorkUnit> {
    let mut out = Vec::new();
    let mut ctx = SearchCtx {
        partitions: admissible_partitions(profile.counts, profile.components, mode),
        mode,
        guide: &[],
        path: Vec::new(),
        drive: Drive::Collect {
            depth,
            out: &mut out,
        },
        seen: HashSet::new(),
    };
    let _ = ctx.run();
    out.into_iter()
        .map(|prefix| WorkUnit {
            profile: profile.clone(),
            prefix,
        })
        .collect()
}

/// Runs one work unit, feeding every canonical link found (deduplicated
/// within the shard) to `sink`. `sink` may stop the search early.
pub fn run_shard(
    unit: &WorkUnit,
    mode: SearchMode,
    sink: &mut dyn FnMut(LatticeLink) -> ControlFlow<()>,
) {
    let mut ctx = SearchCtx {
        partitions: admissible_partitions(unit.profile.counts, unit.profile.components, mode),
        mode,
        guide: &unit.prefix,
        path: Vec::new(),
        drive: Drive::Run { sink },
        seen: HashSet::new(),
    };
    let _ = ctx.run();
}

/// All canonical extended-properly-leveled links with the profile's stick
/// counts: deduplicated and sorted by serialization (deterministic).
pub fn enumerate_leveled(profile: &Profile, mode: SearchMode) -> Vec<LatticeLink> {
    let unit = WorkUnit {
        profile: profile.clone(),
        prefix: Vec::new(),
    };
    let mut found: Vec<(String, LatticeLink)> = Vec::new();
    run_shard(&unit, mode, &mut |link| {
        found.push((crate::format::serialize_link(&link), link));
        ControlFlow::Continue(())
    });
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    found.into_iter().map(|(_, l)| l).collect()
}

/// Searches stick counts `4..=max_sticks` for the smallest one realizing
/// `target`, returning the witness link. Runs unconstrained through 12
/// sticks and in constrained mode beyond (the planar reduction), matching
/// how census results at those sizes are qualified.
pub fn minimal_witness(target: &LinkType, max_sticks: usize) -> Option<(LatticeLink, usize)> {
    let entry = reference_table().entry(target)?;
    let m = entry.components;
    let want_linking = entry.abs_linking.clone();
    for n in 4..=max_sticks {
        let mode = if n >= 13 {
            SearchMode::Constrained
        } else {
            SearchMode::Unconstrained
        };
        for profile in profiles_for(n, Some(m), mode) {
            let mut witness = None;
            let unit = WorkUnit {
                profile,
                prefix: Vec::new(),
            };
            run_shard(&unit, mode, &mut |link| {
                // Cheap screen first: the linking multiset needs no state sum.
                let lk = linking_matrix(&sheared_projection(&link, Axis::Z));
                if lk.abs_multiset() != want_linking {
                    return ControlFlow::Continue(());
                }
                match classify_full(&link) {
                    Ok(c) if c.label == *target => {
                        witness = Some(link);
                        ControlFlow::Break(())
                    }
                    _ => ControlFlow::Continue(()),
                }
            });
            if let Some(w) = witness {
                return Some((w, n));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::level::{is_extended_properly_leveled, level_all};
    use crate::link::fixtures::h8;
    use crate::link::stick_counts;
    use std::collections::BTreeSet;

    #[test]
    fn unit_square_is_the_whole_four_stick_census() {
        let profiles = profiles_for(4, None, SearchMode::Unconstrained);
        assert_eq!(
            profiles,
            vec![Profile {
                counts: [0, 2, 2],
                components: 1
            }]
        );
        let links = enumerate_leveled(&profiles[0], SearchMode::Unconstrained);
        assert_eq!(links.len(), 1);
        let link = &links[0];
        assert!(link.validate().is_valid());
        assert_eq!(classify(link).unwrap(), LinkType::Unlink(1));
        assert_eq!(canonicalize(link), *link, "emissions are canonical forms");
    }

    #[test]
    fn five_sticks_admit_nothing() {
        assert!(profiles_for(5, None, SearchMode::Unconstrained).is_empty());
    }

    #[test]
    fn six_stick_census_contains_only_unknots() {
        let profiles = profiles_for(6, None, SearchMode::Unconstrained);
        let counts: Vec<[usize; 3]> = profiles.iter().map(|p| p.counts).collect();
        assert_eq!(counts, vec![[0, 3, 3], [2, 2, 2]]);
        for profile in &profiles {
            let links = enumerate_leveled(profile, SearchMode::Unconstrained);
            assert!(!links.is_empty(), "profile {profile} found nothing");
            for link in &links {
                assert_eq!(classify(link).unwrap(), LinkType::Unlink(1));
            }
        }
    }

    #[test]
    fn hopf_link_appears_at_eight_sticks() {
        let witness = minimal_witness(&LinkType::Hopf, 8).expect("Hopf witness at 8");
        assert_eq!(witness.1, 8);
        let counts = stick_counts(&witness.0).unwrap();
        assert_eq!(counts.sorted(), [2, 2, 4]);
        assert!(minimal_witness(&LinkType::Hopf, 7).is_none());
    }

    #[test]
    fn unknot_witness_is_the_square() {
        let (link, n) = minimal_witness(&LinkType::Unlink(1), 6).unwrap();
        assert_eq!(n, 4);
        assert_eq!(link.total_sticks(), 4);
    }

    #[test]
    fn emitted_links_are_leveled_valid_and_in_range() {
        let profiles = profiles_for(7, None, SearchMode::Unconstrained);
        let counts: Vec<[usize; 3]> = profiles.iter().map(|p| p.counts).collect();
        assert_eq!(counts, vec![[2, 2, 3]]);
        let mut total = 0;
        for profile in &profiles {
            for link in enumerate_leveled(profile, SearchMode::Unconstrained) {
                total += 1;
                assert!(link.validate().is_valid());
                for axis in Axis::ALL {
                    assert!(
                        is_extended_properly_leveled(&link, axis),
                        "emission not leveled along {axis}"
                    );
                }
                assert_eq!(stick_counts(&link).unwrap().sorted(), profile.counts);
                let (lo, hi) = link.bounding_box();
                for axis in Axis::ALL {
                    assert_eq!(lo[axis], 0);
                    assert!(hi[axis] < (profile.total() + profile.components) as i64);
                }
                // Leveling a leveled link keeps the stick counts.
                let releveled = level_all(&link).unwrap();
                assert_eq!(
                    stick_counts(&releveled).unwrap().sorted(),
                    profile.counts
                );
            }
        }
        assert!(total > 0, "seven-stick unknots exist");
    }

    #[test]
    fn shard_union_matches_direct_enumeration() {
        let profile = Profile {
            counts: [2, 2, 4],
            components: 2,
        };
        let direct: BTreeSet<String> =
            enumerate_leveled(&profile, SearchMode::Unconstrained)
                .iter()
                .map(crate::format::serialize_link)
                .collect();
        assert!(!direct.is_empty());
        for depth in [1, 3, 5] {
            let units = shards(&profile, SearchMode::Unconstrained, depth);
            if depth >= 3 {
                // Depths 1–2 fix the (single) partition and word; from the
                // start-vertex decision on, the tree genuinely branches.
                assert!(units.len() > 1, "depth {depth} produced no split");
            }
            let mut merged = BTreeSet::new();
            for unit in &units {
                run_shard(unit, SearchMode::Unconstrained, &mut |link| {
                    merged.insert(crate::format::serialize_link(&link));
                    ControlFlow::Continue(())
                });
            }
            assert_eq!(merged, direct, "shard union at depth {depth}");
        }
    }

    #[test]
    fn degenerate_profiles_shard_sanely() {
        // No component can use exactly one stick on an axis, so a (1,1,1)
        // "profile" has no admissible partition and splits into nothing.
        let impossible = Profile {
            counts: [1, 1, 1],
            components: 1,
        };
        assert!(shards(&impossible, SearchMode::Unconstrained, 3).is_empty());

        // The flat square profile splits into a handful of shards at depth 1
        // whose union is still the single canonical square.
        let square = Profile {
            counts: [0, 2, 2],
            components: 1,
        };
        let units = shards(&square, SearchMode::Unconstrained, 1);
        assert!(!units.is_empty() && units.len() < 20, "{}", units.len());
        let mut merged = BTreeSet::new();
        for unit in &units {
            run_shard(unit, SearchMode::Unconstrained, &mut |link| {
                merged.insert(crate::format::serialize_link(&link));
                ControlFlow::Continue(())
            });
        }
        assert_eq!(merged.len(), 1);
    }

    #[test]
    fn prune_and_placement_reject_dead_states() {
        // A fresh empty state can extend.
        let mut pe = PartialEmbedding::new(vec![[2, 2, 0], [2, 2, 2]]);
        assert!(pe.prune_profile());
        assert_eq!(pe.dims(), [4, 4, 3]);

        // First component: a flat square reserving z-level 0 exclusively.
        pe.start_component(vec![0, 1, 0, 1], [0, 0, 0]).unwrap();
        for t in [1, 1, 0, 0] {
            pe.place_stick(t).unwrap();
            assert!(pe.prune_profile());
        }
        assert!(pe.component_done());

        // Foreign vertices may not land on the reserved level…
        assert!(pe
            .start_component(vec![0, 1, 2, 0, 1, 2], [2, 2, 0])
            .is_none());
        // …and a level already carrying two same-axis endpoints admits no
        // third: x-level 0 is full, so a stick departing it is refused.
        let mv = pe
            .start_component(vec![0, 1, 2, 0, 1, 2], [0, 2, 1])
            .unwrap();
        assert!(pe.place_stick(2).is_none());
        pe.undo_start_component(mv);

        // A legal hexagon for the second component.
        pe.start_component(vec![0, 1, 2, 0, 1, 2], [2, 2, 1])
            .unwrap();
        assert!(pe.place_stick(0).is_none(), "x-level 0 is full (arrival)");
        pe.place_stick(3).unwrap();
        pe.place_stick(3).unwrap();
        assert!(pe.place_stick(0).is_none(), "z-level 0 is flat-reserved");
        pe.place_stick(2).unwrap();
        // The last x-stick must return to the start level, nowhere else.
        assert!(pe.place_stick(0).is_none());
        pe.place_stick(2).unwrap();
        pe.place_stick(2).unwrap();
        pe.place_stick(1).unwrap();
        assert!(pe.is_complete());
        let link = pe.to_link();
        assert!(link.validate().is_valid());
        assert_eq!(link.components.len(), 2);
    }

    #[test]
    fn planar_info_matches_the_hopf_picture() {
        let link = h8();
        let info = planar_component_info(&link, 0).expect("component A is flat");
        assert_eq!(info.axis, Axis::Z);
        assert_eq!(info.level, 0);
        assert_eq!(info.perpendicular_total, 2);
        assert_eq!(info.bounded_piercings, 1);
        assert_eq!(info.unbounded_piercings, 1);
        assert!(!prune_planar(&info), "a Hopf clasp is not a 2+2 piercing");
        // The second component is flat too (perpendicular to x), pierced
        // once inside and once outside by the square.
        let info_b = planar_component_info(&link, 1).expect("component B is flat");
        assert_eq!(info_b.axis, Axis::X);
        assert_eq!(info_b.perpendicular_total, 2);
        assert_eq!(info_b.bounded_piercings, 1);
        assert_eq!(info_b.unbounded_piercings, 1);
        // A component with sticks in all three axes has no planar info.
        let spatial = enumerate_leveled(
            &Profile {
                counts: [2, 2, 2],
                components: 1,
            },
            SearchMode::Unconstrained,
        );
        assert!(
            planar_component_info(&spatial[0], 0).is_none(),
            "spatial hexagons are not flat"
        );
    }

    #[test]
    fn constrained_profiles_need_four_sticks_per_axis() {
        let profiles = profiles_for(13, Some(2), SearchMode::Constrained);
        assert_eq!(
            profiles,
            vec![Profile {
                counts: [4, 4, 5],
                components: 2
            }]
        );
        let at14: Vec<[usize; 3]> = profiles_for(14, Some(2), SearchMode::Constrained)
            .into_iter()
            .map(|p| p.counts)
            .collect();
        assert_eq!(at14, vec![[4, 4, 6], [4, 5, 5]]);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let profile = Profile {
            counts: [2, 2, 2],
            components: 1,
        };
        let a = enumerate_leveled(&profile, SearchMode::Unconstrained);
        let b = enumerate_leveled(&profile, SearchMode::Unconstrained);
        let ser = |v: &Vec<LatticeLink>| -> Vec<String> {
            v.iter().map(crate::format::serialize_link).collect()
        };
        assert_eq!(ser(&a), ser(&b));
        assert!(!a.is_empty(), "spatial hexagons exist");
    }
}
