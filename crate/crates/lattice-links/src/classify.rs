//! Link-type recognition against a reference table of small links.
//!
//! A lattice link is identified by the tuple (component count, multiset of
//! absolute pairwise linking numbers, Jones polynomial minimized over all
//! component reorientations and over mirroring). The table is built once at
//! startup from braid-closure fixtures — standard presentations of every link
//! type with at most 14 sticks plus their split composites with unknots — and
//! all polynomial values are computed by the same state-sum code that census
//! links go through, never hard-coded.
//!
//! Reorientation matters: Jones is an invariant of *oriented* links, while a
//! lattice link's vertex cycles carry arbitrary orientations. Reversing a
//! subset `S` of components leaves the bracket unchanged and flips the sign of
//! every crossing with exactly one strand in `S`, so the full orientation
//! orbit of Jones values is cheap to compute from one PD code. Keying on the
//! minimum over that orbit (and its mirror) makes the lookup well-defined on
//! unoriented links; a startup self-check asserts that no two distinct labels
//! collide on a key.

use crate::bracket::{jones_a, kauffman_bracket, BracketError, BracketPoly, CROSSING_BUDGET};
use crate::diagram::{sheared_projection, Diagram};
use crate::link::{stick_counts, AxisCounts, LatticeLink};
use crate::pd::{pd_code, simplify_r1_r2, PdCode, PdCrossing};
use crate::point::Axis;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

/// Symmetric integer matrix of pairwise linking numbers, zero diagonal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LinkingMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl LinkingMatrix {
    pub fn zero(size: usize) -> LinkingMatrix {
        LinkingMatrix {
            size,
            entries: vec![0; size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    fn add(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.size + j] += v;
        self.entries[j * self.size + i] += v;
    }

    /// Sorted multiset of `|lk(i,j)|` over pairs `i < j`: invariant under
    /// component permutation and reversal of any subset of components.
    pub fn abs_multiset(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.size * (self.size - 1) / 2);
        for i in 0..self.size {
            for j in i + 1..self.size {
                out.push(self.get(i, j).abs());
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for LinkingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.size {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.size {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Pairwise linking numbers of a diagram: half the signed sum of
/// inter-component crossings, which is always an even sum.
pub fn linking_matrix(diagram: &Diagram) -> LinkingMatrix {
    let m = diagram.strands.len();
    let mut sums = LinkingMatrix::zero(m);
    for x in &diagram.crossings {
        let (i, j) = (x.over.component, x.under.component);
        if i != j {
            sums.add(i, j, x.sign as i64);
        }
    }
    for v in &mut sums.entries {
        assert!(*v % 2 == 0, "inter-component crossing sum must be even");
        *v /= 2;
    }
    sums
}

fn linking_multiset_from_pd(pd: &PdCode, components: usize) -> Vec<i64> {
    let mut sums = LinkingMatrix::zero(components);
    for x in &pd.crossings {
        let (i, j) = (x.over_component as usize, x.under_component as usize);
        if i != j {
            sums.add(i, j, x.sign as i64);
        }
    }
    for v in &mut sums.entries {
        assert!(*v % 2 == 0);
        *v /= 2;
    }
    sums.abs_multiset()
}

/// Named link types recognizable at 14 sticks or fewer.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum LinkType {
    Unlink(u8),
    Trefoil,
    FigureEight,
    Hopf,
    /// The connected sum of two Hopf links: the three-component chain.
    HopfChain,
    /// The (2,4)-torus link.
    TorusLink24,
    Whitehead,
    Borromean,
    /// The (3,3)-torus link.
    TorusLink33,
    /// A split union of a nontrivial type with some number of unknots.
    SplitUnion(Box<LinkType>, u8),
    /// No table entry matches; carries the invariant tuple that failed.
    Unrecognized(InvariantTuple),
}

/// The classification key: what the table lookup actually compares.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct InvariantTuple {
    pub components: usize,
    pub abs_linking: Vec<i64>,
    /// Jones minimized over component reorientations and mirroring.
    pub jones_min: BracketPoly,
}

impl LinkType {
    pub fn is_recognized(&self) -> bool {
        !matches!(self, LinkType::Unrecognized(_))
    }

    /// Looks a display label (e.g. `3_1`, `2_1^2`, `3_1 ⊔ 0_1`) back up
    /// among the recognized types.
    pub fn parse(label: &str) -> Option<LinkType> {
        reference_table()
            .entries()
            .map(|e| &e.label)
            .find(|t| t.to_string() == label)
            .cloned()
    }
}

impl fmt::Display for LinkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkType::Unlink(1) => write!(f, "0_1"),
            LinkType::Unlink(k) => write!(f, "0_1^{k}"),
            LinkType::Trefoil => write!(f, "3_1"),
            LinkType::FigureEight => write!(f, "4_1"),
            LinkType::Hopf => write!(f, "2_1^2"),
            LinkType::HopfChain => write!(f, "2_1^2#2_1^2"),
            LinkType::TorusLink24 => write!(f, "4_1^2"),
            LinkType::Whitehead => write!(f, "5_1^2"),
            LinkType::Borromean => write!(f, "6_2^3"),
            LinkType::TorusLink33 => write!(f, "6_3^3"),
            LinkType::SplitUnion(base, k) => {
                write!(f, "{base}")?;
                for _ in 0..*k {
                    write!(f, " ⊔ 0_1")?;
                }
                Ok(())
            }
            LinkType::Unrecognized(_) => write!(f, "UNRECOGNIZED"),
        }
    }
}

/// Handedness of a recognized link, in the unoriented sense. Several small
/// links are amphichiral as unoriented links even though their oriented forms
/// are chiral (the Hopf link's round-circle model is mirror-symmetric).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Positive,
    Negative,
    Amphichiral,
    /// Key matched a table entry but the orientation orbit matched neither
    /// fixture exactly: an invariant collision worth inspecting.
    Mixed,
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Chirality::Positive => "positive",
            Chirality::Negative => "negative",
            Chirality::Amphichiral => "amphichiral",
            Chirality::Mixed => "mixed",
        };
        write!(f, "{s}")
    }
}

/// The closure of a braid word: PD code plus honest component count
/// (free-loop components included).
pub struct BraidClosure {
    pub pd: PdCode,
    pub components: usize,
}

/// PD code of the closure of a braid on `strands` strands. Letters are
/// `±i` for the generator σ_i (1-based); positive σ_i takes the strand
/// arriving at position `i+1` over the strand arriving at position `i`,
/// which gives the crossing sign +1 under the right-handed convention.
/// Strands never involved in a crossing close into free loops.
pub fn braid_closure(strands: usize, word: &[i32]) -> BraidClosure {
    assert!(strands >= 1);
    struct RawCrossing {
        arcs: [u32; 4],
        sign: i8,
        over_strand: usize,
        under_strand: usize,
    }

    let initial: Vec<u32> = (0..strands as u32).collect();
    let mut current = initial.clone();
    let mut next = strands as u32;
    // pos_strand[p] = index of the strand currently at position p.
    let mut pos_strand: Vec<usize> = (0..strands).collect();
    let mut raw: Vec<RawCrossing> = Vec::with_capacity(word.len());
    for &g in word {
        assert!(g != 0, "braid letters are nonzero");
        let i = g.unsigned_abs() as usize - 1;
        assert!(i + 1 < strands, "generator σ_{} needs {} strands", g.abs(), i + 2);
        let (in_l, in_r) = (current[i], current[i + 1]);
        let (out_l, out_r) = (next, next + 1);
        next += 2;
        // Slots counterclockwise from the incoming under-arc, strands
        // oriented downward: inputs NW/NE, outputs SW/SE.
        if g > 0 {
            raw.push(RawCrossing {
                arcs: [in_l, out_l, out_r, in_r],
                sign: 1,
                over_strand: pos_strand[i + 1],
                under_strand: pos_strand[i],
            });
        } else {
            raw.push(RawCrossing {
                arcs: [in_r, in_l, out_l, out_r],
                sign: -1,
                over_strand: pos_strand[i],
                under_strand: pos_strand[i + 1],
            });
        }
        current[i] = out_l;
        current[i + 1] = out_r;
        pos_strand.swap(i, i + 1);
    }

    // Components: cycles of "strand s ends where strand end_at[s] restarts".
    let mut end_pos = vec![0usize; strands];
    for (p, &s) in pos_strand.iter().enumerate() {
        end_pos[s] = p;
    }
    let mut comp_of_strand = vec![usize::MAX; strands];
    let mut components = 0usize;
    for s in 0..strands {
        if comp_of_strand[s] != usize::MAX {
            continue;
        }
        let mut t = s;
        while comp_of_strand[t] == usize::MAX {
            comp_of_strand[t] = components;
            t = end_pos[t];
        }
        components += 1;
    }

    // Close up: the arc leaving the braid at position p is the arc entering
    // at position p.
    let mut uf: Vec<u32> = (0..next).collect();
    fn find(uf: &mut [u32], mut x: u32) -> u32 {
        while uf[x as usize] != x {
            let up = uf[uf[x as usize] as usize];
            uf[x as usize] = up;
            x = up;
        }
        x
    }
    for p in 0..strands {
        let (a, b) = (find(&mut uf, current[p]), find(&mut uf, initial[p]));
        if a != b {
            uf[a as usize] = b;
        }
    }

    let mut label_of = BTreeMap::new();
    let mut crossings = Vec::with_capacity(raw.len());
    for rc in &raw {
        let arcs = rc.arcs.map(|a| {
            let root = find(&mut uf, a);
            let fresh = label_of.len() as u32 + 1;
            *label_of.entry(root).or_insert(fresh)
        });
        crossings.push(PdCrossing {
            arcs,
            sign: rc.sign,
            over_component: comp_of_strand[rc.over_strand] as u32,
            under_component: comp_of_strand[rc.under_strand] as u32,
        });
    }
    let crossed: BTreeSet<usize> = raw
        .iter()
        .flat_map(|rc| [comp_of_strand[rc.over_strand], comp_of_strand[rc.under_strand]])
        .collect();
    let pd = PdCode {
        crossings,
        free_loops: components - crossed.len(),
        num_edges: label_of.len() as u32,
    };
    BraidClosure { pd, components }
}

/// All Jones values of a PD over the `2^k` reorientations of the components
/// that participate in crossings (reversing a crossing-free component never
/// changes anything). The bracket is orientation-independent; only the
/// writhe normalization moves.
pub fn jones_orbit(pd: &PdCode) -> Result<BTreeSet<BracketPoly>, BracketError> {
    let bracket = kauffman_bracket(pd)?;
    let ids: Vec<u32> = pd
        .crossings
        .iter()
        .flat_map(|x| [x.over_component, x.under_component])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(ids.len() <= 16, "too many crossing components to reorient");
    let mut orbit = BTreeSet::new();
    for mask in 0u32..1 << ids.len() {
        let reversed = |c: u32| {
            let k = ids.binary_search(&c).unwrap();
            mask >> k & 1 == 1
        };
        let w: i64 = pd
            .crossings
            .iter()
            .map(|x| {
                let s = x.sign as i64;
                if reversed(x.over_component) != reversed(x.under_component) {
                    -s
                } else {
                    s
                }
            })
            .sum();
        let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
        let mut v = BracketPoly::zero();
        v.add_scaled(&bracket, i32::try_from(-3 * w).unwrap(), sign);
        orbit.insert(v);
    }
    Ok(orbit)
}

/// The orientation orbit of the mirror image: mirror each member. An
/// unoriented link is amphichiral in the Jones sense exactly when this fixes
/// its orbit.
pub fn mirror_orbit(orbit: &BTreeSet<BracketPoly>) -> BTreeSet<BracketPoly> {
    orbit.iter().map(BracketPoly::mirror).collect()
}

fn key_jones(orbit: &BTreeSet<BracketPoly>) -> BracketPoly {
    orbit
        .iter()
        .map(BracketPoly::mirror_normalized)
        .min()
        .expect("orbit is never empty")
}

type ClassKey = (usize, Vec<i64>, BracketPoly);

pub struct TableEntry {
    pub label: LinkType,
    /// +1 / −1 for the two mirror fixtures of a chiral type, 0 where the
    /// distinction is not applicable.
    pub chirality_sign: i8,
    pub components: usize,
    pub abs_linking: Vec<i64>,
    pub orbit: BTreeSet<BracketPoly>,
}

pub struct ReferenceTable {
    buckets: BTreeMap<ClassKey, Vec<TableEntry>>,
}

impl ReferenceTable {
    pub fn entries(&self) -> impl Iterator<Item = &TableEntry> {
        self.buckets.values().flatten()
    }

    pub fn entry(&self, label: &LinkType) -> Option<&TableEntry> {
        self.entries().find(|e| e.label == *label)
    }
}

fn fixtures() -> Vec<(LinkType, i8, usize, Vec<i32>)> {
    use LinkType::*;
    let split = |base: LinkType, k: u8| SplitUnion(Box::new(base), k);
    vec![
        (Unlink(1), 0, 1, vec![]),
        (Unlink(2), 0, 2, vec![]),
        (Unlink(3), 0, 3, vec![]),
        (Trefoil, 1, 2, vec![1, 1, 1]),
        (Trefoil, -1, 2, vec![-1, -1, -1]),
        (FigureEight, 0, 3, vec![1, -2, 1, -2]),
        (Hopf, 1, 2, vec![1, 1]),
        (Hopf, -1, 2, vec![-1, -1]),
        (TorusLink24, 1, 2, vec![1, 1, 1, 1]),
        (TorusLink24, -1, 2, vec![-1, -1, -1, -1]),
        (Whitehead, 1, 3, vec![1, -2, 1, -2, 1]),
        (Whitehead, -1, 3, vec![-1, 2, -1, 2, -1]),
        (HopfChain, 1, 3, vec![1, 1, 2, 2]),
        (HopfChain, 0, 3, vec![1, 1, -2, -2]),
        (HopfChain, -1, 3, vec![-1, -1, -2, -2]),
        (Borromean, 0, 3, vec![1, -2, 1, -2, 1, -2]),
        (TorusLink33, 1, 3, vec![1, 2, 1, 2, 1, 2]),
        (TorusLink33, -1, 3, vec![-1, -2, -1, -2, -1, -2]),
        // Split composites: extra strands close into free unknot loops.
        (split(Hopf, 1), 1, 3, vec![1, 1]),
        (split(Hopf, 1), -1, 3, vec![-1, -1]),
        (split(Trefoil, 1), 1, 3, vec![1, 1, 1]),
        (split(Trefoil, 1), -1, 3, vec![-1, -1, -1]),
        (split(Trefoil, 2), 1, 4, vec![1, 1, 1]),
        (split(Trefoil, 2), -1, 4, vec![-1, -1, -1]),
        (split(FigureEight, 1), 0, 4, vec![1, -2, 1, -2]),
        (split(FigureEight, 2), 0, 5, vec![1, -2, 1, -2]),
        (split(Whitehead, 1), 1, 4, vec![1, -2, 1, -2, 1]),
        (split(Whitehead, 1), -1, 4, vec![-1, 2, -1, 2, -1]),
        (split(TorusLink24, 1), 1, 3, vec![1, 1, 1, 1]),
        (split(TorusLink24, 1), -1, 3, vec![-1, -1, -1, -1]),
    ]
}

fn build_table() -> ReferenceTable {
    let mut buckets: BTreeMap<ClassKey, Vec<TableEntry>> = BTreeMap::new();
    for (label, chirality_sign, strands, word) in fixtures() {
        let closure = braid_closure(strands, &word);
        let abs_linking = linking_multiset_from_pd(&closure.pd, closure.components);
        let simplified = simplify_r1_r2(&closure.pd);
        let orbit = jones_orbit(&simplified).expect("fixtures stay within the crossing budget");
        let key = (closure.components, abs_linking.clone(), key_jones(&orbit));
        buckets.entry(key).or_default().push(TableEntry {
            label,
            chirality_sign,
            components: closure.components,
            abs_linking,
            orbit,
        });
    }
    // Self-check: a key shared by two different labels would make
    // classification unsound, so refuse to start.
    for entries in buckets.values() {
        for e in &entries[1..] {
            assert!(
                e.label == entries[0].label,
                "reference table collision: {} and {} share an invariant key",
                entries[0].label,
                e.label
            );
        }
    }
    ReferenceTable { buckets }
}

/// The shared reference table, built on first use. Panics on first use if
/// the fixture invariants fail their pairwise-distinguishability self-check.
pub fn reference_table() -> &'static ReferenceTable {
    static TABLE: OnceLock<ReferenceTable> = OnceLock::new();
    TABLE.get_or_init(build_table)
}

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("link is not valid: {0}")]
    InvalidLink(String),
    #[error(
        "no projection fits the crossing budget {budget}: simplified crossing \
         counts per axis {counts:?}"
    )]
    TooComplex { counts: [usize; 3], budget: usize },
}

/// Full classification record for one link presentation.
#[derive(Clone, Debug)]
pub struct Classification {
    pub label: LinkType,
    pub chirality: Option<Chirality>,
    pub components: usize,
    pub stick_counts: AxisCounts,
    pub linking: LinkingMatrix,
    /// Jones of the presentation as oriented by its vertex cycles.
    pub jones: BracketPoly,
    /// Crossing count of the projection used, before simplification.
    pub crossings: usize,
    pub axis: Axis,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "components: {}", self.components)?;
        writeln!(
            f,
            "sticks: {} (total {})",
            self.stick_counts,
            self.stick_counts.total()
        )?;
        writeln!(
            f,
            "crossings: {} (projected along {})",
            self.crossings, self.axis
        )?;
        writeln!(f, "linking matrix: {}", self.linking)?;
        writeln!(f, "jones (A): {}", self.jones)?;
        writeln!(f, "label: {}", self.label)?;
        match &self.chirality {
            Some(c) => write!(f, "chirality: {c}"),
            None => write!(f, "chirality: n/a"),
        }
    }
}

/// Classifies a valid lattice link. Tries the three projection axes in the
/// order z, x, y and uses the first whose simplified diagram fits the
/// state-sum budget.
pub fn classify_full(link: &LatticeLink) -> Result<Classification, ClassifyError> {
    let report = link.validate();
    if !report.is_valid() {
        return Err(ClassifyError::InvalidLink(report.to_string()));
    }
    let sticks = stick_counts(link).expect("validated link has a stick decomposition");
    let m = link.components.len();
    let mut counts = [usize::MAX; 3];
    for axis in [Axis::Z, Axis::X, Axis::Y] {
        let diagram = sheared_projection(link, axis);
        let pd = pd_code(&diagram);
        let simplified = simplify_r1_r2(&pd);
        counts[axis.index()] = simplified.crossings.len();
        if simplified.crossings.len() > CROSSING_BUDGET {
            continue;
        }
        let linking = linking_matrix(&diagram);
        let orbit = jones_orbit(&simplified).expect("budget was checked");
        let jones = jones_a(&simplified, simplified.writhe()).expect("budget was checked");
        let abs_linking = linking.abs_multiset();
        let key = (m, abs_linking.clone(), key_jones(&orbit));
        let (label, chirality) = match reference_table().buckets.get(&key) {
            None => (
                LinkType::Unrecognized(InvariantTuple {
                    components: m,
                    abs_linking,
                    jones_min: key.2.clone(),
                }),
                None,
            ),
            Some(entries) => {
                let mut plus = false;
                let mut minus = false;
                let mut neutral = false;
                for e in entries {
                    if e.orbit == orbit {
                        match e.chirality_sign {
                            1 => plus = true,
                            -1 => minus = true,
                            _ => neutral = true,
                        }
                    }
                }
                let chirality = match (plus, minus, neutral) {
                    (_, _, true) => Chirality::Amphichiral,
                    (true, true, _) => Chirality::Amphichiral,
                    (true, false, _) => Chirality::Positive,
                    (false, true, _) => Chirality::Negative,
                    (false, false, false) => Chirality::Mixed,
                };
                (entries[0].label.clone(), Some(chirality))
            }
        };
        return Ok(Classification {
            label,
            chirality,
            components: m,
            stick_counts: sticks,
            linking,
            jones,
            crossings: diagram.crossings.len(),
            axis,
        });
    }
    Err(ClassifyError::TooComplex {
        counts,
        budget: CROSSING_BUDGET,
    })
}

/// Label-only classification.
pub fn classify(link: &LatticeLink) -> Result<LinkType, ClassifyError> {
    classify_full(link).map(|c| c.label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{apply_symmetry, canonicalize};
    use crate::level::level_all;
    use crate::link::fixtures::{h8, l_hexagon, u4};
    use crate::point::{LatticePoint, LatticeSymmetry, SignedPermutation};

    fn poly(terms: &[(i32, i64)]) -> BracketPoly {
        let mut out = BracketPoly::zero();
        for &(e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn orbit_of(strands: usize, word: &[i32]) -> BTreeSet<BracketPoly> {
        jones_orbit(&braid_closure(strands, word).pd).unwrap()
    }

    /// |V(−1)|, the link determinant, evaluated exactly in ℤ[A]/(A⁴+1).
    /// Jones exponents are even, so the value lands in ℤ + ℤ·A².
    fn determinant(v: &BracketPoly) -> i64 {
        let mut slots = [0i64; 4];
        for (e, c) in v.terms() {
            let r = e.rem_euclid(8);
            if r >= 4 {
                slots[(r - 4) as usize] -= c;
            } else {
                slots[r as usize] += c;
            }
        }
        assert_eq!(slots[1], 0);
        assert_eq!(slots[3], 0);
        assert!(
            slots[0] == 0 || slots[2] == 0,
            "determinant is real or purely imaginary, got {slots:?}"
        );
        (slots[0] + slots[2]).abs()
    }

    fn eval_at_one(v: &BracketPoly) -> i64 {
        v.terms().map(|(_, c)| c).sum()
    }

    #[test]
    fn table_builds_and_is_collision_free() {
        let table = reference_table();
        let labels: BTreeSet<String> = table.entries().map(|e| e.label.to_string()).collect();
        for name in [
            "0_1",
            "0_1^2",
            "0_1^3",
            "3_1",
            "4_1",
            "2_1^2",
            "2_1^2#2_1^2",
            "4_1^2",
            "5_1^2",
            "6_2^3",
            "6_3^3",
            "2_1^2 ⊔ 0_1",
            "3_1 ⊔ 0_1",
            "5_1^2 ⊔ 0_1",
        ] {
            assert!(labels.contains(name), "table is missing {name}");
        }
    }

    #[test]
    fn trefoil_jones_matches_the_literature() {
        // Closure of σ₁³ is the right-handed trefoil: V(t) = −t⁴ + t³ + t,
        // i.e. −A⁻¹⁶ + A⁻¹² + A⁻⁴ under t = A⁻⁴. Knot orbits are singletons.
        let right = orbit_of(2, &[1, 1, 1]);
        let expected: BTreeSet<_> = [poly(&[(-16, -1), (-12, 1), (-4, 1)])].into();
        assert_eq!(right, expected);
        let left = orbit_of(2, &[-1, -1, -1]);
        assert_eq!(left, mirror_orbit(&right));
        assert_ne!(left, right, "the trefoil is chiral");
    }

    #[test]
    fn figure_eight_jones_is_the_amphichiral_classic() {
        // V(4₁) = t⁻² − t⁻¹ + 1 − t + t²: self-mirror.
        let orbit = orbit_of(3, &[1, -2, 1, -2]);
        let expected: BTreeSet<_> =
            [poly(&[(8, 1), (4, -1), (0, 1), (-4, -1), (-8, 1)])].into();
        assert_eq!(orbit, expected);
        assert_eq!(orbit, mirror_orbit(&orbit));
    }

    #[test]
    fn hopf_orientation_orbit_is_mirror_closed() {
        // Reversing one component of the positive Hopf link produces the
        // same oriented link as mirroring the negative one; the unoriented
        // Hopf link is amphichiral (its two-round-circles model is invariant
        // under reflection through the plane of one circle).
        let plus = orbit_of(2, &[1, 1]);
        let minus = orbit_of(2, &[-1, -1]);
        let expected: BTreeSet<_> =
            [poly(&[(-2, -1), (-10, -1)]), poly(&[(2, -1), (10, -1)])].into();
        assert_eq!(plus, expected);
        assert_eq!(plus, minus);
    }

    #[test]
    fn torus_link_24_is_chiral_with_linking_two() {
        let plus = braid_closure(2, &[1, 1, 1, 1]);
        assert_eq!(plus.components, 2);
        assert_eq!(linking_multiset_from_pd(&plus.pd, 2), vec![2]);
        let plus_orbit = jones_orbit(&plus.pd).unwrap();
        let minus_orbit = orbit_of(2, &[-1, -1, -1, -1]);
        assert_eq!(minus_orbit, mirror_orbit(&plus_orbit));
        assert_ne!(plus_orbit, minus_orbit, "the (2,4)-torus link is chiral");
        for v in &plus_orbit {
            assert_eq!(determinant(v), 4);
        }
    }

    #[test]
    fn whitehead_fixture_has_the_right_invariants() {
        let closure = braid_closure(3, &[1, -2, 1, -2, 1]);
        assert_eq!(closure.components, 2);
        assert_eq!(linking_multiset_from_pd(&closure.pd, 2), vec![0]);
        let orbit = jones_orbit(&closure.pd).unwrap();
        // With zero linking the writhe survives every reorientation, so the
        // orbit is a singleton: the literature value
        // t^(7/2) − 2t^(5/2) + t^(3/2) − 2t^(1/2) + t^(−1/2) − t^(−3/2)
        // written with t^(1/2) = A⁻².
        let expected: BTreeSet<_> = [poly(&[
            (-14, 1),
            (-10, -2),
            (-6, 1),
            (-2, -2),
            (2, 1),
            (6, -1),
        ])]
        .into();
        assert_eq!(orbit, expected);
        // Chiral: its reduced alternating diagram has self-writhe ±1, and
        // Jones concurs.
        assert_ne!(orbit, mirror_orbit(&orbit), "the Whitehead link is chiral");
        for v in &orbit {
            assert_eq!(determinant(v), 8, "Whitehead determinant");
            assert_eq!(eval_at_one(v), -2);
        }
    }

    #[test]
    fn chain_orbits_coincide_for_all_clasp_signs() {
        // The three-component chain is one unoriented link regardless of how
        // its two clasps are signed; all three fixtures must agree exactly.
        let pp = orbit_of(3, &[1, 1, 2, 2]);
        let pm = orbit_of(3, &[1, 1, -2, -2]);
        let mm = orbit_of(3, &[-1, -1, -2, -2]);
        assert_eq!(pp, pm);
        assert_eq!(pp, mm);
        assert_eq!(pp, mirror_orbit(&pp));
        for v in &pp {
            assert_eq!(determinant(v), 4, "det(2₁²#2₁²) = det(2₁²)²");
            assert_eq!(eval_at_one(v), 4, "V(1) = (−2)^(m−1)");
        }
        let closure = braid_closure(3, &[1, 1, 2, 2]);
        assert_eq!(closure.components, 3);
        assert_eq!(linking_multiset_from_pd(&closure.pd, 3), vec![0, 1, 1]);
    }

    #[test]
    fn borromean_fixture_has_zero_linking_but_is_not_split() {
        let closure = braid_closure(3, &[1, -2, 1, -2, 1, -2]);
        assert_eq!(closure.components, 3);
        assert_eq!(linking_multiset_from_pd(&closure.pd, 3), vec![0, 0, 0]);
        let orbit = jones_orbit(&closure.pd).unwrap();
        assert_eq!(orbit, mirror_orbit(&orbit), "Borromean rings are amphichiral");
        let unlink3 = jones_orbit(&PdCode::unlink(3)).unwrap();
        assert_ne!(orbit, unlink3);
        for v in &orbit {
            assert_eq!(eval_at_one(v), 4);
        }
    }

    #[test]
    fn torus_link_33_is_chiral_with_all_linking_one() {
        let closure = braid_closure(3, &[1, 2, 1, 2, 1, 2]);
        assert_eq!(closure.components, 3);
        assert_eq!(linking_multiset_from_pd(&closure.pd, 3), vec![1, 1, 1]);
        let orbit = jones_orbit(&closure.pd).unwrap();
        assert_ne!(orbit, mirror_orbit(&orbit), "the (3,3)-torus link is chiral");
        // Distinct from the chain, which shares the component count.
        assert_ne!(orbit, orbit_of(3, &[1, 1, 2, 2]));
    }

    #[test]
    fn jones_at_one_counts_components_for_every_fixture() {
        for entry in reference_table().entries() {
            let expected = (-2i64).pow(entry.components as u32 - 1);
            for v in &entry.orbit {
                assert_eq!(
                    eval_at_one(v),
                    expected,
                    "V(1) mismatch for {} with m = {}",
                    entry.label,
                    entry.components
                );
            }
        }
    }

    #[test]
    fn classify_recognizes_the_basic_fixtures() {
        let unknot = classify_full(&u4()).unwrap();
        assert_eq!(unknot.label, LinkType::Unlink(1));
        assert_eq!(unknot.chirality, Some(Chirality::Amphichiral));
        assert_eq!(unknot.jones, BracketPoly::one());

        let hexagon = LatticeLink::new(vec![l_hexagon()]);
        assert_eq!(classify(&hexagon).unwrap(), LinkType::Unlink(1));

        let hopf = classify_full(&h8()).unwrap();
        assert_eq!(hopf.label, LinkType::Hopf);
        assert_eq!(hopf.chirality, Some(Chirality::Amphichiral));
        assert_eq!(hopf.components, 2);
        assert_eq!(hopf.linking.abs_multiset(), vec![1]);
        assert_eq!(hopf.crossings, 2);
        let shown = hopf.to_string();
        assert!(shown.contains("label: 2_1^2"), "{shown}");
        assert!(shown.contains("chirality: amphichiral"), "{shown}");
    }

    #[test]
    fn classify_handles_split_unions() {
        let far = LatticeSymmetry {
            linear: SignedPermutation::IDENTITY,
            translation: LatticePoint::new(30, 0, 0),
        };
        let mut comps = h8().components;
        comps.extend(apply_symmetry(&u4(), &far).components);
        let link = LatticeLink::new(comps);
        let c = classify_full(&link).unwrap();
        assert_eq!(c.label.to_string(), "2_1^2 ⊔ 0_1");
        assert_eq!(c.components, 3);
        assert_eq!(c.linking.abs_multiset(), vec![0, 0, 1]);

        let mut squares = u4().components;
        squares.extend(apply_symmetry(&u4(), &far).components);
        assert_eq!(
            classify(&LatticeLink::new(squares)).unwrap(),
            LinkType::Unlink(2)
        );
    }

    #[test]
    fn classify_is_constant_on_the_symmetry_orbit() {
        let link = h8();
        for linear in SignedPermutation::all() {
            let g = LatticeSymmetry {
                linear,
                translation: LatticePoint::new(-3, 5, 11),
            };
            let moved = apply_symmetry(&link, &g);
            assert_eq!(classify(&moved).unwrap(), LinkType::Hopf);
            assert_eq!(
                classify(&canonicalize(&moved)).unwrap(),
                LinkType::Hopf
            );
        }
    }

    #[test]
    fn jones_respects_symmetry_determinants() {
        let link = h8();
        let base = classify_full(&link).unwrap().jones;
        for linear in SignedPermutation::all() {
            let det = linear.determinant();
            let g = LatticeSymmetry {
                linear,
                translation: LatticePoint::new(0, 0, 0),
            };
            let jones = classify_full(&apply_symmetry(&link, &g)).unwrap().jones;
            if det == 1 {
                assert_eq!(jones, base, "rotation changed jones");
            } else {
                assert_eq!(jones, base.mirror(), "reflection must mirror jones");
            }
        }
    }

    #[test]
    fn jones_is_invariant_under_leveling() {
        for link in [h8(), LatticeLink::new(vec![l_hexagon()]), u4()] {
            let before = classify_full(&link).unwrap();
            let leveled = level_all(&link).unwrap();
            let after = classify_full(&leveled).unwrap();
            assert_eq!(before.jones, after.jones);
            assert_eq!(before.label, after.label);
        }
    }

    #[test]
    fn linking_matrix_is_projection_independent() {
        let link = h8();
        let reference = linking_matrix(&sheared_projection(&link, Axis::Z));
        assert_eq!(reference.size(), 2);
        assert_eq!(reference.get(0, 0), 0);
        assert_eq!(reference.get(0, 1).abs(), 1);
        assert_eq!(reference.get(0, 1), reference.get(1, 0));
        for axis in [Axis::X, Axis::Y] {
            assert_eq!(linking_matrix(&sheared_projection(&link, axis)), reference);
        }
        assert_eq!(reference.to_string().matches('[').count(), 3);
    }

    #[test]
    fn simplification_preserves_the_orbit() {
        for (strands, word) in [
            (3usize, vec![1, -2, 1, -2, 1]),
            (3, vec![1, 1, 2, 2]),
            (2, vec![1, 1, 1, 1]),
            (3, vec![1, -2, 1, -2, 1, -2]),
        ] {
            let pd = braid_closure(strands, &word).pd;
            let simplified = simplify_r1_r2(&pd);
            assert_eq!(
                jones_orbit(&pd).unwrap(),
                jones_orbit(&simplified).unwrap()
            );
        }
    }

    #[test]
    fn unrecognized_tuples_are_loud() {
        // The (2,6)-torus link needs more than 14 sticks, is not in the
        // table, and must come back as UNRECOGNIZED rather than a wrong label.
        let closure = braid_closure(2, &[1, 1, 1, 1, 1, 1]);
        let orbit = jones_orbit(&closure.pd).unwrap();
        let key = (
            closure.components,
            linking_multiset_from_pd(&closure.pd, closure.components),
            key_jones(&orbit),
        );
        assert!(reference_table().buckets.get(&key).is_none());
    }

    #[test]
    fn invalid_links_are_rejected() {
        let broken = LatticeLink::new(vec![crate::link::Component::new(vec![
            LatticePoint::new(0, 0, 0),
            LatticePoint::new(1, 0, 0),
            LatticePoint::new(1, 1, 1),
        ])]);
        assert!(matches!(
            classify_full(&broken),
            Err(ClassifyError::InvalidLink(_))
        ));
    }
}
