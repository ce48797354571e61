//! Link representation: components, sticks, validation, and basic counts.

use crate::point::{Axis, LatticePoint};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// A maximal axis-parallel segment of a component.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Stick {
    pub axis: Axis,
    pub start: LatticePoint,
    pub end: LatticePoint,
}

impl Stick {
    pub fn len(&self) -> i64 {
        (self.end[self.axis] - self.start[self.axis]).abs()
    }

    /// +1 if the stick points in the positive axis direction, -1 otherwise.
    pub fn direction(&self) -> i64 {
        (self.end[self.axis] - self.start[self.axis]).signum()
    }

    /// Smaller and larger coordinate along the stick's own axis.
    pub fn span(&self) -> (i64, i64) {
        let a = self.start[self.axis];
        let b = self.end[self.axis];
        (a.min(b), a.max(b))
    }
}

/// A closed polygon, stored as its corner vertices in traversal order.
/// The edge from the last vertex back to the first is implied.
///
/// Construction does not validate; see [`LatticeLink::validate`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Component {
    vertices: Vec<LatticePoint>,
}

impl Component {
    pub fn new(vertices: Vec<LatticePoint>) -> Component {
        Component { vertices }
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// The maximal-stick decomposition, one stick per corner vertex.
    /// Fails on the first structural violation (non-axis edge, zero-length
    /// edge, or two adjacent edges along the same axis).
    pub fn sticks(&self) -> Result<Vec<Stick>, Violation> {
        let mut out = Vec::with_capacity(self.vertices.len());
        self.collect_sticks(0, &mut |v| Err(v), &mut out)?;
        Ok(out)
    }

    /// Per-axis stick counts of this component alone.
    pub fn axis_counts(&self) -> Result<AxisCounts, Violation> {
        let mut counts = AxisCounts::default();
        for stick in self.sticks()? {
            counts[stick.axis] += 1;
        }
        Ok(counts)
    }

    /// Walks the edges, reporting violations through `on_violation` (which may
    /// either abort with `Err` or record and continue with `Ok`).
    fn collect_sticks<E>(
        &self,
        component: usize,
        on_violation: &mut impl FnMut(Violation) -> Result<(), E>,
        out: &mut Vec<Stick>,
    ) -> Result<(), E> {
        let n = self.vertices.len();
        if n < 4 {
            on_violation(Violation::TooFewVertices {
                component,
                count: n,
            })?;
            return Ok(());
        }
        let mut axes: Vec<Option<Axis>> = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let d = b - a;
            let nonzero: Vec<Axis> = Axis::ALL.into_iter().filter(|&ax| d[ax] != 0).collect();
            match nonzero.as_slice() {
                [axis] => {
                    axes.push(Some(*axis));
                    out.push(Stick {
                        axis: *axis,
                        start: a,
                        end: b,
                    });
                }
                [] => {
                    axes.push(None);
                    on_violation(Violation::ZeroLengthEdge {
                        component,
                        edge: i,
                    })?;
                }
                _ => {
                    axes.push(None);
                    on_violation(Violation::NonAxisEdge {
                        component,
                        edge: i,
                    })?;
                }
            }
        }
        for i in 0..n {
            if let (Some(a), Some(b)) = (axes[i], axes[(i + 1) % n]) {
                if a == b {
                    on_violation(Violation::CollinearSticks {
                        component,
                        edge: i,
                    })?;
                }
            }
        }
        Ok(())
    }

    /// Every lattice point the component covers, each exactly once for an
    /// embedded polygon: the corner vertices plus all stick-interior points.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let n = self.vertices.len();
        let mut points = Vec::new();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            points.push(a);
            let d = b - a;
            let steps = d.x.abs() + d.y.abs() + d.z.abs();
            let unit = LatticePoint::new(d.x.signum(), d.y.signum(), d.z.signum());
            let mut p = a;
            for _ in 1..steps {
                p = p + unit;
                points.push(p);
            }
        }
        points
    }
}

/// A lattice link: one or more disjoint closed components.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticeLink {
    pub components: Vec<Component>,
}

impl LatticeLink {
    pub fn new(components: Vec<Component>) -> LatticeLink {
        LatticeLink { components }
    }

    pub fn total_sticks(&self) -> usize {
        self.components.iter().map(|c| c.vertex_count()).sum()
    }

    /// Corner of the axis-aligned bounding box with all coordinates minimal,
    /// and the opposite corner. Panics on a link with no vertices.
    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let mut iter = self.components.iter().flat_map(|c| c.vertices()).copied();
        let first = iter.next().expect("bounding box of an empty link");
        let mut lo = first;
        let mut hi = first;
        for p in iter {
            for axis in Axis::ALL {
                lo[axis] = lo[axis].min(p[axis]);
                hi[axis] = hi[axis].max(p[axis]);
            }
        }
        (lo, hi)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.components.is_empty() {
            violations.push(Violation::EmptyLink);
            return ValidationReport { violations };
        }
        let mut structurally_ok = Vec::with_capacity(self.components.len());
        for (ci, comp) in self.components.iter().enumerate() {
            let before = violations.len();
            let mut sticks = Vec::new();
            let _ = comp.collect_sticks::<()>(
                ci,
                &mut |v| {
                    violations.push(v);
                    Ok(())
                },
                &mut sticks,
            );
            structurally_ok.push(violations.len() == before);
        }
        // Embeddedness: every covered lattice point must be covered exactly
        // once. Adjacent sticks of one component share corners legally (each
        // corner is listed once as a vertex); any other coincidence is a
        // self-intersection or an intersection between components.
        let mut seen: HashMap<LatticePoint, usize> = HashMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            if !structurally_ok[ci] {
                continue;
            }
            for p in comp.lattice_points() {
                match seen.insert(p, ci) {
                    None => {}
                    Some(prev) if prev == ci => {
                        violations.push(Violation::SelfIntersection {
                            component: ci,
                            point: p,
                        });
                    }
                    Some(prev) => {
                        violations.push(Violation::ComponentIntersection {
                            first: prev,
                            second: ci,
                            point: p,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }
}

/// Stick counts per axis, `(|L|_x, |L|_y, |L|_z)`.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize,
)]
pub struct AxisCounts {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl AxisCounts {
    pub const fn new(x: usize, y: usize, z: usize) -> AxisCounts {
        AxisCounts { x, y, z }
    }

    pub fn total(&self) -> usize {
        self.x + self.y + self.z
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.x, self.y, self.z]
    }

    pub fn sorted(&self) -> [usize; 3] {
        let mut a = self.as_array();
        a.sort_unstable();
        a
    }
}

impl std::ops::Index<Axis> for AxisCounts {
    type Output = usize;
    fn index(&self, axis: Axis) -> &usize {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
            Axis::Z => &self.z,
        }
    }
}

impl std::ops::IndexMut<Axis> for AxisCounts {
    fn index_mut(&mut self, axis: Axis) -> &mut usize {
        match axis {
            Axis::X => &mut self.x,
            Axis::Y => &mut self.y,
            Axis::Z => &mut self.z,
        }
    }
}

impl fmt::Display for AxisCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// A single well-formedness violation found by [`LatticeLink::validate`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
pub enum Violation {
    #[error("link has no components")]
    EmptyLink,
    #[error("component {component} has {count} vertices; a closed lattice polygon needs at least 4")]
    TooFewVertices { component: usize, count: usize },
    #[error("component {component}, edge {edge}: consecutive vertices are equal")]
    ZeroLengthEdge { component: usize, edge: usize },
    #[error("component {component}, edge {edge}: edge is not parallel to a coordinate axis")]
    NonAxisEdge { component: usize, edge: usize },
    #[error("component {component}, edge {edge}: adjacent edges run along the same axis (sticks must be maximal)")]
    CollinearSticks { component: usize, edge: usize },
    #[error("component {component} intersects itself at {point}")]
    SelfIntersection {
        component: usize,
        point: LatticePoint,
    },
    #[error("components {first} and {second} intersect at {point}")]
    ComponentIntersection {
        first: usize,
        second: usize,
        point: LatticePoint,
    },
}

/// Outcome of validating a link: empty iff the link is a valid lattice link.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            writeln!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// The maximal-stick decomposition of a component (one stick per vertex).
pub fn stick_decomposition(component: &Component) -> Result<Vec<Stick>, Violation> {
    component.sticks()
}

/// Total per-axis stick counts of the link.
pub fn stick_counts(link: &LatticeLink) -> Result<AxisCounts, Violation> {
    let mut counts = AxisCounts::default();
    for comp in &link.components {
        for stick in comp.sticks()? {
            counts[stick.axis] += 1;
        }
    }
    Ok(counts)
}

/// Necessary per-component conditions for membership in a minimal census:
/// per axis, the component's stick count is never exactly 1 and never exceeds
/// half its total, and the total is 4 or at least 6 (a closed lattice polygon
/// with 5 sticks does not exist, and these bounds hold for any embedding of
/// minimal stick count).
pub fn component_profile_check(link: &LatticeLink) -> bool {
    link.components.iter().all(|comp| {
        let Ok(counts) = comp.axis_counts() else {
            return false;
        };
        let n = counts.total();
        if n != 4 && n < 6 {
            return false;
        }
        Axis::ALL
            .into_iter()
            .all(|axis| counts[axis] != 1 && 2 * counts[axis] <= n)
    })
}

/// Total curvature of a lattice link, exact: every corner turns by a quarter
/// turn, so the total is (stick count) quarter-turns.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct QuarterTurns(pub usize);

impl fmt::Display for QuarterTurns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·π/2", self.0)
    }
}

pub fn total_curvature(link: &LatticeLink) -> QuarterTurns {
    QuarterTurns(link.total_sticks())
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn u4_is_valid_with_counts_2_2_0() {
        let link = u4();
        assert!(link.validate().is_valid());
        assert_eq!(stick_counts(&link).unwrap(), AxisCounts::new(2, 2, 0));
        assert_eq!(total_curvature(&link), QuarterTurns(4));
        assert!(component_profile_check(&link));
    }

    #[test]
    fn h8_is_valid_with_counts_2_4_2() {
        let link = h8();
        assert!(link.validate().is_valid());
        assert_eq!(stick_counts(&link).unwrap(), AxisCounts::new(2, 4, 2));
        assert_eq!(total_curvature(&link), QuarterTurns(8));
        // Component B decomposes into two y-sticks and two z-sticks.
        let b = &link.components[1];
        assert_eq!(b.axis_counts().unwrap(), AxisCounts::new(0, 2, 2));
        let axes: Vec<Axis> = b.sticks().unwrap().iter().map(|s| s.axis).collect();
        assert_eq!(axes, vec![Axis::Y, Axis::Z, Axis::Y, Axis::Z]);
    }

    #[test]
    fn l_hexagon_decomposes_into_3_plus_3() {
        let hexagon = l_hexagon();
        let sticks = stick_decomposition(&hexagon).unwrap();
        assert_eq!(sticks.len(), 6);
        assert_eq!(hexagon.axis_counts().unwrap(), AxisCounts::new(3, 3, 0));
        let link = LatticeLink::new(vec![hexagon]);
        assert!(link.validate().is_valid());
        assert!(component_profile_check(&link));
    }

    #[test]
    fn backtracking_edge_is_collinear_violation() {
        let link = LatticeLink::new(vec![Component::new(vec![
            p(0, 0, 0),
            p(2, 0, 0),
            p(1, 0, 0),
            p(1, 1, 0),
            p(0, 1, 0),
        ])]);
        let report = link.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::CollinearSticks { component: 0, .. })));
    }

    #[test]
    fn corner_sharing_squares_are_rejected() {
        let a = Component::new(vec![p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(0, 1, 0)]);
        let b = Component::new(vec![p(0, 0, 0), p(0, -1, 0), p(-1, -1, 0), p(-1, 0, 0)]);
        let report = LatticeLink::new(vec![a, b]).validate();
        assert_eq!(
            report.violations,
            vec![Violation::ComponentIntersection {
                first: 0,
                second: 1,
                point: p(0, 0, 0),
            }]
        );
    }

    #[test]
    fn stick_passing_through_vertex_is_rejected() {
        // A long x-stick of one square passes through a vertex of another.
        let a = Component::new(vec![p(0, 0, 0), p(3, 0, 0), p(3, 1, 0), p(0, 1, 0)]);
        let b = Component::new(vec![p(1, 0, 0), p(1, -2, 0), p(2, -2, 0), p(2, 0, 0)]);
        let report = LatticeLink::new(vec![a, b]).validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::ComponentIntersection { .. })));
    }

    #[test]
    fn degenerate_inputs_are_violations() {
        assert_eq!(
            LatticeLink::new(vec![]).validate().violations,
            vec![Violation::EmptyLink]
        );
        let two = LatticeLink::new(vec![Component::new(vec![p(0, 0, 0), p(1, 0, 0)])]);
        assert_eq!(
            two.validate().violations,
            vec![Violation::TooFewVertices {
                component: 0,
                count: 2
            }]
        );
        let diagonal = LatticeLink::new(vec![Component::new(vec![
            p(0, 0, 0),
            p(1, 0, 0),
            p(0, 1, 0),
            p(0, 0, 1),
        ])]);
        assert!(diagonal
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NonAxisEdge { .. })));
    }

    #[test]
    fn five_stick_polygons_cannot_close() {
        // Every cyclic word of length 5 over {X,Y,Z} with no equal neighbours
        // uses some axis exactly once, so the single step along that axis can
        // never cancel: no closed 5-stick polygon exists at all. The profile
        // check rejects five sticks by the size rule before geometry is even
        // consulted, which this confirms exhaustively.
        for w in 0..3usize.pow(5) {
            let word: Vec<usize> = (0..5).map(|i| w / 3usize.pow(i) % 3).collect();
            let cyclic_ok = (0..5).all(|i| word[i] != word[(i + 1) % 5]);
            if cyclic_ok {
                let mut counts = [0; 3];
                for &a in &word {
                    counts[a] += 1;
                }
                assert!(counts.contains(&1), "word {word:?} balances all axes");
            }
        }
        // And the rule itself, on a 5-vertex walk (necessarily broken).
        let pentagon = LatticeLink::new(vec![Component::new(vec![
            p(0, 0, 0),
            p(2, 0, 0),
            p(2, 1, 0),
            p(1, 1, 0),
            p(1, 0, 0),
        ])]);
        assert!(!component_profile_check(&pentagon));
    }

    #[test]
    fn profile_check_accepts_spatial_hexagon() {
        let hexagon = LatticeLink::new(vec![Component::new(vec![
            p(0, 0, 0),
            p(1, 0, 0),
            p(1, 1, 0),
            p(1, 1, 1),
            p(0, 1, 1),
            p(0, 0, 1),
        ])]);
        assert!(hexagon.validate().is_valid());
        assert_eq!(stick_counts(&hexagon).unwrap(), AxisCounts::new(2, 2, 2));
        assert!(component_profile_check(&hexagon));
    }

    #[test]
    fn lattice_points_cover_sticks_exactly_once() {
        let link = h8();
        for comp in &link.components {
            let pts = comp.lattice_points();
            let mut dedup = pts.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(pts.len(), dedup.len());
        }
        // A rectangle with both side lengths 2 covers 8 lattice points.
        assert_eq!(link.components[0].lattice_points().len(), 8);
    }
}
