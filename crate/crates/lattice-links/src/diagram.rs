//! Deterministic generic projection of a lattice link to a crossing diagram.
//!
//! Projecting along axis `w` with image axes `(u, v) = w.others()`, each point
//! maps to `(S·p[u] + p[w], S·p[v] + p[w])` where `S = 4·(w-extent + 1)`.
//! This integer shear is generic for every valid link:
//!
//! * `u`-sticks map to horizontal segments, `v`-sticks to vertical segments,
//!   `w`-sticks to short slope-1 diagonals (shorter than `S/4` in each image
//!   coordinate);
//! * parallel images can only share a line when the sticks share their
//!   constant coordinates, which validity forbids, so no two segments overlap;
//! * a diagonal meeting any other segment would force the two sticks to share
//!   a 3-space point, so every intersection is horizontal × vertical;
//! * such an intersection is interior–interior exactly when the two sticks
//!   cross at distinct `w` (a shared `w` would again be a 3-space
//!   intersection), which resolves over/under exactly;
//! * all crossing coordinates are integers, and distinct crossings have
//!   distinct positions (a repeat would be a triple point).
//!
//! The module asserts these facts at run time rather than trusting the proof.

use crate::link::{LatticeLink, Stick};
use crate::point::Axis;

/// Image of one stick: a straight segment with integer endpoints.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DiagramSegment {
    pub component: usize,
    pub stick: usize,
    pub from: (i64, i64),
    pub to: (i64, i64),
    /// The stick's constant depth coordinate along the projection axis, or
    /// `None` for sticks parallel to the projection axis (diagonal images).
    pub depth: Option<i64>,
}

/// Identifies a stick of the projected link.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StrandRef {
    pub component: usize,
    pub stick: usize,
}

/// A transversal double point of the diagram.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Crossing {
    pub over: StrandRef,
    pub under: StrandRef,
    /// +1 where (over tangent, under tangent) is a right-handed frame.
    pub sign: i8,
    pub position: (i64, i64),
    /// Image distance from the over stick's start to the crossing; strictly
    /// increasing along the stick, used to order passages along a strand.
    pub over_dist: i64,
    pub under_dist: i64,
}

/// A generic diagram: per-component polylines plus the resolved crossings,
/// sorted by position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagram {
    pub axis: Axis,
    pub shear: i64,
    pub strands: Vec<Vec<DiagramSegment>>,
    pub crossings: Vec<Crossing>,
}

/// Projects `link` along `axis`. Precondition: `link` is valid (the shear's
/// genericity argument relies on it; violations surface as panics).
pub fn sheared_projection(link: &LatticeLink, axis: Axis) -> Diagram {
    let (u_axis, v_axis) = axis.others();
    let (lo, hi) = link.bounding_box();
    let shear = 4 * (hi[axis] - lo[axis] + 1);

    let mut strands = Vec::with_capacity(link.components.len());
    let mut all_sticks: Vec<Vec<Stick>> = Vec::with_capacity(link.components.len());
    for (ci, comp) in link.components.iter().enumerate() {
        let sticks = comp.sticks().expect("sheared_projection requires a valid link");
        let mut segs = Vec::with_capacity(sticks.len());
        for (si, stick) in sticks.iter().enumerate() {
            let project = |p: crate::point::LatticePoint| {
                (shear * p[u_axis] + p[axis], shear * p[v_axis] + p[axis])
            };
            segs.push(DiagramSegment {
                component: ci,
                stick: si,
                from: project(stick.start),
                to: project(stick.end),
                depth: (stick.axis != axis).then(|| stick.start[axis]),
            });
        }
        strands.push(segs);
        all_sticks.push(sticks);
    }

    let mut crossings = Vec::new();
    for (ca, sticks_a) in all_sticks.iter().enumerate() {
        for (sa, stick_a) in sticks_a.iter().enumerate() {
            if stick_a.axis != u_axis {
                continue;
            }
            // Horizontal image: v constant, u spans the stick.
            let a_w = stick_a.start[axis];
            let a_v = shear * stick_a.start[v_axis] + a_w;
            let (a_lo, a_hi) = stick_a.span();
            let (a_ulo, a_uhi) = (shear * a_lo + a_w, shear * a_hi + a_w);
            for (cb, sticks_b) in all_sticks.iter().enumerate() {
                for (sb, stick_b) in sticks_b.iter().enumerate() {
                    if stick_b.axis != v_axis {
                        continue;
                    }
                    let b_w = stick_b.start[axis];
                    let b_u = shear * stick_b.start[u_axis] + b_w;
                    let (b_lo, b_hi) = stick_b.span();
                    let (b_vlo, b_vhi) = (shear * b_lo + b_w, shear * b_hi + b_w);
                    if !(a_ulo < b_u && b_u < a_uhi && b_vlo < a_v && a_v < b_vhi) {
                        continue;
                    }
                    assert_ne!(
                        a_w, b_w,
                        "interior crossing at equal depth: link is not embedded"
                    );
                    let a_ref = StrandRef {
                        component: ca,
                        stick: sa,
                    };
                    let b_ref = StrandRef {
                        component: cb,
                        stick: sb,
                    };
                    // 2D tangents in image coordinates.
                    let a_dir = (stick_a.direction(), 0i64);
                    let b_dir = (0i64, stick_b.direction());
                    let a_start_u = shear * stick_a.start[u_axis] + a_w;
                    let b_start_v = shear * stick_b.start[v_axis] + b_w;
                    let (over, under, over_dir, under_dir, over_dist, under_dist) = if a_w > b_w {
                        (a_ref, b_ref, a_dir, b_dir, (b_u - a_start_u).abs(), (a_v - b_start_v).abs())
                    } else {
                        (b_ref, a_ref, b_dir, a_dir, (a_v - b_start_v).abs(), (b_u - a_start_u).abs())
                    };
                    let cross2 = over_dir.0 * under_dir.1 - over_dir.1 * under_dir.0;
                    debug_assert_ne!(cross2, 0);
                    crossings.push(Crossing {
                        over,
                        under,
                        sign: cross2.signum() as i8,
                        position: (b_u, a_v),
                        over_dist,
                        under_dist,
                    });
                }
            }
        }
    }
    crossings.sort_by_key(|c| c.position);
    for pair in crossings.windows(2) {
        assert_ne!(pair[0].position, pair[1].position, "triple point in projection");
    }

    Diagram {
        axis,
        shear,
        strands,
        crossings,
    }
}

/// All transversal intersections, in deterministic (position-lexicographic)
/// order.
pub fn crossings(diagram: &Diagram) -> &[Crossing] {
    &diagram.crossings
}

/// Sum of crossing signs.
pub fn writhe(diagram: &Diagram) -> i64 {
    diagram.crossings.iter().map(|c| c.sign as i64).sum()
}

/// Plain SVG rendering: strands as polylines, a gap punched into the under
/// strand at each crossing. Geometry is the diagram's exact integer geometry.
pub fn to_svg(diagram: &Diagram) -> String {
    const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
    let mut min = (i64::MAX, i64::MAX);
    let mut max = (i64::MIN, i64::MIN);
    for seg in diagram.strands.iter().flatten() {
        for p in [seg.from, seg.to] {
            min = (min.0.min(p.0), min.1.min(p.1));
            max = (max.0.max(p.0), max.1.max(p.1));
        }
    }
    let pad = diagram.shear / 2;
    let (x0, y0) = (min.0 - pad, min.1 - pad);
    let (w, h) = (max.0 - x0 + pad, max.1 - y0 + pad);
    // Flip v so the v axis points up in the rendering.
    let flip = |p: (i64, i64)| (p.0 - x0, h - (p.1 - y0));
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\">\n"
    );
    let line = |p: (i64, i64), q: (i64, i64), stroke: &str, width: i64| {
        let (a, b) = (flip(p), flip(q));
        format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\" stroke-linecap=\"round\"/>\n",
            a.0, a.1, b.0, b.1, stroke, width
        )
    };
    let stroke_width = (diagram.shear / 16).max(1);
    for (ci, segs) in diagram.strands.iter().enumerate() {
        for seg in segs {
            svg.push_str(&line(seg.from, seg.to, COLORS[ci % COLORS.len()], stroke_width));
        }
    }
    let gap = (diagram.shear / 4).max(2);
    for c in &diagram.crossings {
        let (cx, cy) = flip(c.position);
        svg.push_str(&format!(
            "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"{gap}\" fill=\"white\"/>\n"
        ));
        let seg = diagram.strands[c.over.component][c.over.stick];
        svg.push_str(&line(
            seg.from,
            seg.to,
            COLORS[c.over.component % COLORS.len()],
            stroke_width,
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
