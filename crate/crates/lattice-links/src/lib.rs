//! Polygonal links in the cubic lattice.
//!
//! A *lattice link* is a disjoint union of closed polygons whose edges are
//! axis-parallel unit-step segments between integer points. Maximal straight
//! runs of edges are called *sticks*. This crate models such links exactly
//! (integer arithmetic throughout), normalizes them by axis leveling, computes
//! diagram invariants (linking matrix, Kauffman bracket, Jones polynomial in
//! the variable `A`), and enumerates all links up to lattice symmetry with a
//! given number of sticks, classifying everything it finds.
//!
//! The headline computation: an exhaustive, symmetry-reduced census showing
//! which link types appear at each stick count up to 14, reproducing the known
//! minimal stick counts for the trefoil, figure eight, Hopf link, `(2,4)`-torus
//! link, Whitehead link, Borromean rings, `(3,3)`-torus link, and the
//! three-component chain.

pub mod bracket;
pub mod canonical;
pub mod census;
pub mod classify;
pub mod diagram;
pub mod enumerate;
pub mod format;
pub mod level;
pub mod link;
pub mod pd;
pub mod point;
pub mod random;

pub use bracket::{jones_a, kauffman_bracket, BracketError, BracketPoly, CROSSING_BUDGET};
pub use canonical::{apply_symmetry, canonicalize};
pub use census::{
    load_records, record_for, run_census, run_report, CensusConfig, CensusError, CensusManifest,
    CensusRecord, CensusReport, CensusSummary,
};
pub use classify::{
    braid_closure, classify, classify_full, jones_orbit, linking_matrix, mirror_orbit,
    reference_table, BraidClosure, Chirality, Classification, ClassifyError, InvariantTuple,
    LinkType, LinkingMatrix, ReferenceTable, TableEntry,
};
pub use diagram::{
    crossings, sheared_projection, to_svg, writhe, Crossing, Diagram, DiagramSegment, StrandRef,
};
pub use enumerate::{
    admissible_partitions, admissible_triple, enumerate_leveled, minimal_witness,
    planar_component_info, profiles_for, prune_planar, run_shard, shards, PartialEmbedding,
    PlanarComponentInfo, Profile, SearchMode, WorkUnit,
};
pub use format::{parse_link, serialize_link, ParseError};
pub use level::{
    is_extended_properly_leveled, is_properly_leveled, level_all, level_axis, level_map, LevelError,
    LevelInfo, LevelMap,
};
pub use link::{
    component_profile_check, stick_counts, stick_decomposition, total_curvature, AxisCounts,
    Component, LatticeLink, QuarterTurns, Stick, ValidationReport, Violation,
};
pub use pd::{pd_code, simplify_r1_r2, PdCode, PdCrossing};
pub use point::{Axis, LatticePoint, LatticeSymmetry, SignedPermutation};
pub use random::{random_canonical_link, random_link, scramble};
