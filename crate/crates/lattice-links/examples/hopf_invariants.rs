//! Builds the 8-stick Hopf link by hand and walks through its invariants:
//! projection, crossings, linking matrix, Kauffman bracket, Jones polynomial,
//! and the catalog label with chirality.
//!
//!     cargo run --example hopf_invariants

use lattice_links::{
    classify_full, crossings, jones_a, kauffman_bracket, linking_matrix, pd_code,
    sheared_projection, writhe, Axis, Component, LatticeLink, LatticePoint,
};

fn p(x: i64, y: i64, z: i64) -> LatticePoint {
    LatticePoint::new(x, y, z)
}

fn main() {
    // A rectangle in the plane z = 0 and one in the plane x = 1 threading it.
    let hopf = LatticeLink::new(vec![
        Component::new(vec![p(0, -1, 0), p(2, -1, 0), p(2, 1, 0), p(0, 1, 0)]),
        Component::new(vec![p(1, 0, -1), p(1, 2, -1), p(1, 2, 1), p(1, 0, 1)]),
    ]);
    assert!(hopf.validate().is_valid());
    println!("link: 2 rectangles, {} sticks total", hopf.total_sticks());

    let diagram = sheared_projection(&hopf, Axis::Z);
    println!(
        "z-projection: {} crossings, writhe {}",
        crossings(&diagram).len(),
        writhe(&diagram)
    );

    let lk = linking_matrix(&diagram);
    println!("linking matrix: {lk}");

    let pd = pd_code(&diagram);
    let bracket = kauffman_bracket(&pd).expect("two crossings is well within budget");
    println!("Kauffman bracket: {bracket}");
    let jones = jones_a(&pd, writhe(&diagram)).expect("within budget");
    println!("Jones (variable A, substitute t = A^-4): {jones}");
    println!("Jones of the mirror image:              {}", jones.mirror());

    let c = classify_full(&hopf).expect("the Hopf link is in the catalog");
    println!(
        "classified: {}{}",
        c.label,
        match c.chirality {
            Some(side) => format!(" ({side} form)"),
            None => String::new(),
        }
    );
}
