//! Projects a link to a diagram and writes it as an SVG file.
//!
//!     cargo run --example export_svg -- 2_1^2 /tmp/hopf.svg

use lattice_links::{minimal_witness, sheared_projection, to_svg, Axis, LinkType};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let label = args.get(1).map(String::as_str).unwrap_or("2_1^2");
    let path = args.get(2).map(String::as_str).unwrap_or("diagram.svg");
    let Some(target) = LinkType::parse(label) else {
        eprintln!("unknown link type: {label}");
        std::process::exit(2);
    };
    let Some((link, sticks)) = minimal_witness(&target, 12) else {
        eprintln!("{label} needs more than 12 sticks; pick a smaller link");
        std::process::exit(1);
    };
    let diagram = sheared_projection(&link, Axis::Z);
    std::fs::write(path, to_svg(&diagram)).unwrap_or_else(|e| {
        eprintln!("cannot write {path}: {e}");
        std::process::exit(1);
    });
    println!("{label} ({sticks} sticks) projected along z; diagram written to {path}");
}
