//! Reads a link file, validates it, and prints its invariants and label.
//! With no argument, classifies a built-in 12-stick trefoil.
//!
//!     cargo run --example classify_file -- path/to/link.txt

use lattice_links::{classify_full, parse_link, stick_counts};

// A 12-stick trefoil (minimal for the cubic lattice).
const TREFOIL: &str = "latticelink v1
0,0,1 0,2,1 0,2,2 3,2,2 3,1,2 3,1,0 1,1,0 1,1,3 1,3,3 1,3,1 2,3,1 2,0,1
";

fn main() {
    let (name, text) = match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).unwrap_or_else(|e| {
                eprintln!("cannot read {path}: {e}");
                std::process::exit(1);
            });
            (path, text)
        }
        None => ("built-in trefoil".to_string(), TREFOIL.to_string()),
    };

    let link = parse_link(&text).unwrap_or_else(|e| {
        eprintln!("{name}: {e}");
        std::process::exit(1);
    });
    let report = link.validate();
    if !report.is_valid() {
        eprintln!("{name}: {report}");
        std::process::exit(1);
    }

    let counts = stick_counts(&link).expect("validated link");
    println!("{name}:");
    println!(
        "  {} components, {} sticks ({} x, {} y, {} z)",
        link.components.len(),
        counts.total(),
        counts.x,
        counts.y,
        counts.z
    );
    match classify_full(&link) {
        Ok(c) => {
            println!("  label     {}", c.label);
            if let Some(side) = c.chirality {
                println!("  chirality {side}");
            }
            println!("  linking   {}", c.linking);
            println!("  jones     {}", c.jones);
            println!("  crossings {} (projection along {:?})", c.crossings, c.axis);
        }
        Err(e) => {
            println!("  classification unavailable: {e}");
            std::process::exit(1);
        }
    }
}
