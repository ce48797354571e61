//! Runs a persistent census in small slices, resuming from the manifest after
//! each stop, and shows the final report. Demonstrates that interrupted runs
//! lose no work and end in the same place as uninterrupted ones.
//!
//!     cargo run --example census_resume -- [max_sticks] [out_dir]

use lattice_links::{run_census, run_report, CensusConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let max: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let dir = args
        .get(2)
        .cloned()
        .unwrap_or_else(|| format!("census-{max}"));

    let mut config = CensusConfig::new(max, &dir);
    config.stop_after_shards = Some(25);
    let mut slices = 0;
    loop {
        let summary = run_census(&config).expect("census slice");
        slices += 1;
        println!(
            "slice {slices}: {} of {} shards done",
            summary.shards_skipped + summary.shards_run,
            summary.shards_total
        );
        if summary.complete {
            break;
        }
    }
    println!("\ncensus finished in {slices} slices; report:\n");
    let report = run_report(std::path::Path::new(&dir)).expect("report");
    print!("{}", report.to_text());
}
