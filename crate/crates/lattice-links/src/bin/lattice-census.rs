//! Command-line front end: validate, classify, level, census, witness,
//! report. Exit codes: 0 success (an UNRECOGNIZED label is still success),
//! 1 validation or verification failure, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use lattice_links::{
    level_all, level_axis, minimal_witness, parse_link, run_census, run_report, serialize_link,
    sheared_projection, stick_counts, to_svg, Axis, CensusConfig, LatticeLink, LinkType,
    SearchMode,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lattice-census",
    version,
    about = "Polygonal links in the cubic lattice: validation, invariants, and exhaustive small-stick censuses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a link file and check the lattice-polygon rules.
    Validate {
        /// Link file to check.
        path: PathBuf,
    },
    /// Compute exact invariants and the catalog label of a link file.
    Classify {
        /// Link file to classify.
        path: PathBuf,
        /// Also write the projection diagram as an SVG file.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// Rewrite a link so sticks sit on properly spaced levels.
    Level {
        /// Link file to level.
        path: PathBuf,
        /// Axis to level, or `all` for the full normal form.
        #[arg(long, default_value = "all")]
        axis: AxisArg,
        /// Write the leveled link here instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Enumerate, classify and persist every canonical link up to a budget.
    Census {
        /// Largest stick count to cover.
        #[arg(long, value_name = "N")]
        max_sticks: usize,
        /// Only links with exactly this many components.
        #[arg(long, value_name = "K")]
        components: Option<usize>,
        /// Search space: `unconstrained` (complete) or `constrained`
        /// (the reduced space used for 13 and 14 sticks).
        #[arg(long, default_value = "unconstrained")]
        mode: ModeArg,
        /// Only the profile with these stick counts, e.g. `2,2,4`.
        #[arg(long, value_name = "A,B,C", value_parser = parse_profile_arg)]
        profile: Option<ProfileArg>,
        /// Worker threads (0 = one per CPU).
        #[arg(long, value_name = "J", default_value_t = 0)]
        jobs: usize,
        /// Output directory for the manifest and record files.
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Search-tree depth at which work splits into shards.
        #[arg(long, value_name = "D", default_value_t = 3)]
        shard_depth: usize,
        /// Stop cleanly after this many shards (resume by re-invoking).
        #[arg(long, value_name = "S")]
        stop_after_shards: Option<usize>,
    },
    /// Search for a minimal-stick realization of a named link type.
    Witness {
        /// Catalog label, e.g. `3_1`, `2_1^2`, `4_1^2`, `6_2^3`.
        label: String,
        /// Give up beyond this many sticks.
        #[arg(long, value_name = "N", default_value_t = 14)]
        max_sticks: usize,
        /// Write the witness link here as well as to standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Summarize a census directory, re-verifying a sample of records.
    Report {
        /// Census directory (containing manifest.json).
        dir: PathBuf,
        /// Emit the structured (JSON) form instead of the text table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    X,
    Y,
    Z,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Unconstrained,
    Constrained,
}

impl From<ModeArg> for SearchMode {
    fn from(mode: ModeArg) -> SearchMode {
        match mode {
            ModeArg::Unconstrained => SearchMode::Unconstrained,
            ModeArg::Constrained => SearchMode::Constrained,
        }
    }
}

#[derive(Clone, Copy)]
struct ProfileArg([usize; 3]);

fn parse_profile_arg(text: &str) -> Result<ProfileArg, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated counts, e.g. 2,2,4".to_string());
    }
    let mut counts = [0usize; 3];
    for (slot, part) in counts.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|e| format!("bad count {part:?}: {e}"))?;
    }
    Ok(ProfileArg(counts))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

/// Prints to stdout, treating a closed pipe (e.g. `| head`) as a normal end
/// of output rather than a panic.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Validate { path } => cmd_validate(&path),
        Command::Classify { path, svg } => cmd_classify(&path, svg.as_deref()),
        Command::Level { path, axis, out } => cmd_level(&path, axis, out.as_deref()),
        Command::Census {
            max_sticks,
            components,
            mode,
            profile,
            jobs,
            out,
            shard_depth,
            stop_after_shards,
        } => {
            let config = CensusConfig {
                max_sticks,
                components,
                profile: profile.map(|p| p.0),
                mode: mode.into(),
                out_dir: out,
                jobs,
                shard_depth,
                stop_after_shards,
            };
            cmd_census(&config)
        }
        Command::Witness {
            label,
            max_sticks,
            out,
        } => cmd_witness(&label, max_sticks, out.as_deref()),
        Command::Report { dir, json } => cmd_report(&dir, json),
    }
}

fn load(path: &Path) -> Result<LatticeLink, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_link(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Parses and fully validates, or reports every violation.
fn load_valid(path: &Path) -> Result<LatticeLink, String> {
    let link = load(path)?;
    let report = link.validate();
    if report.is_valid() {
        Ok(link)
    } else {
        Err(format!("{}: {report}", path.display()))
    }
}

fn cmd_validate(path: &Path) -> Result<ExitCode, String> {
    let link = load_valid(path)?;
    let counts = stick_counts(&link).expect("validated link has stick counts");
    emit(&format!(
        "{}: valid; {} components, {} sticks ({} x, {} y, {} z)\n",
        path.display(),
        link.components.len(),
        counts.total(),
        counts.x,
        counts.y,
        counts.z
    ));
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(path: &Path, svg: Option<&Path>) -> Result<ExitCode, String> {
    let link = load_valid(path)?;
    let counts = stick_counts(&link).expect("validated link has stick counts");
    let profile = lattice_links::Profile {
        counts: counts.sorted(),
        components: link.components.len(),
    };
    let record = lattice_links::record_for(&link, &profile, SearchMode::Unconstrained);
    emit(&serde_json::to_string_pretty(&record).expect("record serializes"));
    emit("\n");
    if let Some(svg_path) = svg {
        let svg_text = to_svg(&sheared_projection(&link, Axis::Z));
        std::fs::write(svg_path, svg_text)
            .map_err(|e| format!("cannot write {}: {e}", svg_path.display()))?;
        eprintln!("wrote {}", svg_path.display());
    }
    // An UNRECOGNIZED label is an answer, not an error.
    Ok(ExitCode::SUCCESS)
}

fn cmd_level(path: &Path, axis: AxisArg, out: Option<&Path>) -> Result<ExitCode, String> {
    let link = load_valid(path)?;
    let before = stick_counts(&link).expect("validated link has stick counts");
    let leveled = match axis {
        AxisArg::X => level_axis(&link, Axis::X),
        AxisArg::Y => level_axis(&link, Axis::Y),
        AxisArg::Z => level_axis(&link, Axis::Z),
        AxisArg::All => level_all(&link).map_err(|e| e.to_string())?,
    };
    let after = stick_counts(&leveled).map_err(|e| format!("leveling broke the link: {e}"))?;
    if before != after {
        return Err(format!("leveling changed stick counts from {before} to {after}"));
    }
    let text = serialize_link(&leveled);
    match out {
        Some(out_path) => {
            std::fs::write(out_path, &text)
                .map_err(|e| format!("cannot write {}: {e}", out_path.display()))?;
            eprintln!("wrote {}", out_path.display());
        }
        None => emit(&text),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_census(config: &CensusConfig) -> Result<ExitCode, String> {
    let summary = run_census(config).map_err(|e| e.to_string())?;
    eprintln!(
        "{} shards ({} skipped as already done), {} record lines written",
        summary.shards_total, summary.shards_skipped, summary.records_written
    );
    if summary.complete {
        let report = run_report(&config.out_dir).map_err(|e| e.to_string())?;
        emit(&report.to_text());
    } else {
        eprintln!("stopped early; re-invoke with the same settings to resume");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_witness(label: &str, max_sticks: usize, out: Option<&Path>) -> Result<ExitCode, String> {
    let Some(target) = LinkType::parse(label) else {
        eprintln!("error: unknown link label {label:?} (try e.g. 0_1, 3_1, 2_1^2, 4_1^2)");
        return Ok(ExitCode::from(2));
    };
    match minimal_witness(&target, max_sticks) {
        Some((link, sticks)) => {
            let text = serialize_link(&link);
            eprintln!("{target} realized with {sticks} sticks");
            emit(&text);
            if let Some(out_path) = out {
                std::fs::write(out_path, &text)
                    .map_err(|e| format!("cannot write {}: {e}", out_path.display()))?;
                eprintln!("wrote {}", out_path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        None => Err(format!("{target} is not realizable within {max_sticks} sticks")),
    }
}

fn cmd_report(dir: &Path, json: bool) -> Result<ExitCode, String> {
    let report = run_report(dir).map_err(|e| e.to_string())?;
    if json {
        emit(&serde_json::to_string_pretty(&report).expect("report serializes"));
        emit("\n");
    } else {
        emit(&report.to_text());
    }
    Ok(ExitCode::SUCCESS)
}
