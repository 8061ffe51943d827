//! Command-line front end: argument parsing, orchestration, exit codes.
//!
//! `analyze` scans an ordered list of version directories, diffs adjacent
//! versions, and renders reports; `replay-counts` recomputes metrics from an
//! externally supplied counts document. Exit codes: 0 success, 1 I/O
//! failure, 2 usage error, 3 first parse problem under `--strict`.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use ao_evolve_core::extractor::{extract_version, ScanConfig};
use ao_evolve_core::metrics::{compute_report, compute_report_from_counts};
use ao_evolve_core::model::EvolutionReport;
use ao_evolve_core::report::{json, render_to_dir, OutputFormat, RenderOptions};
use ao_evolve_core::Error;

#[derive(Parser)]
#[command(
    name = "ao-evolve",
    version,
    about = "Measures how aspect-oriented code evolves across releases",
    long_about = "Extracts class, method, aspect, pointcut, and advice declarations from \
each version of a source tree, classifies cross-version changes as added, deleted, or \
modified, and reports per-kind maturity and change metrics."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze version source trees given in evolution order.
    Analyze(AnalyzeArgs),
    /// Recompute metrics from a JSON counts document instead of source.
    ReplayCounts(ReplayArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Tables format; `json` skips the tables document.
    #[arg(long, default_value = "md", value_parser = ["json", "csv", "md"])]
    format: String,
    /// Also write SVG charts (change spread pie, metric bars).
    #[arg(long)]
    charts: bool,
    /// Directory for all output files.
    #[arg(long, default_value = "./ao-evolve-out", value_name = "DIR")]
    out: PathBuf,
    /// Decimal places for metric cells in tables.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=10))]
    precision: u8,
    /// Record the run time in run_info.txt (off by default so outputs
    /// stay byte-identical across runs).
    #[arg(long)]
    stamp: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Version directories, oldest first.
    #[arg(required = true, value_name = "DIR")]
    dirs: Vec<PathBuf>,
    /// Comma-separated version labels (default: directory base names).
    #[arg(long, value_delimiter = ',', value_name = "a,b,c")]
    labels: Option<Vec<String>>,
    /// File pattern to scan; repeatable; replaces the built-in
    /// `**/*.java` + `**/*.aj` defaults when given.
    #[arg(long, value_name = "GLOB")]
    include: Vec<String>,
    /// File pattern to skip; repeatable.
    #[arg(long, value_name = "GLOB")]
    exclude: Vec<String>,
    /// Count constructors as methods.
    #[arg(long)]
    count_constructors: bool,
    /// Count interfaces as classes and their members as methods.
    #[arg(long)]
    count_interfaces: bool,
    /// Abort with exit code 3 on the first recoverable parse problem.
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ReplayArgs {
    /// JSON document with inventory_counts and transition_counts sections.
    #[arg(value_name = "FILE")]
    file: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

impl OutputArgs {
    fn render_options(&self) -> Result<RenderOptions, Error> {
        let opts = RenderOptions {
            format: OutputFormat::parse(&self.format)?,
            charts: self.charts,
            out_dir: self.out.clone(),
            precision: self.precision as usize,
        };
        opts.validate()?;
        Ok(opts)
    }
}

/// Version labels for `dirs`: explicit labels when given (must match the
/// directory count and be unique), otherwise directory base names with
/// ordinal suffixes on collisions.
fn version_labels(dirs: &[PathBuf], explicit: Option<&[String]>) -> Result<Vec<String>, Error> {
    if let Some(labels) = explicit {
        if labels.len() != dirs.len() {
            return Err(Error::Config(format!(
                "{} labels given for {} directories",
                labels.len(),
                dirs.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for label in labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::Config(format!("duplicate label {label:?}")));
            }
        }
        return Ok(labels.to_vec());
    }
    let mut labels: Vec<String> = dirs
        .iter()
        .map(|d| {
            d.file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| d.display().to_string())
        })
        .collect();
    let mut counts = std::collections::BTreeMap::new();
    for label in labels.iter_mut() {
        let n = counts.entry(label.clone()).or_insert(0u32);
        *n += 1;
        if *n > 1 {
            *label = format!("{label}#{n}");
        }
    }
    Ok(labels)
}

fn scan_config(args: &AnalyzeArgs) -> ScanConfig {
    let mut cfg = ScanConfig {
        count_constructors: args.count_constructors,
        count_interfaces: args.count_interfaces,
        strict: args.strict,
        ..ScanConfig::default()
    };
    if !args.include.is_empty() {
        cfg.include_globs = args.include.clone();
    }
    cfg.exclude_globs = args.exclude.clone();
    cfg
}

fn write_stamp(out_dir: &Path, mode: &str) -> Result<(), Error> {
    let unix_time = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let contents = format!(
        "tool: ao-evolve {}\nmode: {mode}\nunix_time: {unix_time}\n",
        env!("CARGO_PKG_VERSION")
    );
    let path = out_dir.join("run_info.txt");
    std::fs::write(&path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })
}

fn render_and_report(
    report: &EvolutionReport,
    output: &OutputArgs,
    mode: &str,
) -> Result<(), Error> {
    let opts = output.render_options()?;
    let written = render_to_dir(report, &opts)?;
    if output.stamp {
        write_stamp(&opts.out_dir, mode)?;
    }
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_analyze(args: &AnalyzeArgs) -> Result<(), Error> {
    let labels = version_labels(&args.dirs, args.labels.as_deref())?;
    let cfg = scan_config(args);
    let mut inventories = Vec::with_capacity(args.dirs.len());
    for (dir, label) in args.dirs.iter().zip(&labels) {
        let (inventory, diagnostics) = extract_version(dir, label, &cfg)?;
        for diag in diagnostics {
            eprintln!("warning: {diag}");
        }
        inventories.push(inventory);
    }
    let report = compute_report(&inventories)?;
    render_and_report(&report, &args.output, "analyze")
}

fn run_replay(args: &ReplayArgs) -> Result<(), Error> {
    let text = std::fs::read_to_string(&args.file).map_err(|e| Error::Io {
        path: args.file.display().to_string(),
        source: e,
    })?;
    let doc = json::parse_counts(&text)?;
    let (report, warnings) =
        compute_report_from_counts(&doc.versions, &doc.inventory_counts, &doc.transition_counts)?;
    for warning in warnings {
        eprintln!("warning: {}", warning.message);
    }
    render_and_report(&report, &args.output, "replay-counts")
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } => 1,
        Error::Config(_) | Error::InvalidInput(_) => 2,
        Error::Parse { .. } => 3,
    }
}

/// Parses argv, runs the selected mode, and returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::ReplayCounts(args) => run_replay(args),
    };
    match result {
        Ok(()) => 0,
        Err(err) => {
            match &err {
                // Strict-mode aborts already carry file:line context.
                Error::Parse { .. } => eprintln!("error: {err}"),
                other => eprintln!("error: {other}"),
            }
            exit_code(&err)
        }
    }
}
