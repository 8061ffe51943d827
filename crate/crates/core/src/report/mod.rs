//! Report rendering: JSON, Markdown/CSV tables, and SVG charts.

pub mod json;
pub mod svg;
pub mod tables;

use std::path::{Path, PathBuf};

use crate::model::EvolutionReport;
use crate::Error;

/// Text formats for the tables document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Md,
}

impl OutputFormat {
    pub fn parse(name: &str) -> Result<Self, Error> {
        match name {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "md" => Ok(OutputFormat::Md),
            other => Err(Error::Config(format!(
                "unknown format {other:?}; expected json, csv, or md"
            ))),
        }
    }
}

/// How and where to render a report.
#[derive(Debug, Clone)]
pub struct RenderOptions {
    pub format: OutputFormat,
    pub charts: bool,
    pub out_dir: PathBuf,
    pub precision: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            format: OutputFormat::Md,
            charts: false,
            out_dir: PathBuf::from("./ao-evolve-out"),
            precision: 4,
        }
    }
}

impl RenderOptions {
    /// Rejects precisions outside the supported 1..=10 range.
    pub fn validate(&self) -> Result<(), Error> {
        if !(1..=10).contains(&self.precision) {
            return Err(Error::Config(format!(
                "precision {} out of range 1..=10",
                self.precision
            )));
        }
        Ok(())
    }
}

/// Rounds half away from zero at `precision` decimals and formats with
/// exactly that many digits, e.g. `0.66666…` -> `"0.6667"`.
pub fn format_metric(value: f64, precision: usize) -> String {
    let scale = 10f64.powi(precision as i32);
    let rounded = (value * scale).round() / scale;
    // Avoid the "-0.0000" artifact for tiny negative values.
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded:.precision$}")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, Error> {
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    Ok(path)
}

/// Writes every requested document into `out_dir`, creating it if needed,
/// and returns the paths written. `report.json` is always produced; the
/// tables document depends on the format; charts are opt-in.
pub fn render_to_dir(report: &EvolutionReport, opts: &RenderOptions) -> Result<Vec<PathBuf>, Error> {
    opts.validate()?;
    std::fs::create_dir_all(&opts.out_dir).map_err(|e| Error::Io {
        path: opts.out_dir.display().to_string(),
        source: e,
    })?;

    let mut written = Vec::new();
    written.push(write_file(&opts.out_dir, "report.json", &json::report_json(report))?);
    match opts.format {
        OutputFormat::Json => {}
        OutputFormat::Md => {
            let doc = tables::markdown_tables(report, opts.precision);
            written.push(write_file(&opts.out_dir, "tables.md", &doc)?);
        }
        OutputFormat::Csv => {
            let doc = tables::csv_tables(report, opts.precision);
            written.push(write_file(&opts.out_dir, "tables.csv", &doc)?);
        }
    }
    if opts.charts {
        written.push(write_file(
            &opts.out_dir,
            "change_spread.svg",
            &svg::change_spread_pie(report),
        )?);
        written.push(write_file(
            &opts.out_dir,
            "metric_bars.svg",
            &svg::metric_bars(report),
        )?);
    }
    Ok(written)
}
