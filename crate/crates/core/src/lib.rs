//! Measures how aspect-oriented code bases evolve across releases.
//!
//! The pipeline has four stages: scan a source tree into a per-version
//! entity inventory, diff consecutive inventories into change counts,
//! turn change counts into maturity/change metrics, and render the whole
//! thing as JSON, CSV, Markdown, or SVG charts.

pub mod differ;
pub mod extractor;
pub mod metrics;
pub mod model;
pub mod report;

pub use model::{ChangeCounts, Entity, EntityKind, EvolutionReport, MetricsRow, VersionInventory};

/// Errors shared across the analysis pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A root directory or input file is missing or unusable.
    #[error("configuration error: {0}")]
    Config(String),

    /// Underlying filesystem failure while reading or writing.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Strict-mode parse failure with its origin.
    #[error("parse error: {file}:{line}: {message}")]
    Parse {
        file: String,
        line: u32,
        message: String,
    },

    /// Structurally invalid input data (bad counts document, bad labels).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
