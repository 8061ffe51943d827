//! JSON serialization of reports and parsing of counts-replay input.
//!
//! The report document is the canonical interchange form: counts stay
//! integers, metric values stay unrounded, and a `schema_version` field
//! pins the layout. The counts-replay input reuses the same envelope with
//! `inventory_counts` and `transition_counts` sections instead of the
//! derived ones.

use serde::{Deserialize, Serialize};

use crate::metrics::{MetricConvention, TransitionCounts, CONVENTIONS};
use crate::model::{EvolutionReport, InventoryCounts, Transition, VersionMetrics};
use crate::Error;

/// Layout version written to and required from JSON documents.
pub const SCHEMA_VERSION: u32 = 1;

/// The on-disk shape of `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub schema_version: u32,
    pub versions: Vec<String>,
    pub inventories: Vec<InventoryCounts>,
    pub transitions: Vec<Transition>,
    pub metrics: Vec<VersionMetrics>,
    pub conventions: MetricConvention,
}

impl ReportDoc {
    pub fn from_report(report: &EvolutionReport) -> Self {
        ReportDoc {
            schema_version: SCHEMA_VERSION,
            versions: report.versions.clone(),
            inventories: report.inventories.clone(),
            transitions: report.transitions.clone(),
            metrics: report.metrics.clone(),
            conventions: CONVENTIONS,
        }
    }

    pub fn into_report(self) -> EvolutionReport {
        EvolutionReport {
            versions: self.versions,
            inventories: self.inventories,
            transitions: self.transitions,
            metrics: self.metrics,
        }
    }
}

/// Renders the canonical JSON document, newline-terminated.
pub fn report_json(report: &EvolutionReport) -> String {
    let doc = ReportDoc::from_report(report);
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

/// Parses a report document back, checking the schema version.
pub fn parse_report(text: &str) -> Result<EvolutionReport, Error> {
    let doc: ReportDoc = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("malformed report JSON: {e}")))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::InvalidInput(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            doc.schema_version
        )));
    }
    Ok(doc.into_report())
}

/// The counts-replay input: externally supplied per-version inventory counts
/// and per-transition change counts, same envelope as the report document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsDoc {
    pub schema_version: u32,
    pub versions: Vec<String>,
    pub inventory_counts: Vec<InventoryCounts>,
    #[serde(default)]
    pub transition_counts: Vec<TransitionCounts>,
}

/// Parses a counts-replay document, checking the schema version.
pub fn parse_counts(text: &str) -> Result<CountsDoc, Error> {
    let doc: CountsDoc = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("malformed counts JSON: {e}")))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::InvalidInput(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            doc.schema_version
        )));
    }
    Ok(doc)
}
