//! Markdown and CSV table rendering with versions as columns.
//!
//! Six tables are emitted: entity counts, added, deleted, and modified
//! counts, maturity indices, and change metrics. Counts stay integers;
//! metric cells are rounded half away from zero at the requested precision.
//! The first version has no incoming transition, so its cells in the three
//! transition tables are empty.

use crate::metrics::{change_name, maturity_name, CONVENTIONS};
use crate::model::{ChangeCounts, EntityKind, EvolutionReport};
use crate::report::format_metric;

const CONVENTIONS_NOTE: &str = "Conventions: the first version, and any kind with zero current \
entities, score full maturity and zero change. Transition columns for the first version are \
empty because nothing precedes it.";

/// Change counts of `kind` arriving at version index `v`, if any.
fn transition_cell(report: &EvolutionReport, v: usize, kind: EntityKind) -> Option<&ChangeCounts> {
    if v == 0 {
        return None;
    }
    report
        .transitions
        .get(v - 1)?
        .counts
        .iter()
        .find(|c| c.kind == kind)
}

fn maturity_cell(report: &EvolutionReport, v: usize, kind: EntityKind) -> f64 {
    report
        .metrics
        .get(v)
        .and_then(|m| m.rows.iter().find(|r| r.kind == kind))
        .map_or(CONVENTIONS.first_version_maturity, |r| r.maturity)
}

fn change_cell(report: &EvolutionReport, v: usize, kind: EntityKind) -> f64 {
    report
        .metrics
        .get(v)
        .and_then(|m| m.rows.iter().find(|r| r.kind == kind))
        .map_or(CONVENTIONS.first_version_change, |r| r.change)
}

fn inventory_cell(report: &EvolutionReport, v: usize, kind: EntityKind) -> u64 {
    report
        .inventories
        .get(v)
        .map_or(0, |inv| inv.counts.get(kind))
}

/// One row per entity kind: label plus one cell per version.
fn kind_rows(
    report: &EvolutionReport,
    label: impl Fn(EntityKind) -> String,
    cell: impl Fn(usize, EntityKind) -> String,
) -> Vec<TableRow> {
    EntityKind::ALL
        .iter()
        .map(|&kind| {
            let cells = (0..report.versions.len()).map(|v| cell(v, kind)).collect();
            (label(kind), cells)
        })
        .collect()
}

/// A row label with one cell per version.
type TableRow = (String, Vec<String>);

/// The six table sections in presentation order. The boolean marks metric
/// tables, whose row labels differ between Markdown and CSV.
fn sections(report: &EvolutionReport, precision: usize) -> Vec<(&'static str, bool, Vec<TableRow>)> {
    let count_label = |k: EntityKind| k.plural().to_string();
    vec![
        (
            "Entity counts",
            false,
            kind_rows(report, count_label, |v, k| {
                inventory_cell(report, v, k).to_string()
            }),
        ),
        (
            "Added entities",
            false,
            kind_rows(report, count_label, |v, k| {
                transition_cell(report, v, k).map_or(String::new(), |c| c.added.to_string())
            }),
        ),
        (
            "Deleted entities",
            false,
            kind_rows(report, count_label, |v, k| {
                transition_cell(report, v, k).map_or(String::new(), |c| c.deleted.to_string())
            }),
        ),
        (
            "Modified entities",
            false,
            kind_rows(report, count_label, |v, k| {
                transition_cell(report, v, k).map_or(String::new(), |c| c.modified.to_string())
            }),
        ),
        (
            "Maturity indices",
            true,
            kind_rows(
                report,
                |k| format!("{} ({})", maturity_name(k), k.plural().to_lowercase()),
                |v, k| format_metric(maturity_cell(report, v, k), precision),
            ),
        ),
        (
            "Change metrics",
            true,
            kind_rows(
                report,
                |k| format!("{} ({})", change_name(k), k.plural().to_lowercase()),
                |v, k| format_metric(change_cell(report, v, k), precision),
            ),
        ),
    ]
}

fn md_row(cells: &[String]) -> String {
    let mut out = String::from("|");
    for cell in cells {
        out.push(' ');
        out.push_str(cell);
        out.push_str(" |");
    }
    out.push('\n');
    out
}

/// Renders the Markdown document with all six tables.
pub fn markdown_tables(report: &EvolutionReport, precision: usize) -> String {
    let mut out = String::new();
    out.push_str("# Evolution analysis\n\n");
    out.push_str(&format!("Versions: {}\n\n", report.versions.join(", ")));
    out.push_str(CONVENTIONS_NOTE);
    out.push('\n');

    for (title, is_metric, rows) in sections(report, precision) {
        out.push_str(&format!("\n## {title}\n\n"));
        let left = if is_metric { "Metric" } else { "Entity" };
        let mut header = vec![left.to_string()];
        header.extend(report.versions.iter().cloned());
        out.push_str(&md_row(&header));
        out.push_str(&md_row(&vec!["---".to_string(); header.len()]));
        for (label, cells) in rows {
            let mut row = vec![label];
            row.extend(cells);
            out.push_str(&md_row(&row));
        }
    }
    out
}

/// Quotes a CSV field only when it contains a delimiter, quote, or newline.
fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn csv_row(out: &mut String, cells: &[String]) {
    let fields: Vec<String> = cells.iter().map(|c| csv_field(c)).collect();
    out.push_str(&fields.join(","));
    out.push('\n');
}

/// Renders the flat CSV document: one header row, then every table stacked,
/// keyed by a table column. Convention rows repeat their value across all
/// version columns so each row has the same width.
pub fn csv_tables(report: &EvolutionReport, precision: usize) -> String {
    let n = report.versions.len();
    let mut out = String::new();
    let mut header = vec!["table".to_string(), "entity".to_string()];
    header.extend(report.versions.iter().cloned());
    csv_row(&mut out, &header);

    let table_keys = ["counts", "added", "deleted", "modified", "maturity", "change"];
    for ((_, is_metric, rows), key) in sections(report, precision).into_iter().zip(table_keys) {
        for (label, cells) in rows {
            let label = if is_metric {
                label.split(' ').next().unwrap_or(&label).to_lowercase()
            } else {
                label.to_lowercase()
            };
            let mut row = vec![key.to_string(), label];
            row.extend(cells);
            csv_row(&mut out, &row);
        }
    }

    let conventions = [
        ("zero_denominator_maturity", CONVENTIONS.zero_denominator_maturity),
        ("zero_denominator_change", CONVENTIONS.zero_denominator_change),
        ("first_version_maturity", CONVENTIONS.first_version_maturity),
        ("first_version_change", CONVENTIONS.first_version_change),
    ];
    for (name, value) in conventions {
        let mut row = vec!["convention".to_string(), name.to_string()];
        row.extend(std::iter::repeat_n(format_metric(value, precision), n));
        csv_row(&mut out, &row);
    }
    out
}
