//! Maturity and change metrics over version transitions.
//!
//! For each entity kind, maturity over a transition is the fraction of the
//! newer version's entities that were carried over untouched:
//! `(current - (added + modified)) / current`. The change metric is its
//! complement. Deletions never enter either formula, and values stay
//! unrounded here; rounding belongs to rendering.

use serde::{Deserialize, Serialize};

use crate::differ;
use crate::model::{
    ChangeCounts, EntityKind, EvolutionReport, InventoryCounts, KindCounts, MetricsRow,
    Transition, VersionInventory, VersionMetrics,
};
use crate::Error;

/// The fixed fallback values applied when a formula has no denominator.
///
/// These are surfaced in rendered reports so readers know they were applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricConvention {
    /// Maturity when the newer version has zero entities of a kind.
    pub zero_denominator_maturity: f64,
    /// Change when the newer version has zero entities of a kind.
    pub zero_denominator_change: f64,
    /// Maturity assigned to every kind in the first version.
    pub first_version_maturity: f64,
    /// Change assigned to every kind in the first version.
    pub first_version_change: f64,
}

/// The conventions this crate applies.
pub const CONVENTIONS: MetricConvention = MetricConvention {
    zero_denominator_maturity: 1.0,
    zero_denominator_change: 0.0,
    first_version_maturity: 1.0,
    first_version_change: 0.0,
};

/// Maturity of one entity kind over one transition.
///
/// A zero denominator means there is nothing that could have changed, so the
/// kind counts as fully mature.
pub fn maturity_index(current: u64, added: u64, modified: u64) -> f64 {
    if current == 0 {
        return CONVENTIONS.zero_denominator_maturity;
    }
    let current = current as f64;
    (current - (added as f64 + modified as f64)) / current
}

/// Change metric as the exact complement of maturity.
pub fn change_metric(maturity: f64, current: u64) -> f64 {
    if current == 0 {
        return CONVENTIONS.zero_denominator_change;
    }
    1.0 - maturity
}

/// Conventional short name of the maturity index for one entity kind.
pub fn maturity_name(kind: EntityKind) -> &'static str {
    match kind {
        EntityKind::Class => "CMI",
        EntityKind::Method => "MMI",
        EntityKind::Aspect => "AMI",
        EntityKind::Pointcut => "PMI",
        EntityKind::Advice => "ADMI",
    }
}

/// Conventional short name of the change metric for one entity kind.
pub fn change_name(kind: EntityKind) -> &'static str {
    match kind {
        EntityKind::Class => "CIC",
        EntityKind::Method => "CIM",
        EntityKind::Aspect => "CIA",
        EntityKind::Pointcut => "CIP",
        EntityKind::Advice => "CIAD",
    }
}

/// Requirements-style stability: the fraction of `total` items not touched,
/// where `changed` covers additions, deletions, and modifications together.
pub fn rmi(total: u64, changed: u64) -> f64 {
    if total == 0 {
        return 1.0;
    }
    (total as f64 - changed as f64) / total as f64
}

/// Metric row for one kind of one transition.
pub fn metrics_row(counts: &ChangeCounts) -> MetricsRow {
    let maturity = maturity_index(counts.current, counts.added, counts.modified);
    MetricsRow {
        kind: counts.kind,
        maturity,
        change: change_metric(maturity, counts.current),
    }
}

fn first_version_rows() -> Vec<MetricsRow> {
    EntityKind::ALL
        .into_iter()
        .map(|kind| MetricsRow {
            kind,
            maturity: CONVENTIONS.first_version_maturity,
            change: CONVENTIONS.first_version_change,
        })
        .collect()
}

/// Computes the full report for an ordered sequence of version inventories.
pub fn compute_report(inventories: &[VersionInventory]) -> Result<EvolutionReport, Error> {
    if inventories.is_empty() {
        return Err(Error::InvalidInput(
            "at least one version is required".to_string(),
        ));
    }
    let versions: Vec<String> = inventories.iter().map(|i| i.label().to_string()).collect();
    let inventory_counts: Vec<InventoryCounts> = inventories
        .iter()
        .map(|inv| InventoryCounts {
            version: inv.label().to_string(),
            counts: inv.counts(),
        })
        .collect();

    let mut transitions = Vec::new();
    let mut metrics = vec![VersionMetrics {
        version: versions[0].clone(),
        rows: first_version_rows(),
    }];
    for pair in inventories.windows(2) {
        let diffed = differ::diff_versions(&pair[0], &pair[1]);
        let counts: Vec<ChangeCounts> = diffed.iter().map(|(c, _)| *c).collect();
        metrics.push(VersionMetrics {
            version: pair[1].label().to_string(),
            rows: counts.iter().map(metrics_row).collect(),
        });
        transitions.push(Transition {
            from: pair[0].label().to_string(),
            to: pair[1].label().to_string(),
            counts,
        });
    }

    Ok(EvolutionReport {
        versions,
        inventories: inventory_counts,
        transitions,
        metrics,
    })
}

/// Added/deleted/modified tallies for the transition into one version.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionCounts {
    /// Label of the newer version of the transition.
    pub to: String,
    #[serde(default)]
    pub added: KindCounts,
    #[serde(default)]
    pub deleted: KindCounts,
    #[serde(default)]
    pub modified: KindCounts,
}

/// A consistency note about externally supplied counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountsWarning {
    pub message: String,
}

/// Computes a report from externally supplied counts instead of source trees.
///
/// `inventory_counts` must cover every version once, and `transition_counts`
/// every version after the first. External tallies are taken at face value:
/// inconsistent ones (added + modified exceeding the current count, or counts
/// that break add/delete conservation) produce warnings, and the formulas are
/// still computed as written, so maturity can leave [0, 1].
pub fn compute_report_from_counts(
    versions: &[String],
    inventory_counts: &[InventoryCounts],
    transition_counts: &[TransitionCounts],
) -> Result<(EvolutionReport, Vec<CountsWarning>), Error> {
    if versions.is_empty() {
        return Err(Error::InvalidInput(
            "at least one version is required".to_string(),
        ));
    }
    {
        let mut seen = std::collections::BTreeSet::new();
        for v in versions {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate version label {v:?}")));
            }
        }
    }

    let counts_for = |version: &str| -> Result<KindCounts, Error> {
        let matches: Vec<&InventoryCounts> = inventory_counts
            .iter()
            .filter(|c| c.version == version)
            .collect();
        match matches.as_slice() {
            [one] => Ok(one.counts),
            [] => Err(Error::InvalidInput(format!(
                "missing inventory counts for version {version:?}"
            ))),
            _ => Err(Error::InvalidInput(format!(
                "duplicate inventory counts for version {version:?}"
            ))),
        }
    };
    let transition_for = |to: &str| -> Result<&TransitionCounts, Error> {
        let matches: Vec<&TransitionCounts> =
            transition_counts.iter().filter(|t| t.to == to).collect();
        match matches.as_slice() {
            [one] => Ok(one),
            [] => Err(Error::InvalidInput(format!(
                "missing transition counts into version {to:?}"
            ))),
            _ => Err(Error::InvalidInput(format!(
                "duplicate transition counts into version {to:?}"
            ))),
        }
    };

    let mut warnings = Vec::new();
    let mut inventories = Vec::new();
    for version in versions {
        inventories.push(InventoryCounts {
            version: version.clone(),
            counts: counts_for(version)?,
        });
    }

    let mut transitions = Vec::new();
    let mut metrics = vec![VersionMetrics {
        version: versions[0].clone(),
        rows: first_version_rows(),
    }];
    for pair in versions.windows(2) {
        let (from, to) = (&pair[0], &pair[1]);
        let previous = counts_for(from)?;
        let current = counts_for(to)?;
        let supplied = transition_for(to)?;

        let mut rows = Vec::new();
        let mut change_rows = Vec::new();
        for kind in EntityKind::ALL {
            let counts = ChangeCounts {
                kind,
                current: current.get(kind),
                added: supplied.added.get(kind),
                deleted: supplied.deleted.get(kind),
                modified: supplied.modified.get(kind),
            };
            if counts.added + counts.modified > counts.current {
                warnings.push(CountsWarning {
                    message: format!(
                        "transition {from}->{to}: {}: added + modified ({}) exceeds current ({})",
                        kind.plural().to_lowercase(),
                        counts.added + counts.modified,
                        counts.current
                    ),
                });
            }
            let carried = previous.get(kind) + counts.added;
            if carried < counts.deleted || carried - counts.deleted != counts.current {
                warnings.push(CountsWarning {
                    message: format!(
                        "transition {from}->{to}: {}: current ({}) differs from previous - deleted + added ({})",
                        kind.plural().to_lowercase(),
                        counts.current,
                        previous.get(kind) as i128 - counts.deleted as i128
                            + counts.added as i128
                    ),
                });
            }
            rows.push(metrics_row(&counts));
            change_rows.push(counts);
        }
        metrics.push(VersionMetrics {
            version: to.clone(),
            rows,
        });
        transitions.push(Transition {
            from: from.clone(),
            to: to.clone(),
            counts: change_rows,
        });
    }

    Ok((
        EvolutionReport {
            versions: versions.to_vec(),
            inventories,
            transitions,
            metrics,
        },
        warnings,
    ))
}
