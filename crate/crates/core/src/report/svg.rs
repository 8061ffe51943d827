//! Hand-emitted SVG charts: a pie of total change spread and grouped bars
//! of change metrics per version. No rendering dependency; output is plain
//! deterministic text with fixed-decimal coordinates.

use crate::metrics::change_name;
use crate::model::{EntityKind, EvolutionReport};

const PALETTE: [&str; 8] = [
    "#4c78a8", "#f58518", "#e45756", "#72b7b2", "#54a24b", "#eeca3b", "#b279a2", "#ff9da6",
];

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Slice angles in degrees for (added, deleted, modified) totals,
/// proportional to the counts; `None` when all three are zero.
pub fn pie_angles(added: u64, deleted: u64, modified: u64) -> Option<[f64; 3]> {
    let total = added + deleted + modified;
    if total == 0 {
        return None;
    }
    let share = |n: u64| n as f64 * 360.0 / total as f64;
    Some([share(added), share(deleted), share(modified)])
}

/// Sums added/deleted/modified over every transition and entity kind.
pub fn change_totals(report: &EvolutionReport) -> (u64, u64, u64) {
    let mut totals = (0u64, 0u64, 0u64);
    for transition in &report.transitions {
        for counts in &transition.counts {
            totals.0 += counts.added;
            totals.1 += counts.deleted;
            totals.2 += counts.modified;
        }
    }
    totals
}

/// Point on a circle at `deg` degrees clockwise from 12 o'clock.
fn polar(cx: f64, cy: f64, r: f64, deg: f64) -> (f64, f64) {
    let rad = (deg - 90.0).to_radians();
    (cx + r * rad.cos(), cy + r * rad.sin())
}

/// Renders the change-spread pie: one slice each for total added, deleted,
/// and modified entities across all transitions.
pub fn change_spread_pie(report: &EvolutionReport) -> String {
    let (added, deleted, modified) = change_totals(report);
    let total = added + deleted + modified;
    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"460\" height=\"320\" \
         viewBox=\"0 0 460 320\">\n",
    );
    out.push_str("  <text x=\"16\" y=\"24\" font-size=\"16\">Change spread</text>\n");

    let (cx, cy, r) = (160.0, 176.0, 116.0);
    match pie_angles(added, deleted, modified) {
        None => {
            out.push_str(&format!(
                "  <circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{r:.2}\" fill=\"none\" \
                 stroke=\"#999\"/>\n"
            ));
            out.push_str(&format!(
                "  <text x=\"{cx:.2}\" y=\"{cy:.2}\" text-anchor=\"middle\" \
                 font-size=\"14\">no changes</text>\n"
            ));
        }
        Some(angles) => {
            let labels = ["added", "deleted", "modified"];
            let counts = [added, deleted, modified];
            let mut start = 0.0f64;
            for i in 0..3 {
                let angle = angles[i];
                if counts[i] == 0 {
                    continue;
                }
                if counts[i] == total {
                    out.push_str(&format!(
                        "  <circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{r:.2}\" fill=\"{}\" \
                         data-slice=\"{}\"/>\n",
                        PALETTE[i], labels[i]
                    ));
                } else {
                    let (x1, y1) = polar(cx, cy, r, start);
                    let (x2, y2) = polar(cx, cy, r, start + angle);
                    let large = if angle > 180.0 { 1 } else { 0 };
                    out.push_str(&format!(
                        "  <path d=\"M {cx:.2} {cy:.2} L {x1:.2} {y1:.2} \
                         A {r:.2} {r:.2} 0 {large} 1 {x2:.2} {y2:.2} Z\" fill=\"{}\" \
                         data-slice=\"{}\"/>\n",
                        PALETTE[i], labels[i]
                    ));
                }
                start += angle;
            }
            for i in 0..3 {
                let y = 120.0 + i as f64 * 26.0;
                let pct = counts[i] as f64 * 100.0 / total as f64;
                out.push_str(&format!(
                    "  <rect x=\"312\" y=\"{:.2}\" width=\"14\" height=\"14\" fill=\"{}\"/>\n",
                    y - 11.0,
                    PALETTE[i]
                ));
                out.push_str(&format!(
                    "  <text x=\"332\" y=\"{y:.2}\" font-size=\"13\">{}: {} ({pct:.1}%)</text>\n",
                    labels[i], counts[i]
                ));
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Change-metric value for one version index and kind.
fn change_value(report: &EvolutionReport, v: usize, kind: EntityKind) -> f64 {
    report
        .metrics
        .get(v)
        .and_then(|m| m.rows.iter().find(|r| r.kind == kind))
        .map_or(0.0, |r| r.change)
}

/// Renders grouped bars: one group per change metric (CIA, CIP, CIAD, CIC,
/// CIM), one bar per version, y in [0, 1], heights linear in the unrounded
/// metric values.
pub fn metric_bars(report: &EvolutionReport) -> String {
    // Group order follows the metric family, not the internal kind order.
    let group_kinds = [
        EntityKind::Aspect,
        EntityKind::Pointcut,
        EntityKind::Advice,
        EntityKind::Class,
        EntityKind::Method,
    ];
    let n = report.versions.len().max(1);
    let (bar_w, bar_gap, group_gap) = (18.0, 4.0, 28.0);
    let group_w = n as f64 * bar_w + (n.saturating_sub(1)) as f64 * bar_gap;
    let (left, top, plot_h) = (56.0f64, 28.0f64, 220.0f64);
    let baseline = top + plot_h;
    let plot_w = 5.0 * group_w + 4.0 * group_gap;
    let legend_x = left + plot_w + 24.0;
    let width = legend_x + 150.0;
    let height = (baseline + 48.0).max(top + report.versions.len() as f64 * 20.0 + 10.0);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    ));
    out.push_str("  <text x=\"16\" y=\"18\" font-size=\"16\">Change metrics by version</text>\n");

    // Y axis with gridline ticks every 0.25.
    for i in 0..=4 {
        let value = i as f64 * 0.25;
        let y = baseline - value * plot_h;
        out.push_str(&format!(
            "  <line x1=\"{left:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" \
             stroke=\"#ddd\"/>\n",
            left + plot_w
        ));
        out.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"11\">{value:.2}</text>\n",
            left - 6.0,
            y + 4.0
        ));
    }

    for (gi, &kind) in group_kinds.iter().enumerate() {
        let gx = left + gi as f64 * (group_w + group_gap);
        for (v, version) in report.versions.iter().enumerate() {
            let value = change_value(report, v, kind);
            let h = value * plot_h;
            let x = gx + v as f64 * (bar_w + bar_gap);
            let y = baseline - h;
            out.push_str(&format!(
                "  <rect x=\"{x:.2}\" y=\"{y:.4}\" width=\"{bar_w:.2}\" height=\"{h:.4}\" \
                 fill=\"{}\" data-metric=\"{}\" data-version=\"{}\"/>\n",
                PALETTE[v % PALETTE.len()],
                change_name(kind),
                xml_escape(version)
            ));
        }
        out.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"13\">{}</text>\n",
            gx + group_w / 2.0,
            baseline + 20.0,
            change_name(kind)
        ));
    }

    for (v, version) in report.versions.iter().enumerate() {
        let y = top + v as f64 * 20.0;
        out.push_str(&format!(
            "  <rect x=\"{legend_x:.2}\" y=\"{:.2}\" width=\"14\" height=\"14\" fill=\"{}\"/>\n",
            y,
            PALETTE[v % PALETTE.len()]
        ));
        out.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\">{}</text>\n",
            legend_x + 20.0,
            y + 11.0,
            xml_escape(version)
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{compute_report_from_counts, TransitionCounts};
    use crate::model::{InventoryCounts, KindCounts};
    use proptest::prelude::*;

    fn report_with_changes(added: u64, deleted: u64, modified: u64) -> EvolutionReport {
        let versions = vec!["a".to_string(), "b".to_string()];
        let current = added + modified + 10;
        let inventory_counts = vec![
            InventoryCounts {
                version: "a".to_string(),
                counts: KindCounts {
                    class: current + deleted - added,
                    ..KindCounts::default()
                },
            },
            InventoryCounts {
                version: "b".to_string(),
                counts: KindCounts {
                    class: current,
                    ..KindCounts::default()
                },
            },
        ];
        let transition_counts = vec![TransitionCounts {
            to: "b".to_string(),
            added: KindCounts {
                class: added,
                ..KindCounts::default()
            },
            deleted: KindCounts {
                class: deleted,
                ..KindCounts::default()
            },
            modified: KindCounts {
                class: modified,
                ..KindCounts::default()
            },
        }];
        compute_report_from_counts(&versions, &inventory_counts, &transition_counts)
            .unwrap()
            .0
    }

    #[test]
    fn proportional_angles_match_worked_example() {
        let angles = pie_angles(3, 1, 2).unwrap();
        assert_eq!(angles, [180.0, 60.0, 120.0]);
    }

    #[test]
    fn single_category_renders_a_full_circle() {
        let report = report_with_changes(10, 0, 0);
        let svg = change_spread_pie(&report);
        assert!(svg.contains("<circle"), "expected circle:\n{svg}");
        assert!(svg.contains("data-slice=\"added\""));
        assert!(svg.contains("added: 10 (100.0%)"));
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn no_changes_renders_placeholder() {
        let report = report_with_changes(0, 0, 0);
        let svg = change_spread_pie(&report);
        assert!(svg.contains("no changes"));
        assert!(!svg.contains("data-slice"));
    }

    #[test]
    fn mixed_spread_has_three_slices_and_percent_labels() {
        let report = report_with_changes(3, 1, 2);
        let svg = change_spread_pie(&report);
        assert_eq!(svg.matches("<path").count(), 3);
        assert!(svg.contains("added: 3 (50.0%)"));
        assert!(svg.contains("deleted: 1 (16.7%)"));
        assert!(svg.contains("modified: 2 (33.3%)"));
    }

    #[test]
    fn bar_heights_scale_linearly_with_change_values() {
        let report = report_with_changes(5, 0, 5);
        // CIC for version b: (5 + 5) / 20 = 0.5 change -> half the plot height.
        let svg = metric_bars(&report);
        let needle = "data-metric=\"CIC\" data-version=\"b\"";
        let rect = svg
            .lines()
            .find(|l| l.contains(needle))
            .unwrap_or_else(|| panic!("no CIC/b bar in:\n{svg}"));
        let height: f64 = rect
            .split("height=\"")
            .nth(1)
            .and_then(|s| s.split('"').next())
            .unwrap()
            .parse()
            .unwrap();
        assert!((height - 110.0).abs() < 1e-6, "height {height}");
    }

    #[test]
    fn bars_cover_all_metric_groups_and_versions() {
        let report = report_with_changes(1, 2, 3);
        let svg = metric_bars(&report);
        for metric in ["CIA", "CIP", "CIAD", "CIC", "CIM"] {
            for version in ["a", "b"] {
                let needle = format!("data-metric=\"{metric}\" data-version=\"{version}\"");
                assert!(svg.contains(&needle), "missing {needle}");
            }
        }
        // Group labels appear in the required order.
        let order: Vec<usize> = ["CIA", "CIP", "CIAD", "CIC", "CIM"]
            .iter()
            .map(|m| svg.find(&format!(">{m}</text>")).unwrap())
            .collect();
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(order, sorted);
    }

    #[test]
    fn version_labels_are_xml_escaped() {
        let versions = vec!["a<b&c".to_string()];
        let inventory_counts = vec![InventoryCounts {
            version: "a<b&c".to_string(),
            counts: KindCounts::default(),
        }];
        let (report, _) = compute_report_from_counts(&versions, &inventory_counts, &[]).unwrap();
        let svg = metric_bars(&report);
        assert!(svg.contains("a&lt;b&amp;c"));
        assert!(!svg.contains("a<b&c"));
    }

    proptest! {
        #[test]
        fn angles_sum_to_a_full_turn(a in 0u64..10_000, d in 0u64..10_000, m in 0u64..10_000) {
            if let Some(angles) = pie_angles(a, d, m) {
                let sum: f64 = angles.iter().sum();
                prop_assert!((sum - 360.0).abs() < 1e-9, "sum {sum}");
                prop_assert!(angles.iter().all(|&x| (0.0..=360.0).contains(&x)));
            } else {
                prop_assert_eq!((a, d, m), (0, 0, 0));
            }
        }
    }
}
