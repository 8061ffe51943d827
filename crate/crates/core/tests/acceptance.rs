//! Acceptance suite: one test per acceptance criterion.
//!
//! Each test prints an explicit `criterion N (...): PASS` line; run with
//! `cargo test -p ao-evolve-core --test acceptance -- --nocapture` to see
//! them alongside cargo's own per-test results.

mod common;

use std::cell::Cell;
use std::collections::BTreeSet;
use std::fs;
use std::time::{Duration, Instant};

use ao_evolve_core::differ::diff_kind;
use ao_evolve_core::extractor::{extract_version, ScanConfig};
use ao_evolve_core::metrics::{
    change_metric, change_name, compute_report, compute_report_from_counts, maturity_index,
    maturity_name, metrics_row, TransitionCounts,
};
use ao_evolve_core::model::{InventoryCounts, KindCounts, SourceLocation};
use ao_evolve_core::report::json::{parse_counts, report_json};
use ao_evolve_core::report::tables::{csv_tables, markdown_tables};
use ao_evolve_core::{ChangeCounts, Entity, EntityKind, EvolutionReport, VersionInventory};
use proptest::prelude::*;
use proptest::test_runner::{Config as RunnerConfig, TestRunner};

/// Reference maturity values per kind across the four replay versions.
const GOLDEN_MATURITY: [(EntityKind, [f64; 4]); 5] = [
    (EntityKind::Aspect, [1.0, 0.5556, 0.2581, 1.0]),
    (EntityKind::Pointcut, [1.0, 0.0, 0.0769, 0.9615]),
    (EntityKind::Advice, [1.0, 0.1667, 0.1190, 0.9286]),
    (EntityKind::Class, [1.0, 0.9718, 0.9310, 0.9763]),
    (EntityKind::Method, [1.0, 0.0909, 0.1406, 0.2466]),
];

/// Reference change values per kind across the four replay versions.
const GOLDEN_CHANGE: [(EntityKind, [f64; 4]); 5] = [
    (EntityKind::Aspect, [0.0, 0.4444, 0.7419, 0.0]),
    (EntityKind::Pointcut, [0.0, 1.0, 0.9231, 0.0385]),
    (EntityKind::Advice, [0.0, 0.8333, 0.8810, 0.0714]),
    (EntityKind::Class, [0.0, 0.0282, 0.0690, 0.0237]),
    (EntityKind::Method, [0.0, 0.9091, 0.8594, 0.7534]),
];

/// The reference values are printed to four decimals.
const TOLERANCE: f64 = 0.00005;

fn metric_value(report: &EvolutionReport, version: usize, kind: EntityKind, change: bool) -> f64 {
    let row = report.metrics[version]
        .rows
        .iter()
        .find(|r| r.kind == kind)
        .unwrap_or_else(|| panic!("no {kind} row in version {version}"));
    if change {
        row.change
    } else {
        row.maturity
    }
}

#[test]
fn criterion_1_golden_table_replay() {
    let started = Instant::now();
    let text = fs::read_to_string(common::fixtures_root().join("replay_counts.json"))
        .expect("replay fixture readable");
    let doc = parse_counts(&text).expect("replay fixture parses");
    let (report, warnings) =
        compute_report_from_counts(&doc.versions, &doc.inventory_counts, &doc.transition_counts)
            .expect("replay computes");

    // The reference counts break add/delete conservation in exactly four
    // places; the replay must flag them without altering the metrics.
    let conservation: Vec<&str> = warnings
        .iter()
        .map(|w| w.message.as_str())
        .filter(|m| m.contains("differs from previous"))
        .collect();
    assert_eq!(conservation.len(), 4, "warnings: {conservation:#?}");

    let mut checked = 0;
    for (table, change) in [(&GOLDEN_MATURITY, false), (&GOLDEN_CHANGE, true)] {
        for (kind, values) in table {
            for (version, expected) in values.iter().enumerate() {
                let got = metric_value(&report, version, *kind, change);
                let name = if change {
                    change_name(*kind)
                } else {
                    maturity_name(*kind)
                };
                assert!(
                    (got - expected).abs() <= TOLERANCE,
                    "{name} for {}: got {got}, expected {expected} +/- {TOLERANCE}",
                    report.versions[version],
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 40);
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "replay took {elapsed:?}");
    println!("criterion 1 (golden table replay, 40 values within 5e-5 in {elapsed:?}): PASS");
}

#[test]
fn criterion_2_convention_rows() {
    // First version from a real tree that has zero aspects, pointcuts, and
    // advice: every kind must score full maturity and zero change, exactly.
    let corpus = common::fixtures_root().join("corpus");
    let (v1, diags) = extract_version(&corpus.join("v1"), "v1", &ScanConfig::default()).unwrap();
    assert!(diags.is_empty(), "unexpected diagnostics: {diags:?}");
    assert_eq!(v1.count_of(EntityKind::Pointcut), 0);
    let single = compute_report(std::slice::from_ref(&v1)).unwrap();
    assert_eq!(single.metrics.len(), 1);
    assert!(single.transitions.is_empty());
    for row in &single.metrics[0].rows {
        assert_eq!(row.maturity, 1.0, "first-version maturity for {}", row.kind);
        assert_eq!(row.change, 0.0, "first-version change for {}", row.kind);
    }

    // A later version where one kind drops to zero entities: that row keeps
    // the convention values even though deletions happened, while kinds with
    // entities are computed from the formula as usual.
    let versions = vec!["a".to_string(), "b".to_string()];
    let inventory_counts = vec![
        InventoryCounts {
            version: "a".into(),
            counts: KindCounts {
                class: 3,
                method: 8,
                aspect: 2,
                pointcut: 5,
                advice: 4,
            },
        },
        InventoryCounts {
            version: "b".into(),
            counts: KindCounts {
                class: 3,
                method: 8,
                aspect: 2,
                pointcut: 0,
                advice: 4,
            },
        },
    ];
    let transition_counts = vec![TransitionCounts {
        to: "b".into(),
        added: KindCounts::default(),
        deleted: KindCounts {
            pointcut: 5,
            ..KindCounts::default()
        },
        modified: KindCounts {
            method: 2,
            ..KindCounts::default()
        },
    }];
    let (report, warnings) =
        compute_report_from_counts(&versions, &inventory_counts, &transition_counts).unwrap();
    assert!(warnings.is_empty(), "unexpected warnings: {warnings:?}");
    assert_eq!(metric_value(&report, 1, EntityKind::Pointcut, false), 1.0);
    assert_eq!(metric_value(&report, 1, EntityKind::Pointcut, true), 0.0);
    assert_eq!(metric_value(&report, 1, EntityKind::Method, false), 0.75);
    assert_eq!(metric_value(&report, 1, EntityKind::Method, true), 0.25);

    // The same conventions hold at the formula level.
    assert_eq!(maturity_index(0, 0, 0), 1.0);
    assert_eq!(change_metric(maturity_index(0, 0, 0), 0), 0.0);
    println!("criterion 2 (first-version and zero-count convention rows): PASS");
}

fn change_row(report: &EvolutionReport, transition: usize, kind: EntityKind) -> ChangeCounts {
    *report.transitions[transition]
        .counts
        .iter()
        .find(|c| c.kind == kind)
        .unwrap_or_else(|| panic!("no {kind} row in transition {transition}"))
}

#[test]
fn criterion_3_corpus_end_to_end() {
    let started = Instant::now();
    let corpus = common::fixtures_root().join("corpus");
    let cfg = ScanConfig::default();
    let mut inventories = Vec::new();
    for label in ["v1", "v2", "v3"] {
        let (inventory, diags) = extract_version(&corpus.join(label), label, &cfg).unwrap();
        assert!(diags.is_empty(), "{label} diagnostics: {diags:?}");
        inventories.push(inventory);
    }
    let report = compute_report(&inventories).unwrap();

    // Inventory counts derived by reading the fixture sources by hand.
    let expected_counts = [
        KindCounts {
            class: 2,
            method: 3,
            aspect: 0,
            pointcut: 0,
            advice: 0,
        },
        KindCounts {
            class: 3,
            method: 4,
            aspect: 1,
            pointcut: 1,
            advice: 1,
        },
        KindCounts {
            class: 3,
            method: 4,
            aspect: 1,
            pointcut: 1,
            advice: 1,
        },
    ];
    for (inventory, expected) in report.inventories.iter().zip(expected_counts) {
        assert_eq!(inventory.counts, expected, "counts for {}", inventory.version);
    }

    // v1 -> v2: one entity of every kind appears, one method body changes.
    for kind in EntityKind::ALL {
        let row = change_row(&report, 0, kind);
        assert_eq!(row.added, 1, "added {kind}");
        assert_eq!(row.deleted, 0, "deleted {kind}");
        let expected_modified = u64::from(kind == EntityKind::Method);
        assert_eq!(row.modified, expected_modified, "modified {kind}");
    }
    // v2 -> v3: only the pointcut expression changes.
    for kind in EntityKind::ALL {
        let row = change_row(&report, 1, kind);
        assert_eq!(row.added, 0, "added {kind}");
        assert_eq!(row.deleted, 0, "deleted {kind}");
        let expected_modified = u64::from(kind == EntityKind::Pointcut);
        assert_eq!(row.modified, expected_modified, "modified {kind}");
    }

    // Every renderer output is byte-identical to its frozen golden file.
    let golden = common::fixtures_root().join("golden");
    let read = |name: &str| fs::read_to_string(golden.join(name)).expect("golden readable");
    assert_eq!(report_json(&report), read("report.json"), "report.json drifted");
    assert_eq!(markdown_tables(&report, 4), read("tables.md"), "tables.md drifted");
    assert_eq!(csv_tables(&report, 4), read("tables.csv"), "tables.csv drifted");

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "pipeline took {elapsed:?}");
    println!("criterion 3 (three-version corpus end-to-end vs goldens in {elapsed:?}): PASS");
}

fn entity(kind: EntityKind, key: &str, fingerprint: u64) -> Entity {
    Entity {
        kind,
        identity_key: key.to_string(),
        display_name: key.to_string(),
        location: SourceLocation {
            file: "X.java".to_string(),
            line: 1,
        },
        fingerprint,
    }
}

/// Turns raw (kind, key index, fingerprint) triples into entities, keeping
/// the first occurrence of each (kind, key) pair so keys stay unique.
fn build_entities(items: Vec<(usize, u32, u64)>) -> Vec<Entity> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (kind_idx, key_idx, fingerprint) in items {
        if seen.insert((kind_idx, key_idx)) {
            let kind = EntityKind::ALL[kind_idx];
            out.push(entity(kind, &format!("K{key_idx}"), fingerprint));
        }
    }
    out
}

/// Brute-force classification by nested scans, with no maps or sorting
/// shared with the implementation under test.
fn oracle_diff(prev: &[Entity], curr: &[Entity]) -> (Vec<String>, Vec<String>, Vec<String>) {
    let mut added = BTreeSet::new();
    let mut deleted = BTreeSet::new();
    let mut modified = BTreeSet::new();
    for c in curr {
        let mut matched = None;
        for p in prev {
            if p.identity_key == c.identity_key {
                matched = Some(p);
                break;
            }
        }
        match matched {
            None => {
                added.insert(c.identity_key.clone());
            }
            Some(p) if p.fingerprint != c.fingerprint => {
                modified.insert(c.identity_key.clone());
            }
            Some(_) => {}
        }
    }
    for p in prev {
        if !curr.iter().any(|c| c.identity_key == p.identity_key) {
            deleted.insert(p.identity_key.clone());
        }
    }
    let collect = |set: BTreeSet<String>| set.into_iter().collect::<Vec<_>>();
    (collect(added), collect(deleted), collect(modified))
}

#[test]
fn criterion_4_differ_vs_oracle() {
    let triples = || prop::collection::vec((0..5usize, 0..12u32, 0..4u64), 0..40);
    let mut runner = TestRunner::new(RunnerConfig {
        cases: 1000,
        failure_persistence: None,
        ..RunnerConfig::default()
    });
    let executed = Cell::new(0u32);
    let result = runner.run(&(triples(), triples()), |(old_items, new_items)| {
        executed.set(executed.get() + 1);
        let prev = VersionInventory::build("old", build_entities(old_items));
        let curr = VersionInventory::build("new", build_entities(new_items));
        for kind in EntityKind::ALL {
            let (counts, detail) = diff_kind(&prev, &curr, kind);
            let (added, deleted, modified) = oracle_diff(prev.entities(kind), curr.entities(kind));

            // Same classification, key for key.
            prop_assert_eq!(&detail.added, &added);
            prop_assert_eq!(&detail.deleted, &deleted);
            prop_assert_eq!(&detail.modified, &modified);
            prop_assert_eq!(counts.added, added.len() as u64);
            prop_assert_eq!(counts.deleted, deleted.len() as u64);
            prop_assert_eq!(counts.modified, modified.len() as u64);
            prop_assert_eq!(counts.current, curr.count_of(kind));

            // The three buckets never share a key.
            let a: BTreeSet<&String> = added.iter().collect();
            let d: BTreeSet<&String> = deleted.iter().collect();
            let m: BTreeSet<&String> = modified.iter().collect();
            prop_assert!(a.is_disjoint(&d));
            prop_assert!(a.is_disjoint(&m));
            prop_assert!(d.is_disjoint(&m));

            // Conservation and the bound that keeps maturity within range.
            let prev_total = prev.count_of(kind);
            prop_assert!(counts.deleted <= prev_total);
            prop_assert_eq!(prev_total - counts.deleted + counts.added, counts.current);
            prop_assert!(counts.added + counts.modified <= counts.current);
        }
        Ok(())
    });
    if let Err(failure) = result {
        panic!("differ disagreed with the oracle: {failure}");
    }
    assert!(executed.get() >= 1000);
    println!(
        "criterion 4 (differ vs brute-force oracle on {} random inventory pairs): PASS",
        executed.get()
    );
}

#[test]
fn criterion_5_metric_identities() {
    let mut checked = 0u64;
    for current in 1..=50u64 {
        for added in 0..=current {
            for modified in 0..=(current - added) {
                let maturity = maturity_index(current, added, modified);
                let change = change_metric(maturity, current);
                assert!(
                    (0.0..=1.0).contains(&maturity),
                    "maturity {maturity} out of range for ({current}, {added}, {modified})"
                );
                // Exact in IEEE arithmetic, not merely approximate.
                assert_eq!(
                    maturity + change,
                    1.0,
                    "complement broke for ({current}, {added}, {modified})"
                );
                // Only the sum added + modified matters.
                assert_eq!(maturity, maturity_index(current, added + modified, 0));
                // Deletions influence nothing.
                for deleted in [0, 7, current + 100] {
                    let row = metrics_row(&ChangeCounts {
                        kind: EntityKind::Class,
                        current,
                        added,
                        deleted,
                        modified,
                    });
                    assert_eq!(row.maturity, maturity);
                    assert_eq!(row.change, change);
                }
                checked += 1;
            }
        }
    }
    println!("criterion 5 (metric identities on {checked} exhaustive count triples): PASS");
}

#[test]
fn criterion_6_extractor_fixture_corpus() {
    let manifest = common::load_manifest();
    let distinct: BTreeSet<&str> = manifest.cases.iter().map(|c| c.file.as_str()).collect();
    assert!(
        distinct.len() >= 12,
        "only {} distinct fixture files",
        distinct.len()
    );
    common::check_all_manifest_cases(&manifest);
    common::check_fingerprint_pairs(&manifest);
    println!(
        "criterion 6 (extractor fixtures: {} files, {} cases, {} fingerprint pairs): PASS",
        distinct.len(),
        manifest.cases.len(),
        manifest.fingerprint_pairs.len()
    );
}

fn render_corpus() -> (String, String, String) {
    let corpus = common::fixtures_root().join("corpus");
    let cfg = ScanConfig::default();
    let mut inventories = Vec::new();
    for label in ["v1", "v2", "v3"] {
        let (inventory, diags) = extract_version(&corpus.join(label), label, &cfg).unwrap();
        assert!(diags.is_empty());
        inventories.push(inventory);
    }
    let report = compute_report(&inventories).unwrap();
    (
        report_json(&report),
        markdown_tables(&report, 4),
        csv_tables(&report, 4),
    )
}

#[test]
fn criterion_7_parallel_determinism() {
    let pool = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("pool builds")
    };
    let sequential = pool(1).install(render_corpus);
    let parallel = pool(8).install(render_corpus);
    assert_eq!(sequential.0, parallel.0, "report.json differs across pools");
    assert_eq!(sequential.1, parallel.1, "tables.md differs across pools");
    assert_eq!(sequential.2, parallel.2, "tables.csv differs across pools");
    println!("criterion 7 (parallel vs sequential extraction, byte-identical outputs): PASS");
}
