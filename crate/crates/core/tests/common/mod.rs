//! Shared helpers for integration tests: fixture paths and the
//! manifest-driven extractor checks.

use std::path::{Path, PathBuf};

use ao_evolve_core::extractor::{extract_entities, ScanConfig};
use ao_evolve_core::model::EntityKind;
use serde::Deserialize;

pub fn fixtures_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn extractor_dir() -> PathBuf {
    fixtures_root().join("extractor")
}

#[derive(Deserialize)]
pub struct Manifest {
    pub cases: Vec<Case>,
    pub fingerprint_pairs: Vec<FingerprintPair>,
}

#[derive(Deserialize)]
pub struct Case {
    pub file: String,
    #[serde(default)]
    pub count_constructors: bool,
    #[serde(default)]
    pub count_interfaces: bool,
    pub entities: Vec<ExpectedEntity>,
    pub diagnostics: usize,
}

#[derive(Deserialize, Debug, PartialEq, Eq)]
pub struct ExpectedEntity {
    pub kind: EntityKind,
    pub key: String,
    pub line: u32,
}

#[derive(Deserialize)]
pub struct FingerprintPair {
    pub original: String,
    pub variant: String,
}

pub fn load_manifest() -> Manifest {
    let path = extractor_dir().join("manifest.json");
    let text = std::fs::read_to_string(&path).expect("manifest readable");
    serde_json::from_str(&text).expect("manifest parses")
}

pub fn sort_key(e: &ExpectedEntity) -> (usize, String, u32) {
    let kind_index = EntityKind::ALL.iter().position(|&k| k == e.kind).unwrap();
    (kind_index, e.key.clone(), e.line)
}

/// Extracts one fixture file and returns its entities (canonically sorted)
/// plus the diagnostic count.
pub fn extract_case(file: &str, cfg: &ScanConfig) -> (Vec<ExpectedEntity>, usize) {
    let path = extractor_dir().join(file);
    let text = std::fs::read_to_string(&path).expect("fixture readable");
    let (entities, diagnostics) = extract_entities(&text, file, cfg).expect("tolerant extraction");
    let mut got: Vec<ExpectedEntity> = entities
        .into_iter()
        .map(|e| ExpectedEntity {
            kind: e.kind,
            key: e.identity_key,
            line: e.location.line,
        })
        .collect();
    got.sort_by_key(sort_key);
    (got, diagnostics.len())
}

/// Runs every manifest case, panicking on the first mismatch.
pub fn check_all_manifest_cases(manifest: &Manifest) {
    assert!(!manifest.cases.is_empty());
    for case in &manifest.cases {
        let cfg = ScanConfig {
            count_constructors: case.count_constructors,
            count_interfaces: case.count_interfaces,
            ..ScanConfig::default()
        };
        let (got, diag_count) = extract_case(&case.file, &cfg);
        let mut expected: Vec<&ExpectedEntity> = case.entities.iter().collect();
        expected.sort_by_key(|e| sort_key(e));
        let got_refs: Vec<&ExpectedEntity> = got.iter().collect();
        assert_eq!(
            got_refs, expected,
            "entity mismatch for {} (count_constructors={}, count_interfaces={})",
            case.file, case.count_constructors, case.count_interfaces
        );
        assert_eq!(
            diag_count, case.diagnostics,
            "diagnostic count mismatch for {}",
            case.file
        );
    }
}

/// Checks that each original/variant pair yields identical
/// (kind, key, fingerprint) sets.
pub fn check_fingerprint_pairs(manifest: &Manifest) {
    assert!(!manifest.fingerprint_pairs.is_empty());
    let cfg = ScanConfig::default();
    for pair in &manifest.fingerprint_pairs {
        let fingerprints = |name: &str| {
            let path = extractor_dir().join(name);
            let text = std::fs::read_to_string(&path).expect("fixture readable");
            let (entities, diags) =
                extract_entities(&text, name, &cfg).expect("tolerant extraction");
            assert!(diags.is_empty(), "unexpected diagnostics in {name}");
            let mut prints: Vec<(EntityKind, String, u64)> = entities
                .into_iter()
                .map(|e| (e.kind, e.identity_key, e.fingerprint))
                .collect();
            prints.sort();
            prints
        };
        let original = fingerprints(&pair.original);
        let variant = fingerprints(&pair.variant);
        assert!(!original.is_empty());
        assert_eq!(
            original, variant,
            "fingerprints differ between {} and {}",
            pair.original, pair.variant
        );
    }
}
