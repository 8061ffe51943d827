//! Core data types shared by the extractor, differ, metrics, and report stages.

use serde::{Deserialize, Serialize};

/// The kinds of declaration-level entities tracked across versions.
///
/// The variant order is the canonical iteration/reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntityKind {
    Class,
    Method,
    Aspect,
    Pointcut,
    Advice,
}

impl EntityKind {
    /// All kinds in canonical order.
    pub const ALL: [EntityKind; 5] = [
        EntityKind::Class,
        EntityKind::Method,
        EntityKind::Aspect,
        EntityKind::Pointcut,
        EntityKind::Advice,
    ];

    /// Lowercase singular name, matching the serialized form.
    pub fn as_str(self) -> &'static str {
        match self {
            EntityKind::Class => "class",
            EntityKind::Method => "method",
            EntityKind::Aspect => "aspect",
            EntityKind::Pointcut => "pointcut",
            EntityKind::Advice => "advice",
        }
    }

    /// Plural label used as a table row heading.
    pub fn plural(self) -> &'static str {
        match self {
            EntityKind::Class => "Classes",
            EntityKind::Method => "Methods",
            EntityKind::Aspect => "Aspects",
            EntityKind::Pointcut => "Pointcuts",
            EntityKind::Advice => "Advices",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl std::fmt::Display for EntityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a declaration header starts in the scanned tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceLocation {
    /// Root-relative path with forward slashes.
    pub file: String,
    /// 1-based line of the declaration header.
    pub line: u32,
}

/// One extracted declaration: a class, method, aspect, pointcut, or advice.
///
/// Equality is identity plus content: two entities are equal when kind,
/// `identity_key`, and `fingerprint` agree; the location does not participate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Entity {
    pub kind: EntityKind,
    /// Stable identity within a version (see the differ's key schemas).
    pub identity_key: String,
    /// Human-readable qualified name.
    pub display_name: String,
    pub location: SourceLocation,
    /// 64-bit digest of the normalized declaration text.
    pub fingerprint: u64,
}

impl PartialEq for Entity {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.identity_key == other.identity_key
            && self.fingerprint == other.fingerprint
    }
}

impl Eq for Entity {}

/// Every entity extracted from one version of the code base.
///
/// Entities are held per kind, sorted by `identity_key`, with keys unique
/// within each kind, so serializing an inventory is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VersionInventory {
    label: String,
    entities: [Vec<Entity>; 5],
}

impl VersionInventory {
    /// Builds an inventory from entities in any order.
    ///
    /// Callers must have disambiguated duplicate identity keys already;
    /// within a kind the keys are expected to be unique.
    pub fn build(label: impl Into<String>, entities: Vec<Entity>) -> VersionInventory {
        let mut by_kind: [Vec<Entity>; 5] = Default::default();
        for entity in entities {
            by_kind[entity.kind.index()].push(entity);
        }
        for bucket in &mut by_kind {
            bucket.sort_by(|a, b| a.identity_key.cmp(&b.identity_key));
            debug_assert!(bucket.windows(2).all(|w| w[0].identity_key != w[1].identity_key));
        }
        VersionInventory {
            label: label.into(),
            entities: by_kind,
        }
    }

    /// Empty inventory for a version label.
    pub fn empty(label: impl Into<String>) -> VersionInventory {
        VersionInventory::build(label, Vec::new())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Entities of one kind, sorted by identity key.
    pub fn entities(&self, kind: EntityKind) -> &[Entity] {
        &self.entities[kind.index()]
    }

    /// Number of entities of `kind` in this version.
    pub fn count_of(&self, kind: EntityKind) -> u64 {
        self.entities[kind.index()].len() as u64
    }

    /// Per-kind counts in canonical order.
    pub fn counts(&self) -> KindCounts {
        let mut counts = KindCounts::default();
        for kind in EntityKind::ALL {
            counts.set(kind, self.count_of(kind));
        }
        counts
    }
}

/// Per-kind totals for one version.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct KindCounts {
    pub class: u64,
    pub method: u64,
    pub aspect: u64,
    pub pointcut: u64,
    pub advice: u64,
}

impl KindCounts {
    pub fn get(&self, kind: EntityKind) -> u64 {
        match kind {
            EntityKind::Class => self.class,
            EntityKind::Method => self.method,
            EntityKind::Aspect => self.aspect,
            EntityKind::Pointcut => self.pointcut,
            EntityKind::Advice => self.advice,
        }
    }

    pub fn set(&mut self, kind: EntityKind, value: u64) {
        match kind {
            EntityKind::Class => self.class = value,
            EntityKind::Method => self.method = value,
            EntityKind::Aspect => self.aspect = value,
            EntityKind::Pointcut => self.pointcut = value,
            EntityKind::Advice => self.advice = value,
        }
    }
}

/// Raw change tallies for one entity kind over one version transition.
///
/// When produced by the differ these satisfy
/// `current = previous - deleted + added` and `added + modified <= current`;
/// externally supplied counts may violate both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChangeCounts {
    pub kind: EntityKind,
    /// Entity count in the newer version.
    pub current: u64,
    pub added: u64,
    pub deleted: u64,
    pub modified: u64,
}

/// Maturity and change values for one entity kind in one version.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub kind: EntityKind,
    pub maturity: f64,
    pub change: f64,
}

/// Counts for one version, labeled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InventoryCounts {
    pub version: String,
    pub counts: KindCounts,
}

/// Change counts for the transition between two adjacent versions,
/// one row per kind in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub from: String,
    pub to: String,
    pub counts: Vec<ChangeCounts>,
}

/// Metric rows for one version, one per kind in canonical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VersionMetrics {
    pub version: String,
    pub rows: Vec<MetricsRow>,
}

/// The complete analysis result for an ordered sequence of versions.
///
/// The first version's metric rows are always (maturity 1, change 0), and
/// there is exactly one transition per adjacent version pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionReport {
    pub versions: Vec<String>,
    pub inventories: Vec<InventoryCounts>,
    pub transitions: Vec<Transition>,
    pub metrics: Vec<VersionMetrics>,
}
