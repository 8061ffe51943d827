//! Identity keys and cross-version diffing.
//!
//! Diffing is pure string-set algebra over identity keys: an entity present
//! only in the newer version is added, one present only in the older version
//! is deleted, and one present in both with a different fingerprint is
//! modified. Renames therefore read as a delete plus an add.

use std::collections::BTreeMap;

use crate::model::{ChangeCounts, EntityKind, VersionInventory};

/// The advice header shapes that can carry an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdviceKind {
    Before,
    After,
    AfterReturning,
    AfterThrowing,
    Around,
}

impl AdviceKind {
    /// Whitespace-free tag used inside advice identity keys.
    pub fn tag(self) -> &'static str {
        match self {
            AdviceKind::Before => "before",
            AdviceKind::After => "after",
            AdviceKind::AfterReturning => "after-returning",
            AdviceKind::AfterThrowing => "after-throwing",
            AdviceKind::Around => "around",
        }
    }
}

fn qualified(package: &str, nesting_path: &str) -> String {
    if package.is_empty() {
        nesting_path.to_string()
    } else {
        format!("{package}.{nesting_path}")
    }
}

/// Key for a class-like type: `C:<package>.<NestingPath>`.
pub fn class_key(package: &str, nesting_path: &str) -> String {
    format!("C:{}", qualified(package, nesting_path))
}

/// Key for an aspect: `A:<package>.<NestingPath>`.
pub fn aspect_key(package: &str, nesting_path: &str) -> String {
    format!("A:{}", qualified(package, nesting_path))
}

/// Key for a method or constructor: `M:<ownerKey>.<name>/<arity>`.
///
/// Identity deliberately uses arity rather than parameter types, so a
/// parameter-type-only change reads as modified, not delete + add.
pub fn method_key(owner_key: &str, name: &str, arity: usize) -> String {
    format!("M:{owner_key}.{name}/{arity}")
}

/// Key for a pointcut: `P:<ownerKey>.<name>/<arity>`.
pub fn pointcut_key(owner_key: &str, name: &str, arity: usize) -> String {
    format!("P:{owner_key}.{name}/{arity}")
}

/// Key for advice: `D:<ownerKey>.<kind>:<whitespace-free pointcut expression>`.
///
/// Advice has no name, so the attached pointcut expression is the identity;
/// editing that expression reads as delete + add, while editing only the
/// advice body reads as modified.
pub fn advice_key(owner_key: &str, kind: AdviceKind, normalized_expr: &str) -> String {
    format!("D:{owner_key}.{}:{normalized_expr}", kind.tag())
}

/// Identity keys behind one transition's counts, sorted, for inspection.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransitionDetail {
    pub kind: Option<EntityKind>,
    pub added: Vec<String>,
    pub deleted: Vec<String>,
    pub modified: Vec<String>,
}

/// Classifies changes of one entity kind between two adjacent versions.
pub fn diff_kind(
    previous: &VersionInventory,
    current: &VersionInventory,
    kind: EntityKind,
) -> (ChangeCounts, TransitionDetail) {
    let prev: BTreeMap<&str, u64> = previous
        .entities(kind)
        .iter()
        .map(|e| (e.identity_key.as_str(), e.fingerprint))
        .collect();
    let curr: BTreeMap<&str, u64> = current
        .entities(kind)
        .iter()
        .map(|e| (e.identity_key.as_str(), e.fingerprint))
        .collect();

    let mut detail = TransitionDetail {
        kind: Some(kind),
        ..TransitionDetail::default()
    };
    for (key, fp) in &curr {
        match prev.get(key) {
            None => detail.added.push((*key).to_string()),
            Some(old) if old != fp => detail.modified.push((*key).to_string()),
            Some(_) => {}
        }
    }
    for key in prev.keys() {
        if !curr.contains_key(key) {
            detail.deleted.push((*key).to_string());
        }
    }

    let counts = ChangeCounts {
        kind,
        current: curr.len() as u64,
        added: detail.added.len() as u64,
        deleted: detail.deleted.len() as u64,
        modified: detail.modified.len() as u64,
    };
    (counts, detail)
}

/// Diffs every entity kind between two adjacent versions, in canonical order.
pub fn diff_versions(
    previous: &VersionInventory,
    current: &VersionInventory,
) -> Vec<(ChangeCounts, TransitionDetail)> {
    EntityKind::ALL
        .into_iter()
        .map(|kind| diff_kind(previous, current, kind))
        .collect()
}
