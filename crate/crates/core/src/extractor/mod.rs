//! Source-tree scanning and entity extraction.

pub mod lexer;
mod parser;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::model::{Entity, EntityKind, VersionInventory};
use crate::Error;

/// What to scan and how tolerant to be.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    /// Path patterns (relative, `/`-separated) selecting files to parse.
    pub include_globs: Vec<String>,
    /// Patterns removing files from the include set.
    pub exclude_globs: Vec<String>,
    /// Count constructors as methods.
    pub count_constructors: bool,
    /// Count interfaces as classes (and their members as methods).
    pub count_interfaces: bool,
    /// Turn recoverable parse problems into hard errors.
    pub strict: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            include_globs: vec!["**/*.java".to_string(), "**/*.aj".to_string()],
            exclude_globs: Vec::new(),
            count_constructors: false,
            count_interfaces: false,
            strict: false,
        }
    }
}

/// A recoverable problem found while scanning one file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub file: String,
    pub line: u32,
    pub message: String,
}

impl std::fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.file, self.line, self.message)
    }
}

/// Internal diagnostic before the file name is attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawDiag {
    pub line: u32,
    pub message: String,
}

/// One selected source file: root-relative name plus absolute path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScannedFile {
    pub rel: String,
    pub abs: PathBuf,
}

fn build_globset(patterns: &[String]) -> Result<globset::GlobSet, Error> {
    let mut builder = globset::GlobSetBuilder::new();
    for pattern in patterns {
        let glob = globset::GlobBuilder::new(pattern)
            .literal_separator(true)
            .build()
            .map_err(|e| Error::Config(format!("bad glob pattern {pattern:?}: {e}")))?;
        builder.add(glob);
    }
    builder
        .build()
        .map_err(|e| Error::Config(format!("bad glob patterns: {e}")))
}

/// Lists the files under `root` selected by the include/exclude patterns,
/// sorted by root-relative path. Symlinks are not followed.
pub fn scan_tree(root: &Path, cfg: &ScanConfig) -> Result<Vec<ScannedFile>, Error> {
    let meta = std::fs::metadata(root).map_err(|e| {
        Error::Config(format!("version root {} is missing or unreadable: {e}", root.display()))
    })?;
    if !meta.is_dir() {
        return Err(Error::Config(format!(
            "version root {} is not a directory",
            root.display()
        )));
    }

    let include = build_globset(&cfg.include_globs)?;
    let exclude = build_globset(&cfg.exclude_globs)?;

    let mut files = Vec::new();
    for entry in walkdir::WalkDir::new(root).follow_links(false) {
        let entry = entry.map_err(|e| Error::Io {
            path: e
                .path()
                .map(|p| p.display().to_string())
                .unwrap_or_else(|| root.display().to_string()),
            source: e
                .into_io_error()
                .unwrap_or_else(|| std::io::Error::other("walk error")),
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = entry
            .path()
            .strip_prefix(root)
            .expect("walked path under root")
            .to_string_lossy()
            .replace('\\', "/");
        if include.is_match(&rel) && !exclude.is_match(&rel) {
            files.push(ScannedFile {
                rel,
                abs: entry.path().to_path_buf(),
            });
        }
    }
    files.sort_by(|a, b| a.rel.cmp(&b.rel));
    Ok(files)
}

/// Extracts every recognized declaration from one file's text.
///
/// In strict mode the first recoverable problem becomes an error; otherwise
/// problems are reported as diagnostics and the scan continues past them.
pub fn extract_entities(
    text: &str,
    file: &str,
    cfg: &ScanConfig,
) -> Result<(Vec<Entity>, Vec<ParseDiagnostic>), Error> {
    let lexed = lexer::strip_noise(text);
    let mut raw: Vec<RawDiag> = lexed
        .diagnostics
        .iter()
        .map(|d| RawDiag {
            line: d.line,
            message: d.message.clone(),
        })
        .collect();

    let mut parser = parser::Parser::new(text, lexed.tokens, file, cfg);
    parser.parse();
    raw.extend(parser.diagnostics.iter().cloned());
    raw.sort_by_key(|d| d.line);

    if cfg.strict {
        if let Some(first) = raw.first() {
            return Err(Error::Parse {
                file: file.to_string(),
                line: first.line,
                message: first.message.clone(),
            });
        }
    }

    let diagnostics = raw
        .into_iter()
        .map(|d| ParseDiagnostic {
            file: file.to_string(),
            line: d.line,
            message: d.message,
        })
        .collect();
    Ok((parser.entities, diagnostics))
}

/// Entities extracted from one file, in source order.
#[derive(Debug, Clone)]
pub struct FileEntities {
    pub file: String,
    pub entities: Vec<Entity>,
}

/// Merges per-file extractions into one version inventory.
///
/// Duplicate identity keys get `#2`, `#3`, ... suffixes in file-then-line
/// order, so the result does not depend on the order files were parsed.
pub fn build_inventory(label: &str, mut files: Vec<FileEntities>) -> VersionInventory {
    files.sort_by(|a, b| a.file.cmp(&b.file));
    let mut groups: BTreeMap<(EntityKind, String), Vec<Entity>> = BTreeMap::new();
    for file in files {
        for entity in file.entities {
            groups
                .entry((entity.kind, entity.identity_key.clone()))
                .or_default()
                .push(entity);
        }
    }
    let mut all = Vec::new();
    for ((_, key), group) in groups {
        for (i, mut entity) in group.into_iter().enumerate() {
            if i > 0 {
                entity.identity_key = format!("{key}#{}", i + 1);
            }
            all.push(entity);
        }
    }
    VersionInventory::build(label, all)
}

/// Reads one file and extracts its entities, reporting lossy decoding.
fn extract_file(
    file: &ScannedFile,
    cfg: &ScanConfig,
) -> Result<(FileEntities, Vec<ParseDiagnostic>), Error> {
    let bytes = std::fs::read(&file.abs).map_err(|e| Error::Io {
        path: file.abs.display().to_string(),
        source: e,
    })?;
    let mut diagnostics = Vec::new();
    let text = match String::from_utf8(bytes) {
        Ok(text) => text,
        Err(e) => {
            if cfg.strict {
                return Err(Error::Parse {
                    file: file.rel.clone(),
                    line: 1,
                    message: "invalid UTF-8 bytes replaced".to_string(),
                });
            }
            diagnostics.push(ParseDiagnostic {
                file: file.rel.clone(),
                line: 1,
                message: "invalid UTF-8 bytes replaced".to_string(),
            });
            String::from_utf8_lossy(e.as_bytes()).into_owned()
        }
    };
    let (entities, mut parse_diags) = extract_entities(&text, &file.rel, cfg)?;
    diagnostics.append(&mut parse_diags);
    Ok((
        FileEntities {
            file: file.rel.clone(),
            entities,
        },
        diagnostics,
    ))
}

/// Scans a version root and builds its inventory, extracting files in
/// parallel. Output is deterministic regardless of scheduling.
pub fn extract_version(
    root: &Path,
    label: &str,
    cfg: &ScanConfig,
) -> Result<(VersionInventory, Vec<ParseDiagnostic>), Error> {
    let files = scan_tree(root, cfg)?;
    let results: Result<Vec<_>, Error> = files
        .par_iter()
        .map(|file| extract_file(file, cfg))
        .collect();
    let results = results?;

    let mut diagnostics = Vec::new();
    let mut file_entities = Vec::new();
    for (entities, mut diags) in results {
        diagnostics.append(&mut diags);
        file_entities.push(entities);
    }
    Ok((build_inventory(label, file_entities), diagnostics))
}
