//! Language frontend boundary and project scanning.
//!
//! Supporting a new language means implementing [`Frontend`]: a parser
//! producing per-file units and a resolver that links them. Everything
//! downstream (metrics, dependencies, heuristics, reporting) works on the
//! resulting [`SourceModel`].

use std::path::Path;

use rayon::prelude::*;
use walkdir::{DirEntry, WalkDir};

use crate::error::{Diagnostic, Error, Result};
use crate::model::{SourceModel, TypeDecl};

/// Directory names never descended into.
pub const SKIPPED_DIRS: &[&str] = &["target", "build", "out", ".git"];

pub trait Frontend: Sync {
    type Unit: Send;

    fn is_source_file(&self, path: &Path) -> bool;

    /// Parses one file. Syntax errors yield a unit without types plus a
    /// diagnostic.
    fn parse(&self, file_path: &str, source_text: &str) -> (Self::Unit, Vec<Diagnostic>);

    /// The namespace of a unit and the top-level types it declares.
    fn declarations(unit: &Self::Unit) -> (&str, &[TypeDecl]);

    fn resolve(&self, model: SourceModel, units: &[Self::Unit]) -> (SourceModel, Vec<Diagnostic>);
}

#[derive(Debug, Default)]
pub struct ScanResult {
    pub model: SourceModel,
    pub diagnostics: Vec<Diagnostic>,
}

fn is_skipped(entry: &DirEntry) -> bool {
    if entry.depth() == 0 || !entry.file_type().is_dir() {
        return false;
    }
    let name = entry.file_name().to_string_lossy();
    name.starts_with('.') || SKIPPED_DIRS.contains(&name.as_ref())
}

pub fn project_name(root: &Path) -> String {
    root.canonicalize()
        .ok()
        .and_then(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .unwrap_or_else(|| "project".to_string())
}

/// Collects, parses and links every source file under `root`.
///
/// Files are parsed in parallel; merging happens afterwards in path order,
/// so the result does not depend on scheduling.
pub fn scan_project<F: Frontend>(frontend: &F, root: &Path) -> Result<ScanResult> {
    if !root.is_dir() {
        return Err(Error::MissingRoot(root.to_path_buf()));
    }
    let mut diagnostics = Vec::new();
    let mut files = Vec::new();
    for entry in WalkDir::new(root)
        .sort_by_file_name()
        .into_iter()
        .filter_entry(|e| !is_skipped(e))
    {
        match entry {
            Ok(e) if e.file_type().is_file() && frontend.is_source_file(e.path()) => files.push(e.into_path()),
            Ok(_) => {}
            Err(err) => {
                let path = err.path().map(|p| p.display().to_string()).unwrap_or_default();
                diagnostics.push(Diagnostic::new(path, 0, format!("cannot read: {err}")));
            }
        }
    }

    let parsed: Vec<_> = files
        .par_iter()
        .map(|path| {
            let display = path.display().to_string();
            match std::fs::read(path) {
                Ok(bytes) => {
                    let text = String::from_utf8_lossy(&bytes);
                    let (unit, diags) = frontend.parse(&display, &text);
                    (Some(unit), diags)
                }
                Err(err) => (None, vec![Diagnostic::new(display, 0, format!("cannot read: {err}"))]),
            }
        })
        .collect();

    let mut model = SourceModel::new(project_name(root));
    let mut units = Vec::with_capacity(parsed.len());
    for (unit, diags) in parsed {
        diagnostics.extend(diags);
        let Some(unit) = unit else { continue };
        let (namespace, types) = F::declarations(&unit);
        for decl in types {
            if let Err(err) = model.add_type(namespace, decl.clone()) {
                diagnostics.push(Diagnostic::new(
                    decl.location.file.clone(),
                    decl.location.line,
                    format!("{err}; later declaration ignored"),
                ));
            }
        }
        units.push(unit);
    }
    let (model, resolve_diags) = frontend.resolve(model, &units);
    diagnostics.extend(resolve_diags);
    Ok(ScanResult { model, diagnostics })
}
