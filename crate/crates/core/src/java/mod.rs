//! Java frontend.

mod parse;
mod resolve;
pub mod sloc;

use std::path::Path;

pub use parse::{parse_unit, CompilationUnit, Import, ParsedUnit};
pub use resolve::{is_java_lang, resolve_references};
pub use sloc::{count_sloc, LineFlags};

use crate::error::{Diagnostic, Result};
use crate::frontend::{self, Frontend, ScanResult};
use crate::model::{SourceModel, TypeDecl};

#[derive(Debug, Default, Clone, Copy)]
pub struct JavaFrontend;

impl Frontend for JavaFrontend {
    type Unit = CompilationUnit;

    fn is_source_file(&self, path: &Path) -> bool {
        path.extension().is_some_and(|e| e == "java")
    }

    fn parse(&self, file_path: &str, source_text: &str) -> (CompilationUnit, Vec<Diagnostic>) {
        let parsed = parse_unit(file_path, source_text);
        (parsed.unit, parsed.diagnostics)
    }

    fn declarations(unit: &CompilationUnit) -> (&str, &[TypeDecl]) {
        (&unit.package_name, &unit.declared_types)
    }

    fn resolve(&self, model: SourceModel, units: &[CompilationUnit]) -> (SourceModel, Vec<Diagnostic>) {
        resolve_references(model, units)
    }
}

/// Scans a directory of `.java` files into a resolved model.
pub fn scan_project(root: &Path) -> Result<ScanResult> {
    frontend::scan_project(&JavaFrontend, root)
}
