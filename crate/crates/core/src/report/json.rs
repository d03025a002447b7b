use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::deps::{DependencyReport, NamespaceCoupling, TypeCoupling};
use crate::error::{Error, Result};
use crate::heuristics::HeuristicFinding;
use crate::metrics::{MethodMetrics, NamespaceMetrics, SummaryMetrics, TypeMetrics};

use super::{round2, MetricsReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryDocument {
    pub total_namespaces: u64,
    pub total_types: u64,
    pub mean_types_per_namespace: f64,
    pub total_sloc: u64,
    pub mean_sloc_per_type: f64,
    pub total_methods: u64,
    pub mean_methods_per_type: f64,
    pub total_cyclo: u64,
    pub mean_cyclo_per_type: f64,
}

impl From<&SummaryMetrics> for SummaryDocument {
    fn from(s: &SummaryMetrics) -> Self {
        Self {
            total_namespaces: s.total_namespaces,
            total_types: s.total_types,
            mean_types_per_namespace: s.mean_types_per_namespace.rounded(),
            total_sloc: s.total_sloc,
            mean_sloc_per_type: s.mean_sloc_per_type.rounded(),
            total_methods: s.total_methods,
            mean_methods_per_type: s.mean_methods_per_type.rounded(),
            total_cyclo: s.total_cyclo,
            mean_cyclo_per_type: s.mean_cyclo_per_type.rounded(),
        }
    }
}

/// The `report.json` layout. Means and coupling ratios carry two decimals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub project: String,
    pub generated_at: Option<String>,
    pub summary: SummaryDocument,
    pub namespaces: Vec<NamespaceMetrics>,
    pub types: Vec<TypeMetrics>,
    pub methods: Vec<MethodMetrics>,
    pub namespace_coupling: Vec<NamespaceCoupling>,
    pub type_coupling: Vec<TypeCoupling>,
    pub dependencies: DependencyReport,
    pub findings: Vec<HeuristicFinding>,
}

impl From<&MetricsReport> for ReportDocument {
    fn from(r: &MetricsReport) -> Self {
        Self {
            project: r.project_name.clone(),
            generated_at: r.generated_at.clone(),
            summary: (&r.summary).into(),
            namespaces: r.namespaces.clone(),
            types: r.types.clone(),
            methods: r.methods.clone(),
            namespace_coupling: r
                .namespace_coupling
                .iter()
                .map(|c| NamespaceCoupling {
                    instability: round2(c.instability),
                    abstractness: round2(c.abstractness),
                    distance: round2(c.distance),
                    ..c.clone()
                })
                .collect(),
            type_coupling: r.type_coupling.clone(),
            dependencies: r.dependencies.clone(),
            findings: r.findings.clone(),
        }
    }
}

pub fn render_json(report: &MetricsReport) -> String {
    let doc = ReportDocument::from(report);
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

/// Writes `report.json` into `output_dir`, creating the directory.
pub fn write_json(report: &MetricsReport, output_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(output_dir).map_err(|e| Error::io(output_dir, e))?;
    let path = output_dir.join("report.json");
    std::fs::write(&path, render_json(report)).map_err(|e| Error::io(&path, e))
}
