//! Source code metrics for Java projects.
//!
//! The pipeline is `scan -> metrics -> dependency analysis -> heuristics ->
//! render`:
//!
//! ```no_run
//! use drtools::{analyze, heuristics::ThresholdConfig, java};
//!
//! let scan = java::scan_project("src".as_ref()).unwrap();
//! let report = analyze(&scan.model, &ThresholdConfig::default(), None);
//! print!("{}", drtools::report::render_json(&report));
//! ```

pub mod cli;
pub mod deps;
pub mod error;
pub mod frontend;
pub mod heuristics;
pub mod java;
pub mod metrics;
pub mod model;
pub mod report;

use deps::{dependency_report, namespace_coupling, DependencyGraph, TypeCoupling};
use heuristics::{evaluate, ThresholdConfig};
use model::SourceModel;
use report::{MetricsReport, SortSpec};

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Computes every context for a resolved model, rows in default order.
pub fn analyze(model: &SourceModel, cfg: &ThresholdConfig, generated_at: Option<String>) -> MetricsReport {
    let graph = DependencyGraph::build(model);
    let types = metrics::all_type_metrics(model, &graph);
    let type_coupling = types.iter().map(TypeCoupling::from).collect();
    let mut report = MetricsReport {
        project_name: model.project_name.clone(),
        tool_version: VERSION.to_string(),
        generated_at,
        summary: metrics::summary(model),
        namespaces: metrics::all_namespace_metrics(model),
        types,
        methods: metrics::method_metrics(model),
        namespace_coupling: namespace_coupling(model, &graph),
        type_coupling,
        dependencies: dependency_report(model, &graph),
        findings: Vec::new(),
    };
    report.sort(&SortSpec::default()).expect("default key chains are valid");
    report.findings = evaluate(&report, cfg);
    report
}
