//! The assembled report and its serializations.

mod csv;
mod json;
mod pretty;
mod sort;

use std::fmt;
use std::str::FromStr;

use crate::deps::{DependencyReport, NamespaceCoupling, TypeCoupling};
use crate::heuristics::HeuristicFinding;
use crate::metrics::{MethodMetrics, NamespaceMetrics, SummaryMetrics, TypeMetrics};

pub use self::csv::{render_csv, write_csv, CSV_FILES};
pub use self::json::{render_json, write_json, ReportDocument, SummaryDocument};
pub use self::pretty::render_pretty;
pub use self::sort::{sort_context, take_top, Order, Row, SortKey, SortSpec};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricsReport {
    pub project_name: String,
    pub tool_version: String,
    /// ISO-8601 UTC; `None` when timestamps are disabled.
    pub generated_at: Option<String>,
    pub summary: SummaryMetrics,
    pub namespaces: Vec<NamespaceMetrics>,
    pub types: Vec<TypeMetrics>,
    pub methods: Vec<MethodMetrics>,
    pub namespace_coupling: Vec<NamespaceCoupling>,
    pub type_coupling: Vec<TypeCoupling>,
    pub dependencies: DependencyReport,
    pub findings: Vec<HeuristicFinding>,
}

impl MetricsReport {
    /// Re-sorts every row collection with `spec`, falling back to the
    /// default key chain for contexts it does not mention.
    pub fn sort(&mut self, spec: &SortSpec) -> Result<(), crate::error::ConfigError> {
        sort_context(&mut self.namespaces, spec.get(Context::Namespaces))?;
        sort_context(&mut self.types, spec.get(Context::Types))?;
        sort_context(&mut self.methods, spec.get(Context::Methods))?;
        sort_context(&mut self.namespace_coupling, spec.get(Context::Coupling))?;
        sort_context(&mut self.type_coupling, spec.get(Context::TypeCoupling))?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Context {
    Summary,
    Namespaces,
    Types,
    Methods,
    Coupling,
    TypeCoupling,
    Dependencies,
    Cycles,
    Findings,
}

impl Context {
    pub const ALL: [Context; 9] = [
        Context::Summary,
        Context::Namespaces,
        Context::Types,
        Context::Methods,
        Context::Coupling,
        Context::TypeCoupling,
        Context::Dependencies,
        Context::Cycles,
        Context::Findings,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Context::Summary => "summary",
            Context::Namespaces => "namespaces",
            Context::Types => "types",
            Context::Methods => "methods",
            Context::Coupling => "coupling",
            Context::TypeCoupling => "type-coupling",
            Context::Dependencies => "dependencies",
            Context::Cycles => "cycles",
            Context::Findings => "findings",
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Context {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Context::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown context `{s}`"))
    }
}

/// Two decimals, as used for means and coupling ratios in every format.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

pub(crate) fn fmt2(x: f64) -> String {
    format!("{:.2}", round2(x))
}

/// Integers without a fraction, anything else to two decimals.
pub(crate) fn fmt_num(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        fmt2(x)
    }
}

pub(crate) fn summary_cells(s: &SummaryMetrics) -> Vec<(&'static str, String)> {
    s.entries()
        .into_iter()
        .map(|(name, v)| {
            let cell = if name.starts_with("mean_") { fmt2(v) } else { fmt_num(v) };
            (name, cell)
        })
        .collect()
}

pub(crate) fn evidence_text(f: &HeuristicFinding) -> String {
    use crate::heuristics::Direction;
    let mut text = f
        .evidence
        .iter()
        .map(|e| {
            let op = match e.direction {
                Direction::AtLeast => ">=",
                Direction::AtMost => "<=",
            };
            format!("{}={}{}{}", e.metric, fmt_num(e.value), op, fmt_num(e.threshold))
        })
        .collect::<Vec<_>>()
        .join("; ");
    if !f.related.is_empty() {
        let related = f
            .related
            .iter()
            .map(|r| format!("{}={}", r.metric, fmt_num(r.value)))
            .collect::<Vec<_>>()
            .join("; ");
        text.push_str(" | ");
        text.push_str(&related);
    }
    text
}
