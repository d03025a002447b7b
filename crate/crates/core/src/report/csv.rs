use std::path::Path;

use ::csv::Writer;

use crate::error::{Error, Result};

use super::{evidence_text, fmt2, summary_cells, MetricsReport};

/// File names and header rows of the CSV set.
pub const CSV_FILES: [(&str, &[&str]); 8] = [
    ("summary.csv", &["metric", "value"]),
    ("namespaces.csv", &["namespace", "noc", "nac"]),
    (
        "types.csv",
        &[
            "namespace",
            "type",
            "sloc",
            "nom",
            "npm",
            "wmc",
            "dep",
            "i_dep",
            "fan_in",
            "fan_out",
            "noa",
        ],
    ),
    (
        "methods.csv",
        &["namespace", "type", "method", "mloc", "cyclo", "calls", "nbd", "param"],
    ),
    (
        "namespace-coupling.csv",
        &["namespace", "ca", "ce", "instability", "abstractness", "distance"],
    ),
    (
        "type-coupling.csv",
        &["namespace", "type", "dep", "i_dep", "fan_in", "fan_out"],
    ),
    ("dependencies.csv", &["from_type", "to_type", "kind"]),
    ("findings.csv", &["rule", "context", "target", "evidence", "message"]),
];

fn rows(report: &MetricsReport, file: &str) -> Vec<Vec<String>> {
    let s = |v: &dyn ToString| v.to_string();
    match file {
        "summary.csv" => summary_cells(&report.summary)
            .into_iter()
            .map(|(k, v)| vec![k.to_string(), v])
            .collect(),
        "namespaces.csv" => report
            .namespaces
            .iter()
            .map(|n| vec![n.namespace.clone(), s(&n.noc), s(&n.nac)])
            .collect(),
        "types.csv" => report
            .types
            .iter()
            .map(|t| {
                vec![
                    t.namespace.clone(),
                    t.type_name.clone(),
                    s(&t.sloc),
                    s(&t.nom),
                    s(&t.npm),
                    s(&t.wmc),
                    s(&t.dep),
                    s(&t.i_dep),
                    s(&t.fan_in),
                    s(&t.fan_out),
                    s(&t.noa),
                ]
            })
            .collect(),
        "methods.csv" => report
            .methods
            .iter()
            .map(|m| {
                vec![
                    m.namespace.clone(),
                    m.type_name.clone(),
                    m.method.clone(),
                    s(&m.mloc),
                    s(&m.cyclo),
                    s(&m.calls),
                    s(&m.nbd),
                    s(&m.param),
                ]
            })
            .collect(),
        "namespace-coupling.csv" => report
            .namespace_coupling
            .iter()
            .map(|c| {
                vec![
                    c.namespace.clone(),
                    s(&c.ca),
                    s(&c.ce),
                    fmt2(c.instability),
                    fmt2(c.abstractness),
                    fmt2(c.distance),
                ]
            })
            .collect(),
        "type-coupling.csv" => report
            .type_coupling
            .iter()
            .map(|t| {
                vec![
                    t.namespace.clone(),
                    t.type_name.clone(),
                    s(&t.dep),
                    s(&t.i_dep),
                    s(&t.fan_in),
                    s(&t.fan_out),
                ]
            })
            .collect(),
        "dependencies.csv" => {
            let mut out = Vec::new();
            for (internal, external) in report.dependencies.i_dep.iter().zip(&report.dependencies.dep) {
                for to in &internal.dependencies {
                    out.push(vec![internal.type_name.clone(), to.clone(), "internal".into()]);
                }
                for to in &external.dependencies {
                    out.push(vec![external.type_name.clone(), to.clone(), "external".into()]);
                }
            }
            out
        }
        "findings.csv" => report
            .findings
            .iter()
            .map(|f| {
                vec![
                    f.rule.to_string(),
                    f.context.as_str().to_string(),
                    f.target.clone(),
                    evidence_text(f),
                    f.message.clone(),
                ]
            })
            .collect(),
        _ => unreachable!("unknown csv file {file}"),
    }
}

/// Renders every CSV file in memory as `(file name, contents)`.
pub fn render_csv(report: &MetricsReport) -> Vec<(&'static str, String)> {
    CSV_FILES
        .iter()
        .map(|(name, header)| {
            let mut w = Writer::from_writer(Vec::new());
            w.write_record(*header).expect("in-memory write");
            for row in rows(report, name) {
                w.write_record(&row).expect("in-memory write");
            }
            let bytes = w.into_inner().expect("in-memory flush");
            (*name, String::from_utf8(bytes).expect("utf-8 fields"))
        })
        .collect()
}

/// Writes the CSV set into `output_dir`, creating the directory.
pub fn write_csv(report: &MetricsReport, output_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(output_dir).map_err(|e| Error::io(output_dir, e))?;
    for (name, text) in render_csv(report) {
        let path = output_dir.join(name);
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}
