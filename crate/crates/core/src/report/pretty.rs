use std::fmt::Write;

use super::{evidence_text, fmt2, summary_cells, take_top, Context, MetricsReport};

const SUMMARY_LABELS: [&str; 9] = [
    "Namespaces",
    "Types",
    "Types per namespace (mean)",
    "SLOC",
    "SLOC per type (mean)",
    "Methods",
    "Methods per type (mean)",
    "CYCLO",
    "CYCLO per type (mean)",
];

struct Table {
    header: Vec<&'static str>,
    /// Text columns are left aligned, the rest right aligned.
    text_columns: usize,
    /// The last column holds free text and is left aligned too.
    text_tail: bool,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn render(&self, out: &mut String) {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |out: &mut String, cells: &[String]| {
            let mut text = String::new();
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    text.push_str("  ");
                }
                if i < self.text_columns || (self.text_tail && i + 1 == widths.len()) {
                    let _ = write!(text, "{cell:<w$}");
                } else {
                    let _ = write!(text, "{cell:>w$}");
                }
            }
            out.push_str(text.trim_end());
            out.push('\n');
        };
        let header: Vec<String> = self.header.iter().map(|h| h.to_string()).collect();
        line(out, &header);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        line(out, &rule);
        for row in &self.rows {
            line(out, row);
        }
    }
}

fn title(out: &mut String, name: &str, shown: usize, total: usize) {
    if shown < total {
        let _ = writeln!(out, "{name} (top {shown} of {total})");
    } else {
        let _ = writeln!(out, "{name} ({total})");
    }
}

fn header_has_tail(section: &str) -> bool {
    section == "Dependencies"
}

fn section<R>(
    out: &mut String,
    name: &str,
    header: Vec<&'static str>,
    text_columns: usize,
    rows: &[R],
    top: Option<usize>,
    cells: impl Fn(&R) -> Vec<String>,
) {
    let shown = take_top(rows, top.unwrap_or(usize::MAX));
    title(out, name, shown.len(), rows.len());
    Table {
        header,
        text_columns,
        text_tail: header_has_tail(name),
        rows: shown.iter().map(cells).collect(),
    }
    .render(out);
}

/// Renders the requested contexts as aligned tables, `top` rows each.
/// Findings are appended whenever any exist.
pub fn render_pretty(report: &MetricsReport, contexts: &[Context], top: Option<usize>) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "drtools {} | project: {}",
        report.tool_version, report.project_name
    );
    if let Some(ts) = &report.generated_at {
        let _ = write!(out, " | generated: {ts}");
    }
    out.push('\n');

    let s = |v: u32| v.to_string();
    for context in Context::ALL {
        if context == Context::Findings || !contexts.contains(&context) {
            continue;
        }
        out.push('\n');
        match context {
            Context::Summary => {
                out.push_str("Summary\n");
                let rows = summary_cells(&report.summary)
                    .into_iter()
                    .zip(SUMMARY_LABELS)
                    .map(|((_, v), label)| vec![label.to_string(), v])
                    .collect();
                Table {
                    header: vec!["metric", "value"],
                    text_columns: 1,
                    text_tail: false,
                    rows,
                }
                .render(&mut out);
            }
            Context::Namespaces => section(
                &mut out,
                "Namespaces",
                vec!["namespace", "NOC", "NAC"],
                1,
                &report.namespaces,
                top,
                |n| vec![n.namespace.clone(), s(n.noc), s(n.nac)],
            ),
            Context::Types => section(
                &mut out,
                "Types",
                vec![
                    "namespace",
                    "type",
                    "SLOC",
                    "NOM",
                    "NPM",
                    "WMC",
                    "DEP",
                    "I-DEP",
                    "FAN-IN",
                    "FAN-OUT",
                    "NOA",
                ],
                2,
                &report.types,
                top,
                |t| {
                    vec![
                        t.namespace.clone(),
                        t.type_name.clone(),
                        s(t.sloc),
                        s(t.nom),
                        s(t.npm),
                        s(t.wmc),
                        s(t.dep),
                        s(t.i_dep),
                        s(t.fan_in),
                        s(t.fan_out),
                        s(t.noa),
                    ]
                },
            ),
            Context::Methods => section(
                &mut out,
                "Methods",
                vec!["namespace", "type", "method", "MLOC", "CYCLO", "CALLS", "NBD", "PARAM"],
                3,
                &report.methods,
                top,
                |m| {
                    vec![
                        m.namespace.clone(),
                        m.type_name.clone(),
                        m.method.clone(),
                        s(m.mloc),
                        s(m.cyclo),
                        s(m.calls),
                        s(m.nbd),
                        s(m.param),
                    ]
                },
            ),
            Context::Coupling => section(
                &mut out,
                "Namespace coupling",
                vec!["namespace", "CA", "CE", "I", "A", "D"],
                1,
                &report.namespace_coupling,
                top,
                |c| {
                    vec![
                        c.namespace.clone(),
                        s(c.ca),
                        s(c.ce),
                        fmt2(c.instability),
                        fmt2(c.abstractness),
                        fmt2(c.distance),
                    ]
                },
            ),
            Context::TypeCoupling => section(
                &mut out,
                "Type coupling",
                vec!["namespace", "type", "DEP", "I-DEP", "FAN-IN", "FAN-OUT"],
                2,
                &report.type_coupling,
                top,
                |t| {
                    vec![
                        t.namespace.clone(),
                        t.type_name.clone(),
                        s(t.dep),
                        s(t.i_dep),
                        s(t.fan_in),
                        s(t.fan_out),
                    ]
                },
            ),
            Context::Dependencies => {
                let deps = &report.dependencies;
                let mut rows: Vec<(&str, usize, &[String])> = deps
                    .i_dep
                    .iter()
                    .zip(&deps.dep)
                    .map(|(i, e)| (i.type_name.as_str(), e.dependencies.len(), i.dependencies.as_slice()))
                    .collect();
                rows.sort_by(|a, b| b.2.len().cmp(&a.2.len()).then(b.1.cmp(&a.1)).then(a.0.cmp(b.0)));
                section(
                    &mut out,
                    "Dependencies",
                    vec!["type", "DEP", "I-DEP", "internal"],
                    1,
                    &rows,
                    top,
                    |(name, dep, internal)| {
                        let mut cells = vec![name.to_string(), dep.to_string(), internal.len().to_string()];
                        cells.push(internal.join(", "));
                        cells
                    },
                );
            }
            Context::Cycles => {
                let cycles = &report.dependencies.cycles;
                let shown = take_top(cycles, top.unwrap_or(usize::MAX));
                title(&mut out, "Cycles", shown.len(), cycles.len());
                if cycles.is_empty() {
                    out.push_str("(none)\n");
                }
                for (i, c) in shown.iter().enumerate() {
                    let _ = writeln!(out, "{}. [{} types] {}", i + 1, c.len(), c.join(", "));
                }
            }
            Context::Findings => unreachable!(),
        }
    }

    let asked = contexts.contains(&Context::Findings);
    if asked || !report.findings.is_empty() {
        out.push('\n');
        let _ = writeln!(out, "Findings ({})", report.findings.len());
        if report.findings.is_empty() {
            out.push_str("(none)\n");
        }
        for f in &report.findings {
            let _ = writeln!(
                out,
                "[{}] {} {}: {} ({})",
                f.rule,
                f.context.as_str(),
                f.target,
                f.message,
                evidence_text(f)
            );
        }
    }
    out
}
