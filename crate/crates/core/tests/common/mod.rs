#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use drtools::report::MetricsReport;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn corpus_dir() -> PathBuf {
    fixtures().join("corpus")
}

/// Rows of `corpus.expected`, keyed by section name.
pub fn expected_sections() -> BTreeMap<String, Vec<Vec<String>>> {
    let text = std::fs::read_to_string(fixtures().join("corpus.expected")).expect("expected table");
    let mut out: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
    let mut current = String::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = name.to_string();
            out.entry(current.clone()).or_default();
            continue;
        }
        let cells = line.split('|').map(|c| c.trim().to_string()).collect();
        out.get_mut(&current).expect("row before section").push(cells);
    }
    out
}

fn diff(out: &mut Vec<String>, section: &str, expected: Vec<Vec<String>>, mut actual: Vec<Vec<String>>) {
    let mut expected = expected;
    expected.sort();
    actual.sort();
    for row in &expected {
        if !actual.contains(row) {
            out.push(format!("{section}: missing {}", row.join(" | ")));
        }
    }
    for row in &actual {
        if !expected.contains(row) {
            out.push(format!("{section}: unexpected {}", row.join(" | ")));
        }
    }
}

fn f2(x: f64) -> String {
    format!("{:.2}", (x * 100.0).round() / 100.0)
}

/// Every mismatch between the report and the hand-computed table.
pub fn corpus_mismatches(report: &MetricsReport) -> Vec<String> {
    let mut exp = expected_sections();
    let mut out = Vec::new();
    let s = |v: &dyn ToString| v.to_string();

    let summary = report
        .summary
        .entries()
        .iter()
        .map(|(k, v)| {
            let v = if k.starts_with("mean_") { f2(*v) } else { format!("{v}") };
            vec![k.to_string(), v]
        })
        .collect();
    diff(&mut out, "summary", exp.remove("summary").unwrap(), summary);

    let namespaces = report
        .namespaces
        .iter()
        .map(|n| vec![n.namespace.clone(), s(&n.noc), s(&n.nac)])
        .collect();
    diff(&mut out, "namespaces", exp.remove("namespaces").unwrap(), namespaces);

    let types = report
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
        .collect();
    diff(&mut out, "types", exp.remove("types").unwrap(), types);

    let methods = report
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
        .collect();
    diff(&mut out, "methods", exp.remove("methods").unwrap(), methods);

    let coupling = report
        .namespace_coupling
        .iter()
        .map(|c| {
            vec![
                c.namespace.clone(),
                s(&c.ca),
                s(&c.ce),
                f2(c.instability),
                f2(c.abstractness),
                f2(c.distance),
            ]
        })
        .collect();
    diff(&mut out, "coupling", exp.remove("coupling").unwrap(), coupling);

    // type coupling is the type table projected
    let mut projected: Vec<_> = report
        .types
        .iter()
        .map(|t| {
            (
                t.namespace.clone(),
                t.type_name.clone(),
                t.dep,
                t.i_dep,
                t.fan_in,
                t.fan_out,
            )
        })
        .collect();
    let mut tc: Vec<_> = report
        .type_coupling
        .iter()
        .map(|t| {
            (
                t.namespace.clone(),
                t.type_name.clone(),
                t.dep,
                t.i_dep,
                t.fan_in,
                t.fan_out,
            )
        })
        .collect();
    projected.sort();
    tc.sort();
    if projected != tc {
        out.push("type_coupling: differs from the type table".into());
    }

    let mut deps = Vec::new();
    for d in &report.dependencies.i_dep {
        for to in &d.dependencies {
            deps.push(vec![d.type_name.clone(), to.clone(), "internal".into()]);
        }
    }
    for d in &report.dependencies.dep {
        for to in &d.dependencies {
            deps.push(vec![d.type_name.clone(), to.clone(), "external".into()]);
        }
    }
    diff(&mut out, "dependencies", exp.remove("dependencies").unwrap(), deps);

    let cycles = report.dependencies.cycles.clone();
    diff(&mut out, "cycles", exp.remove("cycles").unwrap(), cycles);

    let findings = report
        .findings
        .iter()
        .map(|f| {
            let e = &f.evidence[0];
            vec![
                f.rule.to_string(),
                f.target.clone(),
                e.metric.clone(),
                format!("{}", e.value),
            ]
        })
        .collect();
    diff(&mut out, "findings", exp.remove("findings").unwrap(), findings);

    for (section, _) in exp {
        out.push(format!("unchecked section {section}"));
    }
    out
}
