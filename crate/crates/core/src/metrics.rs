//! Per-context metric rows computed from a resolved model.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::deps::DependencyGraph;
use crate::model::{namespace_label, MethodDecl, NamespaceDecl, Resolution, SourceModel, TypeDecl, TypeId};

/// An exact mean kept as `total / count`; zero when `count` is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Mean {
    pub total: u64,
    pub count: u64,
}

impl Mean {
    pub fn new(total: u64, count: u64) -> Self {
        Self { total, count }
    }

    pub fn value(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.total as f64 / self.count as f64
        }
    }

    /// Rounded half-up to two decimals using integer arithmetic.
    pub fn rounded(&self) -> f64 {
        if self.count == 0 {
            return 0.0;
        }
        let hundredths = (self.total as u128 * 200 + self.count as u128) / (self.count as u128 * 2);
        hundredths as f64 / 100.0
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SummaryMetrics {
    pub total_namespaces: u64,
    pub total_types: u64,
    pub mean_types_per_namespace: Mean,
    pub total_sloc: u64,
    pub mean_sloc_per_type: Mean,
    pub total_methods: u64,
    pub mean_methods_per_type: Mean,
    pub total_cyclo: u64,
    pub mean_cyclo_per_type: Mean,
}

impl SummaryMetrics {
    /// `(name, value)` pairs in display order; means rounded to 2 decimals.
    pub fn entries(&self) -> [(&'static str, f64); 9] {
        [
            ("total_namespaces", self.total_namespaces as f64),
            ("total_types", self.total_types as f64),
            ("mean_types_per_namespace", self.mean_types_per_namespace.rounded()),
            ("total_sloc", self.total_sloc as f64),
            ("mean_sloc_per_type", self.mean_sloc_per_type.rounded()),
            ("total_methods", self.total_methods as f64),
            ("mean_methods_per_type", self.mean_methods_per_type.rounded()),
            ("total_cyclo", self.total_cyclo as f64),
            ("mean_cyclo_per_type", self.mean_cyclo_per_type.rounded()),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamespaceMetrics {
    pub namespace: String,
    pub noc: u32,
    pub nac: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeMetrics {
    pub namespace: String,
    #[serde(rename = "type")]
    pub type_name: String,
    pub sloc: u32,
    pub nom: u32,
    pub npm: u32,
    pub wmc: u32,
    pub dep: u32,
    pub i_dep: u32,
    pub fan_in: u32,
    pub fan_out: u32,
    pub noa: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodMetrics {
    pub namespace: String,
    #[serde(rename = "type")]
    pub type_name: String,
    pub method: String,
    pub mloc: u32,
    pub cyclo: u32,
    pub calls: u32,
    pub nbd: u32,
    pub param: u32,
}

/// McCabe complexity: one plus the decision points; bodyless methods are 1.
pub fn cyclo(method: &MethodDecl) -> u32 {
    if method.has_body {
        1 + method.decision_points
    } else {
        1
    }
}

pub fn wmc(decl: &TypeDecl) -> u32 {
    decl.methods.iter().map(cyclo).sum()
}

/// Distinct external names a type references.
pub fn external_dependencies(decl: &TypeDecl) -> BTreeSet<&str> {
    decl.referenced_types
        .iter()
        .filter_map(|r| match &r.resolution {
            Resolution::External(name) => Some(name.as_str()),
            _ => None,
        })
        .collect()
}

/// Distinct project types a type references, excluding itself.
pub fn internal_dependencies<'a>(decl: &'a TypeDecl, self_fqn: &str) -> BTreeSet<&'a str> {
    decl.referenced_types
        .iter()
        .filter_map(|r| match &r.resolution {
            Resolution::Internal(name) if name != self_fqn => Some(name.as_str()),
            _ => None,
        })
        .collect()
}

pub fn type_metrics(model: &SourceModel, graph: &DependencyGraph, id: TypeId) -> TypeMetrics {
    let decl = model.decl(id);
    let fqn = model.fqn(id);
    let i_dep = internal_dependencies(decl, &fqn).len() as u32;
    TypeMetrics {
        namespace: namespace_label(&model.namespaces[id.namespace].name).to_string(),
        type_name: decl.name.clone(),
        sloc: decl.source_lines,
        nom: decl.methods.len() as u32,
        npm: decl.methods.iter().filter(|m| m.is_public).count() as u32,
        wmc: wmc(decl),
        dep: external_dependencies(decl).len() as u32,
        i_dep,
        fan_in: graph.fan_in(&fqn) as u32,
        fan_out: i_dep,
        noa: decl.fields.len() as u32,
    }
}

pub fn all_type_metrics(model: &SourceModel, graph: &DependencyGraph) -> Vec<TypeMetrics> {
    model
        .type_ids()
        .into_iter()
        .map(|id| type_metrics(model, graph, id))
        .collect()
}

pub fn namespace_metrics(ns: &NamespaceDecl) -> NamespaceMetrics {
    NamespaceMetrics {
        namespace: ns.label().to_string(),
        noc: ns.types.len() as u32,
        nac: ns.types.iter().filter(|t| t.counts_as_abstract()).count() as u32,
    }
}

pub fn all_namespace_metrics(model: &SourceModel) -> Vec<NamespaceMetrics> {
    model.sorted_namespaces().into_iter().map(namespace_metrics).collect()
}

pub fn method_metrics(model: &SourceModel) -> Vec<MethodMetrics> {
    let mut out = Vec::new();
    for (ns, decl) in model.internal_types() {
        for m in &decl.methods {
            out.push(MethodMetrics {
                namespace: namespace_label(ns).to_string(),
                type_name: decl.name.clone(),
                method: m.signature.clone(),
                mloc: m.body_lines,
                cyclo: cyclo(m),
                calls: m.invocation_count,
                nbd: m.max_block_depth,
                param: m.params,
            });
        }
    }
    out
}

pub fn summary(model: &SourceModel) -> SummaryMetrics {
    let types = model.type_count() as u64;
    let namespaces = model.namespaces.len() as u64;
    let mut sloc = 0u64;
    let mut methods = 0u64;
    let mut total_cyclo = 0u64;
    for ns in &model.namespaces {
        for t in &ns.types {
            sloc += t.source_lines as u64;
            methods += t.methods.len() as u64;
            total_cyclo += wmc(t) as u64;
        }
    }
    SummaryMetrics {
        total_namespaces: namespaces,
        total_types: types,
        mean_types_per_namespace: Mean::new(types, namespaces),
        total_sloc: sloc,
        mean_sloc_per_type: Mean::new(sloc, types),
        total_methods: methods,
        mean_methods_per_type: Mean::new(methods, types),
        total_cyclo,
        mean_cyclo_per_type: Mean::new(total_cyclo, types),
    }
}
