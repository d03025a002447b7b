//! Internal dependency graph, package coupling and dependency cycles.
//!
//! Coupling follows Martin's package metrics, counted over types:
//! `CA(P)` is the number of types outside `P` that reference a type in
//! `P`, `CE(P)` the number of types outside `P` referenced from `P`,
//! `I = CE / (CA + CE)`, `A = NAC / NOC` and `D = |A + I - 1|`. Both
//! ratios are zero when their divisor is zero.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::metrics::{external_dependencies, internal_dependencies, TypeMetrics};
use crate::model::SourceModel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphNode {
    pub fqn: String,
    pub namespace: String,
}

/// Directed graph over project types; edges are deduplicated and never
/// self loops.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DependencyGraph {
    nodes: Vec<GraphNode>,
    index: HashMap<String, usize>,
    edges: BTreeSet<(usize, usize)>,
    fan_in: Vec<usize>,
}

impl DependencyGraph {
    pub fn build(model: &SourceModel) -> Self {
        let ids = model.type_ids();
        let nodes: Vec<GraphNode> = ids
            .iter()
            .map(|&id| GraphNode {
                fqn: model.fqn(id),
                namespace: model.namespaces[id.namespace].name.clone(),
            })
            .collect();
        let index: HashMap<String, usize> = nodes.iter().enumerate().map(|(i, n)| (n.fqn.clone(), i)).collect();
        let mut edges = BTreeSet::new();
        for (from, &id) in ids.iter().enumerate() {
            for target in internal_dependencies(model.decl(id), &nodes[from].fqn) {
                if let Some(&to) = index.get(target) {
                    edges.insert((from, to));
                }
            }
        }
        Self::assemble(nodes, index, edges)
    }

    /// Graph over bare names; self loops and duplicate edges are dropped.
    pub fn from_edges(names: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let nodes: Vec<GraphNode> = names
            .into_iter()
            .map(|fqn| GraphNode {
                namespace: fqn.rsplit_once('.').map(|(ns, _)| ns.to_string()).unwrap_or_default(),
                fqn,
            })
            .collect();
        let index = nodes.iter().enumerate().map(|(i, n)| (n.fqn.clone(), i)).collect();
        let edges = edges
            .into_iter()
            .filter(|(a, b)| a != b && *a < nodes.len() && *b < nodes.len())
            .collect();
        Self::assemble(nodes, index, edges)
    }

    fn assemble(nodes: Vec<GraphNode>, index: HashMap<String, usize>, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut fan_in = vec![0; nodes.len()];
        for &(_, to) in &edges {
            fan_in[to] += 1;
        }
        Self {
            nodes,
            index,
            edges,
            fan_in,
        }
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(from, to)` fully-qualified names.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(a, b)| (self.nodes[a].fqn.as_str(), self.nodes[b].fqn.as_str()))
    }

    pub fn edge_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        match (self.index.get(from), self.index.get(to)) {
            (Some(&a), Some(&b)) => self.edges.contains(&(a, b)),
            _ => false,
        }
    }

    /// Number of other project types referencing `fqn`.
    pub fn fan_in(&self, fqn: &str) -> usize {
        self.index.get(fqn).map_or(0, |&i| self.fan_in[i])
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
        }
        adj
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamespaceCoupling {
    pub namespace: String,
    pub ca: u32,
    pub ce: u32,
    pub instability: f64,
    pub abstractness: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCoupling {
    pub namespace: String,
    #[serde(rename = "type")]
    pub type_name: String,
    pub dep: u32,
    pub i_dep: u32,
    pub fan_in: u32,
    pub fan_out: u32,
}

impl From<&TypeMetrics> for TypeCoupling {
    fn from(t: &TypeMetrics) -> Self {
        Self {
            namespace: t.namespace.clone(),
            type_name: t.type_name.clone(),
            dep: t.dep,
            i_dep: t.i_dep,
            fan_in: t.fan_in,
            fan_out: t.fan_out,
        }
    }
}

/// The cross-namespace edges behind one namespace's CA and CE.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CouplingContributors {
    /// Edges from outside into the namespace; CA counts distinct sources.
    pub afferent: BTreeSet<(String, String)>,
    /// Edges from the namespace to outside; CE counts distinct targets.
    pub efferent: BTreeSet<(String, String)>,
}

impl CouplingContributors {
    pub fn ca(&self) -> usize {
        self.afferent
            .iter()
            .map(|(from, _)| from)
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn ce(&self) -> usize {
        self.efferent.iter().map(|(_, to)| to).collect::<BTreeSet<_>>().len()
    }
}

/// Contributor edges keyed by raw namespace name.
pub fn coupling_contributors(model: &SourceModel, graph: &DependencyGraph) -> BTreeMap<String, CouplingContributors> {
    let mut out: BTreeMap<String, CouplingContributors> = model
        .namespaces
        .iter()
        .map(|ns| (ns.name.clone(), CouplingContributors::default()))
        .collect();
    for (a, b) in graph.edge_indices() {
        let (from, to) = (&graph.nodes[a], &graph.nodes[b]);
        if from.namespace == to.namespace {
            continue;
        }
        let edge = (from.fqn.clone(), to.fqn.clone());
        out.entry(from.namespace.clone())
            .or_default()
            .efferent
            .insert(edge.clone());
        out.entry(to.namespace.clone()).or_default().afferent.insert(edge);
    }
    out
}

pub fn instability(ca: u32, ce: u32) -> f64 {
    if ca + ce == 0 {
        0.0
    } else {
        ce as f64 / (ca + ce) as f64
    }
}

pub fn abstractness(nac: u32, noc: u32) -> f64 {
    if noc == 0 {
        0.0
    } else {
        nac as f64 / noc as f64
    }
}

pub fn distance(abstractness: f64, instability: f64) -> f64 {
    (abstractness + instability - 1.0).abs()
}

/// One row per namespace, in namespace-name order.
pub fn namespace_coupling(model: &SourceModel, graph: &DependencyGraph) -> Vec<NamespaceCoupling> {
    let contributors = coupling_contributors(model, graph);
    model
        .sorted_namespaces()
        .into_iter()
        .map(|ns| {
            let c = &contributors[&ns.name];
            let (ca, ce) = (c.ca() as u32, c.ce() as u32);
            let noc = ns.types.len() as u32;
            let nac = ns.types.iter().filter(|t| t.counts_as_abstract()).count() as u32;
            let i = instability(ca, ce);
            let a = abstractness(nac, noc);
            NamespaceCoupling {
                namespace: ns.label().to_string(),
                ca,
                ce,
                instability: i,
                abstractness: a,
                distance: distance(a, i),
            }
        })
        .collect()
}

/// Strongly connected components with at least two members. Members are
/// sorted by name and components by their smallest member.
pub fn detect_cycles(graph: &DependencyGraph) -> Vec<Vec<String>> {
    let mut components: Vec<Vec<String>> = tarjan(graph.node_count(), &graph.adjacency())
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|c| {
            let mut names: Vec<String> = c.into_iter().map(|i| graph.nodes[i].fqn.clone()).collect();
            names.sort();
            names
        })
        .collect();
    components.sort();
    components
}

/// Iterative Tarjan; returns every component as node indices.
fn tarjan(n: usize, adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next = 0;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        // (node, position in its adjacency list)
        let mut work = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut pos)) = work.last_mut() {
            if *pos == 0 {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNVISITED {
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("component root is on the stack");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                out.push(component);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeDependencies {
    #[serde(rename = "type")]
    pub type_name: String,
    pub dependencies: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DependencyReport {
    /// External dependencies per type.
    pub dep: Vec<TypeDependencies>,
    /// Internal dependencies per type.
    pub i_dep: Vec<TypeDependencies>,
    pub cycles: Vec<Vec<String>>,
}

pub fn dependency_report(model: &SourceModel, graph: &DependencyGraph) -> DependencyReport {
    let mut dep = Vec::new();
    let mut i_dep = Vec::new();
    for id in model.type_ids() {
        let decl = model.decl(id);
        let fqn = model.fqn(id);
        dep.push(TypeDependencies {
            type_name: fqn.clone(),
            dependencies: external_dependencies(decl).into_iter().map(str::to_string).collect(),
        });
        i_dep.push(TypeDependencies {
            type_name: fqn.clone(),
            dependencies: internal_dependencies(decl, &fqn)
                .into_iter()
                .map(str::to_string)
                .collect(),
        });
    }
    DependencyReport {
        dep,
        i_dep,
        cycles: detect_cycles(graph),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{TypeDecl, TypeKind, TypeRef};

    fn class(name: &str, refs: &[&str]) -> TypeDecl {
        let mut t = TypeDecl::new(name, TypeKind::Class);
        for r in refs {
            t.referenced_types.insert(TypeRef::internal(*r, *r));
        }
        t
    }

    fn model(types: &[(&str, TypeDecl)]) -> SourceModel {
        let mut m = SourceModel::new("p");
        for (ns, t) in types {
            m.add_type(ns, t.clone()).unwrap();
        }
        m
    }

    #[test]
    fn edgeless_graph() {
        let m = model(&[("a", class("X", &[])), ("a", class("Y", &[]))]);
        let g = DependencyGraph::build(&m);
        assert_eq!((g.node_count(), g.edge_count()), (2, 0));
    }

    #[test]
    fn two_edges() {
        let m = model(&[
            ("a", class("X", &["a.Y", "b.Z"])),
            ("a", class("Y", &[])),
            ("b", class("Z", &[])),
        ]);
        let g = DependencyGraph::build(&m);
        assert_eq!((g.node_count(), g.edge_count()), (3, 2));
        assert!(g.has_edge("a.X", "a.Y"));
        assert!(g.has_edge("a.X", "b.Z"));
    }

    #[test]
    fn self_loop_excluded() {
        let m = model(&[("a", class("X", &["a.X"]))]);
        let g = DependencyGraph::build(&m);
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn single_cross_edge_coupling() {
        let m = model(&[("a", class("X", &["b.Y"])), ("b", class("Y", &[]))]);
        let g = DependencyGraph::build(&m);
        let rows = namespace_coupling(&m, &g);
        let b = &rows[1];
        assert_eq!((b.ca, b.ce), (1, 0));
        assert_eq!((b.instability, b.abstractness, b.distance), (0.0, 0.0, 1.0));
        let a = &rows[0];
        assert_eq!((a.ca, a.ce), (0, 1));
        assert_eq!((a.instability, a.abstractness, a.distance), (1.0, 0.0, 0.0));
    }

    #[test]
    fn isolated_concrete_package() {
        let m = model(&[("a", class("X", &[]))]);
        let rows = namespace_coupling(&m, &DependencyGraph::build(&m));
        assert_eq!((rows[0].ca, rows[0].ce), (0, 0));
        assert_eq!(
            (rows[0].instability, rows[0].abstractness, rows[0].distance),
            (0.0, 0.0, 1.0)
        );
    }

    #[test]
    fn interface_package_on_main_sequence() {
        let m = model(&[
            ("api", TypeDecl::new("I", TypeKind::Interface)),
            ("api", TypeDecl::new("J", TypeKind::Interface)),
            ("impl", class("C", &["api.I", "api.J"])),
        ]);
        let rows = namespace_coupling(&m, &DependencyGraph::build(&m));
        let api = &rows[0];
        assert_eq!((api.ca, api.ce), (1, 0));
        assert_eq!((api.abstractness, api.instability, api.distance), (1.0, 0.0, 0.0));
    }

    #[test]
    fn ca_ce_count_types_not_edges() {
        // two types in a both point at b.Y and b.Z
        let m = model(&[
            ("a", class("P", &["b.Y", "b.Z"])),
            ("a", class("Q", &["b.Y"])),
            ("b", class("Y", &[])),
            ("b", class("Z", &[])),
        ]);
        let rows = namespace_coupling(&m, &DependencyGraph::build(&m));
        assert_eq!((rows[0].ca, rows[0].ce), (0, 2));
        assert_eq!((rows[1].ca, rows[1].ce), (2, 0));
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| ((b'A' + i as u8) as char).to_string()).collect()
    }

    #[test]
    fn cycles() {
        let acyclic = DependencyGraph::from_edges(names(3), [(0, 1), (1, 2)]);
        assert!(detect_cycles(&acyclic).is_empty());

        let two = DependencyGraph::from_edges(names(2), [(0, 1), (1, 0)]);
        assert_eq!(detect_cycles(&two), vec![vec!["A".to_string(), "B".to_string()]]);

        // X->Y->Z->X plus isolated W; names chosen so W sorts last
        let three = DependencyGraph::from_edges(
            vec!["X".into(), "Y".into(), "Z".into(), "W".into()],
            [(0, 1), (1, 2), (2, 0)],
        );
        assert_eq!(
            detect_cycles(&three),
            vec![vec!["X".to_string(), "Y".into(), "Z".into()]]
        );
    }

    #[test]
    fn cycle_ordering() {
        let g = DependencyGraph::from_edges(names(5), [(4, 3), (3, 4), (2, 0), (0, 2), (1, 1)]);
        assert_eq!(
            detect_cycles(&g),
            vec![vec!["A".to_string(), "C".into()], vec!["D".to_string(), "E".into()]]
        );
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let n = 50_000;
        let g = DependencyGraph::from_edges(
            (0..n).map(|i| format!("t{i:05}")).collect(),
            (0..n).map(|i| (i, (i + 1) % n)),
        );
        let c = detect_cycles(&g);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].len(), n);
    }
}
