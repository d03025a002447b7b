//! Language-neutral representation of an analyzed project.
//!
//! A frontend produces [`TypeDecl`]s (one per top-level type) and inserts
//! them into a [`SourceModel`]. Nested, local and anonymous classes are
//! folded into their enclosing top-level declaration, so every metric in
//! this crate is reported per top-level type.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Label used in reports for the unnamed (default) package.
pub const DEFAULT_NAMESPACE_LABEL: &str = "<default>";

/// Where a declaration came from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Location {
    pub file: String,
    pub line: usize,
}

impl Location {
    pub fn new(file: impl Into<String>, line: usize) -> Self {
        Self {
            file: file.into(),
            line,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.file, self.line)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeKind {
    Class,
    Interface,
    Enum,
    Annotation,
    Record,
}

/// How a referenced type name was resolved.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Resolution {
    /// Fully-qualified name of a type declared in the project.
    Internal(String),
    /// Best-known name of a type outside the project.
    External(String),
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeRef {
    pub raw_name: String,
    pub resolution: Resolution,
}

impl TypeRef {
    pub fn unresolved(raw_name: impl Into<String>) -> Self {
        Self {
            raw_name: raw_name.into(),
            resolution: Resolution::Unresolved,
        }
    }

    pub fn internal(raw_name: impl Into<String>, fqn: impl Into<String>) -> Self {
        Self {
            raw_name: raw_name.into(),
            resolution: Resolution::Internal(fqn.into()),
        }
    }

    pub fn external(raw_name: impl Into<String>, name: impl Into<String>) -> Self {
        Self {
            raw_name: raw_name.into(),
            resolution: Resolution::External(name.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDecl {
    pub name: String,
    pub declared_type: TypeRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodDecl {
    pub name: String,
    /// Display signature, e.g. `inc(int a)`; prefixed with the nested type
    /// path when the method belongs to a folded nested class.
    pub signature: String,
    pub is_public: bool,
    pub is_constructor: bool,
    pub has_body: bool,
    pub params: u32,
    pub body_lines: u32,
    pub decision_points: u32,
    pub max_block_depth: u32,
    pub invocation_count: u32,
}

impl MethodDecl {
    /// A bodyless method with the given name and no parameters.
    pub fn new(name: impl Into<String>) -> Self {
        let name = name.into();
        Self {
            signature: format!("{name}()"),
            name,
            is_public: false,
            is_constructor: false,
            has_body: false,
            params: 0,
            body_lines: 1,
            decision_points: 0,
            max_block_depth: 0,
            invocation_count: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeDecl {
    pub name: String,
    pub kind: TypeKind,
    pub is_abstract: bool,
    pub fields: Vec<FieldDecl>,
    pub methods: Vec<MethodDecl>,
    pub referenced_types: BTreeSet<TypeRef>,
    pub source_lines: u32,
    pub location: Location,
}

impl TypeDecl {
    pub fn new(name: impl Into<String>, kind: TypeKind) -> Self {
        Self {
            name: name.into(),
            kind,
            is_abstract: matches!(kind, TypeKind::Interface | TypeKind::Annotation),
            fields: Vec::new(),
            methods: Vec::new(),
            referenced_types: BTreeSet::new(),
            source_lines: 1,
            location: Location::default(),
        }
    }

    /// Counts toward NAC and abstractness.
    pub fn counts_as_abstract(&self) -> bool {
        self.is_abstract || matches!(self.kind, TypeKind::Interface | TypeKind::Annotation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamespaceDecl {
    pub name: String,
    pub types: Vec<TypeDecl>,
}

impl NamespaceDecl {
    pub fn label(&self) -> &str {
        namespace_label(&self.name)
    }

    pub fn get(&self, simple_name: &str) -> Option<&TypeDecl> {
        self.types.iter().find(|t| t.name == simple_name)
    }
}

pub fn namespace_label(name: &str) -> &str {
    if name.is_empty() {
        DEFAULT_NAMESPACE_LABEL
    } else {
        name
    }
}

/// Joins a namespace and a simple type name into a fully-qualified name.
pub fn qualify(namespace: &str, simple_name: &str) -> String {
    if namespace.is_empty() {
        simple_name.to_string()
    } else {
        format!("{namespace}.{simple_name}")
    }
}

/// Identifies one type within a model by position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TypeId {
    pub namespace: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SourceModel {
    pub project_name: String,
    /// Namespaces in insertion order; use the iteration helpers for the
    /// deterministic (name-sorted) view.
    pub namespaces: Vec<NamespaceDecl>,
    pub external_refs: BTreeSet<String>,
}

impl SourceModel {
    pub fn new(project_name: impl Into<String>) -> Self {
        Self {
            project_name: project_name.into(),
            ..Self::default()
        }
    }

    /// Inserts `decl` into namespace `ns`, creating the namespace on demand.
    pub fn add_type(&mut self, ns: &str, decl: TypeDecl) -> Result<(), ModelError> {
        let idx = match self.namespaces.iter().position(|n| n.name == ns) {
            Some(idx) => idx,
            None => {
                self.namespaces.push(NamespaceDecl {
                    name: ns.to_string(),
                    types: Vec::new(),
                });
                self.namespaces.len() - 1
            }
        };
        let namespace = &mut self.namespaces[idx];
        if let Some(existing) = namespace.get(&decl.name) {
            return Err(ModelError::DuplicateType {
                name: qualify(ns, &decl.name),
                first: existing.location.clone(),
                second: decl.location,
            });
        }
        namespace.types.push(decl);
        Ok(())
    }

    /// Builder-style wrapper around [`SourceModel::add_type`].
    pub fn with_type(mut self, ns: &str, decl: TypeDecl) -> Result<Self, ModelError> {
        self.add_type(ns, decl)?;
        Ok(self)
    }

    pub fn namespace(&self, name: &str) -> Option<&NamespaceDecl> {
        self.namespaces.iter().find(|n| n.name == name)
    }

    /// Namespaces sorted by name.
    pub fn sorted_namespaces(&self) -> Vec<&NamespaceDecl> {
        let mut out: Vec<_> = self.namespaces.iter().collect();
        out.sort_by(|a, b| a.name.cmp(&b.name));
        out
    }

    /// Every type with its namespace name, ordered by namespace then type name.
    pub fn internal_types(&self) -> Vec<(&str, &TypeDecl)> {
        self.type_ids()
            .into_iter()
            .map(|id| (self.namespaces[id.namespace].name.as_str(), self.decl(id)))
            .collect()
    }

    /// Type handles in the same deterministic order as [`internal_types`](Self::internal_types).
    pub fn type_ids(&self) -> Vec<TypeId> {
        let mut ns_order: Vec<usize> = (0..self.namespaces.len()).collect();
        ns_order.sort_by(|&a, &b| self.namespaces[a].name.cmp(&self.namespaces[b].name));
        let mut out = Vec::new();
        for ns in ns_order {
            let types = &self.namespaces[ns].types;
            let mut order: Vec<usize> = (0..types.len()).collect();
            order.sort_by(|&a, &b| types[a].name.cmp(&types[b].name));
            out.extend(order.into_iter().map(|index| TypeId { namespace: ns, index }));
        }
        out
    }

    pub fn decl(&self, id: TypeId) -> &TypeDecl {
        &self.namespaces[id.namespace].types[id.index]
    }

    pub fn decl_mut(&mut self, id: TypeId) -> &mut TypeDecl {
        &mut self.namespaces[id.namespace].types[id.index]
    }

    pub fn fqn(&self, id: TypeId) -> String {
        qualify(&self.namespaces[id.namespace].name, &self.decl(id).name)
    }

    /// Looks up a type by fully-qualified name.
    pub fn lookup(&self, fqn: &str) -> Option<(&str, &TypeDecl)> {
        self.namespaces.iter().find_map(|ns| {
            let simple = if ns.name.is_empty() {
                fqn
            } else {
                fqn.strip_prefix(ns.name.as_str())?.strip_prefix('.')?
            };
            ns.get(simple).map(|t| (ns.name.as_str(), t))
        })
    }

    pub fn type_count(&self) -> usize {
        self.namespaces.iter().map(|n| n.types.len()).sum()
    }

    /// Checks the structural invariants: unique namespace names, unique type
    /// names per namespace, internal references pointing at existing types.
    pub fn validate(&self) -> Result<(), ModelError> {
        let mut seen = BTreeSet::new();
        for ns in &self.namespaces {
            if !seen.insert(ns.name.as_str()) {
                return Err(ModelError::DuplicateNamespace(ns.name.clone()));
            }
            let mut names = BTreeSet::new();
            for t in &ns.types {
                if !names.insert(t.name.as_str()) {
                    return Err(ModelError::DuplicateType {
                        name: qualify(&ns.name, &t.name),
                        first: Location::default(),
                        second: t.location.clone(),
                    });
                }
                for r in &t.referenced_types {
                    if let Resolution::Internal(target) = &r.resolution {
                        if self.lookup(target).is_none() {
                            return Err(ModelError::DanglingReference {
                                from: qualify(&ns.name, &t.name),
                                to: target.clone(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
