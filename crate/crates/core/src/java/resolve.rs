//! Classpath-free name resolution.
//!
//! A simple name used by a type in namespace `P` resolves to a project
//! type when, in order:
//! 1. a single-type import names a project type with that simple name,
//! 2. `P` declares a type with that name,
//! 3. exactly one on-demand import targets a project namespace that
//!    declares it.
//!
//! `java.lang` names are external unless rule 1 or 2 applies. Two
//! matching on-demand imports leave the reference unresolved.
//! Everything else is external under its best-known name.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::parse::{CompilationUnit, Import};
use crate::error::Diagnostic;
use crate::model::{qualify, Resolution, SourceModel, TypeRef};

const JAVA_LANG: &[&str] = &[
    "AbstractMethodError",
    "Appendable",
    "ArithmeticException",
    "ArrayIndexOutOfBoundsException",
    "ArrayStoreException",
    "AssertionError",
    "AutoCloseable",
    "Boolean",
    "BootstrapMethodError",
    "Byte",
    "CharSequence",
    "Character",
    "Class",
    "ClassCastException",
    "ClassCircularityError",
    "ClassFormatError",
    "ClassLoader",
    "ClassNotFoundException",
    "ClassValue",
    "CloneNotSupportedException",
    "Cloneable",
    "Comparable",
    "Deprecated",
    "Double",
    "Enum",
    "EnumConstantNotPresentException",
    "Error",
    "Exception",
    "ExceptionInInitializerError",
    "Float",
    "FunctionalInterface",
    "IllegalAccessError",
    "IllegalAccessException",
    "IllegalArgumentException",
    "IllegalCallerException",
    "IllegalMonitorStateException",
    "IllegalStateException",
    "IllegalThreadStateException",
    "IncompatibleClassChangeError",
    "IndexOutOfBoundsException",
    "InheritableThreadLocal",
    "InstantiationError",
    "InstantiationException",
    "Integer",
    "InternalError",
    "InterruptedException",
    "Iterable",
    "LinkageError",
    "Long",
    "Math",
    "Module",
    "ModuleLayer",
    "NegativeArraySizeException",
    "NoClassDefFoundError",
    "NoSuchFieldError",
    "NoSuchFieldException",
    "NoSuchMethodError",
    "NoSuchMethodException",
    "NullPointerException",
    "Number",
    "NumberFormatException",
    "Object",
    "OutOfMemoryError",
    "Override",
    "Package",
    "Process",
    "ProcessBuilder",
    "ProcessHandle",
    "Readable",
    "Record",
    "ReflectiveOperationException",
    "Runnable",
    "Runtime",
    "RuntimeException",
    "RuntimePermission",
    "SafeVarargs",
    "SecurityException",
    "SecurityManager",
    "Short",
    "StackOverflowError",
    "StackTraceElement",
    "StackWalker",
    "StrictMath",
    "String",
    "StringBuffer",
    "StringBuilder",
    "StringIndexOutOfBoundsException",
    "SuppressWarnings",
    "System",
    "Thread",
    "ThreadDeath",
    "ThreadGroup",
    "ThreadLocal",
    "Throwable",
    "TypeNotPresentException",
    "UnknownError",
    "UnsatisfiedLinkError",
    "UnsupportedClassVersionError",
    "UnsupportedOperationException",
    "VerifyError",
    "VirtualMachineError",
    "Void",
];

const PRIMITIVES: &[&str] = &[
    "boolean", "byte", "char", "double", "float", "int", "long", "short", "void",
];

pub fn is_java_lang(simple: &str) -> bool {
    JAVA_LANG.binary_search(&simple).is_ok()
}

struct Index {
    /// namespace -> simple names declared there
    by_namespace: BTreeMap<String, BTreeSet<String>>,
    fqns: BTreeSet<String>,
}

impl Index {
    fn new(model: &SourceModel) -> Self {
        let mut by_namespace: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        let mut fqns = BTreeSet::new();
        for ns in &model.namespaces {
            let names = by_namespace.entry(ns.name.clone()).or_default();
            for t in &ns.types {
                names.insert(t.name.clone());
                fqns.insert(qualify(&ns.name, &t.name));
            }
        }
        Self { by_namespace, fqns }
    }

    fn declares(&self, ns: &str, simple: &str) -> bool {
        self.by_namespace.get(ns).is_some_and(|s| s.contains(simple))
    }

    /// Longest dotted prefix of `name` that is a project type.
    fn project_prefix(&self, name: &str) -> Option<String> {
        let mut best = None;
        for (i, _) in name.match_indices('.') {
            if self.fqns.contains(&name[..i]) {
                best = Some(&name[..i]);
            }
        }
        if self.fqns.contains(name) {
            best = Some(name);
        }
        best.map(str::to_string)
    }
}

struct Scope<'a> {
    namespace: &'a str,
    imports: &'a [Import],
}

enum Ambiguity {
    None,
    Wildcard(Vec<String>),
}

fn resolve_simple(index: &Index, scope: &Scope, simple: &str) -> (Resolution, Ambiguity) {
    for imp in scope.imports {
        if let Import::Single(target) = imp {
            if target.rsplit('.').next() == Some(simple) {
                return match index.project_prefix(target) {
                    Some(fqn) => (Resolution::Internal(fqn), Ambiguity::None),
                    None => (Resolution::External(target.clone()), Ambiguity::None),
                };
            }
        }
    }
    if index.declares(scope.namespace, simple) {
        return (Resolution::Internal(qualify(scope.namespace, simple)), Ambiguity::None);
    }
    if is_java_lang(simple) {
        return (Resolution::External(format!("java.lang.{simple}")), Ambiguity::None);
    }
    let matches: BTreeSet<String> = scope
        .imports
        .iter()
        .filter_map(|imp| match imp {
            Import::OnDemand(pkg) if index.declares(pkg, simple) => Some(qualify(pkg, simple)),
            _ => None,
        })
        .collect();
    match matches.len() {
        0 => (Resolution::External(simple.to_string()), Ambiguity::None),
        1 => (
            Resolution::Internal(matches.into_iter().next().unwrap()),
            Ambiguity::None,
        ),
        _ => (
            Resolution::Unresolved,
            Ambiguity::Wildcard(matches.into_iter().collect()),
        ),
    }
}

fn resolve_raw(index: &Index, scope: &Scope, raw: &str) -> (Resolution, Ambiguity) {
    if PRIMITIVES.contains(&raw) {
        return (Resolution::Unresolved, Ambiguity::None);
    }
    let Some((head, rest)) = raw.split_once('.') else {
        return resolve_simple(index, scope, raw);
    };
    if let Some(fqn) = index.project_prefix(raw) {
        return (Resolution::Internal(fqn), Ambiguity::None);
    }
    if head.starts_with(|c: char| c.is_lowercase()) {
        return (Resolution::External(raw.to_string()), Ambiguity::None);
    }
    match resolve_simple(index, scope, head) {
        (Resolution::External(base), a) => (Resolution::External(format!("{base}.{rest}")), a),
        other => other,
    }
}

/// Resolves every raw type name in the model against the project's own
/// declarations and each unit's imports. Self references are dropped.
pub fn resolve_references(mut model: SourceModel, units: &[CompilationUnit]) -> (SourceModel, Vec<Diagnostic>) {
    let index = Index::new(&model);
    let imports_by_file: HashMap<&str, &[Import]> = units
        .iter()
        .map(|u| (u.file_path.as_str(), u.imports.as_slice()))
        .collect();
    let mut diagnostics = Vec::new();
    let mut external = BTreeSet::new();

    for id in model.type_ids() {
        let ns_name = model.namespaces[id.namespace].name.clone();
        let self_fqn = model.fqn(id);
        let decl = model.decl_mut(id);
        let imports = imports_by_file.get(decl.location.file.as_str()).copied().unwrap_or(&[]);
        let scope = Scope {
            namespace: &ns_name,
            imports,
        };

        let mut resolved = BTreeSet::new();
        for r in &decl.referenced_types {
            let (resolution, ambiguity) = resolve_raw(&index, &scope, &r.raw_name);
            if let Ambiguity::Wildcard(candidates) = ambiguity {
                diagnostics.push(Diagnostic::new(
                    decl.location.file.clone(),
                    decl.location.line,
                    format!(
                        "ambiguous type `{}` in `{}`: matches {}",
                        r.raw_name,
                        self_fqn,
                        candidates.join(", ")
                    ),
                ));
            }
            match &resolution {
                Resolution::Internal(fqn) if *fqn == self_fqn => continue,
                Resolution::External(name) => {
                    external.insert(name.clone());
                }
                _ => {}
            }
            resolved.insert(TypeRef {
                raw_name: r.raw_name.clone(),
                resolution,
            });
        }
        decl.referenced_types = resolved;
        for f in &mut decl.fields {
            f.declared_type.resolution = resolve_raw(&index, &scope, &f.declared_type.raw_name).0;
        }
    }
    model.external_refs = external;
    (model, diagnostics)
}
