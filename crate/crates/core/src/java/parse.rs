//! Syntax parsing and visitor-based extraction of one compilation unit.
//!
//! Each top-level type becomes one [`TypeDecl`]. Nested, local and
//! anonymous classes are folded into it: their fields, methods and type
//! references are attributed to the top-level type, and methods of nested
//! classes get a `Nested.` prefix in their signature.
//!
//! Per-method counting rules:
//! - decision points: `if`, `for`, for-each, `while`, `do`, non-default
//!   `case` labels, `catch`, `?:`, `&&`, `||`. Bodies of nested classes
//!   are excluded since their methods are counted separately.
//! - block depth: the method body is depth 1. The bodies of control
//!   structures, `try`/`catch`/`finally`, `synchronized`, anonymous class
//!   bodies and block lambdas sit one level deeper than their parent,
//!   braced or not. `else if` stays at the level of its `if`.
//! - invocations: one per method invocation expression; `new`, `this(..)`
//!   and `super(..)` are not invocations.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::rc::Rc;

use tree_sitter::{Node, Parser};

use super::sloc::LineFlags;
use crate::error::Diagnostic;
use crate::model::{FieldDecl, Location, MethodDecl, TypeDecl, TypeKind, TypeRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Import {
    /// `import a.b.C;`
    Single(String),
    /// `import a.b.*;` holding the package (or enclosing type) name.
    OnDemand(String),
    /// `import static ...;` which never imports a type name.
    Static(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompilationUnit {
    pub file_path: String,
    pub package_name: String,
    pub imports: Vec<Import>,
    pub declared_types: Vec<TypeDecl>,
}

#[derive(Debug, Clone, Default)]
pub struct ParsedUnit {
    pub unit: CompilationUnit,
    pub diagnostics: Vec<Diagnostic>,
}

thread_local! {
    static PARSER: RefCell<Option<Parser>> = const { RefCell::new(None) };
}

fn with_parser<R>(f: impl FnOnce(&mut Parser) -> R) -> R {
    PARSER.with(|cell| {
        let mut slot = cell.borrow_mut();
        let parser = slot.get_or_insert_with(|| {
            let mut p = Parser::new();
            p.set_language(&tree_sitter_java::LANGUAGE.into())
                .expect("java grammar is compatible with the linked tree-sitter");
            p
        });
        f(parser)
    })
}

pub fn parse_unit(file_path: &str, source_text: &str) -> ParsedUnit {
    let mut out = ParsedUnit {
        unit: CompilationUnit {
            file_path: file_path.to_string(),
            ..CompilationUnit::default()
        },
        diagnostics: Vec::new(),
    };
    let Some(tree) = with_parser(|p| p.parse(source_text, None)) else {
        out.diagnostics
            .push(Diagnostic::new(file_path, 1, "parser produced no syntax tree"));
        return out;
    };
    let root = tree.root_node();
    if root.has_error() {
        let line = first_error_line(root).unwrap_or(1);
        out.diagnostics
            .push(Diagnostic::new(file_path, line, "syntax error; file skipped"));
        return out;
    }

    let src = source_text.as_bytes();
    let flags = LineFlags::scan(source_text);
    if let Some(line) = flags.unterminated_comment {
        out.diagnostics
            .push(Diagnostic::new(file_path, line, "unterminated block comment"));
    }

    let mut cursor = root.walk();
    for child in root.named_children(&mut cursor) {
        match child.kind() {
            "package_declaration" => {
                if let Some(name) = child
                    .named_children(&mut child.walk())
                    .find(|n| matches!(n.kind(), "identifier" | "scoped_identifier"))
                {
                    out.unit.package_name = text(name, src).to_string();
                }
            }
            "import_declaration" => out.unit.imports.push(import_of(child, src)),
            kind if type_kind(kind).is_some() => {
                let decl = TypeExtractor::new(file_path, src, &flags).extract(child);
                out.unit.declared_types.push(decl);
            }
            _ => {}
        }
    }
    out
}

fn first_error_line(root: Node) -> Option<usize> {
    let mut stack = vec![root];
    let mut best: Option<usize> = None;
    while let Some(node) = stack.pop() {
        if node.is_error() || node.is_missing() {
            let line = node.start_position().row + 1;
            best = Some(best.map_or(line, |b| b.min(line)));
            continue;
        }
        if node.has_error() {
            let mut c = node.walk();
            stack.extend(node.children(&mut c));
        }
    }
    best
}

fn text<'a>(node: Node, src: &'a [u8]) -> &'a str {
    node.utf8_text(src).unwrap_or("")
}

fn import_of(node: Node, src: &[u8]) -> Import {
    let mut cursor = node.walk();
    let mut is_static = false;
    let mut wildcard = false;
    let mut name = String::new();
    for child in node.children(&mut cursor) {
        match child.kind() {
            "static" => is_static = true,
            "asterisk" => wildcard = true,
            "identifier" | "scoped_identifier" => name = text(child, src).to_string(),
            _ => {}
        }
    }
    if is_static {
        Import::Static(name)
    } else if wildcard {
        Import::OnDemand(name)
    } else {
        Import::Single(name)
    }
}

fn type_kind(kind: &str) -> Option<TypeKind> {
    Some(match kind {
        "class_declaration" => TypeKind::Class,
        "interface_declaration" => TypeKind::Interface,
        "enum_declaration" => TypeKind::Enum,
        "annotation_type_declaration" => TypeKind::Annotation,
        "record_declaration" => TypeKind::Record,
        _ => return None,
    })
}

fn has_modifier(node: Node, modifier: &str) -> bool {
    let mut cursor = node.walk();
    let found = node.children(&mut cursor).filter(|c| c.kind() == "modifiers").any(|m| {
        let mut mc = m.walk();
        let hit = m.children(&mut mc).any(|k| k.kind() == modifier);
        hit
    });
    found
}

fn lines_of(node: Node) -> (usize, usize) {
    (node.start_position().row + 1, node.end_position().row + 1)
}

fn collapse_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn is_method_kind(kind: &str) -> bool {
    matches!(
        kind,
        "method_declaration" | "constructor_declaration" | "compact_constructor_declaration"
    )
}

/// Anonymous class body attached to a `new` expression.
fn is_anonymous_body(node: Node) -> bool {
    node.kind() == "class_body" && node.parent().is_some_and(|p| p.kind() == "object_creation_expression")
}

/// Walks one top-level type declaration.
struct TypeExtractor<'a> {
    file: &'a str,
    src: &'a [u8],
    flags: &'a LineFlags,
    fields: Vec<FieldDecl>,
    methods: Vec<MethodDecl>,
    raw_refs: BTreeSet<String>,
    qualifier_candidates: BTreeSet<String>,
    declared_names: BTreeSet<String>,
    type_params: BTreeSet<String>,
    nested_names: BTreeSet<String>,
    anon_counter: usize,
}

impl<'a> TypeExtractor<'a> {
    fn new(file: &'a str, src: &'a [u8], flags: &'a LineFlags) -> Self {
        Self {
            file,
            src,
            flags,
            fields: Vec::new(),
            methods: Vec::new(),
            raw_refs: BTreeSet::new(),
            qualifier_candidates: BTreeSet::new(),
            declared_names: BTreeSet::new(),
            type_params: BTreeSet::new(),
            nested_names: BTreeSet::new(),
            anon_counter: 0,
        }
    }

    fn extract(mut self, decl: Node<'a>) -> TypeDecl {
        let kind = type_kind(decl.kind()).expect("caller checked the node kind");
        let name = decl
            .child_by_field_name("name")
            .map(|n| text(n, self.src).to_string())
            .unwrap_or_default();
        let (first, last) = lines_of(decl);
        let is_abstract = matches!(kind, TypeKind::Interface | TypeKind::Annotation)
            || (kind == TypeKind::Class && has_modifier(decl, "abstract"));

        self.walk(decl);

        let mut t = TypeDecl::new(name.clone(), kind);
        t.is_abstract = is_abstract;
        t.source_lines = self.flags.count_span(first, last) as u32;
        t.location = Location::new(self.file, first);
        t.fields = std::mem::take(&mut self.fields);
        t.methods = std::mem::take(&mut self.methods);
        dedupe_signatures(&mut t.methods);

        let candidates = std::mem::take(&mut self.qualifier_candidates);
        for q in candidates {
            if !self.declared_names.contains(&q) && q.starts_with(|c: char| c.is_ascii_uppercase()) {
                self.raw_refs.insert(q);
            }
        }
        for raw in &self.raw_refs {
            let head = raw.split('.').next().unwrap_or(raw);
            if raw == "var" || self.type_params.contains(raw) {
                continue;
            }
            // own name or a folded nested type: self reference
            if head == name || self.nested_names.contains(head) {
                continue;
            }
            t.referenced_types.insert(TypeRef::unresolved(raw.clone()));
        }
        t
    }

    /// Generic traversal collecting members, type references and names.
    fn walk(&mut self, root: Node<'a>) {
        let mut stack: Vec<(Node<'a>, Rc<str>)> = vec![(root, Rc::from(""))];
        let mut top = true;
        while let Some((node, prefix)) = stack.pop() {
            let mut prefix = prefix;
            let kind = node.kind();

            if type_kind(kind).is_some() {
                if let Some(n) = node.child_by_field_name("name") {
                    let n = text(n, self.src);
                    if !top {
                        self.nested_names.insert(n.to_string());
                        prefix = Rc::from(format!("{prefix}{n}."));
                    }
                }
                top = false;
                if kind == "record_declaration" {
                    self.record_components(node);
                }
            } else if is_anonymous_body(node) {
                self.anon_counter += 1;
                prefix = Rc::from(format!("{prefix}<anon{}>.", self.anon_counter));
            } else if kind == "enum_constant" {
                if let Some(n) = node.child_by_field_name("name") {
                    let n = text(n, self.src);
                    self.declared_names.insert(n.to_string());
                    if node.child_by_field_name("body").is_some() {
                        prefix = Rc::from(format!("{prefix}{n}."));
                    }
                }
            }

            match kind {
                "superclass" | "super_interfaces" | "extends_interfaces" => self.collect_types(node),
                "type_parameter" => {
                    let mut c = node.walk();
                    let id = node.named_children(&mut c).find(|n| n.kind() == "type_identifier");
                    if let Some(id) = id {
                        self.type_params.insert(text(id, self.src).to_string());
                    }
                }
                "field_declaration" | "constant_declaration" => self.field_declaration(node),
                "local_variable_declaration"
                | "formal_parameter"
                | "resource"
                | "enhanced_for_statement"
                | "object_creation_expression" => {
                    if let Some(ty) = node.child_by_field_name("type") {
                        self.collect_types(ty);
                    }
                }
                "spread_parameter" | "catch_formal_parameter" => {
                    let mut c = node.walk();
                    for child in node.named_children(&mut c) {
                        if !matches!(child.kind(), "modifiers" | "variable_declarator" | "identifier") {
                            self.collect_types(child);
                        }
                    }
                }
                "method_declaration" => {
                    if let Some(ty) = node.child_by_field_name("type") {
                        self.collect_types(ty);
                    }
                }
                "method_invocation" | "field_access" => {
                    if let Some(obj) = node.child_by_field_name("object") {
                        if obj.kind() == "identifier" {
                            self.qualifier_candidates.insert(text(obj, self.src).to_string());
                        }
                    }
                }
                _ => {}
            }
            self.record_declared_name(node);
            if is_method_kind(kind) {
                let in_interface = node
                    .parent()
                    .is_some_and(|p| matches!(p.kind(), "interface_body" | "annotation_type_body"));
                let m = MethodAnalyzer::new(self.src, self.flags).analyze(node, &prefix, in_interface);
                self.methods.push(m);
            }

            let mut c = node.walk();
            let children: Vec<_> = node.named_children(&mut c).collect();
            for child in children.into_iter().rev() {
                stack.push((child, prefix.clone()));
            }
        }
    }

    fn record_declared_name(&mut self, node: Node) {
        let name = match node.kind() {
            "variable_declarator"
            | "formal_parameter"
            | "catch_formal_parameter"
            | "resource"
            | "enhanced_for_statement" => node.child_by_field_name("name"),
            "lambda_expression" => node
                .child_by_field_name("parameters")
                .filter(|p| p.kind() == "identifier"),
            "inferred_parameters" => {
                let mut c = node.walk();
                let ids: Vec<_> = node
                    .named_children(&mut c)
                    .filter(|n| n.kind() == "identifier")
                    .map(|n| text(n, self.src).to_string())
                    .collect();
                self.declared_names.extend(ids);
                None
            }
            _ => None,
        };
        if let Some(n) = name {
            self.declared_names.insert(text(n, self.src).to_string());
        }
    }

    fn field_declaration(&mut self, node: Node) {
        let Some(ty) = node.child_by_field_name("type") else {
            return;
        };
        self.collect_types(ty);
        let raw = type_head_name(ty, self.src);
        let mut c = node.walk();
        for decl in node.children_by_field_name("declarator", &mut c) {
            if let Some(n) = decl.child_by_field_name("name") {
                self.fields.push(FieldDecl {
                    name: text(n, self.src).to_string(),
                    declared_type: TypeRef::unresolved(raw.clone()),
                });
            }
        }
    }

    fn record_components(&mut self, node: Node) {
        let Some(params) = node.child_by_field_name("parameters") else {
            return;
        };
        let mut c = params.walk();
        for p in params.named_children(&mut c) {
            if p.kind() != "formal_parameter" {
                continue;
            }
            if let (Some(n), Some(ty)) = (p.child_by_field_name("name"), p.child_by_field_name("type")) {
                self.fields.push(FieldDecl {
                    name: text(n, self.src).to_string(),
                    declared_type: TypeRef::unresolved(type_head_name(ty, self.src)),
                });
            }
        }
    }

    /// Adds every class/interface name mentioned in a type expression.
    fn collect_types(&mut self, node: Node) {
        let mut stack = vec![node];
        while let Some(n) = stack.pop() {
            match n.kind() {
                "type_identifier" => {
                    self.raw_refs.insert(text(n, self.src).to_string());
                }
                "scoped_type_identifier" => {
                    self.raw_refs.insert(scoped_name(n, self.src));
                    // type arguments nested inside a qualified name
                    let mut inner = vec![n];
                    while let Some(m) = inner.pop() {
                        let mut c = m.walk();
                        for child in m.named_children(&mut c) {
                            if child.kind() == "type_arguments" {
                                stack.push(child);
                            } else {
                                inner.push(child);
                            }
                        }
                    }
                }
                "annotation" | "marker_annotation" => {}
                _ => {
                    let mut c = n.walk();
                    stack.extend(n.named_children(&mut c));
                }
            }
        }
    }
}

/// Dotted name of a qualified type, without type arguments or annotations.
fn scoped_name(node: Node, src: &[u8]) -> String {
    let mut parts = Vec::new();
    fn go(node: Node, src: &[u8], parts: &mut Vec<String>) {
        match node.kind() {
            "type_identifier" => parts.push(text(node, src).to_string()),
            "scoped_type_identifier" | "generic_type" => {
                let mut c = node.walk();
                for child in node.named_children(&mut c) {
                    go(child, src, parts);
                }
            }
            _ => {}
        }
    }
    go(node, src, &mut parts);
    parts.join(".")
}

/// The outer class name of a declared type, as written (`List` for `List<Foo>[]`).
fn type_head_name(node: Node, src: &[u8]) -> String {
    match node.kind() {
        "type_identifier" => text(node, src).to_string(),
        "scoped_type_identifier" => scoped_name(node, src),
        "generic_type" | "array_type" | "annotated_type" => {
            let mut c = node.walk();
            let first = node
                .named_children(&mut c)
                .find(|n| !matches!(n.kind(), "annotation" | "marker_annotation"));
            first.map(|n| type_head_name(n, src)).unwrap_or_default()
        }
        _ => collapse_ws(text(node, src)),
    }
}

fn dedupe_signatures(methods: &mut [MethodDecl]) {
    let mut seen = BTreeSet::new();
    for m in methods.iter_mut() {
        if !seen.insert(m.signature.clone()) {
            let mut n = 2;
            while !seen.insert(format!("{}#{n}", m.signature)) {
                n += 1;
            }
            m.signature = format!("{}#{n}", m.signature);
        }
    }
}

struct MethodAnalyzer<'a> {
    src: &'a [u8],
    flags: &'a LineFlags,
}

impl<'a> MethodAnalyzer<'a> {
    fn new(src: &'a [u8], flags: &'a LineFlags) -> Self {
        Self { src, flags }
    }

    fn analyze(&self, node: Node, prefix: &str, in_interface: bool) -> MethodDecl {
        let name = node
            .child_by_field_name("name")
            .map(|n| text(n, self.src).to_string())
            .unwrap_or_default();
        let kind = node.kind();
        let params = node.child_by_field_name("parameters");
        let mut param_texts = Vec::new();
        if let Some(ps) = params {
            let mut c = ps.walk();
            for p in ps.named_children(&mut c) {
                match p.kind() {
                    "formal_parameter" => {
                        let ty = p.child_by_field_name("type").map(|t| collapse_ws(text(t, self.src)));
                        let n = p.child_by_field_name("name").map(|t| text(t, self.src));
                        let dims = p.child_by_field_name("dimensions").map(|t| text(t, self.src));
                        param_texts.push(format!(
                            "{} {}{}",
                            ty.unwrap_or_default(),
                            n.unwrap_or_default(),
                            dims.unwrap_or_default()
                        ));
                    }
                    "spread_parameter" => {
                        let mut pc = p.walk();
                        let parts: Vec<_> = p
                            .children(&mut pc)
                            .filter(|c| !matches!(c.kind(), "modifiers" | "annotation" | "marker_annotation"))
                            .map(|c| collapse_ws(text(c, self.src)))
                            .collect();
                        param_texts.push(parts.join(" ").replace(" ...", "..."));
                    }
                    _ => {}
                }
            }
        }
        let body = node.child_by_field_name("body");
        let (first, last) = lines_of(node);
        let is_public = has_modifier(node, "public") || (in_interface && !has_modifier(node, "private"));

        let mut m = MethodDecl::new(name.clone());
        m.signature = format!("{prefix}{name}({})", param_texts.join(", "));
        m.is_public = is_public;
        m.is_constructor = kind != "method_declaration";
        m.params = param_texts.len() as u32;
        m.body_lines = self.flags.count_span(first, last) as u32;
        if let Some(body) = body {
            m.has_body = true;
            let stats = body_stats(body, self.src);
            m.decision_points = stats.decision_points;
            m.max_block_depth = stats.max_depth;
            m.invocation_count = stats.invocations;
        }
        m
    }
}

#[derive(Debug, Default)]
struct BodyStats {
    decision_points: u32,
    max_depth: u32,
    invocations: u32,
}

/// True when `child` opens a deeper nesting level under `parent`.
fn opens_level(parent: Node, child: Node, field: Option<&str>) -> bool {
    match parent.kind() {
        "if_statement" => match field {
            Some("consequence") => true,
            Some("alternative") => child.kind() != "if_statement",
            _ => false,
        },
        "for_statement"
        | "enhanced_for_statement"
        | "while_statement"
        | "do_statement"
        | "switch_expression"
        | "try_statement"
        | "try_with_resources_statement"
        | "catch_clause"
        | "synchronized_statement" => field == Some("body"),
        "finally_clause" => child.kind() == "block",
        "object_creation_expression" => child.kind() == "class_body",
        "lambda_expression" => field == Some("body") && child.kind() == "block",
        _ => false,
    }
}

fn body_stats(body: Node, src: &[u8]) -> BodyStats {
    let mut stats = BodyStats::default();
    // (node, depth, inside an anonymous class body)
    let mut stack = vec![(body, 1u32, false)];
    while let Some((node, depth, in_anon)) = stack.pop() {
        stats.max_depth = stats.max_depth.max(depth);
        let kind = node.kind();
        if !in_anon {
            match kind {
                "if_statement"
                | "for_statement"
                | "enhanced_for_statement"
                | "while_statement"
                | "do_statement"
                | "catch_clause"
                | "ternary_expression" => stats.decision_points += 1,
                "switch_label" => {
                    let mut c = node.walk();
                    let is_default = node.children(&mut c).any(|k| k.kind() == "default");
                    if !is_default {
                        stats.decision_points += 1;
                    }
                }
                "binary_expression" => {
                    if let Some(op) = node.child_by_field_name("operator") {
                        if matches!(text(op, src), "&&" | "||") {
                            stats.decision_points += 1;
                        }
                    }
                }
                "method_invocation" => stats.invocations += 1,
                _ => {}
            }
        }
        let mut c = node.walk();
        let mut pending = Vec::new();
        if c.goto_first_child() {
            loop {
                let child = c.node();
                let field = c.field_name();
                // local classes are folded separately and never nest
                if child.is_named() && type_kind(child.kind()).is_none() {
                    let deeper = opens_level(node, child, field);
                    let anon = in_anon || is_anonymous_body(child);
                    pending.push((child, if deeper { depth + 1 } else { depth }, anon));
                }
                if !c.goto_next_sibling() {
                    break;
                }
            }
        }
        stack.extend(pending.into_iter().rev());
    }
    stats
}
