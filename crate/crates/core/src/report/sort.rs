use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::deps::{NamespaceCoupling, TypeCoupling};
use crate::error::ConfigError;
use crate::metrics::{MethodMetrics, NamespaceMetrics, TypeMetrics};

use super::Context;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Asc,
    Desc,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SortKey<'a> {
    Num(f64),
    Text(&'a str),
}

impl SortKey<'_> {
    fn compare(&self, other: &Self) -> Ordering {
        match (self, other) {
            (SortKey::Num(a), SortKey::Num(b)) => a.total_cmp(b),
            (SortKey::Text(a), SortKey::Text(b)) => a.cmp(b),
            (SortKey::Num(_), SortKey::Text(_)) => Ordering::Less,
            (SortKey::Text(_), SortKey::Num(_)) => Ordering::Greater,
        }
    }
}

/// A sortable report row.
pub trait Row {
    const CONTEXT: Context;
    const COLUMNS: &'static [&'static str];
    const DEFAULT_ORDER: &'static [(&'static str, Order)];

    fn key(&self, column: &str) -> Option<SortKey<'_>>;

    /// Element name used for the final ascending tie-break.
    fn name(&self) -> String;
}

/// Custom key chains per context, e.g. `types=nom:desc,sloc`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SortSpec {
    chains: BTreeMap<Context, Vec<(String, Order)>>,
}

impl SortSpec {
    pub fn get(&self, context: Context) -> Option<&[(String, Order)]> {
        self.chains.get(&context).map(Vec::as_slice)
    }

    pub fn set(&mut self, context: Context, chain: Vec<(String, Order)>) {
        self.chains.insert(context, chain);
    }

    /// Parses one `context=col[:asc|desc],...` entry into the spec.
    /// Columns are checked when the spec is applied.
    pub fn parse_entry(&mut self, text: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError::SortSpec(text.to_string());
        let (context, columns) = text.split_once('=').ok_or_else(bad)?;
        let context: Context = context.trim().parse().map_err(|_| bad())?;
        let mut chain = Vec::new();
        for part in columns.split(',') {
            let (col, dir) = match part.split_once(':') {
                Some((c, d)) => (c.trim(), d.trim()),
                None => (part.trim(), "desc"),
            };
            let order = match dir {
                "asc" => Order::Asc,
                "desc" => Order::Desc,
                _ => return Err(bad()),
            };
            if col.is_empty() {
                return Err(bad());
            }
            chain.push((col.to_string(), order));
        }
        self.set(context, chain);
        Ok(())
    }
}

/// Sorts rows by `chain` (or the context default), then by name ascending.
pub fn sort_context<R: Row>(rows: &mut [R], chain: Option<&[(String, Order)]>) -> Result<(), ConfigError> {
    let chain: Vec<(&str, Order)> = match chain {
        Some(c) => c.iter().map(|(col, o)| (col.as_str(), *o)).collect(),
        None => R::DEFAULT_ORDER.to_vec(),
    };
    if let Some((col, _)) = chain.iter().find(|(col, _)| !R::COLUMNS.contains(col)) {
        return Err(ConfigError::UnknownColumn {
            context: R::CONTEXT.to_string(),
            column: col.to_string(),
        });
    }
    rows.sort_by_cached_key(|r| r.name());
    rows.sort_by(|a, b| {
        for (col, order) in &chain {
            let ka = a.key(col).expect("validated column");
            let kb = b.key(col).expect("validated column");
            let ord = match order {
                Order::Asc => ka.compare(&kb),
                Order::Desc => kb.compare(&ka),
            };
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    });
    Ok(())
}

/// The first `min(n, len)` rows.
pub fn take_top<R>(rows: &[R], n: usize) -> &[R] {
    &rows[..n.min(rows.len())]
}

use Order::Desc;

impl Row for TypeMetrics {
    const CONTEXT: Context = Context::Types;
    const COLUMNS: &'static [&'static str] = &[
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
    ];
    const DEFAULT_ORDER: &'static [(&'static str, Order)] = &[("sloc", Desc), ("wmc", Desc), ("nom", Desc)];

    fn key(&self, column: &str) -> Option<SortKey<'_>> {
        let n = |v: u32| Some(SortKey::Num(v as f64));
        match column {
            "namespace" => Some(SortKey::Text(&self.namespace)),
            "type" => Some(SortKey::Text(&self.type_name)),
            "sloc" => n(self.sloc),
            "nom" => n(self.nom),
            "npm" => n(self.npm),
            "wmc" => n(self.wmc),
            "dep" => n(self.dep),
            "i_dep" => n(self.i_dep),
            "fan_in" => n(self.fan_in),
            "fan_out" => n(self.fan_out),
            "noa" => n(self.noa),
            _ => None,
        }
    }

    fn name(&self) -> String {
        format!("{}.{}", self.namespace, self.type_name)
    }
}

impl Row for MethodMetrics {
    const CONTEXT: Context = Context::Methods;
    const COLUMNS: &'static [&'static str] = &["namespace", "type", "method", "mloc", "cyclo", "calls", "nbd", "param"];
    const DEFAULT_ORDER: &'static [(&'static str, Order)] =
        &[("cyclo", Desc), ("nbd", Desc), ("mloc", Desc), ("calls", Desc)];

    fn key(&self, column: &str) -> Option<SortKey<'_>> {
        let n = |v: u32| Some(SortKey::Num(v as f64));
        match column {
            "namespace" => Some(SortKey::Text(&self.namespace)),
            "type" => Some(SortKey::Text(&self.type_name)),
            "method" => Some(SortKey::Text(&self.method)),
            "mloc" => n(self.mloc),
            "cyclo" => n(self.cyclo),
            "calls" => n(self.calls),
            "nbd" => n(self.nbd),
            "param" => n(self.param),
            _ => None,
        }
    }

    fn name(&self) -> String {
        format!("{}.{}.{}", self.namespace, self.type_name, self.method)
    }
}

impl Row for NamespaceMetrics {
    const CONTEXT: Context = Context::Namespaces;
    const COLUMNS: &'static [&'static str] = &["namespace", "noc", "nac"];
    const DEFAULT_ORDER: &'static [(&'static str, Order)] = &[("noc", Desc)];

    fn key(&self, column: &str) -> Option<SortKey<'_>> {
        match column {
            "namespace" => Some(SortKey::Text(&self.namespace)),
            "noc" => Some(SortKey::Num(self.noc as f64)),
            "nac" => Some(SortKey::Num(self.nac as f64)),
            _ => None,
        }
    }

    fn name(&self) -> String {
        self.namespace.clone()
    }
}

impl Row for NamespaceCoupling {
    const CONTEXT: Context = Context::Coupling;
    const COLUMNS: &'static [&'static str] = &["namespace", "ca", "ce", "instability", "abstractness", "distance"];
    const DEFAULT_ORDER: &'static [(&'static str, Order)] = &[("distance", Desc), ("ce", Desc)];

    fn key(&self, column: &str) -> Option<SortKey<'_>> {
        match column {
            "namespace" => Some(SortKey::Text(&self.namespace)),
            "ca" => Some(SortKey::Num(self.ca as f64)),
            "ce" => Some(SortKey::Num(self.ce as f64)),
            "instability" => Some(SortKey::Num(self.instability)),
            "abstractness" => Some(SortKey::Num(self.abstractness)),
            "distance" => Some(SortKey::Num(self.distance)),
            _ => None,
        }
    }

    fn name(&self) -> String {
        self.namespace.clone()
    }
}

impl Row for TypeCoupling {
    const CONTEXT: Context = Context::TypeCoupling;
    const COLUMNS: &'static [&'static str] = &["namespace", "type", "dep", "i_dep", "fan_in", "fan_out"];
    const DEFAULT_ORDER: &'static [(&'static str, Order)] = &[("i_dep", Desc), ("fan_in", Desc)];

    fn key(&self, column: &str) -> Option<SortKey<'_>> {
        let n = |v: u32| Some(SortKey::Num(v as f64));
        match column {
            "namespace" => Some(SortKey::Text(&self.namespace)),
            "type" => Some(SortKey::Text(&self.type_name)),
            "dep" => n(self.dep),
            "i_dep" => n(self.i_dep),
            "fan_in" => n(self.fan_in),
            "fan_out" => n(self.fan_out),
            _ => None,
        }
    }

    fn name(&self) -> String {
        format!("{}.{}", self.namespace, self.type_name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(name: &str, sloc: u32, wmc: u32) -> TypeMetrics {
        TypeMetrics {
            namespace: "p".into(),
            type_name: name.into(),
            sloc,
            nom: 1,
            npm: 1,
            wmc,
            dep: 0,
            i_dep: 0,
            fan_in: 0,
            fan_out: 0,
            noa: 0,
        }
    }

    fn names(rows: &[TypeMetrics]) -> Vec<&str> {
        rows.iter().map(|r| r.type_name.as_str()).collect()
    }

    #[test]
    fn default_type_chain() {
        let mut rows = vec![ty("A", 10, 2), ty("B", 10, 5), ty("C", 20, 1)];
        sort_context(&mut rows, None).unwrap();
        assert_eq!(names(&rows), ["C", "B", "A"]);
    }

    #[test]
    fn ties_fall_back_to_name() {
        let mut rows = vec![ty("Z", 5, 5), ty("M", 5, 5), ty("A", 5, 5)];
        sort_context(&mut rows, None).unwrap();
        assert_eq!(names(&rows), ["A", "M", "Z"]);
        let mut empty: Vec<TypeMetrics> = Vec::new();
        sort_context(&mut empty, None).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn custom_chain_and_unknown_column() {
        let mut spec = SortSpec::default();
        spec.parse_entry("types=wmc:asc").unwrap();
        let mut rows = vec![ty("A", 10, 2), ty("B", 10, 5), ty("C", 20, 1)];
        sort_context(&mut rows, spec.get(Context::Types)).unwrap();
        assert_eq!(names(&rows), ["C", "A", "B"]);

        spec.parse_entry("types=bogus").unwrap();
        assert!(matches!(
            sort_context(&mut rows, spec.get(Context::Types)),
            Err(ConfigError::UnknownColumn { .. })
        ));
        assert!(spec.parse_entry("types").is_err());
        assert!(spec.parse_entry("nowhere=sloc").is_err());
        assert!(spec.parse_entry("types=sloc:sideways").is_err());
    }

    #[test]
    fn top_bounds() {
        let rows = [1, 2, 3];
        assert!(take_top(&rows, 0).is_empty());
        assert_eq!(take_top(&rows, 2), &[1, 2]);
        assert_eq!(take_top(&rows, 10), &rows);
    }

    #[test]
    fn columns_cover_keys() {
        let t = ty("A", 1, 1);
        for c in TypeMetrics::COLUMNS {
            assert!(t.key(c).is_some(), "{c}");
        }
    }
}
