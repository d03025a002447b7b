//! Analysis heuristics that combine metrics with thresholds.
//!
//! | rule | context   | predicate                                              |
//! |------|-----------|--------------------------------------------------------|
//! | H1   | namespace | `NOC >= noc_high`                                      |
//! | H2   | type      | no predicate; attaches WMC, DEP, I-DEP, NOM, NPM       |
//! | H3   | type      | `SLOC >= sloc_type_high && SLOC/max(NOM,1) >= avg_mloc_high` |
//! | H4   | type      | `SLOC >= sloc_type_high && WMC >= wmc_high && NOM <= nom_low` |
//! | H5   | method    | `NBD >= nbd_high`                                      |
//! | H6   | coupling  | `CE >= ce_high`                                        |
//!
//! H2 has no standalone finding: every H3/H4 finding carries the H2
//! metrics in [`HeuristicFinding::related`].

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::report::MetricsReport;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ThresholdConfig {
    pub noc_high: f64,
    pub sloc_type_high: f64,
    pub avg_mloc_high: f64,
    pub wmc_high: f64,
    pub nom_low: f64,
    pub nbd_high: f64,
    pub ce_high: f64,
    pub cyclo_method_high: f64,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        Self {
            noc_high: 20.0,
            sloc_type_high: 100.0,
            avg_mloc_high: 20.0,
            wmc_high: 50.0,
            nom_low: 10.0,
            nbd_high: 5.0,
            ce_high: 20.0,
            cyclo_method_high: 10.0,
        }
    }
}

impl ThresholdConfig {
    pub const KEYS: [&'static str; 8] = [
        "noc_high",
        "sloc_type_high",
        "avg_mloc_high",
        "wmc_high",
        "nom_low",
        "nbd_high",
        "ce_high",
        "cyclo_method_high",
    ];

    pub fn get(&self, key: &str) -> Option<f64> {
        Some(match key {
            "noc_high" => self.noc_high,
            "sloc_type_high" => self.sloc_type_high,
            "avg_mloc_high" => self.avg_mloc_high,
            "wmc_high" => self.wmc_high,
            "nom_low" => self.nom_low,
            "nbd_high" => self.nbd_high,
            "ce_high" => self.ce_high,
            "cyclo_method_high" => self.cyclo_method_high,
            _ => return None,
        })
    }

    pub fn set(&mut self, key: &str, value: f64) -> bool {
        let slot = match key {
            "noc_high" => &mut self.noc_high,
            "sloc_type_high" => &mut self.sloc_type_high,
            "avg_mloc_high" => &mut self.avg_mloc_high,
            "wmc_high" => &mut self.wmc_high,
            "nom_low" => &mut self.nom_low,
            "nbd_high" => &mut self.nbd_high,
            "ce_high" => &mut self.ce_high,
            "cyclo_method_high" => &mut self.cyclo_method_high,
            _ => return false,
        };
        *slot = value;
        true
    }
}

/// Loads threshold overrides and merges them onto the defaults.
///
/// `.json` files hold one object, `.toml` files a table (optionally under
/// `[thresholds]`); anything else is read as `key = value` lines with `#`
/// comments.
pub fn load_thresholds(path: Option<&Path>) -> Result<ThresholdConfig, ConfigError> {
    let Some(path) = path else {
        return Ok(ThresholdConfig::default());
    };
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let syntax = |message: String| ConfigError::Syntax {
        path: path.to_path_buf(),
        message,
    };
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let entries: Vec<(String, Option<f64>)> = match ext {
        "json" => {
            let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| syntax(e.to_string()))?;
            let obj = value
                .as_object()
                .ok_or_else(|| syntax("expected a JSON object".into()))?;
            obj.iter().map(|(k, v)| (k.clone(), v.as_f64())).collect()
        }
        "toml" => {
            let table: toml::Table = text.parse().map_err(|e: toml::de::Error| syntax(e.to_string()))?;
            let table = match table.get("thresholds") {
                Some(toml::Value::Table(t)) => t.clone(),
                _ => table,
            };
            table
                .iter()
                .map(|(k, v)| {
                    let n = match v {
                        toml::Value::Integer(i) => Some(*i as f64),
                        toml::Value::Float(f) => Some(*f),
                        _ => None,
                    };
                    (k.clone(), n)
                })
                .collect()
        }
        _ => {
            let mut entries = Vec::new();
            for (lineno, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let Some((k, v)) = line.split_once('=') else {
                    return Err(syntax(format!("line {}: expected `key = value`", lineno + 1)));
                };
                entries.push((k.trim().to_string(), v.trim().parse::<f64>().ok()));
            }
            entries
        }
    };

    let mut cfg = ThresholdConfig::default();
    let mut bad = Vec::new();
    for (key, value) in entries {
        match value {
            Some(v) if v.is_finite() && v > 0.0 && cfg.set(&key, v) => {}
            _ => bad.push(key),
        }
    }
    if bad.is_empty() {
        Ok(cfg)
    } else {
        Err(ConfigError::InvalidKeys {
            path: path.to_path_buf(),
            keys: bad,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FindingContext {
    Namespace,
    Type,
    Method,
    Coupling,
}

impl FindingContext {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Namespace => "namespace",
            Self::Type => "type",
            Self::Method => "method",
            Self::Coupling => "coupling",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    AtLeast,
    AtMost,
}

/// A metric value compared against a threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub metric: String,
    pub value: f64,
    pub threshold: f64,
    pub direction: Direction,
}

impl Evidence {
    fn at_least(metric: &str, value: f64, threshold: f64) -> Self {
        Self {
            metric: metric.to_string(),
            value,
            threshold,
            direction: Direction::AtLeast,
        }
    }

    fn at_most(metric: &str, value: f64, threshold: f64) -> Self {
        Self {
            direction: Direction::AtMost,
            ..Self::at_least(metric, value, threshold)
        }
    }

    pub fn violates(&self) -> bool {
        match self.direction {
            Direction::AtLeast => self.value >= self.threshold,
            Direction::AtMost => self.value <= self.threshold,
        }
    }
}

/// A metric shown alongside a finding without a threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelatedMetric {
    pub metric: String,
    pub value: f64,
}

fn related(pairs: &[(&str, u32)]) -> Vec<RelatedMetric> {
    pairs
        .iter()
        .map(|(m, v)| RelatedMetric {
            metric: m.to_string(),
            value: *v as f64,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicFinding {
    pub rule: RuleId,
    pub context: FindingContext,
    pub target: String,
    pub evidence: Vec<Evidence>,
    pub related: Vec<RelatedMetric>,
    pub message: String,
}

pub fn qualified_type(namespace: &str, type_name: &str) -> String {
    format!("{namespace}.{type_name}")
}

/// Applies H1..H6 to a report; the result is ordered by rule, then target.
pub fn evaluate(report: &MetricsReport, cfg: &ThresholdConfig) -> Vec<HeuristicFinding> {
    let mut out = Vec::new();

    for ns in &report.namespaces {
        if ns.noc as f64 >= cfg.noc_high {
            out.push(HeuristicFinding {
                rule: RuleId::H1,
                context: FindingContext::Namespace,
                target: ns.namespace.clone(),
                evidence: vec![Evidence::at_least("noc", ns.noc as f64, cfg.noc_high)],
                related: related(&[("nac", ns.nac)]),
                message: "namespace hosts many types; possible promiscuous package, consider splitting it".into(),
            });
        }
    }

    for t in &report.types {
        let h2 = related(&[
            ("wmc", t.wmc),
            ("dep", t.dep),
            ("i_dep", t.i_dep),
            ("nom", t.nom),
            ("npm", t.npm),
        ]);
        let sloc = t.sloc as f64;
        let big = sloc >= cfg.sloc_type_high;
        let per_method = sloc / t.nom.max(1) as f64;
        if big && per_method >= cfg.avg_mloc_high {
            out.push(HeuristicFinding {
                rule: RuleId::H3,
                context: FindingContext::Type,
                target: qualified_type(&t.namespace, &t.type_name),
                evidence: vec![
                    Evidence::at_least("sloc", sloc, cfg.sloc_type_high),
                    Evidence::at_least("sloc_per_method", per_method, cfg.avg_mloc_high),
                ],
                related: h2.clone(),
                message: "large type with few methods; its methods are probably long".into(),
            });
        }
        if big && t.wmc as f64 >= cfg.wmc_high && t.nom as f64 <= cfg.nom_low {
            out.push(HeuristicFinding {
                rule: RuleId::H4,
                context: FindingContext::Type,
                target: qualified_type(&t.namespace, &t.type_name),
                evidence: vec![
                    Evidence::at_least("sloc", sloc, cfg.sloc_type_high),
                    Evidence::at_least("wmc", t.wmc as f64, cfg.wmc_high),
                    Evidence::at_most("nom", t.nom as f64, cfg.nom_low),
                ],
                related: h2,
                message: "large, complex type concentrated in few methods; possible complex class".into(),
            });
        }
    }

    for m in &report.methods {
        if m.nbd as f64 >= cfg.nbd_high {
            let mut evidence = vec![Evidence::at_least("nbd", m.nbd as f64, cfg.nbd_high)];
            if m.cyclo as f64 >= cfg.cyclo_method_high {
                evidence.push(Evidence::at_least("cyclo", m.cyclo as f64, cfg.cyclo_method_high));
            }
            out.push(HeuristicFinding {
                rule: RuleId::H5,
                context: FindingContext::Method,
                target: format!("{}.{}", qualified_type(&m.namespace, &m.type_name), m.method),
                evidence,
                related: related(&[("cyclo", m.cyclo), ("mloc", m.mloc)]),
                message: "deeply nested blocks; the method is likely complex or long and hard to read".into(),
            });
        }
    }

    for c in &report.namespace_coupling {
        if c.ce as f64 >= cfg.ce_high {
            out.push(HeuristicFinding {
                rule: RuleId::H6,
                context: FindingContext::Coupling,
                target: c.namespace.clone(),
                evidence: vec![Evidence::at_least("ce", c.ce as f64, cfg.ce_high)],
                related: related(&[("ca", c.ca)]),
                message: "high efferent coupling; changes in the namespaces it depends on will ripple into it".into(),
            });
        }
    }

    out.sort_by(|a, b| a.rule.cmp(&b.rule).then_with(|| a.target.cmp(&b.target)));
    out
}
