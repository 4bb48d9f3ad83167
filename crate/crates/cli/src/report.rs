//! Report documents.
//!
//! Every command produces `{"command", "verdicts", "stages", "errors", "data"}`.
//! Objects are `BTreeMap`-backed so keys come out sorted and the JSON for a
//! fixed input is byte-stable.

use std::fmt::Write as _;

use foliation_lab::blowup::{ChartId, NodeOutcome, ReductionStatus, ReductionTree};
use foliation_lab::exactalg::{fmt_rat, Rat};
use foliation_lab::logcalc::{LogStage, PipelineStage};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Stage {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Stage {
    pub fn new(label: impl Into<String>, passed: bool) -> Self {
        Stage {
            label: label.into(),
            passed,
            point: None,
            detail: None,
        }
    }
}

impl From<&PipelineStage> for Stage {
    fn from(s: &PipelineStage) -> Self {
        Stage {
            label: s.label.clone(),
            passed: s.passed,
            point: s.point.clone(),
            detail: s.detail.clone(),
        }
    }
}

impl From<&LogStage> for Stage {
    fn from(s: &LogStage) -> Self {
        Stage::new(s.label.clone(), s.logarithmic)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorEntry {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub verdicts: Map<String, Value>,
    pub stages: Vec<Stage>,
    pub errors: Vec<ErrorEntry>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            verdicts: Map::new(),
            stages: Vec::new(),
            errors: Vec::new(),
            data: Map::new(),
        }
    }

    pub fn verdict(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.verdicts.insert(key.to_string(), v.into());
        self
    }

    pub fn datum(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.data.insert(key.to_string(), v.into());
        self
    }

    pub fn stage(&mut self, s: Stage) -> &mut Self {
        self.stages.push(s);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for (k, v) in &self.verdicts {
            writeln!(out, "{k}: {}", text_value(v)).unwrap();
        }
        for s in &self.stages {
            let mark = if s.passed { "ok  " } else { "FAIL" };
            write!(out, "[{mark}] {}", s.label).unwrap();
            if let Some(p) = &s.point {
                if !s.label.contains(p.as_str()) {
                    write!(out, " @ {p}").unwrap();
                }
            }
            if let Some(d) = &s.detail {
                write!(out, " ({d})").unwrap();
            }
            out.push('\n');
        }
        for (k, v) in &self.data {
            writeln!(out, "{k}: {}", text_value(v)).unwrap();
        }
        for e in &self.errors {
            match (e.line, e.column) {
                (Some(l), Some(c)) => writeln!(out, "error[{}] {l}:{c}: {}", e.kind, e.message),
                _ => writeln!(out, "error[{}]: {}", e.kind, e.message),
            }
            .unwrap();
        }
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn rat_value(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn status_name(s: &ReductionStatus) -> String {
    match s {
        ReductionStatus::Complete => "Complete".to_string(),
        ReductionStatus::DepthExceeded => "DepthExceeded".to_string(),
        ReductionStatus::NonRationalCenter(e) => format!("NonRationalCenter({e})"),
    }
}

fn chart_value(c: Option<ChartId>) -> Value {
    match c {
        None => Value::Null,
        Some(id) => json!(id.index()),
    }
}

/// Nodes carry their center in the coordinates of the chart that contains
/// them.
pub fn tree_value(tree: &ReductionTree) -> Value {
    let nodes: Vec<Value> = tree
        .nodes
        .iter()
        .map(|n| {
            let mut o = Map::new();
            o.insert("id".into(), json!(n.id));
            o.insert("parent".into(), json!(n.parent));
            o.insert("depth".into(), json!(n.depth));
            o.insert("chart".into(), chart_value(n.chart));
            o.insert(
                "center".into(),
                Value::Array(n.center().iter().map(rat_value).collect()),
            );
            let verdict = match &n.outcome {
                NodeOutcome::Reduced => "Reduced",
                NodeOutcome::Regular => "Regular",
                NodeOutcome::BlownUp { .. } => "BlownUp",
                NodeOutcome::DepthExceeded => "DepthExceeded",
                NodeOutcome::Unexplored => "Unexplored",
            };
            o.insert("verdict".into(), json!(verdict));
            if let NodeOutcome::BlownUp {
                order,
                divided_power,
                exceptional_invariant,
                children,
                unresolved,
            } = &n.outcome
            {
                o.insert("order".into(), json!(order));
                o.insert("m".into(), json!(divided_power));
                o.insert("exceptional_invariant".into(), json!(exceptional_invariant));
                o.insert("children".into(), json!(children));
                if let Some(u) = unresolved {
                    o.insert("unresolved".into(), json!(u.to_string()));
                }
            }
            Value::Object(o)
        })
        .collect();
    json!({
        "status": status_name(&tree.status),
        "truncated": tree.truncated,
        "nodes": nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_are_sorted() {
        let mut r = Report::new("x");
        r.verdict("zeta", true).verdict("alpha", 1);
        let s = r.to_json();
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        assert_eq!(s, r.clone().to_json());
    }

    #[test]
    fn text_lists_stages() {
        let mut r = Report::new("closed");
        r.stage(Stage::new("closed", false));
        assert!(r.to_text().contains("[FAIL] closed"));
    }
}
