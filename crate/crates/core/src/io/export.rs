//! DOT and JSON renderings of Cayley graphs. Output is byte-stable.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::cayley::DiGraph;
use crate::error::GyroError;
use crate::gyrogroup::Element;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = GyroError;

    fn from_str(s: &str) -> Result<Self, GyroError> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(GyroError::InvalidConfig(format!("unknown export format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExportOptions {
    /// Attach generator labels to DOT edges.
    pub labels: bool,
    /// Graph name in DOT output.
    pub name: Option<String>,
}

#[derive(Serialize)]
struct JsonGraph {
    n: usize,
    arcs: Vec<[usize; 2]>,
    /// Generators producing each arc, parallel to `arcs`.
    labels: Vec<Vec<Element>>,
}

fn join(set: Option<&BTreeSet<Element>>) -> String {
    set.map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .unwrap_or_default()
}

pub fn export_graph(graph: &DiGraph, format: ExportFormat, options: &ExportOptions) -> String {
    match format {
        ExportFormat::Dot => to_dot(graph, options),
        ExportFormat::Json => to_json(graph),
    }
}

/// Mutual arcs become one `dir=none` edge; one-way arcs keep their arrow.
fn to_dot(graph: &DiGraph, options: &ExportOptions) -> String {
    let name = options.name.as_deref().unwrap_or("cayley");
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "\\\""));
    out.push_str("  node [shape=circle];\n");
    for v in 0..graph.n() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in graph.arcs() {
        let mutual = graph.has_arc(v, u);
        if mutual && v < u {
            continue;
        }
        let mut attrs = Vec::new();
        if mutual {
            attrs.push("dir=none".to_string());
        }
        if options.labels {
            let fwd = join(graph.label(u, v));
            let label = if mutual {
                let back = join(graph.label(v, u));
                if back == fwd {
                    fwd
                } else {
                    format!("{fwd}/{back}")
                }
            } else {
                fwd
            };
            if !label.is_empty() {
                attrs.push(format!("label=\"{label}\""));
            }
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {u} -> {v};");
        } else {
            let _ = writeln!(out, "  {u} -> {v} [{}];", attrs.join(", "));
        }
    }
    out.push_str("}\n");
    out
}

fn to_json(graph: &DiGraph) -> String {
    let doc = JsonGraph {
        n: graph.n(),
        arcs: graph.arcs().map(|(u, v)| [u, v]).collect(),
        labels: graph
            .arcs()
            .map(|(u, v)| {
                graph
                    .label(u, v)
                    .map(|s| s.iter().copied().collect())
                    .unwrap_or_default()
            })
            .collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("plain data serialises");
    s.push('\n');
    s
}
