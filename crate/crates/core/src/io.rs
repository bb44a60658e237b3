//! Instance files, JSON output documents and DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dag::{EdgeId, EdgeRecord, EmbeddedDag, NetflowVector, VertexId, VertexRecord};
use crate::error::{Error, Result};
use crate::flow::FlowVector;
use crate::layerings::{Framing, LayeringDecomposition};
use crate::mutation::FramingPoset;
use crate::oracle::VerificationReport;
use crate::routes::{horizontal_index, Route};
use crate::triangulation::Triangulation;
use crate::validate::ValidationReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
    pub sources: Vec<String>,
    pub sinks: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub netflow: Option<BTreeMap<String, i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    #[serde(rename = "in")]
    pub ins: Vec<String>,
    pub out: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: String,
    pub tail: String,
    pub head: String,
}

/// A parsed instance: the dag and its netflow, if the file gives one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub dag: EmbeddedDag,
    pub netflow: Option<NetflowVector>,
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance> {
        let vertices: Vec<(&str, Vec<&str>, Vec<&str>)> = self
            .vertices
            .iter()
            .map(|v| (v.id.as_str(), v.ins.iter().map(String::as_str).collect(), v.out.iter().map(String::as_str).collect()))
            .collect();
        let vertex_refs: Vec<(&str, &[&str], &[&str])> =
            vertices.iter().map(|(id, ins, outs)| (*id, &ins[..], &outs[..])).collect();
        let edges: Vec<(&str, &str, &str)> =
            self.edges.iter().map(|e| (e.id.as_str(), e.tail.as_str(), e.head.as_str())).collect();
        let sources: Vec<&str> = self.sources.iter().map(String::as_str).collect();
        let sinks: Vec<&str> = self.sinks.iter().map(String::as_str).collect();
        let dag = EmbeddedDag::from_names(&vertex_refs, &edges, &sources, &sinks)?;
        let netflow = match self.netflow {
            None => None,
            Some(map) => {
                let mut values = vec![0; dag.num_vertices()];
                for (name, a) in map {
                    let v = dag
                        .vertex_id(&name)
                        .ok_or_else(|| Error::Structural(format!("netflow names unknown vertex {name:?}")))?;
                    values[v.0] = a;
                }
                Some(NetflowVector::new(values))
            }
        };
        Ok(Instance { dag, netflow })
    }

    pub fn from_instance(dag: &EmbeddedDag, netflow: Option<&NetflowVector>) -> InstanceFile {
        let names = |edges: &[EdgeId]| edges.iter().map(|&e| dag.edge_name(e).to_string()).collect();
        let vnames = |vs: &[VertexId]| vs.iter().map(|&v| dag.vertex_name(v).to_string()).collect();
        InstanceFile {
            vertices: dag
                .vertices()
                .iter()
                .map(|v: &VertexRecord| VertexEntry { id: v.name.clone(), ins: names(&v.ins), out: names(&v.outs) })
                .collect(),
            edges: dag
                .edges()
                .iter()
                .map(|e: &EdgeRecord| EdgeEntry {
                    id: e.name.clone(),
                    tail: dag.vertex_name(e.tail).to_string(),
                    head: dag.vertex_name(e.head).to_string(),
                })
                .collect(),
            sources: vnames(dag.sources()),
            sinks: vnames(dag.sinks()),
            netflow: netflow.map(|a| {
                dag.vertex_ids()
                    .filter(|&v| a.get(v) != 0)
                    .map(|v| (dag.vertex_name(v).to_string(), a.get(v)))
                    .collect()
            }),
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| Error::Structural(format!("instance file: {e}")))?;
    file.into_instance()
}

/// Canonical pretty JSON for an instance, with a trailing newline.
pub fn instance_to_json(dag: &EmbeddedDag, netflow: Option<&NetflowVector>) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceFile::from_instance(dag, netflow)).expect("serializable");
    s.push('\n');
    s
}

pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Reads a flow given as an object from edge id to value (a `"p/q"` string
/// or an integer; missing edges carry 0) or as an array in edge order.
pub fn parse_flow(dag: &EmbeddedDag, text: &str) -> Result<FlowVector> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("flow: {e}")))?;
    let entry = |v: &Value| -> Result<BigRational> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n
                .as_i64()
                .map(|x| BigRational::from_integer(x.into()))
                .ok_or_else(|| Error::InvalidInput(format!("flow value {n} is not an integer or \"p/q\" string"))),
            other => Err(Error::InvalidInput(format!("flow value {other} is not a number"))),
        }
    };
    match &value {
        Value::Object(map) => {
            let mut f = FlowVector::zero(dag.num_edges());
            for (name, v) in map {
                let e = dag.edge_id(name).ok_or_else(|| Error::InvalidInput(format!("flow names unknown edge {name:?}")))?;
                f.values[e.0] = entry(v)?;
            }
            Ok(f)
        }
        Value::Array(items) => {
            if items.len() != dag.num_edges() {
                return Err(Error::InvalidInput(format!(
                    "flow has {} entries but the dag has {} edges",
                    items.len(),
                    dag.num_edges()
                )));
            }
            Ok(FlowVector::new(items.iter().map(entry).collect::<Result<_>>()?))
        }
        _ => Err(Error::InvalidInput("flow must be an object or an array".into())),
    }
}

fn document(kind: &str, body: Value) -> Value {
    let mut doc = json!({ "schema_version": SCHEMA_VERSION, "kind": kind });
    if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
        doc.extend(body);
    }
    doc
}

/// Pretty JSON with a trailing newline.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

fn edge_names(dag: &EmbeddedDag) -> Vec<&str> {
    dag.edge_ids().map(|e| dag.edge_name(e)).collect()
}

pub fn validation_doc(dag: &EmbeddedDag, planarity: &ValidationReport, netflow: &ValidationReport) -> Value {
    let list = |r: &ValidationReport| -> Vec<Value> {
        r.violations.iter().map(|v| json!({ "rule": v.rule, "detail": v.detail })).collect()
    };
    document(
        "validation",
        json!({
            "ok": planarity.ok() && netflow.ok(),
            "vertices": dag.num_vertices(),
            "edges": dag.num_edges(),
            "planarity": list(planarity),
            "netflow": list(netflow),
        }),
    )
}

pub fn routes_doc(dag: &EmbeddedDag, routes: &[Route]) -> Value {
    let items: Vec<Value> = routes
        .iter()
        .map(|r| {
            json!({
                "edges": r.names(dag),
                "source": dag.vertex_name(r.source(dag)),
                "sink": dag.vertex_name(r.sink(dag)),
                "horizontal": horizontal_index(dag, r),
            })
        })
        .collect();
    document("routes", json!({ "count": items.len(), "routes": items }))
}

fn layering_entries(framing: &Framing) -> Vec<Value> {
    (0..framing.num_layerings())
        .map(|id| {
            let routes: Vec<Vec<String>> =
                framing.layerings[id].iter().map(|&r| framing.routes[r].names(&framing.dag)).collect();
            json!({ "id": id, "routes": routes, "flow": framing.flows[id] })
        })
        .collect()
}

pub fn layerings_doc(framing: &Framing) -> Value {
    document(
        "layerings",
        json!({
            "sources": framing.num_sources(),
            "dimension": framing.dimension,
            "edges": edge_names(&framing.dag),
            "layerings": layering_entries(framing),
        }),
    )
}

pub fn triangulation_doc(framing: &Framing, tri: &Triangulation, volumes: &[BigInt]) -> Value {
    let cells: Vec<Value> = tri
        .cells
        .iter()
        .zip(volumes)
        .enumerate()
        .map(|(k, (c, v))| json!({ "index": k, "layerings": c.clique.layerings, "volume": v.to_string() }))
        .collect();
    let total: BigInt = volumes.iter().sum();
    document(
        "triangulation",
        json!({
            "dimension": tri.dimension,
            "volume": total.to_string(),
            "edges": edge_names(&framing.dag),
            "layerings": layering_entries(framing),
            "cells": cells,
        }),
    )
}

pub fn poset_doc(poset: &FramingPoset) -> Value {
    let nodes: Vec<Value> =
        poset.nodes.iter().enumerate().map(|(k, c)| json!({ "index": k, "layerings": c.layerings })).collect();
    let edges: Vec<Value> = poset
        .down_edges
        .iter()
        .map(|e| json!({ "from": e.from, "to": e.to, "kind": e.kind.name(), "cover": e.cover }))
        .collect();
    document(
        "poset",
        json!({
            "nodes": nodes,
            "down_edges": edges,
            "maximal": poset.maximal_elements(),
            "minimal": poset.minimal_elements(),
        }),
    )
}

pub fn decomposition_doc(framing: &Framing, dec: &LayeringDecomposition) -> Value {
    let terms: Vec<Value> = dec
        .terms
        .iter()
        .map(|(id, c)| {
            let routes: Vec<Vec<String>> =
                framing.layerings[*id].iter().map(|&r| framing.routes[r].names(&framing.dag)).collect();
            json!({ "layering": id, "routes": routes, "coefficient": format_rational(c) })
        })
        .collect();
    document("decomposition", json!({ "terms": terms }))
}

pub fn verification_doc(report: &VerificationReport) -> Value {
    document("verification", json!({ "overall": report.overall(), "checks": report.checks }))
}

/// Hasse diagram with lower cliques at the bottom. Nodes are labelled by
/// their index in the post-source order and edges by mutation kind.
pub fn emit_dot(poset: &FramingPoset) -> String {
    let mut s = String::from("digraph framing_poset {\n  rankdir=BT;\n  node [shape=circle];\n");
    for k in 0..poset.nodes.len() {
        let _ = writeln!(s, "  n{k} [label=\"{k}\"];");
    }
    for e in poset.covers() {
        let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", e.to, e.from, e.kind.name());
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::mutation::build_framing_poset;

    #[test]
    fn round_trip_is_byte_identical() {
        for (_, dag) in fixtures::all() {
            let text = instance_to_json(&dag, None);
            let back = parse_instance(&text).unwrap();
            assert_eq!(back.dag, dag);
            assert_eq!(instance_to_json(&back.dag, None), text);
        }
        let (dag, a) = fixtures::blowup();
        let text = instance_to_json(&dag, Some(&a));
        let back = parse_instance(&text).unwrap();
        assert_eq!(back.netflow, Some(a));
        assert_eq!(instance_to_json(&back.dag, back.netflow.as_ref()), text);
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"{"vertices": [], "edges": [], "sources": [], "sinks": [], "colour": 1}"#;
        assert!(matches!(parse_instance(text), Err(Error::Structural(_))));
        let text = r#"{"vertices": [{"id": "s", "in": [], "out": [], "x": 0}], "edges": [], "sources": [], "sinks": []}"#;
        assert!(parse_instance(text).is_err());
    }

    #[test]
    fn missing_netflow_entries_are_zero() {
        let text = r#"{
            "vertices": [{"id": "s", "in": [], "out": ["e"]}, {"id": "t", "in": ["e"], "out": []}],
            "edges": [{"id": "e", "tail": "s", "head": "t"}],
            "sources": ["s"], "sinks": ["t"], "netflow": {"s": 3}
        }"#;
        assert_eq!(parse_instance(text).unwrap().netflow, Some(NetflowVector::new(vec![3, 0])));
    }

    #[test]
    fn rationals() {
        let x = parse_rational("6/4").unwrap();
        assert_eq!(format_rational(&x), "3/2");
        assert_eq!(format_rational(&parse_rational("2").unwrap()), "2/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("one").is_err());
    }

    #[test]
    fn flows_from_objects_and_arrays() {
        let dag = fixtures::square();
        let f = parse_flow(&dag, r#"{"a1": "1/2", "a2": "1/2", "b1": 1}"#).unwrap();
        assert_eq!(f, parse_flow(&dag, r#"["1/2", "1/2", 1, 0]"#).unwrap());
        assert!(parse_flow(&dag, r#"{"zz": 1}"#).is_err());
        assert!(parse_flow(&dag, r#"[1]"#).is_err());
    }

    #[test]
    fn dot_output() {
        let framing = Framing::new(&fixtures::shuffles(), 1000).unwrap();
        let poset = build_framing_poset(&framing, 1000).unwrap();
        let dot = emit_dot(&poset);
        assert_eq!(dot.matches("[label=\"shuffle\"]").count(), 6);
        assert_eq!(dot.matches("[label=\"").count(), 12);
        assert!(dot.starts_with("digraph") && dot.contains("rankdir=BT"));
        let framing = Framing::new(&fixtures::x_dag_parallel(), 1000).unwrap();
        let dot = emit_dot(&build_framing_poset(&framing, 1000).unwrap());
        assert!(dot.contains("n0 [label=\"0\"]") && !dot.contains("->"));
    }
}
