//! Strong planarity and nondegeneracy checks, reported rather than raised.

use std::collections::{HashSet, VecDeque};

use crate::dag::{EmbeddedDag, NetflowVector, VertexId};
use crate::embedding::{derive_terminal_order, structural_violations, trace_faces, Embedding, RotationSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, rule: &'static str, detail: impl Into<String>) {
        self.violations.push(Violation { rule, detail: detail.into() });
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    /// Joins all details into one line, for error messages.
    pub fn summary(&self) -> String {
        self.violations.iter().map(|v| format!("[{}] {}", v.rule, v.detail)).collect::<Vec<_>>().join("; ")
    }
}

pub fn validate_strong_planarity(dag: &EmbeddedDag) -> ValidationReport {
    let mut report = ValidationReport::default();
    let structural = structural_violations(dag);
    let consistent = structural.is_empty();
    for detail in structural {
        report.push("structure", detail);
    }
    for v in dag.vertex_ids() {
        if dag.ins(v).is_empty() && dag.outs(v).is_empty() {
            report.push("incidence", format!("vertex {} has no incident edge", dag.vertex_name(v)));
        }
    }
    if dag.topological_order().is_none() {
        report.push("acyclic", "the edges contain a directed cycle");
    }
    check_terminal_sets(dag, &mut report);
    if !consistent || report.has_rule("incidence") {
        return report;
    }

    let rotation = build_rotation(dag);
    let faces = trace_faces(dag, &rotation);
    let (labels, components) = dag.component_labels();
    let mut v_count = vec![0i64; components];
    let mut e_count = vec![0i64; components];
    let mut f_count = vec![0i64; components];
    for v in dag.vertex_ids() {
        v_count[labels[v.0]] += 1;
    }
    for e in dag.edge_ids() {
        e_count[labels[dag.tail(e).0]] += 1;
    }
    for face in &faces.faces {
        f_count[labels[face[0].origin(dag).0]] += 1;
    }
    let planar = (0..components).all(|c| v_count[c] - e_count[c] + f_count[c] == 2);
    if !planar {
        let total_f: i64 = f_count.iter().sum();
        report.push(
            "euler",
            format!(
                "V - E + F = {} - {} + {} = {}, expected 1 + c = {}",
                dag.num_vertices(),
                dag.num_edges(),
                total_f,
                dag.num_vertices() as i64 - dag.num_edges() as i64 + total_f,
                1 + components
            ),
        );
        return report;
    }

    match derive_terminal_order(dag, &faces) {
        Err(detail) => report.push("outer_face", detail),
        Ok((order, _)) => {
            if !report.has_rule("terminals") && (order.sources != dag.sources() || order.sinks != dag.sinks()) {
                report.push(
                    "terminal_order",
                    format!(
                        "outer face lists sources [{}] and sinks [{}]",
                        names(dag, &order.sources),
                        names(dag, &order.sinks)
                    ),
                );
            }
        }
    }
    report
}

fn build_rotation(dag: &EmbeddedDag) -> RotationSystem {
    crate::embedding::derive_rotation_system(dag).expect("structure already checked")
}

fn names(dag: &EmbeddedDag, vs: &[VertexId]) -> String {
    vs.iter().map(|&v| dag.vertex_name(v)).collect::<Vec<_>>().join(", ")
}

fn check_terminal_sets(dag: &EmbeddedDag, report: &mut ValidationReport) {
    let listed_sources: HashSet<VertexId> = dag.sources().iter().copied().collect();
    let listed_sinks: HashSet<VertexId> = dag.sinks().iter().copied().collect();
    if listed_sources.len() != dag.sources().len() {
        report.push("terminals", "a source is listed twice");
    }
    if listed_sinks.len() != dag.sinks().len() {
        report.push("terminals", "a sink is listed twice");
    }
    for v in dag.vertex_ids() {
        let is_source = dag.ins(v).is_empty() && !dag.outs(v).is_empty();
        let is_sink = dag.outs(v).is_empty() && !dag.ins(v).is_empty();
        if is_source != listed_sources.contains(&v) {
            report.push(
                "terminals",
                format!("vertex {} is {}a source", dag.vertex_name(v), if is_source { "" } else { "not " }),
            );
        }
        if is_sink != listed_sinks.contains(&v) {
            report.push(
                "terminals",
                format!("vertex {} is {}a sink", dag.vertex_name(v), if is_sink { "" } else { "not " }),
            );
        }
    }
}

pub fn check_nondegenerate(dag: &EmbeddedDag, a: &NetflowVector) -> ValidationReport {
    let mut report = ValidationReport::default();
    if a.values.len() != dag.num_vertices() {
        report.push(
            "netflow_shape",
            format!("netflow has {} entries for {} vertices", a.values.len(), dag.num_vertices()),
        );
        return report;
    }
    for &s in dag.sources() {
        if a.get(s) <= 0 {
            report.push("source_sign", format!("source {} has netflow {}", dag.vertex_name(s), a.get(s)));
        }
    }
    for &t in dag.sinks() {
        if a.get(t) >= 0 {
            report.push("sink_sign", format!("sink {} has netflow {}", dag.vertex_name(t), a.get(t)));
        }
    }
    if a.sum() != 0 {
        report.push("netflow_sum", format!("netflow sums to {}", a.sum()));
    } else if !transshipment_feasible(dag, a) {
        report.push("feasible", "no nonnegative flow realizes the netflow");
    }
    match Embedding::of(dag) {
        Err(e) => report.push("planarity", e.to_string()),
        Ok(emb) => {
            for v in dag.vertex_ids() {
                if a.get(v) != 0 && !emb.outer.touches(dag, &emb.faces, v) {
                    report.push(
                        "outer_face",
                        format!("vertex {} has nonzero netflow but is not on the outer face", dag.vertex_name(v)),
                    );
                }
            }
        }
    }
    report
}

/// Decides whether a nonnegative flow with netflow `a` exists, with unbounded
/// edge capacities, by augmenting paths between a super source feeding the
/// positive vertices and a super sink draining the negative ones.
pub fn transshipment_feasible(dag: &EmbeddedDag, a: &NetflowVector) -> bool {
    if a.sum() != 0 {
        return false;
    }
    let n = dag.num_vertices();
    let (src, snk) = (n, n + 1);
    let mut graph = Residual::new(n + 2);
    for e in dag.edge_ids() {
        graph.add(dag.tail(e).0, dag.head(e).0, i64::MAX / 4);
    }
    let mut supply = 0;
    for v in dag.vertex_ids() {
        let x = a.get(v);
        if x > 0 {
            graph.add(src, v.0, x);
            supply += x;
        } else if x < 0 {
            graph.add(v.0, snk, -x);
        }
    }
    graph.max_flow(src, snk) == supply
}

struct Residual {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Residual { adj: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add(&mut self, u: usize, v: usize, c: i64) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let mut via = vec![usize::MAX; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                for &arc in &self.adj[u] {
                    let w = self.to[arc];
                    if self.cap[arc] > 0 && !seen[w] {
                        seen[w] = true;
                        via[w] = arc;
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut push = i64::MAX;
            let mut w = t;
            while w != s {
                push = push.min(self.cap[via[w]]);
                w = self.to[via[w] ^ 1];
            }
            let mut w = t;
            while w != s {
                self.cap[via[w]] -= push;
                self.cap[via[w] ^ 1] += push;
                w = self.to[via[w] ^ 1];
            }
            total += push;
        }
    }
}
