//! DAGs carrying a combinatorial strongly planar embedding.
//!
//! The embedding is recorded as per-vertex edge orders: `ins` and `outs` are
//! listed bottom-to-top, and the source and sink sequences are listed
//! bottom-to-top along the outer face. Edges are always drawn left-to-right,
//! so these orders fully determine the rotation system.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRecord {
    pub name: String,
    /// Incoming edges, bottom-to-top.
    pub ins: Vec<EdgeId>,
    /// Outgoing edges, bottom-to-top.
    pub outs: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub name: String,
    pub tail: VertexId,
    pub head: VertexId,
}

/// A DAG together with its combinatorial embedding.
///
/// Construction only checks referential integrity (unique names, indices in
/// range). Whether the per-vertex orders are consistent and planar is the
/// business of [`crate::validate::validate_strong_planarity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedDag {
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
    sources: Vec<VertexId>,
    sinks: Vec<VertexId>,
    vertex_names: HashMap<String, VertexId>,
    edge_names: HashMap<String, EdgeId>,
}

impl EmbeddedDag {
    pub fn new(
        vertices: Vec<VertexRecord>,
        edges: Vec<EdgeRecord>,
        sources: Vec<VertexId>,
        sinks: Vec<VertexId>,
    ) -> Result<Self> {
        let mut vertex_names = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_names.insert(v.name.clone(), VertexId(i)).is_some() {
                return Err(Error::Structural(format!("duplicate vertex id {:?}", v.name)));
            }
        }
        let mut edge_names = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            if edge_names.insert(e.name.clone(), EdgeId(i)).is_some() {
                return Err(Error::Structural(format!("duplicate edge id {:?}", e.name)));
            }
            if e.tail.0 >= vertices.len() || e.head.0 >= vertices.len() {
                return Err(Error::Structural(format!("edge {:?} references a missing vertex", e.name)));
            }
        }
        for v in &vertices {
            for e in v.ins.iter().chain(&v.outs) {
                if e.0 >= edges.len() {
                    return Err(Error::Structural(format!(
                        "vertex {:?} references a missing edge",
                        v.name
                    )));
                }
            }
        }
        for v in sources.iter().chain(&sinks) {
            if v.0 >= vertices.len() {
                return Err(Error::Structural("terminal list references a missing vertex".into()));
            }
        }
        Ok(EmbeddedDag { vertices, edges, sources, sinks, vertex_names, edge_names })
    }

    /// Builds a dag from names: `(id, ins, outs)` per vertex and
    /// `(id, tail, head)` per edge, mirroring the instance file layout.
    pub fn from_names(
        vertices: &[(&str, &[&str], &[&str])],
        edges: &[(&str, &str, &str)],
        sources: &[&str],
        sinks: &[&str],
    ) -> Result<Self> {
        let vertex_index: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.0, i)).collect();
        let edge_index: HashMap<&str, usize> =
            edges.iter().enumerate().map(|(i, e)| (e.0, i)).collect();
        let vid = |name: &str| {
            vertex_index
                .get(name)
                .map(|&i| VertexId(i))
                .ok_or_else(|| Error::Structural(format!("unknown vertex id {name:?}")))
        };
        let eid = |name: &str| {
            edge_index
                .get(name)
                .map(|&i| EdgeId(i))
                .ok_or_else(|| Error::Structural(format!("unknown edge id {name:?}")))
        };
        let edge_records = edges
            .iter()
            .map(|&(name, tail, head)| {
                Ok(EdgeRecord { name: name.to_string(), tail: vid(tail)?, head: vid(head)? })
            })
            .collect::<Result<Vec<_>>>()?;
        let vertex_records = vertices
            .iter()
            .map(|&(name, ins, outs)| {
                Ok(VertexRecord {
                    name: name.to_string(),
                    ins: ins.iter().map(|e| eid(e)).collect::<Result<_>>()?,
                    outs: outs.iter().map(|e| eid(e)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let sources = sources.iter().map(|v| vid(v)).collect::<Result<_>>()?;
        let sinks = sinks.iter().map(|v| vid(v)).collect::<Result<_>>()?;
        EmbeddedDag::new(vertex_records, edge_records, sources, sinks)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex(&self, v: VertexId) -> &VertexRecord {
        &self.vertices[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeRecord {
        &self.edges[e.0]
    }

    pub fn vertices(&self) -> &[VertexRecord] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn tail(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].tail
    }

    pub fn head(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].head
    }

    pub fn ins(&self, v: VertexId) -> &[EdgeId] {
        &self.vertices[v.0].ins
    }

    pub fn outs(&self, v: VertexId) -> &[EdgeId] {
        &self.vertices[v.0].outs
    }

    /// Sources, bottom-to-top.
    pub fn sources(&self) -> &[VertexId] {
        &self.sources
    }

    /// Sinks, bottom-to-top.
    pub fn sinks(&self) -> &[VertexId] {
        &self.sinks
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0].name
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_names.get(name).copied()
    }

    /// Zero-based position of `v` in the bottom-to-top source order.
    pub fn source_index(&self, v: VertexId) -> Option<usize> {
        self.sources.iter().position(|&s| s == v)
    }

    pub fn sink_index(&self, v: VertexId) -> Option<usize> {
        self.sinks.iter().position(|&t| t == v)
    }

    /// Position of `e` in the bottom-to-top out-order of its tail.
    pub fn out_position(&self, e: EdgeId) -> Option<usize> {
        self.outs(self.tail(e)).iter().position(|&f| f == e)
    }

    /// Position of `e` in the bottom-to-top in-order of its head.
    pub fn in_position(&self, e: EdgeId) -> Option<usize> {
        self.ins(self.head(e)).iter().position(|&f| f == e)
    }

    /// Topological order from edge endpoints (smallest index first among
    /// ready vertices), or `None` if the graph has a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        let mut succ = vec![Vec::new(); n];
        for e in &self.edges {
            indegree[e.head.0] += 1;
            succ[e.tail.0].push(e.head.0);
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(VertexId(v));
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Connected component label of every vertex (ignoring direction);
    /// labels are numbered in order of their smallest vertex.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let a = find(&mut parent, e.tail.0);
            let b = find(&mut parent, e.head.0);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for v in 0..n {
            let root = find(&mut parent, v);
            if label[root] == usize::MAX {
                label[root] = count;
                count += 1;
            }
            label[v] = label[root];
        }
        (label, count)
    }

    pub(crate) fn fresh_vertex_name(&self, base: &str) -> String {
        fresh_name(base, |n| self.vertex_names.contains_key(n))
    }

    pub(crate) fn fresh_edge_name(&self, base: &str) -> String {
        fresh_name(base, |n| self.edge_names.contains_key(n))
    }

    pub(crate) fn push_vertex(&mut self, name: String) -> VertexId {
        let id = VertexId(self.vertices.len());
        self.vertex_names.insert(name.clone(), id);
        self.vertices.push(VertexRecord { name, ins: Vec::new(), outs: Vec::new() });
        id
    }

    /// Appends an edge, inserting it at the given positions of the tail's
    /// out-order and the head's in-order.
    pub(crate) fn push_edge(
        &mut self,
        name: String,
        tail: VertexId,
        tail_pos: usize,
        head: VertexId,
        head_pos: usize,
    ) -> EdgeId {
        let id = EdgeId(self.edges.len());
        self.edge_names.insert(name.clone(), id);
        self.edges.push(EdgeRecord { name, tail, head });
        self.vertices[tail.0].outs.insert(tail_pos, id);
        self.vertices[head.0].ins.insert(head_pos, id);
        id
    }

    /// Moves the head of `e` to `new_head`, inserting it at `head_pos` of the
    /// new head's in-order. The old head loses `e` from its in-order.
    pub(crate) fn retarget_head(&mut self, e: EdgeId, new_head: VertexId, head_pos: usize) -> usize {
        let old = self.edges[e.0].head;
        let pos = self.vertices[old.0].ins.iter().position(|&f| f == e).expect("edge listed at head");
        self.vertices[old.0].ins.remove(pos);
        self.edges[e.0].head = new_head;
        self.vertices[new_head.0].ins.insert(head_pos, e);
        pos
    }

    pub(crate) fn set_terminals(&mut self, sources: Vec<VertexId>, sinks: Vec<VertexId>) {
        self.sources = sources;
        self.sinks = sinks;
    }
}

fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    (1..)
        .map(|k| format!("{base}'{k}"))
        .find(|n| !taken(n))
        .expect("unbounded counter")
}

/// Integer vertex weights; `values[v]` is the netflow at vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NetflowVector {
    pub values: Vec<i64>,
}

impl NetflowVector {
    pub fn new(values: Vec<i64>) -> Self {
        NetflowVector { values }
    }

    pub fn get(&self, v: VertexId) -> i64 {
        self.values[v.0]
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn scaled(&self, t: i64) -> NetflowVector {
        NetflowVector { values: self.values.iter().map(|a| a * t).collect() }
    }
}

/// +1 on sources, -1 on sinks, 0 elsewhere (sources and sinks taken from
/// in/out-degree, not from the listed sequences).
pub fn unit_netflow(dag: &EmbeddedDag) -> NetflowVector {
    let values = dag
        .vertex_ids()
        .map(|v| match (dag.ins(v).is_empty(), dag.outs(v).is_empty()) {
            (true, false) => 1,
            (false, true) => -1,
            _ => 0,
        })
        .collect();
    NetflowVector { values }
}
