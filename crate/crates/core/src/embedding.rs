//! Rotation systems, face tracing and outer-face bookkeeping.
//!
//! At every vertex the counterclockwise order of incident edges is the
//! out-edges bottom-to-top followed by the in-edges top-to-bottom. Faces are
//! traced on darts (edge sides); the face of a dart lies on its right.

use crate::dag::{EdgeId, EmbeddedDag, VertexId};
use crate::error::{Error, Result};

/// Counterclockwise cyclic edge order at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    ccw: Vec<Vec<EdgeId>>,
    pos_at_tail: Vec<usize>,
    pos_at_head: Vec<usize>,
}

impl RotationSystem {
    pub fn at(&self, v: VertexId) -> &[EdgeId] {
        &self.ccw[v.0]
    }

    fn successor(&self, dag: &EmbeddedDag, v: VertexId, e: EdgeId) -> EdgeId {
        let pos = if dag.tail(e) == v { self.pos_at_tail[e.0] } else { self.pos_at_head[e.0] };
        let ring = &self.ccw[v.0];
        ring[(pos + 1) % ring.len()]
    }
}

/// Lists every disagreement between the per-vertex orders and the edge
/// endpoints. Empty iff the in/out lists partition the incident edges.
pub fn structural_violations(dag: &EmbeddedDag) -> Vec<String> {
    let mut problems = Vec::new();
    let mut seen_out = vec![0usize; dag.num_edges()];
    let mut seen_in = vec![0usize; dag.num_edges()];
    for v in dag.vertex_ids() {
        for &e in dag.outs(v) {
            seen_out[e.0] += 1;
            if dag.tail(e) != v {
                problems.push(format!(
                    "edge {} listed as outgoing at {} but its tail is {}",
                    dag.edge_name(e),
                    dag.vertex_name(v),
                    dag.vertex_name(dag.tail(e))
                ));
            }
        }
        for &e in dag.ins(v) {
            seen_in[e.0] += 1;
            if dag.head(e) != v {
                problems.push(format!(
                    "edge {} listed as incoming at {} but its head is {}",
                    dag.edge_name(e),
                    dag.vertex_name(v),
                    dag.vertex_name(dag.head(e))
                ));
            }
        }
    }
    for e in dag.edge_ids() {
        if seen_out[e.0] != 1 {
            problems.push(format!("edge {} appears {} times in out-lists", dag.edge_name(e), seen_out[e.0]));
        }
        if seen_in[e.0] != 1 {
            problems.push(format!("edge {} appears {} times in in-lists", dag.edge_name(e), seen_in[e.0]));
        }
    }
    problems
}

pub fn derive_rotation_system(dag: &EmbeddedDag) -> Result<RotationSystem> {
    let problems = structural_violations(dag);
    if !problems.is_empty() {
        return Err(Error::Structural(problems.join("; ")));
    }
    let mut ccw = Vec::with_capacity(dag.num_vertices());
    let mut pos_at_tail = vec![0; dag.num_edges()];
    let mut pos_at_head = vec![0; dag.num_edges()];
    for v in dag.vertex_ids() {
        let ring: Vec<EdgeId> =
            dag.outs(v).iter().copied().chain(dag.ins(v).iter().rev().copied()).collect();
        for (i, &e) in ring.iter().enumerate() {
            if dag.tail(e) == v {
                pos_at_tail[e.0] = i;
            } else {
                pos_at_head[e.0] = i;
            }
        }
        ccw.push(ring);
    }
    Ok(RotationSystem { ccw, pos_at_tail, pos_at_head })
}

/// One side of an edge: forward darts run tail to head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub usize);

impl Dart {
    pub fn forward(e: EdgeId) -> Dart {
        Dart(2 * e.0)
    }

    pub fn backward(e: EdgeId) -> Dart {
        Dart(2 * e.0 + 1)
    }

    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 / 2)
    }

    pub fn is_forward(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn origin(self, dag: &EmbeddedDag) -> VertexId {
        if self.is_forward() { dag.tail(self.edge()) } else { dag.head(self.edge()) }
    }

    /// The vertex this dart arrives at. A dart also names the corner at its
    /// target swept counterclockwise from its edge to the next edge.
    pub fn target(self, dag: &EmbeddedDag) -> VertexId {
        if self.is_forward() { dag.head(self.edge()) } else { dag.tail(self.edge()) }
    }
}

#[derive(Clone, Debug)]
pub struct Faces {
    /// Each face as its cyclic dart sequence.
    pub faces: Vec<Vec<Dart>>,
    /// Face index of every dart.
    pub face_of: Vec<usize>,
}

impl Faces {
    /// Total boundary length over all faces; always `2 * |E|`.
    pub fn total_length(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }
}

pub fn next_dart(dag: &EmbeddedDag, rot: &RotationSystem, d: Dart) -> Dart {
    let v = d.target(dag);
    let e = rot.successor(dag, v, d.edge());
    if dag.tail(e) == v { Dart::forward(e) } else { Dart::backward(e) }
}

pub fn trace_faces(dag: &EmbeddedDag, rot: &RotationSystem) -> Faces {
    let darts = 2 * dag.num_edges();
    let mut face_of = vec![usize::MAX; darts];
    let mut faces = Vec::new();
    for start in 0..darts {
        if face_of[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut cycle = Vec::new();
        let mut d = Dart(start);
        while face_of[d.0] == usize::MAX {
            face_of[d.0] = id;
            cycle.push(d);
            d = next_dart(dag, rot, d);
        }
        faces.push(cycle);
    }
    Faces { faces, face_of }
}

/// The corner where a source meets the outer face (its left side).
pub fn source_corner(dag: &EmbeddedDag, s: VertexId) -> Option<Dart> {
    dag.outs(s).last().map(|&e| Dart::backward(e))
}

/// The corner where a sink meets the outer face (its right side).
pub fn sink_corner(dag: &EmbeddedDag, t: VertexId) -> Option<Dart> {
    dag.ins(t).first().map(|&e| Dart::forward(e))
}

/// Corners of `v` that can receive a new incoming edge, bottom-to-top, each
/// with the insertion index into the in-order.
pub fn in_slots(dag: &EmbeddedDag, v: VertexId) -> Vec<(Dart, usize)> {
    let ins = dag.ins(v);
    let outs = dag.outs(v);
    if ins.is_empty() {
        return outs.last().map(|&e| vec![(Dart::backward(e), 0)]).unwrap_or_default();
    }
    let mut slots: Vec<(Dart, usize)> =
        ins.iter().enumerate().map(|(r, &e)| (Dart::forward(e), r)).collect();
    if let Some(&top) = outs.last() {
        slots.push((Dart::backward(top), ins.len()));
    }
    slots
}

/// Corners of `v` that can receive a new outgoing edge, bottom-to-top, each
/// with the insertion index into the out-order.
pub fn out_slots(dag: &EmbeddedDag, v: VertexId) -> Vec<(Dart, usize)> {
    let ins = dag.ins(v);
    let outs = dag.outs(v);
    if outs.is_empty() {
        return ins.first().map(|&e| vec![(Dart::forward(e), 0)]).unwrap_or_default();
    }
    let bottom = match ins.first() {
        Some(&e) => Dart::forward(e),
        None => Dart::backward(*outs.last().unwrap()),
    };
    let mut slots = vec![(bottom, 0)];
    for r in 1..outs.len() {
        slots.push((Dart::backward(outs[r - 1]), r));
    }
    slots.push((Dart::backward(*outs.last().unwrap()), outs.len()));
    slots
}

/// Outer-face data for a valid embedding.
#[derive(Clone, Debug)]
pub struct OuterFaces {
    /// Outer face index of each component.
    pub face_of_component: Vec<usize>,
    pub component_of_vertex: Vec<usize>,
    /// Components in bottom-to-top order.
    pub component_order: Vec<usize>,
}

impl OuterFaces {
    /// Whether some corner of `v` lies on the outer face.
    pub fn touches(&self, dag: &EmbeddedDag, faces: &Faces, v: VertexId) -> bool {
        let outer = self.face_of_component[self.component_of_vertex[v.0]];
        dag.ins(v)
            .iter()
            .map(|&e| Dart::forward(e))
            .chain(dag.outs(v).iter().map(|&e| Dart::backward(e)))
            .any(|d| faces.face_of[d.0] == outer)
    }

    pub fn is_outer_corner(&self, dag: &EmbeddedDag, faces: &Faces, corner: Dart) -> bool {
        let comp = self.component_of_vertex[corner.target(dag).0];
        faces.face_of[corner.0] == self.face_of_component[comp]
    }
}

/// Terminal order read off the outer faces of an embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalOrder {
    pub sources: Vec<VertexId>,
    pub sinks: Vec<VertexId>,
}

/// Reads the bottom-to-top source and sink order off the outer face of every
/// component. Components are stacked in the order their sources first occur
/// in `dag.sources()`; components with no listed source follow by label.
///
/// Walking an outer face with the face on the right visits the sinks
/// bottom-to-top and then the sources top-to-bottom; anything else means the
/// terminals do not sit on one face in a strongly planar arrangement.
pub fn derive_terminal_order(
    dag: &EmbeddedDag,
    faces: &Faces,
) -> std::result::Result<(TerminalOrder, OuterFaces), String> {
    let (component_of_vertex, count) = dag.component_labels();
    let mut component_order = Vec::new();
    let mut placed = vec![false; count];
    for &s in dag.sources() {
        let c = component_of_vertex[s.0];
        if !placed[c] {
            placed[c] = true;
            component_order.push(c);
        }
    }
    for c in 0..count {
        if !placed[c] {
            component_order.push(c);
        }
    }

    let mut comp_sources = vec![Vec::new(); count];
    let mut comp_sinks = vec![Vec::new(); count];
    for v in dag.vertex_ids() {
        let c = component_of_vertex[v.0];
        match (dag.ins(v).is_empty(), dag.outs(v).is_empty()) {
            (true, false) => comp_sources[c].push(v),
            (false, true) => comp_sinks[c].push(v),
            (true, true) => return Err(format!("vertex {} has no incident edge", dag.vertex_name(v))),
            _ => {}
        }
    }

    let mut face_of_component = vec![usize::MAX; count];
    let mut order = TerminalOrder { sources: Vec::new(), sinks: Vec::new() };
    for &c in &component_order {
        let first = dag
            .sources()
            .iter()
            .copied()
            .find(|&s| component_of_vertex[s.0] == c && !dag.outs(s).is_empty())
            .or_else(|| comp_sources[c].first().copied())
            .ok_or_else(|| format!("component {c} has no source"))?;
        let outer = faces.face_of[source_corner(dag, first).unwrap().0];
        face_of_component[c] = outer;

        let mut terminal_at = std::collections::HashMap::new();
        for &s in &comp_sources[c] {
            terminal_at.insert(source_corner(dag, s).unwrap(), (true, s));
        }
        for &t in &comp_sinks[c] {
            terminal_at.insert(sink_corner(dag, t).unwrap(), (false, t));
        }
        for (&corner, &(_, v)) in &terminal_at {
            if faces.face_of[corner.0] != outer {
                return Err(format!(
                    "terminal {} is not on the outer face shared with source {}",
                    dag.vertex_name(v),
                    dag.vertex_name(first)
                ));
            }
        }
        let events: Vec<(bool, VertexId)> =
            faces.faces[outer].iter().filter_map(|d| terminal_at.get(d).copied()).collect();
        let n = events.len();
        // Start at the unique source -> sink transition.
        let starts: Vec<usize> =
            (0..n).filter(|&k| !events[k].0 && events[(k + n - 1) % n].0).collect();
        if starts.len() != 1 {
            return Err(format!(
                "sources and sinks of the component containing {} are interleaved on the outer face",
                dag.vertex_name(first)
            ));
        }
        let rotated: Vec<(bool, VertexId)> = (0..n).map(|k| events[(starts[0] + k) % n]).collect();
        let split = rotated.iter().position(|e| e.0).unwrap_or(n);
        order.sinks.extend(rotated[..split].iter().map(|e| e.1));
        order.sources.extend(rotated[split..].iter().rev().map(|e| e.1));
    }
    Ok((order, OuterFaces { face_of_component, component_of_vertex, component_order }))
}

/// Everything derived from an embedding that downstream code consults.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub rotation: RotationSystem,
    pub faces: Faces,
    pub outer: OuterFaces,
    pub terminals: TerminalOrder,
}

impl Embedding {
    pub fn of(dag: &EmbeddedDag) -> Result<Embedding> {
        let rotation = derive_rotation_system(dag)?;
        let faces = trace_faces(dag, &rotation);
        let (terminals, outer) = derive_terminal_order(dag, &faces).map_err(Error::InvalidInput)?;
        Ok(Embedding { rotation, faces, outer, terminals })
    }
}
