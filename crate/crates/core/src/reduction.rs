//! Decontraction to a balanced DAG and the two-point extension.

use num_rational::BigRational;

use crate::dag::{unit_netflow, EdgeId, EmbeddedDag, NetflowVector, VertexId};
use crate::embedding::{derive_terminal_order, in_slots, out_slots, Embedding};
use crate::error::{invalid, invariant, Error, Result};
use crate::flow::FlowVector;
use crate::routes::Route;
use crate::validate::{check_nondegenerate, validate_strong_planarity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Placement {
    #[default]
    Below,
    Above,
}

/// A decontracted DAG together with the original it came from. Vertices and
/// edges of the original keep their indices in the reduced DAG; new ones are
/// appended after them.
#[derive(Clone, Debug)]
pub struct ReductionMap {
    pub original: EmbeddedDag,
    pub netflow: NetflowVector,
    pub reduced: EmbeddedDag,
    /// `(original vertex, j, new vertex)` for `j` in `1..=|a_i|`.
    pub decontracted_vertices: Vec<(VertexId, usize, VertexId)>,
    pub decontracted_edges: Vec<EdgeId>,
}

pub fn decontract(dag: &EmbeddedDag, a: &NetflowVector, placement: Placement) -> Result<ReductionMap> {
    let report = validate_strong_planarity(dag);
    if !report.ok() {
        return Err(invalid!("not strongly planar: {}", report.summary()));
    }
    let report = check_nondegenerate(dag, a);
    if !report.ok() {
        return Err(invalid!("netflow is degenerate: {}", report.summary()));
    }
    let mut reduced = dag.clone();
    let mut decontracted_vertices = Vec::new();
    let mut decontracted_edges = Vec::new();
    for v in dag.vertex_ids() {
        let k = a.get(v).unsigned_abs() as usize;
        if k == 0 {
            continue;
        }
        let emb = Embedding::of(&reduced)?;
        let mut slots = if a.get(v) > 0 { in_slots(&reduced, v) } else { out_slots(&reduced, v) };
        slots.retain(|&(corner, _)| emb.outer.is_outer_corner(&reduced, &emb.faces, corner));
        if placement == Placement::Above {
            slots.reverse();
        }
        let attempt = slots.iter().find_map(|&(_, pos)| {
            let candidate = attach(&reduced, v, k, pos, a.get(v) > 0);
            candidate.ok()
        });
        let Some((next, added)) = attempt else {
            return Err(invalid!("no outer corner of {} admits decontracted edges", dag.vertex_name(v)));
        };
        reduced = next;
        for (j, (w, e)) in added.into_iter().enumerate() {
            decontracted_vertices.push((v, j + 1, w));
            decontracted_edges.push(e);
        }
    }
    let balanced = check_nondegenerate(&reduced, &unit_netflow(&reduced));
    invariant!(balanced.ok(), "decontracted dag is not balanced: {}", balanced.summary());
    Ok(ReductionMap { original: dag.clone(), netflow: a.clone(), reduced, decontracted_vertices, decontracted_edges })
}

/// Adds `k` degree-one vertices joined to `v` at consecutive positions of its
/// in-order (`incoming`) or out-order, and re-derives the terminal order.
fn attach(
    dag: &EmbeddedDag,
    v: VertexId,
    k: usize,
    pos: usize,
    incoming: bool,
) -> std::result::Result<(EmbeddedDag, Vec<(VertexId, EdgeId)>), String> {
    let mut next = dag.clone();
    let base = dag.vertex_name(v).to_string();
    let mut added = Vec::new();
    for j in 0..k {
        let w = next.push_vertex(next.fresh_vertex_name(&format!("{base}.{}", j + 1)));
        let name = next.fresh_edge_name(&format!("{base}.{}", j + 1));
        let e = if incoming { next.push_edge(name, w, 0, v, pos + j) } else { next.push_edge(name, v, pos + j, w, 0) };
        added.push((w, e));
    }
    // Provisional terminal lists that keep the component order; the exact
    // order within each component is read off the outer face below.
    let new_vertices: Vec<VertexId> = added.iter().map(|a| a.0).collect();
    let mut sources = Vec::new();
    for &s in dag.sources() {
        if incoming && s == v {
            sources.extend(&new_vertices);
        }
        if next.ins(s).is_empty() {
            sources.push(s);
        }
    }
    if incoming && !dag.sources().contains(&v) {
        sources.extend(&new_vertices);
    }
    let mut sinks: Vec<VertexId> = dag.sinks().iter().copied().filter(|&t| next.outs(t).is_empty()).collect();
    if !incoming {
        sinks.extend(&new_vertices);
    }
    next.set_terminals(sources, sinks);
    let emb_faces = crate::embedding::trace_faces(
        &next,
        &crate::embedding::derive_rotation_system(&next).map_err(|e| e.to_string())?,
    );
    let (order, _) = derive_terminal_order(&next, &emb_faces)?;
    next.set_terminals(order.sources, order.sinks);
    let report = validate_strong_planarity(&next);
    if !report.ok() {
        return Err(report.summary());
    }
    Ok((next, added))
}

impl ReductionMap {
    /// Restricts a unit flow of the reduced DAG to the original edges.
    pub fn restrict_flow(&self, f: &FlowVector) -> Result<FlowVector> {
        f.check_shape(&self.reduced)?;
        let unit = unit_netflow(&self.reduced);
        let one = BigRational::from_integer(1.into());
        if !f.is_nonnegative() || f.strength(&self.reduced, &unit) != Some(one) {
            return Err(invalid!("not a unit flow of the reduced dag"));
        }
        Ok(FlowVector::new(f.values[..self.original.num_edges()].to_vec()))
    }

    /// Extends an `a`-flow of the original by one unit on every decontracted
    /// edge.
    pub fn lift_flow(&self, f: &FlowVector) -> Result<FlowVector> {
        f.check_shape(&self.original)?;
        let expected: Vec<BigRational> =
            self.netflow.values.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        if !f.is_nonnegative() || f.netflow(&self.original) != expected {
            return Err(invalid!("flow does not realize the netflow of the original dag"));
        }
        let mut values = f.values.clone();
        values.resize(self.reduced.num_edges(), BigRational::from_integer(1.into()));
        Ok(FlowVector::new(values))
    }
}

/// A balanced DAG with a new source below all sources and a new sink above
/// all sinks. Base vertices and edges keep their indices; edge `E + i` joins
/// the new source to the `i`-th source and edge `E + m + i` joins the `i`-th
/// sink to the new sink.
#[derive(Clone, Debug)]
pub struct TwoPointExtension {
    pub base: EmbeddedDag,
    pub extended: EmbeddedDag,
    pub zero_vertex: VertexId,
    pub one_vertex: VertexId,
    pub extension_edges: Vec<EdgeId>,
}

pub fn two_point_extend(dag: &EmbeddedDag) -> Result<TwoPointExtension> {
    let report = validate_strong_planarity(dag);
    if !report.ok() {
        return Err(invalid!("not strongly planar: {}", report.summary()));
    }
    let report = check_nondegenerate(dag, &unit_netflow(dag));
    if !report.ok() {
        return Err(invalid!("not balanced: {}", report.summary()));
    }
    let mut ext = dag.clone();
    let zero = ext.push_vertex(ext.fresh_vertex_name("0^"));
    let one = ext.push_vertex(ext.fresh_vertex_name("1^"));
    let mut extension_edges = Vec::new();
    for (i, &s) in dag.sources().iter().enumerate() {
        let name = ext.fresh_edge_name(&format!("0^-{}", dag.vertex_name(s)));
        extension_edges.push(ext.push_edge(name, zero, i, s, 0));
    }
    for (i, &t) in dag.sinks().iter().enumerate() {
        let name = ext.fresh_edge_name(&format!("{}-1^", dag.vertex_name(t)));
        extension_edges.push(ext.push_edge(name, t, 0, one, i));
    }
    ext.set_terminals(vec![zero], vec![one]);
    let report = validate_strong_planarity(&ext);
    invariant!(report.ok(), "two-point extension is not strongly planar: {}", report.summary());
    Ok(TwoPointExtension { base: dag.clone(), extended: ext, zero_vertex: zero, one_vertex: one, extension_edges })
}

impl TwoPointExtension {
    pub fn num_sources(&self) -> usize {
        self.base.sources().len()
    }

    /// Extends a flow of strength `S` on the base by `S` on every extension
    /// edge.
    pub fn hat_flow(&self, f: &FlowVector) -> Result<FlowVector> {
        f.check_shape(&self.base)?;
        let unit = unit_netflow(&self.base);
        let strength =
            f.strength(&self.base, &unit).ok_or_else(|| invalid!("flow is not a multiple of the unit netflow"))?;
        if !f.is_nonnegative() {
            return Err(invalid!("flow has a negative entry"));
        }
        let mut values = f.values.clone();
        values.resize(self.extended.num_edges(), strength);
        Ok(FlowVector::new(values))
    }

    pub fn hat_int_flow(&self, f: &[i64], strength: i64) -> Vec<i64> {
        let mut values = f.to_vec();
        values.resize(self.extended.num_edges(), strength);
        values
    }

    /// Drops the extension edges.
    pub fn unhat_flow(&self, f: &FlowVector) -> FlowVector {
        FlowVector::new(f.values[..self.base.num_edges()].to_vec())
    }

    pub fn hat_route(&self, p: &Route) -> Result<Route> {
        p.check(&self.base)?;
        let i = self.base.source_index(p.source(&self.base)).ok_or_else(|| invalid!("route source is not listed"))?;
        let j = self.base.sink_index(p.sink(&self.base)).ok_or_else(|| invalid!("route sink is not listed"))?;
        let m = self.num_sources();
        let mut edges = vec![self.extension_edges[i]];
        edges.extend(&p.edges);
        edges.push(self.extension_edges[m + j]);
        Ok(Route::new(edges))
    }

    pub fn unhat_route(&self, p: &Route) -> Result<Route> {
        if p.edges.len() < 3 {
            return Err(Error::InvalidInput("not a route of the extension".into()));
        }
        Ok(Route::new(p.edges[1..p.edges.len() - 1].to_vec()))
    }
}
