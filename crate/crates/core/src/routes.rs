//! Routes, the post/pre orders of a planar framing, route compatibility and
//! the unique clique decomposition of integer flows on one-source DAGs.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::dag::{EdgeId, EmbeddedDag, VertexId};
use crate::error::{invalid, invariant, Error, Result};

/// A directed path from a source to a sink, as its edge sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Route {
    pub edges: Vec<EdgeId>,
}

impl Route {
    pub fn new(edges: Vec<EdgeId>) -> Self {
        Route { edges }
    }

    pub fn source(&self, dag: &EmbeddedDag) -> VertexId {
        dag.tail(self.edges[0])
    }

    pub fn sink(&self, dag: &EmbeddedDag) -> VertexId {
        dag.head(*self.edges.last().unwrap())
    }

    /// Vertices along the route, source first.
    pub fn vertices(&self, dag: &EmbeddedDag) -> Vec<VertexId> {
        let mut vs = vec![self.source(dag)];
        vs.extend(self.edges.iter().map(|&e| dag.head(e)));
        vs
    }

    pub fn check(&self, dag: &EmbeddedDag) -> Result<()> {
        let Some(&first) = self.edges.first() else {
            return Err(invalid!("a route needs at least one edge"));
        };
        if self.edges.iter().any(|e| e.0 >= dag.num_edges()) {
            return Err(invalid!("route references a missing edge"));
        }
        if !dag.ins(dag.tail(first)).is_empty() {
            return Err(invalid!("route does not start at a source"));
        }
        if !dag.outs(self.sink(dag)).is_empty() {
            return Err(invalid!("route does not end at a sink"));
        }
        if self.edges.windows(2).any(|w| dag.head(w[0]) != dag.tail(w[1])) {
            return Err(invalid!("route edges are not contiguous"));
        }
        Ok(())
    }

    pub fn names(&self, dag: &EmbeddedDag) -> Vec<String> {
        self.edges.iter().map(|&e| dag.edge_name(e).to_string()).collect()
    }
}

/// All routes, by depth-first search from each source (bottom-to-top) taking
/// out-edges bottom-to-top.
pub fn enumerate_routes(dag: &EmbeddedDag, limit: usize) -> Result<Vec<Route>> {
    fn walk(
        dag: &EmbeddedDag,
        v: VertexId,
        path: &mut Vec<EdgeId>,
        out: &mut Vec<Route>,
        limit: usize,
    ) -> Result<()> {
        if dag.outs(v).is_empty() {
            if out.len() == limit {
                return Err(Error::LimitExceeded { what: "routes", limit });
            }
            out.push(Route::new(path.clone()));
            return Ok(());
        }
        for &e in dag.outs(v) {
            path.push(e);
            walk(dag, dag.head(e), path, out, limit)?;
            path.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    for &s in dag.sources() {
        walk(dag, s, &mut Vec::new(), &mut out, limit)?;
    }
    Ok(out)
}

pub fn indicator(route: &Route, dag: &EmbeddedDag) -> Vec<i64> {
    let mut x = vec![0; dag.num_edges()];
    for &e in &route.edges {
        x[e.0] += 1;
    }
    x
}

/// Post-`v` order of two paths leaving `v`: the first out-edges where they
/// diverge are compared bottom-to-top.
pub fn cmp_post(dag: &EmbeddedDag, v: VertexId, p: &[EdgeId], q: &[EdgeId]) -> Result<Ordering> {
    for path in [p, q] {
        if path.first().is_some_and(|&e| dag.tail(e) != v) {
            return Err(invalid!("path does not start at {}", dag.vertex_name(v)));
        }
    }
    Ok(post_unchecked(dag, p, q))
}

/// Pre-`v` order of two paths entering `v`: the last in-edges where they
/// diverge are compared bottom-to-top.
pub fn cmp_pre(dag: &EmbeddedDag, v: VertexId, p: &[EdgeId], q: &[EdgeId]) -> Result<Ordering> {
    for path in [p, q] {
        if path.last().is_some_and(|&e| dag.head(e) != v) {
            return Err(invalid!("path does not end at {}", dag.vertex_name(v)));
        }
    }
    Ok(pre_unchecked(dag, p, q))
}

fn post_unchecked(dag: &EmbeddedDag, p: &[EdgeId], q: &[EdgeId]) -> Ordering {
    match p.iter().zip(q).find(|(a, b)| a != b) {
        Some((&a, &b)) => dag.out_position(a).cmp(&dag.out_position(b)),
        None => p.len().cmp(&q.len()),
    }
}

fn pre_unchecked(dag: &EmbeddedDag, p: &[EdgeId], q: &[EdgeId]) -> Ordering {
    match p.iter().rev().zip(q.iter().rev()).find(|(a, b)| a != b) {
        Some((&a, &b)) => dag.in_position(a).cmp(&dag.in_position(b)),
        None => p.len().cmp(&q.len()),
    }
}

/// Compares routes by the post-order at their common source.
pub fn cmp_routes_at_source(dag: &EmbeddedDag, p: &Route, q: &Route) -> Ordering {
    post_unchecked(dag, &p.edges, &q.edges)
}

/// `None` if the routes are compatible, otherwise a vertex where they cross.
pub fn incompatibility_witness(dag: &EmbeddedDag, p: &Route, q: &Route) -> Option<VertexId> {
    if p == q {
        return None;
    }
    // Cut points: position k in a route means the vertex after k edges.
    let mut at_q = vec![usize::MAX; dag.num_vertices()];
    for (k, v) in q.vertices(dag).into_iter().enumerate() {
        at_q[v.0] = k;
    }
    for (i, v) in p.vertices(dag).into_iter().enumerate() {
        let j = at_q[v.0];
        if j == usize::MAX {
            continue;
        }
        let pre = pre_unchecked(dag, &p.edges[..i], &q.edges[..j]);
        let post = post_unchecked(dag, &p.edges[i..], &q.edges[j..]);
        if pre != Ordering::Equal && post != Ordering::Equal && pre != post {
            return Some(v);
        }
    }
    None
}

pub fn are_compatible(dag: &EmbeddedDag, p: &Route, q: &Route) -> bool {
    incompatibility_witness(dag, p, q).is_none()
}

/// The index `i` when the route runs from the `i`-th source to the `i`-th
/// sink (both counted bottom-to-top from zero).
pub fn horizontal_index(dag: &EmbeddedDag, route: &Route) -> Option<usize> {
    let i = dag.source_index(route.source(dag))?;
    (dag.sink_index(route.sink(dag)) == Some(i)).then_some(i)
}

/// Routes with positive integer multiplicities, sorted by the post-order at
/// the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RouteDecomposition {
    pub terms: Vec<(Route, u64)>,
}

impl RouteDecomposition {
    pub fn recombine(&self, num_edges: usize) -> Vec<i64> {
        let mut f = vec![0; num_edges];
        for (r, c) in &self.terms {
            for &e in &r.edges {
                f[e.0] += *c as i64;
            }
        }
        f
    }

    /// Each route repeated by its multiplicity.
    pub fn units(&self) -> impl Iterator<Item = &Route> {
        self.terms.iter().flat_map(|(r, c)| std::iter::repeat_n(r, *c as usize))
    }
}

/// Decomposes a nonnegative integer flow on a DAG with one source and one
/// sink into pairwise compatible routes.
///
/// Flow units are pushed through the vertices in topological order. The units
/// entering a vertex are ordered by their in-edges bottom-to-top (units on one
/// edge keep the order they left its tail in, which is their pre-order), and
/// the k-th unit leaves on the k-th outgoing slot bottom-to-top.
pub fn dkk_decompose(dag: &EmbeddedDag, f: &[i64]) -> Result<RouteDecomposition> {
    if dag.sources().len() != 1 || dag.sinks().len() != 1 {
        return Err(invalid!("decomposition needs exactly one source and one sink"));
    }
    if f.len() != dag.num_edges() {
        return Err(invalid!("flow has {} entries for {} edges", f.len(), dag.num_edges()));
    }
    if f.iter().any(|&x| x < 0) {
        return Err(invalid!("flow has a negative entry"));
    }
    let (source, sink) = (dag.sources()[0], dag.sinks()[0]);
    let net = crate::flow::int_netflow(dag, f);
    let strength = net[source.0];
    for v in dag.vertex_ids() {
        let expected = if v == source {
            strength
        } else if v == sink {
            -strength
        } else {
            0
        };
        if net[v.0] != expected {
            return Err(invalid!("flow is not conserved at {}", dag.vertex_name(v)));
        }
    }
    let order = dag.topological_order().ok_or_else(|| invalid!("the dag has a cycle"))?;

    let mut paths: Vec<Vec<EdgeId>> = Vec::new();
    let mut on_edge: Vec<Vec<usize>> = vec![Vec::new(); dag.num_edges()];
    let mut finished = Vec::new();
    for v in order {
        let arriving: Vec<usize> = if v == source {
            paths.extend((0..strength).map(|_| Vec::new()));
            (0..strength as usize).collect()
        } else {
            dag.ins(v).iter().flat_map(|&e| std::mem::take(&mut on_edge[e.0])).collect()
        };
        if v == sink {
            finished.extend(arriving);
            continue;
        }
        let mut next = arriving.into_iter();
        for &e in dag.outs(v) {
            for _ in 0..f[e.0] {
                let unit = next.next().expect("conservation checked");
                paths[unit].push(e);
                on_edge[e.0].push(unit);
            }
        }
    }

    let mut counts: BTreeMap<Vec<EdgeId>, u64> = BTreeMap::new();
    for unit in finished {
        *counts.entry(std::mem::take(&mut paths[unit])).or_default() += 1;
    }
    let mut terms: Vec<(Route, u64)> = counts.into_iter().map(|(p, c)| (Route::new(p), c)).collect();
    terms.sort_by(|a, b| cmp_routes_at_source(dag, &a.0, &b.0));
    for (i, (p, _)) in terms.iter().enumerate() {
        for (q, _) in &terms[i + 1..] {
            invariant!(
                are_compatible(dag, p, q),
                "decomposition produced crossing routes {:?} and {:?}",
                p.names(dag),
                q.names(dag)
            );
        }
    }
    Ok(RouteDecomposition { terms })
}
