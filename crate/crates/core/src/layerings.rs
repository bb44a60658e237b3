//! Layerings, their integer unit flows, layering compatibility, maximal
//! layering-cliques and the unique layering-clique decomposition of flows.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::dag::{unit_netflow, EmbeddedDag};
use crate::error::{invalid, invariant, Error, Result};
use crate::flow::{enumerate_integer_flows, FlowVector, IntFlow};
use crate::lattice;
use crate::reduction::{two_point_extend, TwoPointExtension};
use crate::routes::{
    are_compatible, cmp_routes_at_source, dkk_decompose, enumerate_routes, horizontal_index, indicator, Route,
};

pub type RouteId = usize;
pub type LayeringId = usize;

/// One horizontal route per source index, pairwise compatible.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layering {
    pub routes: Vec<Route>,
}

/// Sum of the indicator vectors of the routes.
pub fn j_flow(dag: &EmbeddedDag, layering: &Layering) -> IntFlow {
    let mut f = vec![0; dag.num_edges()];
    for r in &layering.routes {
        for (x, y) in f.iter_mut().zip(indicator(r, dag)) {
            *x += y;
        }
    }
    f
}

/// Splits the units of a layered integer flow on the extension into `S`
/// layerings: at every source the units are sorted by the post-order and the
/// j-th layering takes the j-th unit at each source.
fn layerings_of_units(ext: &TwoPointExtension, f: &[i64], strength: usize) -> Result<Vec<Layering>> {
    let hat = ext.hat_int_flow(f, strength as i64);
    let dec = dkk_decompose(&ext.extended, &hat)?;
    let m = ext.num_sources();
    let mut by_source: Vec<Vec<Route>> = vec![Vec::new(); m];
    for unit in dec.units() {
        let i = ext
            .extension_edges
            .iter()
            .position(|&e| e == unit.edges[0])
            .ok_or_else(|| Error::InternalInvariantViolated("unit does not start with an extension edge".into()))?;
        let base = ext.unhat_route(unit)?;
        invariant!(
            horizontal_index(&ext.base, &base) == Some(i),
            "layered flow produced the non-horizontal route {:?}",
            base.names(&ext.base)
        );
        by_source[i].push(base);
    }
    for (i, units) in by_source.iter_mut().enumerate() {
        invariant!(units.len() == strength, "source {i} carries {} units, expected {strength}", units.len());
        units.sort_by(|p, q| cmp_routes_at_source(&ext.base, p, q));
    }
    Ok((0..strength).map(|j| Layering { routes: by_source.iter().map(|u| u[j].clone()).collect() }).collect())
}

/// The layering whose routes sum to the integer unit flow `f`.
pub fn j_inverse(ext: &TwoPointExtension, f: &[i64]) -> Result<Layering> {
    let unit = unit_netflow(&ext.base);
    let g = FlowVector::from_integers(f);
    if f.len() != ext.base.num_edges()
        || !g.is_nonnegative()
        || g.strength(&ext.base, &unit) != Some(BigRational::from_integer(1.into()))
    {
        return Err(invalid!("not an integer unit flow"));
    }
    let layering = layerings_of_units(ext, f, 1)?.pop().expect("one layering");
    invariant!(j_flow(&ext.base, &layering) == f, "layering does not reproduce its flow");
    Ok(layering)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayeringRelation {
    Below,
    Equal,
    Above,
    Incompatible,
}

/// Compares two layerings without any precomputed tables.
pub fn cmp_layerings(dag: &EmbeddedDag, p: &Layering, q: &Layering) -> LayeringRelation {
    if p == q {
        return LayeringRelation::Equal;
    }
    let crossing = p.routes.iter().any(|x| q.routes.iter().any(|y| !are_compatible(dag, x, y)));
    if crossing {
        return LayeringRelation::Incompatible;
    }
    let orders: Vec<Ordering> =
        p.routes.iter().zip(&q.routes).map(|(x, y)| cmp_routes_at_source(dag, x, y)).collect();
    relation_from(&orders)
}

fn relation_from(orders: &[Ordering]) -> LayeringRelation {
    let below = orders.iter().all(|&o| o != Ordering::Greater);
    let above = orders.iter().all(|&o| o != Ordering::Less);
    match (below, above) {
        (true, true) => LayeringRelation::Equal,
        (true, false) => LayeringRelation::Below,
        (false, true) => LayeringRelation::Above,
        (false, false) => LayeringRelation::Incompatible,
    }
}

/// A set of pairwise compatible layerings, listed in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LayeringClique {
    pub layerings: Vec<LayeringId>,
}

/// A positive combination of a layering-clique, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeringDecomposition {
    pub terms: Vec<(LayeringId, BigRational)>,
}

/// All layerings of a balanced DAG, interned with the tables needed to
/// compare them quickly.
#[derive(Clone, Debug)]
pub struct Framing {
    pub dag: EmbeddedDag,
    pub extension: TwoPointExtension,
    /// Horizontal routes, grouped by source index and sorted by the
    /// post-order at their source.
    pub routes: Vec<Route>,
    route_source: Vec<usize>,
    route_rank: Vec<usize>,
    route_index: HashMap<Route, RouteId>,
    route_compatible: Vec<Vec<bool>>,
    /// Layerings as route ids, sorted by the post-source order.
    pub layerings: Vec<Vec<RouteId>>,
    /// Integer unit flow of each layering.
    pub flows: Vec<IntFlow>,
    layering_index: HashMap<Vec<RouteId>, LayeringId>,
    pub dimension: usize,
}

impl Framing {
    pub fn new(dag: &EmbeddedDag, limit: usize) -> Result<Framing> {
        let extension = two_point_extend(dag)?;
        let m = dag.sources().len();
        let mut groups: Vec<Vec<Route>> = vec![Vec::new(); m];
        for r in enumerate_routes(dag, limit)? {
            if let Some(i) = horizontal_index(dag, &r) {
                groups[i].push(r);
            }
        }
        let mut routes = Vec::new();
        let mut route_source = Vec::new();
        let mut route_rank = Vec::new();
        for (i, mut group) in groups.into_iter().enumerate() {
            group.sort_by(|p, q| cmp_routes_at_source(dag, p, q));
            for (rank, r) in group.into_iter().enumerate() {
                routes.push(r);
                route_source.push(i);
                route_rank.push(rank);
            }
        }
        let route_index: HashMap<Route, RouteId> = routes.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let route_compatible: Vec<Vec<bool>> =
            routes.iter().map(|p| routes.iter().map(|q| are_compatible(dag, p, q)).collect()).collect();

        let mut framing = Framing {
            dag: dag.clone(),
            extension,
            routes,
            route_source,
            route_rank,
            route_index,
            route_compatible,
            layerings: Vec::new(),
            flows: Vec::new(),
            layering_index: HashMap::new(),
            dimension: 0,
        };
        let mut pairs = Vec::new();
        for f in enumerate_integer_flows(dag, &unit_netflow(dag), limit)? {
            let layering = j_inverse(&framing.extension, &f)?;
            pairs.push((framing.intern(&layering)?, f));
        }
        pairs.sort_by(|a, b| framing.cmp_post_source(&a.0, &b.0));
        for (k, (ids, f)) in pairs.into_iter().enumerate() {
            framing.layering_index.insert(ids.clone(), k);
            framing.layerings.push(ids);
            framing.flows.push(f);
        }
        let origin = &framing.flows[0];
        let diffs: Vec<Vec<i64>> =
            framing.flows.iter().map(|f| f.iter().zip(origin).map(|(a, b)| a - b).collect()).collect();
        framing.dimension = lattice::rank(&lattice::to_big(&diffs));
        Ok(framing)
    }

    fn intern(&self, layering: &Layering) -> Result<Vec<RouteId>> {
        layering
            .routes
            .iter()
            .map(|r| {
                self.route_index
                    .get(r)
                    .copied()
                    .ok_or_else(|| Error::InternalInvariantViolated("layering route is not horizontal".into()))
            })
            .collect()
    }

    pub fn num_sources(&self) -> usize {
        self.extension.num_sources()
    }

    pub fn num_layerings(&self) -> usize {
        self.layerings.len()
    }

    pub fn layering(&self, id: LayeringId) -> Layering {
        Layering { routes: self.layerings[id].iter().map(|&r| self.routes[r].clone()).collect() }
    }

    pub fn layering_id(&self, layering: &Layering) -> Option<LayeringId> {
        let ids: Option<Vec<RouteId>> = layering.routes.iter().map(|r| self.route_index.get(r).copied()).collect();
        self.layering_index.get(&ids?).copied()
    }

    pub fn route_id(&self, route: &Route) -> Option<RouteId> {
        self.route_index.get(route).copied()
    }

    pub fn route_source(&self, r: RouteId) -> usize {
        self.route_source[r]
    }

    /// Position of a horizontal route among those at its source.
    pub fn route_rank(&self, r: RouteId) -> usize {
        self.route_rank[r]
    }

    pub fn routes_compatible(&self, p: RouteId, q: RouteId) -> bool {
        self.route_compatible[p][q]
    }

    /// Lexicographic comparison from the highest differing source index.
    pub fn cmp_post_source(&self, p: &[RouteId], q: &[RouteId]) -> Ordering {
        (0..p.len())
            .rev()
            .find(|&i| p[i] != q[i])
            .map_or(Ordering::Equal, |i| self.route_rank[p[i]].cmp(&self.route_rank[q[i]]))
    }

    pub fn relation(&self, a: LayeringId, b: LayeringId) -> LayeringRelation {
        if a == b {
            return LayeringRelation::Equal;
        }
        let (p, q) = (&self.layerings[a], &self.layerings[b]);
        if p.iter().any(|&x| q.iter().any(|&y| !self.route_compatible[x][y])) {
            return LayeringRelation::Incompatible;
        }
        let orders: Vec<Ordering> =
            p.iter().zip(q).map(|(&x, &y)| self.route_rank[x].cmp(&self.route_rank[y])).collect();
        relation_from(&orders)
    }

    pub fn compatible(&self, a: LayeringId, b: LayeringId) -> bool {
        self.relation(a, b) != LayeringRelation::Incompatible
    }

    /// Sorts layerings of a clique increasingly; fails if two are not
    /// comparable.
    pub fn sort_chain(&self, ids: &mut [LayeringId]) -> Result<()> {
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                invariant!(self.compatible(a, b), "layerings {a} and {b} are not compatible");
            }
        }
        ids.sort_by(|&a, &b| match self.relation(a, b) {
            LayeringRelation::Below => Ordering::Less,
            LayeringRelation::Above => Ordering::Greater,
            _ => Ordering::Equal,
        });
        Ok(())
    }

    pub fn is_clique(&self, ids: &[LayeringId]) -> bool {
        ids.iter().enumerate().all(|(i, &a)| ids[i + 1..].iter().all(|&b| a != b && self.compatible(a, b)))
    }

    /// Every maximal layering-clique, each sorted increasingly, the list
    /// sorted by the post-source order on cliques.
    pub fn maximal_cliques(&self, limit: usize) -> Result<Vec<LayeringClique>> {
        let n = self.num_layerings();
        let adjacency: Vec<Vec<bool>> =
            (0..n).map(|a| (0..n).map(|b| a != b && self.compatible(a, b)).collect()).collect();
        let mut found = Vec::new();
        bron_kerbosch(&adjacency, &mut Vec::new(), (0..n).collect(), Vec::new(), &mut found, limit)?;
        let mut cliques = Vec::with_capacity(found.len());
        for mut ids in found {
            invariant!(
                ids.len() == self.dimension + 1,
                "maximal clique with {} layerings in dimension {}",
                ids.len(),
                self.dimension
            );
            self.sort_chain(&mut ids)?;
            cliques.push(LayeringClique { layerings: ids });
        }
        cliques.sort_by(|k, l| self.cmp_post_source_cliques(k, l));
        Ok(cliques)
    }

    /// Lexicographic from the highest position where the cliques differ;
    /// layering ids already follow the post-source order.
    pub fn cmp_post_source_cliques(&self, k: &LayeringClique, l: &LayeringClique) -> Ordering {
        let (a, b) = (&k.layerings, &l.layerings);
        (0..a.len().min(b.len())).rev().find(|&j| a[j] != b[j]).map_or(Ordering::Equal, |j| a[j].cmp(&b[j]))
    }

    /// The unique positive layering-clique combination equal to `f`.
    pub fn decompose_flow(&self, f: &FlowVector) -> Result<LayeringDecomposition> {
        f.check_shape(&self.dag)?;
        if !f.is_nonnegative() {
            return Err(invalid!("flow has a negative entry"));
        }
        let strength = f
            .strength(&self.dag, &unit_netflow(&self.dag))
            .ok_or_else(|| invalid!("netflow of the flow is not a multiple of the unit netflow"))?;
        if strength.is_zero() {
            return Ok(LayeringDecomposition { terms: Vec::new() });
        }
        let scale = f.common_denominator();
        let scale_q = BigRational::from_integer(scale.clone());
        let scaled: Option<Vec<i64>> = f.values.iter().map(|x| (x * &scale_q).to_integer().to_i64()).collect();
        let scaled = scaled.ok_or_else(|| invalid!("flow values are too large"))?;
        let units = (strength * &scale_q)
            .to_integer()
            .to_usize()
            .ok_or_else(|| invalid!("flow strength is too large"))?;
        let mut terms: Vec<(LayeringId, BigInt)> = Vec::new();
        for layering in layerings_of_units(&self.extension, &scaled, units)? {
            let id = self.layering_id(&layering).ok_or_else(|| {
                Error::InternalInvariantViolated("assembled routes do not form a known layering".into())
            })?;
            match terms.last_mut() {
                Some((last, c)) if *last == id => *c += 1,
                _ => terms.push((id, BigInt::from(1))),
            }
        }
        for (i, (a, _)) in terms.iter().enumerate() {
            for (b, _) in &terms[i + 1..] {
                invariant!(
                    self.relation(*a, *b) == LayeringRelation::Below,
                    "decomposition support is not an increasing chain"
                );
            }
        }
        Ok(LayeringDecomposition {
            terms: terms.into_iter().map(|(id, c)| (id, BigRational::new(c, scale.clone()))).collect(),
        })
    }

    /// Sum of coefficient times layering flow.
    pub fn recombine(&self, dec: &LayeringDecomposition) -> FlowVector {
        let mut values = vec![BigRational::zero(); self.dag.num_edges()];
        for (id, c) in &dec.terms {
            for (x, &y) in values.iter_mut().zip(&self.flows[*id]) {
                *x += c * BigRational::from_integer(y.into());
            }
        }
        FlowVector::new(values)
    }
}

fn bron_kerbosch(
    adjacency: &[Vec<bool>],
    current: &mut Vec<usize>,
    candidates: Vec<usize>,
    excluded: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> Result<()> {
    if candidates.is_empty() && excluded.is_empty() {
        if out.len() == limit {
            return Err(Error::LimitExceeded { what: "maximal cliques", limit });
        }
        out.push(current.clone());
        return Ok(());
    }
    let pivot = candidates
        .iter()
        .chain(&excluded)
        .copied()
        .max_by_key(|&u| candidates.iter().filter(|&&v| adjacency[u][v]).count())
        .expect("nonempty");
    let branch: Vec<usize> = candidates.iter().copied().filter(|&v| !adjacency[pivot][v]).collect();
    let mut candidates = candidates;
    let mut excluded = excluded;
    for v in branch {
        current.push(v);
        bron_kerbosch(
            adjacency,
            current,
            candidates.iter().copied().filter(|&u| adjacency[v][u]).collect(),
            excluded.iter().copied().filter(|&u| adjacency[v][u]).collect(),
            out,
            limit,
        )?;
        current.pop();
        candidates.retain(|&u| u != v);
        excluded.push(v);
    }
    Ok(())
}

/// All layerings of a balanced DAG, in post-source order.
pub fn enumerate_layerings(dag: &EmbeddedDag, limit: usize) -> Result<Vec<Layering>> {
    let framing = Framing::new(dag, limit)?;
    Ok((0..framing.num_layerings()).map(|i| framing.layering(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(framing: &Framing, id: LayeringId) -> Vec<Vec<String>> {
        framing.layering(id).routes.iter().map(|r| r.names(&framing.dag)).collect()
    }

    #[test]
    fn square_layerings_and_cliques() {
        let framing = Framing::new(&fixtures::square(), 1000).unwrap();
        assert_eq!(framing.num_layerings(), 4);
        assert_eq!(framing.dimension, 2);
        let cliques = framing.maximal_cliques(1000).unwrap();
        assert_eq!(cliques.len(), 2);
        let named: Vec<Vec<Vec<Vec<String>>>> =
            cliques.iter().map(|k| k.layerings.iter().map(|&id| names(&framing, id)).collect()).collect();
        assert_eq!(
            named,
            [
                [[["a1", "b1"]], [["a1", "b2"]], [["a2", "b2"]]],
                [[["a1", "b1"]], [["a2", "b1"]], [["a2", "b2"]]],
            ]
        );
    }

    #[test]
    fn x_dag_has_one_layering() {
        let framing = Framing::new(&fixtures::x_dag(), 1000).unwrap();
        assert_eq!(framing.num_layerings(), 1);
        assert_eq!(framing.dimension, 0);
        assert_eq!(framing.maximal_cliques(10).unwrap(), vec![LayeringClique { layerings: vec![0] }]);
    }

    #[test]
    fn single_edge_is_a_point() {
        let framing = Framing::new(&fixtures::single_edge(), 10).unwrap();
        assert_eq!(framing.maximal_cliques(10).unwrap().len(), 1);
    }

    #[test]
    fn square_crossing_layerings_are_incompatible() {
        let dag = fixtures::square();
        let r = |a: &str, b: &str| Route::new(vec![dag.edge_id(a).unwrap(), dag.edge_id(b).unwrap()]);
        let p = Layering { routes: vec![r("a1", "b2")] };
        let q = Layering { routes: vec![r("a2", "b1")] };
        assert_eq!(cmp_layerings(&dag, &p, &q), LayeringRelation::Incompatible);
        assert_eq!(cmp_layerings(&dag, &p, &p), LayeringRelation::Equal);
        let low = Layering { routes: vec![r("a1", "b1")] };
        assert_eq!(cmp_layerings(&dag, &low, &p), LayeringRelation::Below);
        assert_eq!(cmp_layerings(&dag, &p, &low), LayeringRelation::Above);
    }

    #[test]
    fn square_half_flow_decomposes_on_the_diagonal() {
        let framing = Framing::new(&fixtures::square(), 10).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let f = FlowVector::new(vec![half.clone(); 4]);
        let dec = framing.decompose_flow(&f).unwrap();
        let got: Vec<(Vec<Vec<String>>, BigRational)> =
            dec.terms.iter().map(|(id, c)| (names(&framing, *id), c.clone())).collect();
        let route = |a: &str, b: &str| vec![vec![a.to_string(), b.to_string()]];
        assert_eq!(got, vec![(route("a1", "b1"), half.clone()), (route("a2", "b2"), half)]);
        assert_eq!(framing.recombine(&dec), f);
    }

    #[test]
    fn layering_flow_roundtrip() {
        for dag in [fixtures::square(), fixtures::shuffles(), fixtures::x_dag_parallel()] {
            let framing = Framing::new(&dag, 1000).unwrap();
            for id in 0..framing.num_layerings() {
                let layering = framing.layering(id);
                assert_eq!(j_flow(&dag, &layering), framing.flows[id]);
                assert_eq!(j_inverse(&framing.extension, &framing.flows[id]).unwrap(), layering);
                let dec = framing.decompose_flow(&FlowVector::from_integers(&framing.flows[id])).unwrap();
                assert_eq!(dec.terms, vec![(id, BigRational::from_integer(1.into()))]);
            }
        }
    }

    #[test]
    fn j_inverse_rejects_non_unit_flows() {
        let dag = fixtures::square();
        let ext = two_point_extend(&dag).unwrap();
        assert!(j_inverse(&ext, &[2, 0, 2, 0]).is_err());
        assert!(j_inverse(&ext, &[1, 0, 0, 1, 0]).is_err());
    }

    #[test]
    fn shuffles_form_a_cube() {
        let framing = Framing::new(&fixtures::shuffles(), 1000).unwrap();
        assert_eq!(framing.num_layerings(), 8);
        assert_eq!(framing.dimension, 3);
        assert_eq!(framing.maximal_cliques(1000).unwrap().len(), 6);
    }
}
