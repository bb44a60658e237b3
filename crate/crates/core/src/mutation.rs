//! Mutations between adjacent maximal layering-cliques and the framing
//! poset they generate.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::error::{invalid, invariant, Error, Result};
use crate::layerings::{Framing, LayeringClique, LayeringId, RouteId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MutationKind {
    Shuffle,
    Rotation,
    Realignment,
}

impl MutationKind {
    pub fn name(self) -> &'static str {
        match self {
            MutationKind::Shuffle => "shuffle",
            MutationKind::Rotation => "rotation",
            MutationKind::Realignment => "realignment",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
        }
    }
}

/// How `L` arises from `K`: the layering at position `removed` of `K` is
/// exchanged for the one at position `added` of `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub kind: MutationKind,
    pub direction: Direction,
    pub removed: usize,
    pub added: usize,
}

/// Source indices where a layering differs from its neighbours in a clique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct UpDownIndex {
    pub up: Option<usize>,
    pub down: Option<usize>,
    pub updown: Option<usize>,
}

fn check_maximal(framing: &Framing, k: &LayeringClique) -> Result<()> {
    if k.layerings.len() != framing.dimension + 1 || !framing.is_clique(&k.layerings) {
        return Err(invalid!("not a maximal layering-clique"));
    }
    Ok(())
}

/// The single source index where two layerings covering each other differ.
fn differing_index(framing: &Framing, a: LayeringId, b: LayeringId) -> Result<usize> {
    let (p, q) = (&framing.layerings[a], &framing.layerings[b]);
    let diff: Vec<usize> = (0..p.len()).filter(|&i| p[i] != q[i]).collect();
    invariant!(diff.len() == 1, "covering layerings {a} and {b} differ at {} sources", diff.len());
    Ok(diff[0])
}

pub fn up_down_indices(framing: &Framing, k: &LayeringClique, j: usize) -> Result<UpDownIndex> {
    check_maximal(framing, k)?;
    let s = k.layerings.len();
    if s < 2 {
        return Err(invalid!("a clique of a point has no covering layerings"));
    }
    if j >= s {
        return Err(invalid!("position {j} is outside the clique"));
    }
    let up = if j + 1 < s { Some(differing_index(framing, k.layerings[j], k.layerings[j + 1])?) } else { None };
    let down = if j > 0 { Some(differing_index(framing, k.layerings[j], k.layerings[j - 1])?) } else { None };
    let updown = match (up, down) {
        (Some(u), Some(d)) => (u == d).then_some(u),
        (u, d) => u.or(d),
    };
    Ok(UpDownIndex { up, down, updown })
}

pub fn adjacent(k: &LayeringClique, l: &LayeringClique) -> bool {
    let (a, b): (BTreeSet<_>, BTreeSet<_>) = (k.layerings.iter().collect(), l.layerings.iter().collect());
    a.difference(&b).count() == 1 && b.difference(&a).count() == 1
}

fn routes_of(framing: &Framing, k: &LayeringClique) -> BTreeSet<RouteId> {
    k.layerings.iter().flat_map(|&id| framing.layerings[id].iter().copied()).collect()
}

/// Whether every route of the layering at position `i` also occurs in
/// another layering of the clique.
fn routes_shared(framing: &Framing, k: &LayeringClique, i: usize) -> bool {
    let others: BTreeSet<RouteId> = k
        .layerings
        .iter()
        .enumerate()
        .filter(|&(pos, _)| pos != i)
        .flat_map(|(_, &id)| framing.layerings[id].iter().copied())
        .collect();
    framing.layerings[k.layerings[i]].iter().all(|r| others.contains(r))
}

/// The layering replacing position `i` in a shuffle.
fn shuffle_target(framing: &Framing, k: &LayeringClique, i: usize) -> Result<LayeringId> {
    let s = k.layerings.len();
    let ud = up_down_indices(framing, k, i)?;
    invariant!(0 < i && i + 1 < s, "shuffle at an end of the clique");
    let (up, down) = (ud.up.unwrap(), ud.down.unwrap());
    invariant!(up != down, "shuffle with equal up and down indices");
    let mut r = framing.layerings[k.layerings[i]].clone();
    r[up] = framing.layerings[k.layerings[i + 1]][up];
    r[down] = framing.layerings[k.layerings[i - 1]][down];
    let layering = crate::layerings::Layering { routes: r.iter().map(|&x| framing.routes[x].clone()).collect() };
    framing
        .layering_id(&layering)
        .ok_or_else(|| Error::InternalInvariantViolated("shuffled routes do not form a layering".into()))
}

pub fn classify_mutation(framing: &Framing, k: &LayeringClique, l: &LayeringClique) -> Result<Mutation> {
    check_maximal(framing, k)?;
    check_maximal(framing, l)?;
    if !adjacent(k, l) {
        return Err(invalid!("cliques are not adjacent"));
    }
    let s = k.layerings.len();
    let i = k.layerings.iter().position(|x| !l.layerings.contains(x)).unwrap();
    let j = l.layerings.iter().position(|x| !k.layerings.contains(x)).unwrap();

    if routes_shared(framing, k, i) {
        let r = shuffle_target(framing, k, i)?;
        invariant!(r == l.layerings[j] && i == j, "shuffle formula disagrees with the adjacent clique");
        let ud = up_down_indices(framing, k, i)?;
        let direction = if ud.up < ud.down { Direction::Down } else { Direction::Up };
        return Ok(Mutation { kind: MutationKind::Shuffle, direction, removed: i, added: j });
    }

    let u = up_down_indices(framing, k, i)?.updown;
    let v = up_down_indices(framing, l, j)?.updown;
    let (Some(u), Some(v)) = (u, v) else {
        return Err(Error::InternalInvariantViolated("exchanged layering has no private route".into()));
    };
    let p = framing.layerings[k.layerings[i]][u];
    let q = framing.layerings[l.layerings[j]][v];
    let mut expected = routes_of(framing, k);
    expected.remove(&p);
    expected.insert(q);
    invariant!(routes_of(framing, l) == expected, "routes of adjacent cliques differ by more than one route");
    invariant!(!framing.routes_compatible(p, q), "exchanged routes are compatible");

    let (kind, direction) = if 0 < i && i + 1 < s {
        invariant!(i == j && u == v, "rotation changes the position or source index");
        let down = framing.route_rank(p) > framing.route_rank(q);
        (MutationKind::Rotation, if down { Direction::Down } else { Direction::Up })
    } else if i + 1 == s {
        invariant!(j == 0 && v == u + 1, "down-realignment index relations fail");
        (MutationKind::Realignment, Direction::Down)
    } else {
        invariant!(j + 1 == s && u == v + 1, "up-realignment index relations fail");
        (MutationKind::Realignment, Direction::Up)
    };
    Ok(Mutation { kind, direction, removed: i, added: j })
}

/// The maximal clique obtained by exchanging `p`, or `None` when `p` sits
/// opposite a boundary facet.
pub fn mutate(framing: &Framing, k: &LayeringClique, p: LayeringId) -> Result<Option<LayeringClique>> {
    check_maximal(framing, k)?;
    let Some(i) = k.layerings.iter().position(|&x| x == p) else {
        return Err(invalid!("layering {p} is not in the clique"));
    };
    if k.layerings.len() < 2 {
        return Ok(None);
    }
    let rest: Vec<LayeringId> = k.layerings.iter().copied().filter(|&x| x != p).collect();
    let candidates: Vec<LayeringId> = if routes_shared(framing, k, i) {
        vec![shuffle_target(framing, k, i)?]
    } else {
        (0..framing.num_layerings())
            .filter(|&r| r != p && !rest.contains(&r) && rest.iter().all(|&x| framing.compatible(x, r)))
            .collect()
    };
    invariant!(candidates.len() <= 1, "facet is shared by more than two cells");
    let Some(&r) = candidates.first() else { return Ok(None) };
    let mut layerings = rest;
    layerings.push(r);
    framing.sort_chain(&mut layerings)?;
    invariant!(framing.is_clique(&layerings), "mutated set is not a clique");
    Ok(Some(LayeringClique { layerings }))
}

pub fn cmp_post_source(framing: &Framing, p: LayeringId, q: LayeringId) -> Ordering {
    framing.cmp_post_source(&framing.layerings[p], &framing.layerings[q])
}

pub fn cmp_post_source_cliques(framing: &Framing, k: &LayeringClique, l: &LayeringClique) -> Result<Ordering> {
    if k.layerings.len() != l.layerings.len() {
        return Err(invalid!("cliques have different sizes"));
    }
    Ok((0..k.layerings.len())
        .rev()
        .find(|&j| k.layerings[j] != l.layerings[j])
        .map_or(Ordering::Equal, |j| cmp_post_source(framing, k.layerings[j], l.layerings[j])))
}

/// One down-mutation: `to` is a down-mutation of `from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DownEdge {
    pub from: usize,
    pub to: usize,
    pub kind: MutationKind,
    pub cover: bool,
}

#[derive(Clone, Debug)]
pub struct FramingPoset {
    /// Maximal cliques in increasing post-source order.
    pub nodes: Vec<LayeringClique>,
    pub down_edges: Vec<DownEdge>,
}

impl FramingPoset {
    pub fn covers(&self) -> impl Iterator<Item = &DownEdge> {
        self.down_edges.iter().filter(|e| e.cover)
    }

    /// Mutation edges that are implied by longer chains.
    pub fn non_cover_edges(&self) -> impl Iterator<Item = &DownEdge> {
        self.down_edges.iter().filter(|e| !e.cover)
    }

    /// Nodes with no down-mutation into them from above.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&n| !self.down_edges.iter().any(|e| e.to == n)).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&n| !self.down_edges.iter().any(|e| e.from == n)).collect()
    }
}

/// Pairs of maximal cliques sharing a facet.
pub fn adjacent_pairs(nodes: &[LayeringClique]) -> Result<Vec<(usize, usize)>> {
    let mut by_facet: HashMap<Vec<LayeringId>, Vec<usize>> = HashMap::new();
    for (n, k) in nodes.iter().enumerate() {
        for drop in 0..k.layerings.len() {
            let mut facet = k.layerings.clone();
            facet.remove(drop);
            facet.sort_unstable();
            by_facet.entry(facet).or_default().push(n);
        }
    }
    let mut pairs = Vec::new();
    for cells in by_facet.values() {
        invariant!(cells.len() <= 2, "a facet lies in {} cells", cells.len());
        if let [a, b] = cells[..] {
            pairs.push((a.min(b), a.max(b)));
        }
    }
    pairs.sort_unstable();
    Ok(pairs)
}

pub fn build_framing_poset(framing: &Framing, limit: usize) -> Result<FramingPoset> {
    let nodes = framing.maximal_cliques(limit)?;
    let mut down_edges = Vec::new();
    for (a, b) in adjacent_pairs(&nodes)? {
        let forward = classify_mutation(framing, &nodes[a], &nodes[b])?;
        let backward = classify_mutation(framing, &nodes[b], &nodes[a])?;
        invariant!(
            forward.kind == backward.kind && forward.direction == backward.direction.reversed(),
            "mutation between cliques {a} and {b} is not symmetric"
        );
        let (from, to) = if forward.direction == Direction::Down { (a, b) } else { (b, a) };
        invariant!(
            cmp_post_source_cliques(framing, &nodes[to], &nodes[from])? == Ordering::Less,
            "down-mutation from clique {from} to {to} does not decrease the post-source order"
        );
        down_edges.push(DownEdge { from, to, kind: forward.kind, cover: true });
    }
    down_edges.sort_by_key(|e| (e.from, e.to));

    // Every edge goes to a smaller index, so reachability can be filled in
    // increasing index order.
    let n = nodes.len();
    let words = n.div_ceil(64).max(1);
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in &down_edges {
        below[e.from].push(e.to);
    }
    let mut reach = vec![vec![0u64; words]; n];
    for x in 0..n {
        for &y in &below[x] {
            invariant!(y < x, "down edge does not decrease the node index");
            let (head, tail) = reach.split_at_mut(x);
            let row = &mut tail[0];
            row[y / 64] |= 1 << (y % 64);
            for (w, r) in row.iter_mut().zip(&head[y]) {
                *w |= r;
            }
        }
    }
    for e in down_edges.iter_mut() {
        let implied = below[e.from].iter().any(|&z| z != e.to && reach[z][e.to / 64] >> (e.to % 64) & 1 == 1);
        e.cover = !implied;
    }
    Ok(FramingPoset { nodes, down_edges })
}
