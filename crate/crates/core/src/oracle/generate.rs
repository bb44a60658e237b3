use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dag::{EdgeId, EdgeRecord, EmbeddedDag, VertexId, VertexRecord};
use crate::embedding::{in_slots, out_slots, sink_corner, source_corner, Dart, Embedding};
use crate::error::{Error, Result};
use crate::validate::validate_strong_planarity;

#[derive(Clone, Copy, Debug)]
enum Move {
    Subdivide,
    Duplicate,
    ParallelPath,
    Stack,
    Cross,
}

const MOVES: [(Move, u32); 5] =
    [(Move::Subdivide, 3), (Move::Duplicate, 3), (Move::ParallelPath, 3), (Move::Stack, 1), (Move::Cross, 3)];

/// A random strongly planar balanced dag with at most `max_edges` edges and
/// `max_sources` sources, grown from stacked single edges by local moves
/// that keep the embedding valid. Deterministic in the seed.
pub fn random_instance(seed: u64, max_edges: usize, max_sources: usize) -> Result<EmbeddedDag> {
    if max_edges == 0 || max_sources == 0 {
        return Err(Error::InvalidInput("bounds must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lanes = rng.gen_range(1..=max_sources.min(max_edges));
    let mut dag = lanes_dag(lanes);
    let target = rng.gen_range(lanes..=max_edges);
    let mut attempts = 0;
    while dag.num_edges() < target && attempts < 100 * max_edges {
        attempts += 1;
        let room = max_edges - dag.num_edges();
        let mv = MOVES.choose_weighted(&mut rng, |m| m.1).expect("weights are positive").0;
        let next = match mv {
            Move::Subdivide => Some(subdivide(&dag, &mut rng)),
            Move::Duplicate => Some(duplicate(&dag, &mut rng)),
            Move::ParallelPath => parallel_path(&dag, &mut rng, room),
            Move::Stack => (dag.sources().len() < max_sources).then(|| stack(&dag)),
            Move::Cross if room >= 2 => cross(&dag, &mut rng, room),
            Move::Cross => None,
        };
        let Some(next) = next else { continue };
        let report = validate_strong_planarity(&next);
        if !report.ok() {
            return Err(Error::InternalInvariantViolated(format!(
                "generator move {mv:?} broke the embedding: {}",
                report.summary()
            )));
        }
        dag = next;
    }
    Ok(dag)
}

fn lanes_dag(lanes: usize) -> EmbeddedDag {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for i in 0..lanes {
        vertices.push(VertexRecord { name: format!("s{}", i + 1), ins: vec![], outs: vec![EdgeId(i)] });
        edges.push(EdgeRecord { name: format!("e{}", i + 1), tail: VertexId(2 * i), head: VertexId(2 * i + 1) });
        vertices.push(VertexRecord { name: format!("t{}", i + 1), ins: vec![EdgeId(i)], outs: vec![] });
    }
    let sources = (0..lanes).map(|i| VertexId(2 * i)).collect();
    let sinks = (0..lanes).map(|i| VertexId(2 * i + 1)).collect();
    EmbeddedDag::new(vertices, edges, sources, sinks).expect("well-formed lanes")
}

fn new_vertex(dag: &mut EmbeddedDag) -> VertexId {
    let name = dag.fresh_vertex_name(&format!("v{}", dag.num_vertices() + 1));
    dag.push_vertex(name)
}

fn new_edge(dag: &mut EmbeddedDag, tail: VertexId, tail_pos: usize, head: VertexId, head_pos: usize) -> EdgeId {
    let name = dag.fresh_edge_name(&format!("e{}", dag.num_edges() + 1));
    dag.push_edge(name, tail, tail_pos, head, head_pos)
}

fn random_edge(dag: &EmbeddedDag, rng: &mut ChaCha8Rng) -> EdgeId {
    EdgeId(rng.gen_range(0..dag.num_edges()))
}

fn subdivide(dag: &EmbeddedDag, rng: &mut ChaCha8Rng) -> EmbeddedDag {
    let mut dag = dag.clone();
    let e = random_edge(&dag, rng);
    let head = dag.head(e);
    let w = new_vertex(&mut dag);
    let pos = dag.retarget_head(e, w, 0);
    new_edge(&mut dag, w, 0, head, pos);
    dag
}

/// Adds a parallel copy directly above an edge.
fn duplicate(dag: &EmbeddedDag, rng: &mut ChaCha8Rng) -> EmbeddedDag {
    let mut dag = dag.clone();
    let e = random_edge(&dag, rng);
    let (tail, head) = (dag.tail(e), dag.head(e));
    let tail_pos = dag.out_position(e).expect("edge at its tail") + 1;
    let head_pos = dag.in_position(e).expect("edge at its head") + 1;
    new_edge(&mut dag, tail, tail_pos, head, head_pos);
    dag
}

fn reaches(dag: &EmbeddedDag, from: VertexId, to: VertexId) -> bool {
    let mut seen = vec![false; dag.num_vertices()];
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        for &e in dag.outs(v) {
            let w = dag.head(e);
            if !seen[w.0] {
                seen[w.0] = true;
                stack.push(w);
            }
        }
    }
    false
}

fn inner_face(emb: &Embedding, d: Dart) -> Option<usize> {
    let f = emb.faces.face_of[d.0];
    (!emb.outer.face_of_component.contains(&f)).then_some(f)
}

/// Adds a new path of one or two edges across an inner face, parallel to a
/// stretch of its boundary.
fn parallel_path(dag: &EmbeddedDag, rng: &mut ChaCha8Rng, room: usize) -> Option<EmbeddedDag> {
    let emb = Embedding::of(dag).ok()?;
    let mut candidates = Vec::new();
    for x in dag.vertex_ids() {
        for (dx, px) in out_slots(dag, x) {
            let Some(face) = inner_face(&emb, dx) else { continue };
            for y in dag.vertex_ids() {
                if y == x {
                    continue;
                }
                for (dy, py) in in_slots(dag, y) {
                    if emb.faces.face_of[dy.0] == face && !reaches(dag, y, x) {
                        candidates.push((x, px, y, py));
                    }
                }
            }
        }
    }
    let &(x, px, y, py) = candidates.choose(rng)?;
    let mut dag = dag.clone();
    if room >= 2 && rng.gen_bool(0.5) {
        let w = new_vertex(&mut dag);
        new_edge(&mut dag, x, px, w, 0);
        new_edge(&mut dag, w, 0, y, py);
    } else {
        new_edge(&mut dag, x, px, y, py);
    }
    Some(dag)
}

/// A new single-edge component above all others.
fn stack(dag: &EmbeddedDag) -> EmbeddedDag {
    let mut dag = dag.clone();
    let k = dag.sources().len() + 1;
    let s = dag.fresh_vertex_name(&format!("s{k}"));
    let s = dag.push_vertex(s);
    let t = dag.fresh_vertex_name(&format!("t{k}"));
    let t = dag.push_vertex(t);
    new_edge(&mut dag, s, 0, t, 0);
    let mut sources = dag.sources().to_vec();
    let mut sinks = dag.sinks().to_vec();
    sources.push(s);
    sinks.push(t);
    dag.set_terminals(sources, sinks);
    dag
}

/// Pinches an edge with a face above it and an edge with the same face below
/// it into an X through a new vertex. The face is an inner face, or the gap
/// between the top of one component and the bottom of the next. The long
/// variant routes both strands through one shared edge.
fn cross(dag: &EmbeddedDag, rng: &mut ChaCha8Rng, room: usize) -> Option<EmbeddedDag> {
    let emb = Embedding::of(dag).ok()?;
    let face_of = &emb.faces.face_of;
    let mut candidates = Vec::new();
    for lower in dag.edge_ids() {
        for upper in dag.edge_ids() {
            let above = face_of[Dart::backward(lower).0];
            if lower != upper && above == face_of[Dart::forward(upper).0] && inner_face(&emb, Dart::backward(lower)).is_some()
            {
                candidates.push((lower, upper));
            }
        }
    }
    let order = &emb.outer.component_order;
    for w in order.windows(2) {
        let tops = boundary(dag, &emb, w[0], true);
        let bottoms = boundary(dag, &emb, w[1], false);
        candidates.extend(tops.iter().flat_map(|&l| bottoms.iter().map(move |&u| (l, u))));
    }
    candidates.shuffle(rng);
    let long = room >= 3 && rng.gen_bool(0.5);
    for (lower, upper) in candidates {
        let mut next = dag.clone();
        let (b, d) = (next.head(lower), next.head(upper));
        let v = new_vertex(&mut next);
        let p1 = next.retarget_head(lower, v, 0);
        let p2 = next.retarget_head(upper, v, 1);
        let w = if long {
            let w = new_vertex(&mut next);
            new_edge(&mut next, v, 0, w, 0);
            w
        } else {
            v
        };
        new_edge(&mut next, w, 0, d, p2);
        new_edge(&mut next, w, 0, b, p1);
        if next.topological_order().is_some() {
            return Some(next);
        }
    }
    None
}

/// Edges along the top or bottom of a component, read off its outer face
/// between its topmost (or lowest) sink and source.
fn boundary(dag: &EmbeddedDag, emb: &Embedding, component: usize, top: bool) -> Vec<EdgeId> {
    let in_component = |v: &&VertexId| emb.outer.component_of_vertex[v.0] == component;
    let pick = |list: &[VertexId]| -> VertexId {
        let mut it = list.iter().filter(in_component);
        *if top { it.next_back() } else { it.next() }.expect("component has terminals")
    };
    let (source, sink) = (pick(dag.sources()), pick(dag.sinks()));
    let (start, stop) = if top {
        (sink_corner(dag, sink).expect("sink has an in-edge"), source)
    } else {
        (source_corner(dag, source).expect("source has an out-edge"), sink)
    };
    let cycle = &emb.faces.faces[emb.faces.face_of[start.0]];
    let at = cycle.iter().position(|&d| d == start).expect("corner on its face");
    let mut edges = Vec::new();
    for k in 1..=cycle.len() {
        let d = cycle[(at + k) % cycle.len()];
        edges.push(d.edge());
        if d.target(dag) == stop {
            break;
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::unit_netflow;
    use crate::validate::check_nondegenerate;

    #[test]
    fn deterministic() {
        for seed in 0..20 {
            assert_eq!(random_instance(seed, 12, 3).unwrap(), random_instance(seed, 12, 3).unwrap());
        }
    }

    #[test]
    fn one_edge_budget_gives_single_edge() {
        let dag = random_instance(7, 1, 3).unwrap();
        assert_eq!((dag.num_vertices(), dag.num_edges()), (2, 1));
    }

    #[test]
    fn instances_are_valid_and_balanced() {
        for seed in 0..300 {
            let dag = random_instance(seed, 12, 3).unwrap();
            assert!(dag.num_edges() <= 12);
            assert!(dag.sources().len() <= 3);
            assert!(validate_strong_planarity(&dag).ok());
            assert!(check_nondegenerate(&dag, &unit_netflow(&dag)).ok(), "seed {seed}");
        }
    }

    #[test]
    fn moves_produce_variety() {
        let dags: Vec<EmbeddedDag> = (0..100).map(|s| random_instance(s, 12, 3).unwrap()).collect();
        assert!(dags.iter().any(|d| d.sources().len() >= 2 && d.component_labels().1 == 1));
        assert!(dags.iter().any(|d| d.num_edges() >= 10));
    }
}
