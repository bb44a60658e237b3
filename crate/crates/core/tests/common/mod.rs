#![allow(dead_code)]

use std::collections::HashSet;

use flowframe::dag::{EdgeRecord, VertexRecord};
use flowframe::fixtures;
use flowframe::oracle::random_instance;
use flowframe::routes::{enumerate_routes, indicator, Route};
use flowframe::{EdgeId, EmbeddedDag, VertexId};

pub const LIMIT: usize = 1_000_000;

/// Every balanced fixture plus a batch of generated instances.
pub fn corpus(random: u64) -> Vec<(String, EmbeddedDag)> {
    let mut out: Vec<(String, EmbeddedDag)> =
        fixtures::all().into_iter().map(|(n, d)| (n.to_string(), d)).collect();
    for seed in 0..random {
        out.push((format!("seed {seed}"), random_instance(seed, 12, 3).unwrap()));
    }
    out
}

/// The mirror image: every edge reversed, sources and sinks swapped. The
/// bottom-to-top orders are kept.
pub fn reversed(dag: &EmbeddedDag) -> EmbeddedDag {
    let vertices = dag
        .vertices()
        .iter()
        .map(|v| VertexRecord { name: v.name.clone(), ins: v.outs.clone(), outs: v.ins.clone() })
        .collect();
    let edges = dag.edges().iter().map(|e| EdgeRecord { name: e.name.clone(), tail: e.head, head: e.tail }).collect();
    EmbeddedDag::new(vertices, edges, dag.sinks().to_vec(), dag.sources().to_vec()).unwrap()
}

/// Whether the support of `f` has no cycle in the underlying undirected
/// graph, which characterizes vertices of flow polytopes.
pub fn forest_support(dag: &EmbeddedDag, f: &[i64]) -> bool {
    let mut parent: Vec<usize> = (0..dag.num_vertices()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] == x {
            x
        } else {
            let r = find(p, p[x]);
            p[x] = r;
            r
        }
    }
    for e in dag.edge_ids() {
        if f[e.0] == 0 {
            continue;
        }
        let (a, b) = (find(&mut parent, dag.tail(e).0), find(&mut parent, dag.head(e).0));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Compatibility straight from the definition: along every maximal shared
/// stretch, the order of the routes just before it and just after it must
/// not be opposite.
pub fn compatible_by_definition(dag: &EmbeddedDag, p: &Route, q: &Route) -> bool {
    let pv = p.vertices(dag);
    let qv = q.vertices(dag);
    let in_pos = |e: EdgeId| dag.ins(dag.head(e)).iter().position(|&x| x == e).unwrap();
    let out_pos = |e: EdgeId| dag.outs(dag.tail(e)).iter().position(|&x| x == e).unwrap();
    for i in 0..pv.len() {
        let Some(j) = qv.iter().position(|&v| v == pv[i]) else { continue };
        // Only start at the beginning of a shared stretch.
        if i > 0 && j > 0 && p.edges[i - 1] == q.edges[j - 1] {
            continue;
        }
        let (mut a, mut b) = (i, j);
        while a < p.edges.len() && b < q.edges.len() && p.edges[a] == q.edges[b] {
            a += 1;
            b += 1;
        }
        // Order just before the stretch, by walking back to the divergence.
        let before = {
            let (mut x, mut y) = (i, j);
            loop {
                if x == 0 || y == 0 {
                    break None;
                }
                let (e, f) = (p.edges[x - 1], q.edges[y - 1]);
                if e != f {
                    break Some(in_pos(e).cmp(&in_pos(f)));
                }
                x -= 1;
                y -= 1;
            }
        };
        let after = if a < p.edges.len() && b < q.edges.len() {
            Some(out_pos(p.edges[a]).cmp(&out_pos(q.edges[b])))
        } else {
            None
        };
        if let (Some(x), Some(y)) = (before, after) {
            if x != y {
                return false;
            }
        }
    }
    true
}

/// All multisets of routes whose indicators sum to `f`.
pub fn route_multisets(dag: &EmbeddedDag, f: &[i64], cap: usize) -> Vec<Vec<Route>> {
    let routes = enumerate_routes(dag, LIMIT).unwrap();
    let indicators: Vec<Vec<i64>> = routes.iter().map(|r| indicator(r, dag)).collect();
    let mut out = Vec::new();
    fn rec(
        k: usize,
        rest: &mut Vec<i64>,
        routes: &[Route],
        ind: &[Vec<i64>],
        chosen: &mut Vec<Route>,
        out: &mut Vec<Vec<Route>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if rest.iter().all(|&x| x == 0) {
            out.push(chosen.clone());
            return;
        }
        for r in k..routes.len() {
            if ind[r].iter().zip(rest.iter()).all(|(a, b)| a <= b) {
                for (x, a) in rest.iter_mut().zip(&ind[r]) {
                    *x -= a;
                }
                chosen.push(routes[r].clone());
                rec(r, rest, routes, ind, chosen, out, cap);
                chosen.pop();
                for (x, a) in rest.iter_mut().zip(&ind[r]) {
                    *x += a;
                }
            }
        }
    }
    rec(0, &mut f.to_vec(), &routes, &indicators, &mut Vec::new(), &mut out, cap);
    out
}

/// Maximal sets of pairwise compatible items, by plain recursion over
/// subsets in index order.
pub fn maximal_cliques_naive(n: usize, adj: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    fn rec(i: usize, n: usize, cur: &mut Vec<usize>, adj: &dyn Fn(usize, usize) -> bool, all: &mut Vec<Vec<usize>>) {
        if i == n {
            let maximal = (0..n).all(|x| cur.contains(&x) || !cur.iter().all(|&y| adj(x, y)));
            if maximal {
                all.push(cur.clone());
            }
            return;
        }
        if cur.iter().all(|&y| adj(i, y)) {
            cur.push(i);
            rec(i + 1, n, cur, adj, all);
            cur.pop();
        }
        rec(i + 1, n, cur, adj, all);
    }
    rec(0, n, &mut Vec::new(), &adj, &mut all);
    all
}

pub fn vertex_set(vs: &[VertexId]) -> HashSet<usize> {
    vs.iter().map(|v| v.0).collect()
}
