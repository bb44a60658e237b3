//! Small embedded DAGs used throughout the tests, the examples in the README
//! and the acceptance suite.

use crate::dag::{EmbeddedDag, NetflowVector};

fn build(
    vertices: &[(&str, &[&str], &[&str])],
    edges: &[(&str, &str, &str)],
    sources: &[&str],
    sinks: &[&str],
) -> EmbeddedDag {
    EmbeddedDag::from_names(vertices, edges, sources, sinks).expect("fixture is well formed")
}

/// `s -e-> t`.
pub fn single_edge() -> EmbeddedDag {
    build(&[("s", &[], &["e"]), ("t", &["e"], &[])], &[("e", "s", "t")], &["s"], &["t"])
}

/// Two parallel edges `a1` (below) and `a2` from `s` to `v`, then two
/// parallel edges `b1` (below) and `b2` from `v` to `t`. Its unit flow
/// polytope is a square.
pub fn square() -> EmbeddedDag {
    build(
        &[("s", &[], &["a1", "a2"]), ("v", &["a1", "a2"], &["b1", "b2"]), ("t", &["b1", "b2"], &[])],
        &[("a1", "s", "v"), ("a2", "s", "v"), ("b1", "v", "t"), ("b2", "v", "t")],
        &["s"],
        &["t"],
    )
}

/// Sources `s1`, `s2` both feed `v`, which feeds sinks `t1`, `t2`.
pub fn x_dag() -> EmbeddedDag {
    build(
        &[
            ("s1", &[], &["a"]),
            ("s2", &[], &["b"]),
            ("v", &["a", "b"], &["c", "d"]),
            ("t1", &["c"], &[]),
            ("t2", &["d"], &[]),
        ],
        &[("a", "s1", "v"), ("b", "s2", "v"), ("c", "v", "t1"), ("d", "v", "t2")],
        &["s1", "s2"],
        &["t1", "t2"],
    )
}

/// The X-shaped DAG with a second edge from `v` to `t1`. Its polytope is a
/// segment covered by a single clique.
pub fn x_dag_parallel() -> EmbeddedDag {
    build(
        &[
            ("s1", &[], &["a"]),
            ("s2", &[], &["b"]),
            ("v", &["a", "b"], &["c", "c2", "d"]),
            ("t1", &["c", "c2"], &[]),
            ("t2", &["d"], &[]),
        ],
        &[("a", "s1", "v"), ("b", "s2", "v"), ("c", "v", "t1"), ("c2", "v", "t1"), ("d", "v", "t2")],
        &["s1", "s2"],
        &["t1", "t2"],
    )
}

/// Complete bipartite graph from three sources to three sinks. Not planar;
/// every per-vertex ordering fails validation.
pub fn k33() -> EmbeddedDag {
    k33_with_orders(&[[0, 1, 2]; 3], &[[0, 1, 2]; 3])
}

/// `K3,3` with out-orders at the sources and in-orders at the sinks given
/// as permutations of `0..3`.
pub fn k33_with_orders(source_orders: &[[usize; 3]; 3], sink_orders: &[[usize; 3]; 3]) -> EmbeddedDag {
    let edge = |i: usize, j: usize| format!("e{}{}", i + 1, j + 1);
    let mut vertices: Vec<(String, Vec<String>, Vec<String>)> = Vec::new();
    for (i, order) in source_orders.iter().enumerate() {
        vertices.push((format!("s{}", i + 1), Vec::new(), order.iter().map(|&j| edge(i, j)).collect()));
    }
    for (j, order) in sink_orders.iter().enumerate() {
        vertices.push((format!("t{}", j + 1), order.iter().map(|&i| edge(i, j)).collect(), Vec::new()));
    }
    let edges: Vec<(String, String, String)> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (edge(i, j), format!("s{}", i + 1), format!("t{}", j + 1))))
        .collect();
    let vref: Vec<Vec<&str>> = vertices.iter().map(|v| v.1.iter().map(String::as_str).collect()).collect();
    let vout: Vec<Vec<&str>> = vertices.iter().map(|v| v.2.iter().map(String::as_str).collect()).collect();
    let vs: Vec<(&str, &[&str], &[&str])> =
        vertices.iter().enumerate().map(|(k, v)| (v.0.as_str(), &vref[k][..], &vout[k][..])).collect();
    let es: Vec<(&str, &str, &str)> = edges.iter().map(|e| (e.0.as_str(), e.1.as_str(), e.2.as_str())).collect();
    build(&vs, &es, &["s1", "s2", "s3"], &["t1", "t2", "t3"])
}

/// Two parallel edges from `s` to `t` with netflow `(2, -2)`.
pub fn blowup() -> (EmbeddedDag, NetflowVector) {
    let dag = build(
        &[("s", &[], &["e1", "e2"]), ("t", &["e1", "e2"], &[])],
        &[("e1", "s", "t"), ("e2", "s", "t")],
        &["s"],
        &["t"],
    );
    (dag, NetflowVector::new(vec![2, -2]))
}

/// Three stacked components, each a pair of parallel edges. The polytope is
/// a cube and every mutation is a shuffle.
pub fn shuffles() -> EmbeddedDag {
    build(
        &[
            ("s1", &[], &["a1", "a2"]),
            ("t1", &["a1", "a2"], &[]),
            ("s2", &[], &["b1", "b2"]),
            ("t2", &["b1", "b2"], &[]),
            ("s3", &[], &["c1", "c2"]),
            ("t3", &["c1", "c2"], &[]),
        ],
        &[
            ("a1", "s1", "t1"),
            ("a2", "s1", "t1"),
            ("b1", "s2", "t2"),
            ("b2", "s2", "t2"),
            ("c1", "s3", "t3"),
            ("c2", "s3", "t3"),
        ],
        &["s1", "s2", "s3"],
        &["t1", "t2", "t3"],
    )
}

/// Two sources, two sinks and three internal vertices. Its unit flow
/// polytope is three-dimensional with 9 lattice points, one of which is not
/// a vertex, and it has 8 maximal layering-cliques. All three mutation kinds
/// occur.
pub fn small_example() -> EmbeddedDag {
    build(
        &[
            ("s1", &[], &["a", "b"]),
            ("s2", &[], &["c"]),
            ("u", &["b", "c"], &["d", "e"]),
            ("x", &["a", "d"], &["g", "f"]),
            ("w", &["f", "e"], &["h", "i"]),
            ("t1", &["g", "h"], &[]),
            ("t2", &["i"], &[]),
        ],
        &[
            ("a", "s1", "x"),
            ("b", "s1", "u"),
            ("c", "s2", "u"),
            ("d", "u", "x"),
            ("e", "u", "w"),
            ("f", "x", "w"),
            ("g", "x", "t1"),
            ("h", "w", "t1"),
            ("i", "w", "t2"),
        ],
        &["s1", "s2"],
        &["t1", "t2"],
    )
}

/// `s1` and a doubled `s2` meet at `u`, a doubled edge runs to `v`, which
/// feeds `t1` and `t2`. Four maximal layering-cliques whose poset is a
/// zigzag: two maximal and two minimal elements.
pub fn zigzag() -> EmbeddedDag {
    build(
        &[
            ("s1", &[], &["a"]),
            ("s2", &[], &["b1", "b2"]),
            ("u", &["a", "b1", "b2"], &["c1", "c2"]),
            ("v", &["c1", "c2"], &["d", "e"]),
            ("t1", &["d"], &[]),
            ("t2", &["e"], &[]),
        ],
        &[
            ("a", "s1", "u"),
            ("b1", "s2", "u"),
            ("b2", "s2", "u"),
            ("c1", "u", "v"),
            ("c2", "u", "v"),
            ("d", "v", "t1"),
            ("e", "v", "t2"),
        ],
        &["s1", "s2"],
        &["t1", "t2"],
    )
}

/// Every balanced fixture, by name.
pub fn all() -> Vec<(&'static str, EmbeddedDag)> {
    vec![
        ("single_edge", single_edge()),
        ("square", square()),
        ("x_dag", x_dag()),
        ("x_dag_parallel", x_dag_parallel()),
        ("shuffles", shuffles()),
        ("small_example", small_example()),
        ("zigzag", zigzag()),
    ]
}
