mod common;

use std::collections::{HashMap, HashSet};

use common::{corpus, maximal_cliques_naive, LIMIT};
use flowframe::layerings::{Framing, LayeringClique};
use flowframe::mutation::{
    adjacent, build_framing_poset, classify_mutation, mutate, up_down_indices, Direction, MutationKind,
};
use flowframe::oracle::random_instance;

fn sorted(mut v: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for x in &mut v {
        x.sort();
    }
    v.sort();
    v
}

#[test]
fn maximal_cliques_match_naive_search() {
    for (name, dag) in corpus(40) {
        let framing = Framing::new(&dag, LIMIT).unwrap();
        let fast: Vec<Vec<usize>> =
            framing.maximal_cliques(LIMIT).unwrap().into_iter().map(|k| k.layerings).collect();
        let naive = maximal_cliques_naive(framing.num_layerings(), |a, b| framing.compatible(a, b));
        assert_eq!(sorted(fast.clone()), sorted(naive), "{name}");
        assert!(fast.iter().all(|k| k.len() == framing.dimension + 1), "{name}");
    }
}

#[test]
fn private_route_exists_exactly_at_the_updown_index() {
    for (name, dag) in corpus(40) {
        let framing = Framing::new(&dag, LIMIT).unwrap();
        if framing.dimension == 0 {
            continue;
        }
        for k in framing.maximal_cliques(LIMIT).unwrap() {
            for (j, &p) in k.layerings.iter().enumerate() {
                let others: HashSet<usize> = k
                    .layerings
                    .iter()
                    .filter(|&&q| q != p)
                    .flat_map(|&q| framing.layerings[q].iter().copied())
                    .collect();
                let private: Vec<usize> =
                    (0..framing.num_sources()).filter(|&i| !others.contains(&framing.layerings[p][i])).collect();
                let ud = up_down_indices(&framing, &k, j).unwrap();
                assert!(private.len() <= 1, "{name}");
                assert_eq!(private.first().copied(), ud.updown, "{name}");
            }
        }
    }
}

#[test]
fn consecutive_layerings_in_a_clique_differ_at_one_source() {
    for (name, dag) in corpus(40) {
        let framing = Framing::new(&dag, LIMIT).unwrap();
        for k in framing.maximal_cliques(LIMIT).unwrap() {
            for w in k.layerings.windows(2) {
                let (p, q) = (&framing.layerings[w[0]], &framing.layerings[w[1]]);
                assert_eq!((0..p.len()).filter(|&i| p[i] != q[i]).count(), 1, "{name}");
            }
        }
    }
}

#[test]
fn mutation_is_an_involution_with_opposite_direction() {
    for (name, dag) in corpus(40) {
        let framing = Framing::new(&dag, LIMIT).unwrap();
        let cliques = framing.maximal_cliques(LIMIT).unwrap();
        let index: HashMap<&LayeringClique, usize> = cliques.iter().enumerate().map(|(i, k)| (k, i)).collect();
        for k in &cliques {
            for &p in &k.layerings {
                let Some(l) = mutate(&framing, k, p).unwrap() else { continue };
                assert!(index.contains_key(&l), "{name}");
                assert!(adjacent(k, &l));
                let added = *l.layerings.iter().find(|x| !k.layerings.contains(x)).unwrap();
                assert_eq!(mutate(&framing, &l, added).unwrap().as_ref(), Some(k), "{name}");
                let there = classify_mutation(&framing, k, &l).unwrap();
                let back = classify_mutation(&framing, &l, k).unwrap();
                assert_eq!(there.kind, back.kind, "{name}");
                assert_eq!(there.direction, back.direction.reversed(), "{name}");
            }
        }
    }
}

#[test]
fn one_source_instances_use_only_rotations() {
    let mut seen = 0;
    for seed in 0..200 {
        let dag = random_instance(seed, 10, 1).unwrap();
        if dag.sources().len() != 1 {
            continue;
        }
        seen += 1;
        let framing = Framing::new(&dag, LIMIT).unwrap();
        let poset = build_framing_poset(&framing, LIMIT).unwrap();
        assert!(poset.down_edges.iter().all(|e| e.kind == MutationKind::Rotation), "seed {seed}");
        // Layerings are single routes, so cliques are route cliques.
        let cliques: Vec<Vec<usize>> = poset.nodes.iter().map(|k| k.layerings.clone()).collect();
        let by_route: Vec<Vec<usize>> = sorted(
            maximal_cliques_naive(framing.routes.len(), |p, q| framing.routes_compatible(p, q))
                .into_iter()
                .map(|k| k.into_iter().map(|r| framing.layerings.iter().position(|l| l[0] == r).unwrap()).collect())
                .collect(),
        );
        assert_eq!(sorted(cliques), by_route, "seed {seed}");
    }
    assert!(seen > 20);
}

/// Reachability by depth-first search over down edges.
fn reach(n: usize, edges: &[(usize, usize)]) -> Vec<HashSet<usize>> {
    let mut out = vec![HashSet::new(); n];
    for s in 0..n {
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &(a, b) in edges {
                if a == v && out[s].insert(b) {
                    stack.push(b);
                }
            }
        }
    }
    out
}

#[test]
fn poset_is_acyclic_and_covers_are_its_reduction() {
    for (name, dag) in corpus(40) {
        let framing = Framing::new(&dag, LIMIT).unwrap();
        let poset = build_framing_poset(&framing, LIMIT).unwrap();
        let n = poset.nodes.len();
        let all: Vec<(usize, usize)> = poset.down_edges.iter().map(|e| (e.from, e.to)).collect();
        let covers: Vec<(usize, usize)> = poset.covers().map(|e| (e.from, e.to)).collect();
        let r = reach(n, &all);
        assert!((0..n).all(|v| !r[v].contains(&v)), "{name}");
        assert_eq!(reach(n, &covers), r, "{name}");
        for &(a, b) in &covers {
            let without: Vec<(usize, usize)> = covers.iter().copied().filter(|&e| e != (a, b)).collect();
            assert!(!reach(n, &without)[a].contains(&b), "{name}");
        }
        // Nodes follow a linear extension: every down edge goes to a
        // smaller index.
        assert!(all.iter().all(|&(a, b)| b < a), "{name}");
        let maximal: Vec<usize> = (0..n).filter(|&v| all.iter().all(|&(_, b)| b != v)).collect();
        assert_eq!(poset.maximal_elements(), maximal);
        for e in &poset.down_edges {
            let m = classify_mutation(&framing, &poset.nodes[e.from], &poset.nodes[e.to]).unwrap();
            assert_eq!((m.kind, m.direction), (e.kind, Direction::Down), "{name}");
        }
    }
}
