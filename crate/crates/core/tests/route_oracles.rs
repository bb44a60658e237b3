mod common;

use std::cmp::Ordering;
use std::collections::HashSet;

use common::{compatible_by_definition, corpus, reversed, route_multisets, LIMIT};
use flowframe::flow::enumerate_integer_flows;
use flowframe::layerings::{cmp_layerings, j_flow, j_inverse, Framing, LayeringRelation};
use flowframe::reduction::two_point_extend;
use flowframe::routes::{are_compatible, cmp_post, cmp_pre, dkk_decompose, enumerate_routes, horizontal_index, Route};
use flowframe::{unit_netflow, VertexId};

#[test]
fn compatibility_matches_the_definition() {
    for (name, dag) in corpus(40) {
        let routes = enumerate_routes(&dag, LIMIT).unwrap();
        for p in &routes {
            for q in &routes {
                assert_eq!(are_compatible(&dag, p, q), compatible_by_definition(&dag, p, q), "{name}");
            }
        }
    }
}

/// Every suffix starting at `v` of every route through `v`.
fn paths_from(dag: &flowframe::EmbeddedDag, routes: &[Route], v: VertexId) -> Vec<Vec<flowframe::EdgeId>> {
    let mut out: HashSet<Vec<flowframe::EdgeId>> = HashSet::new();
    for r in routes {
        if let Some(i) = r.vertices(dag).iter().position(|&x| x == v) {
            out.insert(r.edges[i..].to_vec());
        }
    }
    out.into_iter().collect()
}

#[test]
fn post_order_is_total_and_dual_to_pre_order() {
    for (name, dag) in corpus(25) {
        let routes = enumerate_routes(&dag, LIMIT).unwrap();
        let rev = reversed(&dag);
        for v in dag.vertex_ids() {
            let paths = paths_from(&dag, &routes, v);
            for p in &paths {
                for q in &paths {
                    let o = cmp_post(&dag, v, p, q).unwrap();
                    assert_eq!(o == Ordering::Equal, p == q, "{name}");
                    assert_eq!(o.reverse(), cmp_post(&dag, v, q, p).unwrap());
                    let (rp, rq): (Vec<_>, Vec<_>) =
                        (p.iter().rev().copied().collect(), q.iter().rev().copied().collect());
                    assert_eq!(cmp_pre(&rev, v, &rp, &rq).unwrap(), o, "{name}");
                    for r in &paths {
                        if o == Ordering::Less && cmp_post(&dag, v, q, r).unwrap() == Ordering::Less {
                            assert_eq!(cmp_post(&dag, v, p, r).unwrap(), Ordering::Less);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn compatibility_is_preserved_by_reversal() {
    for (name, dag) in corpus(20) {
        let rev = reversed(&dag);
        let routes = enumerate_routes(&dag, LIMIT).unwrap();
        for p in &routes {
            for q in &routes {
                let rp = Route::new(p.edges.iter().rev().copied().collect());
                let rq = Route::new(q.edges.iter().rev().copied().collect());
                assert_eq!(are_compatible(&dag, p, q), are_compatible(&rev, &rp, &rq), "{name}");
            }
        }
    }
}

#[test]
fn compatible_route_decomposition_is_unique() {
    let mut checked = 0;
    for (name, dag) in corpus(15) {
        if dag.num_edges() > 9 {
            continue;
        }
        let ext = two_point_extend(&dag).unwrap();
        let twice = unit_netflow(&dag).scaled(2);
        for f in enumerate_integer_flows(&dag, &twice, LIMIT).unwrap() {
            let hat = ext.hat_int_flow(&f, 2);
            let big = &ext.extended;
            let compatible: Vec<Vec<Route>> = route_multisets(big, &hat, 100_000)
                .into_iter()
                .filter(|m| m.iter().all(|p| m.iter().all(|q| are_compatible(big, p, q))))
                .collect();
            assert_eq!(compatible.len(), 1, "{name}");
            let dec = dkk_decompose(big, &hat).unwrap();
            assert_eq!(dec.recombine(big.num_edges()), hat);
            let mut mine: Vec<Route> = dec.units().cloned().collect();
            let mut theirs = compatible[0].clone();
            mine.sort();
            theirs.sort();
            assert_eq!(mine, theirs, "{name}");
            checked += 1;
        }
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn layerings_biject_with_integer_unit_flows() {
    for (name, dag) in corpus(40) {
        let ext = two_point_extend(&dag).unwrap();
        let flows = enumerate_integer_flows(&dag, &unit_netflow(&dag), LIMIT).unwrap();
        let framing = Framing::new(&dag, LIMIT).unwrap();
        assert_eq!(framing.num_layerings(), flows.len(), "{name}");
        let mut seen = HashSet::new();
        for f in &flows {
            let layering = j_inverse(&ext, f).unwrap();
            assert_eq!(&j_flow(&dag, &layering), f);
            for (i, r) in layering.routes.iter().enumerate() {
                assert_eq!(horizontal_index(&dag, r), Some(i), "{name}");
            }
            for p in &layering.routes {
                for q in &layering.routes {
                    assert!(are_compatible(&dag, p, q), "{name}");
                }
            }
            assert!(seen.insert(layering));
        }
    }
}

#[test]
fn every_horizontal_route_lies_in_some_layering() {
    for (name, dag) in corpus(40) {
        let framing = Framing::new(&dag, LIMIT).unwrap();
        let used: HashSet<usize> = framing.layerings.iter().flatten().copied().collect();
        assert_eq!(used.len(), framing.routes.len(), "{name}");
    }
}

#[test]
fn layering_relation_matches_table_free_comparison() {
    for (name, dag) in corpus(30) {
        let framing = Framing::new(&dag, LIMIT).unwrap();
        let n = framing.num_layerings();
        for a in 0..n {
            for b in 0..n {
                let direct = cmp_layerings(&dag, &framing.layering(a), &framing.layering(b));
                assert_eq!(framing.relation(a, b), direct, "{name}");
                let flipped = match direct {
                    LayeringRelation::Below => LayeringRelation::Above,
                    LayeringRelation::Above => LayeringRelation::Below,
                    r => r,
                };
                assert_eq!(framing.relation(b, a), flipped);
            }
        }
    }
}
