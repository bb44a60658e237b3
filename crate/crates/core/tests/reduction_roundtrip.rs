mod common;

use common::{corpus, LIMIT};
use flowframe::flow::{enumerate_integer_flows, int_netflow, FlowVector};
use flowframe::reduction::{decontract, Placement};
use flowframe::routes::{enumerate_routes, indicator};
use flowframe::{check_nondegenerate, unit_netflow, validate_strong_planarity, NetflowVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A netflow realized by one layering plus a few extra random routes, so
/// every source and sink carries a nonzero value.
fn random_netflow(dag: &flowframe::EmbeddedDag, rng: &mut ChaCha8Rng) -> NetflowVector {
    let routes = enumerate_routes(dag, LIMIT).unwrap();
    let base = enumerate_integer_flows(dag, &unit_netflow(dag), LIMIT).unwrap();
    let mut f = base[rng.gen_range(0..base.len())].clone();
    for _ in 0..rng.gen_range(0..3) {
        let r = &routes[rng.gen_range(0..routes.len())];
        for (x, y) in f.iter_mut().zip(indicator(r, dag)) {
            *x += y;
        }
    }
    NetflowVector::new(int_netflow(dag, &f))
}

#[test]
fn decontraction_preserves_lattice_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nontrivial = 0;
    for (name, dag) in corpus(30) {
        if dag.num_edges() > 10 {
            continue;
        }
        let a = random_netflow(&dag, &mut rng);
        assert!(check_nondegenerate(&dag, &a).ok(), "{name}");
        if a != unit_netflow(&dag) {
            nontrivial += 1;
        }
        for placement in [Placement::Below, Placement::Above] {
            let map = decontract(&dag, &a, placement).unwrap();
            assert!(validate_strong_planarity(&map.reduced).ok(), "{name}");
            assert!(check_nondegenerate(&map.reduced, &unit_netflow(&map.reduced)).ok(), "{name}");
            let original = enumerate_integer_flows(&dag, &a, LIMIT).unwrap();
            let reduced = enumerate_integer_flows(&map.reduced, &unit_netflow(&map.reduced), LIMIT).unwrap();
            assert_eq!(original.len(), reduced.len(), "{name}");
            for g in &reduced {
                let g = FlowVector::from_integers(g);
                let back = map.lift_flow(&map.restrict_flow(&g).unwrap()).unwrap();
                assert_eq!(back, g, "{name}");
            }
            for f in &original {
                let f = FlowVector::from_integers(f);
                assert_eq!(map.restrict_flow(&map.lift_flow(&f).unwrap()).unwrap(), f, "{name}");
            }
        }
    }
    assert!(nontrivial > 10, "{nontrivial}");
}

#[test]
fn one_new_edge_per_unit_of_netflow() {
    for (name, dag) in corpus(10) {
        let a = unit_netflow(&dag).scaled(2);
        let map = decontract(&dag, &a, Placement::Below).unwrap();
        let units: i64 = a.values.iter().map(|x| x.abs()).sum();
        assert_eq!(map.reduced.num_edges(), dag.num_edges() + units as usize, "{name}");
        assert_eq!(map.decontracted_edges.len(), units as usize, "{name}");
    }
}
