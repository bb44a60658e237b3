mod common;

use std::cmp::Ordering;

use common::LIMIT;
use flowframe::flow::FlowVector;
use flowframe::layerings::Framing;
use flowframe::mutation::{adjacent_pairs, build_framing_poset, classify_mutation, Direction};
use flowframe::oracle::{ehrhart_normalized_volume, random_instance, verify_triangulation, VerifyOptions};
use flowframe::triangulation::{build_triangulation, simplex_normalized_volume};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn cliques_count_the_volume(seed in any::<u64>(), edges in 1usize..=10) {
        let dag = random_instance(seed, edges, 3).unwrap();
        let framing = Framing::new(&dag, LIMIT).unwrap();
        let cliques = framing.maximal_cliques(LIMIT).unwrap();
        prop_assert_eq!(BigInt::from(cliques.len()), ehrhart_normalized_volume(&dag).unwrap());
        prop_assert!(cliques.iter().all(|k| k.layerings.len() == framing.dimension + 1));
    }

    #[test]
    fn cells_are_unimodular(seed in any::<u64>(), edges in 1usize..=12) {
        let dag = random_instance(seed, edges, 3).unwrap();
        let framing = Framing::new(&dag, LIMIT).unwrap();
        let tri = build_triangulation(&framing, LIMIT).unwrap();
        for cell in &tri.cells {
            prop_assert_eq!(simplex_normalized_volume(&cell.vertices, &tri.basis).unwrap(), BigInt::from(1));
        }
    }

    #[test]
    fn decomposition_round_trips(seed in any::<u64>(), weights in proptest::collection::vec(1i64..20, 1..6)) {
        let dag = random_instance(seed, 10, 3).unwrap();
        let framing = Framing::new(&dag, LIMIT).unwrap();
        let total: i64 = weights.iter().sum();
        let mut f = vec![BigRational::from_integer(0.into()); dag.num_edges()];
        for (k, w) in weights.iter().enumerate() {
            let flow = &framing.flows[(seed as usize).wrapping_add(k * 7) % framing.num_layerings()];
            for (x, &y) in f.iter_mut().zip(flow) {
                *x += BigRational::new((w * y).into(), total.into());
            }
        }
        let f = FlowVector::new(f);
        let dec = framing.decompose_flow(&f).unwrap();
        prop_assert_eq!(framing.recombine(&dec), f);
        let ids: Vec<usize> = dec.terms.iter().map(|t| t.0).collect();
        prop_assert!(framing.is_clique(&ids));
    }

    #[test]
    fn down_mutations_decrease_the_post_source_order(seed in any::<u64>(), edges in 1usize..=12) {
        let dag = random_instance(seed, edges, 3).unwrap();
        let framing = Framing::new(&dag, LIMIT).unwrap();
        let poset = build_framing_poset(&framing, LIMIT).unwrap();
        for e in &poset.down_edges {
            let (k, l) = (&poset.nodes[e.from], &poset.nodes[e.to]);
            prop_assert_eq!(framing.cmp_post_source_cliques(l, k), Ordering::Less);
        }
        for (a, b) in adjacent_pairs(&poset.nodes).unwrap() {
            let m = classify_mutation(&framing, &poset.nodes[a], &poset.nodes[b]).unwrap();
            let (from, to) = if m.direction == Direction::Down { (a, b) } else { (b, a) };
            prop_assert!(poset.down_edges.iter().any(|e| e.from == from && e.to == to && e.kind == m.kind));
        }
    }

    #[test]
    fn verification_passes(seed in any::<u64>()) {
        let dag = random_instance(seed, 9, 3).unwrap();
        let framing = Framing::new(&dag, LIMIT).unwrap();
        let tri = build_triangulation(&framing, LIMIT).unwrap();
        let opts = VerifyOptions { samples: 10, seed, face_cutoff: 4, ..VerifyOptions::default() };
        let report = verify_triangulation(&framing, &tri, &opts);
        prop_assert!(report.overall(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}
