use std::collections::BTreeSet;
use std::time::Instant;

use super::{count_lattice_points, VerificationReport};
use crate::dag::unit_netflow;
use crate::fixtures;
use crate::flow::{enumerate_integer_flows, IntFlow};
use crate::lattice;
use crate::validate::validate_strong_planarity;

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];

/// Checks that the unit flow polytope of `K3,3` has no lattice
/// triangulation and that no embedding of it passes validation.
pub fn k33_obstruction_check() -> VerificationReport {
    let mut report = VerificationReport::default();
    let dag = fixtures::k33();
    let edge = |i: usize, j: usize| dag.edge_id(&format!("e{}{}", i + 1, j + 1)).expect("fixture edge").0;
    let matching = |sigma: &[usize; 3]| -> IntFlow {
        let mut f = vec![0; dag.num_edges()];
        for (i, &j) in sigma.iter().enumerate() {
            f[edge(i, j)] = 1;
        }
        f
    };
    let matchings: Vec<IntFlow> = PERMUTATIONS.iter().map(matching).collect();

    let points = enumerate_integer_flows(&dag, &unit_netflow(&dag), 1000).unwrap_or_default();
    let counted = count_lattice_points(&dag, 1).unwrap_or(0);
    let as_set = |v: &[IntFlow]| v.iter().cloned().collect::<BTreeSet<_>>();
    report.push(
        "lattice points are the matchings",
        counted == 6 && points.len() == 6 && as_set(&points) == as_set(&matchings),
        format!("{counted} counted, {} enumerated", points.len()),
    );

    let sum = |fs: &[IntFlow]| -> IntFlow {
        fs.iter().fold(vec![0; dag.num_edges()], |acc, f| acc.iter().zip(f).map(|(a, b)| a + b).collect())
    };
    let even = sum(&matchings[..3]);
    let odd = sum(&matchings[3..]);
    report.push(
        "affine dependence",
        even == odd && even.iter().all(|&x| x == 1),
        format!("even sum {even:?}, odd sum {odd:?}"),
    );

    let mut pairs = 0;
    let mut confirmed = 0;
    for a in 0..6 {
        for b in a + 1..6 {
            pairs += 1;
            let inside: Vec<usize> = (0..6)
                .filter(|&c| (0..dag.num_edges()).all(|e| matchings[c][e] <= matchings[a][e].max(matchings[b][e])))
                .collect();
            if inside == [a, b] {
                confirmed += 1;
            }
        }
    }
    report.push(
        "pairwise containment",
        pairs == 15 && confirmed == 15,
        format!("{confirmed} of {pairs} pairs contain only their own two matchings"),
    );

    let origin = &matchings[0];
    let diffs: Vec<Vec<i64>> = matchings.iter().map(|f| f.iter().zip(origin).map(|(a, b)| a - b).collect()).collect();
    let d = lattice::rank(&lattice::to_big(&diffs));
    report.push(
        "no lattice triangulation",
        confirmed == 15 && d == 4 && matchings.len() > d + 1,
        format!(
            "every pair of lattice points is an edge, so a triangulation would be one simplex on all 6 points, \
             but the polytope has dimension {d}"
        ),
    );

    let start = Instant::now();
    let mut accepted = 0usize;
    let mut tried = 0usize;
    for code in 0..6usize.pow(6) {
        let mut c = code;
        let mut pick = || {
            let p = PERMUTATIONS[c % 6];
            c /= 6;
            p
        };
        let sources = [pick(), pick(), pick()];
        let sinks = [pick(), pick(), pick()];
        tried += 1;
        if validate_strong_planarity(&fixtures::k33_with_orders(&sources, &sinks)).ok() {
            accepted += 1;
        }
    }
    report.push(
        "every embedding rejected",
        accepted == 0 && tried == 46656,
        format!("{accepted} of {tried} per-vertex orderings accepted in {:.2?}", start.elapsed()),
    );
    report
}
