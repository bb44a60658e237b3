use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dag::{unit_netflow, EmbeddedDag};
use crate::error::{invariant, Error, Result};

/// Number of integer flows with netflow `t` times the unit netflow.
///
/// Vertices are settled in topological order. The state is the inflow
/// already delivered to every unsettled vertex; settling a vertex splits its
/// outflow over its out-edges in every possible way.
pub fn count_lattice_points(dag: &EmbeddedDag, t: u64) -> Result<u128> {
    let order = dag
        .topological_order()
        .ok_or_else(|| Error::InvalidInput("graph has a directed cycle".into()))?;
    let a = unit_netflow(dag);
    let t = i64::try_from(t).map_err(|_| Error::InvalidInput("dilation too large".into()))?;
    let mut states: HashMap<Vec<i64>, u128> = HashMap::new();
    states.insert(vec![0; dag.num_vertices()], 1);
    for v in order {
        let mut next: HashMap<Vec<i64>, u128> = HashMap::new();
        let heads: Vec<usize> = dag.outs(v).iter().map(|&e| dag.head(e).0).collect();
        for (state, count) in states {
            let total = state[v.0] + t * a.get(v);
            if total < 0 || (heads.is_empty() && total != 0) {
                continue;
            }
            let mut base = state;
            base[v.0] = 0;
            distribute(&heads, total, &mut base, &mut |s| *next.entry(s.to_vec()).or_insert(0) += count);
        }
        states = next;
    }
    Ok(states.values().sum())
}

fn distribute(heads: &[usize], total: i64, state: &mut Vec<i64>, emit: &mut impl FnMut(&[i64])) {
    match heads {
        [] => emit(state),
        [last] => {
            state[*last] += total;
            emit(state);
            state[*last] -= total;
        }
        [first, rest @ ..] => {
            for x in 0..=total {
                state[*first] += x;
                distribute(rest, total - x, state, emit);
                state[*first] -= x;
            }
        }
    }
}

/// Lattice-point counts of the dilations `0..=max_t`.
pub fn lattice_point_counts(dag: &EmbeddedDag, max_t: u64) -> Result<Vec<u128>> {
    (0..=max_t).map(|t| count_lattice_points(dag, t)).collect()
}

/// `d!` times the leading coefficient of the Ehrhart polynomial of the unit
/// flow polytope, interpolated through `t = 0..=d`.
///
/// The dimension is taken as edges minus vertices plus components, and is
/// confirmed by an extra count at `t = d + 1`: the counts must have a
/// vanishing difference of order `d + 1`.
pub fn ehrhart_normalized_volume(dag: &EmbeddedDag) -> Result<BigInt> {
    let (_, components) = dag.component_labels();
    let d = (dag.num_edges() + components)
        .checked_sub(dag.num_vertices())
        .ok_or_else(|| Error::InvalidInput("more vertices than edges plus components".into()))?;
    let counts = lattice_point_counts(dag, d as u64 + 1)?;
    let counts: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
    invariant!(
        finite_difference(&counts, d + 1).is_zero(),
        "lattice-point counts are not a polynomial of degree {d}"
    );
    let mut leading = BigRational::zero();
    for (i, c) in counts.iter().take(d + 1).enumerate() {
        let mut denom = BigInt::one();
        for j in 0..=d {
            if j != i {
                denom *= BigInt::from(i as i64 - j as i64);
            }
        }
        leading += BigRational::new(c.clone(), denom);
    }
    let factorial: BigInt = (1..=d as u64).map(BigInt::from).product();
    let volume = leading * BigRational::from_integer(factorial);
    invariant!(volume.is_integer() && volume.is_positive(), "normalized volume {volume} is not a positive integer");
    Ok(volume.to_integer())
}

fn finite_difference(values: &[BigInt], order: usize) -> BigInt {
    let mut row = values.to_vec();
    for _ in 0..order {
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    row.into_iter().next().unwrap_or_default()
}
