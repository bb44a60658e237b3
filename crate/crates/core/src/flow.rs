//! Exact flows on edges and enumeration of integer flows.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::dag::{EmbeddedDag, NetflowVector};
use crate::error::{invalid, Error, Result};

/// Integer flow, one entry per edge.
pub type IntFlow = Vec<i64>;

/// An exact rational assignment of flow to every edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlowVector {
    pub values: Vec<BigRational>,
}

impl FlowVector {
    pub fn new(values: Vec<BigRational>) -> Self {
        FlowVector { values }
    }

    pub fn zero(num_edges: usize) -> Self {
        FlowVector { values: vec![BigRational::zero(); num_edges] }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        FlowVector { values: values.iter().map(|&x| BigRational::from_integer(x.into())).collect() }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|x| !x.is_negative())
    }

    /// The integer entries, if every entry is an integer.
    pub fn to_integers(&self) -> Option<IntFlow> {
        self.values
            .iter()
            .map(|x| if x.is_integer() { i64::try_from(x.to_integer()).ok() } else { None })
            .collect()
    }

    /// Outflow minus inflow at every vertex.
    pub fn netflow(&self, dag: &EmbeddedDag) -> Vec<BigRational> {
        let mut net = vec![BigRational::zero(); dag.num_vertices()];
        for e in dag.edge_ids() {
            net[dag.tail(e).0] += &self.values[e.0];
            net[dag.head(e).0] -= &self.values[e.0];
        }
        net
    }

    /// The strength `S` with netflow `S * a`, if there is one.
    pub fn strength(&self, dag: &EmbeddedDag, a: &NetflowVector) -> Option<BigRational> {
        let net = self.netflow(dag);
        let pivot = a.values.iter().position(|&x| x != 0)?;
        let s = &net[pivot] / BigRational::from_integer(a.values[pivot].into());
        let matches = net
            .iter()
            .zip(&a.values)
            .all(|(x, &y)| *x == &s * BigRational::from_integer(y.into()));
        matches.then_some(s)
    }

    /// Least common multiple of all denominators.
    pub fn common_denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.values.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()))
    }

    pub fn check_shape(&self, dag: &EmbeddedDag) -> Result<()> {
        if self.values.len() != dag.num_edges() {
            return Err(invalid!("flow has {} entries for {} edges", self.values.len(), dag.num_edges()));
        }
        Ok(())
    }
}

pub fn int_netflow(dag: &EmbeddedDag, f: &[i64]) -> Vec<i64> {
    let mut net = vec![0; dag.num_vertices()];
    for e in dag.edge_ids() {
        net[dag.tail(e).0] += f[e.0];
        net[dag.head(e).0] -= f[e.0];
    }
    net
}

/// All nonnegative integer flows with netflow `a`, in a deterministic order:
/// vertices are settled in topological order and the outflow of each vertex
/// is split over its out-edges lexicographically.
pub fn enumerate_integer_flows(dag: &EmbeddedDag, a: &NetflowVector, limit: usize) -> Result<Vec<IntFlow>> {
    let order = dag.topological_order().ok_or_else(|| invalid!("the dag has a cycle"))?;
    let mut out = Vec::new();
    let mut flow = vec![0i64; dag.num_edges()];
    let mut inflow = vec![0i64; dag.num_vertices()];
    settle(dag, a, &order, 0, &mut flow, &mut inflow, &mut out, limit)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn settle(
    dag: &EmbeddedDag,
    a: &NetflowVector,
    order: &[crate::dag::VertexId],
    k: usize,
    flow: &mut IntFlow,
    inflow: &mut Vec<i64>,
    out: &mut Vec<IntFlow>,
    limit: usize,
) -> Result<()> {
    let Some(&v) = order.get(k) else {
        if out.len() == limit {
            return Err(Error::LimitExceeded { what: "integer flows", limit });
        }
        out.push(flow.clone());
        return Ok(());
    };
    let total = inflow[v.0] + a.get(v);
    let outs = dag.outs(v);
    if total < 0 || (outs.is_empty() && total != 0) {
        return Ok(());
    }
    split(dag, a, order, k, outs, 0, total, flow, inflow, out, limit)
}

#[allow(clippy::too_many_arguments)]
fn split(
    dag: &EmbeddedDag,
    a: &NetflowVector,
    order: &[crate::dag::VertexId],
    k: usize,
    outs: &[crate::dag::EdgeId],
    i: usize,
    left: i64,
    flow: &mut IntFlow,
    inflow: &mut Vec<i64>,
    out: &mut Vec<IntFlow>,
    limit: usize,
) -> Result<()> {
    if i == outs.len() {
        return if left == 0 { settle(dag, a, order, k + 1, flow, inflow, out, limit) } else { Ok(()) };
    }
    let e = outs[i];
    let range: Vec<i64> = if i + 1 == outs.len() { vec![left] } else { (0..=left).collect() };
    for x in range {
        flow[e.0] = x;
        inflow[dag.head(e).0] += x;
        let r = split(dag, a, order, k, outs, i + 1, left - x, flow, inflow, out, limit);
        inflow[dag.head(e).0] -= x;
        flow[e.0] = 0;
        r?;
    }
    Ok(())
}
