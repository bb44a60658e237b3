//! Simplices of maximal layering-cliques and their lattice volumes.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{invalid, invariant, Result};
use crate::flow::IntFlow;
use crate::lattice::{self, IntMatrix};
use crate::layerings::{Framing, LayeringClique};

/// A basis of the lattice of integer vectors in the linear span of all
/// differences of lattice points, anchored at one lattice point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLatticeBasis {
    pub origin: IntFlow,
    /// Rows in Hermite normal form.
    pub basis: IntMatrix,
}

impl AffineLatticeBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Lattice coordinates of `x - y`, or `None` if it is not in the
    /// lattice.
    pub fn coordinates_of_difference(&self, x: &[i64], y: &[i64]) -> Option<Vec<BigInt>> {
        let diff: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| BigInt::from(a - b)).collect();
        lattice::coordinates(&self.basis, &diff)
    }

    pub fn coordinates(&self, x: &[i64]) -> Option<Vec<BigInt>> {
        self.coordinates_of_difference(x, &self.origin)
    }
}

pub fn polytope_dimension(framing: &Framing) -> usize {
    framing.dimension
}

pub fn affine_lattice_basis(framing: &Framing) -> AffineLatticeBasis {
    let origin = framing.flows[0].clone();
    let diffs: Vec<Vec<i64>> =
        framing.flows.iter().map(|f| f.iter().zip(&origin).map(|(a, b)| a - b).collect()).collect();
    let basis = lattice::saturation(&lattice::to_big(&diffs), origin.len());
    AffineLatticeBasis { origin, basis }
}

/// Absolute determinant of the lattice coordinates of `v_k - v_0`.
pub fn simplex_normalized_volume(vertices: &[IntFlow], basis: &AffineLatticeBasis) -> Result<BigInt> {
    let d = basis.dimension();
    if vertices.len() != d + 1 {
        return Err(invalid!("a simplex in dimension {d} needs {} vertices, got {}", d + 1, vertices.len()));
    }
    if basis.coordinates(&vertices[0]).is_none() {
        return Err(invalid!("vertex 0 is not a lattice point of the affine lattice"));
    }
    let mut rows = Vec::with_capacity(d);
    for (k, v) in vertices.iter().enumerate().skip(1) {
        let c = basis
            .coordinates_of_difference(v, &vertices[0])
            .ok_or_else(|| invalid!("vertex {k} is not a lattice point of the affine lattice"))?;
        rows.push(c);
    }
    Ok(lattice::determinant(&rows).abs())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub clique: LayeringClique,
    /// Layering flows of the clique, in clique order.
    pub vertices: Vec<IntFlow>,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    pub dimension: usize,
    pub basis: AffineLatticeBasis,
    /// Cells sorted by the post-source order of their cliques.
    pub cells: Vec<Cell>,
}

pub fn cell_of(framing: &Framing, clique: &LayeringClique) -> Cell {
    Cell { clique: clique.clone(), vertices: clique.layerings.iter().map(|&id| framing.flows[id].clone()).collect() }
}

pub fn build_triangulation(framing: &Framing, limit: usize) -> Result<Triangulation> {
    let basis = affine_lattice_basis(framing);
    invariant!(
        basis.dimension() == framing.dimension,
        "lattice basis has rank {} but the polytope has dimension {}",
        basis.dimension(),
        framing.dimension
    );
    let mut cells = Vec::new();
    for clique in framing.maximal_cliques(limit)? {
        let cell = cell_of(framing, &clique);
        let volume = simplex_normalized_volume(&cell.vertices, &basis)?;
        invariant!(volume.to_u64() == Some(1), "cell {:?} has normalized volume {volume}", clique.layerings);
        cells.push(cell);
    }
    Ok(Triangulation { dimension: framing.dimension, basis, cells })
}
