use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{count_lattice_points, ehrhart_normalized_volume, VerificationReport};
use crate::dag::unit_netflow;
use crate::flow::{enumerate_integer_flows, FlowVector, IntFlow};
use crate::layerings::Framing;
use crate::triangulation::{simplex_normalized_volume, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest dimension for which the face-to-face check runs.
    pub face_cutoff: usize,
    /// Random rational points fed to the coverage check.
    pub samples: usize,
    pub seed: u64,
    pub limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { face_cutoff: 5, samples: 50, seed: 0, limit: 1_000_000 }
    }
}

/// Checks a triangulation of the unit flow polytope of `framing.dag`
/// against independently computed data.
pub fn verify_triangulation(framing: &Framing, tri: &Triangulation, opts: &VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport::default();
    let d = tri.dimension;
    let dag = &framing.dag;

    match count_lattice_points(dag, 1) {
        Ok(n) => report.push(
            "lattice-points",
            n == framing.num_layerings() as u128,
            format!("{n} lattice points, {} layerings", framing.num_layerings()),
        ),
        Err(e) => report.push("lattice-points", false, e.to_string()),
    }

    let purity: Vec<usize> = tri.cells.iter().map(|c| c.vertices.len()).filter(|&n| n != d + 1).collect();
    report.push(
        "purity",
        purity.is_empty() && !tri.cells.is_empty(),
        format!("{} cells, {} without {} vertices", tri.cells.len(), purity.len(), d + 1),
    );

    let distinct: HashSet<Vec<&IntFlow>> = tri
        .cells
        .iter()
        .map(|c| {
            let mut v: Vec<&IntFlow> = c.vertices.iter().collect();
            v.sort();
            v
        })
        .collect();
    report.push(
        "distinct",
        distinct.len() == tri.cells.len(),
        format!("{} distinct vertex sets among {} cells", distinct.len(), tri.cells.len()),
    );

    let volumes: Vec<Option<BigInt>> =
        tri.cells.iter().map(|c| simplex_normalized_volume(&c.vertices, &tri.basis).ok()).collect();
    let bad = volumes.iter().filter(|v| v.as_ref().is_none_or(|v| !v.is_one())).count();
    report.push("unimodular", bad == 0, format!("{bad} of {} cells are not unimodular", tri.cells.len()));

    let total: Option<BigInt> = volumes.iter().cloned().sum();
    match (ehrhart_normalized_volume(dag), total) {
        (Ok(expected), Some(total)) => {
            report.push("volume", expected == total, format!("cells sum to {total}, Ehrhart volume {expected}"))
        }
        (Err(e), _) => report.push("volume", false, e.to_string()),
        (_, None) => report.push("volume", false, "some cell has no lattice volume"),
    }

    report.push_result("coverage", coverage(framing, tri, opts));

    if d > opts.face_cutoff {
        report.push("face-to-face", true, format!("skipped: dimension {d} exceeds cutoff {}", opts.face_cutoff));
    } else {
        report.push_result("face-to-face", face_to_face(tri));
    }
    report
}

impl VerificationReport {
    fn push_result(&mut self, name: &str, result: std::result::Result<String, String>) {
        match result {
            Ok(detail) => self.push(name, true, detail),
            Err(detail) => self.push(name, false, detail),
        }
    }
}

fn coverage(framing: &Framing, tri: &Triangulation, opts: &VerifyOptions) -> std::result::Result<String, String> {
    let dag = &framing.dag;
    let cells: Vec<HashSet<&IntFlow>> = tri.cells.iter().map(|c| c.vertices.iter().collect()).collect();
    let check = |f: &FlowVector| -> std::result::Result<(), String> {
        let dec = framing.decompose_flow(f).map_err(|e| e.to_string())?;
        if &framing.recombine(&dec) != f {
            return Err("decomposition does not recombine to the flow".into());
        }
        let support: Vec<&IntFlow> = dec.terms.iter().map(|(id, _)| &framing.flows[*id]).collect();
        if !cells.iter().any(|cell| support.iter().all(|v| cell.contains(v))) {
            return Err("decomposition support lies in no cell".into());
        }
        Ok(())
    };
    let points = enumerate_integer_flows(dag, &unit_netflow(dag), opts.limit).map_err(|e| e.to_string())?;
    for p in &points {
        check(&FlowVector::from_integers(p)).map_err(|e| format!("lattice point {p:?}: {e}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = framing.num_layerings();
    for s in 0..opts.samples {
        let k = rng.gen_range(1..=n);
        let weights: Vec<(usize, i64)> = (0..k).map(|_| (rng.gen_range(0..n), rng.gen_range(1..=12))).collect();
        let total: i64 = weights.iter().map(|w| w.1).sum();
        let mut values = vec![BigRational::zero(); dag.num_edges()];
        for &(id, w) in &weights {
            let c = BigRational::new(w.into(), total.into());
            for (x, &y) in values.iter_mut().zip(&framing.flows[id]) {
                *x += &c * BigRational::from_integer(y.into());
            }
        }
        check(&FlowVector::new(values)).map_err(|e| format!("sample {s}: {e}"))?;
    }
    Ok(format!("{} lattice points and {} random points decompose inside one cell", points.len(), opts.samples))
}

type Point = Vec<BigRational>;

/// Inequalities `a . x >= b` cutting out a simplex in lattice coordinates,
/// one per barycentric coordinate.
fn barycentric_halfspaces(vertices: &[Vec<BigInt>]) -> Option<Vec<(Point, BigRational)>> {
    let d = vertices.len() - 1;
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let v0: Point = vertices[0].iter().map(q).collect();
    // Columns are v_k - v_0.
    let m: Vec<Point> = (0..d).map(|i| (1..=d).map(|k| q(&vertices[k][i]) - &v0[i]).collect()).collect();
    let inv = invert(&m)?;
    let mut out = Vec::with_capacity(d + 1);
    let mut sum = vec![BigRational::zero(); d];
    for row in &inv {
        let b = dot(row, &v0);
        for (s, x) in sum.iter_mut().zip(row) {
            *s += x;
        }
        out.push((row.clone(), b));
    }
    let b = -BigRational::one() - dot(&sum, &v0);
    out.push((sum.into_iter().map(|x| -x).collect(), b));
    Some(out)
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn invert(m: &[Point]) -> Option<Vec<Point>> {
    let n = m.len();
    let mut a: Vec<Point> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let row = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(&row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Unique solution of the square system, if any.
fn solve(rows: &[&(Point, BigRational)]) -> Option<Point> {
    let n = rows.len();
    let mut a: Vec<Point> = rows
        .iter()
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let row = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(&row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Vertices of the bounded polyhedron `{x : a . x >= b}` by solving every
/// square subsystem.
fn vertex_enumeration(halfspaces: &[(Point, BigRational)], d: usize) -> Vec<Point> {
    let mut found: Vec<Point> = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    fn rec(
        h: &[(Point, BigRational)],
        d: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        found: &mut Vec<Point>,
    ) {
        if chosen.len() == d {
            let rows: Vec<&(Point, BigRational)> = chosen.iter().map(|&i| &h[i]).collect();
            if let Some(x) = solve(&rows) {
                if h.iter().all(|(a, b)| &dot(a, &x) >= b) && !found.contains(&x) {
                    found.push(x);
                }
            }
            return;
        }
        for i in start..h.len() {
            chosen.push(i);
            rec(h, d, i + 1, chosen, found);
            chosen.pop();
        }
    }
    rec(halfspaces, d, 0, &mut chosen, &mut found);
    found
}

fn face_to_face(tri: &Triangulation) -> std::result::Result<String, String> {
    let d = tri.dimension;
    let mut coords: Vec<Vec<Vec<BigInt>>> = Vec::new();
    for (k, cell) in tri.cells.iter().enumerate() {
        let c: Option<Vec<Vec<BigInt>>> = cell.vertices.iter().map(|v| tri.basis.coordinates(v)).collect();
        let c = c.ok_or_else(|| format!("cell {k} has a vertex off the lattice"))?;
        if c.len() != d + 1 {
            return Err(format!("cell {k} has {} vertices", c.len()));
        }
        coords.push(c);
    }
    if d == 0 {
        return Ok("zero-dimensional".into());
    }
    let mut halfspaces = Vec::new();
    for (k, c) in coords.iter().enumerate() {
        halfspaces.push(barycentric_halfspaces(c).ok_or_else(|| format!("cell {k} is degenerate"))?);
    }
    let q = |v: &Vec<BigInt>| -> Point { v.iter().map(|x| BigRational::from_integer(x.clone())).collect() };
    let mut pairs = 0;
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            let mut h = halfspaces[i].clone();
            h.extend(halfspaces[j].iter().cloned());
            let mut meet = vertex_enumeration(&h, d);
            let mut shared: Vec<Point> = coords[i].iter().filter(|v| coords[j].contains(v)).map(q).collect();
            meet.sort();
            shared.sort();
            if meet != shared {
                return Err(format!(
                    "cells {i} and {j} meet in a polytope with {} vertices but share {} vertices",
                    meet.len(),
                    shared.len()
                ));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} cell pairs meet in common faces"))
}
