//! Exact integer linear algebra: rank, integer kernels, Hermite normal form,
//! lattice coordinates and determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: IntMatrix = rows.to_vec();
    let Some(width) = m.first().map(Vec::len) else { return 0 };
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            for k in c..width {
                let v = &m[i][k] * &a - &m[r][k] * &b;
                m[i][k] = v;
            }
            let g = m[i].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in m[i].iter_mut() {
                    *x /= &g;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Replaces rows `p` and `i` by a unimodular combination that clears column
/// `c` of row `i`.
fn eliminate(m: &mut [Vec<BigInt>], aux: &mut [Vec<BigInt>], p: usize, i: usize, c: usize) {
    let (a, b) = (m[p][c].clone(), m[i][c].clone());
    let eg = a.extended_gcd(&b);
    let (g, s, t) = (eg.gcd, eg.x, eg.y);
    let (ag, bg) = (&a / &g, &b / &g);
    for rows in [&mut *m, &mut *aux] {
        if rows.is_empty() {
            continue;
        }
        let width = rows[p].len();
        for k in 0..width {
            let (x, y) = (rows[p][k].clone(), rows[i][k].clone());
            rows[p][k] = &s * &x + &t * &y;
            rows[i][k] = &ag * &y - &bg * &x;
        }
    }
}

/// Row echelon form by unimodular row operations, applying the same
/// operations to `aux`. Returns the pivot columns.
fn echelon(m: &mut [Vec<BigInt>], aux: &mut [Vec<BigInt>]) -> Vec<usize> {
    let Some(width) = m.first().map(Vec::len) else { return Vec::new() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        if !aux.is_empty() {
            aux.swap(r, p);
        }
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                eliminate(m, aux, r, i, c);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x in Z^n : A x = 0}` for `A` with `n` columns.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> IntMatrix {
    let mut t: IntMatrix = (0..n).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect();
    let mut id: IntMatrix =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    if a.is_empty() {
        return id;
    }
    let r = echelon(&mut t, &mut id).len();
    id.split_off(r)
}

/// Hermite normal form of the lattice spanned by the rows: zero rows
/// dropped, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> IntMatrix {
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m, &mut []);
    m.truncate(pivots.len());
    for (k, &c) in pivots.iter().enumerate() {
        if m[k][c].is_negative() {
            for x in m[k].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..k {
            let q = m[i][c].div_floor(&m[k][c]);
            if !q.is_zero() {
                let row = m[k].clone();
                for (x, y) in m[i].iter_mut().zip(&row) {
                    *x -= &q * y;
                }
            }
        }
    }
    m
}

/// Basis of `Z^n` intersected with the rational span of the rows, in Hermite
/// normal form.
pub fn saturation(rows: &[Vec<BigInt>], n: usize) -> IntMatrix {
    let nonzero: IntMatrix = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let perp = integer_kernel(&nonzero, n);
    if perp.is_empty() {
        let full: IntMatrix =
            (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        return full;
    }
    hermite_normal_form(&integer_kernel(&perp, n))
}

/// Integer coordinates of `x` in a basis given in Hermite normal form, or
/// `None` when `x` is not in the lattice.
pub fn coordinates(hnf: &[Vec<BigInt>], x: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut residual = x.to_vec();
    let mut coords = Vec::with_capacity(hnf.len());
    for row in hnf {
        let c = row.iter().position(|v| !v.is_zero())?;
        let (q, r) = residual[c].div_rem(&row[c]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in residual.iter_mut().zip(row) {
            *x -= &q * y;
        }
        coords.push(q);
    }
    residual.iter().all(Zero::is_zero).then_some(coords)
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else { return BigInt::zero() };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}
