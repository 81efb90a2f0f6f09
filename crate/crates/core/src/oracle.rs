//! Brute-force reference implementations.
//!
//! Everything here is the obvious cubic (or worse) computation, written for
//! clarity rather than speed. The instrumented algorithms elsewhere in the
//! crate are tested for exact agreement against these oracles; the oracles
//! themselves are cross-checked against independent re-implementations in the
//! integration tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::{BitMatrix, Matrix};
use crate::weight::Weight;

fn check_inner(a_cols: usize, b_rows: usize, what: &str) -> Result<()> {
    if a_cols != b_rows {
        Err(Error::DimensionMismatch(format!(
            "{what}: inner dimensions {a_cols} and {b_rows} differ"
        )))
    } else {
        Ok(())
    }
}

/// Min-plus product: `C[i][j] = min_k A[i][k] + B[k][j]`.
pub fn brute_distance_product(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    check_inner(a.cols(), b.rows(), "distance product")?;
    let mut c = Matrix::infinity(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut best = Weight::INF;
            for k in 0..a.cols() {
                best = best.min(a.get(i, k) + b.get(k, j));
            }
            c.set(i, j, best);
        }
    }
    Ok(c)
}

/// Boolean-min product: `C[i][j] = min { B[k][j] : A[i][k] }`, `+inf` when
/// row `i` of `A` selects nothing.
pub fn brute_bool_min_product(a: &BitMatrix, b: &Matrix) -> Result<Matrix> {
    check_inner(a.cols(), b.rows(), "boolean-min product")?;
    let mut c = Matrix::infinity(a.rows(), b.cols());
    for i in 0..a.rows() {
        for k in a.row_ones(i) {
            for j in 0..b.cols() {
                c.set(i, j, c.get(i, j).min(b.get(k, j)));
            }
        }
    }
    Ok(c)
}

/// Threshold product: `C[i][j] = min { Y[k][j] : X[i][k] <= Y[k][j] }`.
///
/// The feasible set grows as `X` entries shrink, so lowering `X` can only
/// lower outputs; `Y` moves outputs in both directions (a raised `Y` entry
/// can newly satisfy its threshold and become the minimum).
pub fn brute_minle_product(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    check_inner(x.cols(), y.rows(), "threshold product")?;
    let mut c = Matrix::infinity(x.rows(), y.cols());
    for i in 0..x.rows() {
        for j in 0..y.cols() {
            let mut best = Weight::INF;
            for k in 0..x.cols() {
                let cand = y.get(k, j);
                if x.get(i, k) <= cand {
                    best = best.min(cand);
                }
            }
            c.set(i, j, best);
        }
    }
    Ok(c)
}

/// All-pairs shortest path distances by Floyd-Warshall. `D[u][u] = 0`.
pub fn brute_apsp(g: &WeightedGraph) -> Matrix {
    let n = g.n;
    let mut d = Matrix::from_fn(
        n,
        n,
        |u, v| if u == v { Weight::ZERO } else { g.weight(u, v) },
    );
    for k in 0..n {
        for i in 0..n {
            let dik = d.get(i, k);
            if dik.is_inf() {
                continue;
            }
            for j in 0..n {
                let through = dik + d.get(k, j);
                if through < d.get(i, j) {
                    d.set(i, j, through);
                }
            }
        }
    }
    d
}

/// All-pairs nondecreasing-path table: `B[u][v]` is the minimum over
/// nondecreasing paths from `u` to `v` (edge weights nondecreasing along the
/// path) of the weight of the path's last edge; `+inf` when no such path
/// exists and `-inf` on the diagonal (the empty path).
///
/// Computed by relaxing every edge until fixpoint: a path arriving at `k`
/// with last edge at most `w(k, j)` extends across `(k, j)`. Minimal
/// witnesses are simple (excising a revisit keeps the sequence
/// nondecreasing), so `n` rounds always suffice; the loop stops at the first
/// stable round.
pub fn brute_apnp(g: &WeightedGraph) -> Matrix {
    let n = g.n;
    let mut b = Matrix::from_fn(
        n,
        n,
        |u, v| {
            if u == v {
                Weight::NEG_INF
            } else {
                Weight::INF
            }
        },
    );
    let edges: Vec<(usize, usize, Weight)> = (0..n)
        .flat_map(|k| (0..n).map(move |j| (k, j)))
        .filter(|&(k, j)| k != j && g.weight(k, j).is_finite())
        .map(|(k, j)| (k, j, g.weight(k, j)))
        .collect();
    for _round in 0..=n {
        let mut changed = false;
        for &(k, j, w) in &edges {
            for u in 0..n {
                if b.get(u, k) <= w && w < b.get(u, j) {
                    b.set(u, j, w);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    b
}

/// A minimum-weight triangle, if any.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub weight: Weight,
}

/// Minimum-weight triangle of an undirected instance, ties broken towards the
/// lexicographically smallest `(i, j, k)` with `i < j < k`.
pub fn brute_min_triangle(g: &WeightedGraph) -> Result<Option<Triangle>> {
    if g.directed {
        return Err(Error::UnsupportedInstance(
            "triangle search expects an undirected instance".into(),
        ));
    }
    let n = g.n;
    let mut best: Option<Triangle> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            let wij = g.weight(i, j);
            if !wij.is_finite() {
                continue;
            }
            for k in (j + 1)..n {
                let (wjk, wik) = (g.weight(j, k), g.weight(i, k));
                if !wjk.is_finite() || !wik.is_finite() {
                    continue;
                }
                let w = wij + wjk + wik;
                if best.is_none_or(|b| w < b.weight) {
                    best = Some(Triangle { i, j, k, weight: w });
                }
            }
        }
    }
    Ok(best)
}
