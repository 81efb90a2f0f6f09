//! Structured matrix products with instrumented search.
//!
//! Four products, all computing exact results while charging the ledger what
//! the corresponding quantum subroutine would spend:
//!
//! * [`bucketed_bool_min_product`]: boolean-min product through a rank
//!   bucketing of the value operand. Buckets of `d` candidates are summarised
//!   by boolean matrix products (one per bucket level); each output entry
//!   then runs one simulated Grover minimum inside its first non-empty
//!   bucket. Charges: `ceil(n / d)` boolean products on `matmul_ops`, one
//!   bucket-summary scan per entry per level on `classical_ops`
//!   (`rows * cols * ceil(n / d)` total), and `ceil(c * sqrt(|bucket|))`
//!   quantum queries per entry.
//! * [`geometric_star_product`]: min-plus product `min_k w(i, k) + B[k][j]`
//!   where the left weights come from instance geometry. Candidates are
//!   partitioned into cells ([`crate::partition`]); per entry one Grover
//!   minimum over cell upper bounds picks a threshold, and a second searches
//!   the members of the cells the threshold surface crosses. Charges
//!   `ceil(sqrt(cells))` plus `ceil(sqrt(pool))` per entry, eligibility
//!   products on `matmul_ops`.
//! * [`trivial_distance_product`]: min-plus product by one Grover minimum
//!   over the whole inner dimension per entry, `ceil(c * sqrt(inner))` each.
//! * [`minle_product`]: threshold product
//!   `min { Y[k][j] : X[i][k] <= Y[k][j] }`. Analytic mode computes
//!   classically and charges the closed-form bound `ceil(n^2.473)` as one
//!   labelled entry; trivial mode runs a filtered Grover minimum per entry.
//!
//! Every product agrees exactly with its brute-force oracle in
//! [`crate::oracle`] when failure injection is off; with `delta > 0`
//! injected failures surface as one-sided overestimates backed by genuine
//! candidates.

use crate::error::{Error, Result};
use crate::graph::{Geometry, WeightFn};
use crate::ledger::CostLedger;
use crate::matrix::{bool_matmul, BitMatrix, MatmulKernel, Matrix};
use crate::partition::{build_partition, Cell, Partition, PartitionStrategy, Site};
use crate::qmodel::{qmin_filtered, GroverConfig};
use crate::weight::Weight;

/// Exponent of the closed-form charge billed by [`MinleMode::Analytic`].
pub const MINLE_EXPONENT: f64 = 2.473;

/// Ledger label used by analytic threshold products.
pub const MINLE_CHARGE_LABEL: &str = "minle_product";

/// Rank bucketing of a value operand: per column, candidate rows sorted by
/// value and cut into buckets of `d`.
///
/// The boolean-min product takes its minimum for entry `(i, j)` over column
/// `j` of the value operand, so ranks are per column (equivalently, rows of
/// the transpose). Construction is uncharged setup, like instance
/// generation; the product itself charges as documented on
/// [`bucketed_bool_min_product`].
#[derive(Debug, Clone)]
pub struct RowBucketing {
    d: usize,
    inner: usize,
    /// `sorted[j][rank]` is the row index holding the rank-th smallest value
    /// in column `j` (ties by row index).
    sorted: Vec<Vec<u32>>,
}

impl RowBucketing {
    /// Buckets the columns of `values` into runs of `d` ranks.
    pub fn build(values: &Matrix, d: usize) -> Result<RowBucketing> {
        if d == 0 {
            return Err(Error::InvalidParameter(
                "bucket width d must be at least 1".into(),
            ));
        }
        let inner = values.rows();
        let mut sorted = Vec::with_capacity(values.cols());
        for j in 0..values.cols() {
            let mut ks: Vec<u32> = (0..inner as u32).collect();
            ks.sort_by(|&a, &b| {
                values
                    .get(a as usize, j)
                    .cmp(&values.get(b as usize, j))
                    .then(a.cmp(&b))
            });
            sorted.push(ks);
        }
        Ok(RowBucketing { d, inner, sorted })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of bucket levels, `ceil(inner / d)`.
    pub fn levels(&self) -> usize {
        self.inner.div_ceil(self.d)
    }

    /// Row indices in bucket `t` of column `j`, ascending by value rank.
    pub fn bucket(&self, j: usize, t: usize) -> &[u32] {
        let lo = t * self.d;
        let hi = ((t + 1) * self.d).min(self.inner);
        &self.sorted[j][lo..hi]
    }

    /// Membership of bucket level `t` as a bit matrix: bit `(k, j)` set when
    /// row `k` falls into bucket `t` of column `j`.
    fn level_membership(&self, t: usize) -> BitMatrix {
        let cols = self.sorted.len();
        let mut m = BitMatrix::zeros(self.inner, cols);
        for (j, _) in self.sorted.iter().enumerate() {
            for &k in self.bucket(j, t) {
                m.set(k as usize, j, true);
            }
        }
        m
    }
}

/// Boolean-min product `C[i][j] = min { B[k][j] : A[i][k] }` through a rank
/// bucketing of width `d`. See the module docs for the charge model.
pub fn bucketed_bool_min_product(
    a: &BitMatrix,
    b: &Matrix,
    d: usize,
    kernel: MatmulKernel,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<Matrix> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "bucketed product of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let buckets = RowBucketing::build(b, d)?;
    let levels = buckets.levels();

    // One boolean product per bucket level: occupied[t] tells, per entry,
    // whether level t holds any selected candidate.
    let mut occupied = Vec::with_capacity(levels);
    for t in 0..levels {
        occupied.push(bool_matmul(
            a,
            &buckets.level_membership(t),
            kernel,
            ledger,
        )?);
    }
    // Each entry consults every level summary once in the model.
    ledger.charge_classical((a.rows() * b.cols() * levels) as u64);

    let mut c = Matrix::infinity(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let Some(t) = (0..levels).find(|&t| occupied[t].get(i, j)) else {
                continue;
            };
            let bucket = buckets.bucket(j, t);
            let hit = qmin_filtered(
                bucket.len(),
                |idx| a.get(i, bucket[idx] as usize),
                |idx| b.get(bucket[idx] as usize, j),
                ledger,
                cfg,
            )?;
            // The summary product said this bucket is occupied, so only an
            // injected failure could still miss; both arms are candidates.
            if let Some((_, val)) = hit {
                c.set(i, j, val);
            }
        }
    }
    Ok(c)
}

/// Per-entry trace of the geometric star product, for growth diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarEntryTrace {
    pub row: usize,
    pub col: usize,
    /// Cells inspected by the threshold search (0 when the column had no
    /// finite candidates at all).
    pub cells: u32,
    /// Candidate pool searched by the refinement (0 when no cell was
    /// eligible for this row).
    pub pool: u32,
}

struct ColumnIndex {
    partition: Partition,
    /// Eligibility bits: entry `(i, c)` set when row `i` may use cell `c`.
    eligible: Option<BitMatrix>,
}

/// The fixed operands of one star product: the geometry inducing the left
/// operand's weights, the left presence mask, and the right value matrix.
struct StarOperands<'a> {
    geo: &'a Geometry,
    a_mask: &'a BitMatrix,
    b: &'a Matrix,
}

/// Distance bounds from row point `i` to a cell, under the instance's weight
/// function, with the slack needed for grid-rounded Euclidean weights baked
/// in (lower bounds shrink, upper bounds grow, so containment arguments
/// survive rounding).
fn cell_weight_bounds(geo: &Geometry, i: usize, cell: &Cell) -> (f64, f64) {
    match geo.weight_fn {
        WeightFn::NodeWeight => {
            let p = geo.points[i][0];
            (p, p)
        }
        WeightFn::Euclidean => {
            const SLACK: f64 = 1.0 / (1 << 18) as f64;
            let (px, py) = (geo.points[i][0], geo.points[i][1]);
            let clamped = [
                px.clamp(cell.x_lo[0], cell.x_hi[0]),
                py.clamp(cell.x_lo[1], cell.x_hi[1]),
            ];
            let lo = ((px - clamped[0]).powi(2) + (py - clamped[1]).powi(2)).sqrt();
            let mut hi = 0.0f64;
            for cx in [cell.x_lo[0], cell.x_hi[0]] {
                for cy in [cell.x_lo[1], cell.x_hi[1]] {
                    hi = hi.max(((px - cx).powi(2) + (py - cy).powi(2)).sqrt());
                }
            }
            (lo - SLACK, hi + SLACK)
        }
    }
}

fn build_column_index(
    ops: &StarOperands,
    j: usize,
    r: usize,
    strategy: PartitionStrategy,
    kernel: MatmulKernel,
    ledger: &mut CostLedger,
) -> Result<ColumnIndex> {
    let sites: Vec<Site> = (0..ops.b.rows())
        .filter(|&k| ops.b.get(k, j).is_finite())
        .map(|k| Site {
            index: k,
            x: match ops.geo.weight_fn {
                WeightFn::NodeWeight => [0.0, 0.0],
                WeightFn::Euclidean => [ops.geo.points[k][0], ops.geo.points[k][1]],
            },
            z: ops.b.get(k, j).raw(),
        })
        .collect();
    let partition = build_partition(&sites, r, strategy)?;
    let eligible = if partition.cells.is_empty() {
        None
    } else {
        let membership_t = {
            let mut m = BitMatrix::zeros(ops.b.rows(), partition.cells.len());
            for (c, cell) in partition.cells.iter().enumerate() {
                for &k in &cell.members {
                    m.set(k, c, true);
                }
            }
            m
        };
        Some(bool_matmul(ops.a_mask, &membership_t, kernel, ledger)?)
    };
    Ok(ColumnIndex {
        partition,
        eligible,
    })
}

/// Computes one entry of the star product given its column index. Returns
/// the value and the trace counts (cells inspected, pool size).
fn star_entry(
    ops: &StarOperands,
    col: &ColumnIndex,
    i: usize,
    j: usize,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<(Weight, u32, u32)> {
    let cells = &col.partition.cells;
    let Some(eligible) = &col.eligible else {
        return Ok((Weight::INF, 0, 0));
    };

    // Threshold step: cheapest eligible-cell upper bound.
    let c_hat = qmin_filtered(
        cells.len(),
        |c| eligible.get(i, c),
        |c| {
            let (_, hi) = cell_weight_bounds(ops.geo, i, &cells[c]);
            Weight::new(hi + cells[c].z_hi)
        },
        ledger,
        cfg,
    )?;
    let Some((_, c_hat)) = c_hat else {
        return Ok((Weight::INF, cells.len() as u32, 0));
    };

    // Refinement: search the members of every cell whose bound interval
    // contains the threshold. The minimising candidate's cell is always
    // among them (its interval contains both the true minimum and, because
    // the cell is eligible, the threshold).
    let mut pool: Vec<usize> = Vec::new();
    for cell in cells {
        let (lo, hi) = cell_weight_bounds(ops.geo, i, cell);
        if Weight::new(lo + cell.z_lo) <= c_hat && c_hat <= Weight::new(hi + cell.z_hi) {
            pool.extend_from_slice(&cell.members);
        }
    }
    debug_assert!(
        !pool.is_empty(),
        "the threshold cell itself is always crossed"
    );
    let refined = qmin_filtered(
        pool.len(),
        |idx| ops.a_mask.get(i, pool[idx]),
        |idx| Weight::new(ops.geo.induced_weight(i, pool[idx])) + ops.b.get(pool[idx], j),
        ledger,
        cfg,
    )?;
    let value = refined.map(|(_, v)| v).unwrap_or(Weight::INF);
    Ok((value, cells.len() as u32, pool.len() as u32))
}

fn star_product_impl(
    ops: &StarOperands,
    r: usize,
    strategy: PartitionStrategy,
    kernel: MatmulKernel,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
    mut trace: Option<&mut Vec<StarEntryTrace>>,
) -> Result<Matrix> {
    if ops.a_mask.cols() != ops.b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "star product of {}x{} and {}x{}",
            ops.a_mask.rows(),
            ops.a_mask.cols(),
            ops.b.rows(),
            ops.b.cols()
        )));
    }
    if ops.geo.points.len() != ops.a_mask.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{} geometry points for inner dimension {}",
            ops.geo.points.len(),
            ops.a_mask.cols()
        )));
    }
    let mut c = Matrix::infinity(ops.a_mask.rows(), ops.b.cols());
    for j in 0..ops.b.cols() {
        let col = build_column_index(ops, j, r, strategy, kernel, ledger)?;
        for i in 0..ops.a_mask.rows() {
            let (value, cells, pool) = star_entry(ops, &col, i, j, ledger, cfg)?;
            c.set(i, j, value);
            if let Some(t) = trace.as_deref_mut() {
                t.push(StarEntryTrace {
                    row: i,
                    col: j,
                    cells,
                    pool,
                });
            }
        }
    }
    Ok(c)
}

/// Geometric star product `C[i][j] = min { w(i, k) + B[k][j] }` over `k`
/// with `A[i][k]` present and `B[k][j]` finite, where `w(i, k)` is the
/// weight the instance geometry induces on `(i, k)`.
///
/// `a_mask` carries the presence structure of the left operand; its weights
/// are implied by `geo`. `r` is the target cell count per column.
#[allow(clippy::too_many_arguments)]
pub fn geometric_star_product(
    geo: &Geometry,
    a_mask: &BitMatrix,
    b: &Matrix,
    r: usize,
    strategy: PartitionStrategy,
    kernel: MatmulKernel,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<Matrix> {
    let ops = StarOperands { geo, a_mask, b };
    star_product_impl(&ops, r, strategy, kernel, ledger, cfg, None)
}

/// [`geometric_star_product`] plus a per-entry trace of search sizes.
#[allow(clippy::too_many_arguments)]
pub fn geometric_star_product_traced(
    geo: &Geometry,
    a_mask: &BitMatrix,
    b: &Matrix,
    r: usize,
    strategy: PartitionStrategy,
    kernel: MatmulKernel,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<(Matrix, Vec<StarEntryTrace>)> {
    let mut trace = Vec::with_capacity(a_mask.rows() * b.cols());
    let ops = StarOperands { geo, a_mask, b };
    let c = star_product_impl(&ops, r, strategy, kernel, ledger, cfg, Some(&mut trace))?;
    Ok((c, trace))
}

/// Star product restricted to the requested `(row, col)` entries. Column
/// partitions are built once per distinct column; eligibility is checked
/// directly per entry and cell (charged to `classical_ops`, one op per cell
/// summary) instead of through whole-matrix boolean products.
#[allow(clippy::too_many_arguments)]
pub fn sparse_geometric_star_product(
    geo: &Geometry,
    a_mask: &BitMatrix,
    b: &Matrix,
    requests: &[(usize, usize)],
    r: usize,
    strategy: PartitionStrategy,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<Vec<Weight>> {
    if a_mask.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "star product of {}x{} and {}x{}",
            a_mask.rows(),
            a_mask.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut by_col: Vec<Vec<(usize, usize)>> = vec![Vec::new(); b.cols()];
    for (pos, &(i, j)) in requests.iter().enumerate() {
        assert!(
            i < a_mask.rows() && j < b.cols(),
            "request ({i}, {j}) out of range"
        );
        by_col[j].push((pos, i));
    }
    let ops = StarOperands { geo, a_mask, b };
    let mut out = vec![Weight::INF; requests.len()];
    for (j, column_requests) in by_col.iter().enumerate() {
        if column_requests.is_empty() {
            continue;
        }
        let sites: Vec<Site> = (0..b.rows())
            .filter(|&k| b.get(k, j).is_finite())
            .map(|k| Site {
                index: k,
                x: match geo.weight_fn {
                    WeightFn::NodeWeight => [0.0, 0.0],
                    WeightFn::Euclidean => [geo.points[k][0], geo.points[k][1]],
                },
                z: b.get(k, j).raw(),
            })
            .collect();
        let partition = build_partition(&sites, r, strategy)?;
        let eligible = if partition.cells.is_empty() {
            None
        } else {
            let membership = partition.membership_matrix(b.rows());
            let rows: Vec<usize> = column_requests.iter().map(|&(_, i)| i).collect();
            let mut bits = BitMatrix::zeros(a_mask.rows(), partition.cells.len());
            for &i in &rows {
                for c in 0..partition.cells.len() {
                    if a_mask.rows_intersect(i, &membership, c) {
                        bits.set(i, c, true);
                    }
                }
            }
            ledger.charge_classical((rows.len() * partition.cells.len()) as u64);
            Some(bits)
        };
        let col = ColumnIndex {
            partition,
            eligible,
        };
        for &(pos, i) in column_requests {
            let (value, _, _) = star_entry(&ops, &col, i, j, ledger, cfg)?;
            out[pos] = value;
        }
    }
    Ok(out)
}

/// Min-plus product by one simulated Grover minimum per entry over the whole
/// inner dimension: `rows * cols` calls of `ceil(c * sqrt(inner))` queries.
pub fn trivial_distance_product(
    a: &Matrix,
    b: &Matrix,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<Matrix> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "distance product of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut c = Matrix::infinity(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let hit = qmin_filtered(
                a.cols(),
                |_| true,
                |k| a.get(i, k) + b.get(k, j),
                ledger,
                cfg,
            )?;
            if let Some((_, v)) = hit {
                c.set(i, j, v);
            }
        }
    }
    Ok(c)
}

/// How [`minle_product`] is billed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinleMode {
    /// Compute classically; charge `ceil(n^2.473)` once as an analytic entry
    /// (square operands only).
    Analytic,
    /// One filtered Grover minimum per entry over the inner dimension.
    Trivial,
}

/// Threshold product `C[i][j] = min { Y[k][j] : X[i][k] <= Y[k][j] }`.
pub fn minle_product(
    x: &Matrix,
    y: &Matrix,
    mode: MinleMode,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<Matrix> {
    Ok(minle_product_with_witness(x, y, mode, ledger, cfg)?.0)
}

/// [`minle_product`] that also reports, per entry, the smallest `k`
/// attaining the minimum (`None` when the entry is `+inf`).
pub fn minle_product_with_witness(
    x: &Matrix,
    y: &Matrix,
    mode: MinleMode,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<(Matrix, Vec<Vec<Option<usize>>>)> {
    if x.cols() != y.rows() {
        return Err(Error::DimensionMismatch(format!(
            "threshold product of {}x{} and {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    let mut c = Matrix::infinity(x.rows(), y.cols());
    let mut witness: Vec<Vec<Option<usize>>> = vec![vec![None; y.cols()]; x.rows()];
    match mode {
        MinleMode::Analytic => {
            if x.rows() != x.cols() || y.rows() != y.cols() || x.cols() != y.rows() {
                return Err(Error::InvalidParameter(
                    "analytic threshold product expects square operands".into(),
                ));
            }
            let n = x.rows() as f64;
            ledger.charge_analytic(MINLE_CHARGE_LABEL, n.powf(MINLE_EXPONENT).ceil() as u64);
            for (i, row) in witness.iter_mut().enumerate() {
                for (j, slot) in row.iter_mut().enumerate() {
                    let mut best: Option<(usize, Weight)> = None;
                    for k in 0..x.cols() {
                        let cand = y.get(k, j);
                        if x.get(i, k) <= cand && best.is_none_or(|(_, b)| cand < b) {
                            best = Some((k, cand));
                        }
                    }
                    if let Some((k, v)) = best {
                        c.set(i, j, v);
                        *slot = Some(k);
                    }
                }
            }
        }
        MinleMode::Trivial => {
            for (i, row) in witness.iter_mut().enumerate() {
                for (j, slot) in row.iter_mut().enumerate() {
                    let hit = qmin_filtered(
                        x.cols(),
                        |k| x.get(i, k) <= y.get(k, j),
                        |k| y.get(k, j),
                        ledger,
                        cfg,
                    )?;
                    if let Some((k, v)) = hit {
                        c.set(i, j, v);
                        *slot = Some(k);
                    }
                }
            }
        }
    }
    Ok((c, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate_instance, GenOptions};
    use crate::graph::InstanceKind;
    use crate::oracle;

    fn w(v: f64) -> Weight {
        Weight::finite(v)
    }

    fn exact() -> GroverConfig {
        GroverConfig::new(123)
    }

    #[test]
    fn bucketed_product_worked_example_with_exact_charges() {
        // A selects everything except (0, 1); B columns are already sorted.
        let a = BitMatrix::from_fn(2, 2, |i, j| !(i == 0 && j == 1));
        let b = Matrix::from_rows(vec![vec![w(5.0), w(2.0)], vec![w(3.0), w(2.0)]]).unwrap();
        let mut ledger = CostLedger::new();
        let c =
            bucketed_bool_min_product(&a, &b, 1, MatmulKernel::NaiveCubic, &mut ledger, &exact())
                .unwrap();
        assert_eq!(
            c,
            Matrix::from_rows(vec![vec![w(5.0), w(2.0)], vec![w(3.0), w(2.0)]]).unwrap()
        );
        let t = ledger.totals();
        assert_eq!(t.matmul_ops, 2 * 8, "two 2x2x2 level products");
        assert_eq!(t.classical_ops, 2 * 2 * 2, "4 entries x 2 level summaries");
        assert_eq!(t.quantum_queries, 4, "4 entries x ceil(sqrt(1))");
    }

    #[test]
    fn bucketed_product_matches_oracle_across_widths() {
        let g = generate_instance(InstanceKind::General, 23, 7, &GenOptions::default()).unwrap();
        let a = g.adjacency();
        let b = Matrix::from_fn(23, 23, |i, j| {
            if (i * 31 + j * 17) % 5 == 0 {
                Weight::INF
            } else {
                w(((i * 7 + j * 13) % 41) as f64)
            }
        });
        let want = oracle::brute_bool_min_product(&a, &b).unwrap();
        for d in [1, 4, 5, 23, 40] {
            let mut ledger = CostLedger::new();
            let got = bucketed_bool_min_product(
                &a,
                &b,
                d,
                MatmulKernel::NaiveCubic,
                &mut ledger,
                &exact(),
            )
            .unwrap();
            assert_eq!(got, want, "bucket width {d}");
            let levels = 23usize.div_ceil(d) as u64;
            assert_eq!(ledger.totals().classical_ops, 23 * 23 * levels);
            assert_eq!(ledger.totals().matmul_ops, levels * 23 * 23 * 23);
        }
    }

    #[test]
    fn bucketed_quantum_charge_is_sum_of_bucket_roots() {
        // Dense selector: every entry's first bucket is bucket 0, of size d,
        // except the ragged tail never applies. 3x3 with d = 2: bucket sizes
        // 2 and 1; all first hits land in bucket 0.
        let a = BitMatrix::from_fn(3, 3, |_, _| true);
        let b = Matrix::from_fn(3, 3, |i, _| w(i as f64));
        let mut ledger = CostLedger::new();
        bucketed_bool_min_product(&a, &b, 2, MatmulKernel::NaiveCubic, &mut ledger, &exact())
            .unwrap();
        assert_eq!(
            ledger.totals().quantum_queries,
            9 * 2,
            "9 entries x ceil(sqrt(2))"
        );
    }

    fn node_weight_geometry(points: &[f64]) -> Geometry {
        Geometry {
            weight_fn: WeightFn::NodeWeight,
            dim: 1,
            points: points.iter().map(|&p| vec![p]).collect(),
        }
    }

    fn star_oracle(geo: &Geometry, a_mask: &BitMatrix, b: &Matrix) -> Matrix {
        Matrix::from_fn(a_mask.rows(), b.cols(), |i, j| {
            let mut best = Weight::INF;
            for k in 0..a_mask.cols() {
                if a_mask.get(i, k) && b.get(k, j).is_finite() {
                    best = best.min(Weight::new(geo.induced_weight(i, k)) + b.get(k, j));
                }
            }
            best
        })
    }

    #[test]
    fn star_product_node_weight_small_case() {
        let geo = node_weight_geometry(&[10.0, 20.0, 30.0]);
        let a_mask = BitMatrix::from_fn(3, 3, |i, k| i != k);
        let b = Matrix::from_rows(vec![
            vec![w(1.0), Weight::INF],
            vec![w(5.0), w(2.0)],
            vec![w(3.0), Weight::INF],
        ])
        .unwrap();
        let mut ledger = CostLedger::new();
        let c = geometric_star_product(
            &geo,
            &a_mask,
            &b,
            2,
            PartitionStrategy::Sorted1d,
            MatmulKernel::NaiveCubic,
            &mut ledger,
            &exact(),
        )
        .unwrap();
        assert_eq!(c, star_oracle(&geo, &a_mask, &b));
        assert_eq!(c.get(0, 0), w(13.0), "10 + min(5, 3)");
        assert_eq!(c.get(0, 1), w(12.0));
        assert!(ledger.totals().quantum_queries > 0);
        assert!(
            ledger.totals().matmul_ops > 0,
            "eligibility products charged"
        );
    }

    #[test]
    fn star_product_matches_oracle_on_random_instances() {
        for (kind, strategy) in [
            (InstanceKind::NodeWeighted, PartitionStrategy::Sorted1d),
            (InstanceKind::EuclideanPlanar, PartitionStrategy::Grid2d),
            (InstanceKind::EuclideanPlanar, PartitionStrategy::Sorted1d),
        ] {
            for seed in 0..3 {
                let g = generate_instance(kind, 19, seed, &GenOptions::default()).unwrap();
                let geo = g.geometry.clone().unwrap();
                let a_mask = g.adjacency();
                // Use the instance's own weights as the value operand.
                let b = g.weights.clone();
                let want = star_oracle(&geo, &a_mask, &b);
                for r in [1, 3, 19] {
                    let mut ledger = CostLedger::new();
                    let got = geometric_star_product(
                        &geo,
                        &a_mask,
                        &b,
                        r,
                        strategy,
                        MatmulKernel::NaiveCubic,
                        &mut ledger,
                        &exact(),
                    )
                    .unwrap();
                    assert_eq!(got, want, "{kind:?} {strategy:?} seed {seed} r {r}");
                }
            }
        }
    }

    #[test]
    fn sparse_star_product_agrees_with_dense() {
        let g = generate_instance(InstanceKind::EuclideanPlanar, 17, 4, &GenOptions::default())
            .unwrap();
        let geo = g.geometry.clone().unwrap();
        let a_mask = g.adjacency();
        let b = g.weights.clone();
        let mut ledger = CostLedger::new();
        let dense = geometric_star_product(
            &geo,
            &a_mask,
            &b,
            4,
            PartitionStrategy::Grid2d,
            MatmulKernel::NaiveCubic,
            &mut ledger,
            &exact(),
        )
        .unwrap();
        let requests: Vec<(usize, usize)> = vec![(0, 0), (3, 11), (16, 2), (5, 5), (3, 11)];
        let got = sparse_geometric_star_product(
            &geo,
            &a_mask,
            &b,
            &requests,
            4,
            PartitionStrategy::Grid2d,
            &mut ledger,
            &exact(),
        )
        .unwrap();
        for (pos, &(i, j)) in requests.iter().enumerate() {
            assert_eq!(got[pos], dense.get(i, j), "request ({i}, {j})");
        }
    }

    #[test]
    fn trace_records_pool_sizes() {
        let g =
            generate_instance(InstanceKind::NodeWeighted, 16, 9, &GenOptions::default()).unwrap();
        let geo = g.geometry.clone().unwrap();
        let a_mask = g.adjacency();
        let b = g.weights.clone();
        let mut ledger = CostLedger::new();
        let (c, trace) = geometric_star_product_traced(
            &geo,
            &a_mask,
            &b,
            4,
            PartitionStrategy::Sorted1d,
            MatmulKernel::NaiveCubic,
            &mut ledger,
            &exact(),
        )
        .unwrap();
        assert_eq!(trace.len(), 16 * 16);
        let finite_entries = (0..16)
            .flat_map(|i| (0..16).map(move |j| (i, j)))
            .filter(|&(i, j)| c.get(i, j).is_finite())
            .count();
        let pooled = trace.iter().filter(|t| t.pool > 0).count();
        assert!(
            pooled >= finite_entries,
            "every finite entry ran a refinement"
        );
    }

    #[test]
    fn trivial_product_charge_matches_formula() {
        let a = Matrix::from_fn(8, 8, |i, j| if i == j { Weight::ZERO } else { w(1.0) });
        let mut ledger = CostLedger::new();
        let c = trivial_distance_product(&a, &a, &mut ledger, &exact()).unwrap();
        assert_eq!(c, oracle::brute_distance_product(&a, &a).unwrap());
        assert_eq!(
            ledger.totals().quantum_queries,
            64 * 3,
            "64 entries x ceil(sqrt(8))"
        );
    }

    #[test]
    fn minle_analytic_matches_oracle_and_charges_closed_form() {
        let g = generate_instance(InstanceKind::Apnp, 10, 2, &GenOptions::default()).unwrap();
        let x = g.weights.clone();
        let y = Matrix::from_fn(10, 10, |i, j| {
            if (i + j) % 3 == 0 {
                Weight::INF
            } else {
                w(((i * 13 + j * 7) % 50) as f64)
            }
        });
        let want = oracle::brute_minle_product(&x, &y).unwrap();
        let mut ledger = CostLedger::new();
        let got = minle_product(&x, &y, MinleMode::Analytic, &mut ledger, &exact()).unwrap();
        assert_eq!(got, want);
        assert_eq!(ledger.totals().analytic_total, 298, "ceil(10^2.473)");
        assert_eq!(ledger.totals().quantum_queries, 0);
        assert_eq!(ledger.analytic_sum(MINLE_CHARGE_LABEL), 298);
    }

    #[test]
    fn minle_trivial_matches_oracle_with_per_entry_charges() {
        let x = Matrix::from_fn(6, 6, |i, j| w(((i * 5 + j * 3) % 11) as f64));
        let y = Matrix::from_fn(6, 6, |i, j| w(((i * 7 + j) % 13) as f64));
        let want = oracle::brute_minle_product(&x, &y).unwrap();
        let mut ledger = CostLedger::new();
        let got = minle_product(&x, &y, MinleMode::Trivial, &mut ledger, &exact()).unwrap();
        assert_eq!(got, want);
        assert_eq!(
            ledger.totals().quantum_queries,
            36 * 3,
            "36 entries x ceil(sqrt(6))"
        );
    }

    #[test]
    fn minle_witnesses_point_at_smallest_attaining_index() {
        let x = Matrix::filled(3, 3, w(1.0));
        let y = Matrix::from_fn(3, 3, |k, _| if k == 0 { w(4.0) } else { w(2.0) });
        for mode in [MinleMode::Trivial, MinleMode::Analytic] {
            let mut ledger = CostLedger::new();
            let (c, wit) = minle_product_with_witness(&x, &y, mode, &mut ledger, &exact()).unwrap();
            assert_eq!(c.get(0, 0), w(2.0));
            assert_eq!(
                wit[0][0],
                Some(1),
                "{mode:?} picks the first of the tied rows"
            );
        }
    }

    #[test]
    fn products_reject_mismatched_shapes() {
        let a3 = BitMatrix::zeros(3, 3);
        let b4 = Matrix::infinity(4, 4);
        let mut ledger = CostLedger::new();
        assert!(bucketed_bool_min_product(
            &a3,
            &b4,
            1,
            MatmulKernel::NaiveCubic,
            &mut ledger,
            &exact()
        )
        .is_err());
        assert!(minle_product(
            &Matrix::infinity(3, 3),
            &b4,
            MinleMode::Trivial,
            &mut ledger,
            &exact()
        )
        .is_err());
        assert!(
            trivial_distance_product(&Matrix::infinity(3, 3), &b4, &mut ledger, &exact()).is_err()
        );
    }
}
