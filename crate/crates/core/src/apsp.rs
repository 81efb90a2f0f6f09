//! End-to-end all-pairs pipelines over the simulated query-cost model.
//!
//! Every algorithm here follows the same two-stage shape. A *short-path*
//! stage handles pairs whose optimal witness uses few edges, by repeated
//! structured matrix products (bucketed boolean-min, geometric star, or
//! threshold products). A *long-path* stage handles the remaining pairs: a
//! random hitting set `S` intersects, with high probability, every optimal
//! witness that is long enough, so per-`S`-vertex single-source sweeps plus
//! a combine step cover them. The final table is the elementwise minimum of
//! the stages (plus the trivial diagonal).
//!
//! Results are computed exactly by classical means while the ledger is
//! charged what the modelled quantum subroutines would cost; see the crate
//! docs. Each pipeline closes named ledger phases (`short_product_3`,
//! `dijkstra_seed`, `combine`, `merge`, ...) so tests can reconcile its
//! total charge against the closed-form cost decomposition.
//!
//! Failure injection (`delta > 0` in [`GroverConfig`]) only ever replaces a
//! search result with another *genuine* candidate, so every stage remains
//! sound: stage tables never report a value below the true optimum, and the
//! final merge degrades to an overestimate rather than an invalid answer.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Geometry, WeightFn, WeightedGraph};
use crate::hitting::{sample_hitting_set, verify_and_repair, HittingSet};
use crate::ledger::CostLedger;
use crate::matprod::{
    bucketed_bool_min_product, geometric_star_product, minle_product_with_witness,
    sparse_geometric_star_product, trivial_distance_product, MinleMode,
};
use crate::matrix::{bool_matmul, elementwise_min, BitMatrix, MatmulKernel, Matrix};
use crate::oracle::Triangle;
use crate::params::ParameterPlan;
use crate::partition::PartitionStrategy;
use crate::qmodel::{qmin, GroverConfig};
use crate::sssp::{
    nondecreasing_pass, quantum_dijkstra, quantum_dijkstra_reverse, PassDirection, PassOutcome,
};
use crate::weight::Weight;

/// Column-partition strategy induced by an instance's weight function:
/// scalar vertex weights sort on a line, planar points bucket on a grid.
pub fn strategy_for(geometry: &Geometry) -> PartitionStrategy {
    match geometry.weight_fn {
        WeightFn::NodeWeight => PartitionStrategy::Sorted1d,
        WeightFn::Euclidean => PartitionStrategy::Grid2d,
    }
}

fn require_geometry(g: &WeightedGraph) -> Result<&Geometry> {
    g.geometry.as_ref().ok_or_else(|| {
        Error::UnsupportedInstance(format!(
            "{:?} instance carries no geometry, which this pipeline needs",
            g.kind
        ))
    })
}

fn require_param(value: Option<usize>, name: &str, plan: &ParameterPlan) -> Result<usize> {
    value.ok_or_else(|| {
        Error::InvalidParameter(format!(
            "parameter plan for task {} does not derive `{name}`",
            plan.task.name()
        ))
    })
}

/// `out[i][j] = row_add[i] + m[i][j]`, preserving infinities.
fn add_row_constant(row_add: &[Weight], m: &Matrix) -> Matrix {
    assert_eq!(row_add.len(), m.rows(), "row constant length");
    Matrix::from_fn(m.rows(), m.cols(), |i, j| row_add[i] + m.get(i, j))
}

/// Which combine step [`apsp_node_weighted`] uses for long paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeWeightedVariant {
    /// One Grover minimum per pair over the hitting set:
    /// `d(u, v) = min_{x in S} d(u, x) + d(x, v)`.
    GroverCombine,
    /// No per-pair search: seed a matrix with the `S`-rows of distances and
    /// run the same product recurrence as the short stage over it.
    ProductCombine,
}

impl NodeWeightedVariant {
    pub fn name(self) -> &'static str {
        match self {
            NodeWeightedVariant::GroverCombine => "grover-combine",
            NodeWeightedVariant::ProductCombine => "product-combine",
        }
    }

    /// Parses [`NodeWeightedVariant::name`] output.
    pub fn parse(s: &str) -> Result<NodeWeightedVariant> {
        match s {
            "grover-combine" => Ok(NodeWeightedVariant::GroverCombine),
            "product-combine" => Ok(NodeWeightedVariant::ProductCombine),
            other => Err(Error::InvalidParameter(format!(
                "unknown node-weighted variant `{other}`"
            ))),
        }
    }
}

/// APSP for instances whose edge weight is the source's vertex weight.
///
/// Short stage: with `A` the adjacency mask, `W` the weight matrix and `p`
/// the vertex weights, iterate `B <- p + (A min-product B)` `s` times from
/// `B = W`, each product bucketed to `d` levels; the iterate after `z`
/// products is optimal over paths of at most `z + 1` edges. Long stage:
/// sample a hitting set `S` for path length `s`, run one modelled quantum
/// Dijkstra per `S`-vertex, and combine per `variant`. Returns the
/// elementwise minimum of both stages and the zero diagonal.
pub fn apsp_node_weighted(
    g: &WeightedGraph,
    variant: NodeWeightedVariant,
    plan: &ParameterPlan,
    kernel: MatmulKernel,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<Matrix> {
    let geometry = require_geometry(g)?;
    let s = require_param(plan.s, "s", plan)?;
    let d = require_param(plan.d, "d", plan)?;
    let n = g.n;
    let p: Vec<Weight> = (0..n)
        .map(|u| Weight::finite(geometry.points[u][0]))
        .collect();
    ledger.mark();

    let a = g.adjacency();
    let mut b = g.weights.clone();
    let mut short = b.clone();
    for z in 1..=s {
        let prod = bucketed_bool_min_product(&a, &b, d, kernel, ledger, cfg)?;
        b = add_row_constant(&p, &prod);
        short.min_assign(&b);
        ledger.snapshot(&format!("short_product_{z}"));
    }

    let hs = sample_hitting_set(n, s, g.seed)?;
    ledger.snapshot("hitting");

    let combine = match variant {
        NodeWeightedVariant::GroverCombine => {
            let mut from_x: Vec<Vec<Weight>> = Vec::with_capacity(hs.len());
            let mut to_x: Vec<Vec<Weight>> = Vec::with_capacity(hs.len());
            for &x in &hs.vertices {
                from_x.push(quantum_dijkstra(g, x, ledger)?);
                to_x.push(quantum_dijkstra_reverse(g, x, ledger)?);
            }
            ledger.snapshot("dijkstra_seed");
            let mut combine = Matrix::infinity(n, n);
            if !hs.is_empty() {
                // `u` and `v` index the inner dimension of every seeded
                // table at once, so an iterator form has nothing to walk.
                #[allow(clippy::needless_range_loop)]
                for u in 0..n {
                    for v in 0..n {
                        let (_, best) =
                            qmin(hs.len(), |idx| to_x[idx][u] + from_x[idx][v], ledger, cfg)?;
                        combine.set(u, v, best);
                    }
                }
            }
            ledger.snapshot("combine");
            combine
        }
        NodeWeightedVariant::ProductCombine => {
            let mut seeded = Matrix::infinity(n, n);
            for &x in &hs.vertices {
                let dist = quantum_dijkstra(g, x, ledger)?;
                seeded.row_mut(x).copy_from_slice(&dist);
            }
            ledger.snapshot("dijkstra_seed");
            let mut combine = seeded.clone();
            for z in 1..=s {
                let prod = bucketed_bool_min_product(&a, &seeded, d, kernel, ledger, cfg)?;
                seeded = add_row_constant(&p, &prod);
                combine.min_assign(&seeded);
                ledger.snapshot(&format!("combine_product_{z}"));
            }
            combine
        }
    };

    let mut out = elementwise_min(&short, &combine)?;
    out.min_assign(&Matrix::min_plus_identity(n));
    ledger.snapshot("merge");
    Ok(out)
}

/// APSP for geometric instances via star-product powering.
///
/// Short stage: `A`-powers `A^(z+1) = A (star) A^(z)` for `z < l`, merged
/// into `Abar`, cover paths of at most `l` edges. Long stage: seed `B^(0)`
/// with one modelled quantum Dijkstra row per hitting-set vertex and power
/// it `l` times with the same product, merging into `Bbar`. The column
/// partitions use `plan.r` cells and the strategy induced by the geometry.
pub fn apsp_geometric(
    g: &WeightedGraph,
    plan: &ParameterPlan,
    kernel: MatmulKernel,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<Matrix> {
    let geometry = require_geometry(g)?;
    let r = require_param(plan.r, "r", plan)?;
    let ell = require_param(plan.ell, "l", plan)?;
    let strategy = strategy_for(geometry);
    let n = g.n;
    ledger.mark();

    let a_mask = g.adjacency();
    let mut a_pow = g.weights.clone();
    let mut abar = a_pow.clone();
    for z in 2..=ell {
        a_pow =
            geometric_star_product(geometry, &a_mask, &a_pow, r, strategy, kernel, ledger, cfg)?;
        abar.min_assign(&a_pow);
        ledger.snapshot(&format!("a_power_{z}"));
    }

    let hs = sample_hitting_set(n, ell, g.seed)?;
    ledger.snapshot("hitting");
    let mut b = Matrix::infinity(n, n);
    for &x in &hs.vertices {
        let dist = quantum_dijkstra(g, x, ledger)?;
        b.row_mut(x).copy_from_slice(&dist);
    }
    ledger.snapshot("dijkstra_seed");

    let mut bbar = b.clone();
    for z in 1..=ell {
        b = geometric_star_product(geometry, &a_mask, &b, r, strategy, kernel, ledger, cfg)?;
        bbar.min_assign(&b);
        ledger.snapshot(&format!("b_power_{z}"));
    }

    let mut out = elementwise_min(&abar, &bbar)?;
    out.min_assign(&Matrix::min_plus_identity(n));
    ledger.snapshot("merge");
    Ok(out)
}

/// Short stage of [`apsp_geometric_bounded`]: distances finalized layer by
/// layer. Returns the finalized table (diagonal zero included) and the
/// number of layers processed. Layer `s` finalizes exactly the pairs with
/// true distance in `[s, s+1)`: such a distance decomposes into a last edge
/// of weight in `[1, c]` plus an already-finalized prefix in `[s-c, s)`, so
/// one sparse star product against the value-windowed table computes it.
fn bounded_layers(
    g: &WeightedGraph,
    c: f64,
    r: usize,
    num_layers: usize,
    kernel: MatmulKernel,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<(Matrix, usize)> {
    let geometry = require_geometry(g)?;
    let strategy = strategy_for(geometry);
    let n = g.n;
    let a_mask = g.adjacency();
    let mut dist = Matrix::min_plus_identity(n);

    for s in 1..=num_layers {
        let lo = s as f64 - c;
        let hi = s as f64;
        let window = Matrix::from_fn(n, n, |k, j| {
            let v = dist.get(k, j);
            if v.is_finite() && v.raw() >= lo && v.raw() < hi {
                v
            } else {
                Weight::INF
            }
        });
        let window_mask = BitMatrix::from_fn(n, n, |k, j| window.get(k, j).is_finite());
        let detected = bool_matmul(&a_mask, &window_mask, kernel, ledger)?;
        let mut requests = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && !dist.get(i, j).is_finite() && detected.get(i, j) {
                    requests.push((i, j));
                }
            }
        }
        let values = sparse_geometric_star_product(
            geometry, &a_mask, &window, &requests, r, strategy, ledger, cfg,
        )?;
        for (&(i, j), &v) in requests.iter().zip(&values) {
            if v.is_finite() && v.raw() >= s as f64 && v.raw() < s as f64 + 1.0 {
                dist.set(i, j, v);
            }
        }
        ledger.snapshot(&format!("layer_{s}"));
    }
    Ok((dist, num_layers))
}

/// APSP for geometric instances whose finite weights lie in `[1, c]`.
///
/// Short stage: distances in `[1, c*l)` are finalized layer by layer (see
/// [`bounded_layers`]); each layer costs one boolean detection product plus
/// a sparse star product over the entries it may finalize. Long stage:
/// pairs at distance `c*l` or more use at least `l` edges, so a hitting set
/// for path length `l`, one forward and one backward modelled Dijkstra per
/// `S`-vertex, and a trivial distance product `B' (star) B` over the `|S|`
/// support cover them.
pub fn apsp_geometric_bounded(
    g: &WeightedGraph,
    plan: &ParameterPlan,
    kernel: MatmulKernel,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<Matrix> {
    let r = require_param(plan.r, "r", plan)?;
    let ell = require_param(plan.ell, "l", plan)?;
    let c = plan.c;
    let n = g.n;
    for u in 0..n {
        for v in 0..n {
            let w = g.weight(u, v);
            if u != v && w.is_finite() && !(1.0..=c).contains(&w.raw()) {
                return Err(Error::InvalidParameter(format!(
                    "weight {} on edge ({u}, {v}) outside [1, {c}]",
                    w.raw()
                )));
            }
        }
    }
    ledger.mark();

    let num_layers = (c * ell as f64).ceil() as usize;
    let (dist, _) = bounded_layers(g, c, r, num_layers, kernel, ledger, cfg)?;

    let hs = sample_hitting_set(n, ell, g.seed)?;
    ledger.snapshot("hitting");
    let mut b = Matrix::infinity(hs.len(), n);
    let mut b_prime = Matrix::infinity(n, hs.len());
    for (idx, &x) in hs.vertices.iter().enumerate() {
        let from_x = quantum_dijkstra(g, x, ledger)?;
        b.row_mut(idx).copy_from_slice(&from_x);
        let to_x = quantum_dijkstra_reverse(g, x, ledger)?;
        for (u, &w) in to_x.iter().enumerate() {
            b_prime.set(u, idx, w);
        }
    }
    ledger.snapshot("dijkstra_seed");
    let combine = if hs.is_empty() {
        Matrix::infinity(n, n)
    } else {
        trivial_distance_product(&b_prime, &b, ledger, cfg)?
    };
    ledger.snapshot("combine");

    let mut out = elementwise_min(&dist, &combine)?;
    out.min_assign(&Matrix::min_plus_identity(n));
    ledger.snapshot("merge");
    Ok(out)
}

/// APSP for instances with at most `L` distinct outgoing weights per vertex.
///
/// Each vertex `u` gets a sorted palette of its distinct outgoing weights
/// and one boolean mask per palette slot (`masks[t][u][v] = 1` iff edge
/// `(u, v)` carries `u`'s `t`-th smallest weight). One recurrence step maps
/// `B` to `min_t (palette[u][t] + (masks[t] min-product B))`, i.e. `L`
/// bucketed products. Short stage: `s` steps from `B = W`. Long stage: `s`
/// steps from the hitting-set-seeded distance rows, as in
/// [`apsp_geometric`]. Errors if some vertex exceeds the palette bound.
pub fn apsp_small_l(
    g: &WeightedGraph,
    plan: &ParameterPlan,
    kernel: MatmulKernel,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<Matrix> {
    let s = require_param(plan.s, "s", plan)?;
    let d = require_param(plan.d, "d", plan)?;
    let l = plan.l;
    let n = g.n;

    let mut palettes: Vec<Vec<f64>> = Vec::with_capacity(n);
    for u in 0..n {
        let mut row: Vec<f64> = (0..n)
            .filter(|&v| v != u && g.weight(u, v).is_finite())
            .map(|v| g.weight(u, v).raw())
            .collect();
        row.sort_by(|a, b| a.partial_cmp(b).expect("finite weights"));
        row.dedup();
        if row.len() > l {
            return Err(Error::InvalidParameter(format!(
                "vertex {u} has {} distinct outgoing weights, palette allows {l}",
                row.len()
            )));
        }
        palettes.push(row);
    }
    let masks: Vec<BitMatrix> = (0..l)
        .map(|t| {
            BitMatrix::from_fn(n, n, |u, v| {
                u != v
                    && g.weight(u, v).is_finite()
                    && palettes[u].get(t) == Some(&g.weight(u, v).raw())
            })
        })
        .collect();
    ledger.mark();

    let step = |b: &Matrix, ledger: &mut CostLedger| -> Result<Matrix> {
        let mut out = Matrix::infinity(n, n);
        for (t, mask) in masks.iter().enumerate() {
            let prod = bucketed_bool_min_product(mask, b, d, kernel, ledger, cfg)?;
            let shifted = Matrix::from_fn(n, n, |i, j| match palettes[i].get(t) {
                Some(&w) => Weight::finite(w) + prod.get(i, j),
                None => Weight::INF,
            });
            out.min_assign(&shifted);
        }
        Ok(out)
    };

    let mut b = g.weights.clone();
    let mut short = b.clone();
    for z in 1..=s {
        b = step(&b, ledger)?;
        short.min_assign(&b);
        ledger.snapshot(&format!("short_step_{z}"));
    }

    let hs = sample_hitting_set(n, s, g.seed)?;
    ledger.snapshot("hitting");
    let mut seeded = Matrix::infinity(n, n);
    for &x in &hs.vertices {
        let dist = quantum_dijkstra(g, x, ledger)?;
        seeded.row_mut(x).copy_from_slice(&dist);
    }
    ledger.snapshot("dijkstra_seed");
    let mut combine = seeded.clone();
    for z in 1..=s {
        seeded = step(&seeded, ledger)?;
        combine.min_assign(&seeded);
        ledger.snapshot(&format!("combine_step_{z}"));
    }

    let mut out = elementwise_min(&short, &combine)?;
    out.min_assign(&Matrix::min_plus_identity(n));
    ledger.snapshot("merge");
    Ok(out)
}

/// Result of the all-pairs nondecreasing-paths pipeline: the answer table
/// plus the artifacts cost reconciliation needs (the hitting set, one pass
/// record per sweep, and the count of threshold products performed).
#[derive(Debug, Clone)]
pub struct ApnpOutcome {
    /// `table[u][v]` = minimal last-edge weight over nondecreasing paths
    /// `u -> v`; `+inf` if none, `-inf` on the diagonal.
    pub table: Matrix,
    pub hitting: HittingSet,
    /// Backward and forward sweeps, two per hitting-set vertex, in order.
    pub passes: Vec<PassOutcome>,
    /// Number of threshold products charged by the short stage (= plan `s`).
    pub products: usize,
    /// Number of exactly-`s`-edge canonical witness paths handed to the
    /// hitting-set verifier.
    pub witness_paths: usize,
}

/// All-pairs nondecreasing paths: minimize the last-edge weight over paths
/// whose edge weights never decrease.
///
/// Short stage: `s` threshold products `B <- (B minle A)` from the diagonal
/// seed (`-inf` diagonal, `+inf` elsewhere), where `A` is the weight matrix
/// with a `-inf` diagonal. A `-inf` self-loop never follows a finite edge,
/// so it acts as leading padding: the iterate after `t` products is optimal
/// over nondecreasing paths of at most `t` real edges. The per-entry
/// smallest-index witnesses of the products reconstruct one canonical path
/// per finite entry; those with exactly `s` real edges form the family `K`
/// that the hitting set must intersect (longer optima contain such a path
/// as a prefix after canonical exchange).
///
/// Long stage: per hitting-set vertex `v`, one backward and one forward
/// sweep are charged per the model, then an exact classical stitch computes
/// every pair routed through `v`: a descending-threshold arrival table
/// `W_v[u]` (minimal last edge into `v`), and per target `j` a step
/// function over departure thresholds whose breakpoints answer "minimal
/// last edge of a continuation leaving `v` at weight at least `a`" by
/// binary search. The merge of both stages is exact because every pair is
/// covered by the short table or routed through a hit vertex.
pub fn apnp(
    g: &WeightedGraph,
    plan: &ParameterPlan,
    mode: MinleMode,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<ApnpOutcome> {
    let s = require_param(plan.s, "s", plan)?;
    let n = g.n;
    ledger.mark();

    let a = Matrix::from_fn(n, n, |u, v| {
        if u == v {
            Weight::NEG_INF
        } else {
            g.weight(u, v)
        }
    });

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
    let mut witness_levels: Vec<Vec<Vec<Option<usize>>>> = Vec::with_capacity(s);
    for t in 1..=s {
        let (next, wit) = minle_product_with_witness(&b, &a, mode, ledger, cfg)?;
        b = next;
        witness_levels.push(wit);
        ledger.snapshot(&format!("short_product_{t}"));
    }
    let short = b;

    // Canonical witness per finite entry: walk the per-level witnesses back
    // from the final product, then strip the leading padding repeats of the
    // source vertex. Exactly-`s`-edge paths are the ones a longer optimum
    // can have as a canonical prefix.
    let mut k_paths: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !short.get(i, j).is_finite() {
                continue;
            }
            let mut seq = vec![j];
            let mut cur = j;
            for level in witness_levels.iter().rev() {
                let k = level[i][cur].expect("finite entries carry witnesses");
                seq.push(k);
                cur = k;
            }
            debug_assert_eq!(cur, i, "witness walk ends at the source");
            seq.reverse();
            while seq.len() > 1 && seq[0] == i && seq[1] == i {
                seq.remove(0);
            }
            if seq.len() == s + 1 {
                k_paths.push(seq);
            }
        }
    }
    let witness_paths = k_paths.len();
    let hs = verify_and_repair(n, s, g.seed, &k_paths)?;
    ledger.snapshot("hitting");

    // Edge classes shared by every per-`v` stitch. Forward classes descend
    // by weight; the continuation ("reversed, negated") classes also
    // descend in their own weights, which is ascending in the originals.
    let forward_classes = group_edges_descending(n, |x, y| g.weight(x, y));
    let continuation_classes = group_edges_descending(n, |x, y| {
        let w = g.weight(y, x);
        if w.is_finite() {
            Weight::new(-w.raw())
        } else {
            Weight::INF
        }
    });

    let mut passes = Vec::with_capacity(2 * hs.len());
    let mut long = Matrix::infinity(n, n);
    for &v in &hs.vertices {
        passes.push(nondecreasing_pass(g, v, PassDirection::Backward, ledger)?);
        passes.push(nondecreasing_pass(g, v, PassDirection::Forward, ledger)?);

        let (arrival, _) = arrival_dp(n, &forward_classes, v, false, ledger);
        let (_, departures) = arrival_dp(n, &continuation_classes, v, true, ledger);
        let mut lookups = 0u64;
        for (u, &arrival_u) in arrival.iter().enumerate() {
            let beta = if u == v {
                f64::INFINITY
            } else if arrival_u.is_finite() {
                -arrival_u.raw()
            } else {
                continue;
            };
            for (j, departures_j) in departures.iter().enumerate() {
                if j == v {
                    if u != v && arrival_u < long.get(u, j) {
                        long.set(u, j, arrival_u);
                    }
                } else {
                    lookups += 1;
                    let gamma = continuation_lookup(departures_j, beta);
                    if gamma < long.get(u, j) {
                        long.set(u, j, gamma);
                    }
                }
            }
        }
        ledger.charge_classical(lookups);
    }
    ledger.snapshot("long_stage");

    let table = elementwise_min(&short, &long)?;
    ledger.snapshot("merge");
    Ok(ApnpOutcome {
        table,
        hitting: hs,
        passes,
        products: s,
        witness_paths,
    })
}

/// Finite off-diagonal edges grouped by weight, heaviest class first; ties
/// inside a class are ordered by `(x, y)` for determinism.
fn group_edges_descending(
    n: usize,
    weight_of: impl Fn(usize, usize) -> Weight,
) -> Vec<(f64, Vec<(usize, usize)>)> {
    let mut edges: Vec<(f64, usize, usize)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y {
                let w = weight_of(x, y);
                if w.is_finite() {
                    edges.push((w.raw(), x, y));
                }
            }
        }
    }
    edges.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .expect("finite weights")
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });
    let mut classes: Vec<(f64, Vec<(usize, usize)>)> = Vec::new();
    for (w, x, y) in edges {
        match classes.last_mut() {
            Some((cw, members)) if *cw == w => members.push((x, y)),
            _ => classes.push((w, vec![(x, y)])),
        }
    }
    classes
}

/// Descending-threshold arrival scan towards `target`.
///
/// After processing the classes down to weight `t`, `g[x]` is the minimal
/// last-edge weight over nondecreasing paths `x -> target` whose first edge
/// weighs at least `t`. One class is absorbed by seeding every class edge
/// `(x, y)` with `t` (if `y` is the target) or the previous `g[y]`
/// (continuing with a strictly heavier first edge), then settling values
/// ascending while relaxing across same-class predecessor edges, which
/// covers equal-weight chains. When `record` is set, each node's change
/// list `(class weight, new value)` is kept: a step function of the
/// threshold, with both coordinates strictly decreasing down the list.
fn arrival_dp(
    n: usize,
    classes: &[(f64, Vec<(usize, usize)>)],
    target: usize,
    record: bool,
    ledger: &mut CostLedger,
) -> (Vec<Weight>, Vec<Vec<(f64, f64)>>) {
    let mut g_val = vec![Weight::INF; n];
    let mut changes: Vec<Vec<(f64, f64)>> = vec![Vec::new(); n];
    let mut h = vec![Weight::INF; n];
    let mut stamp = vec![u32::MAX; n];
    let mut settled = vec![u32::MAX; n];
    let mut classical = 0u64;

    for (ci, (t, edges)) in classes.iter().enumerate() {
        let ci = ci as u32;
        let tw = Weight::finite(*t);
        let mut preds: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(x, y) in edges {
            preds.entry(y).or_default().push(x);
        }
        let mut heap: BinaryHeap<Reverse<(Weight, usize)>> = BinaryHeap::new();
        for &(x, y) in edges {
            classical += 1;
            let cand = if y == target { tw } else { g_val[y] };
            if !cand.is_finite() {
                continue;
            }
            let current = if stamp[x] == ci { h[x] } else { Weight::INF };
            if cand < current {
                h[x] = cand;
                stamp[x] = ci;
                heap.push(Reverse((cand, x)));
            }
        }
        let mut improved: Vec<(usize, Weight)> = Vec::new();
        while let Some(Reverse((val, x))) = heap.pop() {
            if settled[x] == ci || stamp[x] != ci || h[x] != val {
                continue;
            }
            settled[x] = ci;
            classical += 1;
            improved.push((x, val));
            if let Some(sources) = preds.get(&x) {
                for &p in sources {
                    classical += 1;
                    if settled[p] == ci {
                        continue;
                    }
                    let current = if stamp[p] == ci { h[p] } else { Weight::INF };
                    if val < current {
                        h[p] = val;
                        stamp[p] = ci;
                        heap.push(Reverse((val, p)));
                    }
                }
            }
        }
        for (x, val) in improved {
            if val < g_val[x] {
                g_val[x] = val;
                if record {
                    changes[x].push((*t, val.raw()));
                }
            }
        }
    }
    ledger.charge_classical(classical);
    (g_val, changes)
}

/// Minimal last-edge weight of a continuation whose first edge is at least
/// `-beta`, read off a change list produced by [`arrival_dp`] over the
/// reversed-negated edges. The list's values decrease, so the first entry
/// at most `beta` has the largest usable class weight; negating it maps
/// back to the original weights.
fn continuation_lookup(changes: &[(f64, f64)], beta: f64) -> Weight {
    let idx = changes.partition_point(|&(_, g)| g > beta);
    if idx == changes.len() {
        Weight::INF
    } else {
        Weight::finite(-changes[idx].0)
    }
}

/// Minimum-weight triangle by one modelled Grover minimum over all `n^3`
/// ordered triples; non-triangles (wrong order or a missing edge) read as
/// `+inf`. Ties resolve to the lexicographically smallest `(i, j, k)`,
/// matching the brute oracle. Returns `None` when no triangle exists or
/// when an injected failure lands on a non-triangle.
pub fn min_triangle_quantum(
    g: &WeightedGraph,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<Option<Triangle>> {
    if g.directed {
        return Err(Error::UnsupportedInstance(
            "triangle search expects an undirected instance".into(),
        ));
    }
    let n = g.n;
    if n < 3 {
        return Ok(None);
    }
    ledger.mark();
    let value_at = |idx: usize| -> Weight {
        let i = idx / (n * n);
        let j = (idx / n) % n;
        let k = idx % n;
        if i < j && j < k {
            let (wij, wjk, wik) = (g.weight(i, j), g.weight(j, k), g.weight(i, k));
            if wij.is_finite() && wjk.is_finite() && wik.is_finite() {
                return wij + wjk + wik;
            }
        }
        Weight::INF
    };
    let (idx, weight) = qmin(n * n * n, value_at, ledger, cfg)?;
    ledger.snapshot("search");
    if !weight.is_finite() {
        return Ok(None);
    }
    Ok(Some(Triangle {
        i: idx / (n * n),
        j: (idx / n) % n,
        k: idx % n,
        weight,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate_instance, GenOptions};
    use crate::graph::InstanceKind;
    use crate::oracle;
    use crate::params::{select_parameters, Task, OMEGA_MODEL_DEFAULT};
    use crate::sssp::{quantum_dijkstra_charge, QUANTUM_DIJKSTRA_LABEL};

    fn fresh() -> (CostLedger, GroverConfig) {
        (CostLedger::new(), GroverConfig::new(7))
    }

    fn assert_tables_equal(got: &Matrix, want: &Matrix, context: &str) {
        for i in 0..want.rows() {
            for j in 0..want.cols() {
                assert_eq!(got.get(i, j), want.get(i, j), "{context}: entry ({i}, {j})");
            }
        }
    }

    #[test]
    fn node_weighted_matches_oracle_in_both_variants() {
        for seed in 0..8 {
            let g = generate_instance(InstanceKind::NodeWeighted, 18, seed, &GenOptions::default())
                .unwrap();
            let plan =
                select_parameters(Task::NodeWeightedApsp, g.n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT)
                    .unwrap();
            let want = oracle::brute_apsp(&g);
            for variant in [
                NodeWeightedVariant::GroverCombine,
                NodeWeightedVariant::ProductCombine,
            ] {
                let (mut ledger, cfg) = fresh();
                let got = apsp_node_weighted(
                    &g,
                    variant,
                    &plan,
                    MatmulKernel::NaiveCubic,
                    &mut ledger,
                    &cfg,
                )
                .unwrap();
                assert_tables_equal(&got, &want, &format!("seed {seed} {}", variant.name()));
            }
        }
    }

    #[test]
    fn node_weighted_ledger_decomposes_into_stage_charges() {
        let g =
            generate_instance(InstanceKind::NodeWeighted, 24, 3, &GenOptions::default()).unwrap();
        let plan =
            select_parameters(Task::NodeWeightedApsp, g.n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
        let (mut ledger, cfg) = fresh();
        apsp_node_weighted(
            &g,
            NodeWeightedVariant::GroverCombine,
            &plan,
            MatmulKernel::NaiveCubic,
            &mut ledger,
            &cfg,
        )
        .unwrap();
        let hs = sample_hitting_set(g.n, plan.s.unwrap(), g.seed).unwrap();
        assert_eq!(
            ledger.analytic_sum(QUANTUM_DIJKSTRA_LABEL),
            2 * hs.len() as u64 * quantum_dijkstra_charge(g.n),
            "one forward and one backward sweep per hitting-set vertex"
        );
        let combine_quantum: u64 = ledger
            .phases()
            .iter()
            .filter(|p| p.phase == "combine")
            .map(|p| p.deltas.quantum_queries)
            .sum();
        let per_pair = crate::qmodel::grover_charge(cfg.grover_constant, hs.len() as u64);
        assert_eq!(combine_quantum, (g.n * g.n) as u64 * per_pair);
        let phase_total: u64 = ledger
            .phases()
            .iter()
            .map(|p| p.deltas.charged_total())
            .sum();
        assert_eq!(phase_total, ledger.totals().charged_total());
    }

    #[test]
    fn geometric_matches_oracle_on_both_geometries() {
        for seed in 0..6 {
            let node =
                generate_instance(InstanceKind::NodeWeighted, 20, seed, &GenOptions::default())
                    .unwrap();
            let plan_1d =
                select_parameters(Task::GeometricApsp, node.n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT)
                    .unwrap();
            let (mut ledger, cfg) = fresh();
            let got = apsp_geometric(&node, &plan_1d, MatmulKernel::NaiveCubic, &mut ledger, &cfg)
                .unwrap();
            assert_tables_equal(&got, &oracle::brute_apsp(&node), &format!("1d seed {seed}"));

            let plane = generate_instance(
                InstanceKind::EuclideanPlanar,
                16,
                seed,
                &GenOptions::default(),
            )
            .unwrap();
            let plan_2d =
                select_parameters(Task::GeometricApsp, plane.n, 3, 1, 1.0, OMEGA_MODEL_DEFAULT)
                    .unwrap();
            let (mut ledger, cfg) = fresh();
            let got = apsp_geometric(
                &plane,
                &plan_2d,
                MatmulKernel::NaiveCubic,
                &mut ledger,
                &cfg,
            )
            .unwrap();
            assert_tables_equal(
                &got,
                &oracle::brute_apsp(&plane),
                &format!("2d seed {seed}"),
            );
        }
    }

    #[test]
    fn geometric_phase_charges_reproduce_the_total() {
        let g =
            generate_instance(InstanceKind::NodeWeighted, 24, 11, &GenOptions::default()).unwrap();
        let plan =
            select_parameters(Task::GeometricApsp, g.n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
        let ell = plan.ell.unwrap();
        let (mut ledger, cfg) = fresh();
        apsp_geometric(&g, &plan, MatmulKernel::NaiveCubic, &mut ledger, &cfg).unwrap();

        let product_phases: Vec<_> = ledger
            .phases()
            .iter()
            .filter(|p| p.phase.starts_with("a_power_") || p.phase.starts_with("b_power_"))
            .collect();
        assert_eq!(product_phases.len(), 2 * ell - 1);
        let product_quantum: u64 = product_phases
            .iter()
            .map(|p| p.deltas.quantum_queries)
            .sum();
        let hs = sample_hitting_set(g.n, ell, g.seed).unwrap();
        let dijkstra = hs.len() as u64 * quantum_dijkstra_charge(g.n);
        assert_eq!(ledger.analytic_sum(QUANTUM_DIJKSTRA_LABEL), dijkstra);
        assert_eq!(
            ledger.totals().charged_total(),
            product_quantum + dijkstra,
            "products and seeding sweeps are the only charged phases"
        );
    }

    #[test]
    fn geometric_handles_degenerate_horizon() {
        let g =
            generate_instance(InstanceKind::NodeWeighted, 14, 2, &GenOptions::default()).unwrap();
        let mut plan =
            select_parameters(Task::GeometricApsp, g.n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
        plan.ell = Some(1);
        let (mut ledger, cfg) = fresh();
        let got = apsp_geometric(&g, &plan, MatmulKernel::NaiveCubic, &mut ledger, &cfg).unwrap();
        assert_tables_equal(&got, &oracle::brute_apsp(&g), "horizon 1");
    }

    #[test]
    fn bounded_matches_oracle_and_layers_partition_distances() {
        let opts = GenOptions {
            weight_bound: 4.0,
            ..GenOptions::default()
        };
        for seed in 0..6 {
            let g = generate_instance(InstanceKind::BoundedWeight, 24, seed, &opts).unwrap();
            let mut plan =
                select_parameters(Task::BoundedApsp, g.n, 1, 1, 4.0, OMEGA_MODEL_DEFAULT).unwrap();
            plan.ell = Some(3);
            let (mut ledger, cfg) = fresh();
            let got =
                apsp_geometric_bounded(&g, &plan, MatmulKernel::NaiveCubic, &mut ledger, &cfg)
                    .unwrap();
            let want = oracle::brute_apsp(&g);
            assert_tables_equal(&got, &want, &format!("bounded seed {seed}"));

            let num_layers = (plan.c * plan.ell.unwrap() as f64).ceil() as usize;
            let (mut layer_ledger, layer_cfg) = fresh();
            let (dist, _) = bounded_layers(
                &g,
                plan.c,
                plan.r.unwrap(),
                num_layers,
                MatmulKernel::NaiveCubic,
                &mut layer_ledger,
                &layer_cfg,
            )
            .unwrap();
            for i in 0..g.n {
                for j in 0..g.n {
                    if i == j {
                        continue;
                    }
                    let truth = want.get(i, j);
                    let finalized = dist.get(i, j);
                    if truth.is_finite() && truth.raw() < num_layers as f64 + 1.0 {
                        assert_eq!(finalized, truth, "distance in some layer band ({i}, {j})");
                    } else {
                        assert!(
                            !finalized.is_finite(),
                            "({i}, {j}) beyond the layered horizon must stay open"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bounded_rejects_out_of_band_weights() {
        let g = generate_instance(InstanceKind::General, 12, 0, &GenOptions::default()).unwrap();
        let plan =
            select_parameters(Task::BoundedApsp, g.n, 1, 1, 4.0, OMEGA_MODEL_DEFAULT).unwrap();
        let (mut ledger, cfg) = fresh();
        let err = apsp_geometric_bounded(&g, &plan, MatmulKernel::NaiveCubic, &mut ledger, &cfg)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn small_l_matches_oracle_and_reduces_to_node_weighted() {
        let opts = GenOptions {
            distinct_weights: 3,
            ..GenOptions::default()
        };
        for seed in 0..6 {
            let g = generate_instance(InstanceKind::SmallL, 20, seed, &opts).unwrap();
            let plan =
                select_parameters(Task::SmallLApsp, g.n, 1, 3, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
            let (mut ledger, cfg) = fresh();
            let got = apsp_small_l(&g, &plan, MatmulKernel::NaiveCubic, &mut ledger, &cfg).unwrap();
            assert_tables_equal(
                &got,
                &oracle::brute_apsp(&g),
                &format!("small-l seed {seed}"),
            );
        }

        // One distinct outgoing weight per vertex is exactly the
        // node-weighted setting; the palette recurrence must agree.
        let g =
            generate_instance(InstanceKind::NodeWeighted, 18, 5, &GenOptions::default()).unwrap();
        let plan =
            select_parameters(Task::SmallLApsp, g.n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
        let (mut ledger, cfg) = fresh();
        let got = apsp_small_l(&g, &plan, MatmulKernel::NaiveCubic, &mut ledger, &cfg).unwrap();
        assert_tables_equal(&got, &oracle::brute_apsp(&g), "palette of one");
    }

    #[test]
    fn small_l_rejects_oversized_palettes() {
        let opts = GenOptions {
            distinct_weights: 4,
            ..GenOptions::default()
        };
        let g = generate_instance(InstanceKind::SmallL, 20, 9, &opts).unwrap();
        let plan =
            select_parameters(Task::SmallLApsp, g.n, 1, 2, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
        let (mut ledger, cfg) = fresh();
        let err = apsp_small_l(&g, &plan, MatmulKernel::NaiveCubic, &mut ledger, &cfg).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn apnp_matches_oracle_with_exact_charge_identity() {
        for seed in 0..10 {
            let g =
                generate_instance(InstanceKind::Apnp, 16, seed, &GenOptions::default()).unwrap();
            let plan = select_parameters(Task::Apnp, g.n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
            let (mut ledger, cfg) = fresh();
            let out = apnp(&g, &plan, MinleMode::Analytic, &mut ledger, &cfg).unwrap();
            assert_tables_equal(
                &out.table,
                &oracle::brute_apnp(&g),
                &format!("apnp seed {seed}"),
            );

            let s = plan.s.unwrap() as u64;
            let product_charge = (g.n as f64).powf(crate::matprod::MINLE_EXPONENT).ceil() as u64;
            let pass_charge: u64 = out
                .passes
                .iter()
                .flat_map(|p| p.calls.iter())
                .map(|&(_, settled)| (settled as f64 * (settled as f64).sqrt()).ceil() as u64)
                .sum();
            assert_eq!(out.passes.len(), 2 * out.hitting.len());
            assert_eq!(out.products as u64, s);
            assert_eq!(
                ledger.totals().quantum_queries,
                0,
                "analytic mode issues no searches"
            );
            assert_eq!(
                ledger.totals().charged_total(),
                s * product_charge + pass_charge,
                "seed {seed}: short products plus sweeps are the whole charge"
            );
        }
    }

    #[test]
    fn apnp_recovers_paths_the_sweeps_alone_miss() {
        // Removal order makes the plain sweeps skip the 0 -> 1 -> 3 -> 4
        // witness; only the stitch sees it.
        let n = 5;
        let mut weights = Matrix::infinity(n, n);
        for u in 0..n {
            weights.set(u, u, Weight::NEG_INF);
        }
        for (u, v, w) in [
            (0, 1, 3.0),
            (1, 2, 1.0),
            (1, 3, 4.0),
            (2, 4, 1.0),
            (3, 4, 5.0),
        ] {
            weights.set(u, v, Weight::finite(w));
        }
        let g = WeightedGraph {
            kind: InstanceKind::Apnp,
            n,
            seed: 0,
            directed: true,
            weights,
            geometry: None,
        };
        let plan = select_parameters(Task::Apnp, n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
        let (mut ledger, cfg) = fresh();
        let out = apnp(&g, &plan, MinleMode::Analytic, &mut ledger, &cfg).unwrap();
        assert_tables_equal(
            &out.table,
            &oracle::brute_apnp(&g),
            "sweep-adversarial graph",
        );
        assert_eq!(out.table.get(0, 4), Weight::finite(5.0));
    }

    #[test]
    fn apnp_trivial_mode_agrees_with_analytic_results() {
        let g = generate_instance(InstanceKind::Apnp, 12, 4, &GenOptions::default()).unwrap();
        let plan = select_parameters(Task::Apnp, g.n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
        let (mut ledger_a, cfg_a) = fresh();
        let a = apnp(&g, &plan, MinleMode::Analytic, &mut ledger_a, &cfg_a).unwrap();
        let (mut ledger_t, cfg_t) = fresh();
        let t = apnp(&g, &plan, MinleMode::Trivial, &mut ledger_t, &cfg_t).unwrap();
        assert_tables_equal(&t.table, &a.table, "billing mode changes charges only");
        assert!(ledger_t.totals().quantum_queries > 0);
        assert_eq!(
            ledger_a.analytic_sum(crate::matprod::MINLE_CHARGE_LABEL),
            plan.s.unwrap() as u64
                * (g.n as f64).powf(crate::matprod::MINLE_EXPONENT).ceil() as u64
        );
    }

    #[test]
    fn min_triangle_matches_oracle_with_forced_charge() {
        let g = generate_instance(InstanceKind::General, 27, 1, &GenOptions::default()).unwrap();
        let (mut ledger, cfg) = fresh();
        let got = min_triangle_quantum(&g, &mut ledger, &cfg).unwrap();
        let want = oracle::brute_min_triangle(&g).unwrap();
        assert_eq!(got, want);
        assert_eq!(ledger.totals().quantum_queries, 141, "ceil(27^1.5) = 141");

        for seed in 0..10 {
            let g =
                generate_instance(InstanceKind::General, 10, seed, &GenOptions::default()).unwrap();
            let (mut ledger, cfg) = fresh();
            assert_eq!(
                min_triangle_quantum(&g, &mut ledger, &cfg).unwrap(),
                oracle::brute_min_triangle(&g).unwrap(),
                "seed {seed}: value and triple must both match"
            );
        }
    }

    #[test]
    fn min_triangle_edge_cases() {
        let mut weights = Matrix::infinity(3, 3);
        for (u, v, w) in [(0, 1, 2.0), (1, 2, 3.0), (0, 2, 4.0)] {
            weights.set(u, v, Weight::finite(w));
            weights.set(v, u, Weight::finite(w));
        }
        let k3 = WeightedGraph {
            kind: InstanceKind::General,
            n: 3,
            seed: 0,
            directed: false,
            weights,
            geometry: None,
        };
        let (mut ledger, cfg) = fresh();
        let got = min_triangle_quantum(&k3, &mut ledger, &cfg)
            .unwrap()
            .unwrap();
        assert_eq!((got.i, got.j, got.k), (0, 1, 2));
        assert_eq!(got.weight, Weight::finite(9.0));

        let two = generate_instance(InstanceKind::General, 2, 0, &GenOptions::default()).unwrap();
        let (mut ledger, cfg) = fresh();
        assert_eq!(min_triangle_quantum(&two, &mut ledger, &cfg).unwrap(), None);

        let directed = generate_instance(InstanceKind::Apnp, 8, 0, &GenOptions::default()).unwrap();
        let (mut ledger, cfg) = fresh();
        assert!(min_triangle_quantum(&directed, &mut ledger, &cfg).is_err());
    }

    #[test]
    fn pipelines_stay_exact_at_degenerate_parameters() {
        let g =
            generate_instance(InstanceKind::NodeWeighted, 16, 8, &GenOptions::default()).unwrap();
        let want = oracle::brute_apsp(&g);
        for (s, d) in [(1, 1), (1, g.n), (g.n, 1), (g.n, g.n)] {
            let mut plan =
                select_parameters(Task::NodeWeightedApsp, g.n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT)
                    .unwrap();
            plan.s = Some(s);
            plan.d = Some(d);
            for variant in [
                NodeWeightedVariant::GroverCombine,
                NodeWeightedVariant::ProductCombine,
            ] {
                let (mut ledger, cfg) = fresh();
                let got = apsp_node_weighted(
                    &g,
                    variant,
                    &plan,
                    MatmulKernel::NaiveCubic,
                    &mut ledger,
                    &cfg,
                )
                .unwrap();
                assert_tables_equal(&got, &want, &format!("s={s} d={d} {}", variant.name()));
            }
        }

        let g = generate_instance(InstanceKind::Apnp, 10, 2, &GenOptions::default()).unwrap();
        let want = oracle::brute_apnp(&g);
        for s in [1, 2, g.n] {
            let mut plan =
                select_parameters(Task::Apnp, g.n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
            plan.s = Some(s);
            let (mut ledger, cfg) = fresh();
            let out = apnp(&g, &plan, MinleMode::Analytic, &mut ledger, &cfg).unwrap();
            assert_tables_equal(&out.table, &want, &format!("apnp s={s}"));
        }
    }

    #[test]
    fn single_vertex_instances_are_handled() {
        let g =
            generate_instance(InstanceKind::NodeWeighted, 1, 0, &GenOptions::default()).unwrap();
        let plan =
            select_parameters(Task::NodeWeightedApsp, 1, 1, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
        let want = oracle::brute_apsp(&g);
        for variant in [
            NodeWeightedVariant::GroverCombine,
            NodeWeightedVariant::ProductCombine,
        ] {
            let (mut ledger, cfg) = fresh();
            let got = apsp_node_weighted(
                &g,
                variant,
                &plan,
                MatmulKernel::NaiveCubic,
                &mut ledger,
                &cfg,
            )
            .unwrap();
            assert_tables_equal(&got, &want, variant.name());
        }

        let g = generate_instance(InstanceKind::Apnp, 1, 0, &GenOptions::default()).unwrap();
        let plan = select_parameters(Task::Apnp, 1, 1, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
        let (mut ledger, cfg) = fresh();
        let out = apnp(&g, &plan, MinleMode::Analytic, &mut ledger, &cfg).unwrap();
        assert_tables_equal(&out.table, &oracle::brute_apnp(&g), "single-vertex apnp");
    }
}
