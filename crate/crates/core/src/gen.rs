//! Deterministic instance generators.
//!
//! Each generator is a pure function of `(kind, n, seed, options)`; the same
//! arguments always produce the same instance, byte for byte. Randomness
//! comes from a counter-mode RNG seeded with the instance seed.
//!
//! Weight ranges: integer weights are drawn from `[1, 65536]`, node weights
//! for bounded instances from the quarter-integer grid `[1, c]`, planar
//! points uniformly from the `[0, 1024)` square (distances then rounded to
//! the `2^-20` grid).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Geometry, InstanceKind, WeightFn, WeightedGraph};
use crate::matrix::Matrix;
use crate::weight::Weight;

/// Largest integer weight the generators draw.
pub const MAX_INTEGER_WEIGHT: u32 = 1 << 16;

/// Knobs shared by the generators. Fields irrelevant to a kind are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct GenOptions {
    /// Probability that a candidate edge is present, in `(0, 1]`.
    pub density: f64,
    /// Palette size `L` for [`InstanceKind::SmallL`].
    pub distinct_weights: usize,
    /// Upper bound `c` for [`InstanceKind::BoundedWeight`] node weights.
    pub weight_bound: f64,
}

impl Default for GenOptions {
    fn default() -> GenOptions {
        GenOptions {
            density: 0.5,
            distinct_weights: 3,
            weight_bound: 8.0,
        }
    }
}

/// Generates a validated instance of the given kind and size.
pub fn generate_instance(
    kind: InstanceKind,
    n: usize,
    seed: u64,
    opts: &GenOptions,
) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if !(opts.density > 0.0 && opts.density <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "density {} outside (0, 1]",
            opts.density
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Separate the streams of the six kinds so one seed yields unrelated
    // instances across kinds.
    rng.set_stream(match kind {
        InstanceKind::NodeWeighted => 1,
        InstanceKind::EuclideanPlanar => 2,
        InstanceKind::SmallL => 3,
        InstanceKind::BoundedWeight => 4,
        InstanceKind::General => 5,
        InstanceKind::Apnp => 6,
    });

    let g = match kind {
        InstanceKind::NodeWeighted => {
            let points: Vec<f64> = (0..n)
                .map(|_| rng.gen_range(1..=MAX_INTEGER_WEIGHT) as f64)
                .collect();
            node_weighted_from_points(kind, n, seed, &points, opts.density, &mut rng)
        }
        InstanceKind::BoundedWeight => {
            let c = opts.weight_bound;
            if !(c >= 1.0 && c.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "weight bound {c} must be finite and at least 1"
                )));
            }
            let steps = ((c - 1.0) / 0.25).floor() as u64;
            let points: Vec<f64> = (0..n)
                .map(|_| 1.0 + 0.25 * rng.gen_range(0..=steps) as f64)
                .collect();
            node_weighted_from_points(kind, n, seed, &points, opts.density, &mut rng)
        }
        InstanceKind::EuclideanPlanar => {
            let points: Vec<Vec<f64>> = (0..n)
                .map(|_| vec![rng.gen::<f64>() * 1024.0, rng.gen::<f64>() * 1024.0])
                .collect();
            let geometry = Geometry {
                weight_fn: WeightFn::Euclidean,
                dim: 2,
                points,
            };
            let mut weights = Matrix::infinity(n, n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(opts.density) {
                        let w = Weight::finite(geometry.induced_weight(u, v));
                        weights.set(u, v, w);
                        weights.set(v, u, w);
                    }
                }
            }
            WeightedGraph {
                kind,
                n,
                seed,
                directed: false,
                weights,
                geometry: Some(geometry),
            }
        }
        InstanceKind::SmallL => {
            let l = opts.distinct_weights;
            if l == 0 || l as u32 > MAX_INTEGER_WEIGHT {
                return Err(Error::InvalidParameter(format!(
                    "distinct weight count {l} outside [1, {MAX_INTEGER_WEIGHT}]"
                )));
            }
            let mut weights = Matrix::infinity(n, n);
            for u in 0..n {
                let palette = distinct_integers(&mut rng, l);
                for v in 0..n {
                    if u != v && rng.gen_bool(opts.density) {
                        let pick = palette[rng.gen_range(0..l)];
                        weights.set(u, v, Weight::finite(pick as f64));
                    }
                }
            }
            WeightedGraph {
                kind,
                n,
                seed,
                directed: true,
                weights,
                geometry: None,
            }
        }
        InstanceKind::General => {
            let mut weights = Matrix::infinity(n, n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(opts.density) {
                        let w = Weight::finite(rng.gen_range(1..=MAX_INTEGER_WEIGHT) as f64);
                        weights.set(u, v, w);
                        weights.set(v, u, w);
                    }
                }
            }
            WeightedGraph {
                kind,
                n,
                seed,
                directed: false,
                weights,
                geometry: None,
            }
        }
        InstanceKind::Apnp => {
            let mut weights = Matrix::infinity(n, n);
            for u in 0..n {
                weights.set(u, u, Weight::NEG_INF);
                for v in 0..n {
                    if u != v && rng.gen_bool(opts.density) {
                        let w = Weight::finite(rng.gen_range(1..=MAX_INTEGER_WEIGHT) as f64);
                        weights.set(u, v, w);
                    }
                }
            }
            WeightedGraph {
                kind,
                n,
                seed,
                directed: true,
                weights,
                geometry: None,
            }
        }
    };

    g.validate()?;
    Ok(g)
}

fn node_weighted_from_points(
    kind: InstanceKind,
    n: usize,
    seed: u64,
    points: &[f64],
    density: f64,
    rng: &mut ChaCha8Rng,
) -> WeightedGraph {
    let mut weights = Matrix::infinity(n, n);
    for (u, &p) in points.iter().enumerate() {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                weights.set(u, v, Weight::finite(p));
            }
        }
    }
    WeightedGraph {
        kind,
        n,
        seed,
        directed: true,
        weights,
        geometry: Some(Geometry {
            weight_fn: WeightFn::NodeWeight,
            dim: 1,
            points: points.iter().map(|&p| vec![p]).collect(),
        }),
    }
}

/// `count` distinct integers from `[1, MAX_INTEGER_WEIGHT]`, in random order.
fn distinct_integers(rng: &mut ChaCha8Rng, count: usize) -> Vec<u32> {
    debug_assert!(count as u32 <= MAX_INTEGER_WEIGHT);
    if count * 4 < MAX_INTEGER_WEIGHT as usize {
        // Rejection sampling is cheap while the palette is sparse.
        let mut seen = std::collections::HashSet::with_capacity(count);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let x = rng.gen_range(1..=MAX_INTEGER_WEIGHT);
            if seen.insert(x) {
                out.push(x);
            }
        }
        out
    } else {
        let mut all: Vec<u32> = (1..=MAX_INTEGER_WEIGHT).collect();
        all.shuffle(rng);
        all.truncate(count);
        all
    }
}
