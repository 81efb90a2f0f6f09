//! Weighted graph instances and their JSON form.
//!
//! A [`WeightedGraph`] is an `n x n` weight matrix plus metadata: the
//! instance kind, the generator seed, directedness, and (for geometric kinds)
//! the point set that induces the weights. `weights[u][v]` is the weight of
//! edge `(u, v)`, `+inf` when absent. Diagonal convention: `+inf` everywhere
//! except nondecreasing-path instances, which carry `-inf` (the empty path).
//!
//! Geometric kinds keep weights and geometry consistent by construction:
//!
//! * `node_weighted` and `bounded_weight`: every edge out of `u` weighs
//!   `p_u`, the source's node weight, stored as the 1-dimensional point
//!   `points[u] = [p_u]`.
//! * `euclidean_planar`: `points[u]` is a point in the plane and every
//!   present edge weighs the Euclidean distance rounded to the `2^-20` grid.
//!   The rounded value is the instance weight; algorithms and reference
//!   oracles both consume it, so exact comparisons stay meaningful.
//!
//! [`WeightedGraph::validate`] checks all of this and is run by the
//! generators and the CLI loader.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{BitMatrix, Matrix};
use crate::weight::Weight;

/// Spacing of the rounding grid applied to Euclidean distances.
pub const DISTANCE_GRID: f64 = 1.0 / (1 << 20) as f64;

/// Rounds a nonnegative distance to the nearest multiple of
/// [`DISTANCE_GRID`]. The result is exactly representable.
pub fn round_distance(d: f64) -> f64 {
    (d * (1 << 20) as f64).round() * DISTANCE_GRID
}

/// The instance families the generators produce and the pipelines consume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    /// Directed; every edge out of `u` weighs the node weight `p_u`.
    NodeWeighted,
    /// Undirected; edge weights are grid-rounded planar distances.
    EuclideanPlanar,
    /// Directed; each vertex draws its out-weights from its own small
    /// palette of distinct values.
    SmallL,
    /// Node-weighted with weights on the quarter-integer grid `[1, c]`.
    BoundedWeight,
    /// Undirected with arbitrary positive integer weights.
    General,
    /// Directed input for nondecreasing-path tables; diagonal is `-inf`.
    Apnp,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 6] = [
        InstanceKind::NodeWeighted,
        InstanceKind::EuclideanPlanar,
        InstanceKind::SmallL,
        InstanceKind::BoundedWeight,
        InstanceKind::General,
        InstanceKind::Apnp,
    ];

    /// Kebab/snake name as used in JSON and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::NodeWeighted => "node_weighted",
            InstanceKind::EuclideanPlanar => "euclidean_planar",
            InstanceKind::SmallL => "small_l",
            InstanceKind::BoundedWeight => "bounded_weight",
            InstanceKind::General => "general",
            InstanceKind::Apnp => "apnp",
        }
    }

    /// Parses [`InstanceKind::name`] output.
    pub fn parse(s: &str) -> Result<InstanceKind> {
        InstanceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown instance kind `{s}`")))
    }
}

/// How geometry induces edge weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightFn {
    /// `w(u, v) = p_u` where `p_u` is the single coordinate of `points[u]`.
    NodeWeight,
    /// `w(u, v) = round_distance(|points[u] - points[v]|)`.
    Euclidean,
}

/// Point data for geometric instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    pub weight_fn: WeightFn,
    /// Spatial dimension of the points (1 for node weights, 2 planar).
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
}

impl Geometry {
    /// The weight geometry assigns to edge `(u, v)`, ignoring adjacency.
    pub fn induced_weight(&self, u: usize, v: usize) -> f64 {
        match self.weight_fn {
            WeightFn::NodeWeight => self.points[u][0],
            WeightFn::Euclidean => {
                let (a, b) = (&self.points[u], &self.points[v]);
                let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
                round_distance(d2.sqrt())
            }
        }
    }
}

/// A weighted instance: metadata, the weight matrix, optional geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedGraph {
    pub kind: InstanceKind,
    pub n: usize,
    pub seed: u64,
    pub directed: bool,
    pub weights: Matrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<Geometry>,
}

impl WeightedGraph {
    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> Weight {
        self.weights.get(u, v)
    }

    /// Bit matrix of present off-diagonal edges (finite weight).
    pub fn adjacency(&self) -> BitMatrix {
        BitMatrix::from_fn(self.n, self.n, |u, v| {
            u != v && self.weight(u, v).is_finite()
        })
    }

    /// Number of present off-diagonal edges.
    pub fn edge_count(&self) -> usize {
        let mut m = 0;
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && self.weight(u, v).is_finite() {
                    m += 1;
                }
            }
        }
        m
    }

    /// Structural validation; see the module docs for the rules.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidInstance(msg));
        if self.n == 0 {
            return fail("n must be at least 1".into());
        }
        if self.weights.rows() != self.n || self.weights.cols() != self.n {
            return fail(format!(
                "weight matrix is {}x{}, expected {}x{}",
                self.weights.rows(),
                self.weights.cols(),
                self.n,
                self.n
            ));
        }

        let diag = if self.kind == InstanceKind::Apnp {
            Weight::NEG_INF
        } else {
            Weight::INF
        };
        for u in 0..self.n {
            if self.weight(u, u) != diag {
                return fail(format!(
                    "diagonal entry ({u}, {u}) is {}, expected {diag}",
                    self.weight(u, u)
                ));
            }
        }
        for u in 0..self.n {
            for v in 0..self.n {
                let w = self.weight(u, v);
                if u != v && !(w.is_finite() || w.is_inf()) {
                    return fail(format!("off-diagonal entry ({u}, {v}) is {w}"));
                }
                if u != v && w.is_finite() && w.raw() <= 0.0 {
                    return fail(format!("edge ({u}, {v}) has nonpositive weight {w}"));
                }
            }
        }
        if !self.directed {
            for u in 0..self.n {
                for v in (u + 1)..self.n {
                    if self.weight(u, v) != self.weight(v, u) {
                        return fail(format!("undirected instance is asymmetric at ({u}, {v})"));
                    }
                }
            }
        }

        let needs_geometry = matches!(
            self.kind,
            InstanceKind::NodeWeighted
                | InstanceKind::EuclideanPlanar
                | InstanceKind::BoundedWeight
        );
        match (&self.geometry, needs_geometry) {
            (None, true) => return fail(format!("kind {} requires geometry", self.kind.name())),
            (Some(_), false) => {
                return fail(format!("kind {} must not carry geometry", self.kind.name()))
            }
            _ => {}
        }
        if let Some(geo) = &self.geometry {
            let expected_fn = match self.kind {
                InstanceKind::EuclideanPlanar => WeightFn::Euclidean,
                _ => WeightFn::NodeWeight,
            };
            if geo.weight_fn != expected_fn {
                return fail(format!(
                    "kind {} has the wrong weight function",
                    self.kind.name()
                ));
            }
            let expected_dim = match geo.weight_fn {
                WeightFn::NodeWeight => 1,
                WeightFn::Euclidean => 2,
            };
            if geo.dim != expected_dim {
                return fail(format!(
                    "geometry dim {} does not match weight function",
                    geo.dim
                ));
            }
            if geo.points.len() != self.n {
                return fail(format!(
                    "{} points for {} vertices",
                    geo.points.len(),
                    self.n
                ));
            }
            for (u, p) in geo.points.iter().enumerate() {
                if p.len() != geo.dim {
                    return fail(format!(
                        "point {u} has {} coordinates, expected {}",
                        p.len(),
                        geo.dim
                    ));
                }
                if p.iter().any(|c| !c.is_finite()) {
                    return fail(format!("point {u} has a non-finite coordinate"));
                }
            }
            for u in 0..self.n {
                for v in 0..self.n {
                    if u == v {
                        continue;
                    }
                    let w = self.weight(u, v);
                    if w.is_finite() && w.raw() != geo.induced_weight(u, v) {
                        return fail(format!(
                            "edge ({u}, {v}) weighs {w} but geometry induces {}",
                            geo.induced_weight(u, v)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<WeightedGraph> {
        let g: WeightedGraph = serde_json::from_str(text)?;
        g.validate()?;
        Ok(g)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<WeightedGraph> {
        WeightedGraph::from_json(&std::fs::read_to_string(path)?)
    }
}
