//! Random hitting sets for long-path coverage.
//!
//! The long-range stages of the pipelines rely on a standard fact: a uniform
//! sample of `min(n, ceil(3 * (n / s) * ln n))` vertices hits every specific
//! collection of polynomially many vertex sets of size `s` with high
//! probability. Sampling is deterministic per seed. When a pipeline knows
//! the concrete family of witness paths it needs hit, it can verify the
//! sample and deterministically repair it instead of relying on the
//! probabilistic guarantee alone ([`verify_and_repair`]).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A sampled (and possibly repaired) hitting set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSet {
    /// Selected vertices, ascending, without duplicates.
    pub vertices: Vec<usize>,
    /// The path length `s` the sample is sized for.
    pub path_len: usize,
    pub seed: u64,
    /// Resampling attempts spent by [`verify_and_repair`] (0 when the first
    /// sample already verified or no verification was requested).
    pub attempts: u32,
}

impl HittingSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Sample size `min(n, ceil(3 * (n / s) * ln n))`.
pub fn hitting_sample_size(n: usize, s: usize) -> usize {
    let size = (3.0 * (n as f64 / s as f64) * (n as f64).ln()).ceil() as usize;
    size.min(n)
}

fn sample_with(n: usize, s: usize, seed: u64, attempt: u32) -> HittingSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0x4853 + attempt as u64);
    let size = hitting_sample_size(n, s);
    let mut vertices = rand::seq::index::sample(&mut rng, n, size).into_vec();
    vertices.sort_unstable();
    HittingSet {
        vertices,
        path_len: s,
        seed,
        attempts: attempt,
    }
}

/// Uniform sample of [`hitting_sample_size`] distinct vertices.
pub fn sample_hitting_set(n: usize, s: usize, seed: u64) -> Result<HittingSet> {
    if n == 0 || s == 0 {
        return Err(Error::InvalidParameter(format!(
            "hitting set needs n >= 1 and s >= 1, got n = {n}, s = {s}"
        )));
    }
    Ok(sample_with(n, s, seed, 0))
}

/// True when every path (vertex sequence) contains a sampled vertex.
pub fn hits_all(hitting: &HittingSet, paths: &[Vec<usize>]) -> bool {
    paths
        .iter()
        .all(|p| p.iter().any(|v| hitting.vertices.binary_search(v).is_ok()))
}

/// Samples, verifies against the concrete witness paths, and resamples with
/// fresh streams until every path is hit. After a bounded number of
/// attempts the sample is repaired directly by inserting the middle vertex
/// of each unhit path, which terminates deterministically.
pub fn verify_and_repair(
    n: usize,
    s: usize,
    seed: u64,
    paths: &[Vec<usize>],
) -> Result<HittingSet> {
    const MAX_ATTEMPTS: u32 = 16;
    assert!(
        paths
            .iter()
            .all(|p| !p.is_empty() && p.iter().all(|&v| v < n)),
        "witness paths must be non-empty and in range"
    );
    let mut last = sample_hitting_set(n, s, seed)?;
    for attempt in 0..MAX_ATTEMPTS {
        if hits_all(&last, paths) {
            return Ok(last);
        }
        last = sample_with(n, s, seed, attempt + 1);
    }
    let mut vertices = last.vertices;
    for p in paths {
        let mid = p[p.len() / 2];
        if vertices.binary_search(&mid).is_err() {
            let pos = vertices.partition_point(|&v| v < mid);
            vertices.insert(pos, mid);
        }
    }
    Ok(HittingSet {
        vertices,
        path_len: s,
        seed,
        attempts: MAX_ATTEMPTS,
    })
}
