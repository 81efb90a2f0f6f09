//! Cell partitions for the geometric star product.
//!
//! The star product searches, for each output entry, a set of "sites"
//! `(x_k, z_k)`: the spatial location of candidate `k` together with the
//! value `z_k` the candidate contributes. A partition groups sites into at
//! most (roughly) `r` cells and stores each cell's bounding box, spatial and
//! in `z`. The product then reasons about whole cells: a cell whose box lies
//! strictly below a threshold surface can be summarised by one
//! representative, and only cells whose boxes the surface crosses need a
//! fine-grained search.
//!
//! Two strategies:
//!
//! * [`PartitionStrategy::Sorted1d`]: ignores the spatial coordinates, sorts
//!   by `z`, and cuts into consecutive groups of `ceil(m / r)`. Cells occupy
//!   disjoint `z` ranges (boundaries may share a duplicated value), so any
//!   level `z = const` lies strictly inside at most one cell. Used when edge
//!   weights do not depend on the target point (node-weighted instances).
//! * [`PartitionStrategy::Grid2d`]: lays a `g x g` grid, `g = ceil(sqrt(r))`,
//!   over the spatial bounding box and caps cells at `ceil(2m / r)` sites;
//!   overflow spills round-robin into cells with room. Boxes are recomputed
//!   from the final members, so spilled sites only widen boxes (never break
//!   containment). Used for planar Euclidean instances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BitMatrix;

/// One candidate: its original index, spatial location, and value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Site {
    pub index: usize,
    /// Spatial coordinates; 1-dimensional uses `x[1] = 0`.
    pub x: [f64; 2],
    pub z: f64,
}

/// Partitioning strategy; see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionStrategy {
    Sorted1d,
    Grid2d,
}

/// A group of sites with its bounding box.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    /// Original indices of member sites, ascending.
    pub members: Vec<usize>,
    pub x_lo: [f64; 2],
    pub x_hi: [f64; 2],
    pub z_lo: f64,
    pub z_hi: f64,
}

impl Cell {
    fn from_members(mut members: Vec<(usize, [f64; 2], f64)>) -> Cell {
        debug_assert!(!members.is_empty());
        members.sort_by_key(|m| m.0);
        let mut x_lo = [f64::INFINITY; 2];
        let mut x_hi = [f64::NEG_INFINITY; 2];
        let mut z_lo = f64::INFINITY;
        let mut z_hi = f64::NEG_INFINITY;
        for &(_, x, z) in &members {
            for d in 0..2 {
                x_lo[d] = x_lo[d].min(x[d]);
                x_hi[d] = x_hi[d].max(x[d]);
            }
            z_lo = z_lo.min(z);
            z_hi = z_hi.max(z);
        }
        Cell {
            members: members.into_iter().map(|m| m.0).collect(),
            x_lo,
            x_hi,
            z_lo,
            z_hi,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True when `z` lies strictly inside the cell's value range.
    pub fn z_interior_contains(&self, z: f64) -> bool {
        self.z_lo < z && z < self.z_hi
    }
}

/// The result of partitioning: non-empty cells, at most `g^2` for the grid
/// strategy and at most `r` for the sorted strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub strategy: PartitionStrategy,
    pub cells: Vec<Cell>,
}

impl Partition {
    /// Cell membership as a bit matrix over original indices `0..width`.
    /// Row `c` has a bit for each member of cell `c`.
    pub fn membership_matrix(&self, width: usize) -> BitMatrix {
        assert!(!self.cells.is_empty(), "membership of an empty partition");
        let mut m = BitMatrix::zeros(self.cells.len(), width);
        for (c, cell) in self.cells.iter().enumerate() {
            for &k in &cell.members {
                m.set(c, k, true);
            }
        }
        m
    }

    /// Total number of sites across cells.
    pub fn site_count(&self) -> usize {
        self.cells.iter().map(Cell::len).sum()
    }
}

/// Partitions `sites` into cells under the given strategy. `r` is the target
/// cell count and must be at least 1. An empty site list yields no cells.
pub fn build_partition(sites: &[Site], r: usize, strategy: PartitionStrategy) -> Result<Partition> {
    if r == 0 {
        return Err(Error::InvalidParameter(
            "cell count r must be at least 1".into(),
        ));
    }
    if sites
        .iter()
        .any(|s| !s.z.is_finite() || s.x.iter().any(|c| !c.is_finite()))
    {
        return Err(Error::InvalidParameter(
            "sites must have finite coordinates".into(),
        ));
    }
    let cells = match strategy {
        PartitionStrategy::Sorted1d => sorted_1d(sites, r),
        PartitionStrategy::Grid2d => grid_2d(sites, r),
    };
    debug_assert_eq!(cells.iter().map(Cell::len).sum::<usize>(), sites.len());
    Ok(Partition { strategy, cells })
}

fn sorted_1d(sites: &[Site], r: usize) -> Vec<Cell> {
    if sites.is_empty() {
        return Vec::new();
    }
    let mut order: Vec<&Site> = sites.iter().collect();
    order.sort_by(|a, b| a.z.total_cmp(&b.z).then(a.index.cmp(&b.index)));
    let group = sites.len().div_ceil(r);
    order
        .chunks(group)
        .map(|chunk| Cell::from_members(chunk.iter().map(|s| (s.index, s.x, s.z)).collect()))
        .collect()
}

fn grid_2d(sites: &[Site], r: usize) -> Vec<Cell> {
    if sites.is_empty() {
        return Vec::new();
    }
    let g = (r as f64).sqrt().ceil() as usize;
    let cap = (2 * sites.len()).div_ceil(r);

    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for s in sites {
        for d in 0..2 {
            lo[d] = lo[d].min(s.x[d]);
            hi[d] = hi[d].max(s.x[d]);
        }
    }
    let bucket_of = |x: [f64; 2]| -> usize {
        let mut idx = [0usize; 2];
        for d in 0..2 {
            let extent = hi[d] - lo[d];
            let t = if extent > 0.0 {
                (((x[d] - lo[d]) / extent) * g as f64).floor() as usize
            } else {
                0
            };
            idx[d] = t.min(g - 1);
        }
        idx[0] * g + idx[1]
    };

    let mut buckets: Vec<Vec<(usize, [f64; 2], f64)>> = vec![Vec::new(); g * g];
    let mut overflow: Vec<(usize, [f64; 2], f64)> = Vec::new();
    for s in sites {
        let b = bucket_of(s.x);
        if buckets[b].len() < cap {
            buckets[b].push((s.index, s.x, s.z));
        } else {
            overflow.push((s.index, s.x, s.z));
        }
    }
    // Round-robin spill into cells with room; total capacity g^2 * cap covers
    // at least 2m sites, so this always terminates.
    let mut cursor = 0usize;
    for site in overflow {
        while buckets[cursor % (g * g)].len() >= cap {
            cursor += 1;
        }
        buckets[cursor % (g * g)].push(site);
        cursor += 1;
    }
    buckets
        .into_iter()
        .filter(|b| !b.is_empty())
        .map(Cell::from_members)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn site(index: usize, x: f64, y: f64, z: f64) -> Site {
        Site {
            index,
            x: [x, y],
            z,
        }
    }

    fn linear_sites(zs: &[f64]) -> Vec<Site> {
        zs.iter()
            .enumerate()
            .map(|(i, &z)| site(i, 0.0, 0.0, z))
            .collect()
    }

    #[test]
    fn sorted_partition_respects_group_size_and_order() {
        let sites = linear_sites(&[5.0, 1.0, 9.0, 3.0, 7.0, 2.0, 8.0]);
        let p = build_partition(&sites, 3, PartitionStrategy::Sorted1d).unwrap();
        assert_eq!(p.cells.len(), 3);
        assert!(p.cells.iter().all(|c| c.len() <= 3), "groups of ceil(7/3)");
        assert_eq!(p.site_count(), 7);
        // Consecutive z ranges.
        for pair in p.cells.windows(2) {
            assert!(pair[0].z_hi <= pair[1].z_lo);
        }
    }

    #[test]
    fn sorted_partition_levels_cross_one_interior_at_most() {
        let sites = linear_sites(&[4.0, 4.0, 1.0, 2.0, 2.0, 9.0, 6.0, 6.0, 3.0]);
        let p = build_partition(&sites, 4, PartitionStrategy::Sorted1d).unwrap();
        for level in [0.5, 1.0, 2.0, 3.5, 4.0, 5.0, 6.0, 8.5, 9.0, 10.0] {
            let inside = p
                .cells
                .iter()
                .filter(|c| c.z_interior_contains(level))
                .count();
            assert!(inside <= 1, "level {level} strictly inside {inside} cells");
        }
    }

    #[test]
    fn grid_partition_caps_cell_sizes() {
        // 40 sites clustered at one corner force the cap and the spill path.
        let mut sites: Vec<Site> = (0..40)
            .map(|i| site(i, 0.001 * i as f64, 0.0, i as f64))
            .collect();
        sites.push(site(40, 100.0, 100.0, 1.0));
        let r = 8;
        let p = build_partition(&sites, r, PartitionStrategy::Grid2d).unwrap();
        let cap = (2 * sites.len()).div_ceil(r);
        assert!(p.cells.iter().all(|c| c.len() <= cap));
        assert_eq!(p.site_count(), sites.len());
    }

    #[test]
    fn grid_boxes_contain_their_members() {
        let sites: Vec<Site> = (0..30)
            .map(|i| {
                site(
                    i,
                    (i * 37 % 11) as f64,
                    (i * 53 % 13) as f64,
                    (i * 7 % 17) as f64,
                )
            })
            .collect();
        let p = build_partition(&sites, 5, PartitionStrategy::Grid2d).unwrap();
        for cell in &p.cells {
            for &k in &cell.members {
                let s = sites[k];
                assert!(s.x[0] >= cell.x_lo[0] && s.x[0] <= cell.x_hi[0]);
                assert!(s.x[1] >= cell.x_lo[1] && s.x[1] <= cell.x_hi[1]);
                assert!(s.z >= cell.z_lo && s.z <= cell.z_hi);
            }
        }
    }

    #[test]
    fn membership_matrix_mirrors_cells() {
        let sites = linear_sites(&[3.0, 1.0, 2.0]);
        let p = build_partition(&sites, 2, PartitionStrategy::Sorted1d).unwrap();
        let m = p.membership_matrix(3);
        assert_eq!(m.rows(), p.cells.len());
        for (c, cell) in p.cells.iter().enumerate() {
            assert_eq!(m.row_ones(c).collect::<Vec<_>>(), cell.members);
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(build_partition(&[], 0, PartitionStrategy::Sorted1d).is_err());
        let empty = build_partition(&[], 3, PartitionStrategy::Grid2d).unwrap();
        assert!(empty.cells.is_empty());
        let one = build_partition(&[site(0, 1.0, 2.0, 3.0)], 5, PartitionStrategy::Grid2d).unwrap();
        assert_eq!(one.cells.len(), 1);
        assert_eq!(one.cells[0].members, vec![0]);
    }
}
