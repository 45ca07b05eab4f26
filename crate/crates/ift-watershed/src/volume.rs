//! Volumetric dataset as an implicit 6-connected grid graph.
//!
//! Voxels are addressed x-fastest: `linear = ix + x * (iy + y * iz)`, which
//! matches the slice-by-slice layout of raw volume files.

use crate::error::{Error, Result};

/// Grid dimensions in voxels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl Dims {
    pub fn new(x: usize, y: usize, z: usize) -> Result<Self> {
        if x == 0 || y == 0 || z == 0 {
            return Err(Error::InvalidDimensions(x, y, z));
        }
        Ok(Dims { x, y, z })
    }

    /// Node count n = x·y·z.
    pub fn node_count(&self) -> u64 {
        self.x as u64 * self.y as u64 * self.z as u64
    }

    /// Arc count m = xy(z−1) + x(y−1)z + (x−1)yz for 6-connectivity.
    pub fn arc_count(&self) -> u64 {
        let (x, y, z) = (self.x as u64, self.y as u64, self.z as u64);
        x * y * (z - 1) + x * (y - 1) * z + (x - 1) * y * z
    }

    #[inline]
    pub fn linear(&self, ix: usize, iy: usize, iz: usize) -> u32 {
        debug_assert!(ix < self.x && iy < self.y && iz < self.z);
        (ix + self.x * (iy + self.y * iz)) as u32
    }

    #[inline]
    pub fn coords(&self, v: u32) -> (usize, usize, usize) {
        let v = v as usize;
        let ix = v % self.x;
        let rest = v / self.x;
        (ix, rest % self.y, rest / self.y)
    }

    /// Face-adjacent voxels of `v` inside the grid, in the fixed order
    /// −x, +x, −y, +y, −z, +z. The order is part of the run semantics: it
    /// decides FIFO tie-breaking on plateaus and must match across backends.
    #[inline]
    pub fn neighbors(&self, v: u32) -> Neighbors {
        let (ix, iy, iz) = self.coords(v);
        Neighbors {
            dims: *self,
            ix,
            iy,
            iz,
            dir: 0,
        }
    }
}

/// Iterator over the in-grid 6-neighbors of one voxel.
pub struct Neighbors {
    dims: Dims,
    ix: usize,
    iy: usize,
    iz: usize,
    dir: u8,
}

impl Iterator for Neighbors {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        while self.dir < 6 {
            let d = self.dir;
            self.dir += 1;
            let (ix, iy, iz, ok) = match d {
                0 => (self.ix.wrapping_sub(1), self.iy, self.iz, self.ix > 0),
                1 => (self.ix + 1, self.iy, self.iz, self.ix + 1 < self.dims.x),
                2 => (self.ix, self.iy.wrapping_sub(1), self.iz, self.iy > 0),
                3 => (self.ix, self.iy + 1, self.iz, self.iy + 1 < self.dims.y),
                4 => (self.ix, self.iy, self.iz.wrapping_sub(1), self.iz > 0),
                _ => (self.ix, self.iy, self.iz + 1, self.iz + 1 < self.dims.z),
            };
            if ok {
                return Some(self.dims.linear(ix, iy, iz));
            }
        }
        None
    }
}

/// (n, m) node and arc counts for a grid of the given dimensions.
pub fn dims_to_counts(x: usize, y: usize, z: usize) -> Result<(u64, u64)> {
    let dims = Dims::new(x, y, z)?;
    Ok((dims.node_count(), dims.arc_count()))
}

/// Absolute intensity difference, the arc weight w(p,q) = |f(p) − f(q)|.
#[inline]
pub fn arc_weight(fp: u32, fq: u32) -> u32 {
    fp.abs_diff(fq)
}

/// 3D scalar grid of non-negative integer intensities.
///
/// Immutable after construction; every operation here is a pure function.
#[derive(Debug, Clone)]
pub struct Volume {
    dims: Dims,
    bit_depth: u32,
    values: Vec<u32>,
}

/// Aggregate statistics over all arc weights of a volume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcStats {
    pub max_cost: u32,
    pub mean_cost: f64,
    /// Population standard deviation.
    pub sdev_cost: f64,
    pub arc_node_ratio: f64,
}

impl Volume {
    pub fn new(dims: Dims, bit_depth: u32, values: Vec<u32>) -> Result<Self> {
        if !matches!(bit_depth, 8 | 12 | 16) {
            return Err(Error::UnsupportedBitDepth(bit_depth));
        }
        let n = dims.node_count() as usize;
        if values.len() != n {
            return Err(Error::ValueCountMismatch {
                got: values.len(),
                want: n,
            });
        }
        let limit = 1u32 << bit_depth;
        if let Some(&bad) = values.iter().find(|&&v| v >= limit) {
            return Err(Error::ValueOutOfRange {
                value: bad,
                limit,
            });
        }
        Ok(Volume {
            dims,
            bit_depth,
            values,
        })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn bit_depth(&self) -> u32 {
        self.bit_depth
    }

    /// Precision C_p = 2^bit_depth, the cheap upper bound for MaxDiff.
    pub fn precision(&self) -> u32 {
        1u32 << self.bit_depth
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    #[inline]
    pub fn value(&self, v: u32) -> u32 {
        self.values[v as usize]
    }

    pub fn node_count(&self) -> usize {
        self.values.len()
    }

    /// Visits every undirected arc exactly once (+x, +y, +z from each voxel).
    fn for_each_arc(&self, mut f: impl FnMut(u32)) {
        let Dims { x, y, z } = self.dims;
        for iz in 0..z {
            for iy in 0..y {
                for ix in 0..x {
                    let v = self.dims.linear(ix, iy, iz);
                    let fv = self.values[v as usize];
                    if ix + 1 < x {
                        f(arc_weight(fv, self.values[v as usize + 1]));
                    }
                    if iy + 1 < y {
                        f(arc_weight(fv, self.values[v as usize + x]));
                    }
                    if iz + 1 < z {
                        f(arc_weight(fv, self.values[v as usize + x * y]));
                    }
                }
            }
        }
    }

    /// MaxDiff C: the maximum arc weight, one O(m) pass.
    pub fn max_diff(&self) -> u32 {
        let mut max = 0;
        self.for_each_arc(|w| max = max.max(w));
        max
    }

    /// Max, mean and population standard deviation of all m arc weights.
    pub fn arc_stats(&self) -> Result<ArcStats> {
        let m = self.dims.arc_count();
        if m == 0 {
            return Err(Error::DegenerateVolume);
        }
        let mut max = 0u32;
        let mut sum = 0.0f64;
        let mut sum_sq = 0.0f64;
        let mut count = 0u64;
        self.for_each_arc(|w| {
            max = max.max(w);
            sum += w as f64;
            sum_sq += (w as f64) * (w as f64);
            count += 1;
        });
        debug_assert_eq!(count, m);
        let mean = sum / m as f64;
        let var = (sum_sq / m as f64 - mean * mean).max(0.0);
        Ok(ArcStats {
            max_cost: max,
            mean_cost: mean,
            sdev_cost: var.sqrt(),
            arc_node_ratio: m as f64 / self.dims.node_count() as f64,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vol(x: usize, y: usize, z: usize, values: Vec<u32>) -> Volume {
        Volume::new(Dims::new(x, y, z).unwrap(), 16, values).unwrap()
    }

    #[test]
    fn counts_match_table_row() {
        assert_eq!(dims_to_counts(128, 128, 79).unwrap(), (1_294_336, 3_846_400));
    }

    #[test]
    fn counts_single_voxel() {
        assert_eq!(dims_to_counts(1, 1, 1).unwrap(), (1, 0));
    }

    #[test]
    fn counts_2x2x2_match_enumeration() {
        // Oracle: enumerate all 6-neighbor pairs of the 2^3 grid.
        let dims = Dims::new(2, 2, 2).unwrap();
        let mut arcs = 0;
        for v in 0..8u32 {
            arcs += dims.neighbors(v).count();
        }
        assert_eq!(arcs % 2, 0);
        assert_eq!(dims_to_counts(2, 2, 2).unwrap(), (8, arcs as u64 / 2));
        assert_eq!(dims_to_counts(2, 2, 2).unwrap(), (8, 12));
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(dims_to_counts(0, 4, 4).is_err());
        assert!(dims_to_counts(4, 0, 4).is_err());
        assert!(dims_to_counts(4, 4, 0).is_err());
    }

    #[test]
    fn neighbor_counts() {
        let d3 = Dims::new(3, 3, 3).unwrap();
        assert_eq!(d3.neighbors(d3.linear(1, 1, 1)).count(), 6);

        let d2 = Dims::new(2, 2, 2).unwrap();
        let nbrs: Vec<u32> = d2.neighbors(0).collect();
        assert_eq!(nbrs, vec![d2.linear(1, 0, 0), d2.linear(0, 1, 0), d2.linear(0, 0, 1)]);

        let line = Dims::new(1, 1, 5).unwrap();
        let nbrs: Vec<u32> = line.neighbors(2).collect();
        assert_eq!(nbrs, vec![1, 3]);
    }

    #[test]
    fn linear_roundtrip() {
        let dims = Dims::new(5, 3, 7).unwrap();
        for v in 0..dims.node_count() as u32 {
            let (ix, iy, iz) = dims.coords(v);
            assert_eq!(dims.linear(ix, iy, iz), v);
        }
    }

    #[test]
    fn arc_weight_basics() {
        assert_eq!(arc_weight(10, 3), 7);
        assert_eq!(arc_weight(5, 5), 0);
        assert_eq!(arc_weight(0, 4095), 4095);
        assert_eq!(arc_weight(3, 10), arc_weight(10, 3));
    }

    #[test]
    fn max_diff_cases() {
        assert_eq!(vol(2, 2, 2, vec![7; 8]).max_diff(), 0);
        assert_eq!(vol(1, 1, 4, vec![0, 0, 9, 9]).max_diff(), 9);
        // 2x2x1 [0,3,8,1]: arcs |0-3|, |8-1|, |0-8|, |3-1| -> max 8... enumerate:
        // (0,0)-(1,0): 3, (0,1)-(1,1): 7, (0,0)-(0,1): 8, (1,0)-(1,1): 2
        assert_eq!(vol(2, 2, 1, vec![0, 3, 8, 1]).max_diff(), 8);
    }

    #[test]
    fn arc_stats_line() {
        let s = vol(1, 1, 3, vec![0, 2, 6]).arc_stats().unwrap();
        assert_eq!(s.max_cost, 4);
        assert_eq!(s.mean_cost, 3.0);
        assert_eq!(s.sdev_cost, 1.0);
    }

    #[test]
    fn arc_stats_uniform() {
        let s = vol(3, 3, 3, vec![5; 27]).arc_stats().unwrap();
        assert_eq!(s.max_cost, 0);
        assert_eq!(s.mean_cost, 0.0);
        assert_eq!(s.sdev_cost, 0.0);
    }

    #[test]
    fn arc_stats_degenerate() {
        assert!(vol(1, 1, 1, vec![0]).arc_stats().is_err());
    }

    #[test]
    fn arc_node_ratio_table_row() {
        let (n, m) = dims_to_counts(128, 128, 79).unwrap();
        let ratio = m as f64 / n as f64;
        assert!((ratio - 2.972).abs() < 5e-4);
    }

    #[test]
    fn neighbor_symmetry_and_arc_count() {
        let dims = Dims::new(4, 3, 2).unwrap();
        let n = dims.node_count() as u32;
        let mut arcs = 0u64;
        for p in 0..n {
            for q in dims.neighbors(p) {
                assert!(dims.neighbors(q).any(|r| r == p));
                arcs += 1;
            }
        }
        assert_eq!(arcs / 2, dims.arc_count());
    }
}
