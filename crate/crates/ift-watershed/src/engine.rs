//! Watershed-from-markers propagation over the implicit grid graph.
//!
//! The run floods outward from the marker voxels, assigning each voxel the
//! label of the marker class it can reach over the cheapest bottleneck path.
//! The FIFO buckets realize the plateau distance ordering implicitly, so the
//! second lexicographic cost component is never materialized.

use std::time::Instant;

use crate::bitfield::BitField;
use crate::error::{Error, Result};
use crate::memmodel::{self, BucketSizing, RunStats};
use crate::queue::{make_queue, QueueBackendId};
use crate::volume::{arc_weight, Volume};

/// Object (IN) or background (OUT). One bit suffices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Label {
    Out = 0,
    In = 1,
}

/// Ordered object and background marker lists. List order defines flood
/// precedence: earlier markers win plateau ties.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MarkerSet {
    pub in_markers: Vec<u32>,
    pub out_markers: Vec<u32>,
}

impl MarkerSet {
    pub fn new(in_markers: Vec<u32>, out_markers: Vec<u32>) -> Self {
        MarkerSet {
            in_markers,
            out_markers,
        }
    }

    pub fn total(&self) -> usize {
        self.in_markers.len() + self.out_markers.len()
    }
}

/// Bit-packed per-voxel label field, the segmentation result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelField {
    bits: BitField,
}

impl LabelField {
    pub fn new(n: usize) -> Self {
        LabelField {
            bits: BitField::new(n),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn get(&self, v: u32) -> Label {
        if self.bits.get(v as usize) {
            Label::In
        } else {
            Label::Out
        }
    }

    #[inline]
    pub fn set(&mut self, v: u32, label: Label) {
        self.bits.set(v as usize, label == Label::In);
    }

    /// One byte per voxel: 0 = OUT, 1 = IN. The on-disk label encoding.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.bits.iter().map(u8::from).collect()
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        let mut f = LabelField::new(bytes.len());
        for (i, &b) in bytes.iter().enumerate() {
            f.bits.set(i, b != 0);
        }
        f
    }
}

/// Everything a run produces: the segmentation, the final bottleneck costs
/// and the occupancy statistics.
#[derive(Debug, Clone)]
pub struct IftRun {
    pub labels: LabelField,
    /// Final path cost per voxel; always <= MaxDiff.
    pub costs: Vec<u32>,
    pub stats: RunStats,
}

#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub backend: QueueBackendId,
    pub bucket_sizing: BucketSizing,
    /// Enqueue the OUT list before the IN list at initialization. Only
    /// plateau-tie voxels may change; used for tie-sensitivity checks.
    pub out_markers_first: bool,
}

impl RunConfig {
    pub fn new(backend: QueueBackendId) -> Self {
        RunConfig {
            backend,
            bucket_sizing: BucketSizing::MaxDiff,
            out_markers_first: false,
        }
    }
}

/// Confirm the marker set against the volume: indices in range, the two
/// lists disjoint, at least one marker present.
pub fn validate_markers(vol: &Volume, markers: &MarkerSet) -> Result<()> {
    let n = vol.node_count();
    if markers.total() == 0 {
        return Err(Error::NoMarkers);
    }
    for &v in markers.in_markers.iter().chain(&markers.out_markers) {
        if v as usize >= n {
            return Err(Error::MarkerOutOfRange {
                index: v as usize,
                n,
            });
        }
    }
    let mut in_set = BitField::new(n);
    for &v in &markers.in_markers {
        in_set.set(v as usize, true);
    }
    if let Some(&v) = markers.out_markers.iter().find(|&&v| in_set.get(v as usize)) {
        return Err(Error::ConflictingMarker(v as usize));
    }
    Ok(())
}

/// Drop repeated indices within one list, keeping the first occurrence.
fn dedup(list: &[u32], seen: &mut BitField, dropped: &mut u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(list.len());
    for &v in list {
        if seen.get(v as usize) {
            *dropped += 1;
        } else {
            seen.set(v as usize, true);
            out.push(v);
        }
    }
    out
}

enum Mode {
    /// I, II: max test against the temporary cost, remove-before-reinsert.
    Full,
    /// III: max test kept, supersede instead of remove.
    Lazy,
    /// IV, V: no max test, no removal; every TEMP neighbor is enqueued.
    Eager,
}

/// Width-native copy of the voxel values for the propagation loop. Neighbor
/// reads hit this array in near-random order once the flood front breaks up,
/// so keeping it at the dataset's native width (instead of u32) roughly
/// quarters or halves the randomly-touched footprint.
enum HotValues {
    U8(Vec<u8>),
    U16(Vec<u16>),
}

impl HotValues {
    fn from_volume(vol: &Volume) -> Self {
        let values = vol.values();
        if vol.bit_depth() <= 8 {
            HotValues::U8(values.iter().map(|&v| v as u8).collect())
        } else {
            HotValues::U16(values.iter().map(|&v| v as u16).collect())
        }
    }

    #[inline(always)]
    fn get(&self, v: u32) -> u32 {
        match self {
            HotValues::U8(vals) => vals[v as usize] as u32,
            HotValues::U16(vals) => vals[v as usize] as u32,
        }
    }
}

/// Run the watershed-from-markers propagation with the chosen queue backend.
///
/// All five backends produce identical label and cost fields on identical
/// inputs; they differ only in queue occupancy and memory shape.
pub fn run_ift(vol: &Volume, markers: &MarkerSet, config: &RunConfig) -> Result<IftRun> {
    validate_markers(vol, markers)?;
    let start = Instant::now();

    let dims = vol.dims();
    let n = vol.node_count();
    let max_diff = vol.max_diff();
    let infinity = max_diff + 1; // never enqueued
    let buckets = config.bucket_sizing.bucket_count(max_diff, vol.precision());

    let mut dup_dropped = 0u64;
    let mut seen = BitField::new(n);
    let in_list = dedup(&markers.in_markers, &mut seen, &mut dup_dropped);
    let mut seen_out = BitField::new(n);
    let out_list = dedup(&markers.out_markers, &mut seen_out, &mut dup_dropped);

    let mut queue = make_queue(config.backend, buckets, n);
    let mut costs = vec![infinity; n];
    let mut labels = LabelField::new(n);
    let mut flags = BitField::new(n); // false = TEMP, true = DONE

    let hot_values = HotValues::from_volume(vol);
    let mode = match config.backend {
        QueueBackendId::I | QueueBackendId::II => Mode::Full,
        QueueBackendId::III => Mode::Lazy,
        QueueBackendId::IV | QueueBackendId::V => Mode::Eager,
    };

    {
        let mut init = |list: &[u32], label: Label| -> Result<()> {
            for &v in list {
                costs[v as usize] = 0;
                labels.set(v, label);
                queue.enqueue(v, 0, label)?;
            }
            Ok(())
        };
        if config.out_markers_first {
            init(&out_list, Label::Out)?;
            init(&in_list, Label::In)?;
        } else {
            init(&in_list, Label::In)?;
            init(&out_list, Label::Out)?;
        }
    }

    let mut pops = 0u64;
    let mut skipped = 0u64;
    let mut regressions = 0u64;
    let mut last_cost = 0u32;

    while queue.not_empty() {
        let popped = queue.dequeue_min()?;
        let v = popped.voxel;
        if !popped.current_best || flags.get(v as usize) {
            skipped += 1;
            continue;
        }
        if popped.cost < last_cost {
            regressions += 1;
        }
        last_cost = popped.cost;
        flags.set(v as usize, true);
        costs[v as usize] = popped.cost;
        if let Some(label) = popped.label {
            labels.set(v, label);
        }
        let v_label = labels.get(v);
        let v_value = hot_values.get(v);
        pops += 1;

        for q in dims.neighbors(v) {
            if flags.get(q as usize) {
                continue;
            }
            let new_cost = popped.cost.max(arc_weight(v_value, hot_values.get(q)));
            match mode {
                Mode::Full => {
                    if new_cost < costs[q as usize] {
                        costs[q as usize] = new_cost;
                        labels.set(q, v_label);
                        if queue.contains(q) {
                            queue.remove(q)?;
                        }
                        queue.enqueue(q, new_cost, v_label)?;
                    }
                }
                Mode::Lazy => {
                    if new_cost < costs[q as usize] {
                        let requeue = costs[q as usize] != infinity;
                        costs[q as usize] = new_cost;
                        if requeue {
                            queue.supersede(q, new_cost, v_label)?;
                        } else {
                            queue.enqueue(q, new_cost, v_label)?;
                        }
                    }
                }
                Mode::Eager => {
                    queue.enqueue(q, new_cost, v_label)?;
                }
            }
        }
    }

    let wall = start.elapsed().as_secs_f64();
    let stats = memmodel::assemble_stats(
        config.backend,
        buckets,
        vol,
        markers.total(),
        dup_dropped,
        pops,
        skipped,
        regressions,
        queue.counters(),
        wall,
    );

    Ok(IftRun {
        labels,
        costs,
        stats,
    })
}
