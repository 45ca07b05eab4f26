//! Five interchangeable FIFO bucket priority-queue backends.
//!
//! All backends keep C+1 buckets, one FIFO per integer cost level. Every
//! operation is O(1) except the monotone first-non-empty-bucket scan, whose
//! cumulative work over a whole run is O(C).
//!
//! The backends differ in entry layout and in which operations they support:
//!
//! * [`FixedVolumeQueue`] (I) — doubly-linked entries in a preallocated
//!   n-slot arena, slot index = voxel index; supports `remove`.
//! * [`DynamicQueue`] (II) — dynamically allocated doubly-linked entries plus
//!   an n-slot voxel→entry table; supports `remove`.
//! * [`LazyDeleteQueue`] (III) — singly-linked entries carrying cost and
//!   label; superseded entries stay in place as stale; supports `supersede`.
//! * [`PackedQueue`] (IV) — singly-linked entries holding only a packed
//!   label+position word; cost is implicit in the bucket index.
//! * [`BrickQueue`] (V) — packed words stored in 254-slot bricks with an
//!   empty-brick reuse stack.

mod brick;
mod dynamic;
mod fixed;
mod lazy;
mod packed;

pub use brick::{BrickQueue, BRICK_CAPACITY};
pub use dynamic::DynamicQueue;
pub use fixed::FixedVolumeQueue;
pub use lazy::LazyDeleteQueue;
pub use packed::PackedQueue;

use crate::engine::Label;
use crate::error::QueueError;

pub const NONE: u32 = u32::MAX;

/// The five backend variants of the propagation queue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueueBackendId {
    I,
    II,
    III,
    IV,
    V,
}

impl QueueBackendId {
    pub const ALL: [QueueBackendId; 5] = [
        QueueBackendId::I,
        QueueBackendId::II,
        QueueBackendId::III,
        QueueBackendId::IV,
        QueueBackendId::V,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            QueueBackendId::I => "I",
            QueueBackendId::II => "II",
            QueueBackendId::III => "III",
            QueueBackendId::IV => "IV",
            QueueBackendId::V => "V",
        }
    }
}

impl std::str::FromStr for QueueBackendId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "I" | "i" | "1" => Ok(QueueBackendId::I),
            "II" | "ii" | "2" => Ok(QueueBackendId::II),
            "III" | "iii" | "3" => Ok(QueueBackendId::III),
            "IV" | "iv" | "4" => Ok(QueueBackendId::IV),
            "V" | "v" | "5" => Ok(QueueBackendId::V),
            other => Err(format!("unknown variant '{other}' (expected I..V)")),
        }
    }
}

impl std::fmt::Display for QueueBackendId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// An entry handed back by `dequeue_min`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Popped {
    pub voxel: u32,
    pub cost: u32,
    /// Present for backends that store the label in the entry (III–V).
    /// Backends I and II keep temporary labels in the caller's label field.
    pub label: Option<Label>,
    /// False only for variant III entries that were superseded before the pop.
    pub current_best: bool,
}

/// Occupancy and scan counters shared by all backends.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueueCounters {
    pub total_enqueues: u64,
    pub cursor_advances: u64,
    /// Peak simultaneous entries, live and stale together.
    pub peak_entries: usize,
    /// Variant V only: peak bricks simultaneously attached to buckets.
    pub bricks_peak: usize,
    /// Variant V only: bricks attached over the whole run (reuse counted again).
    pub bricks_attached_total: u64,
    /// Variant V only: bricks taken from the empty-brick stack.
    pub bricks_reused: u64,
}

/// Common interface over the five backends. Each implements the subset of
/// operations its variant supports; the rest return `Unsupported`.
pub trait BucketQueue {
    /// Append an entry at the tail of bucket `cost`.
    fn enqueue(&mut self, voxel: u32, cost: u32, label: Label) -> Result<(), QueueError>;

    /// Remove and return the front entry of the lowest non-empty bucket.
    fn dequeue_min(&mut self) -> Result<Popped, QueueError>;

    /// True iff any bucket at or past the scan cursor is non-empty; advances
    /// the cursor to the first non-empty bucket.
    fn not_empty(&mut self) -> bool;

    /// Live entry count (plus stale entries for III–V).
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Maximum simultaneous entry count observed so far.
    fn peak_length(&self) -> usize;

    fn counters(&self) -> QueueCounters;

    /// Variants I, II: true iff a live entry for the voxel exists.
    fn contains(&self, _voxel: u32) -> bool {
        false
    }

    /// Variants I, II: unlink the voxel's entry from its bucket.
    fn remove(&mut self, _voxel: u32) -> Result<(), QueueError> {
        Err(QueueError::Unsupported)
    }

    /// Variant III: enqueue a strictly cheaper entry and redirect the
    /// voxel's current-best reference to it; the old entry goes stale.
    fn supersede(&mut self, _voxel: u32, _new_cost: u32, _new_label: Label) -> Result<(), QueueError> {
        Err(QueueError::Unsupported)
    }
}

/// Construct a backend with `buckets` cost levels (indices 0..buckets-1)
/// for a volume of `n` voxels.
pub fn make_queue(id: QueueBackendId, buckets: usize, n: usize) -> Box<dyn BucketQueue> {
    match id {
        QueueBackendId::I => Box::new(FixedVolumeQueue::new(buckets, n)),
        QueueBackendId::II => Box::new(DynamicQueue::new(buckets, n)),
        QueueBackendId::III => Box::new(LazyDeleteQueue::new(buckets, n)),
        QueueBackendId::IV => Box::new(PackedQueue::new(buckets)),
        QueueBackendId::V => Box::new(BrickQueue::new(buckets)),
    }
}

/// Monotone scan cursor over the bucket directory.
#[derive(Debug, Clone)]
pub(crate) struct Scan {
    pub cursor: usize,
    pub advances: u64,
    pub buckets: usize,
}

impl Scan {
    pub fn new(buckets: usize) -> Self {
        Scan {
            cursor: 0,
            advances: 0,
            buckets,
        }
    }

    /// Advance to the first bucket >= cursor for which `occupied` holds.
    /// The caller guarantees such a bucket exists.
    pub fn advance(&mut self, occupied: impl Fn(usize) -> bool) -> usize {
        while self.cursor < self.buckets && !occupied(self.cursor) {
            self.cursor += 1;
            self.advances += 1;
        }
        debug_assert!(self.cursor < self.buckets, "scan ran past the last bucket");
        self.cursor
    }

    pub fn check_cost(&self, cost: u32) -> Result<(), QueueError> {
        if (cost as usize) < self.buckets {
            Ok(())
        } else {
            Err(QueueError::CostOutOfRange {
                cost,
                max: self.buckets as u32 - 1,
            })
        }
    }
}

/// Pack a 1-bit label and a 31-bit position into one word (variants IV, V).
#[inline]
pub fn pack(voxel: u32, label: Label) -> Result<u32, QueueError> {
    if voxel > 0x7FFF_FFFF {
        return Err(QueueError::PositionOverflow(voxel));
    }
    Ok(voxel | ((label as u32) << 31))
}

#[inline]
pub fn unpack(word: u32) -> (u32, Label) {
    let label = if word >> 31 != 0 { Label::In } else { Label::Out };
    (word & 0x7FFF_FFFF, label)
}
