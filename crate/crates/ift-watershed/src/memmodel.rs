//! Analytic worst-case memory model for the five backends, plus the
//! per-run occupancy statistics and their text report.
//!
//! The model describes the reference layout (4-byte links, 2-byte costs,
//! 1-bit flags and labels), not the host platform's, and excludes allocator
//! maintenance overhead. All sizes are in bytes.

use crate::queue::{QueueBackendId, QueueCounters, BRICK_CAPACITY};
use crate::volume::Volume;

/// How many buckets the queue directory gets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BucketSizing {
    /// Exact: MaxDiff + 1 buckets.
    MaxDiff,
    /// Rough: one bucket per storable value, C_p, skipping the MaxDiff pass.
    Precision,
}

impl BucketSizing {
    pub fn bucket_count(&self, max_diff: u32, precision: u32) -> usize {
        match self {
            BucketSizing::MaxDiff => max_diff as usize + 1,
            BucketSizing::Precision => precision as usize,
        }
    }
}

/// Bytes of one brick: 254 4-byte words plus link and indices, padded to
/// the 256-word allocation granule.
pub const BRICK_BYTES: f64 = 256.0 * 4.0;

/// Per-variant worst-case coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemModel {
    pub variant: QueueBackendId,
    /// 8·C_buckets + n/4: bucket pointer pair arrays, flags, labels.
    pub fixed_common_bytes: f64,
    /// Variant-specific fixed part (entry arena or voxel→entry table).
    pub variant_fixed_bytes: f64,
    pub dynamic_per_entry_bytes: f64,
    /// n for variants I–II, m for III–V.
    pub dynamic_capacity: u64,
}

impl MemModel {
    pub fn for_variant(variant: QueueBackendId, c_buckets: u64, n: u64, m: u64) -> Self {
        let fixed_common = 8.0 * c_buckets as f64 + n as f64 / 4.0;
        let (variant_fixed, per_entry, capacity) = match variant {
            QueueBackendId::I => (10.0 * n as f64, 0.0, n),
            QueueBackendId::II => (4.0 * n as f64, 10.0, n),
            QueueBackendId::III => (4.0 * n as f64, 7.0, m),
            QueueBackendId::IV => (0.0, 8.0, m),
            QueueBackendId::V => (0.0, 4.0 + 8.0 / BRICK_CAPACITY as f64, m),
        };
        MemModel {
            variant,
            fixed_common_bytes: fixed_common,
            variant_fixed_bytes: variant_fixed,
            dynamic_per_entry_bytes: per_entry,
            dynamic_capacity: capacity,
        }
    }

    pub fn worst_case_bytes(&self) -> f64 {
        self.fixed_common_bytes
            + self.variant_fixed_bytes
            + self.dynamic_per_entry_bytes * self.dynamic_capacity as f64
    }

    /// Bytes actually backing a finished run: fixed parts plus the dynamic
    /// part at its observed peak. Variant I is fully preallocated, so used
    /// equals the worst case; variant V is accounted brick-granularly.
    pub fn used_bytes(&self, peak_entries: u64, bricks_peak: u64) -> f64 {
        let dynamic = match self.variant {
            QueueBackendId::I => self.dynamic_per_entry_bytes * self.dynamic_capacity as f64,
            QueueBackendId::V => BRICK_BYTES * bricks_peak as f64,
            _ => self.dynamic_per_entry_bytes * peak_entries as f64,
        };
        self.fixed_common_bytes + self.variant_fixed_bytes + dynamic
    }
}

/// Worst-case bytes for a variant on a grid of n nodes and m arcs.
pub fn worst_case_bytes(variant: QueueBackendId, c_buckets: u64, n: u64, m: u64) -> f64 {
    MemModel::for_variant(variant, c_buckets, n, m).worst_case_bytes()
}

/// Bytes backing a completed run, from its observed peaks.
pub fn used_bytes(
    variant: QueueBackendId,
    c_buckets: u64,
    n: u64,
    m: u64,
    peak_entries: u64,
    bricks_peak: u64,
) -> f64 {
    MemModel::for_variant(variant, c_buckets, n, m).used_bytes(peak_entries, bricks_peak)
}

/// Measured occupancy and bookkeeping of one completed run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub variant: QueueBackendId,
    pub n: u64,
    pub m: u64,
    pub max_diff: u32,
    pub c_buckets: u64,
    pub peak_queue_entries: usize,
    pub total_enqueues: u64,
    pub total_pops: u64,
    pub skipped_pops: u64,
    pub duplicate_markers_dropped: u64,
    /// Peak entries over the queue capacity (n for I–II, m for III–V).
    pub queue_fill_percent: f64,
    pub cursor_advances: u64,
    pub pop_cost_regressions: u64,
    pub bricks_peak: usize,
    pub bricks_attached_total: u64,
    pub bricks_reused: u64,
    pub avg_brick_fill_peak: f64,
    pub avg_brick_fill_cumulative: f64,
    pub modeled_worst_bytes: f64,
    pub modeled_used_bytes: f64,
    pub wall_time_seconds: f64,
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn assemble_stats(
    variant: QueueBackendId,
    buckets: usize,
    vol: &Volume,
    marker_total: usize,
    duplicate_markers_dropped: u64,
    total_pops: u64,
    skipped_pops: u64,
    pop_cost_regressions: u64,
    counters: QueueCounters,
    wall_time_seconds: f64,
) -> RunStats {
    let dims = vol.dims();
    let n = dims.node_count();
    let m = dims.arc_count();
    let capacity = match variant {
        QueueBackendId::I | QueueBackendId::II => n,
        _ => (m + marker_total as u64).max(1),
    };
    let model = MemModel::for_variant(variant, buckets as u64, n, m);
    let (fill_peak, fill_cum) = if variant == QueueBackendId::V && counters.bricks_peak > 0 {
        (
            counters.peak_entries as f64 / counters.bricks_peak as f64,
            counters.total_enqueues as f64 / counters.bricks_attached_total as f64,
        )
    } else {
        (0.0, 0.0)
    };
    RunStats {
        variant,
        n,
        m,
        max_diff: vol.max_diff(),
        c_buckets: buckets as u64,
        peak_queue_entries: counters.peak_entries,
        total_enqueues: counters.total_enqueues,
        total_pops,
        skipped_pops,
        duplicate_markers_dropped,
        queue_fill_percent: 100.0 * counters.peak_entries as f64 / capacity as f64,
        cursor_advances: counters.cursor_advances,
        pop_cost_regressions,
        bricks_peak: counters.bricks_peak,
        bricks_attached_total: counters.bricks_attached_total,
        bricks_reused: counters.bricks_reused,
        avg_brick_fill_peak: fill_peak,
        avg_brick_fill_cumulative: fill_cum,
        modeled_worst_bytes: model.worst_case_bytes(),
        modeled_used_bytes: model.used_bytes(counters.peak_entries as u64, counters.bricks_peak as u64),
        wall_time_seconds,
    }
}

/// Deterministic key-value report of one run. Field names are part of the
/// stable CLI contract; `wall_time_seconds` is last so golden comparisons
/// can strip it.
pub fn report(stats: &RunStats) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(": ");
        out.push_str(&v);
        out.push('\n');
    };
    kv("variant", stats.variant.name().to_string());
    kv("nodes", stats.n.to_string());
    kv("arcs", stats.m.to_string());
    kv("max_diff", stats.max_diff.to_string());
    kv("c_buckets", stats.c_buckets.to_string());
    kv("peak_queue_entries", stats.peak_queue_entries.to_string());
    kv("total_enqueues", stats.total_enqueues.to_string());
    kv("total_pops", stats.total_pops.to_string());
    kv("skipped_pops", stats.skipped_pops.to_string());
    kv(
        "duplicate_markers_dropped",
        stats.duplicate_markers_dropped.to_string(),
    );
    kv(
        "queue_fill_percent",
        format!("{:.3}", stats.queue_fill_percent),
    );
    kv("cursor_advances", stats.cursor_advances.to_string());
    kv(
        "pop_cost_regressions",
        stats.pop_cost_regressions.to_string(),
    );
    if stats.variant == QueueBackendId::V {
        kv("bricks_peak", stats.bricks_peak.to_string());
        kv(
            "bricks_attached_total",
            stats.bricks_attached_total.to_string(),
        );
        kv("bricks_reused", stats.bricks_reused.to_string());
        kv(
            "avg_brick_fill_peak",
            format!("{:.3}", stats.avg_brick_fill_peak),
        );
        kv(
            "avg_brick_fill_cumulative",
            format!("{:.3}", stats.avg_brick_fill_cumulative),
        );
    }
    kv(
        "modeled_worst_bytes",
        format!("{:.0}", stats.modeled_worst_bytes),
    );
    kv(
        "modeled_used_bytes",
        format!("{:.0}", stats.modeled_used_bytes),
    );
    kv(
        "wall_time_seconds",
        format!("{:.6}", stats.wall_time_seconds),
    );
    out
}

/// Strip the wall-time line for deterministic comparisons.
pub fn report_without_timing(stats: &RunStats) -> String {
    report(stats)
        .lines()
        .filter(|l| !l.starts_with("wall_time_seconds:"))
        .map(|l| format!("{l}\n"))
        .collect()
}
