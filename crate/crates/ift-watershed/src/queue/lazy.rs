//! Variant III: no physical removal. Entries are singly linked and carry
//! cost, label and voxel. A fixed n-slot table points at each voxel's
//! current-best entry; a cheaper path redirects the table instead of
//! dequeuing, leaving the old entry in its bucket as stale.

use super::{BucketQueue, Popped, QueueCounters, Scan, NONE};
use crate::engine::Label;
use crate::error::QueueError;

#[derive(Debug, Clone, Copy)]
struct Entry {
    cost: u32,
    label: Label,
    voxel: u32,
    next: u32,
}

pub struct LazyDeleteQueue {
    head: Vec<u32>,
    tail: Vec<u32>,
    entries: Vec<Entry>,
    free: Vec<u32>,
    /// voxel -> current-best entry index, NONE when no live entry exists.
    best: Vec<u32>,
    scan: Scan,
    len: usize,
    peak: usize,
    enqueues: u64,
}

impl LazyDeleteQueue {
    pub fn new(buckets: usize, n: usize) -> Self {
        LazyDeleteQueue {
            head: vec![NONE; buckets],
            tail: vec![NONE; buckets],
            entries: Vec::new(),
            free: Vec::new(),
            best: vec![NONE; n],
            scan: Scan::new(buckets),
            len: 0,
            peak: 0,
            enqueues: 0,
        }
    }

    /// Cost of the voxel's current-best entry, if it has one.
    pub fn best_cost(&self, voxel: u32) -> Option<u32> {
        let idx = self.best[voxel as usize];
        (idx != NONE).then(|| self.entries[idx as usize].cost)
    }

    fn push_entry(&mut self, voxel: u32, cost: u32, label: Label) -> u32 {
        let e = Entry {
            cost,
            label,
            voxel,
            next: NONE,
        };
        let idx = if let Some(i) = self.free.pop() {
            self.entries[i as usize] = e;
            i
        } else {
            self.entries.push(e);
            (self.entries.len() - 1) as u32
        };
        let b = cost as usize;
        let old_tail = self.tail[b];
        if old_tail == NONE {
            self.head[b] = idx;
        } else {
            self.entries[old_tail as usize].next = idx;
        }
        self.tail[b] = idx;
        self.len += 1;
        self.peak = self.peak.max(self.len);
        self.enqueues += 1;
        idx
    }
}

impl BucketQueue for LazyDeleteQueue {
    fn enqueue(&mut self, voxel: u32, cost: u32, label: Label) -> Result<(), QueueError> {
        self.scan.check_cost(cost)?;
        let idx = self.push_entry(voxel, cost, label);
        self.best[voxel as usize] = idx;
        Ok(())
    }

    fn dequeue_min(&mut self) -> Result<Popped, QueueError> {
        if self.len == 0 {
            return Err(QueueError::Empty);
        }
        let head = &self.head;
        let b = self.scan.advance(|k| head[k] != NONE);
        let idx = self.head[b];
        let Entry {
            cost,
            label,
            voxel,
            next,
        } = self.entries[idx as usize];
        self.head[b] = next;
        if next == NONE {
            self.tail[b] = NONE;
        }
        let current_best = self.best[voxel as usize] == idx;
        if current_best {
            self.best[voxel as usize] = NONE;
        }
        self.free.push(idx);
        self.len -= 1;
        Ok(Popped {
            voxel,
            cost,
            label: Some(label),
            current_best,
        })
    }

    fn not_empty(&mut self) -> bool {
        if self.len == 0 {
            return false;
        }
        let head = &self.head;
        self.scan.advance(|k| head[k] != NONE);
        true
    }

    fn len(&self) -> usize {
        self.len
    }

    fn peak_length(&self) -> usize {
        self.peak
    }

    fn counters(&self) -> QueueCounters {
        QueueCounters {
            total_enqueues: self.enqueues,
            cursor_advances: self.scan.advances,
            peak_entries: self.peak,
            ..QueueCounters::default()
        }
    }

    fn supersede(&mut self, voxel: u32, new_cost: u32, new_label: Label) -> Result<(), QueueError> {
        self.scan.check_cost(new_cost)?;
        debug_assert!(
            self.best_cost(voxel).is_none_or(|c| new_cost < c),
            "supersede requires a strict improvement"
        );
        let idx = self.push_entry(voxel, new_cost, new_label);
        self.best[voxel as usize] = idx;
        Ok(())
    }
}
