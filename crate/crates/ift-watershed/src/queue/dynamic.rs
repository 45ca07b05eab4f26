//! Variant II: dynamically allocated doubly-linked entries plus a fixed
//! n-slot table mapping each voxel to its live entry. Entry storage grows on
//! demand and freed entries are recycled through a free list.

use super::{BucketQueue, Popped, QueueCounters, Scan, NONE};
use crate::engine::Label;
use crate::error::QueueError;

#[derive(Debug, Clone, Copy)]
struct Entry {
    cost: u32,
    voxel: u32,
    prev: u32,
    next: u32,
}

pub struct DynamicQueue {
    head: Vec<u32>,
    tail: Vec<u32>,
    entries: Vec<Entry>,
    free: Vec<u32>,
    /// voxel -> live entry index, NONE when the voxel is not queued.
    table: Vec<u32>,
    scan: Scan,
    len: usize,
    peak: usize,
    enqueues: u64,
}

impl DynamicQueue {
    pub fn new(buckets: usize, n: usize) -> Self {
        DynamicQueue {
            head: vec![NONE; buckets],
            tail: vec![NONE; buckets],
            entries: Vec::new(),
            free: Vec::new(),
            table: vec![NONE; n],
            scan: Scan::new(buckets),
            len: 0,
            peak: 0,
            enqueues: 0,
        }
    }

    fn alloc(&mut self, e: Entry) -> u32 {
        if let Some(i) = self.free.pop() {
            self.entries[i as usize] = e;
            i
        } else {
            self.entries.push(e);
            (self.entries.len() - 1) as u32
        }
    }

    fn unlink(&mut self, idx: u32) {
        let Entry {
            cost, prev, next, ..
        } = self.entries[idx as usize];
        let b = cost as usize;
        if prev == NONE {
            self.head[b] = next;
        } else {
            self.entries[prev as usize].next = next;
        }
        if next == NONE {
            self.tail[b] = prev;
        } else {
            self.entries[next as usize].prev = prev;
        }
        self.table[self.entries[idx as usize].voxel as usize] = NONE;
        self.free.push(idx);
        self.len -= 1;
    }
}

impl BucketQueue for DynamicQueue {
    fn enqueue(&mut self, voxel: u32, cost: u32, _label: Label) -> Result<(), QueueError> {
        self.scan.check_cost(cost)?;
        if self.table[voxel as usize] != NONE {
            return Err(QueueError::AlreadyInQueue(voxel));
        }
        let b = cost as usize;
        let old_tail = self.tail[b];
        let idx = self.alloc(Entry {
            cost,
            voxel,
            prev: old_tail,
            next: NONE,
        });
        if old_tail == NONE {
            self.head[b] = idx;
        } else {
            self.entries[old_tail as usize].next = idx;
        }
        self.tail[b] = idx;
        self.table[voxel as usize] = idx;
        self.len += 1;
        self.peak = self.peak.max(self.len);
        self.enqueues += 1;
        Ok(())
    }

    fn dequeue_min(&mut self) -> Result<Popped, QueueError> {
        if self.len == 0 {
            return Err(QueueError::Empty);
        }
        let head = &self.head;
        let b = self.scan.advance(|k| head[k] != NONE);
        let idx = self.head[b];
        let Entry { cost, voxel, .. } = self.entries[idx as usize];
        self.unlink(idx);
        Ok(Popped {
            voxel,
            cost,
            label: None,
            current_best: true,
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

    fn contains(&self, voxel: u32) -> bool {
        self.table[voxel as usize] != NONE
    }

    fn remove(&mut self, voxel: u32) -> Result<(), QueueError> {
        let idx = self.table[voxel as usize];
        if idx == NONE {
            return Err(QueueError::NotInQueue(voxel));
        }
        self.unlink(idx);
        Ok(())
    }
}
