//! Variant IV: entries are a single 32-bit word packing the label (bit 31)
//! and the voxel position (31 bits), singly linked per bucket. No cost is
//! stored; the bucket index carries it. No membership table, no removal,
//! no max test support — stale entries are skipped by the caller's DONE flag.

use super::{pack, unpack, BucketQueue, Popped, QueueCounters, Scan, NONE};
use crate::engine::Label;
use crate::error::QueueError;

#[derive(Debug, Clone, Copy)]
struct Entry {
    word: u32,
    next: u32,
}

pub struct PackedQueue {
    head: Vec<u32>,
    tail: Vec<u32>,
    entries: Vec<Entry>,
    free: Vec<u32>,
    scan: Scan,
    len: usize,
    peak: usize,
    enqueues: u64,
}

impl PackedQueue {
    pub fn new(buckets: usize) -> Self {
        PackedQueue {
            head: vec![NONE; buckets],
            tail: vec![NONE; buckets],
            entries: Vec::new(),
            free: Vec::new(),
            scan: Scan::new(buckets),
            len: 0,
            peak: 0,
            enqueues: 0,
        }
    }
}

impl BucketQueue for PackedQueue {
    fn enqueue(&mut self, voxel: u32, cost: u32, label: Label) -> Result<(), QueueError> {
        self.scan.check_cost(cost)?;
        let word = pack(voxel, label)?;
        let e = Entry { word, next: NONE };
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
        Ok(())
    }

    fn dequeue_min(&mut self) -> Result<Popped, QueueError> {
        if self.len == 0 {
            return Err(QueueError::Empty);
        }
        let head = &self.head;
        let b = self.scan.advance(|k| head[k] != NONE);
        let idx = self.head[b];
        let Entry { word, next } = self.entries[idx as usize];
        self.head[b] = next;
        if next == NONE {
            self.tail[b] = NONE;
        }
        self.free.push(idx);
        self.len -= 1;
        let (voxel, label) = unpack(word);
        Ok(Popped {
            voxel,
            cost: b as u32,
            label: Some(label),
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
}
