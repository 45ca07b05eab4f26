//! Variant I: doubly-linked bucket lists stored in a preallocated arena of
//! n slots. A voxel's slot is addressed by its own linear index, so
//! membership tests and removals are direct lookups.

use super::{BucketQueue, Popped, QueueCounters, Scan, NONE};
use crate::engine::Label;
use crate::error::QueueError;

#[derive(Debug, Clone, Copy)]
struct Slot {
    prev: u32,
    next: u32,
    cost: u32,
}

pub struct FixedVolumeQueue {
    head: Vec<u32>,
    tail: Vec<u32>,
    slots: Vec<Slot>,
    in_queue: Vec<bool>,
    scan: Scan,
    len: usize,
    peak: usize,
    enqueues: u64,
}

impl FixedVolumeQueue {
    pub fn new(buckets: usize, n: usize) -> Self {
        FixedVolumeQueue {
            head: vec![NONE; buckets],
            tail: vec![NONE; buckets],
            slots: vec![
                Slot {
                    prev: NONE,
                    next: NONE,
                    cost: 0,
                };
                n
            ],
            in_queue: vec![false; n],
            scan: Scan::new(buckets),
            len: 0,
            peak: 0,
            enqueues: 0,
        }
    }
}

impl BucketQueue for FixedVolumeQueue {
    fn enqueue(&mut self, voxel: u32, cost: u32, _label: Label) -> Result<(), QueueError> {
        self.scan.check_cost(cost)?;
        if self.in_queue[voxel as usize] {
            return Err(QueueError::AlreadyInQueue(voxel));
        }
        let b = cost as usize;
        let old_tail = self.tail[b];
        self.slots[voxel as usize] = Slot {
            prev: old_tail,
            next: NONE,
            cost,
        };
        if old_tail == NONE {
            self.head[b] = voxel;
        } else {
            self.slots[old_tail as usize].next = voxel;
        }
        self.tail[b] = voxel;
        self.in_queue[voxel as usize] = true;
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
        let voxel = self.head[b];
        let cost = self.slots[voxel as usize].cost;
        self.unlink(voxel, b);
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
        self.in_queue[voxel as usize]
    }

    fn remove(&mut self, voxel: u32) -> Result<(), QueueError> {
        if !self.in_queue[voxel as usize] {
            return Err(QueueError::NotInQueue(voxel));
        }
        let b = self.slots[voxel as usize].cost as usize;
        self.unlink(voxel, b);
        Ok(())
    }
}

impl FixedVolumeQueue {
    fn unlink(&mut self, voxel: u32, bucket: usize) {
        let Slot { prev, next, .. } = self.slots[voxel as usize];
        if prev == NONE {
            self.head[bucket] = next;
        } else {
            self.slots[prev as usize].next = next;
        }
        if next == NONE {
            self.tail[bucket] = prev;
        } else {
            self.slots[next as usize].prev = prev;
        }
        self.in_queue[voxel as usize] = false;
        self.len -= 1;
    }
}
