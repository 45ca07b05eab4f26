//! Variant V: packed label+position words stored in fixed 254-slot bricks.
//! Each brick carries one next link and two 8-bit occupancy indices F and L
//! (first occupied slot, one past the last). Buckets are chains of bricks;
//! drained bricks go to an empty-brick stack and are reused before any
//! fresh allocation.

use super::{pack, unpack, BucketQueue, Popped, QueueCounters, Scan, NONE};
use crate::engine::Label;
use crate::error::QueueError;

/// Entries per brick. With 8-bit indices and one next link the brick packs
/// into 256 4-byte words.
pub const BRICK_CAPACITY: usize = 254;

struct Brick {
    slots: [u32; BRICK_CAPACITY],
    next: u32,
    first: u8,
    last: u8,
}

impl Brick {
    fn fresh() -> Self {
        Brick {
            slots: [0; BRICK_CAPACITY],
            next: NONE,
            first: 0,
            last: 0,
        }
    }
}

pub struct BrickQueue {
    head: Vec<u32>,
    tail: Vec<u32>,
    bricks: Vec<Brick>,
    empty_stack: Vec<u32>,
    scan: Scan,
    len: usize,
    peak: usize,
    enqueues: u64,
    bricks_in_use: usize,
    bricks_peak: usize,
    bricks_attached_total: u64,
    bricks_reused: u64,
}

impl BrickQueue {
    pub fn new(buckets: usize) -> Self {
        BrickQueue {
            head: vec![NONE; buckets],
            tail: vec![NONE; buckets],
            bricks: Vec::new(),
            empty_stack: Vec::new(),
            scan: Scan::new(buckets),
            len: 0,
            peak: 0,
            enqueues: 0,
            bricks_in_use: 0,
            bricks_peak: 0,
            bricks_attached_total: 0,
            bricks_reused: 0,
        }
    }

    /// Take a brick from the empty-brick stack, or allocate a new one.
    fn take_brick(&mut self) -> u32 {
        let idx = if let Some(i) = self.empty_stack.pop() {
            self.bricks_reused += 1;
            self.bricks[i as usize].first = 0;
            self.bricks[i as usize].last = 0;
            self.bricks[i as usize].next = NONE;
            i
        } else {
            self.bricks.push(Brick::fresh());
            (self.bricks.len() - 1) as u32
        };
        self.bricks_in_use += 1;
        self.bricks_peak = self.bricks_peak.max(self.bricks_in_use);
        self.bricks_attached_total += 1;
        idx
    }

    fn release_brick(&mut self, idx: u32) {
        self.empty_stack.push(idx);
        self.bricks_in_use -= 1;
    }

    pub fn bricks_in_use(&self) -> usize {
        self.bricks_in_use
    }

    pub fn bricks_allocated(&self) -> usize {
        self.bricks.len()
    }

    pub fn empty_stack_len(&self) -> usize {
        self.empty_stack.len()
    }

    /// Σ(L − F) over every brick attached to a bucket.
    pub fn occupancy_sum(&self) -> usize {
        let mut sum = 0;
        for bucket in 0..self.head.len() {
            let mut b = self.head[bucket];
            while b != NONE {
                let brick = &self.bricks[b as usize];
                sum += (brick.last - brick.first) as usize;
                b = brick.next;
            }
        }
        sum
    }

    /// True iff every brick of every bucket except the chain tail has L = 254.
    pub fn non_tail_bricks_full(&self) -> bool {
        for bucket in 0..self.head.len() {
            let mut b = self.head[bucket];
            while b != NONE {
                let brick = &self.bricks[b as usize];
                if brick.next != NONE && brick.last as usize != BRICK_CAPACITY {
                    return false;
                }
                b = brick.next;
            }
        }
        true
    }
}

impl BucketQueue for BrickQueue {
    fn enqueue(&mut self, voxel: u32, cost: u32, label: Label) -> Result<(), QueueError> {
        self.scan.check_cost(cost)?;
        let word = pack(voxel, label)?;
        let b = cost as usize;
        let tail = self.tail[b];
        let target = if tail != NONE && (self.bricks[tail as usize].last as usize) < BRICK_CAPACITY {
            tail
        } else {
            let fresh = self.take_brick();
            if tail == NONE {
                self.head[b] = fresh;
            } else {
                self.bricks[tail as usize].next = fresh;
            }
            self.tail[b] = fresh;
            fresh
        };
        let brick = &mut self.bricks[target as usize];
        brick.slots[brick.last as usize] = word;
        brick.last += 1;
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
        let bi = self.head[b];
        let brick = &mut self.bricks[bi as usize];
        let word = brick.slots[brick.first as usize];
        brick.first += 1;
        if brick.first == brick.last {
            // Drained: detach from the bucket and recycle.
            let next = brick.next;
            self.head[b] = next;
            if next == NONE {
                self.tail[b] = NONE;
            }
            self.release_brick(bi);
        }
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
            bricks_peak: self.bricks_peak,
            bricks_attached_total: self.bricks_attached_total,
            bricks_reused: self.bricks_reused,
        }
    }
}
