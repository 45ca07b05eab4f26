//! Marker-based 3D watershed segmentation computed as a minimal cost
//! forest over the implicit 6-connected voxel graph.
//!
//! The propagation floods outward from user-placed object (IN) and
//! background (OUT) markers, ranking paths by their bottleneck arc weight;
//! FIFO bucket queues resolve plateau ties by flood order. Five queue
//! backends with different memory layouts sit behind one interface, and an
//! analytic model predicts each backend's worst-case footprint.

pub mod bitfield;
pub mod engine;
pub mod error;
pub mod io;
pub mod memmodel;
pub mod oracle;
pub mod queue;
pub mod synthgen;
pub mod volume;

pub use engine::{run_ift, validate_markers, IftRun, Label, LabelField, MarkerSet, RunConfig};
pub use error::{Error, QueueError, Result};
pub use memmodel::{report, used_bytes, worst_case_bytes, BucketSizing, MemModel, RunStats};
pub use oracle::{brute_force_costs, check_against_engine};
pub use queue::{BucketQueue, QueueBackendId};
pub use synthgen::{chessboard_markers, generate, parse_gen_spec, GenKind, GenSpec};
pub use volume::{arc_weight, dims_to_counts, ArcStats, Dims, Volume};
