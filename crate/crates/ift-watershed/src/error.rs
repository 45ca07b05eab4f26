use thiserror::Error;

/// Errors shared across the segmentation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimensions {0}x{1}x{2}: every axis must be at least 1")]
    InvalidDimensions(usize, usize, usize),

    #[error("volume has {got} values, dims require {want}")]
    ValueCountMismatch { got: usize, want: usize },

    #[error("voxel value {value} exceeds precision limit {limit}")]
    ValueOutOfRange { value: u32, limit: u32 },

    #[error("unsupported bit depth {0} (expected 8, 12 or 16)")]
    UnsupportedBitDepth(u32),

    #[error("degenerate volume: no arcs")]
    DegenerateVolume,

    #[error("marker index {index} out of range for volume of {n} voxels")]
    MarkerOutOfRange { index: usize, n: usize },

    #[error("voxel {0} appears in both the IN and the OUT marker list")]
    ConflictingMarker(usize),

    #[error("marker set is empty")]
    NoMarkers,

    #[error("queue error: {0}")]
    Queue(#[from] QueueError),

    #[error("oracle limited to {cap} voxels, got {n}")]
    OracleTooLarge { n: usize, cap: usize },

    #[error("generator parameter out of range: {0}")]
    GenParam(String),

    #[error("cannot parse generator spec '{spec}': {reason}")]
    GenSpecParse { spec: String, reason: String },

    #[error("marker file line {line}: {reason}")]
    MarkerParse { line: usize, reason: String },

    #[error("raw volume size mismatch: file has {got} bytes, dims require {want}")]
    RawSizeMismatch { got: usize, want: usize },

    #[error("slice index {index} out of range on axis {axis} (size {size})")]
    SliceOutOfRange { axis: char, index: usize, size: usize },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Errors raised by the bucket-queue backends.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueueError {
    #[error("cost {cost} exceeds the maximum bucket index {max}")]
    CostOutOfRange { cost: u32, max: u32 },

    #[error("dequeue_min on an empty queue")]
    Empty,

    #[error("voxel {0} is not in the queue")]
    NotInQueue(u32),

    #[error("voxel {0} is already in the queue")]
    AlreadyInQueue(u32),

    #[error("voxel index {0} does not fit in 31 bits")]
    PositionOverflow(u32),

    #[error("operation not supported by this backend")]
    Unsupported,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
