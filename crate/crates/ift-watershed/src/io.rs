//! File formats: raw little-endian volumes, text marker lists, byte-per-voxel
//! label files and binary PGM slice exports.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::engine::{Label, LabelField, MarkerSet};
use crate::error::{Error, Result};
use crate::synthgen::Axis;
use crate::volume::{Dims, Volume};

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Load a raw volume: 8-bit = one byte per voxel; 12- and 16-bit = two
/// bytes little-endian, x-fastest voxel order matching the file order.
/// 12-bit values must stay below 4096.
pub fn load_raw_volume(path: &Path, dims: Dims, bit_depth: u32) -> Result<Volume> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    decode_raw_volume(&bytes, dims, bit_depth)
}

/// The in-memory half of [`load_raw_volume`]; also the FFI entry point.
pub fn decode_raw_volume(bytes: &[u8], dims: Dims, bit_depth: u32) -> Result<Volume> {
    if !matches!(bit_depth, 8 | 12 | 16) {
        return Err(Error::UnsupportedBitDepth(bit_depth));
    }
    let n = dims.node_count() as usize;
    let per_voxel = if bit_depth == 8 { 1 } else { 2 };
    if bytes.len() != n * per_voxel {
        return Err(Error::RawSizeMismatch {
            got: bytes.len(),
            want: n * per_voxel,
        });
    }
    let values = if per_voxel == 1 {
        bytes.iter().map(|&b| b as u32).collect()
    } else {
        bytes
            .chunks_exact(2)
            .map(|c| u16::from_le_bytes([c[0], c[1]]) as u32)
            .collect()
    };
    Volume::new(dims, bit_depth, values)
}

/// Parse a marker file: lines `in x y z` / `out x y z`, order-preserving,
/// `#` comments and blank lines skipped. Coordinates are 0-based.
pub fn parse_markers(text: &str, dims: Dims) -> Result<MarkerSet> {
    let mut markers = MarkerSet::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |reason: String| Error::MarkerParse {
            line: lineno + 1,
            reason,
        };
        let mut fields = line.split_whitespace();
        let class = fields.next().unwrap();
        let coords: Vec<usize> = fields
            .map(|f| f.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| err(format!("bad coordinate: {e}")))?;
        let [ix, iy, iz] = coords[..] else {
            return Err(err(format!("expected 3 coordinates, got {}", coords.len())));
        };
        if ix >= dims.x || iy >= dims.y || iz >= dims.z {
            return Err(err(format!("({ix}, {iy}, {iz}) outside the volume")));
        }
        let v = dims.linear(ix, iy, iz);
        match class {
            "in" | "IN" => markers.in_markers.push(v),
            "out" | "OUT" => markers.out_markers.push(v),
            other => return Err(err(format!("unknown marker class '{other}'"))),
        }
    }
    Ok(markers)
}

pub fn load_markers(path: &Path, dims: Dims) -> Result<MarkerSet> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_markers(&text, dims)
}

/// Write labels one byte per voxel, 0 = OUT, 1 = IN, in volume order.
pub fn write_labels(labels: &LabelField, path: &Path) -> Result<()> {
    fs::write(path, labels.to_bytes()).map_err(|e| io_err(path, e))
}

pub fn read_labels(path: &Path) -> Result<LabelField> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    Ok(LabelField::from_bytes(&bytes))
}

/// 2D image slice of a volume-shaped field, 8-bit grayscale.
pub struct Slice {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

fn slice_extents(dims: Dims, axis: Axis) -> (usize, usize) {
    match axis {
        Axis::X => (dims.y, dims.z),
        Axis::Y => (dims.x, dims.z),
        Axis::Z => (dims.x, dims.y),
    }
}

fn extract_slice(dims: Dims, axis: Axis, index: usize, sample: impl Fn(u32) -> u8) -> Result<Slice> {
    let extent = axis.extent(dims);
    if index >= extent {
        return Err(Error::SliceOutOfRange {
            axis: match axis {
                Axis::X => 'x',
                Axis::Y => 'y',
                Axis::Z => 'z',
            },
            index,
            size: extent,
        });
    }
    let (width, height) = slice_extents(dims, axis);
    let mut pixels = Vec::with_capacity(width * height);
    for row in 0..height {
        for col in 0..width {
            let (ix, iy, iz) = match axis {
                Axis::X => (index, col, row),
                Axis::Y => (col, index, row),
                Axis::Z => (col, row, index),
            };
            pixels.push(sample(dims.linear(ix, iy, iz)));
        }
    }
    Ok(Slice {
        width,
        height,
        pixels,
    })
}

/// Label slice: IN renders 255, OUT renders 0.
pub fn label_slice(labels: &LabelField, dims: Dims, axis: Axis, index: usize) -> Result<Slice> {
    extract_slice(dims, axis, index, |v| {
        if labels.get(v) == Label::In {
            255
        } else {
            0
        }
    })
}

/// Intensity slice windowed to 8 bits by linear scaling against the
/// volume-wide maximum.
pub fn volume_slice(vol: &Volume, axis: Axis, index: usize) -> Result<Slice> {
    let vmax = vol.values().iter().copied().max().unwrap_or(0).max(1);
    extract_slice(vol.dims(), axis, index, |v| {
        (vol.value(v) as u64 * 255 / vmax as u64) as u8
    })
}

/// Write a binary PGM (P5, maxval 255) image.
pub fn write_pgm(slice: &Slice, path: &Path) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| io_err(path, e))?;
    write!(f, "P5\n{} {}\n255\n", slice.width, slice.height).map_err(|e| io_err(path, e))?;
    f.write_all(&slice.pixels).map_err(|e| io_err(path, e))
}
