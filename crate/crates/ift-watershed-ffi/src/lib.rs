//! C ABI for the watershed segmentation engine.
//!
//! Opaque handles, integer error codes, caller-owned output buffers. The
//! matching header lives at `include/ift_watershed.h` and is maintained by
//! hand; keep the two in sync when changing signatures.
//!
//! Every `*_new`-style constructor hands ownership to the caller, who must
//! release it with the matching `*_free`. The last error message is stored
//! per thread and readable via [`ifws_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ift_watershed::engine::{run_ift, IftRun, MarkerSet, RunConfig};
use ift_watershed::io;
use ift_watershed::memmodel::{self, BucketSizing};
use ift_watershed::queue::QueueBackendId;
use ift_watershed::synthgen;
use ift_watershed::volume::{Dims, Volume};

/// Status codes returned by every fallible entry point.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IfwsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    ParseError = 3,
    ValidationError = 4,
    BufferTooSmall = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: IfwsStatus, msg: impl ToString) -> i32 {
    set_error(msg.to_string());
    status as i32
}

fn status_for(err: &ift_watershed::Error) -> IfwsStatus {
    use ift_watershed::Error::*;
    match err {
        MarkerParse { .. } | GenSpecParse { .. } | RawSizeMismatch { .. } => IfwsStatus::ParseError,
        InvalidDimensions(..) | UnsupportedBitDepth(..) | ValueCountMismatch { .. }
        | ValueOutOfRange { .. } => IfwsStatus::InvalidArgument,
        _ => IfwsStatus::ValidationError,
    }
}

/// Opaque volume handle.
pub struct IfwsVolume(Volume);

/// Opaque marker-set handle.
pub struct IfwsMarkers(MarkerSet);

/// Opaque result handle: labels, costs and the statistics report.
pub struct IfwsResult(IftRun);

/// Copy the last error message into `buf` (NUL-terminated, truncated to
/// `len`). Returns the full message length in bytes, excluding the NUL.
///
/// # Safety
/// `buf` must point to `len` writable bytes, or be null (query mode).
#[no_mangle]
pub unsafe extern "C" fn ifws_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Build a volume from raw little-endian voxel data (8-bit: one byte per
/// voxel; 12/16-bit: two).
///
/// # Safety
/// `data` must point to `data_len` readable bytes; `out` must be a valid
/// destination for one pointer.
#[no_mangle]
pub unsafe extern "C" fn ifws_volume_from_raw(
    data: *const u8,
    data_len: usize,
    x: usize,
    y: usize,
    z: usize,
    bit_depth: u32,
    out: *mut *mut IfwsVolume,
) -> i32 {
    if data.is_null() || out.is_null() {
        return fail(IfwsStatus::NullArgument, "null data or out pointer");
    }
    let dims = match Dims::new(x, y, z) {
        Ok(d) => d,
        Err(e) => return fail(status_for(&e), e),
    };
    let bytes = std::slice::from_raw_parts(data, data_len);
    match io::decode_raw_volume(bytes, dims, bit_depth) {
        Ok(v) => {
            *out = Box::into_raw(Box::new(IfwsVolume(v)));
            IfwsStatus::Ok as i32
        }
        Err(e) => fail(status_for(&e), e),
    }
}

/// Build a synthetic volume from a generator spec string such as
/// `"noise:min=0:max=255:seed=42"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ifws_volume_generate(
    spec: *const c_char,
    x: usize,
    y: usize,
    z: usize,
    bit_depth: u32,
    out: *mut *mut IfwsVolume,
) -> i32 {
    if spec.is_null() || out.is_null() {
        return fail(IfwsStatus::NullArgument, "null spec or out pointer");
    }
    let spec = match CStr::from_ptr(spec).to_str() {
        Ok(s) => s,
        Err(_) => return fail(IfwsStatus::ParseError, "spec is not valid UTF-8"),
    };
    let dims = match Dims::new(x, y, z) {
        Ok(d) => d,
        Err(e) => return fail(status_for(&e), e),
    };
    let parsed = match synthgen::parse_gen_spec(spec, dims, bit_depth) {
        Ok(p) => p,
        Err(e) => return fail(status_for(&e), e),
    };
    match synthgen::generate(&parsed) {
        Ok(v) => {
            *out = Box::into_raw(Box::new(IfwsVolume(v)));
            IfwsStatus::Ok as i32
        }
        Err(e) => fail(status_for(&e), e),
    }
}

/// # Safety
/// `vol` must come from a volume constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ifws_volume_free(vol: *mut IfwsVolume) {
    if !vol.is_null() {
        drop(Box::from_raw(vol));
    }
}

/// Node count of the volume, 0 on null.
///
/// # Safety
/// `vol` must be a live volume handle or null.
#[no_mangle]
pub unsafe extern "C" fn ifws_volume_nodes(vol: *const IfwsVolume) -> usize {
    vol.as_ref().map_or(0, |v| v.0.node_count())
}

/// Parse marker text (`in x y z` / `out x y z` lines, `#` comments) against
/// the volume's dimensions.
///
/// # Safety
/// `text` must be NUL-terminated; `vol` a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ifws_markers_parse(
    text: *const c_char,
    vol: *const IfwsVolume,
    out: *mut *mut IfwsMarkers,
) -> i32 {
    if text.is_null() || vol.is_null() || out.is_null() {
        return fail(IfwsStatus::NullArgument, "null argument");
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => return fail(IfwsStatus::ParseError, "marker text is not valid UTF-8"),
    };
    match io::parse_markers(text, (*vol).0.dims()) {
        Ok(m) => {
            *out = Box::into_raw(Box::new(IfwsMarkers(m)));
            IfwsStatus::Ok as i32
        }
        Err(e) => fail(status_for(&e), e),
    }
}

/// # Safety
/// `markers` must come from `ifws_markers_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ifws_markers_free(markers: *mut IfwsMarkers) {
    if !markers.is_null() {
        drop(Box::from_raw(markers));
    }
}

/// Run the segmentation. `variant` is 1..=5 for backends I..V;
/// `precision_buckets` nonzero sizes the bucket directory by the dataset
/// precision instead of MaxDiff+1.
///
/// # Safety
/// `vol` and `markers` must be live handles; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ifws_segment(
    vol: *const IfwsVolume,
    markers: *const IfwsMarkers,
    variant: u32,
    precision_buckets: i32,
    out: *mut *mut IfwsResult,
) -> i32 {
    if vol.is_null() || markers.is_null() || out.is_null() {
        return fail(IfwsStatus::NullArgument, "null argument");
    }
    let backend = match variant {
        1 => QueueBackendId::I,
        2 => QueueBackendId::II,
        3 => QueueBackendId::III,
        4 => QueueBackendId::IV,
        5 => QueueBackendId::V,
        other => {
            return fail(
                IfwsStatus::InvalidArgument,
                format!("variant {other} out of range 1..=5"),
            )
        }
    };
    let config = RunConfig {
        backend,
        bucket_sizing: if precision_buckets != 0 {
            BucketSizing::Precision
        } else {
            BucketSizing::MaxDiff
        },
        out_markers_first: false,
    };
    match run_ift(&(*vol).0, &(*markers).0, &config) {
        Ok(run) => {
            *out = Box::into_raw(Box::new(IfwsResult(run)));
            IfwsStatus::Ok as i32
        }
        Err(e) => fail(status_for(&e), e),
    }
}

/// # Safety
/// `result` must come from `ifws_segment` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ifws_result_free(result: *mut IfwsResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Copy labels into `buf`, one byte per voxel (0=OUT, 1=IN).
///
/// # Safety
/// `result` must be live; `buf` must hold `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ifws_result_labels(
    result: *const IfwsResult,
    buf: *mut u8,
    buf_len: usize,
) -> i32 {
    if result.is_null() || buf.is_null() {
        return fail(IfwsStatus::NullArgument, "null argument");
    }
    let bytes = (*result).0.labels.to_bytes();
    if buf_len < bytes.len() {
        return fail(
            IfwsStatus::BufferTooSmall,
            format!("need {} bytes, got {buf_len}", bytes.len()),
        );
    }
    ptr::copy_nonoverlapping(bytes.as_ptr(), buf, bytes.len());
    IfwsStatus::Ok as i32
}

/// Copy final per-voxel path costs into `buf`.
///
/// # Safety
/// `result` must be live; `buf` must hold `buf_len` writable u32 values.
#[no_mangle]
pub unsafe extern "C" fn ifws_result_costs(
    result: *const IfwsResult,
    buf: *mut u32,
    buf_len: usize,
) -> i32 {
    if result.is_null() || buf.is_null() {
        return fail(IfwsStatus::NullArgument, "null argument");
    }
    let costs = &(*result).0.costs;
    if buf_len < costs.len() {
        return fail(
            IfwsStatus::BufferTooSmall,
            format!("need {} values, got {buf_len}", costs.len()),
        );
    }
    ptr::copy_nonoverlapping(costs.as_ptr(), buf, costs.len());
    IfwsStatus::Ok as i32
}

/// Copy the statistics report (UTF-8 key-value text, NUL-terminated) into
/// `buf`. Returns the full report length excluding the NUL; call with a
/// null `buf` to query the size.
///
/// # Safety
/// `result` must be live; `buf` must hold `buf_len` writable bytes or be null.
#[no_mangle]
pub unsafe extern "C" fn ifws_result_report(
    result: *const IfwsResult,
    buf: *mut c_char,
    buf_len: usize,
) -> usize {
    let Some(result) = result.as_ref() else {
        return 0;
    };
    let report = memmodel::report(&result.0.stats);
    let bytes = report.as_bytes();
    if !buf.is_null() && buf_len > 0 {
        let n = bytes.len().min(buf_len - 1);
        ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
        *buf.add(n) = 0;
    }
    bytes.len()
}
