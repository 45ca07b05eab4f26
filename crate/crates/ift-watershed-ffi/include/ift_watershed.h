/* C ABI for the ift-watershed segmentation engine.
 *
 * Maintained by hand; must stay in sync with ../src/lib.rs.
 *
 * Conventions:
 *   - Opaque handles; release each with the matching *_free function.
 *   - Fallible calls return an IfwsStatus as int32_t (0 = success); the
 *     corresponding message is readable via ifws_last_error (per thread).
 *   - Output buffers are caller-owned.
 */

#ifndef IFT_WATERSHED_H
#define IFT_WATERSHED_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every fallible entry point. */
typedef enum IfwsStatus {
  IFWS_STATUS_OK = 0,
  IFWS_STATUS_NULL_ARGUMENT = 1,
  IFWS_STATUS_INVALID_ARGUMENT = 2,
  IFWS_STATUS_PARSE_ERROR = 3,
  IFWS_STATUS_VALIDATION_ERROR = 4,
  IFWS_STATUS_BUFFER_TOO_SMALL = 5,
} IfwsStatus;

/* Opaque volume handle. */
typedef struct IfwsVolume IfwsVolume;

/* Opaque marker-set handle. */
typedef struct IfwsMarkers IfwsMarkers;

/* Opaque result handle: labels, costs and the statistics report. */
typedef struct IfwsResult IfwsResult;

/* Copy the last error message of this thread into buf (NUL-terminated,
 * truncated to len). Returns the full message length in bytes, excluding
 * the NUL. buf may be NULL to query the length. */
size_t ifws_last_error(char *buf, size_t len);

/* Build a volume from raw little-endian voxel data (8-bit: one byte per
 * voxel; 12/16-bit: two bytes). bit_depth must be 8, 12 or 16. On success
 * writes a new handle to *out. */
int32_t ifws_volume_from_raw(const uint8_t *data, size_t data_len, size_t x,
                             size_t y, size_t z, uint32_t bit_depth,
                             IfwsVolume **out);

/* Build a synthetic volume from a generator spec string such as
 * "noise:min=0:max=255:seed=42" (also: uniform, step_edge, blob,
 * gradient_ramp). */
int32_t ifws_volume_generate(const char *spec, size_t x, size_t y, size_t z,
                             uint32_t bit_depth, IfwsVolume **out);

/* Release a volume handle. NULL is ignored. */
void ifws_volume_free(IfwsVolume *vol);

/* Node count of the volume, 0 on NULL. */
size_t ifws_volume_nodes(const IfwsVolume *vol);

/* Parse marker text ("in x y z" / "out x y z" lines, '#' comments,
 * 0-based coordinates) against the volume's dimensions. */
int32_t ifws_markers_parse(const char *text, const IfwsVolume *vol,
                           IfwsMarkers **out);

/* Release a marker-set handle. NULL is ignored. */
void ifws_markers_free(IfwsMarkers *markers);

/* Run the segmentation. variant selects the queue backend, 1..=5 for
 * variants I..V. A nonzero precision_buckets sizes the bucket directory by
 * the dataset precision (2^bit_depth) instead of MaxDiff+1. */
int32_t ifws_segment(const IfwsVolume *vol, const IfwsMarkers *markers,
                     uint32_t variant, int32_t precision_buckets,
                     IfwsResult **out);

/* Release a result handle. NULL is ignored. */
void ifws_result_free(IfwsResult *result);

/* Copy labels into buf, one byte per voxel (0 = OUT, 1 = IN). buf_len must
 * be at least the volume's node count. */
int32_t ifws_result_labels(const IfwsResult *result, uint8_t *buf,
                           size_t buf_len);

/* Copy final per-voxel path costs into buf. buf_len counts uint32_t
 * values, not bytes, and must be at least the volume's node count. */
int32_t ifws_result_costs(const IfwsResult *result, uint32_t *buf,
                          size_t buf_len);

/* Copy the statistics report (UTF-8 key-value text, NUL-terminated) into
 * buf. Returns the full report length excluding the NUL; call with NULL
 * buf to query the size. Returns 0 on NULL result. */
size_t ifws_result_report(const IfwsResult *result, char *buf,
                          size_t buf_len);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* IFT_WATERSHED_H */
