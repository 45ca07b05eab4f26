//! Deterministic synthetic volumes and marker patterns for tests and
//! benchmarks.
//!
//! Randomness comes from SplitMix64 (Steele, Lea & Flood's 64-bit mixer),
//! implemented here so generated volumes are bit-identical on every
//! platform and toolchain.

use crate::engine::MarkerSet;
use crate::error::{Error, Result};
use crate::volume::{Dims, Volume};

/// Minimal portable PRNG: the SplitMix64 sequence of the seed.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [lo, hi] via modulo; bias is irrelevant at test scale.
    pub fn next_in(&mut self, lo: u32, hi: u32) -> u32 {
        lo + (self.next_u64() % (hi as u64 - lo as u64 + 1)) as u32
    }
}

/// Axis selector for step edges and ramps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn of(&self, ix: usize, iy: usize, iz: usize) -> usize {
        match self {
            Axis::X => ix,
            Axis::Y => iy,
            Axis::Z => iz,
        }
    }

    pub fn extent(&self, dims: Dims) -> usize {
        match self {
            Axis::X => dims.x,
            Axis::Y => dims.y,
            Axis::Z => dims.z,
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(format!("unknown axis '{other}'")),
        }
    }
}

/// What to synthesize.
#[derive(Debug, Clone, PartialEq)]
pub enum GenKind {
    /// Every voxel `value`.
    Uniform { value: u32 },
    /// `low` below `pos` on `axis`, `high` from `pos` on.
    StepEdge { axis: Axis, pos: usize, low: u32, high: u32 },
    /// Homogeneous ball of `inside` centered in an `outside` background.
    Blob { radius: f64, inside: u32, outside: u32 },
    /// Independent uniform values in [min, max].
    Noise { min: u32, max: u32 },
    /// Linear ramp from `low` to `high` along `axis`.
    GradientRamp { axis: Axis, low: u32, high: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub dims: Dims,
    pub bit_depth: u32,
    pub seed: u64,
}

/// Deterministic volume from a generator spec.
pub fn generate(spec: &GenSpec) -> Result<Volume> {
    let dims = spec.dims;
    let n = dims.node_count() as usize;
    let limit = 1u32
        .checked_shl(spec.bit_depth)
        .ok_or(Error::UnsupportedBitDepth(spec.bit_depth))?;
    let check = |v: u32| -> Result<u32> {
        if v < limit {
            Ok(v)
        } else {
            Err(Error::GenParam(format!("value {v} >= precision {limit}")))
        }
    };
    let values = match &spec.kind {
        GenKind::Uniform { value } => vec![check(*value)?; n],
        GenKind::StepEdge { axis, pos, low, high } => {
            check(*low)?;
            check(*high)?;
            if *pos >= axis.extent(dims) {
                return Err(Error::GenParam(format!(
                    "step position {pos} outside axis extent {}",
                    axis.extent(dims)
                )));
            }
            let mut vals = Vec::with_capacity(n);
            for iz in 0..dims.z {
                for iy in 0..dims.y {
                    for ix in 0..dims.x {
                        vals.push(if axis.of(ix, iy, iz) < *pos { *low } else { *high });
                    }
                }
            }
            vals
        }
        GenKind::Blob { radius, inside, outside } => {
            check(*inside)?;
            check(*outside)?;
            if *radius <= 0.0 {
                return Err(Error::GenParam("blob radius must be positive".into()));
            }
            let cx = (dims.x as f64 - 1.0) / 2.0;
            let cy = (dims.y as f64 - 1.0) / 2.0;
            let cz = (dims.z as f64 - 1.0) / 2.0;
            let r2 = radius * radius;
            let mut vals = Vec::with_capacity(n);
            for iz in 0..dims.z {
                for iy in 0..dims.y {
                    for ix in 0..dims.x {
                        let d2 = (ix as f64 - cx).powi(2)
                            + (iy as f64 - cy).powi(2)
                            + (iz as f64 - cz).powi(2);
                        vals.push(if d2 <= r2 { *inside } else { *outside });
                    }
                }
            }
            vals
        }
        GenKind::Noise { min, max } => {
            check(*min)?;
            check(*max)?;
            if min > max {
                return Err(Error::GenParam(format!("noise range {min} > {max}")));
            }
            let mut rng = SplitMix64::new(spec.seed);
            (0..n).map(|_| rng.next_in(*min, *max)).collect()
        }
        GenKind::GradientRamp { axis, low, high } => {
            check(*low)?;
            check(*high)?;
            let extent = axis.extent(dims);
            let mut vals = Vec::with_capacity(n);
            for iz in 0..dims.z {
                for iy in 0..dims.y {
                    for ix in 0..dims.x {
                        let t = axis.of(ix, iy, iz);
                        let v = if extent == 1 {
                            *low
                        } else {
                            // Integer linear interpolation, rounded down.
                            let span = *high as i64 - *low as i64;
                            (*low as i64 + span * t as i64 / (extent as i64 - 1)) as u32
                        };
                        vals.push(v);
                    }
                }
            }
            vals
        }
    };
    Volume::new(dims, spec.bit_depth, values)
}

/// Parse a generator spec string: `kind[:key=value]...`, e.g.
/// `noise:min=0:max=255:seed=42`, `step_edge:axis=z:pos=2:low=0:high=9`,
/// `uniform:value=7`, `blob:radius=3:inside=10:outside=200`,
/// `gradient_ramp:axis=x:low=0:high=255`.
pub fn parse_gen_spec(s: &str, dims: Dims, bit_depth: u32) -> Result<GenSpec> {
    let err = |reason: &str| Error::GenSpecParse {
        spec: s.to_string(),
        reason: reason.to_string(),
    };
    let mut parts = s.split(':');
    let kind_name = parts.next().ok_or_else(|| err("empty spec"))?;
    let mut kv = std::collections::HashMap::new();
    for part in parts {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| err("expected key=value"))?;
        kv.insert(k.to_string(), v.to_string());
    }
    let get_u32 = |kv: &std::collections::HashMap<String, String>, k: &str, default: u32| {
        kv.get(k)
            .map(|v| v.parse::<u32>())
            .transpose()
            .map(|o| o.unwrap_or(default))
    };
    let seed = kv
        .get("seed")
        .map(|v| v.parse::<u64>())
        .transpose()
        .map_err(|_| err("bad seed"))?
        .unwrap_or(0);
    let axis = kv
        .get("axis")
        .map(|v| v.parse::<Axis>())
        .transpose()
        .map_err(|_| err("bad axis"))?
        .unwrap_or(Axis::Z);
    let kind = match kind_name {
        "uniform" => GenKind::Uniform {
            value: get_u32(&kv, "value", 0).map_err(|_| err("bad value"))?,
        },
        "step_edge" => GenKind::StepEdge {
            axis,
            pos: kv
                .get("pos")
                .map(|v| v.parse::<usize>())
                .transpose()
                .map_err(|_| err("bad pos"))?
                .unwrap_or(axis.extent(dims) / 2),
            low: get_u32(&kv, "low", 0).map_err(|_| err("bad low"))?,
            high: get_u32(&kv, "high", 9).map_err(|_| err("bad high"))?,
        },
        "blob" => GenKind::Blob {
            radius: kv
                .get("radius")
                .map(|v| v.parse::<f64>())
                .transpose()
                .map_err(|_| err("bad radius"))?
                .unwrap_or(dims.x.min(dims.y).min(dims.z) as f64 / 4.0),
            inside: get_u32(&kv, "inside", 10).map_err(|_| err("bad inside"))?,
            outside: get_u32(&kv, "outside", 200).map_err(|_| err("bad outside"))?,
        },
        "noise" => GenKind::Noise {
            min: get_u32(&kv, "min", 0).map_err(|_| err("bad min"))?,
            max: get_u32(&kv, "max", (1 << bit_depth) - 1).map_err(|_| err("bad max"))?,
        },
        "gradient_ramp" => GenKind::GradientRamp {
            axis,
            low: get_u32(&kv, "low", 0).map_err(|_| err("bad low"))?,
            high: get_u32(&kv, "high", (1 << bit_depth) - 1).map_err(|_| err("bad high"))?,
        },
        other => return Err(err(&format!("unknown kind '{other}'"))),
    };
    Ok(GenSpec {
        kind,
        dims,
        bit_depth,
        seed,
    })
}

/// Even coordinate parity → IN, odd → OUT; every voxel is a marker and
/// every arc joins the two classes. This is the worst-case pattern that
/// plans all arcs into the queue at once.
pub fn chessboard_markers(dims: Dims) -> MarkerSet {
    let mut in_markers = Vec::new();
    let mut out_markers = Vec::new();
    for iz in 0..dims.z {
        for iy in 0..dims.y {
            for ix in 0..dims.x {
                let v = dims.linear(ix, iy, iz);
                if (ix + iy + iz) % 2 == 0 {
                    in_markers.push(v);
                } else {
                    out_markers.push(v);
                }
            }
        }
    }
    MarkerSet::new(in_markers, out_markers)
}
