//! Batch segmentation front end.
//!
//! Loads (or generates) a volume, runs the chosen queue backend and writes
//! the label file, optional statistics report and optional PGM slices.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use ift_watershed::engine::{run_ift, MarkerSet, RunConfig};
use ift_watershed::error::Error;
use ift_watershed::io;
use ift_watershed::memmodel::{self, BucketSizing};
use ift_watershed::queue::QueueBackendId;
use ift_watershed::synthgen::{self, Axis};
use ift_watershed::volume::{Dims, Volume};

#[derive(Parser, Debug)]
#[command(
    name = "iftws",
    about = "Marker-based 3D watershed segmentation (image foresting transform)"
)]
struct Args {
    /// Raw input volume (little-endian, x-fastest). Omit when using --gen.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Volume dimensions, e.g. 128x128x79.
    #[arg(long, value_name = "XxYxZ")]
    dims: String,

    /// Bits per voxel.
    #[arg(long, value_parser = ["8", "12", "16"], default_value = "16")]
    bits: String,

    /// Marker file: lines "in x y z" / "out x y z". Required unless --gen.
    #[arg(long, value_name = "PATH")]
    markers: Option<PathBuf>,

    /// Queue backend variant.
    #[arg(long, default_value = "V")]
    variant: QueueBackendId,

    /// Output label file (one byte per voxel, 0=OUT 1=IN).
    #[arg(long, value_name = "PATH")]
    out: PathBuf,

    /// Generate the volume instead of loading it, e.g.
    /// "noise:min=0:max=255:seed=42" or "blob:radius=4".
    #[arg(long, value_name = "SPEC")]
    gen: Option<String>,

    /// Write the run statistics report here.
    #[arg(long, value_name = "PATH")]
    stats: Option<PathBuf>,

    /// Export a label slice as binary PGM: AXIS:INDEX:PATH (repeatable).
    #[arg(long, value_name = "AXIS:INDEX:PATH")]
    slice: Vec<String>,

    /// Bucket directory sizing: exact MaxDiff+1 or the dataset precision.
    #[arg(long, value_parser = ["maxdiff", "precision"], default_value = "maxdiff")]
    buckets: String,
}

// Exit codes: 2 usage, 3 i/o, 4 parse, 5 validation.
fn code_for(err: &Error) -> u8 {
    match err {
        Error::Io { .. } => 3,
        Error::MarkerParse { .. } | Error::GenSpecParse { .. } | Error::RawSizeMismatch { .. } => 4,
        _ => 5,
    }
}

fn parse_dims(s: &str) -> Result<Dims, Error> {
    let parts: Vec<&str> = s.split(['x', 'X']).collect();
    let parse = |p: &str| p.trim().parse::<usize>().ok();
    if let [x, y, z] = parts[..] {
        if let (Some(x), Some(y), Some(z)) = (parse(x), parse(y), parse(z)) {
            return Dims::new(x, y, z);
        }
    }
    Err(Error::InvalidDimensions(0, 0, 0))
}

fn run(args: &Args) -> Result<u8, (u8, String)> {
    let usage = |msg: &str| (2u8, msg.to_string());
    let fail = |e: Error| (code_for(&e), e.to_string());

    let dims = parse_dims(&args.dims)
        .map_err(|_| usage(&format!("cannot parse --dims '{}'", args.dims)))?;
    let bits: u32 = args.bits.parse().unwrap();

    let volume: Volume = match (&args.gen, &args.input) {
        (Some(spec), None) => {
            let spec = synthgen::parse_gen_spec(spec, dims, bits).map_err(fail)?;
            synthgen::generate(&spec).map_err(fail)?
        }
        (None, Some(path)) => io::load_raw_volume(path, dims, bits).map_err(fail)?,
        (Some(_), Some(_)) => return Err(usage("--gen and --input are mutually exclusive")),
        (None, None) => return Err(usage("either --input or --gen is required")),
    };

    let markers: MarkerSet = match &args.markers {
        Some(path) => io::load_markers(path, dims).map_err(fail)?,
        None if args.gen.is_some() => {
            // Generated volumes default to opposite-corner seeds.
            let last = dims.linear(dims.x - 1, dims.y - 1, dims.z - 1);
            MarkerSet::new(vec![0], vec![last])
        }
        None => return Err(usage("--markers is required when loading a volume")),
    };

    let config = RunConfig {
        backend: args.variant,
        bucket_sizing: if args.buckets == "precision" {
            BucketSizing::Precision
        } else {
            BucketSizing::MaxDiff
        },
        out_markers_first: false,
    };
    let result = run_ift(&volume, &markers, &config).map_err(fail)?;

    io::write_labels(&result.labels, &args.out).map_err(fail)?;

    if let Some(path) = &args.stats {
        let report = memmodel::report(&result.stats);
        std::fs::write(path, report).map_err(|e| {
            fail(Error::Io {
                path: path.display().to_string(),
                source: e,
            })
        })?;
    }

    for spec in &args.slice {
        let parts: Vec<&str> = spec.splitn(3, ':').collect();
        let [axis, index, path] = parts[..] else {
            return Err(usage(&format!("cannot parse --slice '{spec}' (AXIS:INDEX:PATH)")));
        };
        let axis: Axis = axis.parse().map_err(|e: String| usage(&e))?;
        let index: usize = index
            .parse()
            .map_err(|_| usage(&format!("bad slice index '{index}'")))?;
        let slice = io::label_slice(&result.labels, dims, axis, index).map_err(fail)?;
        io::write_pgm(&slice, path.as_ref()).map_err(fail)?;
    }

    Ok(0)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("iftws: {msg}");
            ExitCode::from(code)
        }
    }
}
