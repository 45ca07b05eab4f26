use ift_watershed::engine::{run_ift, MarkerSet, RunConfig};
use ift_watershed::queue::QueueBackendId;
use ift_watershed::synthgen::{generate, GenKind, GenSpec};
use ift_watershed::volume::Dims;

fn main() {
    let sides = [32usize, 64, 128];
    let cases: Vec<_> = sides
        .iter()
        .map(|&side| {
            let dims = Dims::new(side, side, side).unwrap();
            let vol = generate(&GenSpec { kind: GenKind::Noise { min: 0, max: 255 }, dims, bit_depth: 8, seed: 7 }).unwrap();
            let markers = MarkerSet::new(vec![0], vec![dims.linear(side - 1, side - 1, side - 1)]);
            (dims, vol, markers)
        })
        .collect();
    let mut best = [f64::INFINITY; 3];
    // Interleave rounds so machine-load drift hits all sizes alike.
    for _ in 0..7 {
        for (i, (_, vol, markers)) in cases.iter().enumerate() {
            let run = run_ift(vol, markers, &RunConfig::new(QueueBackendId::V)).unwrap();
            best[i] = best[i].min(run.stats.wall_time_seconds);
        }
    }
    for (i, (dims, _, _)) in cases.iter().enumerate() {
        let m = dims.arc_count() as f64;
        println!("{}^3: min {:.4}s per-arc {:.1} ns", sides[i], best[i], best[i] / m * 1e9);
    }
}
