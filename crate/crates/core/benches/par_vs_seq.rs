//! Parallel vs sequential Monte-Carlo throughput.
//!
//! Compares `parallel::map_indexed` (rayon when the default `parallel`
//! feature is on) against the always-sequential reference on the two
//! replicate-heavy workloads: noisy calibration fits and noisy mapping
//! round trips.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nalgebra::Point3;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use vinebot::core_model::{fit_calibration, CalibrationTrial};
use vinebot::mapping::{path_metrics, reconstruct_path, segment_path};
use vinebot::parallel::{map_indexed, map_indexed_seq};
use vinebot::pipesim::{presets, synth_logs, NoiseSpec};

fn noisy_fit(replicate: usize) -> f64 {
    let area = std::f64::consts::PI * 0.044 * 0.044;
    let (c, fe) = (0.503, 2.52);
    let mut rng = ChaCha8Rng::seed_from_u64(replicate as u64);
    let normal = Normal::new(0.0, 1.0).unwrap();
    let mut trials = Vec::new();
    for _ in 0..10 {
        for load in [0.0, 4.0, 8.0, 12.0] {
            let p = (fe + load) / (c * area);
            trials.push(CalibrationTrial {
                applied_load_n: load,
                observed_growth_pressure_pa: p * (1.0 + 0.01 * normal.sample(&mut rng)),
            });
        }
    }
    fit_calibration(&trials, area).unwrap().geometric_factor_c
}

fn noisy_roundtrip(replicate: usize) -> f64 {
    let pipe = presets::lab_pipe();
    let truth =
        reconstruct_path(&pipe.to_path_segments().unwrap(), Point3::origin(), 0.05).unwrap();
    let noise = NoiseSpec::default_noisy(replicate as u64);
    let (log, markers) = synth_logs(&pipe, &noise, 20.0).unwrap();
    let segs = segment_path(&log, &markers).unwrap();
    let rec = reconstruct_path(&segs, Point3::origin(), 0.05).unwrap();
    path_metrics(&rec, &truth).unwrap().0
}

fn bench_calibration_mc(c: &mut Criterion) {
    let mut group = c.benchmark_group("calibration_mc");
    let n = 256;
    group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
        b.iter(|| map_indexed(n, noisy_fit))
    });
    group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
        b.iter(|| map_indexed_seq(n, noisy_fit))
    });
    group.finish();
}

fn bench_mapping_mc(c: &mut Criterion) {
    let mut group = c.benchmark_group("mapping_mc");
    group.sample_size(10);
    let n = 32;
    group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
        b.iter(|| map_indexed(n, noisy_roundtrip))
    });
    group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
        b.iter(|| map_indexed_seq(n, noisy_roundtrip))
    });
    group.finish();
}

criterion_group!(benches, bench_calibration_mc, bench_mapping_mc);
criterion_main!(benches);
