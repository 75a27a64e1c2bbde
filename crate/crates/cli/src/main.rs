//! `vinebot` — command-line front end for the everting-robot toolkit.
//!
//! Subcommands cover the full workflow: calibrate a body from growth
//! trials, sweep tip-mount pressure curves, simulate growth through a
//! pipe, generate synthetic sensor logs, reconstruct a centerline from
//! logs, and score a reconstruction against ground truth.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use nalgebra::Point3;

use vinebot::core_model::{fit_calibration, LoadState, VineBodySpec, DEFAULT_GEOMETRIC_FACTOR};
use vinebot::io;
use vinebot::mapping::{path_metrics, reconstruct_path, segment_path};
use vinebot::pipesim::{simulate_growth, synth_logs, NoiseSpec, SimParams, TetherSpec};
use vinebot::tip_mount::{sweep_mounts, AdaptiveGeometry, InteractionModel};
use vinebot::GRAVITY;

#[derive(Parser)]
#[command(
    name = "vinebot",
    version,
    about = "Everting-robot growth, mount, and pipe-mapping toolkit"
)]
struct Cli {
    /// RNG seed for anything stochastic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output directory (created if missing).
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// Print every built-in physical default as JSON and exit.
    #[arg(long)]
    show_defaults: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the geometric factor C and eversion resistance from
    /// pressure-vs-load growth trials.
    Calibrate {
        /// Trials CSV: load_N,pressure_Pa.
        #[arg(long)]
        trials: PathBuf,
        /// Tube cross-section area, m². Mutually exclusive with --diameter.
        #[arg(long)]
        area: Option<f64>,
        /// Tube diameter, m; area is computed as a circle.
        #[arg(long)]
        diameter: Option<f64>,
    },
    /// Pressure-to-grow vs load for no mount, a constant-force mount, and
    /// an adaptive mount tuned to the same coupling.
    SweepMounts {
        /// Body JSON; defaults to the calibrated 88 mm reference body.
        #[arg(long)]
        body: Option<PathBuf>,
        /// Zero-contact coupling both mounts are tuned to, N.
        #[arg(long, default_value_t = 12.0)]
        tuned: f64,
        /// Fraction of axial tip-contact force lost to tip deformation.
        #[arg(long, default_value_t = 1.0)]
        gain: f64,
        /// Constant propulsion loss while pushing the mount, N.
        #[arg(long, default_value_t = 0.0)]
        offset: f64,
        /// Comma-separated load grid, N. Empty string for a header-only CSV.
        #[arg(long, default_value = "0,2,4,6,8,10")]
        loads: String,
    },
    /// Quasi-static growth through a pipe: tension, load, and pressure at
    /// each everted length.
    Simulate {
        /// Pipe JSON.
        #[arg(long)]
        pipe: PathBuf,
        /// Body JSON.
        #[arg(long)]
        body: PathBuf,
        /// Optional tip-mount JSON ({"kind": "constant" | "adaptive", ...}).
        #[arg(long)]
        mount: Option<PathBuf>,
        /// Supply pressure limit, Pa.
        #[arg(long, default_value_t = 10_000.0)]
        p_max: f64,
        /// Growth step, m.
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        /// Payload mass dragged at the tip, kg.
        #[arg(long, default_value_t = 0.0)]
        payload: f64,
        #[arg(long, default_value_t = 0.0)]
        gain: f64,
        #[arg(long, default_value_t = 0.0)]
        offset: f64,
        /// Tail/tether mass per length, kg/m.
        #[arg(long, default_value_t = TetherSpec::default().mass_per_length_kg_m)]
        tether_mass_per_m: f64,
        /// Tail-to-pipe friction coefficient.
        #[arg(long, default_value_t = TetherSpec::default().mu_pipe)]
        mu_pipe: f64,
        /// Also emit a synthetic sensor log and marker table for the pipe.
        #[arg(long)]
        synth_logs: bool,
    },
    /// Synthetic IMU/magnetometer log and marker table for a pipe.
    SynthLogs {
        /// Pipe JSON.
        #[arg(long)]
        pipe: PathBuf,
        /// Accelerometer noise sigma, m/s²; defaults to the built-in noise model.
        #[arg(long)]
        accel_sigma: Option<f64>,
        /// Magnetometer noise sigma, field units.
        #[arg(long)]
        mag_sigma: Option<f64>,
        /// Marker odometry noise sigma, m.
        #[arg(long)]
        marker_sigma: Option<f64>,
        /// Disable all noise (overrides the sigma flags).
        #[arg(long)]
        noiseless: bool,
        /// Log samples per meter of pipe.
        #[arg(long, default_value_t = 20.0)]
        sample_per_m: f64,
    },
    /// Reconstruct a 3D centerline polyline from a sensor log and marker table.
    Reconstruct {
        /// Sensor log CSV: t_s,ax,ay,az,mx,my,mz,marker_id.
        #[arg(long)]
        log: PathBuf,
        /// Marker table CSV: marker_id,odometry_m,label.
        #[arg(long)]
        markers: PathBuf,
        /// Polyline sample spacing, m.
        #[arg(long, default_value_t = 0.05)]
        spacing: f64,
        /// Ground-truth polyline CSV; when given, metrics.json is also written.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Compare a reconstructed polyline against ground truth.
    Score {
        /// Reconstructed polyline CSV.
        #[arg(long)]
        reconstructed: PathBuf,
        /// Ground-truth polyline CSV.
        #[arg(long)]
        truth: PathBuf,
    },
}

fn default_body() -> VineBodySpec {
    VineBodySpec::new(0.088, 0.503, 2.52, 2.52).expect("reference body is valid")
}

fn parse_loads(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<f64>()
                .with_context(|| format!("--loads: not a number: {p:?}"))
        })
        .collect()
}

fn show_defaults(seed: u64) -> Result<()> {
    let tether = TetherSpec::default();
    let noise = NoiseSpec::default_noisy(seed);
    let defaults = serde_json::json!({
        "gravity_m_s2": GRAVITY,
        "geometric_factor_c": DEFAULT_GEOMETRIC_FACTOR,
        "reference_body": default_body(),
        "tuned_couplings_N": [12.0, 24.0],
        "adaptive_geometry": AdaptiveGeometry::default(),
        "interaction_model": InteractionModel::lossless(),
        "tether": tether,
        "noise": noise,
        "sim": { "p_max_pa": 10_000.0, "step_m": 0.1, "payload_mass_kg": 0.0 },
        "sample_per_m": 20.0,
        "polyline_spacing_m": 0.05,
    });
    println!("{}", serde_json::to_string_pretty(&defaults)?);
    Ok(())
}

fn score_to(
    out: &Path,
    reconstructed: &vinebot::mapping::Polyline3D,
    truth_path: &Path,
) -> Result<io::PathMetrics> {
    let truth = io::read_polyline(truth_path)?;
    let (ori, len) = path_metrics(reconstructed, &truth)?;
    let metrics = io::PathMetrics::new(ori, len);
    io::write_metrics(&out.join("metrics.json"), &metrics)?;
    println!(
        "max orientation deviation: {:.6} deg; length deviation: {:.6} m",
        metrics.max_orientation_dev_deg, metrics.length_dev_m
    );
    Ok(metrics)
}

fn run(cli: Cli) -> Result<()> {
    if cli.show_defaults {
        return show_defaults(cli.seed);
    }
    let Some(command) = cli.command else {
        bail!("missing subcommand; run with --help");
    };
    std::fs::create_dir_all(&cli.out)
        .with_context(|| format!("creating output directory {}", cli.out.display()))?;
    let out = cli.out.as_path();

    match command {
        Command::Calibrate {
            trials,
            area,
            diameter,
        } => {
            let trials = io::read_calibration_trials(&trials)?;
            let area_m2 = match (area, diameter) {
                (Some(a), None) => a,
                (None, Some(d)) => std::f64::consts::PI * d * d / 4.0,
                _ => bail!("provide exactly one of --area or --diameter"),
            };
            if !area_m2.is_finite() || area_m2 <= 0.0 {
                bail!("cross-section area must be > 0, got {area_m2}");
            }
            let fit = fit_calibration(&trials, area_m2)?;
            io::write_calibration_result(&out.join("calibration.json"), &fit)?;
            println!("C = {:.6}", fit.geometric_factor_c);
            println!("F_eversion = {:.6} N", fit.f_eversion_n);
            println!("rms residual = {:.6} Pa", fit.rms_residual_pa);
        }

        Command::SweepMounts {
            body,
            tuned,
            gain,
            offset,
            loads,
        } => {
            let body = match body {
                Some(p) => io::read_body_spec(&p)?,
                None => default_body(),
            };
            let loads = parse_loads(&loads)?;
            let model = InteractionModel::new(gain, offset)?;
            let points = sweep_mounts(
                &body,
                tuned,
                AdaptiveGeometry::default(),
                &model,
                &LoadState::default(),
                &loads,
            )?;
            io::write_sweep_csv(&out.join("sweep.csv"), &points)?;
            println!(
                "wrote {} sweep rows to {}",
                points.len(),
                out.join("sweep.csv").display()
            );
        }

        Command::Simulate {
            pipe,
            body,
            mount,
            p_max,
            step,
            payload,
            gain,
            offset,
            tether_mass_per_m,
            mu_pipe,
            synth_logs: emit_logs,
        } => {
            let pipe = io::read_pipe_spec(&pipe)?;
            let body = io::read_body_spec(&body)?;
            let mount = mount.map(|p| io::read_mount_spec(&p)).transpose()?;
            if !pipe.fits_body(&body) {
                bail!(
                    "body diameter {} m exceeds pipe bore {} m",
                    body.diameter_m,
                    pipe.inner_diameter_m
                );
            }
            let tether = TetherSpec {
                mass_per_length_kg_m: tether_mass_per_m,
                mu_pipe,
            };
            let model = InteractionModel::new(gain, offset)?;
            let params = SimParams {
                p_max_pa: p_max,
                step_m: step,
                payload_mass_kg: payload,
            };
            let trace = simulate_growth(&pipe, &body, mount.as_ref(), &model, &tether, &params)?;
            io::write_trace_csv(&out.join("trace.csv"), &trace)?;
            println!(
                "status: {}; reached {:.3} of {:.3} m",
                match trace.status {
                    vinebot::pipesim::TraceStatus::Completed => "completed",
                    vinebot::pipesim::TraceStatus::PressureLimited => "pressure_limited",
                    vinebot::pipesim::TraceStatus::MountStranded => "mount_stranded",
                },
                trace.max_reachable_length_m,
                pipe.total_length_m()
            );
            if emit_logs {
                let noise = NoiseSpec::default_noisy(cli.seed);
                let (log, markers) = synth_logs(&pipe, &noise, 20.0)?;
                io::write_sensor_log(&out.join("log.csv"), &log)?;
                io::write_marker_table(&out.join("markers.csv"), &markers)?;
            }
        }

        Command::SynthLogs {
            pipe,
            accel_sigma,
            mag_sigma,
            marker_sigma,
            noiseless,
            sample_per_m,
        } => {
            let pipe = io::read_pipe_spec(&pipe)?;
            let noise = if noiseless {
                NoiseSpec::noiseless(cli.seed)
            } else {
                let base = NoiseSpec::default_noisy(cli.seed);
                NoiseSpec {
                    accel_sigma: accel_sigma.unwrap_or(base.accel_sigma),
                    mag_sigma: mag_sigma.unwrap_or(base.mag_sigma),
                    marker_sigma_m: marker_sigma.unwrap_or(base.marker_sigma_m),
                    seed: cli.seed,
                }
            };
            let (log, markers) = synth_logs(&pipe, &noise, sample_per_m)?;
            io::write_sensor_log(&out.join("log.csv"), &log)?;
            io::write_marker_table(&out.join("markers.csv"), &markers)?;
            println!("wrote {} samples, {} markers", log.len(), markers.len());
        }

        Command::Reconstruct {
            log,
            markers,
            spacing,
            truth,
        } => {
            let log = io::read_sensor_log(&log)?;
            let markers = io::read_marker_table(&markers)?;
            let segments = segment_path(&log, &markers)?;
            let line = reconstruct_path(&segments, Point3::origin(), spacing)?;
            io::write_polyline(&out.join("polyline.csv"), &line)?;
            println!(
                "reconstructed {} segments, {:.3} m of centerline",
                segments.len(),
                line.total_length_m()
            );
            if let Some(truth) = truth {
                score_to(out, &line, &truth)?;
            }
        }

        Command::Score {
            reconstructed,
            truth,
        } => {
            let line = io::read_polyline(&reconstructed)?;
            score_to(out, &line, &truth)?;
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
