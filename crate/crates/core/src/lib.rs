//! Modeling and simulation toolkit for everting (vine) robots in pipes.
//!
//! The crate is organized around four subsystems:
//!
//! * [`core_model`] — growth/inversion force balances and calibration of the
//!   geometric factor and eversion resistance from pressure-vs-load trials.
//! * [`tip_mount`] — constant-force and passively adapting enclosed tip
//!   mounts: coupling friction, slip and pull-forward conditions, and
//!   growth-pressure prediction with a mount installed.
//! * [`mapping`] — world-frame orientation from accelerometer/magnetometer,
//!   marker-based odometry segmentation, 3D centerline reconstruction, and
//!   deviation metrics against ground truth.
//! * [`pipesim`] — quasi-static growth simulation through a pipe spec and
//!   synthetic sensor-log generation for round-trip tests.
//!
//! All types are immutable values and all operations are pure functions,
//! so everything here is safe to call from any number of threads. The
//! `parallel` feature (on by default) backs the Monte-Carlo helpers in
//! [`parallel`] with rayon; without it they fall back to sequential loops
//! with identical results.

// Validation deliberately writes `!(x > 0.0)` so NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod core_model;
mod error;
pub mod io;
pub mod mapping;
pub mod parallel;
pub mod pipesim;
pub mod tip_mount;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Standard gravity, m/s². Used everywhere a weight is derived from a mass.
pub const GRAVITY: f64 = 9.80665;

/// Force tolerance (N) for boundary comparisons in the growth/inversion
/// and slip conditions. The conditions are non-strict inequalities; this
/// slack keeps the boundary case true under floating-point round-off.
pub const FORCE_TOL: f64 = 1e-9;
