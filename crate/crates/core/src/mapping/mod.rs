//! Pipe mapping: world-frame orientation from accelerometer/magnetometer,
//! marker-based odometry segmentation, 3D centerline reconstruction, and
//! deviation metrics against ground truth.
//!
//! World frame convention: `z` is the negative gravity direction (at rest
//! the accelerometer reads `+g` along world `z`), `x` is magnetic north
//! (the horizontal projection of the magnetic field), and `y = z × x`
//! points magnetic west. No declination correction is applied.
//!
//! Sensor convention: the sensor `x`-axis points along the direction of
//! travel (the pipe axis).

mod metrics;
pub(crate) mod reconstruct;
mod rotation;
mod segments;

pub use metrics::path_metrics;
pub use reconstruct::{
    junction_residuals, reconstruct_path, sample_centerline, CenterlineSample, Polyline3D,
    PolylinePoint,
};
pub use rotation::{heading_and_depression, world_rotation, HeadingDepression, WorldRotation};
pub use segments::{segment_path, ImuSample, Marker, MarkerLabel, PathSegment, SensorLog};

/// Sensor-frame axis that points along the direction of travel.
pub const TRAVEL_AXIS: [f64; 3] = [1.0, 0.0, 0.0];
