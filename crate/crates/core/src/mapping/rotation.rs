use nalgebra::{Matrix3, Rotation3, Vector3};

use crate::{Error, Result};

/// Rotation taking sensor-frame coordinates to the world frame.
pub type WorldRotation = Rotation3<f64>;

/// Minimum accel/mag angular separation for a well-conditioned frame, rad.
const MIN_SEPARATION_RAD: f64 = std::f64::consts::PI / 180.0;

/// Builds the sensor-to-world rotation from a rest accelerometer reading
/// (specific force, pointing opposite gravity) and a magnetometer reading.
///
/// World `z` is the unit accel direction, world `x` the unit horizontal
/// projection of the magnetic field (magnetic north), world `y = z × x`
/// (west). Orthonormal by construction; invariant to positive scaling of
/// either input. Near-parallel inputs (< 1 degree separation) are rejected.
pub fn world_rotation(accel: &Vector3<f64>, mag: &Vector3<f64>) -> Result<WorldRotation> {
    let an = accel.norm();
    let mn = mag.norm();
    if an == 0.0 || mn == 0.0 {
        return Err(Error::invalid(
            "world_rotation",
            "accel and mag must be non-zero".to_string(),
        ));
    }
    let z = accel / an;
    let cos_sep = (mag.dot(&z) / mn).clamp(-1.0, 1.0);
    let separation = cos_sep.acos();
    if !(MIN_SEPARATION_RAD..=std::f64::consts::PI - MIN_SEPARATION_RAD).contains(&separation) {
        return Err(Error::DegenerateMagnetics {
            separation_deg: separation.to_degrees(),
        });
    }

    let horiz = mag - mag.dot(&z) * z;
    let x = horiz / horiz.norm();
    let y = z.cross(&x);

    // Rows are the world axes expressed in sensor coordinates, so the
    // matrix maps sensor vectors into the world frame.
    let m = Matrix3::new(x.x, x.y, x.z, y.x, y.y, y.z, z.x, z.y, z.z);
    Ok(Rotation3::from_matrix_unchecked(m))
}

/// Azimuth/depression of a sensor-frame direction in the world frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeadingDepression {
    /// Measured in the horizontal plane from +x (north) toward +y (west), rad.
    pub azimuth_rad: f64,
    /// Downward pitch from horizontal, rad (positive = descending).
    pub depression_rad: f64,
    /// True when the direction is vertical and azimuth is undefined
    /// (reported as 0).
    pub vertical: bool,
}

const VERTICAL_EPS: f64 = 1e-9;

/// Transforms `axis` (the sensor-frame direction of travel) into the world
/// frame and reports its azimuth and angle of depression.
pub fn heading_and_depression(
    rot: &WorldRotation,
    axis: &Vector3<f64>,
) -> Result<HeadingDepression> {
    if axis.norm() == 0.0 {
        return Err(Error::invalid(
            "heading_and_depression",
            "axis must be non-zero".to_string(),
        ));
    }
    let w = (rot * axis).normalize();
    let horiz = w.x.hypot(w.y);
    let depression_rad = -w.z.clamp(-1.0, 1.0).asin();
    if horiz < VERTICAL_EPS {
        return Ok(HeadingDepression {
            azimuth_rad: 0.0,
            depression_rad,
            vertical: true,
        });
    }
    Ok(HeadingDepression {
        azimuth_rad: w.y.atan2(w.x),
        depression_rad,
        vertical: false,
    })
}
