use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::rotation::world_rotation;
use super::TRAVEL_AXIS;
use crate::{Error, Result};

/// One logged IMU row, optionally tagged with an odometry marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImuSample {
    pub t_s: f64,
    /// Specific force, m/s². At rest this points opposite gravity.
    pub accel: Vector3<f64>,
    /// Magnetic field, any consistent units.
    pub mag: Vector3<f64>,
    pub marker_id: Option<u32>,
}

pub type SensorLog = Vec<ImuSample>;

/// Role of an odometry marker placed along the tether cable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkerLabel {
    StraightStart,
    StraightEnd,
    ElbowStart,
    ElbowEnd,
}

impl MarkerLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            MarkerLabel::StraightStart => "straight_start",
            MarkerLabel::StraightEnd => "straight_end",
            MarkerLabel::ElbowStart => "elbow_start",
            MarkerLabel::ElbowEnd => "elbow_end",
        }
    }
}

impl std::str::FromStr for MarkerLabel {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "straight_start" => Ok(MarkerLabel::StraightStart),
            "straight_end" => Ok(MarkerLabel::StraightEnd),
            "elbow_start" => Ok(MarkerLabel::ElbowStart),
            "elbow_end" => Ok(MarkerLabel::ElbowEnd),
            other => Err(format!("unknown marker label {other:?}")),
        }
    }
}

/// Manually labeled cable-odometry marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Marker {
    pub marker_id: u32,
    pub odometry_m: f64,
    pub label: MarkerLabel,
}

/// One piece of the pipe centerline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathSegment {
    Straight {
        length_m: f64,
        /// Unit pipe direction in the world frame.
        direction: Vector3<f64>,
    },
    Elbow {
        arc_length_m: f64,
        bend_angle_rad: f64,
    },
}

impl PathSegment {
    pub fn length_m(&self) -> f64 {
        match self {
            PathSegment::Straight { length_m, .. } => *length_m,
            PathSegment::Elbow { arc_length_m, .. } => *arc_length_m,
        }
    }

    pub fn is_elbow(&self) -> bool {
        matches!(self, PathSegment::Elbow { .. })
    }
}

// Junction markers (an end and the following start) may share odometry;
// anything further backwards than this is an ordering error.
const ODOMETRY_BACKTRACK_TOL: f64 = 1e-9;

/// Splits a sensor log into straight and elbow segments using the marker
/// table.
///
/// Straight sections get their length from the odometry difference of
/// their boundary markers and their direction from the renormalized mean
/// of per-sample world directions between (and including) the boundary
/// rows. Elbows get their arc length from odometry and their bend angle
/// from the angle between the flanking straight directions.
pub fn segment_path(log: &[ImuSample], markers: &[Marker]) -> Result<Vec<PathSegment>> {
    if markers.is_empty() {
        return Ok(Vec::new());
    }
    if !markers.len().is_multiple_of(2) {
        let last = markers.last().unwrap();
        return Err(Error::Marker {
            marker_id: last.marker_id,
            why: "unpaired boundary marker (odd marker count)".to_string(),
        });
    }

    // Pair markers into segments, checking the label grammar.
    enum Raw {
        Straight { length: f64, start: u32, end: u32 },
        Elbow { arc: f64, id: u32 },
    }
    let mut raw = Vec::new();
    let mut prev_end_odo = f64::NEG_INFINITY;
    for pair in markers.chunks(2) {
        let (start, end) = (&pair[0], &pair[1]);
        let expected_end = match start.label {
            MarkerLabel::StraightStart => MarkerLabel::StraightEnd,
            MarkerLabel::ElbowStart => MarkerLabel::ElbowEnd,
            other => {
                return Err(Error::Marker {
                    marker_id: start.marker_id,
                    why: format!("expected a start label, got {}", other.as_str()),
                })
            }
        };
        if end.label != expected_end {
            return Err(Error::Marker {
                marker_id: end.marker_id,
                why: format!(
                    "expected {}, got {}",
                    expected_end.as_str(),
                    end.label.as_str()
                ),
            });
        }
        if prev_end_odo != f64::NEG_INFINITY
            && start.odometry_m < prev_end_odo - ODOMETRY_BACKTRACK_TOL
        {
            return Err(Error::Marker {
                marker_id: start.marker_id,
                why: format!(
                    "odometry {} m goes backwards (previous segment ended at {} m)",
                    start.odometry_m, prev_end_odo
                ),
            });
        }
        let length = end.odometry_m - start.odometry_m;
        if !(length > 0.0) {
            return Err(Error::Marker {
                marker_id: end.marker_id,
                why: format!(
                    "odometry must be strictly increasing within a segment (length {length} m)"
                ),
            });
        }
        prev_end_odo = end.odometry_m;
        match start.label {
            MarkerLabel::StraightStart => raw.push(Raw::Straight {
                length,
                start: start.marker_id,
                end: end.marker_id,
            }),
            MarkerLabel::ElbowStart => raw.push(Raw::Elbow {
                arc: length,
                id: start.marker_id,
            }),
            _ => unreachable!(),
        }
    }

    // Elbows need flanking straights to define their bend.
    for (i, r) in raw.iter().enumerate() {
        if let Raw::Elbow { id, .. } = r {
            let prev_straight = i > 0 && matches!(raw[i - 1], Raw::Straight { .. });
            let next_straight = i + 1 < raw.len() && matches!(raw[i + 1], Raw::Straight { .. });
            if !prev_straight || !next_straight {
                return Err(Error::Marker {
                    marker_id: *id,
                    why: "elbow is not flanked by straight sections".to_string(),
                });
            }
        }
    }

    let row_of_marker = |id: u32| -> Result<usize> {
        log.iter()
            .position(|s| s.marker_id == Some(id))
            .ok_or(Error::Marker {
                marker_id: id,
                why: "marker does not appear in the sensor log".to_string(),
            })
    };
    let travel = Vector3::from(TRAVEL_AXIS);

    // First pass: straight directions (chordal mean of per-sample
    // world directions, renormalized).
    let mut directions: Vec<Option<Vector3<f64>>> = vec![None; raw.len()];
    for (i, r) in raw.iter().enumerate() {
        if let Raw::Straight { start, end, .. } = r {
            let i0 = row_of_marker(*start)?;
            let i1 = row_of_marker(*end)?;
            if i1 < i0 {
                return Err(Error::Marker {
                    marker_id: *end,
                    why: "marker rows out of order in the sensor log".to_string(),
                });
            }
            let mut sum = Vector3::zeros();
            for sample in &log[i0..=i1] {
                let rot = world_rotation(&sample.accel, &sample.mag)?;
                sum += rot * travel;
            }
            let norm = sum.norm();
            if norm < 1e-12 {
                return Err(Error::Marker {
                    marker_id: *start,
                    why: "straight section has no consistent direction".to_string(),
                });
            }
            directions[i] = Some(sum / norm);
        }
    }

    // Second pass: assemble, deriving elbow bends from flanking straights.
    let mut out = Vec::with_capacity(raw.len());
    for (i, r) in raw.iter().enumerate() {
        match r {
            Raw::Straight { length, .. } => out.push(PathSegment::Straight {
                length_m: *length,
                direction: directions[i].unwrap(),
            }),
            Raw::Elbow { arc, id } => {
                let d_in = directions[i - 1].unwrap();
                let d_out = directions[i + 1].unwrap();
                let bend = d_in.cross(&d_out).norm().atan2(d_in.dot(&d_out));
                if bend < 1e-6 {
                    return Err(Error::Marker {
                        marker_id: *id,
                        why: "flanking straights are parallel; bend angle undefined".to_string(),
                    });
                }
                out.push(PathSegment::Elbow {
                    arc_length_m: *arc,
                    bend_angle_rad: bend,
                });
            }
        }
    }
    Ok(out)
}
