use nalgebra::{Point3, Vector3};

use super::segments::PathSegment;
use crate::{Error, Result};

/// One reconstructed centerline point with arc length and provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolylinePoint {
    /// Cumulative arc length from the origin, m (analytic, not chordal).
    pub s_m: f64,
    pub position: Point3<f64>,
    pub segment_index: usize,
}

/// Sampled 3D pipe centerline.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline3D {
    pub points: Vec<PolylinePoint>,
}

impl Polyline3D {
    pub fn total_length_m(&self) -> f64 {
        self.points.last().map(|p| p.s_m).unwrap_or(0.0)
    }

    pub fn endpoint(&self) -> Option<Point3<f64>> {
        self.points.last().map(|p| p.position)
    }
}

/// Centerline point with its tangent, for synthetic log generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenterlineSample {
    pub s_m: f64,
    pub position: Point3<f64>,
    pub tangent: Vector3<f64>,
    pub segment_index: usize,
}

pub(crate) enum FrameKind {
    Straight {
        dir: Vector3<f64>,
    },
    Elbow {
        t_in: Vector3<f64>,
        normal: Vector3<f64>,
        radius: f64,
    },
}

pub(crate) struct SegFrame {
    pub(crate) start: Point3<f64>,
    pub(crate) length: f64,
    pub(crate) kind: FrameKind,
}

impl SegFrame {
    pub(crate) fn at(&self, u: f64) -> (Point3<f64>, Vector3<f64>) {
        match &self.kind {
            FrameKind::Straight { dir } => (self.start + u * dir, *dir),
            FrameKind::Elbow {
                t_in,
                normal,
                radius,
            } => {
                let phi = u / radius;
                let pos =
                    self.start + radius * phi.sin() * t_in + radius * (1.0 - phi.cos()) * normal;
                let tan = phi.cos() * t_in + phi.sin() * normal;
                (pos, tan)
            }
        }
    }

    fn end_tangent(&self) -> Vector3<f64> {
        self.at(self.length).1
    }
}

/// Lays out segment geometry: elbows are circular arcs of radius
/// `arc_length / bend_angle`, tangent-continuous with the preceding
/// straight and turning in the plane spanned by the flanking straight
/// directions.
pub(crate) fn segment_frames(
    segments: &[PathSegment],
    origin: Point3<f64>,
) -> Result<Vec<SegFrame>> {
    let mut frames = Vec::with_capacity(segments.len());
    let mut pos = origin;
    let mut tangent: Option<Vector3<f64>> = None;

    for (i, seg) in segments.iter().enumerate() {
        match seg {
            PathSegment::Straight {
                length_m,
                direction,
            } => {
                if !(*length_m > 0.0) {
                    return Err(Error::Geometry(format!(
                        "segment {i}: straight length must be > 0, got {length_m}"
                    )));
                }
                let dir = direction.normalize();
                frames.push(SegFrame {
                    start: pos,
                    length: *length_m,
                    kind: FrameKind::Straight { dir },
                });
                pos += dir * *length_m;
                tangent = Some(dir);
            }
            PathSegment::Elbow {
                arc_length_m,
                bend_angle_rad,
            } => {
                if !(*arc_length_m > 0.0) {
                    return Err(Error::Geometry(format!(
                        "segment {i}: elbow arc length must be > 0, got {arc_length_m}"
                    )));
                }
                if !(*bend_angle_rad > 0.0 && *bend_angle_rad < std::f64::consts::PI) {
                    return Err(Error::Geometry(format!(
                        "segment {i}: bend angle must be in (0, pi), got {bend_angle_rad}"
                    )));
                }
                let t_in = tangent.ok_or_else(|| {
                    Error::Geometry(format!("segment {i}: path cannot start with an elbow"))
                })?;
                let t_out = match segments.get(i + 1) {
                    Some(PathSegment::Straight { direction, .. }) => direction.normalize(),
                    _ => {
                        return Err(Error::Geometry(format!(
                            "segment {i}: elbow must be followed by a straight section"
                        )))
                    }
                };
                let in_plane = t_out - t_out.dot(&t_in) * t_in;
                if in_plane.norm() < 1e-9 {
                    return Err(Error::Geometry(format!(
                        "segment {i}: flanking straights are parallel; turn plane undefined"
                    )));
                }
                let normal = in_plane.normalize();
                let radius = arc_length_m / bend_angle_rad;
                let frame = SegFrame {
                    start: pos,
                    length: *arc_length_m,
                    kind: FrameKind::Elbow {
                        t_in,
                        normal,
                        radius,
                    },
                };
                let (end_pos, end_tan) = frame.at(*arc_length_m);
                frames.push(frame);
                pos = end_pos;
                tangent = Some(end_tan);
            }
        }
    }
    Ok(frames)
}

/// Samples the centerline at spacing `<= sample_spacing_m`, returning
/// positions and tangents.
pub fn sample_centerline(
    segments: &[PathSegment],
    origin: Point3<f64>,
    sample_spacing_m: f64,
) -> Result<Vec<CenterlineSample>> {
    if !(sample_spacing_m > 0.0) {
        return Err(Error::Geometry(format!(
            "sample spacing must be > 0, got {sample_spacing_m}"
        )));
    }
    if segments.is_empty() {
        return Err(Error::Geometry("no segments to reconstruct".to_string()));
    }
    let frames = segment_frames(segments, origin)?;

    let mut out = Vec::new();
    let mut s_base = 0.0;
    for (i, frame) in frames.iter().enumerate() {
        if i == 0 {
            let (pos, tan) = frame.at(0.0);
            out.push(CenterlineSample {
                s_m: 0.0,
                position: pos,
                tangent: tan,
                segment_index: 0,
            });
        }
        let n = (frame.length / sample_spacing_m).ceil().max(1.0) as usize;
        for j in 1..=n {
            let u = frame.length * j as f64 / n as f64;
            let (pos, tan) = frame.at(u);
            out.push(CenterlineSample {
                s_m: s_base + u,
                position: pos,
                tangent: tan,
                segment_index: i,
            });
        }
        s_base += frame.length;
    }
    Ok(out)
}

/// Reconstructs the 3D centerline polyline from path segments.
pub fn reconstruct_path(
    segments: &[PathSegment],
    origin: Point3<f64>,
    sample_spacing_m: f64,
) -> Result<Polyline3D> {
    let samples = sample_centerline(segments, origin, sample_spacing_m)?;
    Ok(Polyline3D {
        points: samples
            .into_iter()
            .map(|c| PolylinePoint {
                s_m: c.s_m,
                position: c.position,
                segment_index: c.segment_index,
            })
            .collect(),
    })
}

/// Tangent-continuity residual at each elbow junction: the angle between
/// the arc's exit tangent and the following straight's direction, rad.
pub fn junction_residuals(segments: &[PathSegment], origin: Point3<f64>) -> Result<Vec<f64>> {
    let frames = segment_frames(segments, origin)?;
    let mut residuals = Vec::new();
    for (i, seg) in segments.iter().enumerate() {
        if seg.is_elbow() {
            let exit = frames[i].end_tangent();
            if let Some(PathSegment::Straight { direction, .. }) = segments.get(i + 1) {
                let d = direction.normalize();
                residuals.push(exit.cross(&d).norm().atan2(exit.dot(&d)));
            }
        }
    }
    Ok(residuals)
}
