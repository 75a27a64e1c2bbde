use nalgebra::Vector3;

use super::reconstruct::Polyline3D;
use crate::{Error, Result};

struct SegmentChord {
    /// Normalized arc-length interval covered by the segment.
    lo: f64,
    hi: f64,
    dir: Vector3<f64>,
}

fn segment_chords(line: &Polyline3D) -> Result<Vec<SegmentChord>> {
    let total = line.total_length_m();
    if line.points.is_empty() || !(total > 0.0) {
        return Err(Error::Geometry(
            "polyline has zero length; arc-length alignment impossible".to_string(),
        ));
    }
    let mut chords = Vec::new();
    let mut start = &line.points[0];
    let mut i = 0;
    while i < line.points.len() {
        let seg = line.points[i].segment_index;
        let mut end = &line.points[i];
        while i < line.points.len() && line.points[i].segment_index == seg {
            end = &line.points[i];
            i += 1;
        }
        let chord = end.position - start.position;
        let norm = chord.norm();
        if norm > 1e-12 {
            chords.push(SegmentChord {
                lo: start.s_m / total,
                hi: end.s_m / total,
                dir: chord / norm,
            });
        }
        start = end;
    }
    if chords.is_empty() {
        return Err(Error::Geometry(
            "polyline has no extended segments".to_string(),
        ));
    }
    Ok(chords)
}

/// Deviation of a reconstructed centerline from ground truth.
///
/// Segments are matched by normalized arc length: each reconstructed
/// segment is paired with the ground-truth segment containing its
/// arc-length midpoint, and the orientation deviation is the maximum angle
/// between the paired segment chords. The length deviation is the absolute
/// difference of total arc lengths.
pub fn path_metrics(reconstructed: &Polyline3D, ground_truth: &Polyline3D) -> Result<(f64, f64)> {
    let rec = segment_chords(reconstructed)?;
    let truth = segment_chords(ground_truth)?;

    let mut max_angle = 0.0_f64;
    for chord in &rec {
        let mid = 0.5 * (chord.lo + chord.hi);
        let matched = truth
            .iter()
            .find(|t| mid >= t.lo && mid <= t.hi)
            .unwrap_or_else(|| truth.last().unwrap());
        // atan2 form keeps full precision for near-zero angles.
        let angle = chord
            .dir
            .cross(&matched.dir)
            .norm()
            .atan2(chord.dir.dot(&matched.dir));
        max_angle = max_angle.max(angle);
    }

    let length_dev = (reconstructed.total_length_m() - ground_truth.total_length_m()).abs();
    Ok((max_angle, length_dev))
}
