//! File formats: CSV and JSON readers/writers for every external surface.
//!
//! Schemas:
//! * calibration trials: `load_N,pressure_Pa`
//! * calibration result: JSON `{"C", "f_eversion_N", "rms_residual_Pa"}`
//! * mount sweep: `load_N,pressure_Pa,mount_kind`
//! * growth trace: `length_m,t_tail_N,f_load_N,pressure_Pa`
//! * sensor log: `t_s,ax,ay,az,mx,my,mz,marker_id` (marker_id blank when unset)
//! * marker table: `marker_id,odometry_m,label`
//! * polyline: `s_m,x_m,y_m,z_m,segment_index`
//!
//! Floats are written with Rust's shortest round-trip formatting, so
//! writes are byte-deterministic for identical values.

use std::fs;
use std::path::Path;

use nalgebra::{Point3, Vector3};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::core_model::{CalibrationResult, CalibrationTrial, VineBodySpec};
use crate::mapping::{ImuSample, Marker, MarkerLabel, Polyline3D, PolylinePoint, SensorLog};
use crate::pipesim::{GrowthTrace, PipeSpec};
use crate::tip_mount::{Mount, SweepPoint};
use crate::{Error, Result};

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn row_err(path: &Path, line: u64, why: impl Into<String>) -> Error {
    Error::CsvRow {
        path: path.to_path_buf(),
        line,
        why: why.into(),
    }
}

struct CsvReader {
    records: Vec<(u64, csv::StringRecord)>,
}

fn open_csv(path: &Path, expected_header: &[&str]) -> Result<CsvReader> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(false)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => io_err(path, std::io::Error::other(e)),
            _ => row_err(path, 1, e.to_string()),
        })?;
    let header = reader
        .headers()
        .map_err(|e| row_err(path, 1, e.to_string()))?;
    let got: Vec<&str> = header.iter().collect();
    if got != expected_header {
        return Err(row_err(
            path,
            1,
            format!("expected header {expected_header:?}, got {got:?}"),
        ));
    }
    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            row_err(path, line, e.to_string())
        })?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        records.push((line, rec));
    }
    Ok(CsvReader { records })
}

fn parse_f64(path: &Path, line: u64, field: &str, value: &str) -> Result<f64> {
    value.parse::<f64>().map_err(|_| {
        row_err(
            path,
            line,
            format!("field {field}: not a number: {value:?}"),
        )
    })
}

pub fn read_calibration_trials(path: &Path) -> Result<Vec<CalibrationTrial>> {
    let csv = open_csv(path, &["load_N", "pressure_Pa"])?;
    let mut out = Vec::with_capacity(csv.records.len());
    for (line, rec) in csv.records {
        out.push(CalibrationTrial {
            applied_load_n: parse_f64(path, line, "load_N", &rec[0])?,
            observed_growth_pressure_pa: parse_f64(path, line, "pressure_Pa", &rec[1])?,
        });
    }
    Ok(out)
}

pub fn write_calibration_trials(path: &Path, trials: &[CalibrationTrial]) -> Result<()> {
    let mut s = String::from("load_N,pressure_Pa\n");
    for t in trials {
        s.push_str(&format!(
            "{},{}\n",
            t.applied_load_n, t.observed_growth_pressure_pa
        ));
    }
    fs::write(path, s).map_err(|e| io_err(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })?;
    text.push('\n');
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })
}

pub fn write_calibration_result(path: &Path, result: &CalibrationResult) -> Result<()> {
    write_json(path, result)
}

pub fn read_calibration_result(path: &Path) -> Result<CalibrationResult> {
    read_json(path)
}

pub fn read_pipe_spec(path: &Path) -> Result<PipeSpec> {
    let spec: PipeSpec = read_json(path)?;
    spec.validate()?;
    Ok(spec)
}

pub fn write_pipe_spec(path: &Path, spec: &PipeSpec) -> Result<()> {
    write_json(path, spec)
}

pub fn read_body_spec(path: &Path) -> Result<VineBodySpec> {
    let spec: VineBodySpec = read_json(path)?;
    spec.validate()?;
    Ok(spec)
}

pub fn write_body_spec(path: &Path, spec: &VineBodySpec) -> Result<()> {
    write_json(path, spec)
}

pub fn read_mount_spec(path: &Path) -> Result<Mount> {
    let mount: Mount = read_json(path)?;
    mount.validate()?;
    Ok(mount)
}

pub fn write_mount_spec(path: &Path, mount: &Mount) -> Result<()> {
    write_json(path, mount)
}

pub fn write_sweep_csv(path: &Path, points: &[SweepPoint]) -> Result<()> {
    let mut s = String::from("load_N,pressure_Pa,mount_kind\n");
    for p in points {
        s.push_str(&format!(
            "{},{},{}\n",
            p.load_n, p.pressure_pa, p.mount_kind
        ));
    }
    fs::write(path, s).map_err(|e| io_err(path, e))
}

pub fn write_trace_csv(path: &Path, trace: &GrowthTrace) -> Result<()> {
    let mut s = String::from("length_m,t_tail_N,f_load_N,pressure_Pa\n");
    for t in &trace.samples {
        s.push_str(&format!(
            "{},{},{},{}\n",
            t.everted_length_m, t.t_tail_n, t.f_load_n, t.pressure_pa
        ));
    }
    fs::write(path, s).map_err(|e| io_err(path, e))
}

pub fn write_sensor_log(path: &Path, log: &[ImuSample]) -> Result<()> {
    let mut s = String::from("t_s,ax,ay,az,mx,my,mz,marker_id\n");
    for r in log {
        let marker = r.marker_id.map(|m| m.to_string()).unwrap_or_default();
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.t_s, r.accel.x, r.accel.y, r.accel.z, r.mag.x, r.mag.y, r.mag.z, marker
        ));
    }
    fs::write(path, s).map_err(|e| io_err(path, e))
}

pub fn read_sensor_log(path: &Path) -> Result<SensorLog> {
    let csv = open_csv(
        path,
        &["t_s", "ax", "ay", "az", "mx", "my", "mz", "marker_id"],
    )?;
    let mut out = Vec::with_capacity(csv.records.len());
    for (line, rec) in csv.records {
        let marker_id = if rec[7].is_empty() {
            None
        } else {
            Some(rec[7].parse::<u32>().map_err(|_| {
                row_err(
                    path,
                    line,
                    format!("field marker_id: not an integer: {:?}", &rec[7]),
                )
            })?)
        };
        out.push(ImuSample {
            t_s: parse_f64(path, line, "t_s", &rec[0])?,
            accel: Vector3::new(
                parse_f64(path, line, "ax", &rec[1])?,
                parse_f64(path, line, "ay", &rec[2])?,
                parse_f64(path, line, "az", &rec[3])?,
            ),
            mag: Vector3::new(
                parse_f64(path, line, "mx", &rec[4])?,
                parse_f64(path, line, "my", &rec[5])?,
                parse_f64(path, line, "mz", &rec[6])?,
            ),
            marker_id,
        });
    }
    Ok(out)
}

pub fn write_marker_table(path: &Path, markers: &[Marker]) -> Result<()> {
    let mut s = String::from("marker_id,odometry_m,label\n");
    for m in markers {
        s.push_str(&format!(
            "{},{},{}\n",
            m.marker_id,
            m.odometry_m,
            m.label.as_str()
        ));
    }
    fs::write(path, s).map_err(|e| io_err(path, e))
}

pub fn read_marker_table(path: &Path) -> Result<Vec<Marker>> {
    let csv = open_csv(path, &["marker_id", "odometry_m", "label"])?;
    let mut out = Vec::with_capacity(csv.records.len());
    for (line, rec) in csv.records {
        let marker_id = rec[0].parse::<u32>().map_err(|_| {
            row_err(
                path,
                line,
                format!("field marker_id: not an integer: {:?}", &rec[0]),
            )
        })?;
        let label: MarkerLabel = rec[2]
            .parse()
            .map_err(|e: String| row_err(path, line, format!("field label: {e}")))?;
        out.push(Marker {
            marker_id,
            odometry_m: parse_f64(path, line, "odometry_m", &rec[1])?,
            label,
        });
    }
    Ok(out)
}

pub fn write_polyline(path: &Path, line: &Polyline3D) -> Result<()> {
    let mut s = String::from("s_m,x_m,y_m,z_m,segment_index\n");
    for p in &line.points {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            p.s_m, p.position.x, p.position.y, p.position.z, p.segment_index
        ));
    }
    fs::write(path, s).map_err(|e| io_err(path, e))
}

pub fn read_polyline(path: &Path) -> Result<Polyline3D> {
    let csv = open_csv(path, &["s_m", "x_m", "y_m", "z_m", "segment_index"])?;
    let mut points = Vec::with_capacity(csv.records.len());
    for (line, rec) in csv.records {
        let segment_index = rec[4].parse::<usize>().map_err(|_| {
            row_err(
                path,
                line,
                format!("field segment_index: not an integer: {:?}", &rec[4]),
            )
        })?;
        points.push(PolylinePoint {
            s_m: parse_f64(path, line, "s_m", &rec[0])?,
            position: Point3::new(
                parse_f64(path, line, "x_m", &rec[1])?,
                parse_f64(path, line, "y_m", &rec[2])?,
                parse_f64(path, line, "z_m", &rec[3])?,
            ),
            segment_index,
        });
    }
    Ok(Polyline3D { points })
}

/// Deviation metrics, as written to metrics JSON files.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PathMetrics {
    pub max_orientation_dev_rad: f64,
    pub max_orientation_dev_deg: f64,
    pub length_dev_m: f64,
}

impl PathMetrics {
    pub fn new(max_orientation_dev_rad: f64, length_dev_m: f64) -> Self {
        PathMetrics {
            max_orientation_dev_rad,
            max_orientation_dev_deg: max_orientation_dev_rad.to_degrees(),
            length_dev_m,
        }
    }
}

pub fn write_metrics(path: &Path, metrics: &PathMetrics) -> Result<()> {
    write_json(path, metrics)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipesim::{presets, synth_logs, NoiseSpec};
    use tempfile::tempdir;

    #[test]
    fn calibration_trials_roundtrip_and_errors() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("trials.csv");
        let trials = vec![
            CalibrationTrial {
                applied_load_n: 0.0,
                observed_growth_pressure_pa: 852.5,
            },
            CalibrationTrial {
                applied_load_n: 4.0,
                observed_growth_pressure_pa: 2160.25,
            },
        ];
        write_calibration_trials(&path, &trials).unwrap();
        assert_eq!(read_calibration_trials(&path).unwrap(), trials);

        std::fs::write(&path, "load_N,pressure_Pa\n1.0,2000\noops,3000\n").unwrap();
        match read_calibration_trials(&path) {
            Err(Error::CsvRow { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected CsvRow error, got {other:?}"),
        }

        std::fs::write(&path, "wrong,header\n1,2\n").unwrap();
        assert!(matches!(
            read_calibration_trials(&path),
            Err(Error::CsvRow { line: 1, .. })
        ));
    }

    #[test]
    fn sensor_log_and_marker_roundtrip() {
        let dir = tempdir().unwrap();
        let pipe = presets::lab_pipe();
        let (log, markers) = synth_logs(&pipe, &NoiseSpec::default_noisy(7), 10.0).unwrap();

        let log_path = dir.path().join("log.csv");
        let marker_path = dir.path().join("markers.csv");
        write_sensor_log(&log_path, &log).unwrap();
        write_marker_table(&marker_path, &markers).unwrap();
        assert_eq!(read_sensor_log(&log_path).unwrap(), log);
        assert_eq!(read_marker_table(&marker_path).unwrap(), markers);
    }

    #[test]
    fn pipe_spec_json_roundtrip_rejects_unknown_keys() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("pipe.json");
        let pipe = presets::field_pipe();
        write_pipe_spec(&path, &pipe).unwrap();
        assert_eq!(read_pipe_spec(&path).unwrap(), pipe);

        std::fs::write(
            &path,
            r#"{"inner_diameter_m": 0.1, "segments": [], "bogus": 1}"#,
        )
        .unwrap();
        assert!(matches!(read_pipe_spec(&path), Err(Error::Json { .. })));
    }

    #[test]
    fn calibration_result_keys_match_schema() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("cal.json");
        let result = CalibrationResult {
            geometric_factor_c: 0.503,
            f_eversion_n: 2.52,
            rms_residual_pa: 1.5,
        };
        write_calibration_result(&path, &result).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        for key in ["\"C\"", "\"f_eversion_N\"", "\"rms_residual_Pa\""] {
            assert!(text.contains(key), "missing {key} in {text}");
        }
        assert_eq!(read_calibration_result(&path).unwrap(), result);
    }
}
