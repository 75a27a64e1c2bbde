use std::path::PathBuf;

/// Errors produced by the vinebot library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A constructor argument violated a type invariant.
    #[error("invalid {what}: {why}")]
    InvalidSpec { what: &'static str, why: String },

    /// Calibration input cannot identify the model parameters
    /// (e.g. all trials share the same load).
    #[error("degenerate calibration input: {0}")]
    DegenerateFit(String),

    /// Accelerometer and magnetometer are too close to parallel for a
    /// world frame to be constructed.
    #[error(
        "degenerate magnetic geometry: accel/mag separation {separation_deg:.3} deg (< 1 deg)"
    )]
    DegenerateMagnetics { separation_deg: f64 },

    /// A marker table entry is inconsistent with the sensor log or with
    /// its neighbors.
    #[error("marker {marker_id}: {why}")]
    Marker { marker_id: u32, why: String },

    /// Segment list cannot be realized as a 3D path.
    #[error("path geometry: {0}")]
    Geometry(String),

    /// The tip mount cannot pull the load forward at all (slip capacity
    /// below the load), so it would be left behind by the growing tip.
    #[error("mount left behind: load {f_load} N + W {w_axial} N exceeds pull-forward capacity {capacity} N")]
    MountLeftBehind {
        f_load: f64,
        w_axial: f64,
        capacity: f64,
    },

    /// The adaptive-mount equilibrium has no solution in the search bracket.
    #[error("adaptive equilibrium unsatisfiable: {0}")]
    Unsatisfiable(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A malformed row in a CSV input; `line` is 1-based and counts the header.
    #[error("{path}, line {line}: {why}")]
    CsvRow {
        path: PathBuf,
        line: u64,
        why: String,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, why: impl Into<String>) -> Self {
        Error::InvalidSpec {
            what,
            why: why.into(),
        }
    }
}
