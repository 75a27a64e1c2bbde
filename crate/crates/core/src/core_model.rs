//! Growth and inversion force balances for an everting tube, plus
//! calibration of the geometric factor `C` and the eversion resistance
//! from pressure-vs-load trials.
//!
//! Sign conventions: all forces are magnitudes of resistive or axial
//! components. Growth happens when the propulsive force `C·P·A` meets or
//! exceeds the sum of resistive forces; inversion when tail tension meets
//! or exceeds `½·P·A` plus the inversion resistance. Both are evaluated
//! with non-strict inequality at the boundary (within [`FORCE_TOL`]).
//!
//! [`FORCE_TOL`]: crate::FORCE_TOL

use serde::{Deserialize, Serialize};

use crate::{Error, Result, FORCE_TOL};

/// Geometric and material parameters of the everting tube.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VineBodySpec {
    /// Tube diameter, m.
    pub diameter_m: f64,
    /// Dimensionless geometric factor relating `P·A` to propulsive force.
    /// ~0.5 by growth/inversion symmetry; calibration refines it.
    pub geometric_factor_c: f64,
    /// Material resistance to eversion, N.
    pub f_eversion_n: f64,
    /// Material resistance to inversion, N.
    pub f_inversion_n: f64,
}

/// Default geometric factor when no calibration is available.
pub const DEFAULT_GEOMETRIC_FACTOR: f64 = 0.5;

impl VineBodySpec {
    pub fn new(
        diameter_m: f64,
        geometric_factor_c: f64,
        f_eversion_n: f64,
        f_inversion_n: f64,
    ) -> Result<Self> {
        let spec = VineBodySpec {
            diameter_m,
            geometric_factor_c,
            f_eversion_n,
            f_inversion_n,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Body with the symmetry-assumption factor `C = 0.5`.
    pub fn with_default_c(diameter_m: f64, f_eversion_n: f64, f_inversion_n: f64) -> Result<Self> {
        Self::new(
            diameter_m,
            DEFAULT_GEOMETRIC_FACTOR,
            f_eversion_n,
            f_inversion_n,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.diameter_m > 0.0) {
            return Err(Error::invalid(
                "VineBodySpec",
                format!("diameter_m must be > 0, got {}", self.diameter_m),
            ));
        }
        if !(self.geometric_factor_c > 0.0 && self.geometric_factor_c <= 1.0) {
            return Err(Error::invalid(
                "VineBodySpec",
                format!(
                    "geometric_factor_c must be in (0, 1], got {}",
                    self.geometric_factor_c
                ),
            ));
        }
        if !(self.f_eversion_n >= 0.0) || !(self.f_inversion_n >= 0.0) {
            return Err(Error::invalid(
                "VineBodySpec",
                "eversion/inversion resistances must be >= 0".to_string(),
            ));
        }
        Ok(())
    }

    /// Cross-section area `A = π·(d/2)²`, m².
    pub fn cross_section_area(&self) -> f64 {
        let r = self.diameter_m / 2.0;
        std::f64::consts::PI * r * r
    }
}

/// Resistive loads acting on the robot in a given configuration.
///
/// `w_axial` and `f_mount_ext` only matter when a tip mount is installed;
/// the no-mount operations ignore them.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LoadState {
    /// Resistive tail tension, N.
    pub t_tail: f64,
    /// Sum of frictional, gravitational, and base-station forces resisting
    /// the tether and payload, N.
    pub f_load: f64,
    /// Axial gravity component on the tip mount, N.
    pub w_axial: f64,
    /// External (non-clamp) axial friction on the tip mount, N.
    pub f_mount_ext: f64,
}

impl LoadState {
    pub fn new(t_tail: f64, f_load: f64, w_axial: f64, f_mount_ext: f64) -> Result<Self> {
        if t_tail < 0.0 || f_load < 0.0 || w_axial < 0.0 || f_mount_ext < 0.0 {
            return Err(Error::invalid(
                "LoadState",
                "all load components must be >= 0".to_string(),
            ));
        }
        Ok(LoadState {
            t_tail,
            f_load,
            w_axial,
            f_mount_ext,
        })
    }

    /// Tail tension and payload only; mount terms zero.
    pub fn tail_and_load(t_tail: f64, f_load: f64) -> Self {
        LoadState {
            t_tail,
            f_load,
            ..Default::default()
        }
    }
}

/// Lowest pressure at which growth can occur with no tip mount:
/// `P = (F_eversion + T_tail + F_load) / (C·A)`, Pa.
pub fn min_growth_pressure(body: &VineBodySpec, load: &LoadState) -> f64 {
    let resistive = body.f_eversion_n + load.t_tail + load.f_load;
    resistive / (body.geometric_factor_c * body.cross_section_area())
}

/// Growth condition: `C·P·A >= F_eversion + T_tail + F_load`.
pub fn growth_occurs(body: &VineBodySpec, pressure_pa: f64, load: &LoadState) -> bool {
    let propulsive = body.geometric_factor_c * pressure_pa * body.cross_section_area();
    propulsive + FORCE_TOL >= body.f_eversion_n + load.t_tail + load.f_load
}

/// Inversion condition: `T_tail >= ½·P·A + F_inversion`.
pub fn inversion_occurs(body: &VineBodySpec, pressure_pa: f64, t_tail: f64) -> bool {
    t_tail + FORCE_TOL >= 0.5 * pressure_pa * body.cross_section_area() + body.f_inversion_n
}

/// One pressure-to-grow measurement at a known applied load.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationTrial {
    pub applied_load_n: f64,
    pub observed_growth_pressure_pa: f64,
}

/// Fitted geometric factor and eversion resistance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationResult {
    #[serde(rename = "C")]
    pub geometric_factor_c: f64,
    #[serde(rename = "f_eversion_N")]
    pub f_eversion_n: f64,
    #[serde(rename = "rms_residual_Pa")]
    pub rms_residual_pa: f64,
}

/// Fits `P = (F_eversion + load) / (C·A)` to pressure-vs-load trials.
///
/// The fit is ordinary least squares in the reparameterization
/// `P·A = (1/C)·load + F_eversion/C`; `C` and `F_eversion` are recovered
/// from slope and intercept. Requires at least two trials with distinct
/// loads; returns [`Error::DegenerateFit`] otherwise, or if the fitted
/// slope is non-positive (pressure not increasing with load).
pub fn fit_calibration(trials: &[CalibrationTrial], area_m2: f64) -> Result<CalibrationResult> {
    if area_m2 <= 0.0 {
        return Err(Error::invalid("fit_calibration", "area must be > 0"));
    }
    if trials.len() < 2 {
        return Err(Error::DegenerateFit(format!(
            "need >= 2 trials, got {}",
            trials.len()
        )));
    }
    for t in trials {
        if !(t.observed_growth_pressure_pa > 0.0) {
            return Err(Error::invalid(
                "CalibrationTrial",
                format!(
                    "observed pressure must be > 0, got {}",
                    t.observed_growth_pressure_pa
                ),
            ));
        }
    }

    let n = trials.len() as f64;
    let mean_x = trials.iter().map(|t| t.applied_load_n).sum::<f64>() / n;
    let mean_y = trials
        .iter()
        .map(|t| t.observed_growth_pressure_pa * area_m2)
        .sum::<f64>()
        / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for t in trials {
        let dx = t.applied_load_n - mean_x;
        let dy = t.observed_growth_pressure_pa * area_m2 - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    let load_span = trials
        .iter()
        .map(|t| t.applied_load_n)
        .fold(f64::NEG_INFINITY, f64::max)
        - trials
            .iter()
            .map(|t| t.applied_load_n)
            .fold(f64::INFINITY, f64::min);
    if !(load_span > 1e-12) || sxx == 0.0 {
        return Err(Error::DegenerateFit(
            "all trials share the same load; C and F_eversion are unidentifiable".to_string(),
        ));
    }

    let slope = sxy / sxx; // 1/C
    let intercept = mean_y - slope * mean_x; // F_eversion / C
    if !(slope > 0.0) {
        return Err(Error::DegenerateFit(format!(
            "fitted slope {slope} is non-positive; pressure does not increase with load"
        )));
    }
    let c = 1.0 / slope;
    if c > 1.0 + 1e-9 {
        return Err(Error::DegenerateFit(format!(
            "fitted geometric factor {c} exceeds 1; data inconsistent with the model"
        )));
    }
    // Round-off on exact zero-intercept data can leave a tiny negative.
    let f_eversion = (intercept / slope).max(0.0);

    let mut ss = 0.0;
    for t in trials {
        let predicted = (f_eversion + t.applied_load_n) / (c * area_m2);
        let r = t.observed_growth_pressure_pa - predicted;
        ss += r * r;
    }
    let rms = (ss / n).sqrt();

    Ok(CalibrationResult {
        geometric_factor_c: c.min(1.0),
        f_eversion_n: f_eversion,
        rms_residual_pa: rms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn lab_body() -> VineBodySpec {
        VineBodySpec::new(0.088, 0.503, 2.52, 2.0).unwrap()
    }

    #[test]
    fn cross_section_area_examples() {
        assert_relative_eq!(lab_body().cross_section_area(), 6.0821e-3, epsilon = 1e-7);
        let unit =
            VineBodySpec::with_default_c(2.0 / std::f64::consts::PI.sqrt(), 0.0, 0.0).unwrap();
        assert_relative_eq!(unit.cross_section_area(), 1.0, epsilon = 1e-12);
        let d100 = VineBodySpec::with_default_c(0.1, 0.0, 0.0).unwrap();
        assert_relative_eq!(d100.cross_section_area(), 7.8540e-3, epsilon = 1e-7);
    }

    #[test]
    fn min_growth_pressure_examples() {
        let body = lab_body();
        let nine_gram_tail = 0.009 * crate::GRAVITY; // 0.0883 N
        let p = min_growth_pressure(&body, &LoadState::tail_and_load(nine_gram_tail, 0.0));
        assert!((p - 852.5).abs() < 1.0, "got {p}");

        let free = VineBodySpec::with_default_c(0.088, 0.0, 0.0).unwrap();
        assert_eq!(min_growth_pressure(&free, &LoadState::default()), 0.0);

        let p12 = min_growth_pressure(&body, &LoadState::tail_and_load(nine_gram_tail, 12.0));
        assert!((p12 - 4774.0).abs() < 5.0, "got {p12}");
    }

    #[test]
    fn growth_boundary() {
        let body = lab_body();
        let load = LoadState::tail_and_load(0.0883, 3.0);
        let p = min_growth_pressure(&body, &load);
        assert!(growth_occurs(&body, p, &load));
        assert!(!growth_occurs(&body, p - 1e-3, &load));
        assert!(!growth_occurs(&body, 0.0, &load));
    }

    #[test]
    fn inversion_examples() {
        let body = lab_body();
        assert!(inversion_occurs(&body, 0.0, body.f_inversion_n));
        assert!(!inversion_occurs(&body, 0.0, body.f_inversion_n - 1e-6));
        // ½·1000·6.0821e-3 + 2 = 5.041 <= 5.05
        assert!(inversion_occurs(&body, 1000.0, 5.05));
    }

    #[test]
    fn growth_and_inversion_exclusive() {
        let body = lab_body();
        let load = LoadState::tail_and_load(1.0, 0.5);
        for p in [0.0, 100.0, 852.0, 2000.0, 10_000.0] {
            let both = growth_occurs(&body, p, &load) && inversion_occurs(&body, p, load.t_tail);
            assert!(!both, "both at P = {p}");
        }
    }

    #[test]
    fn fit_recovers_generator_exactly() {
        let area = lab_body().cross_section_area();
        let (c, fe) = (0.503, 2.52);
        let trials: Vec<_> = [0.0, 4.0, 8.0, 12.0]
            .iter()
            .map(|&load| CalibrationTrial {
                applied_load_n: load,
                observed_growth_pressure_pa: (fe + load) / (c * area),
            })
            .collect();
        let fit = fit_calibration(&trials, area).unwrap();
        assert_relative_eq!(fit.geometric_factor_c, c, epsilon = 1e-6);
        assert_relative_eq!(fit.f_eversion_n, fe, epsilon = 1e-6);
        assert!(fit.rms_residual_pa < 1e-6);
    }

    #[test]
    fn fit_two_exact_points() {
        let area = 1.0;
        let trials = [
            CalibrationTrial {
                applied_load_n: 1.0,
                observed_growth_pressure_pa: 2.0,
            },
            CalibrationTrial {
                applied_load_n: 2.0,
                observed_growth_pressure_pa: 4.0,
            },
        ];
        let fit = fit_calibration(&trials, area).unwrap();
        assert_relative_eq!(fit.geometric_factor_c, 0.5, epsilon = 1e-12);
        assert_relative_eq!(fit.f_eversion_n, 0.0, epsilon = 1e-12);
        assert_relative_eq!(fit.rms_residual_pa, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn fit_rejects_constant_loads() {
        let trials = [
            CalibrationTrial {
                applied_load_n: 4.0,
                observed_growth_pressure_pa: 2000.0,
            },
            CalibrationTrial {
                applied_load_n: 4.0,
                observed_growth_pressure_pa: 2100.0,
            },
        ];
        assert!(matches!(
            fit_calibration(&trials, 6.0821e-3),
            Err(Error::DegenerateFit(_))
        ));
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(VineBodySpec::new(0.0, 0.5, 0.0, 0.0).is_err());
        assert!(VineBodySpec::new(0.1, 1.5, 0.0, 0.0).is_err());
        assert!(VineBodySpec::new(0.1, 0.5, -1.0, 0.0).is_err());
        assert!(LoadState::new(-0.1, 0.0, 0.0, 0.0).is_err());
    }
}
