//! Enclosed tip-mount models.
//!
//! Two mount designs are covered. The constant-force mount clamps the tail
//! with a fixed maximum coupling friction. The passively adapting mount's
//! clamp is held shut by a spring; contact forces from the everting tip act
//! on the clamp arms and reduce the coupling friction, so less propulsive
//! force is wasted pushing the mount away at low loads.
//!
//! The adaptive clamp is governed by two moment balances about the pivot,
//! one per arm:
//!
//! ```text
//! lever_ns·F_s − lever_na·F_va = (d/μ_s − w)·f₁
//! lever_nm·F_s − lever_nb·F_vb = (d/μ_s + w)·f₂
//! ```
//!
//! Total coupling friction is `f₁ + f₂` with each arm clamped at zero (an
//! arm whose balance would require negative friction contributes nothing).

use serde::{Deserialize, Serialize};

use crate::core_model::{LoadState, VineBodySpec};
use crate::{Error, Result, FORCE_TOL};

/// Mount with a fixed maximum clamp friction on the tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantForceMount {
    /// Maximum static friction between clamp and tail, N.
    pub f_coupling_max_n: f64,
    #[serde(default)]
    pub mass_kg: f64,
    /// External (non-clamp) axial friction on the mount, N. Zero in the
    /// reference experiments.
    #[serde(default)]
    pub f_mount_ext_n: f64,
}

impl ConstantForceMount {
    pub fn new(f_coupling_max_n: f64, mass_kg: f64, f_mount_ext_n: f64) -> Result<Self> {
        let m = ConstantForceMount {
            f_coupling_max_n,
            mass_kg,
            f_mount_ext_n,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn tuned_to(target_n: f64) -> Result<Self> {
        Self::new(target_n, 0.0, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.f_coupling_max_n > 0.0) {
            return Err(Error::invalid(
                "ConstantForceMount",
                format!(
                    "f_coupling_max_n must be > 0, got {}",
                    self.f_coupling_max_n
                ),
            ));
        }
        if self.mass_kg < 0.0 || self.f_mount_ext_n < 0.0 {
            return Err(Error::invalid(
                "ConstantForceMount",
                "mass and external friction must be >= 0".to_string(),
            ));
        }
        Ok(())
    }
}

/// Clamp geometry of the passively adapting mount, independent of the
/// spring preload. Lever lengths are moment arms from the pivot to the
/// force application points; `arm_d` and `arm_w` are the moment arms of
/// the resultant normal and friction forces on the clamp face.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AdaptiveGeometry {
    pub mu_s: f64,
    pub arm_d_m: f64,
    pub arm_w_m: f64,
    pub lever_ns_m: f64,
    pub lever_na_m: f64,
    pub lever_nm_m: f64,
    pub lever_nb_m: f64,
    /// Angle of the tip contact force relative to the growth axis, rad.
    pub contact_angle_rad: f64,
}

impl Default for AdaptiveGeometry {
    fn default() -> Self {
        AdaptiveGeometry {
            mu_s: 1.0,
            arm_d_m: 0.01,
            arm_w_m: 0.004,
            lever_ns_m: 0.05,
            lever_na_m: 0.005,
            lever_nm_m: 0.05,
            lever_nb_m: 0.005,
            contact_angle_rad: std::f64::consts::FRAC_PI_6,
        }
    }
}

/// Passively adapting mount: clamp friction decreases as tip contact
/// forces open the clamp.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdaptiveMount {
    /// Spring force closing the clamp, N.
    pub spring_force_n: f64,
    pub mu_s: f64,
    pub arm_d_m: f64,
    pub arm_w_m: f64,
    pub lever_ns_m: f64,
    pub lever_na_m: f64,
    pub lever_nm_m: f64,
    pub lever_nb_m: f64,
    pub contact_angle_rad: f64,
    #[serde(default)]
    pub mass_kg: f64,
    #[serde(default)]
    pub f_mount_ext_n: f64,
}

impl AdaptiveMount {
    pub fn new(
        spring_force_n: f64,
        geom: AdaptiveGeometry,
        mass_kg: f64,
        f_mount_ext_n: f64,
    ) -> Result<Self> {
        let m = AdaptiveMount {
            spring_force_n,
            mu_s: geom.mu_s,
            arm_d_m: geom.arm_d_m,
            arm_w_m: geom.arm_w_m,
            lever_ns_m: geom.lever_ns_m,
            lever_na_m: geom.lever_na_m,
            lever_nm_m: geom.lever_nm_m,
            lever_nb_m: geom.lever_nb_m,
            contact_angle_rad: geom.contact_angle_rad,
            mass_kg,
            f_mount_ext_n,
        };
        m.validate()?;
        Ok(m)
    }

    /// Solves the moment balances at zero tip contact for the spring force
    /// that gives `f_coupling,max(0, 0) = target_n`.
    pub fn tuned_to(target_n: f64, geom: AdaptiveGeometry) -> Result<Self> {
        if !(target_n > 0.0) {
            return Err(Error::invalid(
                "AdaptiveMount",
                format!("tuning target must be > 0, got {target_n}"),
            ));
        }
        let denom_open = geom.arm_d_m / geom.mu_s - geom.arm_w_m;
        let denom_close = geom.arm_d_m / geom.mu_s + geom.arm_w_m;
        if !(denom_open > 0.0) {
            return Err(Error::invalid(
                "AdaptiveGeometry",
                "arm_d must exceed mu_s * arm_w".to_string(),
            ));
        }
        let per_spring = geom.lever_ns_m / denom_open + geom.lever_nm_m / denom_close;
        Self::new(target_n / per_spring, geom, 0.0, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::invalid("AdaptiveMount", why));
        if !(self.spring_force_n > 0.0) {
            return bad(format!(
                "spring_force_n must be > 0, got {}",
                self.spring_force_n
            ));
        }
        if !(self.mu_s > 0.0) {
            return bad(format!("mu_s must be > 0, got {}", self.mu_s));
        }
        if !(self.arm_d_m > self.mu_s * self.arm_w_m) {
            return bad(format!(
                "arm_d ({}) must exceed mu_s * arm_w ({})",
                self.arm_d_m,
                self.mu_s * self.arm_w_m
            ));
        }
        for (name, v) in [
            ("arm_w_m", self.arm_w_m),
            ("lever_ns_m", self.lever_ns_m),
            ("lever_na_m", self.lever_na_m),
            ("lever_nm_m", self.lever_nm_m),
            ("lever_nb_m", self.lever_nb_m),
        ] {
            if !(v > 0.0) {
                return bad(format!("{name} must be > 0, got {v}"));
            }
        }
        if !(self.contact_angle_rad > 0.0 && self.contact_angle_rad < std::f64::consts::FRAC_PI_2) {
            return bad(format!(
                "contact_angle_rad must be in (0, pi/2), got {}",
                self.contact_angle_rad
            ));
        }
        if self.mass_kg < 0.0 || self.f_mount_ext_n < 0.0 {
            return bad("mass and external friction must be >= 0".to_string());
        }
        Ok(())
    }
}

/// Either tip-mount design, as read from `{"kind": "constant" | "adaptive", ...}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mount {
    Constant(ConstantForceMount),
    Adaptive(AdaptiveMount),
}

impl Mount {
    pub fn validate(&self) -> Result<()> {
        match self {
            Mount::Constant(m) => m.validate(),
            Mount::Adaptive(m) => m.validate(),
        }
    }

    pub fn mass_kg(&self) -> f64 {
        match self {
            Mount::Constant(m) => m.mass_kg,
            Mount::Adaptive(m) => m.mass_kg,
        }
    }

    pub fn f_mount_ext_n(&self) -> f64 {
        match self {
            Mount::Constant(m) => m.f_mount_ext_n,
            Mount::Adaptive(m) => m.f_mount_ext_n,
        }
    }

    /// Maximum coupling friction with no tip contact, N.
    pub fn coupling_at_zero_contact(&self) -> f64 {
        match self {
            Mount::Constant(m) => m.f_coupling_max_n,
            Mount::Adaptive(m) => adaptive_coupling_friction(m, 0.0, 0.0),
        }
    }
}

/// Ideal coupling friction for a mount on the verge of slipping without
/// tip contact: `F_load + W − f_mount`, clamped at zero.
pub fn ideal_coupling_friction(f_load: f64, w_axial: f64, f_mount_ext: f64) -> f64 {
    (f_load + w_axial - f_mount_ext).max(0.0)
}

/// Pull-forward condition: the mount moves with the tip only while
/// `f_coupling,max >= F_load + W + f_mount` (coupling evaluated at zero
/// tip contact for the adaptive design).
pub fn can_pull_forward(mount: &Mount, f_load: f64, w_axial: f64) -> bool {
    mount.coupling_at_zero_contact() + FORCE_TOL >= f_load + w_axial + mount.f_mount_ext_n()
}

/// Minimum axial tip-contact force that makes the constant-force clamp
/// slip: `max(0, f_coupling,max − F_load − W + f_mount)`, N.
pub fn constant_required_fva(mount: &ConstantForceMount, f_load: f64, w_axial: f64) -> f64 {
    (mount.f_coupling_max_n - f_load - w_axial + mount.f_mount_ext_n).max(0.0)
}

/// Clamp friction of the adaptive mount under tip contact forces
/// `f_va`, `f_vb` on the two arms, N. Monotonically non-increasing in both.
pub fn adaptive_coupling_friction(mount: &AdaptiveMount, f_va: f64, f_vb: f64) -> f64 {
    let denom_open = mount.arm_d_m / mount.mu_s - mount.arm_w_m;
    let denom_close = mount.arm_d_m / mount.mu_s + mount.arm_w_m;
    let arm_a = (mount.lever_ns_m * mount.spring_force_n - mount.lever_na_m * f_va) / denom_open;
    let arm_b = (mount.lever_nm_m * mount.spring_force_n - mount.lever_nb_m * f_vb) / denom_close;
    arm_a.max(0.0) + arm_b.max(0.0)
}

/// Contact-force equilibrium of the adaptive mount.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MountEquilibrium {
    /// Per-arm contact force magnitude, N (symmetric: `f_va == f_vb`).
    pub f_va: f64,
    pub f_vb: f64,
    /// Clamp friction at the equilibrium contact, N.
    pub f_coupling: f64,
    pub converged: bool,
    /// Slip-condition residual at the solution, N.
    pub residual: f64,
}

impl MountEquilibrium {
    /// Total axial contact force `F_va,a + F_vb,a`, N.
    pub fn total_axial(&self, contact_angle_rad: f64) -> f64 {
        (self.f_va + self.f_vb) * contact_angle_rad.cos()
    }
}

const BISECT_TOL_N: f64 = 1e-12;
const BISECT_MAX_ITER: usize = 200;

/// Smallest symmetric contact force at which the adaptive clamp slips.
///
/// Solves `2·F_va·cos(θ) + F_load + W − f_mount = f_coupling,max(F_va, F_va)`
/// by bisection; the left side grows and the right side shrinks with
/// `F_va`, so the slip slack is monotone and the bracket is guaranteed.
pub fn adaptive_equilibrium(
    mount: &AdaptiveMount,
    f_load: f64,
    w_axial: f64,
) -> Result<MountEquilibrium> {
    if f_load < 0.0 || w_axial < 0.0 {
        return Err(Error::invalid(
            "adaptive_equilibrium",
            "loads must be >= 0".to_string(),
        ));
    }
    let cos_theta = mount.contact_angle_rad.cos();
    // Slip slack: >= 0 means the clamp slips at this contact force.
    let slack = |f_va: f64| {
        2.0 * f_va * cos_theta + f_load + w_axial
            - mount.f_mount_ext_n
            - adaptive_coupling_friction(mount, f_va, f_va)
    };

    let s0 = slack(0.0);
    if s0 >= 0.0 {
        // Slips without tip contact.
        return Ok(MountEquilibrium {
            f_va: 0.0,
            f_vb: 0.0,
            f_coupling: adaptive_coupling_friction(mount, 0.0, 0.0),
            converged: true,
            residual: 0.0,
        });
    }

    let coupling0 = adaptive_coupling_friction(mount, 0.0, 0.0);
    let upper = (coupling0 + mount.f_mount_ext_n + 1.0) / (2.0 * cos_theta);
    if slack(upper) < 0.0 {
        return Err(Error::Unsatisfiable(format!(
            "clamp does not open before contact force {upper} N"
        )));
    }

    let (mut lo, mut hi) = (0.0_f64, upper);
    let mut converged = false;
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..BISECT_MAX_ITER {
        mid = 0.5 * (lo + hi);
        let s = slack(mid);
        if s.abs() < BISECT_TOL_N {
            converged = true;
            break;
        }
        if s < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < f64::EPSILON * upper.max(1.0) {
            converged = true;
            mid = 0.5 * (lo + hi);
            break;
        }
    }

    Ok(MountEquilibrium {
        f_va: mid,
        f_vb: mid,
        f_coupling: adaptive_coupling_friction(mount, mid, mid),
        converged,
        residual: slack(mid).abs(),
    })
}

/// Monotone model of propulsion force lost to pushing the tip mount away,
/// including tip deformation. The affine form `offset + gain·F_axial` is the
/// minimal model consistent with the observed near-flat constant-mount
/// pressure curve; `gain = offset = 0` is the ideal lossless contact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InteractionModel {
    pub gain: f64,
    pub offset_n: f64,
}

impl InteractionModel {
    pub fn new(gain: f64, offset_n: f64) -> Result<Self> {
        if gain < 0.0 || offset_n < 0.0 {
            return Err(Error::invalid(
                "InteractionModel",
                "gain and offset must be >= 0".to_string(),
            ));
        }
        Ok(InteractionModel { gain, offset_n })
    }

    pub fn lossless() -> Self {
        InteractionModel {
            gain: 0.0,
            offset_n: 0.0,
        }
    }
}

/// Propulsion force lost at a given total axial contact force, N.
pub fn interaction_loss(model: &InteractionModel, total_axial_contact: f64) -> f64 {
    model.offset_n + model.gain * total_axial_contact
}

/// Total axial tip-contact force needed to make the mount slip, N.
pub fn mount_contact_force(mount: &Mount, f_load: f64, w_axial: f64) -> Result<f64> {
    match mount {
        Mount::Constant(m) => Ok(constant_required_fva(m, f_load, w_axial)),
        Mount::Adaptive(m) => {
            let eq = adaptive_equilibrium(m, f_load, w_axial)?;
            Ok(eq.total_axial(m.contact_angle_rad))
        }
    }
}

/// Lowest pressure to grow with a tip mount installed:
/// `C·P·A = F_eversion + T_tail + F_load + W + f_mount + loss(contact)`.
///
/// `W` is taken from `load.w_axial`; the mount's own `f_mount_ext` field is
/// used for the external mount friction. Errors with
/// [`Error::MountLeftBehind`] when the pull-forward condition fails.
pub fn growth_pressure_with_mount(
    body: &VineBodySpec,
    mount: &Mount,
    model: &InteractionModel,
    load: &LoadState,
) -> Result<f64> {
    if !can_pull_forward(mount, load.f_load, load.w_axial) {
        return Err(Error::MountLeftBehind {
            f_load: load.f_load,
            w_axial: load.w_axial,
            capacity: mount.coupling_at_zero_contact() - mount.f_mount_ext_n(),
        });
    }
    let contact = mount_contact_force(mount, load.f_load, load.w_axial)?;
    let resistive = body.f_eversion_n
        + load.t_tail
        + load.f_load
        + load.w_axial
        + mount.f_mount_ext_n()
        + interaction_loss(model, contact);
    Ok(resistive / (body.geometric_factor_c * body.cross_section_area()))
}

/// One point of a pressure-vs-load sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub load_n: f64,
    pub pressure_pa: f64,
    pub mount_kind: &'static str,
}

/// Pressure-to-grow curves over a load grid for no mount, a constant-force
/// mount, and an adaptive mount, both tuned to the same zero-contact
/// coupling. `w_axial` and tail tension are taken from `load_base`.
pub fn sweep_mounts(
    body: &VineBodySpec,
    tuned_coupling_n: f64,
    geom: AdaptiveGeometry,
    model: &InteractionModel,
    load_base: &LoadState,
    loads_n: &[f64],
) -> Result<Vec<SweepPoint>> {
    let constant = Mount::Constant(ConstantForceMount::tuned_to(tuned_coupling_n)?);
    let adaptive = Mount::Adaptive(AdaptiveMount::tuned_to(tuned_coupling_n, geom)?);

    let rows = crate::parallel::map_indexed(loads_n.len(), |i| -> Result<[SweepPoint; 3]> {
        let load_n = loads_n[i];
        let load = LoadState {
            f_load: load_n,
            ..*load_base
        };
        let none = crate::core_model::min_growth_pressure(body, &load);
        let pc = growth_pressure_with_mount(body, &constant, model, &load)?;
        let pa = growth_pressure_with_mount(body, &adaptive, model, &load)?;
        Ok([
            SweepPoint {
                load_n,
                pressure_pa: none,
                mount_kind: "none",
            },
            SweepPoint {
                load_n,
                pressure_pa: pc,
                mount_kind: "constant",
            },
            SweepPoint {
                load_n,
                pressure_pa: pa,
                mount_kind: "adaptive",
            },
        ])
    });

    let mut out = Vec::with_capacity(loads_n.len() * 3);
    for row in rows {
        out.extend(row?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn lab_body() -> VineBodySpec {
        VineBodySpec::new(0.088, 0.5, 2.52, 2.0).unwrap()
    }

    #[test]
    fn ideal_coupling_examples() {
        assert_eq!(ideal_coupling_friction(10.0, 1.0, 0.0), 11.0);
        assert_eq!(ideal_coupling_friction(0.0, 0.0, 0.0), 0.0);
        assert_eq!(ideal_coupling_friction(12.0, 0.5, 2.0), 10.5);
        assert_eq!(ideal_coupling_friction(1.0, 0.0, 5.0), 0.0);
    }

    #[test]
    fn pull_forward_examples() {
        let m = Mount::Constant(ConstantForceMount::tuned_to(12.0).unwrap());
        assert!(can_pull_forward(&m, 11.0, 0.5));
        assert!(!can_pull_forward(&m, 12.0, 0.5));
        assert!(can_pull_forward(&m, 0.0, 0.0));
    }

    #[test]
    fn constant_required_fva_examples() {
        let m12 = ConstantForceMount::tuned_to(12.0).unwrap();
        assert_eq!(constant_required_fva(&m12, 12.0, 0.0), 0.0);
        assert_eq!(constant_required_fva(&m12, 4.0, 0.5), 7.5);
        let m24 = ConstantForceMount::tuned_to(24.0).unwrap();
        assert_eq!(constant_required_fva(&m24, 4.0, 0.5), 19.5);
    }

    #[test]
    fn adaptive_zero_contact_coupling() {
        // Symmetric levers NS = NM = 0.05 m, Fs = 30 N, d = 0.01 m,
        // mu = 1, w = 0.004 m: 1.5/0.006 + 1.5/0.014 = 357.14 N.
        let geom = AdaptiveGeometry {
            mu_s: 1.0,
            arm_d_m: 0.01,
            arm_w_m: 0.004,
            lever_ns_m: 0.05,
            lever_na_m: 0.05,
            lever_nm_m: 0.05,
            lever_nb_m: 0.05,
            contact_angle_rad: std::f64::consts::FRAC_PI_6,
        };
        let m = AdaptiveMount::new(30.0, geom, 0.0, 0.0).unwrap();
        assert_relative_eq!(
            adaptive_coupling_friction(&m, 0.0, 0.0),
            1.5 / 0.006 + 1.5 / 0.014,
            epsilon = 1e-9
        );
    }

    #[test]
    fn adaptive_tuned_hits_target() {
        for target in [12.0, 24.0] {
            let m = AdaptiveMount::tuned_to(target, AdaptiveGeometry::default()).unwrap();
            assert_relative_eq!(
                adaptive_coupling_friction(&m, 0.0, 0.0),
                target,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn adaptive_coupling_monotone_and_clamps() {
        let m = AdaptiveMount::tuned_to(12.0, AdaptiveGeometry::default()).unwrap();
        let f1 = adaptive_coupling_friction(&m, 1.0, 1.0);
        let f2 = adaptive_coupling_friction(&m, 2.0, 1.0);
        assert!(
            f2 < f1,
            "doubling f_va must decrease coupling: {f1} -> {f2}"
        );
        // Large contact forces fully open the clamp.
        assert_eq!(adaptive_coupling_friction(&m, 1e6, 1e6), 0.0);
    }

    #[test]
    fn equilibrium_slips_without_contact_at_high_load() {
        let m = AdaptiveMount::tuned_to(12.0, AdaptiveGeometry::default()).unwrap();
        let eq = adaptive_equilibrium(&m, 12.5, 0.0).unwrap();
        assert_eq!(eq.f_va, 0.0);
        assert!(eq.converged);
        assert_eq!(eq.residual, 0.0);
    }

    #[test]
    fn equilibrium_below_constant_requirement() {
        let m = AdaptiveMount::tuned_to(12.0, AdaptiveGeometry::default()).unwrap();
        let eq = adaptive_equilibrium(&m, 4.0, 0.5).unwrap();
        assert!(eq.converged);
        assert!(eq.residual < 1e-9);
        let total = eq.total_axial(m.contact_angle_rad);
        assert!(
            total < 7.5,
            "adaptive contact {total} should be below the constant mount's 7.5 N"
        );
        // Back-substitution into the slip condition.
        let slack = total + 4.0 + 0.5 - m.f_mount_ext_n - eq.f_coupling;
        assert!(slack.abs() < 1e-9);
        // And the moment balances are satisfied by construction.
        assert_relative_eq!(
            eq.f_coupling,
            adaptive_coupling_friction(&m, eq.f_va, eq.f_vb),
            epsilon = 1e-12
        );
    }

    #[test]
    fn interaction_loss_examples() {
        let m = InteractionModel::new(1.2, 0.3).unwrap();
        assert_relative_eq!(interaction_loss(&m, 0.0), 0.3);
        assert_relative_eq!(interaction_loss(&m, 5.0), 6.3);
        assert_eq!(interaction_loss(&InteractionModel::lossless(), 7.0), 0.0);
    }

    #[test]
    fn mount_pressure_at_slip_boundary_is_theoretical_optimum() {
        let body = lab_body();
        let mount = Mount::Constant(ConstantForceMount::tuned_to(12.0).unwrap());
        let load = LoadState::new(0.0883, 12.0, 0.0, 0.0).unwrap();
        let p = growth_pressure_with_mount(&body, &mount, &InteractionModel::lossless(), &load)
            .unwrap();
        let expected = crate::core_model::min_growth_pressure(&body, &load);
        assert_relative_eq!(p, expected, epsilon = 1e-9);
    }

    #[test]
    fn constant_mount_pressure_difference_matches_algebra() {
        let body = lab_body();
        let mount = Mount::Constant(ConstantForceMount::tuned_to(12.0).unwrap());
        for gain in [0.0, 0.5, 1.0] {
            let model = InteractionModel::new(gain, 0.0).unwrap();
            let p4 = growth_pressure_with_mount(
                &body,
                &mount,
                &model,
                &LoadState::tail_and_load(0.0, 4.0),
            )
            .unwrap();
            let p10 = growth_pressure_with_mount(
                &body,
                &mount,
                &model,
                &LoadState::tail_and_load(0.0, 10.0),
            )
            .unwrap();
            let expected = (1.0 - gain) * 6.0 / (0.5 * body.cross_section_area());
            assert_relative_eq!(p10 - p4, expected, epsilon = 1e-6);
        }
    }

    #[test]
    fn adaptive_strictly_below_constant_under_tuned_load() {
        let body = lab_body();
        let model = InteractionModel::new(1.0, 0.0).unwrap();
        let points = sweep_mounts(
            &body,
            12.0,
            AdaptiveGeometry::default(),
            &model,
            &LoadState::default(),
            &[2.0, 4.0, 6.0, 8.0, 10.0, 11.5],
        )
        .unwrap();
        for chunk in points.chunks(3) {
            let (none, constant, adaptive) = (&chunk[0], &chunk[1], &chunk[2]);
            assert!(adaptive.pressure_pa < constant.pressure_pa);
            assert!(adaptive.pressure_pa >= none.pressure_pa);
        }
    }

    #[test]
    fn mount_left_behind_error() {
        let body = lab_body();
        let mount = Mount::Constant(ConstantForceMount::tuned_to(12.0).unwrap());
        let load = LoadState::tail_and_load(0.0, 13.0);
        let err = growth_pressure_with_mount(&body, &mount, &InteractionModel::lossless(), &load);
        assert!(matches!(err, Err(Error::MountLeftBehind { .. })));
    }

    #[test]
    fn invalid_adaptive_geometry_rejected() {
        let geom = AdaptiveGeometry {
            arm_d_m: 0.003,
            arm_w_m: 0.004,
            mu_s: 1.0,
            ..AdaptiveGeometry::default()
        };
        assert!(AdaptiveMount::new(10.0, geom, 0.0, 0.0).is_err());
    }
}
