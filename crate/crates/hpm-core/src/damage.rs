//! Sigmoid per-subsystem damage probability, serial system-level kill
//! probability, and inversion of the kill curve to a range.
//!
//! Each subsystem damages with probability
//! `1 / (1 + exp(-(E - E50) / sigma_E))`; the drone is killed when any
//! one subsystem is damaged, so the system-level probability is
//! `1 - prod_i (1 - p_i)`.

use crate::error::{require_non_negative, require_open_probability};
#[cfg_attr(test, allow(unused_imports))]
use crate::math::FloatExt;
use crate::physics::{self, SystemConfig};
use crate::{Error, Result};
use alloc::string::String;
use alloc::vec::Vec;

/// Exponent arguments beyond this magnitude are clamped before
/// exponentiation; the sigmoid is already 0/1 to beyond f64 precision
/// there.
const SIGMOID_EXP_CLAMP: f64 = 500.0;

/// Upper end of the kill-range search bracket in metres.
const KILL_RANGE_MAX_M: f64 = 10_000.0;

/// One drone subsystem's damage model: the field at 50% damage
/// probability and the sigmoid transition width.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsystemModel {
    pub name: String,
    /// Field strength at 50% damage probability, V/m.
    pub e50_v_per_m: f64,
    /// Sigmoid transition width, V/m.
    pub sigma_e_v_per_m: f64,
}

impl SubsystemModel {
    pub fn new(name: &str, e50_v_per_m: f64, sigma_e_v_per_m: f64) -> Result<Self> {
        crate::error::require_positive("e50_v_per_m", e50_v_per_m)?;
        crate::error::require_positive("sigma_e_v_per_m", sigma_e_v_per_m)?;
        Ok(SubsystemModel {
            name: String::from(name),
            e50_v_per_m,
            sigma_e_v_per_m,
        })
    }
}

/// Ordered collection of vulnerable subsystems; damage to any one kills
/// the drone.
#[derive(Debug, Clone, PartialEq)]
pub struct DroneModel {
    subsystems: Vec<SubsystemModel>,
}

impl DroneModel {
    /// Build a model from a non-empty list of uniquely named subsystems.
    pub fn new(subsystems: Vec<SubsystemModel>) -> Result<Self> {
        if subsystems.is_empty() {
            return Err(Error::EmptyDroneModel);
        }
        for (i, s) in subsystems.iter().enumerate() {
            if subsystems[..i].iter().any(|other| other.name == s.name) {
                return Err(Error::DuplicateSubsystem(s.name.clone()));
            }
        }
        Ok(DroneModel { subsystems })
    }

    /// Default consumer-drone profile: GPS (150, 30), flight controller
    /// (250, 50), ESC (300, 60), camera (200, 40), BMS (350, 70) V/m.
    pub fn consumer_default() -> Self {
        let rows = [
            ("gps", 150.0, 30.0),
            ("flight_controller", 250.0, 50.0),
            ("esc", 300.0, 60.0),
            ("camera", 200.0, 40.0),
            ("bms", 350.0, 70.0),
        ];
        DroneModel {
            subsystems: rows
                .iter()
                .map(|&(n, e, s)| SubsystemModel {
                    name: String::from(n),
                    e50_v_per_m: e,
                    sigma_e_v_per_m: s,
                })
                .collect(),
        }
    }

    pub fn subsystems(&self) -> &[SubsystemModel] {
        &self.subsystems
    }
}

/// Outcome of inverting the kill curve for a range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KillRange {
    /// The target probability is crossed at this range in metres.
    At(f64),
    /// The target probability is not reachable anywhere inside the search
    /// envelope (far-field distance up to 10 km).
    OutOfEnvelope,
}

impl KillRange {
    /// The range in metres, if one exists inside the envelope.
    pub fn metres(self) -> Option<f64> {
        match self {
            KillRange::At(r) => Some(r),
            KillRange::OutOfEnvelope => None,
        }
    }
}

/// Raw sigmoid used by both the deterministic and Monte Carlo paths.
/// Exponent clamped to +-500 to avoid overflow at extreme fields.
pub fn sigmoid(efield_v_per_m: f64, e50_v_per_m: f64, sigma_e_v_per_m: f64) -> f64 {
    let arg = (-(efield_v_per_m - e50_v_per_m) / sigma_e_v_per_m)
        .clamp(-SIGMOID_EXP_CLAMP, SIGMOID_EXP_CLAMP);
    1.0 / (1.0 + arg.exp())
}

/// Damage probability of a single subsystem at the given field.
pub fn subsystem_kill_prob(efield_v_per_m: f64, model: &SubsystemModel) -> Result<f64> {
    require_non_negative("efield_v_per_m", efield_v_per_m)?;
    Ok(sigmoid(
        efield_v_per_m,
        model.e50_v_per_m,
        model.sigma_e_v_per_m,
    ))
}

/// System-level kill probability `1 - prod_i (1 - p_i)` over all
/// subsystems.
pub fn system_kill_prob(efield_v_per_m: f64, drone: &DroneModel) -> Result<f64> {
    require_non_negative("efield_v_per_m", efield_v_per_m)?;
    let mut survive = 1.0;
    for sub in &drone.subsystems {
        survive *= 1.0 - sigmoid(efield_v_per_m, sub.e50_v_per_m, sub.sigma_e_v_per_m);
    }
    Ok(1.0 - survive)
}

/// Range at which the system kill probability equals `target_prob`,
/// found by bisection over [far-field distance, 10 km].
///
/// Returns [`KillRange::OutOfEnvelope`] when the target is not bracketed:
/// either the probability at the far-field edge is already below the
/// target, or it is still above the target at 10 km. The bisection
/// converges the bracket below 1e-6 m, so substituting the result back
/// through the forward model reproduces the target to well under 1e-6.
pub fn kill_range(
    config: &SystemConfig,
    drone: &DroneModel,
    target_prob: f64,
    include_line_loss: bool,
) -> Result<KillRange> {
    require_open_probability("target_prob", target_prob)?;
    config.validate()?;

    let prob_at = |r: f64| -> Result<f64> {
        let s = physics::power_density(config, r, include_line_loss)?;
        system_kill_prob(physics::efield(s)?, drone)
    };

    let mut lo = config.far_field_distance_m()?.max(1e-3);
    let mut hi = KILL_RANGE_MAX_M;
    if prob_at(lo)? < target_prob || prob_at(hi)? > target_prob {
        return Ok(KillRange::OutOfEnvelope);
    }
    // kill probability is strictly decreasing in range, so the invariant
    // p(lo) >= target >= p(hi) pins the crossing inside [lo, hi]
    for _ in 0..200 {
        if hi - lo < 1e-6 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if prob_at(mid)? >= target_prob {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(KillRange::At(0.5 * (lo + hi)))
}
