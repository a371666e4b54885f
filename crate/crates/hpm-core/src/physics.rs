//! Deterministic RF propagation, antenna, pointing, polarization, and
//! pulse arithmetic — the shared physics kernel.
//!
//! Far-field plane-wave propagation from a parabolic reflector: power
//! density follows the Friis relation `S = P eta_line G / (4 pi R^2)`, the
//! field magnitude is `|E| = sqrt(S eta0)`, reflector gain is
//! `eta_ap (pi D / lambda)^2`, and the half-power beamwidth is
//! `70 lambda / D` degrees.
//!
//! Angles cross this interface in degrees (the polarization angle
//! excepted, which is geometric and stays in radians); trig happens in
//! radians internally. Ranges below the far-field distance `2 D^2 / lambda`
//! still produce results but are flagged as outside the model's validity
//! region.

use crate::constants::{C_M_PER_S, ETA0_OHM};
use crate::error::{require_fraction, require_non_negative, require_positive};
#[cfg_attr(test, allow(unused_imports))]
use crate::math::FloatExt;
use crate::{Error, Result};
use core::f64::consts::PI;

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Transmitter, antenna, line-efficiency, and pulse parameters for one
/// engagement scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Transmit power in watts. Average power when pulsed, CW power
    /// otherwise.
    pub transmit_power_w: f64,
    /// Parabolic dish diameter in metres.
    pub dish_diameter_m: f64,
    /// Operating frequency in hertz.
    pub frequency_hz: f64,
    /// Aperture efficiency, in (0, 1].
    pub aperture_efficiency: f64,
    /// Waveguide-run efficiency, in (0, 1].
    pub line_efficiency_waveguide: f64,
    /// Feed efficiency, in (0, 1].
    pub line_efficiency_feed: f64,
    /// Radome efficiency, in (0, 1].
    pub line_efficiency_radome: f64,
    /// Transmitter duty cycle, in (0, 1]; 1.0 is CW.
    pub duty_cycle: f64,
}

impl SystemConfig {
    /// Baseline scenario: 25 kW CW into a 60 cm dish at 2.45 GHz,
    /// aperture efficiency 0.55, line efficiencies 0.98 (waveguide) and
    /// 0.97 (feed), unity radome.
    pub fn baseline() -> Self {
        SystemConfig {
            transmit_power_w: 25e3,
            dish_diameter_m: 0.60,
            frequency_hz: 2.45e9,
            aperture_efficiency: 0.55,
            line_efficiency_waveguide: 0.98,
            line_efficiency_feed: 0.97,
            line_efficiency_radome: 1.0,
            duty_cycle: 1.0,
        }
    }

    /// Check every field invariant, naming the first offending field.
    pub fn validate(&self) -> Result<()> {
        require_positive("transmit_power_w", self.transmit_power_w)?;
        require_positive("dish_diameter_m", self.dish_diameter_m)?;
        require_positive("frequency_hz", self.frequency_hz)?;
        require_fraction("aperture_efficiency", self.aperture_efficiency)?;
        require_fraction("line_efficiency_waveguide", self.line_efficiency_waveguide)?;
        require_fraction("line_efficiency_feed", self.line_efficiency_feed)?;
        require_fraction("line_efficiency_radome", self.line_efficiency_radome)?;
        require_fraction("duty_cycle", self.duty_cycle)?;
        Ok(())
    }

    /// Free-space wavelength `c / f` in metres.
    pub fn wavelength_m(&self) -> f64 {
        C_M_PER_S / self.frequency_hz
    }

    /// Aggregate transmission-line efficiency: waveguide x feed x radome.
    pub fn line_efficiency(&self) -> f64 {
        self.line_efficiency_waveguide * self.line_efficiency_feed * self.line_efficiency_radome
    }

    /// Linear antenna gain for this configuration.
    pub fn gain_linear(&self) -> Result<f64> {
        antenna_gain(
            self.dish_diameter_m,
            self.wavelength_m(),
            self.aperture_efficiency,
        )
    }

    /// Half-power beamwidth in degrees for this configuration.
    pub fn beamwidth_deg(&self) -> Result<f64> {
        half_power_beamwidth(self.dish_diameter_m, self.wavelength_m())
    }

    /// Peak power in watts implied by the duty cycle.
    pub fn peak_power_w(&self) -> Result<f64> {
        pulsed_peak_power(self.transmit_power_w, self.duty_cycle)
    }

    /// Far-field distance `2 D^2 / lambda` in metres.
    pub fn far_field_distance_m(&self) -> Result<f64> {
        far_field_distance(self.dish_diameter_m, self.wavelength_m())
    }
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self::baseline()
    }
}

/// Everything the propagation model knows about one (config, range) point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationResult {
    /// Range in metres.
    pub range_m: f64,
    /// Power density in W/m^2.
    pub power_density_w_per_m2: f64,
    /// Electric field magnitude in V/m.
    pub efield_v_per_m: f64,
    /// Linear antenna gain.
    pub gain_linear: f64,
    /// Antenna gain in dBi.
    pub gain_dbi: f64,
    /// Half-power beamwidth in degrees.
    pub beamwidth_3db_deg: f64,
    /// False when the range is inside the far-field distance, where the
    /// plane-wave model is outside its validity region.
    pub in_far_field: bool,
}

/// Antenna pointing state: error angle against the half-power beamwidth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointingModel {
    /// Pointing error in degrees off boresight.
    pub error_angle_deg: f64,
    /// Half-power beamwidth in degrees.
    pub beamwidth_3db_deg: f64,
}

impl PointingModel {
    /// Gaussian pointing loss factor in (0, 1]; 1.0 at boresight.
    pub fn loss_factor(&self) -> Result<f64> {
        pointing_loss(self.error_angle_deg, self.beamwidth_3db_deg)
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Parabolic reflector gain `eta_ap (pi D / lambda)^2`, dimensionless.
pub fn antenna_gain(diameter_m: f64, wavelength_m: f64, aperture_efficiency: f64) -> Result<f64> {
    require_positive("diameter_m", diameter_m)?;
    require_positive("wavelength_m", wavelength_m)?;
    require_fraction("aperture_efficiency", aperture_efficiency)?;
    let ratio = PI * diameter_m / wavelength_m;
    Ok(aperture_efficiency * ratio * ratio)
}

/// Linear power gain to dBi.
pub fn gain_to_dbi(gain_linear: f64) -> f64 {
    10.0 * gain_linear.log10()
}

/// Half-power beamwidth `70 lambda / D` in degrees.
pub fn half_power_beamwidth(diameter_m: f64, wavelength_m: f64) -> Result<f64> {
    require_positive("diameter_m", diameter_m)?;
    require_positive("wavelength_m", wavelength_m)?;
    Ok(70.0 * wavelength_m / diameter_m)
}

/// Boresight power density `P eta_line G / (4 pi R^2)` in W/m^2.
///
/// With `include_line_loss` false the aggregate line efficiency is
/// replaced by 1, which is the convention the published field and safety
/// figures are quoted under.
pub fn power_density(config: &SystemConfig, range_m: f64, include_line_loss: bool) -> Result<f64> {
    config.validate()?;
    require_positive("range_m", range_m)?;
    let line = if include_line_loss {
        config.line_efficiency()
    } else {
        1.0
    };
    let gain = config.gain_linear()?;
    Ok(config.transmit_power_w * line * gain / (4.0 * PI * range_m * range_m))
}

/// Free-space field magnitude `sqrt(S eta0)` in V/m.
pub fn efield(power_density_w_per_m2: f64) -> Result<f64> {
    require_non_negative("power_density_w_per_m2", power_density_w_per_m2)?;
    Ok((power_density_w_per_m2 * ETA0_OHM).sqrt())
}

/// Gaussian pointing loss `exp(-2.76 theta_norm^2)` with
/// `theta_norm = theta_err / (theta_3dB / 2)`. Returns a fraction in
/// (0, 1], 1.0 at boresight.
pub fn pointing_loss(error_angle_deg: f64, beamwidth_3db_deg: f64) -> Result<f64> {
    require_non_negative("error_angle_deg", error_angle_deg)?;
    require_positive("beamwidth_3db_deg", beamwidth_3db_deg)?;
    let theta_norm = error_angle_deg / (beamwidth_3db_deg / 2.0);
    Ok((-2.76 * theta_norm * theta_norm).exp())
}

/// Polarization mismatch efficiency `max(cos^2 phi, 0.1)`; the 0.1 floor
/// accounts for cross-polarized coupling. Angle in radians, any value
/// (the function has period pi).
pub fn polarization_efficiency(angle_rad: f64) -> f64 {
    let c = angle_rad.cos();
    (c * c).max(0.1)
}

/// Peak power `P_avg / d` in watts for duty cycle `d` in (0, 1].
pub fn pulsed_peak_power(average_power_w: f64, duty_cycle: f64) -> Result<f64> {
    require_fraction("duty_cycle", duty_cycle)?;
    Ok(average_power_w / duty_cycle)
}

/// -3 dB beam footprint diameter `2 R tan(theta_3dB / 2)` in metres.
pub fn beam_footprint(range_m: f64, beamwidth_3db_deg: f64) -> Result<f64> {
    require_positive("range_m", range_m)?;
    if !(beamwidth_3db_deg > 0.0 && beamwidth_3db_deg < 180.0) {
        return Err(Error::Domain {
            name: "beamwidth_3db_deg",
            value: beamwidth_3db_deg,
            constraint: "must lie in (0, 180)",
        });
    }
    let half_rad = (beamwidth_3db_deg / 2.0).to_radians();
    Ok(2.0 * range_m * half_rad.tan())
}

/// Far-field (Fraunhofer) distance `2 D^2 / lambda` in metres. Ranges
/// below this are outside the plane-wave model's validity region.
pub fn far_field_distance(diameter_m: f64, wavelength_m: f64) -> Result<f64> {
    require_non_negative("diameter_m", diameter_m)?;
    require_positive("wavelength_m", wavelength_m)?;
    Ok(2.0 * diameter_m * diameter_m / wavelength_m)
}

/// Full propagation chain at one range: density, field, gain, beamwidth,
/// and the far-field validity flag.
pub fn propagate(
    config: &SystemConfig,
    range_m: f64,
    include_line_loss: bool,
) -> Result<PropagationResult> {
    let s = power_density(config, range_m, include_line_loss)?;
    let gain_linear = config.gain_linear()?;
    Ok(PropagationResult {
        range_m,
        power_density_w_per_m2: s,
        efield_v_per_m: efield(s)?,
        gain_linear,
        gain_dbi: gain_to_dbi(gain_linear),
        beamwidth_3db_deg: config.beamwidth_deg()?,
        in_far_field: range_m >= config.far_field_distance_m()?,
    })
}

// ===========================================================================
// Tests
// ===========================================================================
