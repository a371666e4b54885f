//! Electric-field-to-wire coupling: short-dipole induced voltage with a
//! Gaussian resonance enhancement near the half-wave length.
//!
//! A harness wire of length `L` picks up `V = E (L/2) F sqrt(eta_pol)`,
//! and near `L = lambda/2` the coupling is boosted by the resonance
//! factor `1 + (Q - 1) exp(-(L - lambda/2)^2 / (2 sigma_L^2))`, which
//! peaks at exactly `Q` on resonance and decays to 1 far from it.

use crate::error::{require_non_negative, require_positive};
#[cfg_attr(test, allow(unused_imports))]
use crate::math::FloatExt;
use crate::{Error, Result};

/// Default resonance quality factor for unshielded harnesses.
pub const DEFAULT_QUALITY_FACTOR: f64 = 10.0;

/// Default resonance width in metres.
pub const DEFAULT_RESONANCE_WIDTH_M: f64 = 0.02;

/// Victim-wire coupling parameters.
///
/// `orientation_factor` is the projection of the incident E-vector onto
/// the wire axis, `|sin(theta_wire)|` for a dipole; it is exposed as a
/// direct parameter so a worst-case aligned wire is simply `1.0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    /// Physical wire length in metres.
    pub wire_length_m: f64,
    /// Orientation projection factor in [0, 1].
    pub orientation_factor: f64,
    /// Polarization mismatch efficiency in [0.1, 1].
    pub polarization_efficiency: f64,
    /// Resonance quality factor, >= 1.
    pub quality_factor: f64,
    /// Gaussian resonance width in metres.
    pub resonance_width_m: f64,
}

impl CouplingParams {
    /// Aligned co-polarized wire of the given length with the default
    /// resonance parameters.
    pub fn aligned(wire_length_m: f64) -> Self {
        CouplingParams {
            wire_length_m,
            orientation_factor: 1.0,
            polarization_efficiency: 1.0,
            quality_factor: DEFAULT_QUALITY_FACTOR,
            resonance_width_m: DEFAULT_RESONANCE_WIDTH_M,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("wire_length_m", self.wire_length_m)?;
        if !(0.0..=1.0).contains(&self.orientation_factor) {
            return Err(Error::Domain {
                name: "orientation_factor",
                value: self.orientation_factor,
                constraint: "must lie in [0, 1]",
            });
        }
        if !(0.1..=1.0).contains(&self.polarization_efficiency) {
            return Err(Error::Domain {
                name: "polarization_efficiency",
                value: self.polarization_efficiency,
                constraint: "must lie in [0.1, 1]",
            });
        }
        if self.quality_factor < 1.0 {
            return Err(Error::Domain {
                name: "quality_factor",
                value: self.quality_factor,
                constraint: "must be >= 1",
            });
        }
        require_positive("resonance_width_m", self.resonance_width_m)?;
        Ok(())
    }
}

/// Short-dipole open-circuit voltage `E (L/2) F sqrt(eta_pol)` in volts,
/// before resonance enhancement.
pub fn induced_voltage(efield_v_per_m: f64, params: &CouplingParams) -> Result<f64> {
    require_non_negative("efield_v_per_m", efield_v_per_m)?;
    params.validate()?;
    Ok(efield_v_per_m
        * (params.wire_length_m / 2.0)
        * params.orientation_factor
        * params.polarization_efficiency.sqrt())
}

/// Gaussian resonance enhancement `1 + (Q-1) exp(-(L - lambda/2)^2 /
/// (2 sigma_L^2))`. Equals `Q` at the exact half-wave length and tends to
/// 1 far from resonance; identically 1 when `Q = 1`.
pub fn resonance_factor(
    wire_length_m: f64,
    wavelength_m: f64,
    quality_factor: f64,
    resonance_width_m: f64,
) -> Result<f64> {
    require_positive("wire_length_m", wire_length_m)?;
    require_positive("wavelength_m", wavelength_m)?;
    require_positive("resonance_width_m", resonance_width_m)?;
    if quality_factor < 1.0 {
        return Err(Error::Domain {
            name: "quality_factor",
            value: quality_factor,
            constraint: "must be >= 1",
        });
    }
    let detune = wire_length_m - wavelength_m / 2.0;
    let arg = -(detune * detune) / (2.0 * resonance_width_m * resonance_width_m);
    Ok(1.0 + (quality_factor - 1.0) * arg.exp())
}

/// Resonance-enhanced coupled voltage: [`induced_voltage`] times
/// [`resonance_factor`], in volts.
pub fn coupled_voltage(
    efield_v_per_m: f64,
    params: &CouplingParams,
    wavelength_m: f64,
) -> Result<f64> {
    let v = induced_voltage(efield_v_per_m, params)?;
    let r = resonance_factor(
        params.wire_length_m,
        wavelength_m,
        params.quality_factor,
        params.resonance_width_m,
    )?;
    Ok(v * r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(got: f64, want: f64, rel: f64, what: &str) {
        assert!(
            (got - want).abs() <= rel * want.abs().max(1e-300),
            "{what}: got {got}, want {want}"
        );
    }

    #[test]
    fn induced_voltage_short_dipole() {
        let p = CouplingParams::aligned(0.06);
        assert_close(
            induced_voltage(300.0, &p).unwrap(),
            9.0,
            1e-12,
            "300 V/m on 6 cm",
        );
        assert_eq!(induced_voltage(0.0, &p).unwrap(), 0.0);
        let orthogonal = CouplingParams {
            orientation_factor: 0.0,
            ..p
        };
        assert_eq!(induced_voltage(300.0, &orthogonal).unwrap(), 0.0);
        assert!(induced_voltage(-1.0, &p).is_err());
    }

    #[test]
    fn resonance_factor_peaks_at_q() {
        // exact half-wave: exp(0) = 1, factor = Q bit-exactly
        let lam = 0.12237;
        assert_eq!(resonance_factor(lam / 2.0, lam, 10.0, 0.02).unwrap(), 10.0);
        // quoted wire length 6.12 cm sits a hair off the exact half-wave
        assert_close(
            resonance_factor(0.0612, lam, 10.0, 0.02).unwrap(),
            9.999997468750356,
            1e-12,
            "factor at 6.12 cm",
        );
    }

    #[test]
    fn resonance_factor_off_resonance() {
        assert_close(
            resonance_factor(0.0412, 0.12237, 10.0, 0.02).unwrap(),
            6.462870018598976,
            1e-12,
            "one width below resonance",
        );
        // 30 cm wire: enhancement has fully vanished
        let far = resonance_factor(0.30, 0.12237, 10.0, 0.02).unwrap();
        assert!((far - 1.0).abs() < 1e-15, "expected 1.0, got {far}");
    }

    #[test]
    fn resonance_factor_symmetry_and_degenerate_q() {
        let lam = 0.1223673469387755;
        for d in [0.005, 0.013, 0.04] {
            let lo = resonance_factor(lam / 2.0 - d, lam, 10.0, 0.02).unwrap();
            let hi = resonance_factor(lam / 2.0 + d, lam, 10.0, 0.02).unwrap();
            assert_close(lo, hi, 1e-12, "symmetry about lambda/2");
        }
        // Q = 1 degenerates to the bare short dipole
        assert_eq!(resonance_factor(0.0612, lam, 1.0, 0.02).unwrap(), 1.0);
    }

    #[test]
    fn coupled_voltage_values() {
        let p = CouplingParams::aligned(0.0612);
        let v300 = coupled_voltage(300.0, &p, 0.12237).unwrap();
        let v200 = coupled_voltage(200.0, &p, 0.12237).unwrap();
        assert_close(v300, 91.79997676312827, 1e-12, "300 V/m");
        assert_close(v200, 61.19998450875218, 1e-12, "200 V/m");
        // linear in E
        assert_close(v300 / v200, 1.5, 1e-12, "linearity");
        assert_eq!(coupled_voltage(0.0, &p, 0.12237).unwrap(), 0.0);
    }
}
