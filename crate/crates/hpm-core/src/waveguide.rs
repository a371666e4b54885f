//! Rectangular-waveguide mode chart and TE10 wall-loss attenuation for
//! the WR-340 feed line.
//!
//! Cutoffs follow `f_c = (c/2) sqrt((m/a)^2 + (n/b)^2)`; the TE10 case
//! reduces to `c / (2a)`. Wall loss is computed in Np/m from the surface
//! resistance `R_s = sqrt(pi f mu0 / sigma)` and reported in dB/m.

use crate::constants::{C_M_PER_S, ETA0_OHM, MU0_H_PER_M, NP_TO_DB};
use crate::error::require_positive;
#[cfg_attr(test, allow(unused_imports))]
use crate::math::FloatExt;
use crate::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Highest mode index enumerated by [`mode_chart`] in each direction.
const MODE_INDEX_MAX: u32 = 5;

/// Rectangular guide geometry and wall conductivity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveguideSpec {
    /// Broad-wall width `a` in metres.
    pub width_a_m: f64,
    /// Narrow-wall height `b` in metres.
    pub height_b_m: f64,
    /// Wall conductivity in S/m.
    pub wall_conductivity_s_per_m: f64,
}

impl WaveguideSpec {
    /// WR-340 in copper: a = 86.36 mm, b = 43.18 mm, sigma = 5.8e7 S/m.
    pub fn wr340() -> Self {
        WaveguideSpec {
            width_a_m: 0.08636,
            height_b_m: 0.04318,
            wall_conductivity_s_per_m: 5.8e7,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("height_b_m", self.height_b_m)?;
        if self.width_a_m <= self.height_b_m {
            return Err(Error::Domain {
                name: "width_a_m",
                value: self.width_a_m,
                constraint: "must exceed height_b_m",
            });
        }
        require_positive("wall_conductivity_s_per_m", self.wall_conductivity_s_per_m)
    }
}

/// Transverse-electric or transverse-magnetic mode family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ModeFamily {
    Te,
    Tm,
}

impl ModeFamily {
    pub fn label(self) -> &'static str {
        match self {
            ModeFamily::Te => "TE",
            ModeFamily::Tm => "TM",
        }
    }
}

/// One waveguide mode and its cutoff frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeEntry {
    pub family: ModeFamily,
    pub m: u32,
    pub n: u32,
    pub cutoff_hz: f64,
}

/// Cutoff frequency of mode (m, n) in hertz.
///
/// TE modes exclude (0, 0); TM modes require both indices >= 1.
pub fn cutoff_frequency(spec: &WaveguideSpec, family: ModeFamily, m: u32, n: u32) -> Result<f64> {
    spec.validate()?;
    let valid = match family {
        ModeFamily::Te => m > 0 || n > 0,
        ModeFamily::Tm => m >= 1 && n >= 1,
    };
    if !valid {
        return Err(Error::InvalidModeIndices {
            family: family.label(),
            m,
            n,
        });
    }
    let mx = m as f64 / spec.width_a_m;
    let ny = n as f64 / spec.height_b_m;
    Ok(C_M_PER_S / 2.0 * (mx * mx + ny * ny).sqrt())
}

/// All TE/TM modes (indices up to 5) with cutoff at or below `f_max_hz`,
/// sorted by ascending cutoff. Degenerate cutoffs order TE before TM,
/// then by n, then m, which puts TE20 ahead of TE01 in guides with
/// `b = a/2`.
pub fn mode_chart(spec: &WaveguideSpec, f_max_hz: f64) -> Result<Vec<ModeEntry>> {
    spec.validate()?;
    require_positive("f_max_hz", f_max_hz)?;
    let mut entries = Vec::new();
    for family in [ModeFamily::Te, ModeFamily::Tm] {
        for n in 0..=MODE_INDEX_MAX {
            for m in 0..=MODE_INDEX_MAX {
                let valid = match family {
                    ModeFamily::Te => m > 0 || n > 0,
                    ModeFamily::Tm => m >= 1 && n >= 1,
                };
                if !valid {
                    continue;
                }
                let cutoff_hz = cutoff_frequency(spec, family, m, n)?;
                if cutoff_hz <= f_max_hz {
                    entries.push(ModeEntry {
                        family,
                        m,
                        n,
                        cutoff_hz,
                    });
                }
            }
        }
    }
    entries.sort_by(|a, b| {
        let scale = a.cutoff_hz.max(b.cutoff_hz);
        if (a.cutoff_hz - b.cutoff_hz).abs() > 1e-9 * scale {
            a.cutoff_hz.partial_cmp(&b.cutoff_hz).unwrap()
        } else {
            (a.family, a.n, a.m).cmp(&(b.family, b.n, b.m))
        }
    });
    Ok(entries)
}

/// Conductor surface resistance `sqrt(pi f mu0 / sigma)` in ohms.
pub fn surface_resistance(frequency_hz: f64, conductivity_s_per_m: f64) -> Result<f64> {
    require_positive("frequency_hz", frequency_hz)?;
    require_positive("conductivity_s_per_m", conductivity_s_per_m)?;
    Ok((PI * frequency_hz * MU0_H_PER_M / conductivity_s_per_m).sqrt())
}

/// TE10 wall-loss attenuation in dB/m.
///
/// Evaluated in Np/m as
/// `R_s (2b (fc/f)^2 + a (1 - (fc/f)^2)) / (a b beta_n eta0)` with the
/// propagation constant entering normalized by the free-space wavenumber,
/// `beta_n = sqrt(1 - (fc/f)^2)`, then converted with 20/ln 10. Diverges
/// at the cutoff and rises slowly at high frequency.
pub fn te10_attenuation(spec: &WaveguideSpec, frequency_hz: f64) -> Result<f64> {
    spec.validate()?;
    require_positive("frequency_hz", frequency_hz)?;
    let cutoff_hz = cutoff_frequency(spec, ModeFamily::Te, 1, 0)?;
    if frequency_hz <= cutoff_hz {
        return Err(Error::EvanescentMode {
            frequency_hz,
            cutoff_hz,
        });
    }
    let rs = surface_resistance(frequency_hz, spec.wall_conductivity_s_per_m)?;
    let ratio2 = (cutoff_hz / frequency_hz) * (cutoff_hz / frequency_hz);
    let beta_n = (1.0 - ratio2).sqrt();
    let a = spec.width_a_m;
    let b = spec.height_b_m;
    let alpha_np = rs * (2.0 * b * ratio2 + a * (1.0 - ratio2)) / (a * b * beta_n * ETA0_OHM);
    Ok(alpha_np * NP_TO_DB)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(got: f64, want: f64, rel: f64, what: &str) {
        assert!(
            (got - want).abs() <= rel * want.abs(),
            "{what}: got {got}, want {want}"
        );
    }

    #[test]
    fn wr340_cutoffs() {
        let wg = WaveguideSpec::wr340();
        let te10 = cutoff_frequency(&wg, ModeFamily::Te, 1, 0).unwrap();
        let te20 = cutoff_frequency(&wg, ModeFamily::Te, 2, 0).unwrap();
        let te01 = cutoff_frequency(&wg, ModeFamily::Te, 0, 1).unwrap();
        assert_close(te10, 1.7357572950440018e9, 1e-12, "TE10");
        assert!((te10 - 1.736e9).abs() < 1e6, "quoted 1.736 GHz");
        assert_close(te20, 3.4715145900880036e9, 1e-12, "TE20");
        assert!((te20 - 3.471e9).abs() < 1e6, "quoted 3.471 GHz");
        // b = a/2 makes TE01 degenerate with TE20
        assert_close(te01, te20, 1e-12, "TE01 = TE20");
    }

    #[test]
    fn cutoff_linear_in_m_for_te_m0() {
        let wg = WaveguideSpec::wr340();
        let te10 = cutoff_frequency(&wg, ModeFamily::Te, 1, 0).unwrap();
        for m in 2..=5u32 {
            let fc = cutoff_frequency(&wg, ModeFamily::Te, m, 0).unwrap();
            assert_close(fc, m as f64 * te10, 1e-12, "TE(m,0) linear in m");
        }
    }

    #[test]
    fn invalid_mode_indices_rejected() {
        let wg = WaveguideSpec::wr340();
        assert!(matches!(
            cutoff_frequency(&wg, ModeFamily::Te, 0, 0),
            Err(Error::InvalidModeIndices { .. })
        ));
        assert!(cutoff_frequency(&wg, ModeFamily::Tm, 1, 0).is_err());
        assert!(cutoff_frequency(&wg, ModeFamily::Tm, 0, 3).is_err());
        assert!(cutoff_frequency(&wg, ModeFamily::Tm, 1, 1).is_ok());
    }

    #[test]
    fn mode_chart_single_mode_at_operating_frequency() {
        let wg = WaveguideSpec::wr340();
        let modes = mode_chart(&wg, 2.45e9).unwrap();
        assert_eq!(modes.len(), 1, "only TE10 propagates at 2.45 GHz");
        assert_eq!(
            (modes[0].family, modes[0].m, modes[0].n),
            (ModeFamily::Te, 1, 0)
        );
    }

    #[test]
    fn mode_chart_first_five_modes() {
        let wg = WaveguideSpec::wr340();
        let modes = mode_chart(&wg, 5e9).unwrap();
        let got: Vec<_> = modes.iter().map(|e| (e.family, e.m, e.n)).collect();
        // the five lowest-order modes, in cutoff order (TE21/TM21 at
        // 4.91 GHz follow them inside this band)
        assert_eq!(
            &got[..5],
            &[
                (ModeFamily::Te, 1, 0),
                (ModeFamily::Te, 2, 0),
                (ModeFamily::Te, 0, 1),
                (ModeFamily::Te, 1, 1),
                (ModeFamily::Tm, 1, 1),
            ]
        );
        // sorted ascending
        for pair in modes.windows(2) {
            assert!(pair[0].cutoff_hz <= pair[1].cutoff_hz * (1.0 + 1e-9));
        }
    }

    #[test]
    fn mode_chart_below_cutoff_is_empty() {
        let wg = WaveguideSpec::wr340();
        assert!(mode_chart(&wg, 1.0e9).unwrap().is_empty());
    }

    #[test]
    fn te10_is_lowest_cutoff() {
        for (a, b) in [(0.08636, 0.04318), (0.10, 0.03), (0.2286, 0.1016)] {
            let wg = WaveguideSpec {
                width_a_m: a,
                height_b_m: b,
                wall_conductivity_s_per_m: 5.8e7,
            };
            let modes = mode_chart(&wg, 50e9).unwrap();
            assert_eq!(
                (modes[0].family, modes[0].m, modes[0].n),
                (ModeFamily::Te, 1, 0)
            );
        }
    }

    #[test]
    fn surface_resistance_value_and_scaling() {
        let rs = surface_resistance(2.45e9, 5.8e7).unwrap();
        assert_close(rs, 0.012913647093667447, 1e-12, "Rs at 2.45 GHz");
        let rs4 = surface_resistance(4.0 * 2.45e9, 5.8e7).unwrap();
        assert_close(rs4, 2.0 * rs, 1e-12, "Rs scales as sqrt(f)");
        // perfect conductor limit
        assert!(surface_resistance(2.45e9, 1e30).unwrap() < 1e-9);
    }

    #[test]
    fn te10_attenuation_at_operating_frequency() {
        let wg = WaveguideSpec::wr340();
        let alpha = te10_attenuation(&wg, 2.45e9).unwrap();
        assert_close(alpha, 0.009763272002260114, 1e-10, "alpha at 2.45 GHz");
        // quoted 0.009 dB/m within 20%
        assert!((alpha - 0.009).abs() / 0.009 < 0.20, "got {alpha}");
        // one-metre run loses ~0.22% of the power
        let loss_fraction = 1.0 - 10f64.powf(-alpha / 10.0);
        assert!((0.001..0.004).contains(&loss_fraction), "{loss_fraction}");
    }

    #[test]
    fn te10_attenuation_diverges_at_cutoff_with_single_minimum() {
        let wg = WaveguideSpec::wr340();
        let fc = cutoff_frequency(&wg, ModeFamily::Te, 1, 0).unwrap();
        assert!(te10_attenuation(&wg, fc).is_err(), "at cutoff: evanescent");
        assert!(
            te10_attenuation(&wg, fc * 1.0001).unwrap()
                > 10.0 * te10_attenuation(&wg, 2.45e9).unwrap(),
            "divergence near cutoff"
        );
        // numeric sweep: strictly decreasing to a single interior minimum,
        // then rising toward high frequency
        let freqs: Vec<f64> = (0..400).map(|i| fc * 1.02 * 1.01f64.powi(i)).collect();
        let alphas: Vec<f64> = freqs
            .iter()
            .map(|&f| te10_attenuation(&wg, f).unwrap())
            .collect();
        let min_idx = alphas
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        assert!(
            min_idx > 0 && min_idx < alphas.len() - 1,
            "interior minimum"
        );
        for i in 1..=min_idx {
            assert!(alphas[i] <= alphas[i - 1], "decreasing before minimum");
        }
        for i in min_idx + 1..alphas.len() {
            assert!(alphas[i] >= alphas[i - 1], "increasing after minimum");
        }
    }
}
