//! Composite design studies built on the kernels: kill curves,
//! pulsed-vs-CW comparison, power-aperture trade-space maps, safety
//! exclusion distances, thermal and efficiency budgets, dwell time, and
//! the dish trade table.
//!
//! Every function here is a deterministic map from (config, model, flags)
//! to numbers; repeated calls produce identical tables.

use crate::damage::{self, sigmoid, DroneModel, KillRange};
use crate::error::{require_non_negative, require_positive};
#[cfg_attr(test, allow(unused_imports))]
use crate::math::FloatExt;
use crate::physics::{self, SystemConfig};
use crate::{Error, Result};
use alloc::vec::Vec;

/// Average heat load above which forced-air cooling no longer suffices.
pub const LIQUID_COOLING_THRESHOLD_W: f64 = 5_000.0;

// ---------------------------------------------------------------------------
// Kill curves and pulsed comparison
// ---------------------------------------------------------------------------

/// One point of a kill-vs-range sweep, carrying both damage models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KillCurvePoint {
    pub range_m: f64,
    pub efield_v_per_m: f64,
    /// Product over all drone subsystems.
    pub p_kill_composite: f64,
    /// Single reference sigmoid at the nominal device parameters.
    pub p_kill_single_sigmoid: f64,
}

/// Kill probability versus range, with both the composite and the
/// single-sigmoid columns. `single_ref` is the nominal (e50, sigma_e) of
/// the reference device.
pub fn kill_curve(
    config: &SystemConfig,
    drone: &DroneModel,
    ranges_m: &[f64],
    single_ref: (f64, f64),
    include_line_loss: bool,
) -> Result<Vec<KillCurvePoint>> {
    let mut out = Vec::with_capacity(ranges_m.len());
    for &range_m in ranges_m {
        let e = physics::efield(physics::power_density(config, range_m, include_line_loss)?)?;
        out.push(KillCurvePoint {
            range_m,
            efield_v_per_m: e,
            p_kill_composite: damage::system_kill_prob(e, drone)?,
            p_kill_single_sigmoid: sigmoid(e, single_ref.0, single_ref.1),
        });
    }
    Ok(out)
}

/// One row of the pulsed-versus-CW comparison at constant average power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulsedPoint {
    pub duty_cycle: f64,
    pub peak_power_w: f64,
    pub range_m: f64,
    pub peak_efield_v_per_m: f64,
    /// Composite kill probability driven by the peak field.
    pub p_kill: f64,
}

/// Peak field and kill probability per duty cycle at a constant average
/// power budget. Damage is driven by peak power; thermal and safety
/// analyses elsewhere use the average.
pub fn pulsed_cw_compare(
    average_power_w: f64,
    duty_cycles: &[f64],
    config: &SystemConfig,
    drone: &DroneModel,
    ranges_m: &[f64],
    include_line_loss: bool,
) -> Result<Vec<PulsedPoint>> {
    require_positive("average_power_w", average_power_w)?;
    let mut out = Vec::new();
    for &duty_cycle in duty_cycles {
        let peak_power_w = physics::pulsed_peak_power(average_power_w, duty_cycle)?;
        let mut peak_config = config.clone();
        peak_config.transmit_power_w = peak_power_w;
        peak_config.duty_cycle = duty_cycle;
        for &range_m in ranges_m {
            let e = physics::efield(physics::power_density(
                &peak_config,
                range_m,
                include_line_loss,
            )?)?;
            out.push(PulsedPoint {
                duty_cycle,
                peak_power_w,
                range_m,
                peak_efield_v_per_m: e,
                p_kill: damage::system_kill_prob(e, drone)?,
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Trade space
// ---------------------------------------------------------------------------

/// Kill-range grid over the power-aperture plane. Cells where the target
/// probability is unreachable inside the search envelope are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct TradespaceMap {
    pub power_axis_w: Vec<f64>,
    pub diameter_axis_m: Vec<f64>,
    /// Row-major over (power, diameter).
    pub range_grid_m: Vec<Option<f64>>,
    pub target_prob: f64,
}

impl TradespaceMap {
    /// Cell lookup by axis indices.
    pub fn cell(&self, power_idx: usize, diameter_idx: usize) -> Option<f64> {
        self.range_grid_m[power_idx * self.diameter_axis_m.len() + diameter_idx]
    }
}

/// Sweep kill range over a power x diameter grid at the given target
/// probability.
pub fn tradespace_map(
    power_axis_w: &[f64],
    diameter_axis_m: &[f64],
    config: &SystemConfig,
    drone: &DroneModel,
    target_prob: f64,
    include_line_loss: bool,
) -> Result<TradespaceMap> {
    let mut range_grid_m = Vec::with_capacity(power_axis_w.len() * diameter_axis_m.len());
    for &power_w in power_axis_w {
        for &diameter_m in diameter_axis_m {
            let mut cell_config = config.clone();
            cell_config.transmit_power_w = power_w;
            cell_config.dish_diameter_m = diameter_m;
            let r = damage::kill_range(&cell_config, drone, target_prob, include_line_loss)?;
            range_grid_m.push(match r {
                KillRange::At(m) => Some(m),
                KillRange::OutOfEnvelope => None,
            });
        }
    }
    Ok(TradespaceMap {
        power_axis_w: power_axis_w.to_vec(),
        diameter_axis_m: diameter_axis_m.to_vec(),
        range_grid_m,
        target_prob,
    })
}

// ---------------------------------------------------------------------------
// Safety
// ---------------------------------------------------------------------------

/// Time-averaged exposure reference levels in W/m^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SafetyLimits {
    pub occupational_w_per_m2: f64,
    pub general_public_w_per_m2: f64,
}

impl SafetyLimits {
    /// ICNIRP 2020 reference levels at 2.45 GHz: 50 W/m^2 occupational,
    /// 10 W/m^2 general public.
    pub fn icnirp_2020() -> Self {
        SafetyLimits {
            occupational_w_per_m2: 50.0,
            general_public_w_per_m2: 10.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("general_public_w_per_m2", self.general_public_w_per_m2)?;
        if self.occupational_w_per_m2 <= self.general_public_w_per_m2 {
            return Err(Error::Domain {
                name: "occupational_w_per_m2",
                value: self.occupational_w_per_m2,
                constraint: "must exceed the general-public limit",
            });
        }
        Ok(())
    }
}

/// Boresight exclusion distance `sqrt(P G / (4 pi limit))` in metres.
///
/// With `time_averaged` (the exposure-relevant convention) the configured
/// power is used as-is, i.e. average power when pulsed; otherwise the
/// peak power is substituted.
pub fn safety_distance(
    config: &SystemConfig,
    limit_w_per_m2: f64,
    time_averaged: bool,
    include_line_loss: bool,
) -> Result<f64> {
    config.validate()?;
    require_positive("limit_w_per_m2", limit_w_per_m2)?;
    let power_w = if time_averaged {
        config.transmit_power_w
    } else {
        config.peak_power_w()?
    };
    let line = if include_line_loss {
        config.line_efficiency()
    } else {
        1.0
    };
    let gain = config.gain_linear()?;
    Ok((power_w * line * gain / (4.0 * core::f64::consts::PI * limit_w_per_m2)).sqrt())
}

// ---------------------------------------------------------------------------
// Thermal and efficiency chain
// ---------------------------------------------------------------------------

/// Wall-plug-to-radiated efficiency chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyChain {
    pub psu: f64,
    pub magnetron: f64,
    pub waveguide: f64,
    pub feed: f64,
    pub radome: f64,
}

impl EfficiencyChain {
    /// Published stage efficiencies: PSU 0.90, magnetron 0.70, waveguide
    /// 0.98, feed 0.97, radome 1.0.
    pub fn published_default() -> Self {
        EfficiencyChain {
            psu: 0.90,
            magnetron: 0.70,
            waveguide: 0.98,
            feed: 0.97,
            radome: 1.0,
        }
    }

    /// Stages in power-flow order.
    pub fn stages(&self) -> [(&'static str, f64); 5] {
        [
            ("psu", self.psu),
            ("magnetron", self.magnetron),
            ("waveguide", self.waveguide),
            ("feed", self.feed),
            ("radome", self.radome),
        ]
    }

    /// End-to-end wall-plug-to-radiated efficiency.
    pub fn cumulative(&self) -> f64 {
        self.stages().iter().map(|&(_, e)| e).product()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, eff) in self.stages() {
            if !(eff > 0.0 && eff <= 1.0) {
                return Err(Error::Domain {
                    name,
                    value: eff,
                    constraint: "stage efficiency must lie in (0, 1]",
                });
            }
        }
        Ok(())
    }
}

/// Cooling class implied by the average heat load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoolingClass {
    ForcedAir,
    Liquid,
}

/// Heat dissipated per stage for a given RF output power.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalBudget {
    /// (stage name, heat in watts), in power-flow order.
    pub stage_heat_w: Vec<(&'static str, f64)>,
    pub total_heat_w: f64,
    pub duty_cycle: f64,
    /// Total heat scaled by the duty cycle.
    pub average_heat_w: f64,
    pub cooling: CoolingClass,
}

/// Per-stage heat for `rf_power_w` of RF out of the magnetron. Upstream
/// stages (PSU, magnetron) are worked backward from the RF reference
/// point; downstream line stages dissipate their share of the RF.
pub fn thermal_budget(
    rf_power_w: f64,
    chain: &EfficiencyChain,
    duty_cycle: f64,
) -> Result<ThermalBudget> {
    require_positive("rf_power_w", rf_power_w)?;
    chain.validate()?;
    if !(0.0..=1.0).contains(&duty_cycle) {
        return Err(Error::Domain {
            name: "duty_cycle",
            value: duty_cycle,
            constraint: "must lie in [0, 1]",
        });
    }
    let magnetron_in_w = rf_power_w / chain.magnetron;
    let psu_heat = magnetron_in_w * (1.0 / chain.psu - 1.0);
    let magnetron_heat = rf_power_w * (1.0 / chain.magnetron - 1.0);
    let waveguide_heat = rf_power_w * (1.0 - chain.waveguide);
    let feed_heat = rf_power_w * chain.waveguide * (1.0 - chain.feed);
    let radome_heat = rf_power_w * chain.waveguide * chain.feed * (1.0 - chain.radome);
    let stage_heat_w = alloc::vec![
        ("psu", psu_heat),
        ("magnetron", magnetron_heat),
        ("waveguide", waveguide_heat),
        ("feed", feed_heat),
        ("radome", radome_heat),
    ];
    let total_heat_w: f64 = stage_heat_w.iter().map(|&(_, h)| h).sum();
    let average_heat_w = total_heat_w * duty_cycle;
    Ok(ThermalBudget {
        stage_heat_w,
        total_heat_w,
        duty_cycle,
        average_heat_w,
        cooling: if average_heat_w > LIQUID_COOLING_THRESHOLD_W {
            CoolingClass::Liquid
        } else {
            CoolingClass::ForcedAir
        },
    })
}

/// One stage of the wall-plug power flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StagePower {
    pub name: &'static str,
    pub efficiency: f64,
    pub input_w: f64,
    pub output_w: f64,
    pub cumulative_efficiency: f64,
}

/// Power flow from the wall plug through every stage of the chain.
pub fn efficiency_chain_report(
    wall_power_w: f64,
    chain: &EfficiencyChain,
) -> Result<Vec<StagePower>> {
    require_positive("wall_power_w", wall_power_w)?;
    chain.validate()?;
    let mut power = wall_power_w;
    let mut cumulative = 1.0;
    let mut out = Vec::with_capacity(5);
    for (name, efficiency) in chain.stages() {
        let output_w = power * efficiency;
        cumulative *= efficiency;
        out.push(StagePower {
            name,
            efficiency,
            input_w: power,
            output_w,
            cumulative_efficiency: cumulative,
        });
        power = output_w;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Dwell time
// ---------------------------------------------------------------------------

/// Thermal-damage fluence threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DwellParams {
    pub fluence_threshold_j_per_cm2: f64,
}

impl DwellParams {
    pub fn published_default() -> Self {
        DwellParams {
            fluence_threshold_j_per_cm2: 0.1,
        }
    }
}

/// Beam-on-target time to reach the fluence threshold: `F_th / S(R)`
/// seconds, with the threshold converted to J/m^2. Grows as R^2.
pub fn dwell_time(
    config: &SystemConfig,
    range_m: f64,
    params: &DwellParams,
    include_line_loss: bool,
) -> Result<f64> {
    require_positive(
        "fluence_threshold_j_per_cm2",
        params.fluence_threshold_j_per_cm2,
    )?;
    let s = physics::power_density(config, range_m, include_line_loss)?;
    Ok(params.fluence_threshold_j_per_cm2 * 1.0e4 / s)
}

/// Fluence accumulated after `time_s` of exposure, in J/cm^2.
pub fn energy_accumulation(power_density_w_per_m2: f64, time_s: f64) -> Result<f64> {
    require_non_negative("power_density_w_per_m2", power_density_w_per_m2)?;
    require_non_negative("time_s", time_s)?;
    Ok(power_density_w_per_m2 * time_s * 1.0e-4)
}

// ---------------------------------------------------------------------------
// Dish trade table
// ---------------------------------------------------------------------------

/// One row of the dish-size trade analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DishTradeRow {
    pub diameter_m: f64,
    pub gain_dbi: f64,
    pub beamwidth_deg: f64,
    pub footprint_at_30m_m: f64,
    /// Catalogue mass range and wind load, known for the 40/60/80/100 cm
    /// sizes only.
    pub weight_min_kg: Option<f64>,
    pub weight_max_kg: Option<f64>,
    pub wind_load_n: Option<f64>,
}

/// Catalogue weight/wind data for standard dish sizes.
fn dish_catalogue(diameter_m: f64) -> (Option<f64>, Option<f64>, Option<f64>) {
    const ROWS: [(f64, f64, f64, f64); 4] = [
        (0.40, 2.0, 3.0, 40.0),
        (0.60, 4.0, 6.0, 90.0),
        (0.80, 8.0, 12.0, 160.0),
        (1.00, 12.0, 18.0, 250.0),
    ];
    for (d, lo, hi, wind) in ROWS {
        if (diameter_m - d).abs() < 1e-9 {
            return (Some(lo), Some(hi), Some(wind));
        }
    }
    (None, None, None)
}

/// Gain, beamwidth, 30 m footprint, and catalogue mass/wind data per dish
/// diameter. Computed columns use the same kernels as everything else.
pub fn dish_trade_table(diameters_m: &[f64], config: &SystemConfig) -> Result<Vec<DishTradeRow>> {
    let wavelength_m = config.wavelength_m();
    let mut out = Vec::with_capacity(diameters_m.len());
    for &diameter_m in diameters_m {
        let gain = physics::antenna_gain(diameter_m, wavelength_m, config.aperture_efficiency)?;
        let beamwidth_deg = physics::half_power_beamwidth(diameter_m, wavelength_m)?;
        let (weight_min_kg, weight_max_kg, wind_load_n) = dish_catalogue(diameter_m);
        out.push(DishTradeRow {
            diameter_m,
            gain_dbi: physics::gain_to_dbi(gain),
            beamwidth_deg,
            footprint_at_30m_m: physics::beam_footprint(30.0, beamwidth_deg)?,
            weight_min_kg,
            weight_max_kg,
            wind_load_n,
        });
    }
    Ok(out)
}
