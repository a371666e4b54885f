//! Scenario configuration: a flat, sectioned TOML document in which every
//! key is optional and omitted keys take the published baseline values.
//! An empty document is the full baseline scenario.
//!
//! Unknown keys and malformed values are rejected with the TOML parser's
//! line/column diagnostics; invariant violations are reported with the
//! offending field name.

use anyhow::{anyhow, Context};
use hpm_core::analyses::{DwellParams, EfficiencyChain, SafetyLimits};
use hpm_core::coupling::CouplingParams;
use hpm_core::damage::{DroneModel, SubsystemModel};
use hpm_core::montecarlo::{McDistributionSpec, ModelVariant, PointingBeamwidth};
use hpm_core::physics::SystemConfig;
use serde::Deserialize;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Trade-space sweep settings.
#[derive(Debug, Clone, PartialEq)]
pub struct TradespaceSettings {
    pub power_low_w: f64,
    pub power_high_w: f64,
    pub power_steps: usize,
    pub diameter_low_m: f64,
    pub diameter_high_m: f64,
    pub diameter_steps: usize,
    pub target_prob: f64,
}

impl Default for TradespaceSettings {
    fn default() -> Self {
        TradespaceSettings {
            power_low_w: 5e3,
            power_high_w: 100e3,
            power_steps: 20,
            diameter_low_m: 0.3,
            diameter_high_m: 1.2,
            diameter_steps: 19,
            target_prob: 0.9,
        }
    }
}

impl TradespaceSettings {
    pub fn power_axis(&self) -> Vec<f64> {
        linspace(self.power_low_w, self.power_high_w, self.power_steps)
    }
    pub fn diameter_axis(&self) -> Vec<f64> {
        linspace(
            self.diameter_low_m,
            self.diameter_high_m,
            self.diameter_steps,
        )
    }
}

pub fn linspace(low: f64, high: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![low];
    }
    (0..steps)
        .map(|i| low + (high - low) * i as f64 / (steps - 1) as f64)
        .collect()
}

/// A fully resolved, validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub config: SystemConfig,
    pub drone: DroneModel,
    pub dist: McDistributionSpec,
    pub trials: u64,
    pub seed: u64,
    pub variant: ModelVariant,
    /// None means "use the per-command default".
    pub include_line_loss: Option<bool>,
    /// Coupling sweep parameters (wire length is swept per call).
    pub coupling: CouplingParams,
    pub safety: SafetyLimits,
    pub chain: EfficiencyChain,
    pub dwell: DwellParams,
    pub tradespace: TradespaceSettings,
    pub format: OutputFormat,
    pub timestamp: bool,
}

impl Scenario {
    /// The full published-baseline scenario (what an empty document
    /// resolves to): 25 kW / 60 cm / 2.45 GHz system, the five-subsystem
    /// consumer drone, the published sampling distributions, 10,000
    /// trials at seed 42.
    pub fn baseline() -> Self {
        Scenario {
            config: SystemConfig::baseline(),
            drone: DroneModel::consumer_default(),
            dist: McDistributionSpec::published_default(),
            trials: 10_000,
            seed: 42,
            variant: ModelVariant::SingleSigmoid,
            include_line_loss: None,
            coupling: CouplingParams::aligned(0.06),
            safety: SafetyLimits::icnirp_2020(),
            chain: EfficiencyChain::published_default(),
            dwell: DwellParams::published_default(),
            tradespace: TradespaceSettings::default(),
            format: OutputFormat::Csv,
            timestamp: true,
        }
    }

    /// Parse a TOML scenario document, apply defaults, and validate.
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let file: ScenarioFile = toml::from_str(text).context("scenario parse error")?;
        let mut s = Scenario::baseline();

        if let Some(sys) = file.system {
            let c = &mut s.config;
            set(&mut c.transmit_power_w, sys.transmit_power_w);
            set(&mut c.dish_diameter_m, sys.dish_diameter_m);
            set(&mut c.frequency_hz, sys.frequency_hz);
            set(&mut c.aperture_efficiency, sys.aperture_efficiency);
            set(
                &mut c.line_efficiency_waveguide,
                sys.line_efficiency_waveguide,
            );
            set(&mut c.line_efficiency_feed, sys.line_efficiency_feed);
            set(&mut c.line_efficiency_radome, sys.line_efficiency_radome);
            set(&mut c.duty_cycle, sys.duty_cycle);
        }
        // campaign distributions track the configured system (5% power
        // spread, 5 mm dish tolerance) unless [montecarlo] overrides them
        s.dist.power_w.mean = s.config.transmit_power_w;
        s.dist.power_w.sigma = 0.05 * s.config.transmit_power_w;
        s.dist.dish_m.mean = s.config.dish_diameter_m;

        if let Some(drone) = file.drone {
            if let Some(rows) = drone.subsystems {
                let subsystems = rows
                    .iter()
                    .map(|(name, e50, sigma)| SubsystemModel::new(name, *e50, *sigma))
                    .collect::<hpm_core::Result<Vec<_>>>()
                    .map_err(|e| anyhow!("drone.subsystems: {e}"))?;
                s.drone =
                    DroneModel::new(subsystems).map_err(|e| anyhow!("drone.subsystems: {e}"))?;
            }
        }
        if let Some(mc) = file.montecarlo {
            set(&mut s.trials, mc.trials);
            set(&mut s.seed, mc.seed);
            let d = &mut s.dist;
            set(&mut d.power_w.mean, mc.power_mean_w);
            set(&mut d.power_w.sigma, mc.power_sigma_w);
            set(&mut d.dish_m.mean, mc.dish_mean_m);
            set(&mut d.dish_m.sigma, mc.dish_sigma_m);
            if let Some(lo) = mc.aperture_eff_low {
                d.aperture_eff.low = lo;
            }
            if let Some(hi) = mc.aperture_eff_high {
                d.aperture_eff.high = hi;
            }
            set(&mut d.pointing_sigma_deg, mc.pointing_sigma_deg);
            if let Some(lo) = mc.wire_length_low_m {
                d.wire_length_m.low = lo;
            }
            if let Some(hi) = mc.wire_length_high_m {
                d.wire_length_m.high = hi;
            }
            set(&mut d.e50_rel_sigma, mc.e50_rel_sigma);
            set(&mut d.sigma_e_rel_sigma, mc.sigma_e_rel_sigma);
            set(&mut d.sigma_e_min, mc.sigma_e_min);
            set(&mut d.single_e50_nominal, mc.single_e50_nominal);
            set(&mut d.single_sigma_e_nominal, mc.single_sigma_e_nominal);
            if mc.pointing_beamwidth_from_dish.unwrap_or(false) {
                d.pointing_beamwidth = PointingBeamwidth::FromSampledDish;
            } else if let Some(bw) = mc.pointing_beamwidth_deg {
                d.pointing_beamwidth = PointingBeamwidth::FixedDeg(bw);
            }
        }
        if let Some(c) = file.coupling {
            set(&mut s.coupling.wire_length_m, c.wire_length_m);
            set(&mut s.coupling.orientation_factor, c.orientation_factor);
            set(
                &mut s.coupling.polarization_efficiency,
                c.polarization_efficiency,
            );
            set(&mut s.coupling.quality_factor, c.quality_factor);
            set(&mut s.coupling.resonance_width_m, c.resonance_width_m);
        }
        if let Some(sf) = file.safety {
            set(
                &mut s.safety.occupational_w_per_m2,
                sf.occupational_w_per_m2,
            );
            set(
                &mut s.safety.general_public_w_per_m2,
                sf.general_public_w_per_m2,
            );
        }
        if let Some(e) = file.efficiency {
            set(&mut s.chain.psu, e.psu);
            set(&mut s.chain.magnetron, e.magnetron);
            set(&mut s.chain.waveguide, e.waveguide);
            set(&mut s.chain.feed, e.feed);
            set(&mut s.chain.radome, e.radome);
        }
        if let Some(d) = file.dwell {
            set(
                &mut s.dwell.fluence_threshold_j_per_cm2,
                d.fluence_threshold_j_per_cm2,
            );
        }
        if let Some(t) = file.tradespace {
            set(&mut s.tradespace.power_low_w, t.power_low_w);
            set(&mut s.tradespace.power_high_w, t.power_high_w);
            set(&mut s.tradespace.power_steps, t.power_steps);
            set(&mut s.tradespace.diameter_low_m, t.diameter_low_m);
            set(&mut s.tradespace.diameter_high_m, t.diameter_high_m);
            set(&mut s.tradespace.diameter_steps, t.diameter_steps);
            set(&mut s.tradespace.target_prob, t.target_prob);
        }
        if let Some(r) = file.run {
            if let Some(v) = r.variant {
                s.variant = parse_variant(&v)?;
            }
            s.include_line_loss = r.include_line_loss.or(s.include_line_loss);
        }
        if let Some(o) = file.output {
            if let Some(f) = o.format {
                s.format = parse_format(&f)?;
            }
            set(&mut s.timestamp, o.timestamp);
        }

        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        self.config.validate()?;
        self.dist.validate()?;
        self.coupling.validate()?;
        self.safety.validate()?;
        self.chain.validate()?;
        if self.trials == 0 {
            return Err(anyhow!("montecarlo.trials must be >= 1"));
        }
        if !(self.tradespace.target_prob > 0.0 && self.tradespace.target_prob < 1.0) {
            return Err(anyhow!(
                "tradespace.target_prob must lie strictly inside (0, 1)"
            ));
        }
        Ok(())
    }

    /// Stable hash of every resolved numeric field, for provenance
    /// metadata on emitted tables.
    pub fn hash(&self) -> String {
        let mut canon = String::new();
        let c = &self.config;
        let _ = write!(
            canon,
            "sys:{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?};",
            c.transmit_power_w,
            c.dish_diameter_m,
            c.frequency_hz,
            c.aperture_efficiency,
            c.line_efficiency_waveguide,
            c.line_efficiency_feed,
            c.line_efficiency_radome,
            c.duty_cycle
        );
        for s in self.drone.subsystems() {
            let _ = write!(
                canon,
                "sub:{},{:?},{:?};",
                s.name, s.e50_v_per_m, s.sigma_e_v_per_m
            );
        }
        let _ = write!(canon, "dist:{:?};", self.dist);
        let _ = write!(
            canon,
            "run:{},{},{},{:?};",
            self.trials,
            self.seed,
            self.variant.label(),
            self.include_line_loss
        );
        let _ = write!(
            canon,
            "aux:{:?},{:?},{:?},{:?},{:?};",
            self.coupling, self.safety, self.chain, self.dwell, self.tradespace
        );
        let digest = Sha256::digest(canon.as_bytes());
        let mut hex = String::with_capacity(16);
        for b in &digest[..8] {
            let _ = write!(hex, "{b:02x}");
        }
        hex
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

pub fn parse_variant(text: &str) -> anyhow::Result<ModelVariant> {
    match text {
        "listing2" | "single-sigmoid" => Ok(ModelVariant::SingleSigmoid),
        "full" | "full-drone" => Ok(ModelVariant::FullDrone),
        other => Err(anyhow!(
            "unknown variant `{other}` (expected `listing2` or `full`)"
        )),
    }
}

pub fn parse_format(text: &str) -> anyhow::Result<OutputFormat> {
    match text {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(anyhow!(
            "unknown format `{other}` (expected `csv` or `json`)"
        )),
    }
}

// ---------------------------------------------------------------------------
// Raw TOML schema
// ---------------------------------------------------------------------------

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct ScenarioFile {
    system: Option<SystemSection>,
    drone: Option<DroneSection>,
    montecarlo: Option<McSection>,
    coupling: Option<CouplingSection>,
    safety: Option<SafetySection>,
    efficiency: Option<EfficiencySection>,
    dwell: Option<DwellSection>,
    tradespace: Option<TradespaceSection>,
    run: Option<RunSection>,
    output: Option<OutputSection>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct SystemSection {
    transmit_power_w: Option<f64>,
    dish_diameter_m: Option<f64>,
    frequency_hz: Option<f64>,
    aperture_efficiency: Option<f64>,
    line_efficiency_waveguide: Option<f64>,
    line_efficiency_feed: Option<f64>,
    line_efficiency_radome: Option<f64>,
    duty_cycle: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct DroneSection {
    /// `[["name", e50, sigma_e], ...]` in susceptibility-model order.
    subsystems: Option<Vec<(String, f64, f64)>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct McSection {
    trials: Option<u64>,
    seed: Option<u64>,
    power_mean_w: Option<f64>,
    power_sigma_w: Option<f64>,
    dish_mean_m: Option<f64>,
    dish_sigma_m: Option<f64>,
    aperture_eff_low: Option<f64>,
    aperture_eff_high: Option<f64>,
    pointing_sigma_deg: Option<f64>,
    wire_length_low_m: Option<f64>,
    wire_length_high_m: Option<f64>,
    e50_rel_sigma: Option<f64>,
    sigma_e_rel_sigma: Option<f64>,
    sigma_e_min: Option<f64>,
    single_e50_nominal: Option<f64>,
    single_sigma_e_nominal: Option<f64>,
    pointing_beamwidth_deg: Option<f64>,
    pointing_beamwidth_from_dish: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct CouplingSection {
    wire_length_m: Option<f64>,
    orientation_factor: Option<f64>,
    polarization_efficiency: Option<f64>,
    quality_factor: Option<f64>,
    resonance_width_m: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct SafetySection {
    occupational_w_per_m2: Option<f64>,
    general_public_w_per_m2: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct EfficiencySection {
    psu: Option<f64>,
    magnetron: Option<f64>,
    waveguide: Option<f64>,
    feed: Option<f64>,
    radome: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct DwellSection {
    fluence_threshold_j_per_cm2: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct TradespaceSection {
    power_low_w: Option<f64>,
    power_high_w: Option<f64>,
    power_steps: Option<usize>,
    diameter_low_m: Option<f64>,
    diameter_high_m: Option<f64>,
    diameter_steps: Option<usize>,
    target_prob: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RunSection {
    include_line_loss: Option<bool>,
    variant: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct OutputSection {
    format: Option<String>,
    timestamp: Option<bool>,
}
