//! Physical constants, frozen to the values the model is calibrated
//! against (not the CODATA values).

/// Speed of light in m/s.
pub const C_M_PER_S: f64 = 2.998e8;

/// Impedance of free space in ohms.
pub const ETA0_OHM: f64 = 377.0;

/// Vacuum permeability in H/m.
pub const MU0_H_PER_M: f64 = 4.0e-7 * core::f64::consts::PI;

/// Nepers to decibels: 20 / ln 10.
pub const NP_TO_DB: f64 = 20.0 / core::f64::consts::LN_10;
