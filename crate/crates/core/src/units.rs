//! Unit system and physical constants.
//!
//! Frequencies are measured in units of `OMEGA_0` = 10¹⁶ s⁻¹ and lengths in
//! units of c/ω₀ ≈ 29.98 nm, so that every quadrature variable is O(1).
//! Conversions happen at the API boundary only.

use crate::error::{Error, Result};

/// Reference frequency ω₀ in s⁻¹.
pub const OMEGA_0: f64 = 1.0e16;

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Reduced Planck constant in J·s (CODATA 2018, exact in SI).
pub const HBAR: f64 = 1.054_571_817e-34;

/// ħc in J·m.
pub const HBAR_C: f64 = HBAR * SPEED_OF_LIGHT;

/// The internal length unit c/ω₀ expressed in nanometres.
pub const LENGTH_UNIT_NM: f64 = SPEED_OF_LIGHT / OMEGA_0 * 1.0e9;

/// Product ω₀ · 1 fs, i.e. how many ω₀ periods (in radians) fit in one femtosecond.
const OMEGA_0_FS: f64 = 10.0;

/// Converts an angular frequency in s⁻¹ to ω₀ units.
pub fn from_per_second(omega: f64) -> f64 {
    omega / OMEGA_0
}

/// Converts an angular frequency in ω₀ units to s⁻¹.
pub fn to_per_second(omega: f64) -> f64 {
    omega * OMEGA_0
}

/// Damping rate γ = 1/τ in ω₀ units for a relaxation time given in femtoseconds.
pub fn gamma_from_tau_fs(tau_fs: f64) -> f64 {
    1.0 / (tau_fs * OMEGA_0_FS)
}

/// Relaxation time in femtoseconds for a damping rate in ω₀ units.
pub fn tau_fs_from_gamma(gamma: f64) -> f64 {
    1.0 / (gamma * OMEGA_0_FS)
}

/// A length stored in internal units of c/ω₀.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Length(f64);

impl Length {
    pub const INFINITE: Length = Length(f64::INFINITY);

    /// Wraps a value already expressed in c/ω₀ units.
    pub const fn internal(value: f64) -> Self {
        Length(value)
    }

    pub fn nanometers(nm: f64) -> Self {
        Length(nm / LENGTH_UNIT_NM)
    }

    pub fn meters(m: f64) -> Self {
        Length::nanometers(m * 1.0e9)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn as_nm(self) -> f64 {
        self.0 * LENGTH_UNIT_NM
    }

    pub fn as_m(self) -> f64 {
        self.as_nm() * 1.0e-9
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub(crate) fn check_positive(self, name: &'static str) -> Result<Self> {
        if self.0 > 0.0 && !self.0.is_nan() {
            Ok(self)
        } else {
            Err(Error::InvalidParameter {
                name,
                value: self.as_nm(),
                reason: "length must be positive",
            })
        }
    }
}
