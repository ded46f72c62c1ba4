//! Drude-Smith best-fit parameters for thermally evaporated gold films on
//! silicon, across the percolation threshold at 6.4 nm.

use crate::error::{Error, Result};
use crate::units;

use super::{DielectricModel, DrudeSmithParams};

/// One row of the film parameter table, stored exactly as tabulated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilmRecord {
    pub thickness_nm: f64,
    /// Plasma frequency in units of 10¹⁵ s⁻¹.
    pub omega_p_1e15: f64,
    pub tau_fs: f64,
    pub c1: f64,
    /// σ(0)/σ_D(0) as tabulated.
    pub dc_ratio: f64,
}

#[allow(clippy::approx_constant)] // measured 6.28e15 s⁻¹, not 2π
const TABLE1: [FilmRecord; 5] = [
    FilmRecord {
        thickness_nm: 20.0,
        omega_p_1e15: 13.19,
        tau_fs: 18.0,
        c1: 0.0,
        dc_ratio: 1.0,
    },
    FilmRecord {
        thickness_nm: 15.0,
        omega_p_1e15: 10.05,
        tau_fs: 19.0,
        c1: 0.0,
        dc_ratio: 1.0,
    },
    FilmRecord {
        thickness_nm: 10.0,
        omega_p_1e15: 6.28,
        tau_fs: 19.0,
        c1: 0.0,
        dc_ratio: 1.0,
    },
    FilmRecord {
        thickness_nm: 6.4,
        omega_p_1e15: 1.25,
        tau_fs: 80.0,
        c1: -0.7,
        dc_ratio: 0.3,
    },
    FilmRecord {
        thickness_nm: 4.0,
        omega_p_1e15: 1.88,
        tau_fs: 20.0,
        c1: -1.0,
        dc_ratio: 0.0,
    },
];

/// Critical thickness of the conductor-insulator transition, in nm.
pub const PERCOLATION_THICKNESS_NM: f64 = 6.4;

impl FilmRecord {
    /// Plasma frequency in ω₀ units.
    pub fn omega_p(&self) -> f64 {
        units::from_per_second(self.omega_p_1e15 * 1.0e15)
    }

    /// Damping rate 1/τ in ω₀ units.
    pub fn gamma(&self) -> f64 {
        units::gamma_from_tau_fs(self.tau_fs)
    }

    pub fn params(&self) -> DrudeSmithParams {
        DrudeSmithParams::new(self.omega_p(), self.gamma(), self.c1)
            .expect("tabulated parameters satisfy the model invariants")
    }

    pub fn model(&self) -> DielectricModel {
        DielectricModel::DrudeSmith(self.params())
    }

    pub fn thickness(&self) -> units::Length {
        units::Length::nanometers(self.thickness_nm)
    }
}

/// The five tabulated films, thickest first.
pub fn table1_registry() -> &'static [FilmRecord] {
    &TABLE1
}

/// Looks up the row for a film thickness in nm.
pub fn lookup_film(thickness_nm: f64) -> Result<FilmRecord> {
    TABLE1
        .iter()
        .find(|r| (r.thickness_nm - thickness_nm).abs() < 1e-9)
        .copied()
        .ok_or(Error::FilmNotFound { thickness_nm })
}
