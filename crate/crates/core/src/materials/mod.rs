//! Dielectric response of the plates on the imaginary frequency axis.
//!
//! Every model is evaluated at ω = iξ with ξ > 0, where the permittivity is
//! real and at least one. Frequencies are in ω₀ units throughout.
//!
//! The Drude-Smith model keeps only the first backscattering coefficient
//! `c1`. Substituting ω = iξ into
//!
//! ```text
//! ε(ω) = 1 − ω_p² / (ω(ω + iγ)) · [1 + iγ c1 / (ω + iγ)]
//! ```
//!
//! gives the real closed form used here,
//!
//! ```text
//! ε(iξ) = 1 + ω_p² / (ξ(ξ + γ)) · (ξ + γ(1 + c1)) / (ξ + γ).
//! ```
//!
//! The bracket is written as a single quotient so that the `c1 = −1` limit
//! does not lose digits to cancellation at small ξ, and so that `c1 = 0`
//! multiplies the Drude term by exactly one.

mod registry;
mod table1;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub use registry::MaterialRegistry;
pub use table1::{lookup_film, table1_registry, FilmRecord, PERCOLATION_THICKNESS_NM};

fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}

/// Parameters of the free-electron Drude model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DrudeRaw")]
pub struct DrudeParams {
    omega_p: f64,
    gamma: f64,
}

#[derive(Deserialize)]
struct DrudeRaw {
    omega_p: f64,
    gamma: f64,
}

impl TryFrom<DrudeRaw> for DrudeParams {
    type Error = Error;
    fn try_from(raw: DrudeRaw) -> Result<Self> {
        DrudeParams::new(raw.omega_p, raw.gamma)
    }
}

impl DrudeParams {
    pub fn new(omega_p: f64, gamma: f64) -> Result<Self> {
        Ok(Self {
            omega_p: require_positive("omega_p", omega_p)?,
            gamma: require_positive("gamma", gamma)?,
        })
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Dissipationless plasma model, ε(iξ) = 1 + ω_p²/ξ².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlasmaRaw")]
pub struct PlasmaParams {
    omega_p: f64,
}

#[derive(Deserialize)]
struct PlasmaRaw {
    omega_p: f64,
}

impl TryFrom<PlasmaRaw> for PlasmaParams {
    type Error = Error;
    fn try_from(raw: PlasmaRaw) -> Result<Self> {
        PlasmaParams::new(raw.omega_p)
    }
}

impl PlasmaParams {
    pub fn new(omega_p: f64) -> Result<Self> {
        Ok(Self {
            omega_p: require_positive("omega_p", omega_p)?,
        })
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }
}

/// Single undamped Lorentz oscillator, used for semiconductor substrates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LorentzRaw")]
pub struct LorentzParams {
    eps_static: f64,
    omega_res: f64,
}

#[derive(Deserialize)]
struct LorentzRaw {
    eps_static: f64,
    omega_res: f64,
}

impl TryFrom<LorentzRaw> for LorentzParams {
    type Error = Error;
    fn try_from(raw: LorentzRaw) -> Result<Self> {
        LorentzParams::new(raw.eps_static, raw.omega_res)
    }
}

impl LorentzParams {
    pub fn new(eps_static: f64, omega_res: f64) -> Result<Self> {
        if !(eps_static > 1.0 && eps_static.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "eps_static",
                value: eps_static,
                reason: "static permittivity must exceed 1",
            });
        }
        Ok(Self {
            eps_static,
            omega_res: require_positive("omega_res", omega_res)?,
        })
    }

    pub fn eps_static(&self) -> f64 {
        self.eps_static
    }

    pub fn omega_res(&self) -> f64 {
        self.omega_res
    }
}

/// Drude-Smith parameters truncated after the first backscattering term.
///
/// `c1 = 0` is the Drude model and `c1 = −1` is full backscattering, for
/// which the DC conductivity vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DrudeSmithRaw")]
pub struct DrudeSmithParams {
    omega_p: f64,
    gamma: f64,
    c1: f64,
}

#[derive(Deserialize)]
struct DrudeSmithRaw {
    omega_p: f64,
    gamma: f64,
    c1: f64,
}

impl TryFrom<DrudeSmithRaw> for DrudeSmithParams {
    type Error = Error;
    fn try_from(raw: DrudeSmithRaw) -> Result<Self> {
        DrudeSmithParams::new(raw.omega_p, raw.gamma, raw.c1)
    }
}

impl DrudeSmithParams {
    pub fn new(omega_p: f64, gamma: f64, c1: f64) -> Result<Self> {
        if !(-1.0..=0.0).contains(&c1) {
            return Err(Error::InvalidParameter {
                name: "c1",
                value: c1,
                reason: "backscattering coefficient must lie in [-1, 0]",
            });
        }
        Ok(Self {
            omega_p: require_positive("omega_p", omega_p)?,
            gamma: require_positive("gamma", gamma)?,
            c1,
        })
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }
}

/// A dielectric model for one material.
///
/// In JSON the model is an object tagged by `"model"`, e.g.
/// `{"model": "drude", "omega_p": 1.319, "gamma": 0.005556}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum DielectricModel {
    Drude(DrudeParams),
    Plasma(PlasmaParams),
    LorentzOscillator(LorentzParams),
    DrudeSmith(DrudeSmithParams),
}

impl DielectricModel {
    pub fn drude(omega_p: f64, gamma: f64) -> Result<Self> {
        DrudeParams::new(omega_p, gamma).map(Self::Drude)
    }

    pub fn plasma(omega_p: f64) -> Result<Self> {
        PlasmaParams::new(omega_p).map(Self::Plasma)
    }

    pub fn lorentz(eps_static: f64, omega_res: f64) -> Result<Self> {
        LorentzParams::new(eps_static, omega_res).map(Self::LorentzOscillator)
    }

    pub fn drude_smith(omega_p: f64, gamma: f64, c1: f64) -> Result<Self> {
        DrudeSmithParams::new(omega_p, gamma, c1).map(Self::DrudeSmith)
    }

    /// Short lowercase name of the model family.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Drude(_) => "drude",
            Self::Plasma(_) => "plasma",
            Self::LorentzOscillator(_) => "lorentz_oscillator",
            Self::DrudeSmith(_) => "drude_smith",
        }
    }

    /// ε(iξ) without checking `xi`. Callers guarantee `xi > 0`.
    #[inline]
    pub(crate) fn eps_unchecked(&self, xi: f64) -> f64 {
        match *self {
            Self::Drude(DrudeParams { omega_p, gamma }) => {
                1.0 + omega_p * omega_p / (xi * (xi + gamma))
            }
            Self::Plasma(PlasmaParams { omega_p }) => 1.0 + omega_p * omega_p / (xi * xi),
            Self::LorentzOscillator(LorentzParams {
                eps_static,
                omega_res,
            }) => {
                let x = xi / omega_res;
                1.0 + (eps_static - 1.0) / (1.0 + x * x)
            }
            Self::DrudeSmith(DrudeSmithParams { omega_p, gamma, c1 }) => {
                let shifted = xi + gamma;
                let drude = omega_p * omega_p / (xi * shifted);
                let backscatter = (xi + gamma * (1.0 + c1)) / shifted;
                1.0 + drude * backscatter
            }
        }
    }

    /// Permittivity at imaginary frequency iξ.
    pub fn epsilon_iw(&self, xi: f64) -> Result<f64> {
        if xi > 0.0 && !xi.is_nan() {
            Ok(self.eps_unchecked(xi))
        } else {
            Err(Error::Domain(format!(
                "imaginary frequency must be positive, got {xi}"
            )))
        }
    }

    /// The ξ → 0⁺ limit of ε(iξ), or `None` when it diverges.
    ///
    /// Models with a nonzero DC conductivity (Drude, Drude-Smith with
    /// `c1 > −1`) and the plasma model diverge.
    pub fn static_limit(&self) -> Option<f64> {
        match *self {
            Self::LorentzOscillator(p) => Some(p.eps_static),
            Self::DrudeSmith(p) if p.c1 == -1.0 => {
                Some(1.0 + (p.omega_p * p.omega_p) / (p.gamma * p.gamma))
            }
            _ => None,
        }
    }
}

/// Permittivity of `model` at imaginary frequency `xi` (ω₀ units).
pub fn epsilon_iw(model: &DielectricModel, xi: f64) -> Result<f64> {
    model.epsilon_iw(xi)
}

/// Drude-Smith conductivity at real frequency `omega` (ω₀ units).
///
/// Returns σ(ω) = ω_p²/(4π(γ − iω)) · [1 + c1 γ/(γ − iω)] in units of ω₀
/// (Gaussian units).
pub fn conductivity_drude_smith(params: &DrudeSmithParams, omega: f64) -> Result<Complex64> {
    if !(omega >= 0.0) {
        return Err(Error::Domain(format!(
            "real frequency must be non-negative, got {omega}"
        )));
    }
    let denom = Complex64::new(params.gamma, -omega);
    let drude = params.omega_p * params.omega_p / (4.0 * PI * denom);
    Ok(drude * (1.0 + params.c1 * params.gamma / denom))
}

/// σ(0)/σ_D(0) for the Drude-Smith model, which is `1 + c1`.
pub fn dc_conductivity_ratio(params: &DrudeSmithParams) -> f64 {
    1.0 + params.c1
}

/// Default half-space gold: Drude with the bulk parameters of the 20 nm film.
pub fn bulk_gold() -> DielectricModel {
    let bulk = &table1_registry()[0];
    DielectricModel::Drude(
        DrudeParams::new(bulk.omega_p(), bulk.gamma()).expect("table parameters are valid"),
    )
}

/// Default silicon substrate as a single Lorentz oscillator.
pub const SILICON_EPS_STATIC: f64 = 11.87;
pub const SILICON_OMEGA_RES: f64 = 0.66;

pub fn silicon() -> DielectricModel {
    DielectricModel::LorentzOscillator(
        LorentzParams::new(SILICON_EPS_STATIC, SILICON_OMEGA_RES).expect("valid constants"),
    )
}
