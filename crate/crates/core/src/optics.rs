//! Reflection of evanescent waves at imaginary frequency.
//!
//! On the imaginary axis every wavevector is real: medium `m` carries the
//! normal decay constant κ_m = √(ε_m ξ² + Q²), and both Fresnel amplitudes
//! are real numbers in (−1, 1). Frequencies are in ω₀ units, wavevectors in
//! ω₀/c and lengths in c/ω₀.

use crate::error::{Error, Result};
use crate::materials::DielectricModel;

/// Above this value of 2δ the film round-trip factor e^{−2δ} is taken as zero.
const UNDERFLOW_EXPONENT: f64 = 745.0;

/// Imaginary frequency ξ together with the in-plane wavevector Q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveContext {
    xi: f64,
    q: f64,
    k: f64,
}

impl WaveContext {
    pub fn new(xi: f64, q: f64) -> Result<Self> {
        if !(xi > 0.0) || !xi.is_finite() {
            return Err(Error::Domain(format!("xi must be positive, got {xi}")));
        }
        if !(q >= 0.0) || !q.is_finite() {
            return Err(Error::Domain(format!("Q must be non-negative, got {q}")));
        }
        Ok(Self::new_unchecked(xi, q))
    }

    #[inline]
    pub(crate) fn new_unchecked(xi: f64, q: f64) -> Self {
        Self {
            xi,
            q,
            k: (xi * xi + q * q).sqrt(),
        }
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Vacuum decay constant k = √(ξ² + Q²).
    pub fn k(&self) -> f64 {
        self.k
    }

    /// κ = √(ε ξ² + Q²) inside a medium of permittivity `eps`.
    #[inline]
    pub fn kappa(&self, eps: f64) -> f64 {
        let radicand = eps * self.xi * self.xi + self.q * self.q;
        debug_assert!(radicand >= 0.0);
        radicand.sqrt()
    }
}

/// Reflection amplitudes for the two polarizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerReflection {
    pub r_s: f64,
    pub r_p: f64,
}

#[inline]
fn interface(eps_i: f64, kappa_i: f64, eps_j: f64, kappa_j: f64) -> LayerReflection {
    LayerReflection {
        r_s: (kappa_i - kappa_j) / (kappa_i + kappa_j),
        r_p: (eps_j * kappa_i - eps_i * kappa_j) / (eps_j * kappa_i + eps_i * kappa_j),
    }
}

/// Fresnel amplitudes for the interface from medium `i` into medium `j`.
pub fn fresnel(ctx: &WaveContext, eps_i: f64, eps_j: f64) -> LayerReflection {
    interface(eps_i, ctx.kappa(eps_i), eps_j, ctx.kappa(eps_j))
}

/// Film phase thickness δ = d √(ξ²(ε − 1) + k²) for an explicit decay constant `k`.
pub fn optical_length_at_k(xi: f64, k: f64, eps_film: f64, d: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::Domain(format!(
            "film thickness must be positive, got {d}"
        )));
    }
    let radicand = xi * xi * (eps_film - 1.0) + k * k;
    debug_assert!(radicand >= 0.0);
    Ok(d * radicand.sqrt())
}

/// Film phase thickness δ at the wave context `ctx`.
///
/// Equal to `d * ctx.kappa(eps_film)` since k² = ξ² + Q².
pub fn optical_length(ctx: &WaveContext, eps_film: f64, d: f64) -> Result<f64> {
    optical_length_at_k(ctx.xi, ctx.k, eps_film, d)
}

/// Combines the top and bottom interfaces of a film with round-trip factor `x = e^{−2δ}`.
#[inline]
pub(crate) fn compose(top: f64, bottom: f64, x: f64) -> f64 {
    (top + bottom * x) / (1.0 + top * bottom * x)
}

#[inline]
pub(crate) fn round_trip(two_delta: f64) -> f64 {
    if two_delta > UNDERFLOW_EXPONENT {
        0.0
    } else {
        (-two_delta).exp()
    }
}

/// Reflection from vacuum onto a film of thickness `d` on a semi-infinite substrate.
///
/// `d = 0` gives the bare substrate and `d = ∞` the bare film material.
pub fn layer_reflection(
    ctx: &WaveContext,
    eps_film: f64,
    d: f64,
    eps_substrate: f64,
) -> LayerReflection {
    debug_assert!(d >= 0.0);
    let k0 = ctx.k;
    if d == 0.0 {
        return interface(1.0, k0, eps_substrate, ctx.kappa(eps_substrate));
    }
    let kf = ctx.kappa(eps_film);
    let top = interface(1.0, k0, eps_film, kf);
    let x = round_trip(2.0 * d * kf);
    if x == 0.0 {
        return top;
    }
    let bottom = interface(eps_film, kf, eps_substrate, ctx.kappa(eps_substrate));
    LayerReflection {
        r_s: compose(top.r_s, bottom.r_s, x),
        r_p: compose(top.r_p, bottom.r_p, x),
    }
}

fn percent_diff_at_k(
    xi: f64,
    k: f64,
    film: &DielectricModel,
    reference: &DielectricModel,
    d: f64,
) -> Result<f64> {
    let eps_film = film.epsilon_iw(xi)?;
    let eps_ref = reference.epsilon_iw(xi)?;
    let delta = optical_length_at_k(xi, k, eps_film, d)?;
    let delta_ref = optical_length_at_k(xi, k, eps_ref, d)?;
    Ok(100.0 * (delta - delta_ref).abs() / delta)
}

/// Percent difference Δ = 100 |δ − δ_ref| / δ between the optical lengths of
/// the film model and a reference model.
pub fn optical_length_percent_diff(
    ctx: &WaveContext,
    film: &DielectricModel,
    reference: &DielectricModel,
    d: f64,
) -> Result<f64> {
    percent_diff_at_k(ctx.xi, ctx.k, film, reference, d)
}

/// Same as [`optical_length_percent_diff`] at a fixed decay constant `k`,
/// independent of ξ. Used for sweeps in ξ at constant ck/ω₀.
pub fn optical_length_percent_diff_fixed_k(
    xi: f64,
    k: f64,
    film: &DielectricModel,
    reference: &DielectricModel,
    d: f64,
) -> Result<f64> {
    if !(xi > 0.0) || !(k > 0.0) {
        return Err(Error::Domain(format!(
            "need xi > 0 and k > 0, got {xi}, {k}"
        )));
    }
    percent_diff_at_k(xi, k, film, reference, d)
}
