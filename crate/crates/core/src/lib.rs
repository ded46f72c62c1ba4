//! Casimir pressure between a gold half-space and a thin gold film on a
//! silicon substrate, across the film's conductor–insulator transition.
//!
//! The crate is organized bottom-up:
//!
//! - [`materials`]: permittivity models on the imaginary frequency axis
//!   (Drude, plasma, Lorentz oscillator, Drude-Smith) and the tabulated
//!   film parameters.
//! - [`optics`]: Fresnel and thin-film reflection amplitudes, and the film
//!   optical length.
//! - [`quadrature`]: adaptive Gauss–Kronrod integration on the half line.
//! - [`lifshitz`]: the pressure double integral and the reduction factor.
//! - [`scenarios`]: curve generators, written out through [`curve`].
//!
//! Frequencies are in units of ω₀ = 10¹⁶ s⁻¹ and lengths in c/ω₀; see [`units`].
//!
//! ```
//! use casimir::lifshitz::{reduction_factor, LayeredStack, QuadratureSpec, StackDefaults};
//! use casimir::materials::lookup_film;
//! use casimir::units::Length;
//!
//! let film = lookup_film(6.4)?;
//! let stack = LayeredStack::tabulated_film(&film, Length::nanometers(400.0), &StackDefaults::default())?;
//! let eta = reduction_factor(&stack, &QuadratureSpec::with_rel_tol(1e-4)?)?;
//! assert!(eta > 0.0 && eta < 1.0);
//! # Ok::<(), casimir::Error>(())
//! ```

// `!(x > 0.0)` is the NaN-rejecting form used in parameter checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curve;
mod error;
pub mod lifshitz;
pub mod materials;
pub mod optics;
pub mod quadrature;
pub mod scenarios;
pub mod units;

pub use error::{Error, Result};

// The guide under book/ is compiled as doc-tests so its snippets stay in sync.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/units.md")]
    mod units {}
    #[doc = include_str!("../../../book/src/dielectric-models.md")]
    mod dielectric_models {}
    #[doc = include_str!("../../../book/src/film-optics.md")]
    mod film_optics {}
    #[doc = include_str!("../../../book/src/lifshitz-integral.md")]
    mod lifshitz_integral {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
