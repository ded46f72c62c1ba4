//! Zero-temperature Lifshitz pressure between two planar bodies.
//!
//! Body 1 is a half-space. Body 2 is a film of finite thickness on a
//! semi-infinite substrate. With ξ the imaginary frequency and Q the in-plane
//! wavevector (k² = ξ² + Q²) the attractive pressure is
//!
//! ```text
//! P = ħc/(2π²) ∫₀^∞ dξ ∫₀^∞ dQ  Q k Σ_{s,p} r₁r₂e^{−2kL} / (1 − r₁r₂e^{−2kL})
//! ```
//!
//! which equals the ideal-mirror value ħcπ²/(240 L⁴) when r₁r₂ = 1. All
//! pressures are reported as positive magnitudes.
//!
//! The double integral is evaluated directly as the reduction factor
//! η = P/P_ideal, which is O(1), and converted to pascals afterwards.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::materials::{self, DielectricModel, FilmRecord};
use crate::optics::{self, WaveContext};
use crate::quadrature::{self, Estimate, PanelEstimate, Tolerance, Transform};
use crate::units::{Length, HBAR_C};

/// Largest exponent 2kL for which e^{−2kL} is not treated as zero.
const GAP_UNDERFLOW: f64 = 745.0;

/// Ideal-mirror Casimir pressure ħcπ²/(240 L⁴) in Pa.
pub fn ideal_casimir_pressure(gap: Length) -> Result<f64> {
    let l = gap.as_m();
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::Domain(format!(
            "separation must be positive, got {l} m"
        )));
    }
    Ok(HBAR_C * PI * PI / (240.0 * l.powi(4)))
}

/// Materials used for the half-space and the substrate when only a film is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StackDefaults {
    pub half_space: DielectricModel,
    pub substrate: DielectricModel,
}

impl Default for StackDefaults {
    fn default() -> Self {
        Self {
            half_space: materials::bulk_gold(),
            substrate: materials::silicon(),
        }
    }
}

/// Two bodies facing each other across a vacuum gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayeredStack {
    body1: DielectricModel,
    film: DielectricModel,
    thickness: Length,
    substrate: DielectricModel,
    gap: Length,
}

impl LayeredStack {
    /// `thickness` may be zero (bare substrate) or [`Length::INFINITE`] (film half-space).
    pub fn new(
        body1: DielectricModel,
        film: DielectricModel,
        thickness: Length,
        substrate: DielectricModel,
        gap: Length,
    ) -> Result<Self> {
        gap.check_positive("gap")?;
        if !gap.value().is_finite() {
            return Err(Error::InvalidParameter {
                name: "gap",
                value: gap.value(),
                reason: "separation must be finite",
            });
        }
        if !(thickness.value() >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "thickness",
                value: thickness.as_nm(),
                reason: "film thickness must be non-negative",
            });
        }
        Ok(Self {
            body1,
            film,
            thickness,
            substrate,
            gap,
        })
    }

    /// Two half-spaces.
    pub fn half_spaces(
        body1: DielectricModel,
        body2: DielectricModel,
        gap: Length,
    ) -> Result<Self> {
        Self::new(body1, body2, Length::INFINITE, body2, gap)
    }

    /// A tabulated gold film on the default substrate facing the default half-space.
    pub fn tabulated_film(
        record: &FilmRecord,
        gap: Length,
        defaults: &StackDefaults,
    ) -> Result<Self> {
        Self::new(
            defaults.half_space,
            record.model(),
            record.thickness(),
            defaults.substrate,
            gap,
        )
    }

    pub fn with_gap(self, gap: Length) -> Result<Self> {
        Self::new(self.body1, self.film, self.thickness, self.substrate, gap)
    }

    /// The same stack with the half-space and the film exchanged.
    ///
    /// Only meaningful when body 2 is itself a half-space.
    pub fn swapped(self) -> Result<Self> {
        Self::half_spaces(self.film, self.body1, self.gap)
    }

    pub fn body1(&self) -> &DielectricModel {
        &self.body1
    }

    pub fn film(&self) -> &DielectricModel {
        &self.film
    }

    pub fn thickness(&self) -> Length {
        self.thickness
    }

    pub fn substrate(&self) -> &DielectricModel {
        &self.substrate
    }

    pub fn gap(&self) -> Length {
        self.gap
    }

    #[inline]
    fn slice(&self, xi: f64) -> Slice {
        Slice {
            xi,
            eps1: self.body1.eps_unchecked(xi),
            eps_film: self.film.eps_unchecked(xi),
            eps_substrate: self.substrate.eps_unchecked(xi),
            thickness: self.thickness.value(),
            gap: self.gap.value(),
        }
    }
}

/// Permittivities of all media at one imaginary frequency.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Slice {
    xi: f64,
    eps1: f64,
    eps_film: f64,
    eps_substrate: f64,
    thickness: f64,
    gap: f64,
}

impl Slice {
    /// G_s + G_p at in-plane wavevector `q`.
    #[inline]
    fn mode_sum(&self, q: f64) -> f64 {
        let ctx = WaveContext::new_unchecked(self.xi, q);
        let k = ctx.k();
        let two_kl = 2.0 * k * self.gap;
        if two_kl > GAP_UNDERFLOW {
            return 0.0;
        }
        let r1 = optics::fresnel(&ctx, 1.0, self.eps1);
        let r2 = optics::layer_reflection(&ctx, self.eps_film, self.thickness, self.eps_substrate);
        let decay = (-two_kl).exp();
        let loop_s = r1.r_s * r2.r_s * decay;
        let loop_p = r1.r_p * r2.r_p * decay;
        assert!(
            loop_s.abs() < 1.0 && loop_p.abs() < 1.0,
            "round-trip amplitude reached unity at xi={}, Q={q}",
            self.xi
        );
        loop_s / (1.0 - loop_s) + loop_p / (1.0 - loop_p)
    }

    #[inline]
    fn density(&self, q: f64) -> f64 {
        let k = (self.xi * self.xi + q * q).sqrt();
        q * k * self.mode_sum(q)
    }
}

/// Integrand Q·k·(G_s + G_p) of the (ξ, Q) double integral.
pub fn integrand(stack: &LayeredStack, xi: f64, q: f64) -> Result<f64> {
    WaveContext::new(xi, q)?;
    Ok(stack.slice(xi).density(q))
}

/// Numerical settings for the double integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    rel_tol: f64,
    abs_tol: f64,
    max_refinements: u32,
    transform: Transform,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            abs_tol: 1e-12,
            max_refinements: 20,
            transform: Transform::Rational,
        }
    }
}

impl QuadratureSpec {
    /// `abs_tol` is an absolute floor on the error of η. `max_refinements`
    /// bounds the number of bisections leading to any one panel, per axis.
    pub fn new(
        rel_tol: f64,
        abs_tol: f64,
        max_refinements: u32,
        transform: Transform,
    ) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-2) {
            return Err(Error::InvalidParameter {
                name: "rel_tol",
                value: rel_tol,
                reason: "relative tolerance must lie in (0, 1e-2]",
            });
        }
        if !(abs_tol >= 0.0) || !abs_tol.is_finite() {
            return Err(Error::InvalidParameter {
                name: "abs_tol",
                value: abs_tol,
                reason: "absolute tolerance must be non-negative",
            });
        }
        if max_refinements < 1 {
            return Err(Error::InvalidParameter {
                name: "max_refinements",
                value: max_refinements as f64,
                reason: "at least one refinement is required",
            });
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_refinements,
            transform,
        })
    }

    pub fn with_rel_tol(rel_tol: f64) -> Result<Self> {
        let d = Self::default();
        Self::new(rel_tol, d.abs_tol, d.max_refinements, d.transform)
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_refinements(&self) -> u32 {
        self.max_refinements
    }

    pub fn transform(&self) -> Transform {
        self.transform
    }

    fn outer(&self) -> Tolerance {
        Tolerance {
            rel: self.rel_tol,
            abs: self.abs_tol,
            max_depth: self.max_refinements,
        }
    }

    fn inner(&self, abs: f64) -> Tolerance {
        Tolerance {
            rel: 0.1 * self.rel_tol,
            abs,
            max_depth: self.max_refinements,
        }
    }
}

/// Outcome of a pressure calculation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    /// Magnitude of the attractive pressure in Pa.
    pub pressure: f64,
    /// Reduction factor P/P_ideal.
    pub eta: f64,
    /// Quadrature error estimate on `pressure`, in Pa.
    pub est_error: f64,
    /// Quadrature error estimate on `eta`.
    pub eta_error: f64,
    /// Number of integrand evaluations.
    pub evaluations: u64,
}

/// 120 L⁴/π⁴, the factor turning the raw double integral into η.
fn eta_prefactor(gap: f64) -> f64 {
    120.0 * gap.powi(4) / PI.powi(4)
}

fn finish(stack: &LayeredStack, est: Estimate) -> Result<ForceResult> {
    if !est.converged {
        return Err(Error::NotConverged {
            estimate: est.value,
            achieved_error: est.error,
            evaluations: est.evaluations,
        });
    }
    let ideal = ideal_casimir_pressure(stack.gap)?;
    Ok(ForceResult {
        pressure: est.value * ideal,
        eta: est.value,
        est_error: est.error * ideal,
        eta_error: est.error,
        evaluations: est.evaluations,
    })
}

/// Casimir pressure for `stack`, integrating over imaginary frequency and
/// in-plane wavevector.
///
/// Both half lines are mapped onto (0, 1) with scale 1/(2L). The outer
/// frequency integral is adaptive; at every outer node the wavevector
/// integral is itself adaptive at a tenth of the relative tolerance, and its
/// error bar is carried into the outer estimate.
pub fn casimir_force(stack: &LayeredStack, spec: &QuadratureSpec) -> Result<ForceResult> {
    let gap = stack.gap.value();
    let scale = 0.5 / gap;
    let prefactor = eta_prefactor(gap);
    let transform = spec.transform;

    let frequency_node = |t: f64| -> PanelEstimate {
        let (xi, jac) = transform.map(t, scale);
        if !jac.is_finite() || !(xi > 0.0) || 2.0 * xi * gap > GAP_UNDERFLOW {
            return PanelEstimate::default();
        }
        let weight = prefactor * jac;
        let slice = stack.slice(xi);
        let inner = quadrature::integrate_half_line(
            |q| slice.density(q),
            transform,
            scale,
            spec.inner(0.1 * spec.abs_tol / weight),
        );
        PanelEstimate {
            value: weight * inner.value,
            error: weight * inner.error,
            evaluations: inner.evaluations,
        }
    };

    let est = quadrature::integrate_adaptive(0.0, 1.0, spec.outer(), |a, b| {
        quadrature::nested_panel(frequency_node, a, b)
    });
    finish(stack, est)
}

/// Same pressure computed in the (k, Q) variables, with the inner integral
/// over k ∈ (Q, ∞) of (k²/ξ)·(G_s + G_p), ξ = √(k² − Q²).
///
/// The 1/ξ endpoint singularity at k = Q is removed by k = Q + v². Slower
/// than [`casimir_force`] and kept as an independent route.
pub fn casimir_force_wavenumber_form(
    stack: &LayeredStack,
    spec: &QuadratureSpec,
) -> Result<ForceResult> {
    let gap = stack.gap.value();
    let scale = 0.5 / gap;
    let v_scale = scale.sqrt();
    let prefactor = eta_prefactor(gap);
    let transform = spec.transform;

    let wavevector_node = |t: f64| -> PanelEstimate {
        let (q, jac) = transform.map(t, scale);
        if !jac.is_finite() || !(q > 0.0) || 2.0 * q * gap > GAP_UNDERFLOW {
            return PanelEstimate::default();
        }
        let weight = prefactor * jac * q;
        let inner = quadrature::integrate_half_line(
            |v| {
                let root = (2.0 * q + v * v).sqrt();
                let xi = v * root;
                if !(xi > 0.0) {
                    return 0.0;
                }
                let k = q + v * v;
                2.0 * k * k / root * stack.slice(xi).mode_sum(q)
            },
            transform,
            v_scale,
            spec.inner(0.1 * spec.abs_tol / weight),
        );
        PanelEstimate {
            value: weight * inner.value,
            error: weight * inner.error,
            evaluations: inner.evaluations,
        }
    };

    let est = quadrature::integrate_adaptive(0.0, 1.0, spec.outer(), |a, b| {
        quadrature::nested_panel(wavevector_node, a, b)
    });
    finish(stack, est)
}

/// Reduction factor η = P/P_ideal.
pub fn reduction_factor(stack: &LayeredStack, spec: &QuadratureSpec) -> Result<f64> {
    casimir_force(stack, spec).map(|r| r.eta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw_slice(eps1: f64, eps_film: f64, thickness: f64, eps_substrate: f64, xi: f64) -> Slice {
        Slice {
            xi,
            eps1,
            eps_film,
            eps_substrate,
            thickness,
            gap: 1.0,
        }
    }

    #[test]
    fn ideal_pressure_values() {
        let p1 = ideal_casimir_pressure(Length::meters(1e-6)).unwrap();
        assert!((p1 - 1.300e-3).abs() < 1.3e-6, "{p1}");
        let p100 = ideal_casimir_pressure(Length::nanometers(100.0)).unwrap();
        assert!((p100 / p1 - 1e4).abs() < 1e-8);
        let p2 = ideal_casimir_pressure(Length::nanometers(2000.0)).unwrap();
        assert!((p2 / p1 - 1.0 / 16.0).abs() < 1e-15);
        assert!(ideal_casimir_pressure(Length::nanometers(0.0)).is_err());
        assert!(ideal_casimir_pressure(Length::nanometers(-3.0)).is_err());
    }

    #[test]
    fn vacuum_body_gives_zero_density() {
        for &(xi, q) in &[(0.01, 0.0), (0.3, 0.2), (2.0, 5.0)] {
            assert_eq!(raw_slice(1.0, 40.0, 0.3, 11.0, xi).density(q), 0.0);
            assert_eq!(raw_slice(40.0, 1.0, f64::INFINITY, 1.0, xi).density(q), 0.0);
            assert_eq!(raw_slice(40.0, 1.0, 0.0, 1.0, xi).density(q), 0.0);
        }
    }

    #[test]
    fn perfect_mirrors_density() {
        let (xi, q) = (0.4, 0.7);
        let got = raw_slice(1e14, 1e14, f64::INFINITY, 1e14, xi).density(q);
        let k = xi.hypot(q);
        let e = (-2.0 * k).exp();
        let ideal = q * k * 2.0 * e / (1.0 - e);
        assert!((got - ideal).abs() < 1e-6 * ideal);
    }

    #[test]
    fn far_tail_is_zero() {
        let stack = LayeredStack::half_spaces(
            materials::bulk_gold(),
            materials::bulk_gold(),
            Length::internal(1.0),
        )
        .unwrap();
        assert_eq!(integrand(&stack, 400.0, 1.0).unwrap(), 0.0);
        assert_eq!(integrand(&stack, 1.0, 400.0).unwrap(), 0.0);
        assert!(integrand(&stack, 0.0, 1.0).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0.0, 0.0, 5, Transform::Rational).is_err());
        assert!(QuadratureSpec::new(0.1, 0.0, 5, Transform::Rational).is_err());
        assert!(QuadratureSpec::new(1e-3, -1.0, 5, Transform::Rational).is_err());
        assert!(QuadratureSpec::new(1e-3, 0.0, 0, Transform::Rational).is_err());
        assert!(QuadratureSpec::new(1e-2, 0.0, 1, Transform::Exponential).is_ok());
    }

    #[test]
    fn stack_validation() {
        let au = materials::bulk_gold();
        assert!(LayeredStack::half_spaces(au, au, Length::nanometers(0.0)).is_err());
        assert!(LayeredStack::new(
            au,
            au,
            Length::nanometers(-1.0),
            au,
            Length::nanometers(10.0)
        )
        .is_err());
        assert!(LayeredStack::new(
            au,
            au,
            Length::nanometers(0.0),
            au,
            Length::nanometers(10.0)
        )
        .is_ok());
    }

    #[test]
    fn perfect_mirrors_reduce_to_unity() {
        let mirror = DielectricModel::plasma(1e6).unwrap();
        let stack = LayeredStack::half_spaces(mirror, mirror, Length::nanometers(400.0)).unwrap();
        let spec = QuadratureSpec::default();
        let r = casimir_force(&stack, &spec).unwrap();
        assert!((r.eta - 1.0).abs() < 2.0 * spec.rel_tol(), "{r:?}");
        let ideal = ideal_casimir_pressure(stack.gap()).unwrap();
        assert!((r.pressure / ideal - r.eta).abs() < 1e-15);
    }

    #[test]
    fn zero_thickness_equals_substrate_half_space() {
        let spec = QuadratureSpec::default();
        let gap = Length::nanometers(400.0);
        let film = materials::lookup_film(20.0).unwrap().model();
        let bare = LayeredStack::new(
            materials::bulk_gold(),
            film,
            Length::nanometers(0.0),
            materials::silicon(),
            gap,
        )
        .unwrap();
        let si =
            LayeredStack::half_spaces(materials::bulk_gold(), materials::silicon(), gap).unwrap();
        let a = reduction_factor(&bare, &spec).unwrap();
        let b = reduction_factor(&si, &spec).unwrap();
        assert!((a - b).abs() <= spec.rel_tol() * b);
    }

    #[test]
    fn tight_depth_limit_reports_best_estimate() {
        let spec = QuadratureSpec::new(1e-9, 0.0, 1, Transform::Rational).unwrap();
        let stack = LayeredStack::tabulated_film(
            &materials::lookup_film(6.4).unwrap(),
            Length::nanometers(400.0),
            &StackDefaults::default(),
        )
        .unwrap();
        match casimir_force(&stack, &spec) {
            Err(Error::NotConverged {
                estimate,
                achieved_error,
                ..
            }) => {
                assert!(estimate > 0.0 && estimate < 1.0);
                assert!(achieved_error > 0.0);
            }
            other => panic!("expected convergence failure, got {other:?}"),
        }
    }
}
