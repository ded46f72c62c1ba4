//! Globally adaptive Gauss–Kronrod quadrature on semi-infinite intervals.
//!
//! The half line is mapped onto (0, 1) and integrated with the 7/15-point
//! Gauss–Kronrod pair. The worst panel (largest error estimate) is bisected
//! until the summed error meets the tolerance. Panel sums are always
//! accumulated left to right so the result does not depend on the order in
//! which panels were refined or on how many threads evaluated them.
//!
//! Nesting is expressed through [`PanelEstimate`]: an outer integrand may
//! itself be an adaptive integral, and its error is propagated into the
//! outer panel's error.

// Node and weight tables are quoted at their published precision.
#![allow(clippy::excessive_precision)]

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Kronrod abscissae on [−1, 1]; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Number of abscissae in one Kronrod panel.
pub const NODES_PER_PANEL: usize = 15;

/// Hard cap on the number of panels in one adaptive integration.
const MAX_PANELS: usize = 1 << 14;

/// Map from t ∈ (0, 1) onto x ∈ (0, ∞).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    /// x = s·t/(1 − t)
    #[default]
    Rational,
    /// x = −2s·ln(1 − t); an e^{−x/s} tail maps to a zero of order one at t = 1.
    Exponential,
}

impl Transform {
    /// Returns x(t) and dx/dt for the given scale.
    #[inline]
    pub fn map(self, t: f64, scale: f64) -> (f64, f64) {
        let u = 1.0 - t;
        match self {
            Transform::Rational => (scale * t / u, scale / (u * u)),
            Transform::Exponential => (-2.0 * scale * (-t).ln_1p(), 2.0 * scale / u),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Transform::Rational => "rational",
            Transform::Exponential => "exponential",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "rational" => Some(Transform::Rational),
            "exponential" => Some(Transform::Exponential),
            _ => None,
        }
    }
}

/// Integral over one panel: value, error estimate, and integrand calls spent.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PanelEstimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: u64,
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: u64,
    pub converged: bool,
}

/// Abscissae of the 15-point rule on [a, b], in the fixed order used by [`kronrod_sum`].
pub fn kronrod_nodes(a: f64, b: f64) -> [f64; NODES_PER_PANEL] {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut nodes = [0.0; NODES_PER_PANEL];
    for j in 0..7 {
        nodes[2 * j] = center - half * XGK[j];
        nodes[2 * j + 1] = center + half * XGK[j];
    }
    nodes[14] = center;
    nodes
}

/// QUADPACK error rescaling.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

/// Applies the Gauss–Kronrod pair to values sampled at [`kronrod_nodes`].
///
/// `inner_errors` are error bars on the sampled values themselves (zero for
/// an exact integrand); they are added with the Kronrod weights.
pub fn kronrod_sum(
    a: f64,
    b: f64,
    values: &[f64; NODES_PER_PANEL],
    inner_errors: &[f64; NODES_PER_PANEL],
) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let f_center = values[14];
    let mut res_k = WGK[7] * f_center;
    let mut res_g = WG[3] * f_center;
    let mut res_abs = res_k.abs();
    let mut propagated = WGK[7] * inner_errors[14];
    for j in 0..7 {
        let (f1, f2) = (values[2 * j], values[2 * j + 1]);
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        propagated += WGK[j] * (inner_errors[2 * j] + inner_errors[2 * j + 1]);
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((values[2 * j] - mean).abs() + (values[2 * j + 1] - mean).abs());
    }
    let h = half.abs();
    let err = rescale_error((res_k - res_g) * half, res_abs * h, res_asc * h);
    (res_k * half, err + propagated * h)
}

/// One 15-point panel of a plain integrand.
pub fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> PanelEstimate {
    let nodes = kronrod_nodes(a, b);
    let values = nodes.map(&f);
    let (value, error) = kronrod_sum(a, b, &values, &[0.0; NODES_PER_PANEL]);
    PanelEstimate {
        value,
        error,
        evaluations: NODES_PER_PANEL as u64,
    }
}

/// One panel whose node values are themselves integrals, evaluated in parallel.
pub fn nested_panel<F>(f: F, a: f64, b: f64) -> PanelEstimate
where
    F: Fn(f64) -> PanelEstimate + Sync,
{
    let nodes = kronrod_nodes(a, b);
    let inner: Vec<PanelEstimate> = nodes.par_iter().map(|&t| f(t)).collect();
    let values: [f64; NODES_PER_PANEL] = std::array::from_fn(|i| inner[i].value);
    let errors: [f64; NODES_PER_PANEL] = std::array::from_fn(|i| inner[i].error);
    let (value, error) = kronrod_sum(a, b, &values, &errors);
    PanelEstimate {
        value,
        error,
        evaluations: inner.iter().map(|e| e.evaluations).sum(),
    }
}

/// Tolerances for [`integrate_adaptive`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    /// Maximum number of bisections leading to any single panel.
    pub max_depth: u32,
}

struct Panel {
    a: f64,
    b: f64,
    depth: u32,
    est: PanelEstimate,
}

fn totals(panels: &[Panel]) -> (f64, f64) {
    // panels are kept sorted by left endpoint
    panels
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.est.value, e + p.est.error))
}

/// Globally adaptive bisection of [a, b] driven by `panel`, which integrates one subinterval.
pub fn integrate_adaptive<P>(a: f64, b: f64, tol: Tolerance, panel: P) -> Estimate
where
    P: Fn(f64, f64) -> PanelEstimate,
{
    let first = panel(a, b);
    let mut evaluations = first.evaluations;
    let mut panels = vec![Panel {
        a,
        b,
        depth: 0,
        est: first,
    }];
    loop {
        let (value, error) = totals(&panels);
        let target = tol.abs.max(tol.rel * value.abs());
        if error <= target {
            return Estimate {
                value,
                error,
                evaluations,
                converged: true,
            };
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.est.error.total_cmp(&y.1.est.error))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let Panel {
            a: lo,
            b: hi,
            depth,
            ..
        } = panels[worst];
        let mid = 0.5 * (lo + hi);
        if depth >= tol.max_depth || panels.len() >= MAX_PANELS || !(lo < mid && mid < hi) {
            return Estimate {
                value,
                error,
                evaluations,
                converged: false,
            };
        }
        let left = panel(lo, mid);
        let right = panel(mid, hi);
        evaluations += left.evaluations + right.evaluations;
        panels[worst] = Panel {
            a: lo,
            b: mid,
            depth: depth + 1,
            est: left,
        };
        panels.insert(
            worst + 1,
            Panel {
                a: mid,
                b: hi,
                depth: depth + 1,
                est: right,
            },
        );
    }
}

/// ∫₀^∞ f(x) dx through `transform` with the given scale.
pub fn integrate_half_line<F>(f: F, transform: Transform, scale: f64, tol: Tolerance) -> Estimate
where
    F: Fn(f64) -> f64,
{
    let mapped = |t: f64| {
        let (x, jac) = transform.map(t, scale);
        if jac.is_finite() {
            let y = f(x);
            if y == 0.0 {
                0.0
            } else {
                y * jac
            }
        } else {
            0.0
        }
    };
    integrate_adaptive(0.0, 1.0, tol, |lo, hi| gauss_kronrod_15(mapped, lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TIGHT: Tolerance = Tolerance {
        rel: 1e-10,
        abs: 0.0,
        max_depth: 30,
    };

    #[test]
    fn weights_integrate_constants() {
        let sum_k: f64 = 2.0 * WGK[..7].iter().sum::<f64>() + WGK[7];
        let sum_g: f64 = 2.0 * WG[..3].iter().sum::<f64>() + WG[3];
        assert!((sum_k - 2.0).abs() < 1e-15);
        assert!((sum_g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn single_panel_is_exact_for_polynomials() {
        let est = gauss_kronrod_15(|x| x.powi(7) - 3.0 * x * x + 1.0, -1.0, 2.0);
        let exact = (256.0 - 1.0) / 8.0 - (8.0 + 1.0) + 3.0;
        assert!((est.value - exact).abs() < 1e-12);
        assert!(est.error < 1e-10);
    }

    #[test]
    fn half_line_integrals() {
        for transform in [Transform::Rational, Transform::Exponential] {
            let est = integrate_half_line(|x| (-x).exp(), transform, 1.0, TIGHT);
            assert!(est.converged);
            assert!((est.value - 1.0).abs() < 1e-10, "{transform:?}: {est:?}");
            // ∫ x³/(e^x − 1) dx = π⁴/15
            let est = integrate_half_line(|x| x.powi(3) / x.exp_m1(), transform, 2.0, TIGHT);
            let exact = std::f64::consts::PI.powi(4) / 15.0;
            assert!(
                (est.value - exact).abs() < 1e-9 * exact,
                "{transform:?}: {est:?}"
            );
            assert!(est.error >= (est.value - exact).abs());
        }
    }

    #[test]
    fn peaked_integrand_refines() {
        // narrow Lorentzian ∫ w/((x−1)² + w²) dx over (0,∞) = π/2 + atan(1/w)
        let w = 1e-3;
        let est = integrate_half_line(
            |x| w / ((x - 1.0).powi(2) + w * w),
            Transform::Rational,
            1.0,
            TIGHT,
        );
        let exact = std::f64::consts::FRAC_PI_2 + (1.0 / w).atan();
        assert!(est.converged);
        assert!((est.value - exact).abs() < 1e-9 * exact);
        assert!(est.evaluations > 15);
    }

    #[test]
    fn depth_limit_reports_non_convergence() {
        let tol = Tolerance {
            rel: 1e-12,
            abs: 0.0,
            max_depth: 2,
        };
        let est = integrate_half_line(
            |x| 1.0 / (x.sqrt() * (1.0 + x)),
            Transform::Rational,
            1.0,
            tol,
        );
        assert!(!est.converged);
        assert!(est.value.is_finite() && est.error > 0.0);
    }

    #[test]
    fn zero_integrand() {
        let est = integrate_half_line(|_| 0.0, Transform::Rational, 1.0, TIGHT);
        assert!(est.converged);
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn nested_error_propagates() {
        // ∫₀¹∫₀¹ (x + y) dy dx = 1 with an artificial inner error bar
        let inner = |x: f64| PanelEstimate {
            value: x + 0.5,
            error: 1e-3,
            evaluations: 1,
        };
        let est = nested_panel(inner, 0.0, 1.0);
        assert!((est.value - 1.0).abs() < 1e-14);
        assert!((est.error - 1e-3).abs() < 1e-12);
        assert_eq!(est.evaluations, 15);
    }

    #[test]
    fn transforms_cover_half_line() {
        for transform in [Transform::Rational, Transform::Exponential] {
            let (x0, _) = transform.map(0.0, 3.0);
            assert_eq!(x0, 0.0);
            let (x, j) = transform.map(0.999, 3.0);
            assert!(x > 10.0 && j > 0.0);
            assert_eq!(Transform::from_name(transform.name()), Some(transform));
        }
    }
}
