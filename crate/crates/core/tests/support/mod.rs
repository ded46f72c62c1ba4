//! Test-only reference computations, independent of the adaptive quadrature.

#![allow(dead_code)]

use std::f64::consts::PI;

use casimir::lifshitz::{integrand, LayeredStack};
use rayon::prelude::*;

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

/// η by the trapezoid rule on an `n × n` grid uniform in (ln ξ, ln Q).
///
/// Both axes span [1e-7/L, 40/L]; the neglected strips contribute O(1e-7)
/// relative and e^{−80} respectively.
pub fn trapezoid_eta(stack: &LayeredStack, n: usize) -> f64 {
    let gap = stack.gap().value();
    let (lo, hi) = ((1e-7 / gap).ln(), (40.0 / gap).ln());
    let h = (hi - lo) / (n - 1) as f64;
    let nodes: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let x = (lo + h * i as f64).exp();
            let w = if i == 0 || i == n - 1 { 0.5 * h } else { h };
            (x, w * x)
        })
        .collect();
    let rows: Vec<f64> = nodes
        .par_iter()
        .map(|&(xi, wxi)| {
            let row: f64 = nodes
                .iter()
                .map(|&(q, wq)| wq * integrand(stack, xi, q).unwrap())
                .sum();
            wxi * row
        })
        .collect();
    let total: f64 = rows.iter().sum();
    120.0 * gap.powi(4) / PI.powi(4) * total
}
