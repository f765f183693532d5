//! Independent oracles shared by the integration suites.
//!
//! Everything here is computed by a route separate from the library code it
//! checks: pointer statistics come from closed-form Gaussian overlap
//! integrals instead of grid quadrature, and spin amplitudes are written out
//! directly as spinor products instead of going through the state algebra.

#![allow(dead_code)]

use num_complex::Complex64;
use pointersim_core::amplitudes::PathAmplitudeTable;
use pointersim_core::pointer::{JointDistribution, QuadratureGrid};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Closed-form Gaussian-pointer statistics for one final state, from the
/// overlap integrals
/// `∫ G(f-a) G(f-b) df = exp(-(a-b)^2 / 8σ^2)` and
/// `∫ f G(f-a) G(f-b) df = (a+b)/2 · exp(-(a-b)^2 / 8σ^2)`.
pub struct GaussianOracle {
    /// Post-selection probability at this width.
    pub probability: f64,
    /// `∫ f P(F_i, f) df` (the unconditional mean reading).
    pub weighted_reading: f64,
    /// Conditional mean reading.
    pub conditional_mean: f64,
    /// Conditional mean momentum.
    pub momentum_mean: f64,
}

pub fn gaussian_oracle(
    table: &PathAmplitudeTable<f64>,
    eigenvalues: &[f64],
    beta: f64,
    sigma: f64,
    i: usize,
) -> GaussianOracle {
    let row = table.row(i);
    let shifts: Vec<f64> = eigenvalues.iter().map(|b| beta * b).collect();
    let sigma_l_sq = 1.0 / (4.0 * sigma * sigma);
    let mut probability = 0.0;
    let mut weighted = 0.0;
    let mut momentum = 0.0;
    for (j, aj) in row.iter().enumerate() {
        for (k, ak) in row.iter().enumerate() {
            let cross = (*aj * ak.conj()).re;
            let anti = (*aj * ak.conj()).im;
            let gap = shifts[j] - shifts[k];
            let w = (-gap * gap / (8.0 * sigma * sigma)).exp();
            probability += cross * w;
            weighted += cross * 0.5 * (shifts[j] + shifts[k]) * w;
            // ∫ λ G(λ)² e^{-iλ gap} dλ = -i gap σ_λ² e^{-gap² σ_λ²/2}, and
            // Re[(A_j A_k*)(-i gap σ_λ²)] = Im[A_j A_k*] gap σ_λ².
            momentum += anti * gap * sigma_l_sq * w;
        }
    }
    GaussianOracle {
        probability,
        weighted_reading: weighted,
        conditional_mean: weighted / probability,
        momentum_mean: momentum / probability,
    }
}

/// The four spin path amplitudes written directly as spinor products, used
/// as the reference for the scenario builder and for tuning scans.
/// Indexing: `spin_amplitudes(..)[i][j] = A(F_{i+1} <- b_{j+1} <- I)`.
pub fn spin_amplitudes(
    theta: f64,
    theta_prime: f64,
    phi: f64,
    phi_prime: f64,
) -> [[Complex64; 2]; 2] {
    let (c1, s1) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let (c2, s2) = ((theta_prime / 2.0).cos(), (theta_prime / 2.0).sin());
    let rel = Complex64::new((phi - phi_prime).cos(), (phi - phi_prime).sin());
    [
        [
            (c(c2 * c1, 0.0) + rel * (s2 * s1)) * c1,
            (c(c2 * s1, 0.0) - rel * (s2 * c1)) * s1,
        ],
        [
            (c(s2 * c1, 0.0) - rel * (c2 * s1)) * c1,
            (c(s2 * s1, 0.0) + rel * (c2 * c1)) * s1,
        ],
    ]
}

/// Weak value of the first projector for the first final state, from the
/// reference spin amplitudes.
pub fn spin_projector_weak_value(
    theta: f64,
    theta_prime: f64,
    phi: f64,
    phi_prime: f64,
) -> Complex64 {
    let amps = spin_amplitudes(theta, theta_prime, phi, phi_prime);
    amps[0][0] / (amps[0][0] + amps[0][1])
}

/// Simpson mass of a density row restricted to `[lo, hi]` (window snapped
/// inward to grid points).
pub fn window_mass(grid: &QuadratureGrid<f64>, density: &[f64], lo: f64, hi: f64) -> f64 {
    let mut start = 0;
    while grid.value(start) < lo {
        start += 1;
    }
    let mut end = start;
    while end + 1 < grid.points() && grid.value(end + 1) <= hi {
        end += 1;
    }
    if (end - start) % 2 == 1 {
        end -= 1;
    }
    let mut acc = density[start] + density[end];
    for (offset, &s) in density[start + 1..end].iter().enumerate() {
        acc += if offset % 2 == 0 { 4.0 * s } else { 2.0 * s };
    }
    acc * grid.step() / 3.0
}

/// Max pointwise difference between a joint distribution's marginal and a
/// reference density on the same grid.
pub fn max_marginal_defect(jd: &JointDistribution<f64>, reference: &[f64]) -> f64 {
    jd.marginal()
        .iter()
        .zip(reference)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}
