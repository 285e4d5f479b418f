//! Log of the joint eigenvalue density of the `(m, n, β)`-Laguerre ensemble.

use statrs::function::gamma::ln_gamma;

use crate::ensembles::LaguerreParams;
use crate::error::{Error, Result};

use super::Spectrum;

/// `log Z`, with
/// `Z = 2^{-mnβ/2} Π_{j=1..n} Γ(1+β/2) / (Γ(1+βj/2) Γ(β(m-n+j)/2))`.
///
/// `Z` normalizes the symmetric density over the whole orthant `(0, ∞)^n`.
pub fn log_normalization(params: &LaguerreParams) -> f64 {
    let LaguerreParams { m, n, beta, .. } = *params;
    let half = beta / 2.0;
    let mut acc = -((m * n) as f64) * half * std::f64::consts::LN_2;
    for j in 1..=n {
        acc += ln_gamma(1.0 + half) - ln_gamma(1.0 + half * j as f64) - ln_gamma(half * (m - n + j) as f64);
    }
    acc
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Log density of the ordered eigenvalues `λ₁ ≤ … ≤ λ_n`.
///
/// The ordered wedge carries `n!` times the orthant density, so this returns
/// `log n! + log Z + (α-1)Σ log λ_i - ½Σλ_i + β Σ_{k<j} log(λ_j - λ_k)`.
/// Ties give `-∞`.
pub fn log_joint_density(params: &LaguerreParams, spectrum: &Spectrum) -> Result<f64> {
    let lambda = &spectrum.eigenvalues;
    if lambda.len() != params.n {
        return Err(Error::Parameter(format!(
            "expected {} eigenvalues, got {}",
            params.n,
            lambda.len()
        )));
    }
    if let Some(bad) = lambda.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(Error::Domain(format!("eigenvalues must be positive and finite, got {bad}")));
    }
    let mut acc = ln_factorial(params.n) + log_normalization(params);
    for &l in lambda {
        acc += (params.alpha - 1.0) * l.ln() - 0.5 * l;
    }
    for j in 1..lambda.len() {
        for k in 0..j {
            let gap = lambda[j] - lambda[k];
            if gap <= 0.0 {
                return Ok(f64::NEG_INFINITY);
            }
            acc += params.beta * gap.ln();
        }
    }
    Ok(acc)
}
