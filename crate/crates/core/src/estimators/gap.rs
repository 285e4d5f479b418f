//! Gap probability at zero, `P(λ₁ < a)`, and the fit of its power law in `a`.

use serde::{Deserialize, Serialize};

use crate::ensembles::{sample_compound_coupled, sample_laguerre, CompoundSpec, LaguerreParams, Substreams};
use crate::error::{param, Error, Result};
use crate::spectra::{eigenvalues_hermitian, gershgorin_bounds, smallest_eigenvalue};

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// Default fit grid `{10^-1, 10^-1.5, 10^-2, 10^-2.5}`.
pub const DEFAULT_GRID: [f64; 4] = [0.1, 0.031_622_776_601_683_79, 0.01, 0.003_162_277_660_168_379];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapEstimate {
    pub a: f64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub hits: usize,
    pub trials: usize,
}

impl GapEstimate {
    pub fn from_counts(a: f64, hits: usize, trials: usize) -> Self {
        let (ci_low, ci_high) = wilson_interval(hits, trials);
        GapEstimate { a, p_hat: hits as f64 / trials as f64, ci_low, ci_high, hits, trials }
    }

    /// Binomial standard error `sqrt(p(1-p)/N)` at the point estimate.
    pub fn stderr(&self) -> f64 {
        (self.p_hat * (1.0 - self.p_hat) / self.trials as f64).sqrt()
    }
}

/// Wilson score interval at 95%.
pub fn wilson_interval(hits: usize, trials: usize) -> (f64, f64) {
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = Z95 * Z95;
    let center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = Z95 / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if hits == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if hits == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    /// Slope of `log p̂` against `log a`: the empirical `α`.
    pub alpha_hat: f64,
    /// Intercept at `log a = 0`: the empirical `log C`.
    pub intercept: f64,
    /// Standard error of the slope from the regression residuals.
    pub stderr: f64,
    /// `(log a, log p̂)` pairs entering the fit.
    pub points: Vec<(f64, f64)>,
    pub estimates: Vec<GapEstimate>,
}

fn lambda_min(s: &crate::ensembles::SymTridiagonal) -> f64 {
    let (lo, hi) = gershgorin_bounds(s);
    let tol = 4.0 * f64::EPSILON * lo.abs().max(hi.abs());
    smallest_eigenvalue(s, tol.max(f64::MIN_POSITIVE)).expect("sampled matrices are finite")
}

/// `λ₁` for `trials` independent Laguerre draws (draw `i` uses substream `i`).
pub fn smallest_eigenvalues(params: &LaguerreParams, trials: usize, streams: &Substreams) -> Vec<f64> {
    streams.map_trials(trials, |rng| lambda_min(&sample_laguerre(params, rng)))
}

/// `(μ₁, λ₁)` of `Q = X*DX` and `S = X*X` on the same draw `X`.
pub fn coupled_smallest_eigenvalues(
    spec: &CompoundSpec,
    trials: usize,
    streams: &Substreams,
) -> Result<Vec<(f64, f64)>> {
    streams
        .map_trials(trials, |rng| {
            let (q, s) = sample_compound_coupled(spec, rng);
            Ok((eigenvalues_hermitian(&q)?.smallest(), eigenvalues_hermitian(&s)?.smallest()))
        })
        .into_iter()
        .collect()
}

/// Gap estimates at each `a` from one shared set of `λ₁` draws.
pub fn gap_curve(smallest: &[f64], grid: &[f64]) -> Vec<GapEstimate> {
    grid.iter()
        .map(|&a| {
            let hits = smallest.iter().filter(|&&l| l < a).count();
            GapEstimate::from_counts(a, hits, smallest.len())
        })
        .collect()
}

/// Fraction of draws with `λ₁ < a`, with its Wilson interval.
pub fn gap_probability(
    params: &LaguerreParams,
    a: f64,
    trials: usize,
    streams: &Substreams,
) -> Result<GapEstimate> {
    Ok(gap_probabilities(params, &[a], trials, streams)?.remove(0))
}

/// [`gap_probability`] at every point of `grid`, all sharing the same draws.
pub fn gap_probabilities(
    params: &LaguerreParams,
    grid: &[f64],
    trials: usize,
    streams: &Substreams,
) -> Result<Vec<GapEstimate>> {
    if grid.is_empty() {
        return param("gap grid is empty");
    }
    if let Some(bad) = grid.iter().find(|a| !(**a > 0.0)) {
        return param(format!("gap threshold a must be positive, got {bad}"));
    }
    if trials < 100 {
        return param(format!("gap probability needs at least 100 trials, got {trials}"));
    }
    Ok(gap_curve(&smallest_eigenvalues(params, trials, streams), grid))
}

pub fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 3 {
        return param(format!("exponent fit needs at least 3 grid points, got {}", grid.len()));
    }
    if let Some(bad) = grid.iter().find(|a| !(**a > 0.0 && **a <= 0.5)) {
        return param(format!("grid point {bad} outside (0, 0.5]"));
    }
    if grid.windows(2).any(|w| w[0] <= w[1]) {
        return param("grid must be strictly decreasing");
    }
    Ok(())
}

/// Unweighted least squares of `log p̂` on `log a`.
pub fn fit_from_estimates(estimates: Vec<GapEstimate>) -> Result<ExponentFit> {
    if let Some(empty) = estimates.iter().find(|e| e.hits == 0) {
        return Err(Error::InsufficientTrials { a: empty.a, trials: empty.trials });
    }
    if estimates.len() < 3 {
        return param("exponent fit needs at least 3 grid points");
    }
    let points: Vec<(f64, f64)> = estimates.iter().map(|e| (e.a.ln(), e.p_hat.ln())).collect();
    let k = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let rss: f64 = points.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let stderr = (rss / (k - 2.0) / sxx).sqrt();
    Ok(ExponentFit { alpha_hat: slope, intercept, stderr, points, estimates })
}

/// Fits `P(λ₁ < a) ≈ C a^α` over a decreasing grid in `(0, 0.5]`, every grid
/// point sharing the same `trials` draws.
pub fn fit_gap_exponent(
    params: &LaguerreParams,
    grid: &[f64],
    trials: usize,
    streams: &Substreams,
) -> Result<ExponentFit> {
    validate_grid(grid)?;
    if trials < 100 {
        return param(format!("exponent fit needs at least 100 trials, got {trials}"));
    }
    let smallest = smallest_eigenvalues(params, trials, streams);
    fit_from_estimates(gap_curve(&smallest, grid))
}

/// Coupled gap estimates for a compound matrix at threshold `a`:
/// `(P̂(λ₁ < a/ξ_max), P̂(μ₁ < a), P̂(λ₁ < a/ξ_min))`, which are ordered on every
/// sample because `ξ_min λ₁ ≤ μ₁ ≤ ξ_max λ₁` holds draw by draw.
pub fn coupled_gap_bounds(
    spec: &CompoundSpec,
    draws: &[(f64, f64)],
    a: f64,
) -> (GapEstimate, GapEstimate, GapEstimate) {
    let n = draws.len();
    let count = |pred: &dyn Fn(&(f64, f64)) -> bool| draws.iter().filter(|d| pred(d)).count();
    let lower = count(&|&(_, l)| l < a / spec.xi_max());
    let middle = count(&|&(mu, _)| mu < a);
    let upper = count(&|&(_, l)| l < a / spec.xi_min());
    (
        GapEstimate::from_counts(a / spec.xi_max(), lower, n),
        GapEstimate::from_counts(a, middle, n),
        GapEstimate::from_counts(a / spec.xi_min(), upper, n),
    )
}
