//! Monte Carlo inverse moments with divergence diagnostics.
//!
//! An estimate of an infinite moment is still a finite number, so the result
//! carries the evidence (running-mean trace, mass concentration, Hill index)
//! instead of refusing to answer.

use serde::{Deserialize, Serialize};

use crate::combinatorics::Partition;
use crate::ensembles::{sample_bidiagonal, sample_compound_wishart, CompoundSpec, LaguerreParams, Substreams};
use crate::error::{param, Result};
use crate::spectra::{eigenvalues_hermitian, inverse_gram_spectrum, trace_power_of_inverse, Spectrum};

use super::tail::{hill, HillEstimate};

pub const MIN_MOMENT_TRIALS: usize = 1000;

/// Relative distance between a late running mean and the final mean that counts as drift.
pub const DRIFT_TOLERANCE: f64 = 0.10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub trials: usize,
    pub mean: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceFlag {
    /// The largest single summand carries more than `1/(4 ln N)` of the total.
    MassConcentration,
    /// Some running mean from `N/10` draws on is more than 10% off the final mean.
    RunningMeanDrift,
    /// Hill index of `λ₁⁻¹` is at most `c`.
    HeavyTail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub trials: usize,
    pub checkpoints: Vec<Checkpoint>,
    pub max_share: f64,
    pub hill: HillEstimate,
    pub flags: Vec<DivergenceFlag>,
}

impl MomentEstimate {
    pub fn is_stable(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Max-summand share above which the sample mean is deemed to be carried by one draw.
///
/// With tail index exactly 1 the largest of `N` summands holds a share decaying
/// only like `1/ln N`; with a finite mean the share decays polynomially.
pub fn mass_concentration_threshold(trials: usize) -> f64 {
    1.0 / (4.0 * (trials as f64).ln())
}

/// Trial counts `⌈10^{j/2}⌉ ≥ 10` below `trials`, then `trials` itself.
pub fn checkpoint_schedule(trials: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for j in 2.. {
        let t = 10f64.powf(j as f64 / 2.0).ceil() as usize;
        if t >= trials {
            break;
        }
        out.push(t);
    }
    out.push(trials);
    out
}

/// Diagnostics for the summands of a moment estimate, in trial order, with the
/// tail sample (`λ₁⁻¹` or `μ₁⁻¹`) used for the Hill index.
pub fn diagnose(values: &[f64], tail: &[f64], c: u32, hill_k: Option<usize>) -> Result<MomentEstimate> {
    let n = values.len();
    if n < MIN_MOMENT_TRIALS {
        return param(format!("moment estimate needs at least {MIN_MOMENT_TRIALS} trials, got {n}"));
    }
    let schedule = checkpoint_schedule(n);
    let mut checkpoints = Vec::with_capacity(schedule.len());
    let mut sum = 0.0;
    let mut next = 0;
    for (i, v) in values.iter().enumerate() {
        sum += v;
        if i + 1 == schedule[next] {
            checkpoints.push(Checkpoint { trials: i + 1, mean: sum / (i + 1) as f64 });
            next += 1;
        }
    }
    let mean = sum / n as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let stderr = (var / n as f64).sqrt();
    let max_share = values.iter().cloned().fold(0.0, f64::max) / sum;
    let hill = hill(tail, hill_k)?;

    let mut flags = Vec::new();
    if max_share > mass_concentration_threshold(n) {
        flags.push(DivergenceFlag::MassConcentration);
    }
    let drifting = checkpoints
        .iter()
        .filter(|cp| cp.trials * 10 >= n)
        .any(|cp| (cp.mean - mean).abs() > DRIFT_TOLERANCE * mean.abs());
    if drifting {
        flags.push(DivergenceFlag::RunningMeanDrift);
    }
    if hill.index <= c as f64 {
        flags.push(DivergenceFlag::HeavyTail);
    }
    Ok(MomentEstimate { estimate: mean, stderr, trials: n, checkpoints, max_share, hill, flags })
}

fn check_trials(trials: usize) -> Result<()> {
    if trials < MIN_MOMENT_TRIALS {
        return param(format!("moment estimate needs at least {MIN_MOMENT_TRIALS} trials, got {trials}"));
    }
    Ok(())
}

/// Per draw: the inverse spectrum of a Laguerre matrix.
fn inverse_spectra(params: &LaguerreParams, trials: usize, streams: &Substreams) -> Result<Vec<Spectrum>> {
    streams
        .map_trials(trials, |rng| inverse_gram_spectrum(&sample_bidiagonal(params, rng)))
        .into_iter()
        .collect()
}

/// `Tr_π(S⁻¹) = Π_parts Tr(S^{-p})` from the eigenvalues of `S⁻¹`.
fn trace_product(inverse: &Spectrum, pi_type: &Partition) -> f64 {
    pi_type.parts().iter().map(|&p| trace_power_of_inverse(inverse, p as u32)).product()
}

/// Sample mean of `Tr(S^{-c})` over Laguerre draws.
pub fn mc_inverse_moment(
    params: &LaguerreParams,
    c: u32,
    trials: usize,
    streams: &Substreams,
    hill_k: Option<usize>,
) -> Result<MomentEstimate> {
    if c == 0 {
        return param("moment order c must be at least 1");
    }
    mc_trace_product(params, &Partition::new(vec![c as usize])?, trials, streams, hill_k)
}

/// Sample mean of `Tr_π(S⁻¹)` for a cycle type `π ⊢ c`; diagnostics use `c = |π|`.
pub fn mc_trace_product(
    params: &LaguerreParams,
    pi_type: &Partition,
    trials: usize,
    streams: &Substreams,
    hill_k: Option<usize>,
) -> Result<MomentEstimate> {
    check_trials(trials)?;
    if pi_type.is_empty() {
        return param("cycle type must be non-empty");
    }
    let spectra = inverse_spectra(params, trials, streams)?;
    let values: Vec<f64> = spectra.iter().map(|s| trace_product(s, pi_type)).collect();
    let tail: Vec<f64> = spectra.iter().map(|s| *s.eigenvalues.last().unwrap()).collect();
    diagnose(&values, &tail, pi_type.q() as u32, hill_k)
}

/// Sample mean of `Tr(Q^{-c})` over compound Wishart draws, with Hill on `μ₁⁻¹`.
pub fn mc_compound_inverse_moment(
    spec: &CompoundSpec,
    c: u32,
    trials: usize,
    streams: &Substreams,
    hill_k: Option<usize>,
) -> Result<MomentEstimate> {
    check_trials(trials)?;
    if c == 0 {
        return param("moment order c must be at least 1");
    }
    let spectra: Vec<Spectrum> = streams
        .map_trials(trials, |rng| eigenvalues_hermitian(&sample_compound_wishart(spec, rng)))
        .into_iter()
        .collect::<Result<_>>()?;
    let mut values = Vec::with_capacity(trials);
    let mut tail = Vec::with_capacity(trials);
    for s in &spectra {
        values.push(crate::spectra::trace_inverse_power(s, c)?);
        tail.push(1.0 / s.smallest());
    }
    diagnose(&values, &tail, c, hill_k)
}
