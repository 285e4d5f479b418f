//! Heavy-tail statistics: Hill's estimator and the layer-cake moment identity.

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HillEstimate {
    pub k: usize,
    pub index: f64,
}

/// `⌈N^0.6⌉`, clamped into the admissible range `[10, N/2]` when possible.
pub fn default_hill_k(samples: usize) -> usize {
    let k = (samples as f64).powf(0.6).ceil() as usize;
    k.min(samples / 2).max(10)
}

/// Hill's estimator over the `k` largest order statistics:
/// `k / Σ_{i=1..k} log(x_(i) / x_(k+1))` with `x_(1) ≥ x_(2) ≥ …`.
pub fn hill_tail_index(samples: &[f64], k: usize) -> Result<f64> {
    if samples.len() < k + 1 {
        return param(format!("Hill estimator needs at least k + 1 = {} samples, got {}", k + 1, samples.len()));
    }
    if k < 10 || k > samples.len() / 2 {
        return param(format!("Hill k = {k} outside [10, {}]", samples.len() / 2));
    }
    if let Some(bad) = samples.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return param(format!("Hill estimator needs positive finite samples, got {bad}"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let threshold = sorted[k];
    let sum: f64 = sorted[..k].iter().map(|x| (x / threshold).ln()).sum();
    if sum <= 0.0 {
        return Err(Error::Domain("Hill estimator undefined: top order statistics are all equal".into()));
    }
    Ok(k as f64 / sum)
}

pub fn hill(samples: &[f64], k: Option<usize>) -> Result<HillEstimate> {
    let k = k.unwrap_or_else(|| default_hill_k(samples.len()));
    Ok(HillEstimate { k, index: hill_tail_index(samples, k)? })
}

/// `E[Z^c]` from the empirical survival function via `c ∫₀^∞ t^{c-1} P(Z > t) dt`.
///
/// On an empirical measure the survival function is a step function, so the
/// integral is a finite sum over the gaps between order statistics.
pub fn moment_via_tail_integral(samples: &[f64], c: f64) -> Result<f64> {
    if samples.is_empty() {
        return param("layer-cake moment needs at least one sample");
    }
    if let Some(bad) = samples.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return param(format!("layer-cake moment needs positive samples, got {bad}"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut prev = 0.0f64;
    let mut acc = 0.0;
    for (i, &z) in sorted.iter().enumerate() {
        // P(Z > t) = (N - i)/N on [z_(i-1), z_(i))
        let survival = (sorted.len() - i) as f64 / n;
        acc += survival * (z.powf(c) - prev.powf(c));
        prev = z;
    }
    Ok(acc)
}
