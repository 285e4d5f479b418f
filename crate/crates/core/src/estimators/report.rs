//! Aggregated moment reports: verdict, Monte Carlo evidence and, when available,
//! the exact value.

use serde::{Deserialize, Serialize};

use crate::ensembles::{CompoundSpec, LaguerreParams, Substreams};
use crate::error::Result;
use crate::rational::Rational;
use crate::weingarten::{exact_inverse_moment, MomentOrder, MAX_ENUMERATED_ORDER};

use super::moment::{mc_compound_inverse_moment, mc_inverse_moment, Checkpoint, DivergenceFlag, MomentEstimate};
use super::tail::HillEstimate;
use super::verdict::{compound_finiteness_verdict, finiteness_verdict};

const SCALE_NOTE: &str = "Wishart-normalized exact moment multiplied by 2^-c to match the Laguerre eigenvalue scale";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub m: usize,
    pub n: usize,
    pub beta: f64,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McSection {
    pub estimate: Option<f64>,
    pub stderr: Option<f64>,
    pub trials: usize,
    pub max_share: f64,
    pub checkpoints: Vec<Checkpoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub params: ReportParams,
    pub c: u32,
    pub seed: u64,
    pub analytic_finite: bool,
    pub mc: McSection,
    pub hill: HillEstimate,
    pub exact: Option<Rational>,
    pub exact_note: Option<String>,
    pub flags: Vec<DivergenceFlag>,
}

impl MomentReport {
    fn assemble(
        params: ReportParams,
        c: u32,
        seed: u64,
        analytic_finite: bool,
        est: MomentEstimate,
        exact: (Option<Rational>, Option<String>),
    ) -> Self {
        let finite = |x: f64| x.is_finite().then_some(x);
        MomentReport {
            params,
            c,
            seed,
            analytic_finite,
            mc: McSection {
                estimate: finite(est.estimate),
                stderr: finite(est.stderr),
                trials: est.trials,
                max_share: est.max_share,
                checkpoints: est.checkpoints,
            },
            hill: est.hill,
            exact: exact.0,
            exact_note: exact.1,
            flags: est.flags,
        }
    }

    pub fn tail_index_hat(&self) -> f64 {
        self.hill.index
    }
}

/// `2^{-c} E[Tr(W^{-c})]` for `β = 2` when the moment is finite and small enough
/// to enumerate; otherwise a note saying why there is no exact value.
fn exact_section(params: &LaguerreParams, c: u32) -> Result<(Option<Rational>, Option<String>)> {
    let c_us = c as usize;
    if params.beta != 2.0 {
        return Ok((None, Some("exact moments are available only for beta = 2".into())));
    }
    if c_us > params.m - params.n {
        return Ok((None, Some(format!("c >= m - n + 1 = {}: the moment is infinite", params.m - params.n + 1))));
    }
    if c_us > MAX_ENUMERATED_ORDER {
        return Ok((None, Some(format!("c > {MAX_ENUMERATED_ORDER}: beyond the enumeration limit"))));
    }
    let wishart = exact_inverse_moment(&MomentOrder::trace_power(c_us), params.m, params.n)?;
    Ok((Some(wishart * Rational::new(1, 1i64 << c)), Some(SCALE_NOTE.into())))
}

pub fn full_report(
    params: &LaguerreParams,
    c: u32,
    trials: usize,
    streams: &Substreams,
    hill_k: Option<usize>,
) -> Result<MomentReport> {
    let est = mc_inverse_moment(params, c, trials, streams, hill_k)?;
    let exact = exact_section(params, c)?;
    let rp = ReportParams { m: params.m, n: params.n, beta: params.beta, alpha: params.alpha, xi: None };
    Ok(MomentReport::assemble(rp, c, streams.master(), finiteness_verdict(params, c), est, exact))
}

/// Compound report: Hill index on `μ₁⁻¹`; no exact value.
pub fn full_compound_report(
    spec: &CompoundSpec,
    c: u32,
    trials: usize,
    streams: &Substreams,
    hill_k: Option<usize>,
) -> Result<MomentReport> {
    let finite = compound_finiteness_verdict(spec, c)?;
    let est = mc_compound_inverse_moment(spec, c, trials, streams, hill_k)?;
    let lag = spec.laguerre();
    let rp = ReportParams { m: spec.m, n: spec.n, beta: lag.beta, alpha: lag.alpha, xi: Some(spec.xi.clone()) };
    let note = Some("no exact value for compound Wishart matrices".to_string());
    Ok(MomentReport::assemble(rp, c, streams.master(), finite, est, (None, note)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_value_is_scale_bridged() {
        let p = LaguerreParams::new(6, 2, 2.0).unwrap();
        let r = full_report(&p, 1, 2000, &Substreams::new(3), None).unwrap();
        assert!(r.analytic_finite);
        assert_eq!(r.exact, Some(Rational::new(1, 4)));
        assert!(r.exact_note.is_some());
    }

    #[test]
    fn no_exact_value_outside_beta_two_or_past_the_pole() {
        let s = Substreams::new(4);
        let r = full_report(&LaguerreParams::new(6, 4, 1.0).unwrap(), 1, 1000, &s, None).unwrap();
        assert_eq!(r.exact, None);
        let r = full_report(&LaguerreParams::new(4, 3, 2.0).unwrap(), 2, 1000, &s, None).unwrap();
        assert_eq!(r.exact, None);
        assert!(!r.analytic_finite);
    }

    #[test]
    fn json_round_trip_is_identity() {
        let p = LaguerreParams::new(5, 3, 2.0).unwrap();
        let r = full_report(&p, 2, 1500, &Substreams::new(5), None).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: MomentReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);

        let spec = CompoundSpec::new(5, 2, 2, vec![1.0, 2.0, 2.0, 3.0, 5.0]).unwrap();
        let r = full_compound_report(&spec, 3, 1000, &Substreams::new(5), None).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: MomentReport = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert!(r.analytic_finite && r.exact.is_none());
    }
}
