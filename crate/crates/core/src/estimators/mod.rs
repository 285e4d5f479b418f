//! Gap probabilities, exponent fits, Monte Carlo moments and finiteness verdicts.

pub mod gap;
pub mod moment;
pub mod oracles;
pub mod report;
pub mod tail;
pub mod verdict;

pub use gap::{
    coupled_gap_bounds, coupled_smallest_eigenvalues, fit_gap_exponent, gap_curve, gap_probabilities, gap_probability,
    smallest_eigenvalues, wilson_interval, ExponentFit, GapEstimate, DEFAULT_GRID,
};
pub use moment::{
    mc_compound_inverse_moment, mc_inverse_moment, mc_trace_product, Checkpoint, DivergenceFlag,
    MomentEstimate,
};
pub use oracles::{n1_gap_cdf, n1_gap_constant, n1_inverse_moment};
pub use report::{full_report, full_compound_report, MomentReport};
pub use tail::{default_hill_k, hill, hill_tail_index, moment_via_tail_integral, HillEstimate};
pub use verdict::{compound_finiteness_verdict, finiteness_verdict};
