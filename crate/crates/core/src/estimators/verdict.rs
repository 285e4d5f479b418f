use crate::ensembles::{CompoundSpec, Flavor, LaguerreParams};
use crate::error::Result;

/// `E[Tr(S^{-c})] < ∞` iff `c < (m - n + 1)β/2`.
///
/// Evaluated as `2c < (m - n + 1)β` so that the boundary `c = α` is decided
/// without rounding for integer and half-integer `β`.
pub fn finiteness_verdict(params: &LaguerreParams, c: u32) -> bool {
    2.0 * (c as f64) < (params.m - params.n + 1) as f64 * params.beta
}

/// Same threshold for a non-degenerate compound Wishart matrix; independent of `ξ`.
/// Only `β ∈ {1, 2}` is accepted.
pub fn compound_finiteness_verdict(spec: &CompoundSpec, c: u32) -> Result<bool> {
    Flavor::from_beta(spec.beta)?;
    Ok(2 * (c as usize) < (spec.m - spec.n + 1) * spec.beta as usize)
}
