//! Closed forms at `n = 1`, where `λ ~ Gamma(shape α, scale 2)` with `α = mβ/2`.

use statrs::function::gamma::{gamma_lr, ln_gamma};

/// `C = 2^{-α} / Γ(α + 1)` in `P(λ < a) ≈ C a^α`.
pub fn n1_gap_constant(alpha: f64) -> f64 {
    (-alpha * std::f64::consts::LN_2 - ln_gamma(alpha + 1.0)).exp()
}

/// Exact `P(λ < a)`: the regularized lower incomplete gamma `P(α, a/2)`.
pub fn n1_gap_cdf(alpha: f64, a: f64) -> f64 {
    gamma_lr(alpha, a / 2.0)
}

/// `E[λ^{-c}] = 2^{-c} Γ(α - c) / Γ(α)`, finite for `c < α`.
pub fn n1_inverse_moment(alpha: f64, c: u32) -> Option<f64> {
    let c = c as f64;
    (c < alpha).then(|| (-c * std::f64::consts::LN_2 + ln_gamma(alpha - c) - ln_gamma(alpha)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert!((n1_gap_constant(2.0) - 0.125).abs() < 1e-15);
        assert!((n1_inverse_moment(4.0, 1).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((n1_inverse_moment(1.5, 1).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(n1_inverse_moment(2.0, 2), None);
        // shape 2: 1 - e^{-x}(1 + x) at x = a/2
        let a: f64 = 0.7;
        let x = a / 2.0;
        assert!((n1_gap_cdf(2.0, a) - (1.0 - (-x).exp() * (1.0 + x))).abs() < 1e-14);
    }
}
