#![allow(dead_code)]

use laguerre_lab::ensembles::LaguerreParams;
use laguerre_lab::spectra::{log_joint_density, Spectrum};

/// Gauss–Legendre nodes and weights on `[-1, 1]` (Newton on `P_k`).
pub fn gauss_legendre(k: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=k {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = k as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite Gauss–Legendre over `[a, b]` with `panels` equal panels.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, rule: &[(f64, f64)]) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|p| {
            let lo = a + p as f64 * h;
            rule.iter().map(|(x, w)| w * f(lo + 0.5 * h * (x + 1.0))).sum::<f64>() * 0.5 * h
        })
        .sum()
}

/// Ordered-wedge density of an n = 2 Laguerre spectrum in the variables `λ = u²`,
/// including the Jacobian `4uv`.
pub fn wedge_integrand(params: &LaguerreParams, u: f64, v: f64) -> f64 {
    if u <= 0.0 || v <= 0.0 || u >= v {
        return 0.0;
    }
    let s = Spectrum::from_unsorted(vec![u * u, v * v]);
    4.0 * u * v * log_joint_density(params, &s).unwrap().exp()
}

/// Upper cut-off in `v = √λ` beyond which the density is below double precision.
pub const V_MAX: f64 = 16.0;

/// `∫∫_{0<λ₁<λ₂}` of the n = 2 joint density.
pub fn wedge_mass(params: &LaguerreParams) -> f64 {
    let rule = gauss_legendre(20);
    integrate(|v| integrate(|u| wedge_integrand(params, u, v), 0.0, v, 4, &rule), 0.0, V_MAX, 32, &rule)
}

/// `P(λ₁ < a)` for n = 2 by quadrature of the joint density.
pub fn smallest_cdf(params: &LaguerreParams, a: f64) -> f64 {
    let rule = gauss_legendre(20);
    let ua = a.sqrt();
    integrate(|u| integrate(|v| wedge_integrand(params, u, v), u, V_MAX, 32, &rule), 0.0, ua, 8, &rule)
}
