//! Eigenvalues, inverse-power traces and the joint eigenvalue density.

mod density;
mod hermitian;
mod tridiagonal;

pub use density::{log_joint_density, log_normalization};
pub use hermitian::{eigenvalues_hermitian, householder_tridiagonal};
pub use tridiagonal::{
    eigenvalues_tridiagonal, gershgorin_bounds, smallest_eigenvalue, sturm_count, QL_MAX_ITERATIONS,
};

use serde::{Deserialize, Serialize};

use crate::ensembles::Bidiagonal;
use crate::error::{Error, Result};

/// Eigenvalues sorted non-decreasing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn from_unsorted(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        Spectrum { eigenvalues }
    }

    pub fn smallest(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// Eigenvalues of `S⁻¹ = X⁻¹X⁻ᵀ` for `S = XᵀX`, sorted ascending.
///
/// The largest of these, `1/λ₁`, is accurate to working precision relative to
/// itself, whereas `λ₁` computed from `S` directly only has absolute accuracy
/// `ε‖S‖`. Small-`α` ensembles routinely produce `λ₁` below that floor.
pub fn inverse_gram_spectrum(x: &Bidiagonal) -> Result<Spectrum> {
    let inv = x
        .inverse()
        .ok_or_else(|| Error::Numeric("bidiagonal factor has a zero pivot (degenerate draw)".into()))?;
    let gram = &inv * inv.transpose();
    let n = gram.nrows();
    let diag = (0..n).map(|i| gram[(i, i)]).collect::<Vec<_>>();
    let dense = crate::ensembles::DenseMatrix::from_fn(n, n, |i, j| {
        // exact symmetry for the Householder input check
        let v = if i <= j { gram[(i, j)] } else { gram[(j, i)] };
        num::complex::Complex64::new(v, 0.0)
    });
    if n == 1 {
        return Ok(Spectrum::from_unsorted(diag));
    }
    let mut spectrum = eigenvalues_hermitian(&dense)?;
    for v in spectrum.eigenvalues.iter_mut() {
        *v = v.max(0.0);
    }
    Ok(spectrum)
}

/// `Σ ν_i^c` over the eigenvalues `ν` of `S⁻¹`.
pub fn trace_power_of_inverse(inverse: &Spectrum, c: u32) -> f64 {
    inverse.eigenvalues.iter().map(|v| v.powi(c as i32)).sum()
}

/// `Tr(S^{-c}) = Σ λ_i^{-c}`.
pub fn trace_inverse_power(spectrum: &Spectrum, c: u32) -> Result<f64> {
    if let Some(bad) = spectrum.eigenvalues.iter().find(|l| !(**l > 0.0)) {
        return Err(Error::Domain(format!("non-positive eigenvalue {bad} (degenerate draw)")));
    }
    Ok(spectrum.eigenvalues.iter().map(|l| l.powi(-(c as i32))).sum())
}
