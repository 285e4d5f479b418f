//! Eigenvalues of symmetric tridiagonal matrices.

use crate::ensembles::SymTridiagonal;
use crate::error::{Error, Result};

use super::Spectrum;

const PIVOT_GUARD: f64 = 1e-300;

/// Iteration cap per eigenvalue for the implicit QL sweep.
pub const QL_MAX_ITERATIONS: usize = 60;

/// Number of eigenvalues strictly below `x`, from the signs of the LDLᵀ pivots of `S - xI`.
pub fn sturm_count(s: &SymTridiagonal, x: f64) -> usize {
    let mut count = 0;
    let mut pivot = s.diag[0] - x;
    if pivot < 0.0 {
        count += 1;
    }
    for i in 1..s.dim() {
        let guarded = if pivot.abs() < PIVOT_GUARD {
            PIVOT_GUARD.copysign(pivot)
        } else {
            pivot
        };
        pivot = (s.diag[i] - x) - s.offdiag[i - 1] * s.offdiag[i - 1] / guarded;
        if pivot < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin interval `[lo, hi]` containing the spectrum.
pub fn gershgorin_bounds(s: &SymTridiagonal) -> (f64, f64) {
    let n = s.dim();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { s.offdiag[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { s.offdiag[i].abs() } else { 0.0 };
        lo = lo.min(s.diag[i] - left - right);
        hi = hi.max(s.diag[i] + left + right);
    }
    (lo, hi)
}

fn check_finite(s: &SymTridiagonal) -> Result<()> {
    if s.diag.iter().chain(&s.offdiag).all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Numeric("tridiagonal matrix has non-finite entries".into()))
    }
}

/// `λ₁` to absolute accuracy `tol` by Sturm-sequence bisection.
pub fn smallest_eigenvalue(s: &SymTridiagonal, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    check_finite(s)?;
    let (mut lo, mut hi) = gershgorin_bounds(s);
    let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    lo -= pad;
    hi += pad;
    if sturm_count(s, lo) != 0 || sturm_count(s, hi) == 0 {
        return Err(Error::Numeric(format!("failed to bracket smallest eigenvalue in [{lo}, {hi}]")));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(s, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// All eigenvalues by the implicit-shift QL iteration, sorted ascending.
pub fn eigenvalues_tridiagonal(s: &SymTridiagonal) -> Result<Spectrum> {
    check_finite(s)?;
    let n = s.dim();
    let mut d = s.diag.clone();
    let mut e = s.offdiag.clone();
    e.push(0.0);

    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > QL_MAX_ITERATIONS {
                return Err(Error::Numeric(format!(
                    "implicit QL did not converge for eigenvalue {l} within {QL_MAX_ITERATIONS} sweeps"
                )));
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut sn, mut cs, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = sn * e[i];
                let b = cs * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                sn = f / r;
                cs = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * sn + 2.0 * cs * b;
                p = sn * r;
                d[i + 1] = g + p;
                g = cs * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(Spectrum::from_unsorted(d))
}
