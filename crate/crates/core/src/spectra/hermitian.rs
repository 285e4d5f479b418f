//! Householder reduction of dense Hermitian matrices to real symmetric tridiagonal form.

use num::complex::Complex64;
use num::Zero;

use crate::ensembles::{DenseMatrix, SymTridiagonal};
use crate::error::{Error, Result};

use super::{eigenvalues_tridiagonal, Spectrum};

const HERMITIAN_TOL: f64 = 1e-10;

/// Unitarily similar real tridiagonal matrix.
///
/// The Householder sweep produces a Hermitian tridiagonal matrix with complex
/// subdiagonal `e_k`; conjugating by a diagonal phase matrix replaces each `e_k`
/// by `|e_k|` without changing the spectrum.
pub fn householder_tridiagonal(q: &DenseMatrix) -> Result<SymTridiagonal> {
    let n = q.nrows();
    if n == 0 || q.ncols() != n {
        return Err(Error::Parameter(format!("expected a square matrix, got {}x{}", q.nrows(), q.ncols())));
    }
    let scale = q.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    for i in 0..n {
        for j in i..n {
            if (q[(i, j)] - q[(j, i)].conj()).norm() > HERMITIAN_TOL * scale {
                return Err(Error::Parameter(format!("matrix is not Hermitian at ({i}, {j})")));
            }
        }
    }
    if q.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numeric("matrix has non-finite entries".into()));
    }

    let mut a = q.clone();
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let x: Vec<Complex64> = (0..len).map(|i| a[(k + 1 + i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            offdiag.push(0.0);
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            offdiag.push(xnorm);
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }

        // trailing block B = a[k+1.., k+1..]; B ← H B H with H = I - 2vv*
        let mut p = vec![Complex64::zero(); len];
        for (i, pi) in p.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                *pi += a[(k + 1 + i, k + 1 + j)] * vj;
            }
        }
        let kappa: f64 = v.iter().zip(&p).map(|(vi, pi)| (vi.conj() * pi).re).sum();
        let w: Vec<Complex64> = p.iter().zip(&v).map(|(pi, vi)| pi - vi * kappa).collect();
        for i in 0..len {
            for j in 0..len {
                let update = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[(k + 1 + i, k + 1 + j)] -= update * 2.0;
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in 1..len {
            a[(k + 1 + i, k)] = Complex64::zero();
            a[(k, k + 1 + i)] = Complex64::zero();
        }
        offdiag.push(xnorm);
    }
    if n >= 2 {
        offdiag.push(a[(n - 1, n - 2)].norm());
    }
    let diag = (0..n).map(|i| a[(i, i)].re).collect();
    SymTridiagonal::new(diag, offdiag)
}

/// Spectrum of a dense Hermitian matrix.
pub fn eigenvalues_hermitian(q: &DenseMatrix) -> Result<Spectrum> {
    eigenvalues_tridiagonal(&householder_tridiagonal(q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{sample_compound_coupled, sample_wishart, CompoundSpec, Flavor, Substreams};

    #[test]
    fn identity_spectrum() {
        let eye = DenseMatrix::identity(4, 4);
        assert_eq!(eigenvalues_hermitian(&eye).unwrap().eigenvalues, vec![1.0; 4]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut q = DenseMatrix::identity(3, 3);
        q[(0, 1)] = Complex64::new(0.0, 1.0);
        assert!(matches!(eigenvalues_hermitian(&q), Err(Error::Parameter(_))));
    }

    #[test]
    fn two_by_two_from_trace_and_det() {
        let streams = Substreams::new(11);
        for flavor in [Flavor::Real, Flavor::Complex] {
            for i in 0..50 {
                let w = sample_wishart(5, 2, flavor, &mut streams.stream(i)).unwrap();
                let tr = w[(0, 0)].re + w[(1, 1)].re;
                let det = (w[(0, 0)] * w[(1, 1)] - w[(0, 1)] * w[(1, 0)]).re;
                let rad = (tr * tr / 4.0 - det).sqrt();
                let got = eigenvalues_hermitian(&w).unwrap().eigenvalues;
                assert!((got[0] - (tr / 2.0 - rad)).abs() < 1e-10 * tr);
                assert!((got[1] - (tr / 2.0 + rad)).abs() < 1e-10 * tr);
            }
        }
    }

    #[test]
    fn matches_dense_oracle() {
        let streams = Substreams::new(12);
        for flavor in [Flavor::Real, Flavor::Complex] {
            for i in 0..50 {
                let w = sample_wishart(9, 6, flavor, &mut streams.stream(i)).unwrap();
                let mut oracle: Vec<f64> = w.clone().symmetric_eigenvalues().iter().copied().collect();
                oracle.sort_by(f64::total_cmp);
                let got = eigenvalues_hermitian(&w).unwrap().eigenvalues;
                for (a, b) in got.iter().zip(&oracle) {
                    assert!((a - b).abs() < 1e-10 * oracle[5], "{flavor:?}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn compound_sandwich_per_draw() {
        let spec = CompoundSpec::new(5, 3, 2, vec![1.0, 2.0, 2.0, 3.0, 5.0]).unwrap();
        let streams = Substreams::new(13);
        for i in 0..200 {
            let (q, s) = sample_compound_coupled(&spec, &mut streams.stream(i));
            let mu = eigenvalues_hermitian(&q).unwrap().eigenvalues;
            let lam = eigenvalues_hermitian(&s).unwrap().eigenvalues;
            for (m, l) in mu.iter().zip(&lam) {
                let slack = 1e-12 * spec.xi_max() * lam[2];
                assert!(*m >= spec.xi_min() * l - slack && *m <= spec.xi_max() * l + slack);
            }
        }
    }
}
