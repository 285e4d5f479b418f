//! Samplers for chi variates, the bidiagonal β-Laguerre model, and real/complex
//! (compound) Wishart matrices.

mod stream;

pub use stream::{StreamRng, Substreams, DEFAULT_SEED};

use nalgebra::DMatrix;
use num::complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// Dense Hermitian matrices; real-flavored draws have zero imaginary parts.
pub type DenseMatrix = DMatrix<Complex64>;

/// Parameters `(m, n, β)` of the Laguerre ensemble with `α = (m - n + 1)β/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct LaguerreParams {
    pub m: usize,
    pub n: usize,
    pub beta: f64,
    pub alpha: f64,
}

#[derive(Deserialize)]
struct RawParams {
    m: usize,
    n: usize,
    beta: f64,
}

impl TryFrom<RawParams> for LaguerreParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        LaguerreParams::new(raw.m, raw.n, raw.beta)
    }
}

impl LaguerreParams {
    pub fn new(m: usize, n: usize, beta: f64) -> Result<Self> {
        if n == 0 || m < n {
            return param(format!("need m >= n >= 1, got m = {m}, n = {n}"));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return param(format!("beta must be a positive finite number, got {beta}"));
        }
        let alpha = (m - n + 1) as f64 * beta / 2.0;
        Ok(LaguerreParams { m, n, beta, alpha })
    }
}

/// Symmetric tridiagonal matrix: `diag` has length `n`, `offdiag` length `n - 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return param(format!(
                "tridiagonal needs n >= 1 diagonal and n - 1 off-diagonal entries, got {} and {}",
                diag.len(),
                offdiag.len()
            ));
        }
        Ok(SymTridiagonal { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.diag[i]
            } else if i + 1 == j {
                self.offdiag[i]
            } else if j + 1 == i {
                self.offdiag[j]
            } else {
                0.0
            }
        })
    }
}

/// Upper bidiagonal factor `X`: `diag[i] ~ χ_{(m-i)β}`, `superdiag[i] ~ χ_{(n-1-i)β}` (0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct Bidiagonal {
    pub diag: Vec<f64>,
    pub superdiag: Vec<f64>,
}

impl Bidiagonal {
    /// `XᵀX` in tridiagonal storage.
    pub fn gram(&self) -> SymTridiagonal {
        let n = self.diag.len();
        let diag = (0..n)
            .map(|i| {
                let above = if i > 0 { self.superdiag[i - 1] } else { 0.0 };
                self.diag[i] * self.diag[i] + above * above
            })
            .collect();
        let offdiag = (0..n - 1).map(|i| self.diag[i] * self.superdiag[i]).collect();
        SymTridiagonal { diag, offdiag }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.diag.len();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.diag[i]
            } else if i + 1 == j {
                self.superdiag[i]
            } else {
                0.0
            }
        })
    }

    /// `X⁻¹` by back substitution; every entry is a signed product of ratios, so
    /// it keeps full relative accuracy even when `X` is nearly singular.
    /// `None` if a diagonal entry is zero.
    pub fn inverse(&self) -> Option<DMatrix<f64>> {
        let n = self.diag.len();
        if self.diag.contains(&0.0) {
            return None;
        }
        let mut inv = DMatrix::zeros(n, n);
        for i in 0..n {
            inv[(i, i)] = 1.0 / self.diag[i];
            for j in i + 1..n {
                inv[(i, j)] = -inv[(i, j - 1)] * self.superdiag[j - 1] / self.diag[j];
            }
        }
        Some(inv)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Real,
    Complex,
}

impl Flavor {
    pub fn from_beta(beta: u8) -> Result<Self> {
        match beta {
            1 => Ok(Flavor::Real),
            2 => Ok(Flavor::Complex),
            b => param(format!("compound Wishart matrices are defined for beta in {{1, 2}}, got {b}")),
        }
    }
}

/// Compound Wishart `Q = X* D X` with `D = diag(ξ)` and `Σ = I`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCompound")]
pub struct CompoundSpec {
    pub m: usize,
    pub n: usize,
    pub beta: u8,
    pub xi: Vec<f64>,
}

#[derive(Deserialize)]
struct RawCompound {
    m: usize,
    n: usize,
    beta: u8,
    xi: Vec<f64>,
}

impl TryFrom<RawCompound> for CompoundSpec {
    type Error = Error;
    fn try_from(raw: RawCompound) -> Result<Self> {
        CompoundSpec::new(raw.m, raw.n, raw.beta, raw.xi)
    }
}

impl CompoundSpec {
    /// Validates the spec; `xi` is sorted into non-decreasing order.
    pub fn new(m: usize, n: usize, beta: u8, mut xi: Vec<f64>) -> Result<Self> {
        if n == 0 || m < n {
            return param(format!("need m >= n >= 1, got m = {m}, n = {n}"));
        }
        Flavor::from_beta(beta)?;
        if xi.len() != m {
            return param(format!("xi needs m = {m} weights, got {}", xi.len()));
        }
        if let Some(bad) = xi.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return param(format!("xi weights must be positive and finite, got {bad}"));
        }
        xi.sort_by(f64::total_cmp);
        Ok(CompoundSpec { m, n, beta, xi })
    }

    pub fn flavor(&self) -> Flavor {
        Flavor::from_beta(self.beta).expect("validated")
    }

    pub fn xi_min(&self) -> f64 {
        self.xi[0]
    }

    pub fn xi_max(&self) -> f64 {
        self.xi[self.m - 1]
    }

    /// The Laguerre parameters sharing this spec's threshold.
    pub fn laguerre(&self) -> LaguerreParams {
        LaguerreParams::new(self.m, self.n, self.beta as f64).expect("validated")
    }
}

/// One `χ_s` draw, as the square root of a Gamma(shape `s/2`, scale 2) draw.
pub fn sample_chi<R: Rng + ?Sized>(s: f64, rng: &mut R) -> Result<f64> {
    if !(s.is_finite() && s > 0.0) {
        return param(format!("chi degrees of freedom must be positive, got {s}"));
    }
    let gamma = Gamma::new(s / 2.0, 2.0).map_err(|e| Error::Parameter(e.to_string()))?;
    Ok(gamma.sample(rng).sqrt())
}

pub fn sample_bidiagonal<R: Rng + ?Sized>(params: &LaguerreParams, rng: &mut R) -> Bidiagonal {
    let LaguerreParams { m, n, beta, .. } = *params;
    let diag = (0..n)
        .map(|i| sample_chi((m - i) as f64 * beta, rng).expect("positive dof"))
        .collect();
    let superdiag = (0..n - 1)
        .map(|i| sample_chi((n - 1 - i) as f64 * beta, rng).expect("positive dof"))
        .collect();
    Bidiagonal { diag, superdiag }
}

/// One `(m, n, β)`-Laguerre matrix `S = XᵀX`.
pub fn sample_laguerre<R: Rng + ?Sized>(params: &LaguerreParams, rng: &mut R) -> SymTridiagonal {
    sample_bidiagonal(params, rng).gram()
}

/// `m × n` Gaussian matrix: real standard normals, or `(x + iy)/√2` for the complex flavor.
pub fn sample_gaussian<R: Rng + ?Sized>(m: usize, n: usize, flavor: Flavor, rng: &mut R) -> DenseMatrix {
    // column-major fill keeps the draw order fixed
    DMatrix::from_fn(m, n, |_, _| match flavor {
        Flavor::Real => Complex64::new(rng.sample(StandardNormal), 0.0),
        Flavor::Complex => {
            let x: f64 = rng.sample(StandardNormal);
            let y: f64 = rng.sample(StandardNormal);
            Complex64::new(x, y) * std::f64::consts::FRAC_1_SQRT_2
        }
    })
}

/// `X* diag(w) X`, built so that the result is exactly Hermitian.
pub fn weighted_gram(x: &DenseMatrix, weights: Option<&[f64]>) -> DenseMatrix {
    let (m, n) = x.shape();
    let mut out = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..m {
                let w = weights.map_or(1.0, |w| w[k]);
                acc += x[(k, i)].conj() * x[(k, j)] * w;
            }
            if i == j {
                acc.im = 0.0;
            }
            out[(i, j)] = acc;
            out[(j, i)] = acc.conj();
        }
    }
    out
}

/// Standard real (`AᵀA`) or complex (`A*A`) Wishart matrix.
pub fn sample_wishart<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    flavor: Flavor,
    rng: &mut R,
) -> Result<DenseMatrix> {
    if n == 0 || m < n {
        return param(format!("need m >= n >= 1, got m = {m}, n = {n}"));
    }
    Ok(weighted_gram(&sample_gaussian(m, n, flavor, rng), None))
}

pub fn sample_compound_wishart<R: Rng + ?Sized>(spec: &CompoundSpec, rng: &mut R) -> DenseMatrix {
    sample_compound_coupled(spec, rng).0
}

/// `(Q, S) = (X* D X, X* X)` from a single Gaussian draw `X`.
pub fn sample_compound_coupled<R: Rng + ?Sized>(
    spec: &CompoundSpec,
    rng: &mut R,
) -> (DenseMatrix, DenseMatrix) {
    let x = sample_gaussian(spec.m, spec.n, spec.flavor(), rng);
    (weighted_gram(&x, Some(&spec.xi)), weighted_gram(&x, None))
}
