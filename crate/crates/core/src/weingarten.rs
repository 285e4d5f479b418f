//! Unitary Weingarten function and exact inverse moments of complex Wishart matrices.
//!
//! `Wg(σ, z) = (1/q!) Σ_η χ^η(e) χ^η(σ) / Π_{(i,j) ∈ η} (z + j - i)`, summed over
//! partitions `η` of `q`. With `z = n - m` it gives
//! `E[Tr_π(S⁻¹)] = (-1)^c Σ_{σ ∈ S_c} Wg(πσ⁻¹; n - m) Tr_σ(I)` for a standard
//! complex Wishart `S = A*A`, `A` an `m × n` matrix with unit-variance entries.

use std::collections::HashMap;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{character, dimension, factorial, partitions, Partition, Perm};
use crate::error::{param, Error, Result};
use crate::rational::Rational;

/// Largest moment order summed by explicit enumeration of `S_c`.
pub const MAX_ENUMERATED_ORDER: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeingartenValue(pub Rational);

/// Cycle type of `π` in `E[Tr_π(S⁻¹)]`; `c` is the size of the partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentOrder {
    pub pi_type: Partition,
}

impl MomentOrder {
    pub fn new(pi_type: Partition) -> Self {
        MomentOrder { pi_type }
    }

    /// `Tr(S^{-c})`: a single `c`-cycle.
    pub fn trace_power(c: usize) -> Self {
        MomentOrder { pi_type: Partition::new(vec![c]).expect("c >= 1") }
    }

    pub fn c(&self) -> usize {
        self.pi_type.q()
    }
}

/// `Π_{(i,j) ∈ η} (z + j - i)`, or a pole error naming the first vanishing cell.
fn content_product(eta: &Partition, z: &Rational) -> Result<Rational> {
    let mut acc = Rational::one();
    for (row, col) in eta.cells() {
        let factor = z + &Rational::from_int(col as i64 - row as i64);
        if factor.is_zero() {
            return Err(Error::Pole { row, col });
        }
        acc = acc * factor;
    }
    Ok(acc)
}

/// Exact `Wg(σ, z)` for `σ` of cycle type `sigma_type`.
pub fn weingarten(sigma_type: &Partition, z: &Rational) -> Result<WeingartenValue> {
    let q = sigma_type.q();
    let mut sum = Rational::zero();
    for eta in partitions(q)? {
        let chi_e = dimension(&eta)?;
        let chi_sigma = character(&eta, sigma_type)?;
        if chi_sigma == 0 {
            // still reject poles: the value is undefined there
            content_product(&eta, z)?;
            continue;
        }
        let denom = content_product(&eta, z)?;
        sum = sum + Rational::from_int(chi_e * chi_sigma) / denom;
    }
    Ok(WeingartenValue(sum / Rational::from_int(factorial(q) as i64)))
}

/// `Wg(μ, z)` for every class `μ` of `S_q`, in canonical partition order.
pub fn weingarten_table(q: usize, z: &Rational) -> Result<Vec<(Partition, WeingartenValue)>> {
    partitions(q)?
        .into_iter()
        .map(|mu| weingarten(&mu, z).map(|w| (mu, w)))
        .collect()
}

/// `Tr_σ(I_n) = n^{#cycles(σ)}`.
pub fn tr_sigma_identity(sigma_type: &Partition, n: u64) -> BigInt {
    num::pow(BigInt::from(n), sigma_type.len())
}

/// Exact `E[Tr_π(S⁻¹)]` for an `n × n` standard complex Wishart matrix with `m`
/// degrees of freedom (unit-variance complex entries). Requires `c < m - n + 1`.
pub fn exact_inverse_moment(order: &MomentOrder, m: usize, n: usize) -> Result<Rational> {
    if n == 0 || m < n {
        return param(format!("need m >= n >= 1, got m = {m}, n = {n}"));
    }
    let c = order.c();
    let bound = m - n + 1;
    if c >= bound {
        return Err(Error::ConditionViolated { c, bound });
    }
    if c > MAX_ENUMERATED_ORDER {
        return param(format!("moment order {c} exceeds enumeration cap {MAX_ENUMERATED_ORDER}"));
    }

    let z = Rational::from_int(n as i64 - m as i64);
    let wg: HashMap<Partition, Rational> = weingarten_table(c, &z)?
        .into_iter()
        .map(|(mu, w)| (mu, w.0))
        .collect();

    let pi = Perm::with_cycle_type(&order.pi_type);
    let n_big = Rational::from_int(n as i64);
    let mut total = Rational::zero();
    for sigma in Perm::all(c) {
        let class = pi.compose(&sigma.inverse()).cycle_type();
        let trace = n_big.pow(sigma.cycle_count() as i32);
        total = total + &wg[&class] * &trace;
    }
    Ok(if c.is_multiple_of(2) { total } else { -total })
}
