//! Irreducible characters of `S_q` by the Murnaghan–Nakayama rule.
//!
//! Shapes are handled through their beta-sets (first-column hook lengths):
//! removing a border strip of length `r` moves one bead from `b` to `b - r`,
//! and the strip's height equals the number of beads strictly between the two
//! positions.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::partition::{check_q, factorial, Partition};
use crate::error::{param, Result};

type MemoKey = (Vec<usize>, Vec<usize>);

fn memo() -> &'static Mutex<HashMap<MemoKey, i64>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, i64>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `χ^eta(mu)`: the irreducible character indexed by `eta` evaluated on the
/// conjugacy class with cycle type `mu`.
pub fn character(eta: &Partition, mu: &Partition) -> Result<i64> {
    check_q(eta.q())?;
    if eta.q() != mu.q() {
        return param(format!(
            "character shape {eta} (q = {}) and class {mu} (q = {}) differ in size",
            eta.q(),
            mu.q()
        ));
    }
    Ok(murnaghan_nakayama(eta.parts(), mu.parts()))
}

fn murnaghan_nakayama(shape: &[usize], class: &[usize]) -> i64 {
    let Some((&strip, rest)) = class.split_first() else {
        return if shape.is_empty() { 1 } else { 0 };
    };
    let key = (shape.to_vec(), class.to_vec());
    if let Some(&v) = memo().lock().unwrap().get(&key) {
        return v;
    }

    let len = shape.len();
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < strip || beta.contains(&(b - strip)) {
            continue;
        }
        let target = b - strip;
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        let sub = beta_to_shape(moved);
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * murnaghan_nakayama(&sub, rest);
    }

    memo().lock().unwrap().insert(key, total);
    total
}

fn beta_to_shape(mut beta: Vec<usize>) -> Vec<usize> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len();
    beta.iter()
        .enumerate()
        .map(|(i, &b)| b - (len - 1 - i))
        .filter(|&p| p > 0)
        .collect()
}

/// `χ^eta(e)`, the dimension of the irreducible representation.
pub fn dimension(eta: &Partition) -> Result<i64> {
    character(eta, &Partition::ones(eta.q()))
}

/// Dimension by the hook-length formula `q! / Π hook(cell)`.
pub fn hook_length_dimension(eta: &Partition) -> u64 {
    let conj = eta.conjugate();
    let hooks: u64 = eta
        .cells()
        .map(|(i, j)| {
            let arm = eta.parts()[i - 1] - j;
            let leg = conj.parts()[j - 1] - i;
            (arm + leg + 1) as u64
        })
        .product();
    factorial(eta.q()) / hooks
}
