use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{param, Result};

/// A permutation of `{0, .., q-1}` in one-line notation.
///
/// The public constructors and [`Perm::one_line`] use 1-based images to match
/// the usual mathematical notation; storage is 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(q: usize) -> Self {
        Perm { images: (0..q).collect() }
    }

    /// Builds a permutation from 1-based one-line notation, e.g. `[2, 1, 3]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let q = images.len();
        let mut seen = vec![false; q];
        for &v in images {
            if v == 0 || v > q || seen[v - 1] {
                return param(format!("{images:?} is not a permutation of 1..={q}"));
            }
            seen[v - 1] = true;
        }
        Ok(Perm { images: images.iter().map(|v| v - 1).collect() })
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Perm { images: inv }
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let q = self.degree();
        let mut visited = vec![false; q];
        let mut lengths = Vec::new();
        for start in 0..q {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.images[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycle_lengths()).expect("cycle lengths are positive")
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_lengths().len()
    }

    /// Canonical representative of a cycle type: consecutive blocks
    /// `(1 2 .. η₁)(η₁+1 ..)...`.
    pub fn with_cycle_type(mu: &Partition) -> Perm {
        let mut images = Vec::with_capacity(mu.q());
        let mut offset = 0;
        for &len in mu.parts() {
            for k in 0..len {
                images.push(offset + (k + 1) % len);
            }
            offset += len;
        }
        Perm { images }
    }

    /// Every permutation of degree `q` in lexicographic order.
    pub fn all(q: usize) -> AllPerms {
        AllPerms { next: Some((0..q).collect()) }
    }
}

/// Lexicographic iterator over `S_q`.
pub struct AllPerms {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPerms {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Perm { images: current })
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Cycle type of a permutation.
pub fn cycle_type(p: &Perm) -> Partition {
    p.cycle_type()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{conjugacy_class_size, factorial, partitions};
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn cycle_types_by_hand() {
        assert_eq!(Perm::identity(3).cycle_type(), part(&[1, 1, 1]));
        assert_eq!(Perm::from_one_line(&[2, 1, 3]).unwrap().cycle_type(), part(&[2, 1]));
        assert_eq!(Perm::from_one_line(&[2, 3, 1, 5, 4]).unwrap().cycle_type(), part(&[3, 2]));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_one_line(&[1, 1, 2]).is_err());
        assert!(Perm::from_one_line(&[0, 1]).is_err());
        assert!(Perm::from_one_line(&[1, 4, 2]).is_err());
    }

    #[test]
    fn enumeration_matches_class_sizes() {
        for q in 1..=6 {
            let mut counts: HashMap<Partition, u64> = HashMap::new();
            let mut total = 0;
            for p in Perm::all(q) {
                *counts.entry(p.cycle_type()).or_default() += 1;
                total += 1;
            }
            assert_eq!(total, factorial(q));
            for mu in partitions(q).unwrap() {
                assert_eq!(counts[&mu], conjugacy_class_size(&mu), "class {mu}");
            }
        }
    }

    #[test]
    fn representative_has_requested_type() {
        for q in 1..=7 {
            for mu in partitions(q).unwrap() {
                assert_eq!(Perm::with_cycle_type(&mu).cycle_type(), mu);
            }
        }
    }

    proptest! {
        #[test]
        fn conjugation_preserves_cycle_type(
            a in Just((1..=7).collect::<Vec<usize>>()).prop_shuffle(),
            b in Just((1..=7).collect::<Vec<usize>>()).prop_shuffle(),
        ) {
            let a = Perm::from_one_line(&a).unwrap();
            let b = Perm::from_one_line(&b).unwrap();
            let conj = b.compose(&a).compose(&b.inverse());
            prop_assert_eq!(conj.cycle_type(), a.cycle_type());
            prop_assert_eq!(a.compose(&a.inverse()), Perm::identity(7));
        }
    }
}
