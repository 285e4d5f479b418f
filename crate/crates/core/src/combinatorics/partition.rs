use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// Largest `q` for which partitions, characters and Weingarten values are offered.
pub const MAX_Q: usize = 12;

/// An integer partition stored as a non-increasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates that `parts` is non-increasing with every part at least 1.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return param("a partition needs at least one part");
        }
        if parts.contains(&0) {
            return param(format!("partition {parts:?} has a zero part"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return param(format!("partition {parts:?} is not non-increasing"));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into canonical order.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    /// The partition `(1, 1, ..., 1)` of `q`: cycle type of the identity.
    pub fn ones(q: usize) -> Self {
        assert!(q > 0);
        Partition { parts: vec![1; q] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn q(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `p(eta)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity `a_j` of each part size `j`, indexed by `j` (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut mult = vec![0; self.parts[0] + 1];
        for &p in &self.parts {
            mult[p] += 1;
        }
        mult
    }

    /// Cells `(row, col)` of the Young diagram, 1-based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| (i + 1, j)))
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.parts[0])
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Parses `"3,1,1"` (spaces allowed). The parts may be given in any order.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| crate::Error::Parameter(format!("bad partition {s:?}: {e}")))?;
        Partition::from_unsorted(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = crate::Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_q(q: usize) -> Result<()> {
    if q == 0 || q > MAX_Q {
        return param(format!("q = {q} outside supported range 1..={MAX_Q}"));
    }
    Ok(())
}

/// All partitions of `q` in reverse lexicographic order, e.g. for `q = 4`:
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn partitions(q: usize) -> Result<Vec<Partition>> {
    check_q(q)?;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(q);
    extend_partitions(q, q, &mut current, &mut out);
    Ok(out)
}

fn extend_partitions(rest: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for part in (1..=rest.min(max_part)).rev() {
        current.push(part);
        extend_partitions(rest - part, part, current, out);
        current.pop();
    }
}

pub fn factorial(q: usize) -> u64 {
    (1..=q as u64).product()
}

/// Size of the conjugacy class of `S_q` with cycle type `mu`: `q! / z_mu`.
pub fn conjugacy_class_size(mu: &Partition) -> u64 {
    let z: u64 = mu
        .multiplicities()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, &a)| (j as u64).pow(a as u32) * factorial(a))
        .product();
    factorial(mu.q()) / z
}
