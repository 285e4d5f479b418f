//! Partitions, permutations and symmetric-group characters, exact over the integers.

mod characters;
mod partition;
mod perm;

pub use characters::{character, dimension, hook_length_dimension};
pub use partition::{conjugacy_class_size, factorial, partitions, Partition, MAX_Q};
pub use perm::{cycle_type, AllPerms, Perm};
