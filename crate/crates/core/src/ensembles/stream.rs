//! Counter-based random substreams.
//!
//! Every draw `i` of an experiment gets its own ChaCha8 stream: the key comes from
//! the master seed and the 64-bit stream id is `i`. A draw therefore depends only on
//! `(seed, i)`, never on which thread produced it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub type StreamRng = ChaCha8Rng;

/// Seed used when neither `--seed` nor `LAGUERRE_LAB_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_190_415;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Substreams {
    master: u64,
}

impl Substreams {
    pub fn new(master: u64) -> Self {
        Substreams { master }
    }

    pub fn master(&self) -> u64 {
        self.master
    }

    pub fn stream(&self, index: u64) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(index);
        rng
    }

    /// Independent family for a different purpose within one experiment
    /// (e.g. one per grid point), keyed by `label`.
    pub fn fork(&self, label: u64) -> Substreams {
        Substreams { master: splitmix64(self.master ^ splitmix64(label.wrapping_add(1))) }
    }

    /// Runs `draw` once per trial index, in parallel, returning results in index order.
    pub fn map_trials<T, F>(&self, trials: usize, draw: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut StreamRng) -> T + Sync,
    {
        (0..trials as u64)
            .into_par_iter()
            .map(|i| draw(&mut self.stream(i)))
            .collect()
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
