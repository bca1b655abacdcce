//! Seeded random streams.
//!
//! Every run draws from `ChaCha8Rng` streams keyed by a master seed. Stream 0
//! is reserved for the shared initial configuration of a parallel group;
//! worker `w` uses stream `w + 1`. A worker's stream therefore depends only on
//! the master seed and its own id, never on how many workers were launched.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SearchRng = ChaCha8Rng;

const SHARED_STREAM: u64 = 0;

/// Generator for worker `worker` under `master_seed`.
pub fn worker_rng(master_seed: u64, worker: usize) -> SearchRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(worker as u64 + 1);
    rng
}

/// Generator for the configuration shared by all workers in a group.
pub fn shared_rng(master_seed: u64) -> SearchRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(SHARED_STREAM);
    rng
}

/// Master seed of repeat `run` in a benchmark sweep.
pub fn run_seed(master_seed: u64, run: usize) -> u64 {
    master_seed.wrapping_add(run as u64)
}
