use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A reproducible random stream: ChaCha8 keyed from `seed` (via
/// `seed_from_u64`) with the 64-bit stream id set to `stream`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Runs `job(i, rng_i)` for `i in 0..m`, where `rng_i` is stream `i` of
/// `seed`. Results come back in index order and do not depend on `workers`.
pub fn run_batch<T, F>(seed: u64, m: u64, workers: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &mut ChaCha8Rng) -> T + Sync,
{
    let run_one = |i: u64| job(i, &mut RngSeed::new(seed, i).rng());
    if workers <= 1 {
        return (0..m).map(run_one).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| (0..m).into_par_iter().map(run_one).collect()),
        Err(_) => (0..m).map(run_one).collect(),
    }
}
