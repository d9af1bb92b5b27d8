use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid_param, Result};
use crate::harness::seeds::trial_rng;

/// Runs `trials` independent trials, trial `t` with its own generator seeded
/// from `(master_seed, t)`, and returns the results in trial order. With
/// `workers = Some(n)` a dedicated pool of `n` threads is used; results do
/// not depend on `n`.
pub fn run_trials<T, F>(trials: usize, master_seed: u64, workers: Option<usize>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, &mut ChaCha8Rng) -> T + Sync + Send,
{
    if trials == 0 {
        return Err(invalid_param("trials", "must be at least 1"));
    }
    let run = || {
        (0..trials)
            .into_par_iter()
            .map(|t| f(t, &mut trial_rng(master_seed, t as u64)))
            .collect()
    };
    match workers {
        None => Ok(run()),
        Some(0) => Err(invalid_param("workers", "must be at least 1")),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| invalid_param("workers", e.to_string()))?;
            Ok(pool.install(run))
        }
    }
}
