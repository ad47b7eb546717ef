//! Seed-indexed batch evaluation.
//!
//! Every run in a batch owns its RNG, derived from its seed, so results do not
//! depend on scheduling. With the `parallel` feature (on by default) batches
//! fan out over rayon; without it they run on the calling thread. Both paths
//! return results in seed order.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluates `f` on every seed, on the calling thread.
pub fn map_seeds_sequential<T, F>(seeds: Range<u64>, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    seeds.map(f).collect()
}

/// Evaluates `f` on every seed across the rayon pool.
#[cfg(feature = "parallel")]
pub fn map_seeds_parallel<T, F>(seeds: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    seeds.into_par_iter().map(f).collect()
}

/// Evaluates `f` on every seed with the build's default strategy.
pub fn map_seeds<T, F>(seeds: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_seeds_parallel(seeds, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seeds_sequential(seeds, f)
    }
}

/// `count` consecutive seeds starting at `base`, wrapping at `u64::MAX`.
pub fn seed_at(base: u64, index: u64) -> u64 {
    base.wrapping_add(index)
}
