//! Data-parallel helpers for Monte-Carlo replicates and parameter sweeps.
//!
//! With the `parallel` feature (default) [`map_indexed`] fans out over a
//! rayon thread pool; without it the same call runs sequentially. Results
//! are collected in index order either way, so output is identical across
//! both paths and across thread counts. [`map_indexed_seq`] is always
//! sequential, for benchmarking the two side by side.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every index in `0..n`, in parallel when the `parallel`
/// feature is enabled. `f` must derive any randomness from the index
/// (per-replicate seeding), never from shared state.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential reference version of [`map_indexed`].
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
