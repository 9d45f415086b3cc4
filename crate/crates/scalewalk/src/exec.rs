//! Execution strategy for the data-parallel loops.
//!
//! Verification fans out over independent corpus instances and scale
//! enumerations fan out over independent radius assignments, so the inner
//! loops are embarrassingly parallel. With the default `parallel` feature the
//! helpers below run on the rayon global pool; without it they degrade to
//! plain sequential iteration. Both paths preserve input order, so reports
//! merge deterministically either way.

#[cfg(feature = "parallel")]
pub fn map_collect<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Sequential map, always available: the baseline the benchmarks compare
/// against regardless of feature flags.
pub fn map_collect_seq<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}
