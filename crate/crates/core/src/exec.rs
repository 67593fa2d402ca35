//! Execution helper for the data-parallel inner loops.
//!
//! With the `parallel` feature (default) the closure runs on the rayon
//! thread pool; otherwise it runs on a plain iterator. Results always come
//! back in index order, so callers that derive per-item seeds from the
//! index get identical output under both modes.

#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Name of the active execution mode, used by benches and reports.
pub fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}
