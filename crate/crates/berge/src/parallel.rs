//! Data-parallel helpers with a sequential fallback.
//!
//! Compiled with the default `parallel` feature these delegate to rayon;
//! without it they run plain iterators. Callers must supply pure closures
//! and merge results positionally so the output is identical either way.

#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Run `f` on a pool of `threads` workers (0 = library default). Without
/// the `parallel` feature the thread count is ignored and `f` just runs.
#[cfg(feature = "parallel")]
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    if threads == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<R>(threads: usize, f: impl FnOnce() -> R) -> R {
    let _ = threads;
    f()
}
