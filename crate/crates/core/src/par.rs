//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper produces output that depends only on the index, never on the
//! thread that computed it, so results are identical with or without the
//! `parallel` feature.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many elements the sequential loop wins.
#[cfg(feature = "parallel")]
const MIN_PARALLEL_LEN: usize = 1 << 12;

pub(crate) fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if len >= MIN_PARALLEL_LEN {
            return (0..len).into_par_iter().map(f).collect();
        }
    }
    (0..len).map(f).collect()
}

/// Like [`map_indexed`] but always splits across threads when the feature is
/// enabled; used for coarse work items such as sample blocks.
pub(crate) fn map_blocks<T, F>(n_blocks: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n_blocks).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n_blocks).map(f).collect()
    }
}

/// Sets the worker count of the global pool. Must run before any parallel
/// work; a no-op without the `parallel` feature.
pub fn set_thread_count(threads: usize) -> std::result::Result<(), String> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| e.to_string())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        Ok(())
    }
}

/// Whether the crate was built with the `parallel` feature.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
