//! Feature-gated rayon shim.
//!
//! With the `parallel` feature (default), the helpers below fan work out over
//! rayon's thread pool; without it they run sequentially on the calling
//! thread. Results are identical either way: every helper collects in index
//! order and no reduction reorders floating-point sums.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..len`, collecting results in index order.
pub fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Applies `f` to each mutable chunk of `data`, chunks of size `chunk`.
pub fn for_each_chunk_mut<T, F>(data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(&mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        data.par_chunks_mut(chunk).for_each(f);
    }
    #[cfg(not(feature = "parallel"))]
    {
        data.chunks_mut(chunk).for_each(f);
    }
}

/// True when the `parallel` feature is compiled in.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
