//! Thin switch between rayon and plain iterators. With the `parallel`
//! feature off, or `parallel == false` at the call site, everything runs on
//! the calling thread. Results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether this build can run anything in parallel.
pub const fn available() -> bool {
    cfg!(feature = "parallel")
}

/// First `Some` in slice order.
pub(crate) fn find_map_first<T, R, F>(items: &[T], parallel: bool, f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().find_map_first(f);
    }
    let _ = parallel;
    items.iter().find_map(f)
}

/// Order-preserving map.
pub fn map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// Minimum under a total order; on ties the earliest item wins.
pub(crate) fn min_by_key<T, K, F>(items: &[T], parallel: bool, key: F) -> Option<K>
where
    T: Sync,
    K: Ord + Send,
    F: Fn(&T) -> Option<K> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().filter_map(key).min();
    }
    let _ = parallel;
    items.iter().filter_map(key).min()
}
