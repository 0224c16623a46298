//! Thin switch between rayon and plain iterators.
//!
//! With the `parallel` feature off every helper runs sequentially and
//! produces the same output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, keeping input order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Fold the range `0..n` in chunks and merge the partial results.
/// `merge` must be associative and commutative for determinism.
pub fn fold_range<A, I, F, M>(n: u64, init: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, u64) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .fold(&init, |mut acc, i| {
                fold(&mut acc, i);
                acc
            })
            .reduce(&init, &merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = &merge;
        let mut acc = init();
        for i in 0..n {
            fold(&mut acc, i);
        }
        acc
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
