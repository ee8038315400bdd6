//! Data-parallel helpers.
//!
//! With the `parallel` feature the helpers fan out over rayon unless the
//! calling thread is inside [`sequential`]. Without the feature they are
//! plain iterator loops.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
#[cfg(feature = "parallel")]
use std::cell::Cell;

#[cfg(feature = "parallel")]
thread_local! {
    static FORCE_SEQ: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with every helper on this thread forced onto the sequential path.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    #[cfg(feature = "parallel")]
    {
        let prev = FORCE_SEQ.with(|c| c.replace(true));
        let out = f();
        FORCE_SEQ.with(|c| c.set(prev));
        out
    }
    #[cfg(not(feature = "parallel"))]
    {
        f()
    }
}

/// True when helpers called from this thread will use rayon.
pub fn is_parallel() -> bool {
    #[cfg(feature = "parallel")]
    {
        !FORCE_SEQ.with(|c| c.get())
    }
    #[cfg(not(feature = "parallel"))]
    {
        false
    }
}

/// Maps `f` over `0..n`, preserving order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && n > 1 {
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Maps `f` over a slice, preserving order.
pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && items.len() > 1 {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let par = map_range(100, |i| i * i);
        let seq = sequential(|| map_range(100, |i| i * i));
        assert_eq!(par, seq);
        assert!(sequential(|| !is_parallel()));
    }
}
