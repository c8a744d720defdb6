//! Sequential or rayon-backed evaluation of independent trials.
//!
//! Results never depend on the mode: maps keep index order and searches
//! return the lowest matching index.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the global rayon pool when built with the `parallel` feature,
    /// otherwise runs sequentially.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `(0..len).map(f)` collected in index order.
    pub fn map<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// First `Some` in index order.
    pub fn find_first<T, F>(self, len: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len).into_par_iter().find_map_first(f);
        }
        (0..len).find_map(f)
    }

    /// `map` over a fallible closure, stopping at the first error in index order.
    pub fn try_map<T, E, F>(self, len: usize, f: F) -> Result<Vec<T>, E>
    where
        T: Send,
        E: Send,
        F: Fn(usize) -> Result<T, E> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            let all: Vec<Result<T, E>> = (0..len).into_par_iter().map(f).collect();
            return all.into_iter().collect();
        }
        (0..len).map(f).collect()
    }
}
