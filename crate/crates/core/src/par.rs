//! Data-parallel helpers. With the `parallel` feature these dispatch to
//! rayon; without it, or when [`Exec::Sequential`] is requested, they run
//! on the calling thread. Results never depend on the execution mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution mode for the data-parallel kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// The mode actually used: `Parallel` degrades to `Sequential` when the
    /// crate is built without the `parallel` feature.
    pub fn effective(self) -> Exec {
        if cfg!(feature = "parallel") {
            self
        } else {
            Exec::Sequential
        }
    }
}

/// Ordered map over `0..n`.
pub fn map_range<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}

/// Ordered map over a slice.
pub fn map_slice<S, T, F>(exec: Exec, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Send + Sync,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Smallest index in `0..n` whose predicate holds. Deterministic in both modes.
pub fn find_first<F>(exec: Exec, n: usize, f: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Send + Sync,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().find_first(|&i| f(i)),
        _ => (0..n).find(|&i| f(i)),
    }
}

/// Whether the predicate holds for every index in `0..n`.
pub fn all<F>(exec: Exec, n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Send + Sync,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().all(f),
        _ => (0..n).all(f),
    }
}
