//! Data-parallel helpers.
//!
//! With the `parallel` feature the indexed maps below run on the rayon pool.
//! Without it, or inside [`sequential`], they run on the calling thread and
//! produce identical results in identical order.

use std::cell::Cell;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// How a batch of independent jobs should be scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    pub fn run<T>(self, f: impl FnOnce() -> T) -> T {
        match self {
            Exec::Parallel => f(),
            Exec::Sequential => sequential(f),
        }
    }
}

struct Restore(bool);

impl Drop for Restore {
    fn drop(&mut self) {
        FORCE_SEQUENTIAL.with(|c| c.set(self.0));
    }
}

/// Runs `f` with every helper in this module forced onto the current thread.
pub fn sequential<T>(f: impl FnOnce() -> T) -> T {
    let _restore = Restore(FORCE_SEQUENTIAL.with(|c| c.replace(true)));
    f()
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.with(|c| c.get())
}

/// `(0..n).map(f).collect()`, fanned out when `n >= min_parallel`.
pub fn map_range<T, F>(n: usize, min_parallel: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n >= min_parallel && is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = min_parallel;
    (0..n).map(f).collect()
}

/// `items.iter().map(f).collect()`, fanned out when parallelism is enabled.
pub fn map_slice<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() > 1 && is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}
