//! Execution strategy for grid sweeps.
//!
//! Every sweep is split into fixed-size chunks whose results are combined in
//! index order, so parallel and sequential runs return identical values.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Points handled per work item.
pub const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Applies `f` to consecutive index ranges covering `0..len` and returns
    /// the per-chunk results in order.
    pub fn map_chunks<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(std::ops::Range<usize>) -> T + Sync + Send,
    {
        let chunks = len.div_ceil(CHUNK);
        let range = move |c: usize| c * CHUNK..((c + 1) * CHUNK).min(len);
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..chunks).into_par_iter().map(|c| f(range(c))).collect(),
            _ => (0..chunks).map(|c| f(range(c))).collect(),
        }
    }

    /// Evaluates `f` at every index of `0..len`.
    pub fn map<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.map_chunks(len, |r| r.map(&f).collect::<Vec<_>>())
            .into_iter()
            .flatten()
            .collect()
    }
}
