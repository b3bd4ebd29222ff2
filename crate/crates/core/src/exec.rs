//! Sequential / rayon execution switch for the data-parallel loops.
//!
//! Every batch operation in the crate (coefficient rows, sweeps over `alpha`,
//! table rows, spectral sums, history accumulation) goes through the helpers
//! here, so the same code path can be benchmarked both ways. When the crate is
//! built without the `parallel` feature, [`Execution::Parallel`] degrades to
//! sequential iteration and results are identical.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a data-parallel loop is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
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
    /// `true` when this request will actually use worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Map `f` over `range`, preserving order.
    pub fn map_range<T, F>(self, range: Range<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// Fallible [`map_range`](Self::map_range); the first error in index order wins.
    pub fn try_map_range<T, E, F>(self, range: Range<usize>, f: F) -> Result<Vec<T>, E>
    where
        T: Send,
        E: Send,
        F: Fn(usize) -> Result<T, E> + Sync + Send,
    {
        // Collecting into Vec<Result> first keeps the reported error deterministic.
        self.map_range(range, f).into_iter().collect()
    }

    /// Map `f` over a slice, preserving order.
    pub fn map_slice<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Fallible [`map_slice`](Self::map_slice); the first error in slice order wins.
    pub fn try_map_slice<S, T, E, F>(self, items: &[S], f: F) -> Result<Vec<T>, E>
    where
        S: Sync,
        T: Send,
        E: Send,
        F: Fn(&S) -> Result<T, E> + Sync + Send,
    {
        self.map_slice(items, f).into_iter().collect()
    }

    /// Compute `out[i] = sum_k weights[k] * vectors[k][i]` for every `i`.
    ///
    /// Each output entry is accumulated in the same order regardless of the
    /// execution mode, so both modes give bit-identical results.
    pub fn weighted_sum(self, out: &mut [f64], weights: &[f64], vectors: &[&[f64]]) {
        debug_assert_eq!(weights.len(), vectors.len());
        let kernel = |offset: usize, chunk: &mut [f64]| {
            for (i, slot) in chunk.iter_mut().enumerate() {
                let idx = offset + i;
                let mut acc = 0.0;
                for (w, v) in weights.iter().zip(vectors) {
                    acc += w * v[idx];
                }
                *slot = acc;
            }
        };
        const CHUNK: usize = 256;
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            out.par_chunks_mut(CHUNK)
                .enumerate()
                .for_each(|(c, chunk)| kernel(c * CHUNK, chunk));
            return;
        }
        out.chunks_mut(CHUNK)
            .enumerate()
            .for_each(|(c, chunk)| kernel(c * CHUNK, chunk));
    }
}
