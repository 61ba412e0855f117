//! Data-parallel helpers. With the `parallel` feature (default) these fan
//! out over rayon's pool; without it, or with [`Execution::Sequential`],
//! they run on the calling thread. Results are always returned in input
//! order, so the choice never changes output.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Smallest run of consecutive indices handed to one worker.
#[cfg(feature = "parallel")]
const MIN_CHUNK: u64 = 64;

/// Splits `range` into consecutive runs of `MIN_CHUNK` indices.
#[cfg(feature = "parallel")]
fn chunks(range: Range<u64>) -> impl ParallelIterator<Item = Range<u64>> {
    let Range { start, end } = range;
    let count = end.saturating_sub(start).div_ceil(MIN_CHUNK);
    (0..count).into_par_iter().map(move |c| {
        let lo = start + c * MIN_CHUNK;
        lo..(lo + MIN_CHUNK).min(end)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether work will actually be spread across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `range.map(f)` collected in order.
pub fn map_range<R, F>(exec: Execution, range: Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return chunks(range).flat_map_iter(|r| r.map(&f)).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

/// `range.filter_map(f)` collected in order.
pub fn filter_map_range<R, F>(exec: Execution, range: Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return chunks(range).flat_map_iter(|r| r.filter_map(&f)).collect();
    }
    let _ = exec;
    range.filter_map(f).collect()
}

/// `items.iter().map(f)` collected in order.
pub fn map_slice<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
