use rayon::prelude::*;

use crate::error::{Error, Result};

pub(crate) const DEFAULT_CHUNK: u64 = 1 << 14;

/// Splits `[0, total)` into chunks, maps each chunk (in parallel when `workers > 1`) and
/// feeds the results to `sink` in ascending chunk order. A sink error stops the walk.
pub(crate) fn ordered_chunks<T, M, S>(total: u64, workers: usize, chunk: u64, map: M, mut sink: S) -> Result<()>
where
    T: Send,
    M: Fn(u64, u64) -> T + Sync,
    S: FnMut(T) -> Result<()>,
{
    if workers == 0 {
        return Err(Error::InvalidParams("worker count must be at least 1".into()));
    }
    let chunk = chunk.max(1);
    let chunks = total.div_ceil(chunk);
    let bounds = |i: u64| (i * chunk, ((i + 1) * chunk).min(total));
    if workers == 1 {
        for i in 0..chunks {
            let (lo, hi) = bounds(i);
            sink(map(lo, hi))?;
        }
        return Ok(());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot start {workers} workers: {e}")))?;
    let window = workers as u64 * 4;
    let mut start = 0;
    while start < chunks {
        let end = (start + window).min(chunks);
        let results: Vec<T> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map(|i| {
                    let (lo, hi) = bounds(i);
                    map(lo, hi)
                })
                .collect()
        });
        for r in results {
            sink(r)?;
        }
        start = end;
    }
    Ok(())
}
