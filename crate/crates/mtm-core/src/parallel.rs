//! Deterministic parallel evaluation.
//!
//! The unit of parallelism is an index-keyed closure: every task derives all
//! randomness from its own index, results are collected in index order, and
//! reductions happen sequentially afterwards — so the outcome is bitwise
//! independent of the worker count and of scheduling.
//!
//! Thread pools are cached per worker count: samplers call into this on
//! every step, and rebuilding a pool each time would dominate the step cost.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

fn pool_for(workers: usize) -> Arc<ThreadPool> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<ThreadPool>>>> = OnceLock::new();
    let registry = POOLS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = registry.lock().expect("worker pool registry poisoned");
    Arc::clone(map.entry(workers).or_insert_with(|| {
        Arc::new(
            ThreadPoolBuilder::new()
                .num_threads(workers)
                .thread_name(move |i| format!("mtm-worker-{workers}.{i}"))
                .build()
                .expect("failed to spawn worker pool"),
        )
    }))
}

/// Evaluate `f(0), …, f(n-1)` with up to `workers` threads and return the
/// results in index order. `workers <= 1` runs inline on the caller's
/// thread. Tasks must derive any randomness from their index alone.
pub fn map_indexed<T, F>(workers: usize, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if workers <= 1 || n <= 1 {
        (0..n).map(f).collect()
    } else {
        pool_for(workers).install(|| (0..n).into_par_iter().map(f).collect())
    }
}
