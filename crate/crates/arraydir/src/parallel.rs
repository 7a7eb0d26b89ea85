//! Row-parallel sphere scans on scoped threads.

use std::num::NonZeroUsize;
use std::thread;

use arraydir_core::directivity::{ScanGrid, ScanPlan};

pub const THREADS_ENV: &str = "ARRAYDIR_THREADS";

/// Hardware parallelism, capped by `ARRAYDIR_THREADS` when it holds a positive integer.
pub fn worker_count() -> usize {
    let hw = thread::available_parallelism().map_or(1, NonZeroUsize::get);
    match std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        Some(cap) if cap > 0 => hw.min(cap),
        _ => hw,
    }
}

/// Evaluates every row of `plan` on up to `workers` threads. Each row is
/// computed independently, so the result does not depend on `workers`.
pub fn run_plan(plan: &ScanPlan, workers: usize) -> ScanGrid {
    let (rows, cols) = (plan.theta_steps(), plan.phi_steps());
    let mut values = vec![0.0; rows * cols];
    let workers = workers.clamp(1, rows);
    let rows_per_worker = rows.div_ceil(workers);
    thread::scope(|s| {
        for (block, chunk) in values.chunks_mut(rows_per_worker * cols).enumerate() {
            s.spawn(move || {
                for (k, row) in chunk.chunks_mut(cols).enumerate() {
                    plan.row_into(block * rows_per_worker + k, row);
                }
            });
        }
    });
    plan.assemble(values)
}
