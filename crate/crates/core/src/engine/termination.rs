//! Quiescence detection for the concurrent engines.
//!
//! Each worker owns a pair of counters. Before touching any pending mass it
//! bumps `started`; after its last write of that push it bumps `completed`.
//! The monitor reads every `completed` then every `started`, scans the
//! pending masses, and reads the counters again in the same order. If every
//! worker had no push in flight when the scan began and started none until it
//! ended, the scan observed a frozen state, so a clean scan proves that no
//! vertex will ever be pushed again.
//!
//! Checking only the threshold, as a plain scan does, can miss mass created
//! behind the scan cursor by a push that zeroed a vertex ahead of it.
//!
//! Workers also publish whether their latest full pass pushed nothing. The
//! flag only decides when a scan is worth paying for; it plays no part in the
//! convergence decision.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

/// Push counters published by one worker; padded to its own cache line.
#[derive(Debug, Default)]
#[repr(align(128))]
pub struct WorkerCounters {
    started: AtomicU64,
    completed: AtomicU64,
    dangling_pushes: AtomicU64,
    idle: AtomicBool,
}

impl WorkerCounters {
    /// Marks the start of push number `count` (1-based) by the owner.
    #[inline]
    pub fn begin(&self, count: u64) {
        self.started.store(count, Ordering::SeqCst);
    }

    #[inline]
    pub fn end(&self, count: u64, dangling_pushes: u64) {
        self.dangling_pushes.store(dangling_pushes, Ordering::Relaxed);
        self.completed.store(count, Ordering::SeqCst);
    }

    /// Records whether the pass that just ended pushed nothing.
    #[inline]
    pub fn set_idle(&self, idle: bool) {
        self.idle.store(idle, Ordering::Relaxed);
    }

    pub fn is_idle(&self) -> bool {
        self.idle.load(Ordering::Relaxed)
    }

    pub fn started(&self) -> u64 {
        self.started.load(Ordering::SeqCst)
    }

    pub fn completed(&self) -> u64 {
        self.completed.load(Ordering::SeqCst)
    }

    pub fn dangling_pushes(&self) -> u64 {
        self.dangling_pushes.load(Ordering::Relaxed)
    }
}

/// Monitor side of the protocol plus the stop flag the workers poll.
#[derive(Debug)]
pub struct QuiescenceMonitor<'a> {
    counters: &'a [WorkerCounters],
    stop: &'a AtomicBool,
}

impl<'a> QuiescenceMonitor<'a> {
    pub fn new(counters: &'a [WorkerCounters], stop: &'a AtomicBool) -> Self {
        Self { counters, stop }
    }

    fn snapshot(&self) -> (Vec<u64>, Vec<u64>) {
        let completed = self.counters.iter().map(WorkerCounters::completed).collect();
        let started = self.counters.iter().map(WorkerCounters::started).collect();
        (completed, started)
    }

    /// Runs `scan`, which reports whether every relevant vertex is at or below
    /// the threshold, and decides whether the run has converged.
    pub fn check<T>(&self, scan: impl FnOnce() -> (bool, T)) -> (bool, T) {
        let (c0, s0) = self.snapshot();
        let (clean, sample) = scan();
        let (c1, s1) = self.snapshot();
        let quiet = c0 == s0 && c1 == s0 && s1 == s0;
        (clean && quiet, sample)
    }

    /// Whether every worker's latest pass was idle.
    pub fn all_idle(&self) -> bool {
        self.counters.iter().all(WorkerCounters::is_idle)
    }

    pub fn total_pushes(&self) -> u64 {
        self.counters.iter().map(WorkerCounters::started).sum()
    }

    pub fn total_dangling_pushes(&self) -> u64 {
        self.counters.iter().map(WorkerCounters::dangling_pushes).sum()
    }

    pub fn stop(&self) {
        self.stop.store(true, Ordering::SeqCst);
    }
}
