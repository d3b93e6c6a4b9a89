use std::sync::atomic::{AtomicU64, Ordering};

/// `f64` stored as its bit pattern in an [`AtomicU64`].
#[derive(Debug, Default)]
#[repr(transparent)]
pub struct AtomicF64(AtomicU64);

impl AtomicF64 {
    pub fn new(x: f64) -> Self {
        Self(AtomicU64::new(x.to_bits()))
    }

    #[inline]
    pub fn load(&self, order: Ordering) -> f64 {
        f64::from_bits(self.0.load(order))
    }

    #[inline]
    pub fn store(&self, x: f64, order: Ordering) {
        self.0.store(x.to_bits(), order)
    }

    /// Replaces the value, returning the previous one.
    #[inline]
    pub fn swap(&self, x: f64, order: Ordering) -> f64 {
        f64::from_bits(self.0.swap(x.to_bits(), order))
    }

    /// Atomic `+=` by compare-and-swap; concurrent additions are never lost.
    #[inline]
    pub fn fetch_add(&self, delta: f64, order: Ordering) -> f64 {
        let mut current = self.0.load(Ordering::Relaxed);
        loop {
            let next = (f64::from_bits(current) + delta).to_bits();
            match self.0.compare_exchange_weak(current, next, order, Ordering::Relaxed) {
                Ok(prev) => return f64::from_bits(prev),
                Err(actual) => current = actual,
            }
        }
    }

    pub fn into_inner(self) -> f64 {
        f64::from_bits(self.0.into_inner())
    }
}

/// Per-vertex `<reserved, pending>` pairs shared by the workers of a run.
///
/// `pending` is updated concurrently (atomic add, exchange with zero).
/// `reserved` is only ever written by the worker owning the vertex.
#[derive(Debug)]
pub struct MassState {
    pub reserved: Vec<AtomicF64>,
    pub pending: Vec<AtomicF64>,
}

impl MassState {
    pub fn new(initial_pending: &[f64]) -> Self {
        Self {
            reserved: initial_pending.iter().map(|_| AtomicF64::new(0.0)).collect(),
            pending: initial_pending.iter().map(|&h| AtomicF64::new(h)).collect(),
        }
    }

    pub fn into_vecs(self) -> (Vec<f64>, Vec<f64>) {
        (
            self.reserved.into_iter().map(AtomicF64::into_inner).collect(),
            self.pending.into_iter().map(AtomicF64::into_inner).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn concurrent_adds_are_not_lost() {
        let x = Arc::new(AtomicF64::new(0.0));
        std::thread::scope(|s| {
            for _ in 0..4 {
                let x = &x;
                s.spawn(move || {
                    for _ in 0..10_000 {
                        x.fetch_add(1.0, Ordering::SeqCst);
                    }
                });
            }
        });
        assert_eq!(x.load(Ordering::SeqCst), 40_000.0);
    }

    #[test]
    fn swap_returns_previous() {
        let x = AtomicF64::new(2.5);
        assert_eq!(x.swap(0.0, Ordering::SeqCst), 2.5);
        assert_eq!(x.load(Ordering::SeqCst), 0.0);
    }
}
