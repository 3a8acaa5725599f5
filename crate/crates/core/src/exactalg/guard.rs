//! Process-wide term-count guard.
//!
//! Arithmetic is infallible by signature, so an oversized intermediate aborts
//! the computation with a typed panic payload that front ends can catch.

use std::sync::atomic::{AtomicUsize, Ordering};

static MAX_TERMS: AtomicUsize = AtomicUsize::new(usize::MAX);

/// Payload carried by the guard's panic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitExceeded {
    pub terms: usize,
    pub limit: usize,
}

impl std::fmt::Display for LimitExceeded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "polynomial with {} terms exceeds the limit of {}", self.terms, self.limit)
    }
}

pub fn set_max_terms(limit: usize) {
    MAX_TERMS.store(limit.max(1), Ordering::Relaxed);
}

pub fn max_terms() -> usize {
    MAX_TERMS.load(Ordering::Relaxed)
}

#[inline]
pub(crate) fn check_terms(n: usize) {
    let limit = MAX_TERMS.load(Ordering::Relaxed);
    if n > limit {
        std::panic::panic_any(LimitExceeded { terms: n, limit });
    }
}

/// Run `f`, converting a guard abort into an error value.
pub fn catch_limit<T, F: FnOnce() -> T + std::panic::UnwindSafe>(f: F) -> Result<T, LimitExceeded> {
    match std::panic::catch_unwind(f) {
        Ok(v) => Ok(v),
        Err(payload) => match payload.downcast::<LimitExceeded>() {
            Ok(l) => Err(*l),
            Err(other) => std::panic::resume_unwind(other),
        },
    }
}
