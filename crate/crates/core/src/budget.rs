//! Per-thread accounting of Scalar term operations.
//!
//! Arithmetic charges the number of coefficient products it performs. Once a
//! cap installed with [`with_budget`] is exceeded, multiplications stop doing
//! work and return zero; `with_budget` then reports [`Error::ResourceCap`]
//! instead of whatever the aborted computation produced.

use std::cell::Cell;

use crate::error::{Error, Result};

/// Default cap on term operations for one symbolic verification.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "SUPERINV_TERM_CAP";

thread_local! {
    static REMAINING: Cell<Option<u64>> = const { Cell::new(None) };
    static EXCEEDED: Cell<bool> = const { Cell::new(false) };
    static SPENT: Cell<u64> = const { Cell::new(0) };
}

/// The cap from the environment, or [`DEFAULT_CAP`].
pub fn configured_cap() -> u64 {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// Records `n` term operations. Returns false once the budget is exhausted.
#[inline]
pub(crate) fn charge(n: u64) -> bool {
    SPENT.with(|s| s.set(s.get().wrapping_add(n)));
    REMAINING.with(|r| match r.get() {
        None => true,
        Some(left) => {
            if EXCEEDED.with(|e| e.get()) {
                return false;
            }
            if n > left {
                EXCEEDED.with(|e| e.set(true));
                r.set(Some(0));
                false
            } else {
                r.set(Some(left - n));
                true
            }
        }
    })
}

#[inline]
pub(crate) fn exhausted() -> bool {
    EXCEEDED.with(|e| e.get())
}

/// Total operations charged on this thread so far.
pub fn spent() -> u64 {
    SPENT.with(|s| s.get())
}

/// Runs `f` with at most `cap` term operations.
pub fn with_budget<T>(cap: u64, f: impl FnOnce() -> T) -> Result<T> {
    let saved_remaining = REMAINING.with(|r| r.replace(Some(cap)));
    let saved_exceeded = EXCEEDED.with(|e| e.replace(false));
    let out = f();
    let exceeded = EXCEEDED.with(|e| e.replace(saved_exceeded));
    REMAINING.with(|r| r.set(saved_remaining));
    if exceeded {
        Err(Error::ResourceCap(cap))
    } else {
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_trips_and_restores() {
        let r = with_budget(10, || {
            assert!(charge(5));
            assert!(!charge(6));
            assert!(exhausted());
        });
        assert_eq!(r, Err(Error::ResourceCap(10)));
        assert!(!exhausted());
        assert!(charge(1_000_000));
        assert_eq!(with_budget(10, || 3), Ok(3));
    }
}
