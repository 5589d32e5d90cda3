//! Process-wide vertex budget for operations that allocate one slot per
//! vertex of a Hamming space.
//!
//! Precedence: an explicit [`set_vertex_budget`] call (the CLI flag), then the
//! `PERFECTLIKE_BUDGET` environment variable, then [`DEFAULT_VERTEX_BUDGET`].

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_VERTEX_BUDGET: u64 = 1 << 28;
pub const BUDGET_ENV: &str = "PERFECTLIKE_BUDGET";

// 0 means "not yet resolved".
static BUDGET: AtomicU64 = AtomicU64::new(0);

pub fn vertex_budget() -> u64 {
    let b = BUDGET.load(Ordering::Relaxed);
    if b != 0 {
        return b;
    }
    let resolved = std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_VERTEX_BUDGET);
    // A concurrent explicit set wins over the lazily resolved value.
    let _ = BUDGET.compare_exchange(0, resolved, Ordering::Relaxed, Ordering::Relaxed);
    BUDGET.load(Ordering::Relaxed)
}

pub fn set_vertex_budget(vertices: u64) {
    BUDGET.store(vertices.max(1), Ordering::Relaxed);
}

/// Fails with [`Error::BudgetExceeded`] when `q^n` vertices would not fit.
pub fn check(q: u32, n: u32) -> Result<u64> {
    let needed = (q as u128).checked_pow(n).unwrap_or(u128::MAX);
    let budget = vertex_budget();
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed as u64)
}
