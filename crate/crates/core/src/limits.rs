//! Enumeration guards.
//!
//! Both limits can be raised (or lowered) at runtime through the
//! `CHAINMAT_MAX_CLOSURE` environment variable, which is read once.

use std::sync::OnceLock;

pub const DEFAULT_MAX_CLOSURE: u64 = 1 << 24;
pub const DEFAULT_MAX_SEARCH: u64 = 1 << 26;

fn env_override() -> Option<u64> {
    static CELL: OnceLock<Option<u64>> = OnceLock::new();
    *CELL.get_or_init(|| {
        std::env::var("CHAINMAT_MAX_CLOSURE")
            .ok()
            .and_then(|s| s.trim().parse().ok())
    })
}

/// Largest submodule that will be enumerated explicitly.
pub fn max_closure() -> u64 {
    env_override().unwrap_or(DEFAULT_MAX_CLOSURE)
}

/// Largest ambient space `R^E` that will be scanned exhaustively.
pub fn max_search() -> u64 {
    env_override().unwrap_or(DEFAULT_MAX_SEARCH)
}
