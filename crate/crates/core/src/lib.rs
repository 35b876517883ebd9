//! Exact polytopes of Young diagrams: order, chain and chain-order
//! polytopes, their diagonal restrictions, piecewise-linear mutations
//! between them, and Ehrhart quasi-polynomials.

pub mod cli;
pub mod ehrhart;
pub mod error;
pub mod geometry;
pub mod plmaps;
pub mod poset;
pub mod posetpoly;

pub use error::{Error, Result};

/// Environment variable capping the number of counting threads.
pub const THREADS_ENV: &str = "POLYMUT_THREADS";

/// Size the global thread pool from `POLYMUT_THREADS` when it is set to a
/// positive integer. Later calls, or calls after the pool has started, have
/// no effect.
pub fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}
