//! Self-dual codes over `F2`, `F4`, `F2 + uF2` and `F4 + uF4`: ring
//! arithmetic, Gray maps, four-circulant constructions, lifts, length
//! extensions, and binary weight analysis.

pub mod analysis;
pub mod binary;
pub mod code;
pub mod error;
pub mod gray;
pub mod harness;
pub mod report;
pub mod ring;
pub mod spec;

pub use error::{Error, Result};

/// Runs `f` on a dedicated pool of `jobs` threads, or the global pool.
pub fn run_with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}
