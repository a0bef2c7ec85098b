//! Finite cubical sets with connections-free cube category, their Day
//! convolution and box-filling, cellular homology, and categories enriched
//! in cubical sets presented by generators.

pub mod cube;
pub mod cubical;
pub mod enriched;
pub mod error;
pub mod homology;
pub mod json;
pub mod realization;
pub mod verify;

pub use error::{Error, Result};

/// Sizes the global worker pool. Call before any parallel work; later calls
/// are rejected.
pub fn set_jobs(jobs: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| Error::invalid(format!("cannot size the worker pool: {e}")))
}
