//! Runtime limits and knobs shared by the computing modules.

use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Configuration for enumeration limits, search depth, parallelism and caching.
///
/// Groups are enumerated element-by-element up to `max_enum`; dense
/// multiplication tables are only built up to `table_limit` (a dense table
/// costs `order^2` words, so this bound is much smaller).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Config {
    /// Largest group enumerated as an indexed element list.
    pub max_enum: usize,
    /// Largest group stored as a dense multiplication table.
    pub table_limit: usize,
    /// Largest group whose full automorphism group is brute-forced.
    pub brute_aut_limit: usize,
    /// Safety cap on the number of automorphisms collected by brute force.
    pub max_aut_count: usize,
    /// Ceiling on permutation-group closures (D0/D1 enumeration).
    pub perm_closure_limit: usize,
    /// Witness search depth (length of automorphism words).
    pub witness_depth: usize,
    /// Worker threads; 0 means the rayon default.
    pub threads: usize,
    /// RNG seed for all sampled checks.
    pub seed: u64,
    /// Cache directory; `None` disables caching.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cache_dir: Option<PathBuf>,
    /// Emit wall-clock timings in reports (breaks byte-identical output).
    pub timings: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_enum: 1 << 21,
            table_limit: 4096,
            brute_aut_limit: 256,
            max_aut_count: 1 << 20,
            perm_closure_limit: 1_000_000,
            witness_depth: 3,
            threads: 0,
            seed: 0,
            cache_dir: None,
            timings: false,
        }
    }
}

impl Config {
    /// Runs `f` inside a rayon pool sized by `self.threads`.
    pub fn with_pool<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        if self.threads == 0 {
            f()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.threads)
                .build()
                .expect("thread pool");
            pool.install(f)
        }
    }
}
