//! Resource caps and reproducibility knobs shared by the library entry
//! points. The CLI materializes one of these from flags/environment and
//! threads it through; library defaults are deliberately conservative.

use crate::ffield::factor::DEFAULT_FACTOR_SEED;
use crate::rat::{rat, Rat};

#[derive(Clone, Debug)]
pub struct Caps {
    /// Refuse point enumerations whose predicted size exceeds this.
    pub enum_cap: u64,
    /// Cap on the iteration count N in certified height limits.
    pub iter_cap: u32,
    /// Seed for the randomized factorization splitting.
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enum_cap: 4_000_000,
            iter_cap: 64,
            seed: DEFAULT_FACTOR_SEED,
        }
    }
}

/// Default certified-error target for canonical heights.
pub fn default_eps() -> Rat {
    rat(1, 1000)
}
