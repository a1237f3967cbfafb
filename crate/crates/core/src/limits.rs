use serde::{Deserialize, Serialize};

/// Largest element count any constructor accepts by default.
pub const DEFAULT_SIZE_CAP: usize = 4096;
/// Element indices are stored as `u16` in the Cayley tables.
pub const HARD_SIZE_CAP: usize = 1 << 16;
/// Environment variable that overrides [`Limits::size_cap`].
pub const SIZE_CAP_ENV: &str = "ZRING_SIZE_CAP";

/// Resource bounds for every exhaustive computation.
///
/// Each bound turns into an explicit error when exceeded; nothing is
/// silently approximated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    pub size_cap: usize,
    /// Abort ideal enumeration past this many ideals.
    pub ideal_bound: usize,
    /// Work budget for a single z_n° query.
    pub zn_budget: u128,
    /// Largest ring for the 2^|R| subset-scan ideal oracle.
    pub subset_scan_max: usize,
    /// Largest ambient ring on which structure-aware results are cross-checked by brute force.
    pub oracle_max_size: usize,
    /// Largest annihilator lattice on which the frame law is checked over all subsets.
    pub frame_exhaustive_max: usize,
    /// Random subsets drawn when the lattice is too large for the exhaustive sweep.
    pub frame_samples: usize,
    /// Largest n reported in a z_n° profile.
    pub profile_cap: usize,
    /// Largest pairwise co-prime family examined.
    pub coprime_family_max: usize,
    /// Largest family of ideals fed to the sum identity.
    pub sum_family_max: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            size_cap: DEFAULT_SIZE_CAP,
            ideal_bound: 4096,
            zn_budget: 2_000_000,
            subset_scan_max: 16,
            oracle_max_size: DEFAULT_SIZE_CAP,
            frame_exhaustive_max: 12,
            frame_samples: 1000,
            profile_cap: 4,
            coprime_family_max: 4,
            sum_family_max: 3,
        }
    }
}

impl Limits {
    /// Defaults, with the size cap taken from `ZRING_SIZE_CAP` when set.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(cap) = std::env::var(SIZE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            l.size_cap = cap.min(HARD_SIZE_CAP);
        }
        l
    }

    pub fn with_size_cap(mut self, cap: usize) -> Self {
        self.size_cap = cap.min(HARD_SIZE_CAP);
        self
    }
}
