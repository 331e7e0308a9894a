//! Enumeration and size limits.

/// Environment variable that overrides the prime and hike enumeration caps.
pub const CAP_ENV: &str = "HIKE_FORGE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of primes a catalog may hold.
    pub max_primes: usize,
    /// Maximum number of hikes a single enumeration may produce.
    pub max_hikes: usize,
    /// Largest vertex count accepted by the permanent.
    pub permanent_n: usize,
    /// Longest hike the contiguity oracle will expand.
    pub contiguity_len: usize,
    /// Largest vertex count accepted by the Leibniz expansions.
    pub leibniz_n: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_primes: 1_000_000,
            max_hikes: 2_000_000,
            permanent_n: 14,
            contiguity_len: 10,
            leibniz_n: 8,
        }
    }
}

impl Caps {
    /// Defaults, with `HIKE_FORGE_CAP` (when set to an integer) replacing both
    /// enumeration caps.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(cap) = std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            caps.max_primes = cap;
            caps.max_hikes = cap;
        }
        caps
    }
}
