use crate::permgroup::{DEFAULT_ENUMERATION_BOUND, DEFAULT_INDEX_BOUND};

/// Resource limits shared by the enumeration-based checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest group (or subgroup) that may be enumerated element by element.
    pub enumeration: u128,
    /// Largest subgroup index for coset tables.
    pub index: usize,
    /// Largest number of involution subsets the INV search may examine.
    pub involution_sets: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            enumeration: DEFAULT_ENUMERATION_BOUND,
            index: DEFAULT_INDEX_BOUND,
            involution_sets: 10_000_000,
        }
    }
}

impl Bounds {
    /// Defaults, with the enumeration bound overridden by `GF_BOUND` when set.
    pub fn from_env() -> Self {
        let mut b = Bounds::default();
        if let Some(v) = std::env::var("GF_BOUND").ok().and_then(|s| s.trim().parse().ok()) {
            b.enumeration = v;
        }
        b
    }
}
