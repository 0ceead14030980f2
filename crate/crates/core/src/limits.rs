use serde::{Deserialize, Serialize};

/// Size limits shared by every computation.
///
/// `modulus_cap` bounds each prime-power factor `p^a` of a modulus (the unit
/// of work for discrete logarithms); moduli themselves may be products of
/// many such factors, as long as they fit in a `u128`. Period polynomials
/// additionally require the whole conductor to stay below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub modulus_cap: u64,
    pub subgroup_enumeration_cap: u64,
    pub prime_search_bound: u64,
    pub period_degree_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            modulus_cap: 10_000_000,
            subgroup_enumeration_cap: 1_000_000,
            prime_search_bound: 1_000_000,
            period_degree_cap: 24,
        }
    }
}
