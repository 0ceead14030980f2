//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use splitfield::{AbelianField, FpPolynomial, IntPolynomial, Limits, Subgroup, UnitGroup};

/// Phi_m reduced mod p, for p not dividing m.
pub fn cyclotomic_mod(m: u64, p: u64) -> FpPolynomial {
    IntPolynomial::cyclotomic(m).reduce_mod(p)
}

/// Dense polynomial of the given degree with coefficients from a fixed LCG.
pub fn pseudo_random_poly(p: u64, degree: usize, seed: u64) -> FpPolynomial {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut coeffs: Vec<u64> = (0..degree)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % p
        })
        .collect();
    coeffs.push(1);
    FpPolynomial::new(p, coeffs)
}

pub struct SubgroupPair {
    pub group: Arc<UnitGroup>,
    pub a: Subgroup,
    pub b: Subgroup,
}

/// Two subgroups of (Z/m)* for m = 8 * 9 * 5 * 7 * 11 * 13.
pub fn subgroup_pair() -> SubgroupPair {
    let group = UnitGroup::new(8 * 9 * 5 * 7 * 11 * 13, Limits::default()).expect("small modulus");
    let a = Subgroup::closure(&group, &[17, 101]).expect("coprime generators");
    let b = Subgroup::closure(&group, &[23, 43, 131]).expect("coprime generators");
    SubgroupPair { group, a, b }
}

pub fn avoid_zeta_105() -> AbelianField {
    AbelianField::cyclotomic(105, Limits::default()).expect("small conductor")
}
