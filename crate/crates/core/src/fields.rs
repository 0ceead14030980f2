//! Abelian extensions of the rationals as (conductor, fixing subgroup) pairs.
//!
//! By Kronecker-Weber every abelian `L/Q` is the fixed field of a subgroup
//! `H <= (Z/m)* = Gal(Q(zeta_m)/Q)`. Fields are always stored with `m` the
//! exact conductor, which makes equality structural and lets ramification be
//! read off the prime factors of `m`.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::lattice::Hnf;
use crate::limits::Limits;
use crate::zmodstar::{Subgroup, UnitGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianField {
    fixing: Subgroup,
    degree: u64,
}

/// Decomposition of a rational prime in an abelian field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingData {
    pub prime: u64,
    pub e: u64,
    pub f: u64,
    pub g: u64,
    pub local_degree: u64,
}

impl Serialize for AbelianField {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("AbelianField", 4)?;
        st.serialize_field("conductor", &self.conductor())?;
        st.serialize_field("subgroup_generators", &self.fixing.generators())?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("canonical", &true)?;
        st.end()
    }
}

impl fmt::Display for AbelianField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            return write!(f, "Q");
        }
        let m = self.conductor();
        if self.fixing.order() == 1 {
            write!(f, "Q(zeta_{m})")
        } else {
            write!(f, "Q(zeta_{m})^{:?}", self.fixing.generators())
        }
    }
}

impl AbelianField {
    pub fn rationals(limits: Limits) -> AbelianField {
        let g = UnitGroup::from_factorization(vec![], limits).expect("trivial group");
        AbelianField {
            fixing: Subgroup::full(&g),
            degree: 1,
        }
    }

    /// `Q(zeta_m)`; `m = 2 mod 4` is normalized to `m / 2`.
    pub fn cyclotomic(m: u64, limits: Limits) -> Result<AbelianField> {
        let m = if m % 4 == 2 { m / 2 } else { m };
        let g = UnitGroup::new(m, limits)?;
        AbelianField::fixed_field(Subgroup::trivial(&g))
    }

    /// Fixed field of `h` inside `Q(zeta_m)`, with the conductor made exact.
    pub fn fixed_field(h: Subgroup) -> Result<AbelianField> {
        let fixing = canonicalize(h)?;
        let degree = u64::try_from(fixing.index())
            .map_err(|_| Error::cap("field degree", fixing.index(), u64::MAX as u128))?;
        Ok(AbelianField { fixing, degree })
    }

    /// Fixed field of the subgroup of `(Z/m)*` generated by `generators`.
    pub fn from_generators(m: u128, generators: &[u128], limits: Limits) -> Result<AbelianField> {
        let g = UnitGroup::from_modulus(m, limits)?;
        AbelianField::fixed_field(Subgroup::closure(&g, generators)?)
    }

    pub fn conductor(&self) -> u128 {
        self.fixing.parent().modulus()
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn fixing_subgroup(&self) -> &Subgroup {
        &self.fixing
    }

    pub fn unit_group(&self) -> &Arc<UnitGroup> {
        self.fixing.parent()
    }

    pub fn limits(&self) -> Limits {
        *self.unit_group().limits()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree == 1
    }

    /// Fixing subgroups of both fields, lifted to `(Z/lcm)*`.
    fn lift_pair(&self, other: &AbelianField) -> Result<(Subgroup, Subgroup)> {
        let big = self.unit_group().lcm(other.unit_group())?;
        Ok((self.fixing.preimage(&big)?, other.fixing.preimage(&big)?))
    }

    pub fn compositum(&self, other: &AbelianField) -> Result<AbelianField> {
        let (a, b) = self.lift_pair(other)?;
        AbelianField::fixed_field(a.intersect(&b)?)
    }

    pub fn intersection(&self, other: &AbelianField) -> Result<AbelianField> {
        let (a, b) = self.lift_pair(other)?;
        AbelianField::fixed_field(a.join(&b)?)
    }

    /// Whether `other` is a subfield of `self`.
    pub fn contains(&self, other: &AbelianField) -> Result<bool> {
        if other.is_rationals() {
            return Ok(true);
        }
        if self.conductor() % other.conductor() != 0 {
            return Ok(false);
        }
        let (a, b) = self.lift_pair(other)?;
        b.contains(&a)
    }

    /// For Galois extensions: trivial intersection.
    pub fn linearly_disjoint(&self, other: &AbelianField) -> Result<bool> {
        Ok(self.intersection(other)?.is_rationals())
    }

    /// Ramification index, inertia degree and number of primes above `p`.
    ///
    /// With `m = p^a m'`, the inertia group is the kernel of
    /// `(Z/m)* -> (Z/m')*` and the decomposition group adds the lift of `p`
    /// that is trivial at `p^a`; both are measured modulo the fixing group.
    pub fn splitting_data(&self, p: u64) -> Result<SplittingData> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let g = self.unit_group();
        let h = self.fixing.lattice();
        let inertia_gens: Vec<Vec<u64>> = g.coordinates_at(p).map(|i| g.unit_vector(i)).collect();
        let mut decomposition_gens = inertia_gens.clone();
        decomposition_gens.push(g.frobenius_lift(p));
        let index_of = |gens: &[Vec<u64>]| -> u64 {
            let l = h.join(&Hnf::span(g.orders(), gens));
            l.index().expect("index bounded by degree") as u64
        };
        let with_inertia = index_of(&inertia_gens);
        let with_decomposition = index_of(&decomposition_gens);
        let e = self.degree / with_inertia;
        let ef = self.degree / with_decomposition;
        Ok(SplittingData {
            prime: p,
            e,
            f: ef / e,
            g: with_decomposition,
            local_degree: ef,
        })
    }

    pub fn local_degree(&self, p: u64) -> Result<u64> {
        Ok(self.splitting_data(p)?.local_degree)
    }

    pub fn totally_split(&self, p: u64) -> Result<bool> {
        Ok(self.local_degree(p)? == 1)
    }

    /// The largest `n` with `zeta_n` in the field (always even).
    pub fn roots_of_unity(&self) -> Result<u128> {
        let limits = self.limits();
        let mut n: u128 = 1;
        let mut two_part: u128 = 2;
        for &(r, a) in self.unit_group().factors() {
            let start = if r == 2 { 2 } else { 1 };
            let mut best = 1u64;
            for k in start..=a {
                let rk = r.pow(k);
                if self.contains(&AbelianField::cyclotomic(rk, limits)?)? {
                    best = rk;
                } else {
                    break;
                }
            }
            if r == 2 {
                two_part = two_part.max(best as u128);
            } else {
                n *= best as u128;
            }
        }
        Ok(n * two_part)
    }
}

/// Shrinks the modulus to the conductor: drop a prime `p` from `m` while
/// `H` contains the kernel of `(Z/m)* -> (Z/(m/p))*`.
fn canonicalize(mut h: Subgroup) -> Result<Subgroup> {
    'outer: loop {
        let group = h.parent().clone();
        for &(p, _) in group.factors() {
            let small = group.drop_prime(p)?;
            let kernel = Subgroup::reduction_kernel(&group, &small)?;
            if h.contains(&kernel)? {
                h = h.image(&small)?;
                continue 'outer;
            }
        }
        return Ok(h);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn cyc(m: u64) -> AbelianField {
        AbelianField::cyclotomic(m, lim()).unwrap()
    }

    fn fixed(m: u128, gens: &[u128]) -> AbelianField {
        AbelianField::from_generators(m, gens, lim()).unwrap()
    }

    #[test]
    fn cyclotomic_degrees() {
        assert!(cyc(1).is_rationals());
        assert_eq!(cyc(7).degree(), 6);
        assert_eq!(cyc(12).degree(), 4);
        assert_eq!(cyc(14), cyc(7));
        assert_eq!(cyc(2), AbelianField::rationals(lim()));
    }

    #[test]
    fn fixed_fields_of_seven() {
        let quad = fixed(7, &[2]);
        assert_eq!(quad.degree(), 2);
        assert_eq!(quad.conductor(), 7);
        assert_eq!(fixed(7, &[6]).degree(), 3);
        assert!(fixed(7, &[3]).is_rationals());
        assert_eq!(fixed(7, &[3]).conductor(), 1);
    }

    #[test]
    fn conductor_shrinks() {
        // Q(i) written inside Q(zeta_8) and Q(zeta_24)
        assert_eq!(fixed(8, &[5]), cyc(4));
        assert_eq!(fixed(24, &[5, 13]), cyc(4));
        // Q(sqrt 5) inside Q(zeta_35)
        let sqrt5 = fixed(5, &[4]);
        let big = UnitGroup::new(35, lim()).unwrap();
        let lifted = sqrt5.fixing_subgroup().preimage(&big).unwrap();
        assert_eq!(AbelianField::fixed_field(lifted).unwrap(), sqrt5);
    }

    #[test]
    fn compositum_and_intersection() {
        let l = fixed(7, &[2]);
        let q = AbelianField::rationals(lim());
        assert_eq!(l.compositum(&q).unwrap(), l);
        assert_eq!(l.compositum(&l).unwrap(), l);
        let c21 = cyc(3).compositum(&cyc(7)).unwrap();
        assert_eq!(c21, cyc(21));
        assert_eq!(c21.degree(), 12);
        assert!(cyc(7).intersection(&cyc(11)).unwrap().is_rationals());
        assert_eq!(l.intersection(&l).unwrap(), l);
        assert!(cyc(3).intersection(&l).unwrap().is_rationals());
        assert!(c21.contains(&l).unwrap());
        assert!(!l.contains(&cyc(3)).unwrap());
    }

    #[test]
    fn splitting_examples() {
        let s = cyc(7).splitting_data(2).unwrap();
        assert_eq!((s.e, s.f, s.g, s.local_degree), (1, 3, 2, 3));
        let s = cyc(7).splitting_data(7).unwrap();
        assert_eq!((s.e, s.f, s.g, s.local_degree), (6, 1, 1, 6));
        let q = AbelianField::rationals(lim());
        assert_eq!(q.local_degree(5).unwrap(), 1);
        assert_eq!(cyc(11).local_degree(2).unwrap(), 10);
        assert_eq!(cyc(23).local_degree(2).unwrap(), 11);
        assert!(fixed(7, &[2]).totally_split(2).unwrap());
        assert!(!cyc(7).totally_split(2).unwrap());
        assert!(cyc(5).totally_split(11).unwrap());
        // 2 ramifies in Q(i) with e = 2
        let s = cyc(4).splitting_data(2).unwrap();
        assert_eq!((s.e, s.f, s.g), (2, 1, 1));
        assert!(matches!(cyc(4).splitting_data(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(AbelianField::rationals(lim()).roots_of_unity().unwrap(), 2);
        assert_eq!(cyc(7).roots_of_unity().unwrap(), 14);
        assert_eq!(fixed(7, &[6]).roots_of_unity().unwrap(), 2);
        assert_eq!(cyc(8).roots_of_unity().unwrap(), 8);
        assert_eq!(cyc(12).roots_of_unity().unwrap(), 12);
        assert_eq!(cyc(4).roots_of_unity().unwrap(), 4);
    }
}
