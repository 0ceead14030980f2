//! Dedekind's index criterion and the monogenic degree bound.
//!
//! For a monic irreducible `f` and a prime `p`, factor `f = prod g_i^e_i`
//! mod `p`, put `g = prod lift(g_i)`, `h` = lift of `f / g`, and
//! `F = (g h - f) / p`. Then `p` divides `[O_K : Z[alpha]]` exactly when
//! `gcd(F, g, h) != 1` in `GF(p)[x]`; otherwise the factorization of `f`
//! mod `p` is the factorization of `p` in `O_K`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{factor, is_prime, primes_up_to};
use crate::error::{Error, Result};
use crate::poly::{discriminant, FpPolynomial, IntPolynomial};

/// How far the rational irreducibility of the input was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    /// Degree patterns mod several primes leave no room for a proper factor.
    Proven,
    /// No factor was detected, but the probes could not rule one out.
    Probed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorPower {
    pub factor: FpPolynomial,
    pub multiplicity: u32,
}

/// A ramification index and inertia degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PrimeFactorShape {
    pub e: u32,
    pub f: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DedekindReport {
    pub polynomial: IntPolynomial,
    pub prime: u64,
    pub factors: Vec<FactorPower>,
    pub index_divisible: bool,
    /// Present only when `p` does not divide the index.
    pub splitting: Option<Vec<PrimeFactorShape>>,
    pub irreducibility: Irreducibility,
}

pub fn dedekind_index_test(f: &IntPolynomial, p: u64, seed: u64) -> Result<DedekindReport> {
    validate(f, p)?;
    let irreducibility = probe_irreducibility(f, seed)?;
    dedekind_index_test_probed(f, p, seed, irreducibility)
}

fn validate(f: &IntPolynomial, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() || f.degree() == Some(0) {
        return Err(Error::NotMonic);
    }
    Ok(())
}

/// As [`dedekind_index_test`], with the result of an earlier
/// [`probe_irreducibility`] call on `f` instead of a fresh probe.
pub fn dedekind_index_test_probed(
    f: &IntPolynomial,
    p: u64,
    seed: u64,
    irreducibility: Irreducibility,
) -> Result<DedekindReport> {
    validate(f, p)?;
    let fbar = f.reduce_mod(p);
    let factors = fbar.factor(seed)?;
    let gbar = factors
        .iter()
        .fold(FpPolynomial::one(p), |acc, (g, _)| acc.mul(g));
    let hbar = fbar.div_exact(&gbar);
    let g = gbar.lift();
    let h = hbar.lift();
    let big_f = g
        .mul(&h)
        .sub(f)
        .div_exact_scalar(&BigInt::from(p))
        .ok_or_else(|| Error::Assertion("g*h - f not divisible by p".into()))?;
    let common = big_f.reduce_mod(p).gcd(&gbar.gcd(&hbar));
    let index_divisible = !common.is_one();
    let splitting = (!index_divisible).then(|| {
        factors
            .iter()
            .map(|(g, e)| PrimeFactorShape {
                e: *e,
                f: g.degree().unwrap_or(0),
            })
            .collect()
    });
    Ok(DedekindReport {
        polynomial: f.clone(),
        prime: p,
        factors: factors
            .into_iter()
            .map(|(factor, multiplicity)| FactorPower { factor, multiplicity })
            .collect(),
        index_divisible,
        splitting,
        irreducibility,
    })
}

const PROBE_PRIMES: usize = 12;
const MAX_DIVISORS: usize = 10_000;

/// Cheap checks for rational reducibility of a monic polynomial.
///
/// Detects repeated roots, integer roots, and otherwise intersects the
/// possible factor degrees allowed by the factorizations mod a few primes.
pub fn probe_irreducibility(f: &IntPolynomial, seed: u64) -> Result<Irreducibility> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n <= 1 {
        return Ok(Irreducibility::Proven);
    }
    let disc = discriminant(f);
    if disc.is_zero() {
        return Err(Error::Reducible("repeated roots".into()));
    }
    let a0 = f.coeff(0);
    if a0.is_zero() {
        return Err(Error::Reducible("x divides the polynomial".into()));
    }
    if let Some(c) = a0.abs().to_u64() {
        let divisors = divisors(c);
        if divisors.len() <= MAX_DIVISORS {
            for d in divisors {
                for r in [BigInt::from(d), -BigInt::from(d)] {
                    if f.eval(&r).is_zero() {
                        return Err(Error::Reducible(format!("{r} is a root")));
                    }
                }
            }
        }
    }
    // bit k set: a factor of degree k is still possible
    let mut possible = vec![true; n + 1];
    let mut used = 0;
    for q in primes_up_to(1000) {
        if used == PROBE_PRIMES {
            break;
        }
        if (&disc % BigInt::from(q)).is_zero() {
            continue;
        }
        used += 1;
        let degrees: Vec<usize> = f
            .reduce_mod(q)
            .factor(seed)?
            .iter()
            .map(|(g, _)| g.degree().unwrap_or(0))
            .collect();
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in degrees {
            for k in (d..=n).rev() {
                sums[k] |= sums[k - d];
            }
        }
        for k in 0..=n {
            possible[k] &= sums[k];
        }
        if possible[1..n].iter().all(|&b| !b) {
            return Ok(Irreducibility::Proven);
        }
    }
    Ok(Irreducibility::Probed)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let base = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(base.iter().map(|d| d * pk));
        }
        if out.len() > MAX_DIVISORS {
            break;
        }
    }
    out
}

/// `p^(B^2 + 1) * B^2`.
pub fn monogenic_degree_bound(p: u64, b: u64) -> BigUint {
    let b2 = BigUint::from(b) * BigUint::from(b);
    let exp = b
        .checked_mul(b)
        .and_then(|x| x.checked_add(1))
        .and_then(|x| u32::try_from(x).ok())
        .expect("exponent fits in u32");
    num_traits::pow(BigUint::from(p), exp as usize) * b2
}

/// Monic, `p` divides every lower coefficient, `p^2` does not divide the constant.
pub fn is_eisenstein(f: &IntPolynomial, p: u64) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 || !f.is_monic() {
        return false;
    }
    let pb = BigInt::from(p);
    let p2 = &pb * &pb;
    f.coefficients()[..n].iter().all(|c| (c % &pb).is_zero()) && !(f.coeff(0) % p2).is_zero()
}

/// `x^3 - 2 p x + p`.
pub fn eisenstein_cubic(p: u64) -> IntPolynomial {
    let pb = BigInt::from(p);
    IntPolynomial::new(vec![pb.clone(), -(BigInt::from(2) * pb), BigInt::zero(), BigInt::one()])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub label: String,
    pub degree: usize,
    pub index_divisible: bool,
    pub splitting: Option<Vec<PrimeFactorShape>>,
    /// `p` does not divide the index yet the degree exceeds the bound.
    pub refutes_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub prime: u64,
    pub local_degree_bound: u64,
    #[serde(serialize_with = "display")]
    pub degree_bound: BigUint,
    pub entries: Vec<ScanEntry>,
    pub refutation_witnesses: Vec<String>,
}

fn display<S: Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Runs the index test on every member of a family and flags members that
/// are index-free at `p` with degree above `p^(B^2+1) B^2`.
pub fn index_scan(family: &[(String, IntPolynomial)], p: u64, b: u64, seed: u64) -> Result<ScanReport> {
    let bound = monogenic_degree_bound(p, b);
    let entries = family
        .par_iter()
        .map(|(label, f)| {
            if !f.is_monic() {
                return Err(Error::NotMonic);
            }
            let report = dedekind_index_test(f, p, seed)?;
            let degree = f.degree().unwrap_or(0);
            Ok(ScanEntry {
                label: label.clone(),
                degree,
                index_divisible: report.index_divisible,
                splitting: report.splitting,
                refutes_bound: !report.index_divisible && BigUint::from(degree) > bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let refutation_witnesses = entries
        .iter()
        .filter(|e| e.refutes_bound)
        .map(|e| e.label.clone())
        .collect();
    Ok(ScanReport {
        prime: p,
        local_degree_bound: b,
        degree_bound: bound,
        entries,
        refutation_witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_integers_at_two() {
        let r = dedekind_index_test(&IntPolynomial::from_i64s(&[1, 0, 1]), 2, 0).unwrap();
        assert!(!r.index_divisible);
        assert_eq!(r.splitting, Some(vec![PrimeFactorShape { e: 2, f: 1 }]));
        assert_eq!(r.irreducibility, Irreducibility::Proven);
    }

    #[test]
    fn linear_polynomial() {
        let r = dedekind_index_test(&IntPolynomial::from_i64s(&[-1, 1]), 5, 0).unwrap();
        assert_eq!(r.splitting, Some(vec![PrimeFactorShape { e: 1, f: 1 }]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            dedekind_index_test(&IntPolynomial::from_i64s(&[1, 0, 2]), 2, 0),
            Err(Error::NotMonic)
        ));
        assert!(matches!(
            dedekind_index_test(&IntPolynomial::from_i64s(&[-1, 0, 1]), 3, 0),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(
            dedekind_index_test(&IntPolynomial::from_i64s(&[0, 1, 1]), 3, 0),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(
            dedekind_index_test(&IntPolynomial::from_i64s(&[1, 0, 1]), 4, 0),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn eisenstein_examples() {
        assert!(is_eisenstein(&eisenstein_cubic(5), 5));
        assert!(!is_eisenstein(&IntPolynomial::from_i64s(&[1, 0, 1]), 2));
        assert!(is_eisenstein(&IntPolynomial::from_i64s(&[-7, 1]), 7));
        assert!(!is_eisenstein(&IntPolynomial::from_i64s(&[4, 2, 1]), 2));
    }

    #[test]
    fn bound_values() {
        assert_eq!(monogenic_degree_bound(2, 1), BigUint::from(4u32));
        assert_eq!(monogenic_degree_bound(2, 3), BigUint::from(9216u32));
        assert_eq!(monogenic_degree_bound(3, 2), BigUint::from(972u32));
    }

    #[test]
    fn empty_scan() {
        let r = index_scan(&[], 2, 1, 0).unwrap();
        assert!(r.entries.is_empty());
        assert!(r.refutation_witnesses.is_empty());
    }
}
