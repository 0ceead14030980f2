//! Cyclic degree-`q` fields in which a prescribed finite set of primes
//! splits completely.
//!
//! Take `n + 1` primes `l_i = 1 mod q` (`n = |T|`). The `q`-elementary
//! quotient of `(Z/prod l_i)*` is `V = (Z/q)^(n+1)`, coordinates given by
//! discrete logs mod `q`. Each `p` in `T` has a Frobenius vector `w_p` in
//! `V`; a nonzero functional `chi` killing every `w_p` exists because there
//! are `n` constraints in dimension `n + 1`, and its kernel fixes a cyclic
//! field of degree `q` in which every `p` in `T` has trivial Frobenius.

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::fields::AbelianField;
use crate::lattice::Hnf;
use crate::limits::Limits;
use crate::zmodstar::{Subgroup, UnitGroup};

#[derive(Debug, Clone)]
pub struct CyclicFieldRequest {
    pub q: u64,
    pub split_primes: Vec<u64>,
    pub avoid: AbelianField,
    pub search_bound: u64,
}

impl CyclicFieldRequest {
    pub fn new(q: u64, split_primes: &[u64], avoid: AbelianField) -> Self {
        let search_bound = avoid.limits().prime_search_bound;
        CyclicFieldRequest {
            q,
            split_primes: split_primes.to_vec(),
            avoid,
            search_bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusVector {
    pub prime: u64,
    pub vector: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub q: u64,
    pub split_primes: Vec<u64>,
    pub chosen_ells: Vec<u64>,
    pub modulus: u128,
    pub frobenius_vectors: Vec<FrobeniusVector>,
    pub character: Vec<u64>,
    pub result: AbelianField,
}

pub fn construct_cyclic(req: &CyclicFieldRequest) -> Result<(AbelianField, ConstructionTrace)> {
    let q = req.q;
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let mut split = req.split_primes.clone();
    split.sort_unstable();
    split.dedup();
    if let Some(&bad) = split.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(bad));
    }
    let limits = req.avoid.limits();
    let avoid_conductor = req.avoid.conductor();

    let needed = split.len() + 1;
    let ells = admissible_primes(q, needed, &split, avoid_conductor, req.search_bound)?;

    let mut frobenius_vectors = Vec::with_capacity(split.len());
    let ell_groups = ells
        .iter()
        .map(|&l| UnitGroup::new(l, limits))
        .collect::<Result<Vec<_>>>()?;
    for &p in &split {
        let vector = ell_groups
            .iter()
            .map(|g| g.discrete_log_mod_q(p, q))
            .collect::<Result<Vec<_>>>()?;
        frobenius_vectors.push(FrobeniusVector { prime: p, vector });
    }
    let rows: Vec<Vec<u64>> = frobenius_vectors.iter().map(|f| f.vector.clone()).collect();
    let character = first_null_vector(&rows, needed, q)
        .ok_or_else(|| Error::Assertion("null space is trivial".into()))?;

    let group = UnitGroup::from_factorization(ells.iter().map(|&l| (l, 1)).collect(), limits)?;
    // kernel of x -> sum chi_i x_i (mod q); coordinate i is the log base the
    // least primitive root mod l_i, which is also the base used above
    let images: Vec<Vec<u64>> = character.iter().map(|&c| vec![c]).collect();
    let kernel = Hnf::preimage(group.orders(), &images, &Hnf::trivial(&[q]));
    let field = AbelianField::fixed_field(Subgroup::from_logs(&group, kernel.generators().as_slice()))?;

    if field.degree() != q {
        return Err(Error::Assertion(format!("degree {} instead of {q}", field.degree())));
    }
    for &p in &split {
        if !field.totally_split(p)? {
            return Err(Error::Assertion(format!("{p} does not split completely")));
        }
    }
    if !field.linearly_disjoint(&req.avoid)? {
        return Err(Error::Assertion("result meets the avoided field".into()));
    }

    let trace = ConstructionTrace {
        q,
        split_primes: split,
        chosen_ells: ells,
        modulus: group.modulus(),
        frobenius_vectors,
        character,
        result: field.clone(),
    };
    Ok((field, trace))
}

/// The `count` smallest primes `l = 1 mod q` outside `excluded` and prime
/// to `avoid_conductor`.
pub fn admissible_primes(
    q: u64,
    count: usize,
    excluded: &[u64],
    avoid_conductor: u128,
    bound: u64,
) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    let mut ell = q + 1;
    while out.len() < count && ell <= bound {
        if is_prime(ell) && !excluded.contains(&ell) && avoid_conductor % ell as u128 != 0 {
            out.push(ell);
        }
        ell += q;
    }
    if out.len() < count {
        return Err(Error::SearchExhausted {
            needed: count,
            found: out.len(),
            bound,
        });
    }
    Ok(out)
}

/// Reduced row echelon form over `GF(q)`; returns the null-space basis
/// vector attached to the first free column.
fn first_null_vector(rows: &[Vec<u64>], width: usize, q: u64) -> Option<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % q).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(found) = (r..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, found);
        let inv = crate::arith::inv_mod(a[r][col], q)?;
        for x in a[r].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..a.len() {
            if i != r && a[i][col] != 0 {
                let factor = a[i][col];
                for j in 0..width {
                    a[i][j] = (a[i][j] + q * q - factor * a[r][j] % q) % q;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free = (0..width).find(|c| !pivots.contains(c))?;
    let mut v = vec![0u64; width];
    v[free] = 1;
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = (q - a[row][free]) % q;
    }
    Some(v)
}

/// Convenience wrapper with the default search bound from `limits`.
pub fn construct_cyclic_default(
    q: u64,
    split_primes: &[u64],
    avoid: Option<AbelianField>,
    limits: Limits,
) -> Result<(AbelianField, ConstructionTrace)> {
    let avoid = avoid.unwrap_or_else(|| AbelianField::rationals(limits));
    construct_cyclic(&CyclicFieldRequest::new(q, split_primes, avoid))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn cubic_inside_q_zeta_seven() {
        let (l, trace) = construct_cyclic_default(3, &[], None, lim()).unwrap();
        assert_eq!(trace.chosen_ells, vec![7]);
        assert_eq!(trace.character, vec![1]);
        assert_eq!(l, AbelianField::from_generators(7, &[6], lim()).unwrap());
    }

    #[test]
    fn quintic_split_at_two_and_three() {
        let (l, trace) = construct_cyclic_default(5, &[2, 3], None, lim()).unwrap();
        assert_eq!(trace.chosen_ells, vec![11, 31, 41]);
        assert_eq!(l.degree(), 5);
        let h = l.fixing_subgroup();
        assert!(h.contains_residue(2).unwrap());
        assert!(h.contains_residue(3).unwrap());
        for p in [2, 3] {
            let s = l.splitting_data(p).unwrap();
            assert_eq!((s.e, s.f, s.g), (1, 1, 5));
        }
    }

    #[test]
    fn quadratic_avoiding_q_zeta_three() {
        let avoid = AbelianField::cyclotomic(3, lim()).unwrap();
        let (l, trace) = construct_cyclic_default(2, &[], Some(avoid.clone()), lim()).unwrap();
        assert_eq!(trace.chosen_ells, vec![5]);
        assert_eq!(l, AbelianField::from_generators(5, &[4], lim()).unwrap());
        assert!(l.intersection(&avoid).unwrap().is_rationals());
    }

    #[test]
    fn search_exhaustion() {
        let mut req = CyclicFieldRequest::new(7, &[2, 3, 5], AbelianField::rationals(lim()));
        req.search_bound = 50;
        assert!(matches!(
            construct_cyclic(&req),
            Err(Error::SearchExhausted { needed: 4, found: 2, bound: 50 })
        ));
    }

    #[test]
    fn rejects_composite_q() {
        assert!(matches!(construct_cyclic_default(4, &[], None, lim()), Err(Error::NotPrime(4))));
    }

    #[test]
    fn null_vector_is_in_the_kernel() {
        let rows = vec![vec![1, 2, 0], vec![0, 1, 4]];
        let v = first_null_vector(&rows, 3, 5).unwrap();
        for r in &rows {
            assert_eq!(r.iter().zip(&v).map(|(a, b)| a * b).sum::<u64>() % 5, 0);
        }
        assert!(v.iter().any(|&x| x != 0));
    }
}
