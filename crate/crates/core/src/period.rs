//! Minimal polynomials of Gaussian periods.
//!
//! For `L` fixed by `H <= (Z/m)*` the period `eta = sum_{h in H} zeta_m^h`
//! has conjugates `eta_c = sum_h zeta_m^(c h)` over coset representatives
//! `c`. Their product `prod (x - eta_c)` is evaluated exactly in `GF(P)`
//! for primes `P` where all needed roots of unity exist, and lifted to the
//! integers by CRT under the bound `|coefficient| <= (|H| + 1)^d`.
//!
//! The sum over `H` is never formed. With `H^perp` the `d` characters
//! trivial on `H`,
//!
//! ```text
//! eta_c = (1/d) sum_{psi in H^perp} conj(psi(c)) tau(psi),
//! ```
//!
//! and each Gauss sum `tau(psi)` factors over the prime-power blocks of
//! `m`, so the work is `d * sum phi(p^a)` instead of `d * |H|`.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::arith::{factor, gcd, inv_mod, is_prime, lcm, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::fields::AbelianField;
use crate::lattice::Hnf;
use crate::poly::{discriminant, IntPolynomial};
use crate::zmodstar::UnitGroup;

const PRIME_CEILING: u64 = 1 << 62;
/// Largest order of roots of unity the evaluation primes must carry.
const ROOT_ORDER_CEILING: u64 = 1 << 40;
/// Starting precision is this many bits per unit of degree.
const BITS_PER_DEGREE: u64 = 64;
const MAX_DOUBLINGS: u32 = 3;

/// The monic minimal polynomial of the Gaussian period of `field`.
pub fn period_minimal_polynomial(field: &AbelianField) -> Result<IntPolynomial> {
    let limits = field.limits();
    let d = field.degree();
    if d > limits.period_degree_cap {
        return Err(Error::cap("period polynomial degree", d, limits.period_degree_cap as u128));
    }
    if d == 1 {
        return Ok(IntPolynomial::from_i64s(&[-1, 1]));
    }
    let group = field.unit_group();
    let m = group
        .modulus_u64()
        .ok_or_else(|| Error::cap("period conductor", group.modulus(), u64::MAX as u128))?;
    let orders = group.orders();
    let exponent = orders.iter().fold(1u64, |acc, &n| lcm(acc, n));
    let root_order = (m as u128 * exponent as u128) / gcd(m, exponent) as u128;
    if root_order > ROOT_ORDER_CEILING as u128 {
        return Err(Error::cap("period root-of-unity order", root_order, ROOT_ORDER_CEILING as u128));
    }
    let root_order = root_order as u64;

    let characters = dual_characters(field, exponent);
    if characters.len() as u64 != d {
        return Err(Error::Assertion(format!(
            "{} characters trivial on H, expected {d}",
            characters.len()
        )));
    }
    let reps = field.fixing_subgroup().transversal();

    // |e_k(eta)| <= C(d, k) |H|^k <= (|H| + 1)^d; need 2 * bound < modulus
    let h_order = field.fixing_subgroup().order() as f64;
    let needed = (d as f64 * (h_order + 1.0).log2()).ceil() as u64 + 2;
    let mut available = BITS_PER_DEGREE * d;
    let mut doublings = 0;
    while available < needed && doublings < MAX_DOUBLINGS {
        available *= 2;
        doublings += 1;
    }
    if available < needed {
        return Err(Error::PrecisionInsufficient { needed, available });
    }

    let evaluator = PeriodEvaluator::new(group, exponent, root_order, &characters, &reps);
    let mut primes = PrimesOneMod::new(root_order);
    let mut modulus = BigUint::from(1u32);
    let mut residues: Vec<BigUint> = vec![BigUint::zero(); d as usize + 1];
    let mut first_conjugates: Option<Vec<u64>> = None;
    while modulus.bits() < needed {
        let prime = primes.next().ok_or_else(|| Error::Assertion("ran out of CRT primes".into()))?;
        let (conjugates, coeffs) = evaluator.evaluate(prime);
        first_conjugates.get_or_insert(conjugates);
        crt_accumulate(&mut residues, &modulus, &coeffs, prime);
        modulus *= BigUint::from(prime);
    }
    let half = &modulus >> 1;
    let poly = IntPolynomial::new(
        residues
            .iter()
            .map(|r| {
                if r > &half {
                    BigInt::from(r.clone()) - BigInt::from(modulus.clone())
                } else {
                    BigInt::from(r.clone())
                }
            })
            .collect(),
    );

    // independent check against one more prime
    let check = primes.next().ok_or_else(|| Error::Assertion("ran out of CRT primes".into()))?;
    let (_, coeffs) = evaluator.evaluate(check);
    if poly.reduce_mod(check).coefficients() != trim(&coeffs) {
        return Err(Error::Assertion("period polynomial failed the extra-prime check".into()));
    }
    if poly.degree() != Some(d as usize) || !poly.is_monic() {
        return Err(Error::Assertion("period polynomial has the wrong degree".into()));
    }
    if discriminant(&poly).is_zero() {
        let conj = first_conjugates.unwrap_or_default();
        let (i, j) = first_collision(&conj).unwrap_or((0, 1));
        return Err(Error::PeriodNotPrimitive(group.residue(&reps[i]), group.residue(&reps[j])));
    }
    Ok(poly)
}

/// Characters `x -> omega^(sum a_j x_j exponent / n_j)` trivial on the
/// fixing group, as exponent vectors `a`.
fn dual_characters(field: &AbelianField, exponent: u64) -> Vec<Vec<u64>> {
    let orders = field.unit_group().orders();
    let mut gens = field.fixing_subgroup().lattice().generators();
    if gens.is_empty() {
        gens.push(vec![0; orders.len()]);
    }
    let images: Vec<Vec<u64>> = orders
        .iter()
        .enumerate()
        .map(|(j, &n)| gens.iter().map(|g| g[j] * (exponent / n)).collect())
        .collect();
    let target = Hnf::trivial(&vec![exponent; gens.len()]);
    Hnf::preimage(orders, &images, &target).elements()
}

fn trim(c: &[u64]) -> &[u64] {
    let mut n = c.len();
    while n > 0 && c[n - 1] == 0 {
        n -= 1;
    }
    &c[..n]
}

fn first_collision(values: &[u64]) -> Option<(usize, usize)> {
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] == values[j] {
                return Some((i, j));
            }
        }
    }
    None
}

fn crt_accumulate(acc: &mut [BigUint], modulus: &BigUint, coeffs: &[u64], prime: u64) {
    let m_mod_p = (modulus % prime).to_u64().unwrap();
    let inv = inv_mod(m_mod_p, prime).expect("distinct primes");
    for (a, &c) in acc.iter_mut().zip(coeffs) {
        let a_mod_p = (&*a % prime).to_u64().unwrap();
        let k = mul_mod((c + prime - a_mod_p) % prime, inv, prime);
        *a += modulus * BigUint::from(k);
    }
}

struct PrimesOneMod {
    n: u64,
    k: u64,
}

impl PrimesOneMod {
    fn new(n: u64) -> Self {
        PrimesOneMod {
            n,
            k: (PRIME_CEILING / 2) / n,
        }
    }
}

impl Iterator for PrimesOneMod {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            self.k += 1;
            let candidate = self.k.checked_mul(self.n)?.checked_add(1)?;
            if candidate >= PRIME_CEILING {
                return None;
            }
            if is_prime(candidate) {
                return Some(candidate);
            }
        }
    }
}

/// One prime-power block: its modulus and `(generator, order, coordinate)`.
struct Block {
    prime_power: u64,
    coords: Vec<(u64, u64, usize)>,
}

struct PeriodEvaluator<'a> {
    exponent: u64,
    root_order: u64,
    root_order_primes: Vec<u64>,
    orders: &'a [u64],
    blocks: Vec<Block>,
    characters: &'a [Vec<u64>],
    reps: &'a [Vec<u64>],
}

impl<'a> PeriodEvaluator<'a> {
    fn new(
        group: &'a UnitGroup,
        exponent: u64,
        root_order: u64,
        characters: &'a [Vec<u64>],
        reps: &'a [Vec<u64>],
    ) -> Self {
        let mut blocks: Vec<Block> = Vec::new();
        for (j, c) in group.coordinates().iter().enumerate() {
            match blocks.last_mut() {
                Some(b) if b.prime_power == c.prime_power => b.coords.push((c.generator, c.order, j)),
                _ => blocks.push(Block {
                    prime_power: c.prime_power,
                    coords: vec![(c.generator, c.order, j)],
                }),
            }
        }
        PeriodEvaluator {
            exponent,
            root_order,
            root_order_primes: factor(root_order).into_iter().map(|(r, _)| r).collect(),
            orders: group.orders(),
            blocks,
            characters,
            reps,
        }
    }

    /// A root of unity of order exactly `root_order` mod `prime`.
    fn primitive_root_of_unity(&self, prime: u64) -> u64 {
        let n = self.root_order;
        let cofactor = (prime - 1) / n;
        (2..prime)
            .map(|a| pow_mod(a, cofactor, prime))
            .find(|&z| self.root_order_primes.iter().all(|&r| pow_mod(z, n / r, prime) != 1))
            .unwrap_or(1)
    }

    /// `sum_x psi(x) z^x` over the units of one block; `coords` carries each
    /// generator, its order and the value of `psi` on it.
    fn block_sum(coords: &[(u64, u64, u64)], pa: u64, x: u64, v: u64, zpow: &[u64], prime: u64) -> u64 {
        let Some((&(g, n, b), rest)) = coords.split_first() else {
            return mul_mod(v, zpow[x as usize], prime);
        };
        let (mut x, mut v, mut sum) = (x, v, 0u64);
        for _ in 0..n {
            sum = (sum + Self::block_sum(rest, pa, x, v, zpow, prime)) % prime;
            x = mul_mod(x, g, pa);
            v = mul_mod(v, b, prime);
        }
        sum
    }

    /// Conjugates `eta_c` and the coefficients of `prod (x - eta_c)` mod `prime`.
    fn evaluate(&self, prime: u64) -> (Vec<u64>, Vec<u64>) {
        let rho = self.primitive_root_of_unity(prime);
        let omega = pow_mod(rho, self.root_order / self.exponent, prime);
        let zpows: Vec<Vec<u64>> = self
            .blocks
            .iter()
            .map(|b| {
                let z = pow_mod(rho, self.root_order / b.prime_power, prime);
                let mut t = Vec::with_capacity(b.prime_power as usize);
                let mut cur = 1;
                for _ in 0..b.prime_power {
                    t.push(cur);
                    cur = mul_mod(cur, z, prime);
                }
                t
            })
            .collect();
        let character_exponent = |a: &[u64], x: &[u64]| -> u64 {
            let e: u128 = a
                .iter()
                .zip(x)
                .zip(self.orders)
                .map(|((&aj, &xj), &n)| (aj as u128 * xj as u128 % n as u128) * (self.exponent / n) as u128)
                .sum();
            (e % self.exponent as u128) as u64
        };
        let gauss_sums: Vec<u64> = self
            .characters
            .iter()
            .map(|a| {
                self.blocks.iter().zip(&zpows).fold(1u64, |acc, (b, zpow)| {
                    let coords: Vec<(u64, u64, u64)> = b
                        .coords
                        .iter()
                        .map(|&(g, n, j)| (g, n, pow_mod(omega, a[j] * (self.exponent / n), prime)))
                        .collect();
                    let s = Self::block_sum(&coords, b.prime_power, 1 % b.prime_power, 1, zpow, prime);
                    mul_mod(acc, s, prime)
                })
            })
            .collect();
        let d_inv = inv_mod(self.characters.len() as u64 % prime, prime).expect("d is below the prime");
        let conjugates: Vec<u64> = self
            .reps
            .iter()
            .map(|c| {
                let sum = self.characters.iter().zip(&gauss_sums).fold(0u64, |acc, (a, &tau)| {
                    let e = (self.exponent - character_exponent(a, c)) % self.exponent;
                    (acc + mul_mod(pow_mod(omega, e, prime), tau, prime)) % prime
                });
                mul_mod(sum, d_inv, prime)
            })
            .collect();
        let mut poly = vec![1u64];
        for &eta in &conjugates {
            let mut next = vec![0u64; poly.len() + 1];
            for (i, &a) in poly.iter().enumerate() {
                next[i + 1] = (next[i + 1] + a) % prime;
                next[i] = (next[i] + prime - mul_mod(a, eta, prime)) % prime;
            }
            poly = next;
        }
        (conjugates, poly)
    }
}
