//! The unit group `(Z/m)*` and its subgroups.
//!
//! A residue is identified with its vector of discrete logarithms in the CRT
//! decomposition `(Z/m)* = prod (Z/p^a)*`: one cyclic coordinate per odd
//! prime power (base: least primitive root), and the pair `{-1, 5}` for
//! `2^a` with `a >= 3`. Subgroups are stored as Hermite normal forms of the
//! corresponding coordinate lattices, so nothing here ever needs to list the
//! elements of a subgroup; listing is available on demand below a cap.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::arith::{
    self, crt_pair_u128, discrete_log, factor, gcd, mul_mod, order_mod, pow_mod,
};
use crate::error::{Error, Result};
use crate::lattice::Hnf;
use crate::limits::Limits;

/// One cyclic factor of the unit group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coordinate {
    pub prime: u64,
    /// The prime power `p^a` this coordinate lives in.
    pub prime_power: u64,
    /// Generator, as a residue modulo `prime_power`.
    pub generator: u64,
    pub order: u64,
    #[serde(skip)]
    order_factors: Vec<(u64, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Block {
    prime: u64,
    exponent: u32,
    prime_power: u64,
    first: usize,
    len: usize,
}

/// `(Z/m)*` with its CRT decomposition and fixed generators.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    modulus: u128,
    factors: Vec<(u64, u32)>,
    blocks: Vec<Block>,
    coords: Vec<Coordinate>,
    orders: Vec<u64>,
    phi: u128,
    limits: Limits,
}

impl PartialEq for UnitGroup {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for UnitGroup {}

impl fmt::Display for UnitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(Z/{})*", self.modulus)
    }
}

impl UnitGroup {
    pub fn new(m: u64, limits: Limits) -> Result<Arc<UnitGroup>> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        UnitGroup::from_factorization(factor(m), limits)
    }

    /// Like [`UnitGroup::new`] for moduli beyond `u64`. Every prime factor is
    /// at most `modulus_cap`, which bounds the trial division.
    pub fn from_modulus(m: u128, limits: Limits) -> Result<Arc<UnitGroup>> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        if let Ok(small) = u64::try_from(m) {
            return UnitGroup::new(small, limits);
        }
        let mut rest = m;
        let mut factors = Vec::new();
        let mut d = 2u64;
        while u64::try_from(rest).is_err() {
            if d > limits.modulus_cap {
                return Err(Error::cap("prime factor of modulus", m, limits.modulus_cap as u128));
            }
            let mut e = 0;
            while rest % d as u128 == 0 {
                rest /= d as u128;
                e += 1;
            }
            if e > 0 {
                factors.push((d, e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        for (p, e) in factor(rest as u64) {
            match factors.iter_mut().find(|(q, _)| *q == p) {
                Some((_, f)) => *f += e,
                None => factors.push((p, e)),
            }
        }
        UnitGroup::from_factorization(factors, limits)
    }

    /// Builds the group from the factorization of its modulus; the factors
    /// must be distinct primes.
    pub fn from_factorization(factors: Vec<(u64, u32)>, limits: Limits) -> Result<Arc<UnitGroup>> {
        let mut factors = factors;
        factors.retain(|&(_, e)| e > 0);
        factors.sort_unstable();
        let mut modulus = 1u128;
        let mut phi = 1u128;
        let mut blocks = Vec::new();
        let mut coords = Vec::new();
        for &(p, a) in &factors {
            if !arith::is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            let prime_power = p
                .checked_pow(a)
                .filter(|&pa| pa <= limits.modulus_cap)
                .ok_or_else(|| Error::cap("prime-power factor", format!("{p}^{a}"), limits.modulus_cap as u128))?;
            modulus = modulus
                .checked_mul(prime_power as u128)
                .ok_or_else(|| Error::cap("modulus", "beyond 2^128", u128::MAX))?;
            let block_phi = (p - 1) * p.pow(a - 1);
            phi *= block_phi as u128;
            let first = coords.len();
            let mut push = |generator: u64, order: u64| {
                coords.push(Coordinate {
                    prime: p,
                    prime_power,
                    generator,
                    order,
                    order_factors: factor(order),
                })
            };
            match (p, a) {
                (2, 1) => {}
                (2, 2) => push(3, 2),
                (2, _) => {
                    push(prime_power - 1, 2);
                    push(5, prime_power / 4);
                }
                _ => push(arith::least_primitive_root(p, a), block_phi),
            }
            blocks.push(Block {
                prime: p,
                exponent: a,
                prime_power,
                first,
                len: coords.len() - first,
            });
        }
        let orders = coords.iter().map(|c| c.order).collect();
        Ok(Arc::new(UnitGroup {
            modulus,
            factors,
            blocks,
            coords,
            orders,
            phi,
            limits,
        }))
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// The modulus as a machine word, when it fits.
    pub fn modulus_u64(&self) -> Option<u64> {
        u64::try_from(self.modulus).ok()
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn coordinates(&self) -> &[Coordinate] {
        &self.coords
    }

    /// Cyclic orders of the coordinates; their product is `phi(m)`.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn phi(&self) -> u128 {
        self.phi
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn check_coprime(&self, x: u128) -> Result<()> {
        let xm = x % self.modulus;
        let coprime = self.modulus == 1
            || self
                .factors
                .iter()
                .all(|&(p, _)| xm % p as u128 != 0);
        if coprime {
            Ok(())
        } else {
            Err(Error::NotCoprime {
                residue: x,
                modulus: self.modulus,
            })
        }
    }

    /// Discrete-log coordinates of a unit.
    pub fn log(&self, x: u128) -> Result<Vec<u64>> {
        self.check_coprime(x)?;
        let mut out = vec![0u64; self.rank()];
        for block in &self.blocks {
            let r = (x % block.prime_power as u128) as u64;
            let logs = self.block_log(block, r);
            out[block.first..block.first + block.len].copy_from_slice(&logs);
        }
        Ok(out)
    }

    fn block_log(&self, block: &Block, r: u64) -> Vec<u64> {
        let pa = block.prime_power;
        let cs = &self.coords[block.first..block.first + block.len];
        match (block.prime, block.exponent) {
            (2, 1) => vec![],
            (2, 2) => vec![u64::from(r % 4 == 3)],
            (2, _) => {
                let sign = r % 4 == 3;
                let y = if sign { pa - r } else { r };
                let c = &cs[1];
                let t = discrete_log(5, y, c.order, &c.order_factors, pa).expect("5 generates 1 mod 4");
                vec![u64::from(sign), t]
            }
            _ => {
                let c = &cs[0];
                vec![discrete_log(c.generator, r, c.order, &c.order_factors, pa).expect("primitive root")]
            }
        }
    }

    /// The residue in `[0, m)` with the given coordinates.
    pub fn residue(&self, logs: &[u64]) -> u128 {
        let mut acc = 0u128;
        let mut modulus = 1u128;
        for block in &self.blocks {
            let pa = block.prime_power;
            let mut r = 1 % pa;
            for (c, &e) in self.coords[block.first..block.first + block.len]
                .iter()
                .zip(&logs[block.first..block.first + block.len])
            {
                r = mul_mod(r, pow_mod(c.generator, e, pa), pa);
            }
            acc = crt_pair_u128(acc, modulus, r as u128, pa as u128);
            modulus *= pa as u128;
        }
        acc
    }

    /// Multiplicative order of `x` modulo `m`, shrinking `phi(m)` one prime
    /// factor at a time. Requires `m` to fit in 64 bits.
    pub fn element_order(&self, x: u64) -> Result<u64> {
        self.check_coprime(x as u128)?;
        let m = self
            .modulus_u64()
            .ok_or_else(|| Error::cap("modulus for residue arithmetic", self.modulus, u64::MAX as u128))?;
        let phi = self.phi as u64;
        Ok(order_mod(x % m, m, phi, &factor(phi)))
    }

    /// Order of an element given by its coordinates.
    pub fn order_of_logs(&self, logs: &[u64]) -> u64 {
        logs.iter()
            .zip(&self.orders)
            .fold(1u64, |acc, (&x, &n)| arith::lcm(acc, n / gcd(x % n, n)))
    }

    /// Discrete logarithm of `x` to the least primitive root of the prime
    /// modulus, reduced mod `q`.
    pub fn discrete_log_mod_q(&self, x: u64, q: u64) -> Result<u64> {
        let ell = self
            .modulus_u64()
            .filter(|&m| arith::is_prime(m))
            .ok_or_else(|| Error::InvalidInput(format!("modulus {} is not prime", self.modulus)))?;
        if q == 0 || (ell - 1) % q != 0 || !arith::is_prime(q) {
            return Err(Error::QDoesNotDivide { q, ell });
        }
        self.check_coprime(x as u128)?;
        let c = &self.coords[0];
        let cofactor = (ell - 1) / q;
        let gamma = pow_mod(c.generator, cofactor, ell);
        let h = pow_mod(x % ell, cofactor, ell);
        let qf = [(q, 1)];
        discrete_log(gamma, h, q, &qf, ell)
            .ok_or_else(|| Error::Assertion(format!("no log of {x} mod {ell}")))
    }

    /// Images of this group's coordinate generators under reduction to
    /// `(Z/small)*`, expressed in `small`'s coordinates.
    pub fn reduction_images(&self, small: &UnitGroup) -> Result<Vec<Vec<u64>>> {
        if self.modulus % small.modulus != 0 {
            return Err(Error::NotDivisor {
                small: small.modulus,
                big: self.modulus,
            });
        }
        let mut images = Vec::with_capacity(self.rank());
        for c in &self.coords {
            let mut img = vec![0u64; small.rank()];
            if let Some(sb) = small.blocks.iter().find(|b| b.prime == c.prime) {
                let logs = small.block_log(sb, c.generator % sb.prime_power);
                img[sb.first..sb.first + sb.len].copy_from_slice(&logs);
            }
            images.push(img);
        }
        Ok(images)
    }

    /// Unit group of `lcm(self, other)`.
    pub fn lcm(&self, other: &UnitGroup) -> Result<Arc<UnitGroup>> {
        let mut factors = self.factors.clone();
        for &(p, e) in &other.factors {
            match factors.iter_mut().find(|(q, _)| *q == p) {
                Some((_, f)) => *f = (*f).max(e),
                None => factors.push((p, e)),
            }
        }
        UnitGroup::from_factorization(factors, self.limits)
    }

    /// Unit group of `m / p`.
    pub fn drop_prime(&self, p: u64) -> Result<Arc<UnitGroup>> {
        let factors = self
            .factors
            .iter()
            .map(|&(q, e)| if q == p { (q, e - 1) } else { (q, e) })
            .collect();
        UnitGroup::from_factorization(factors, self.limits)
    }

    /// `p` restricted to the prime-to-`p` part, with trivial `p`-component:
    /// the CRT lift that is `p mod m'` and `1 mod p^a`.
    pub fn frobenius_lift(&self, p: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.rank()];
        for block in self.blocks.iter().filter(|b| b.prime != p) {
            let logs = self.block_log(block, p % block.prime_power);
            out[block.first..block.first + block.len].copy_from_slice(&logs);
        }
        out
    }

    /// Coordinate indices belonging to the prime `p`.
    pub fn coordinates_at(&self, p: u64) -> std::ops::Range<usize> {
        self.blocks
            .iter()
            .find(|b| b.prime == p)
            .map_or(0..0, |b| b.first..b.first + b.len)
    }

    pub fn unit_vector(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }
}

/// A subgroup of `(Z/m)*`.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<UnitGroup>,
    lattice: Hnf,
    order: u128,
    elements: OnceLock<Option<Arc<[u64]>>>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("modulus", &self.parent.modulus)
            .field("order", &self.order)
            .field("generators", &self.generators())
            .finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.modulus == other.parent.modulus && self.lattice == other.lattice
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub(crate) fn from_lattice(parent: Arc<UnitGroup>, lattice: Hnf) -> Subgroup {
        let order = lattice.order().expect("subgroup order is bounded by phi(m)");
        Subgroup {
            parent,
            lattice,
            order,
            elements: OnceLock::new(),
        }
    }

    /// Smallest subgroup containing the given residues.
    pub fn closure(parent: &Arc<UnitGroup>, generators: &[u128]) -> Result<Subgroup> {
        let logs = generators
            .iter()
            .map(|&g| parent.log(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup::from_logs(parent, &logs))
    }

    /// Subgroup generated by elements given in coordinates.
    pub fn from_logs(parent: &Arc<UnitGroup>, logs: &[Vec<u64>]) -> Subgroup {
        Subgroup::from_lattice(parent.clone(), Hnf::span(parent.orders(), logs))
    }

    pub fn full(parent: &Arc<UnitGroup>) -> Subgroup {
        Subgroup::from_lattice(parent.clone(), Hnf::full(parent.orders()))
    }

    pub fn trivial(parent: &Arc<UnitGroup>) -> Subgroup {
        Subgroup::from_lattice(parent.clone(), Hnf::trivial(parent.orders()))
    }

    pub fn parent(&self) -> &Arc<UnitGroup> {
        &self.parent
    }

    pub fn lattice(&self) -> &Hnf {
        &self.lattice
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn index(&self) -> u128 {
        self.parent.phi / self.order
    }

    /// Canonical generating residues, sorted.
    pub fn generators(&self) -> Vec<u128> {
        let mut gens: Vec<u128> = self
            .lattice
            .generators()
            .iter()
            .map(|g| self.parent.residue(g))
            .collect();
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    fn same_parent(&self, other: &Subgroup) -> Result<()> {
        if self.parent.modulus == other.parent.modulus {
            Ok(())
        } else {
            Err(Error::ParentMismatch {
                left: self.parent.modulus,
                right: other.parent.modulus,
            })
        }
    }

    pub fn contains_logs(&self, logs: &[u64]) -> bool {
        self.lattice.contains(logs)
    }

    pub fn contains_residue(&self, x: u128) -> Result<bool> {
        self.parent.check_coprime(x)?;
        if let Some(elems) = self.elements.get().and_then(|e| e.as_ref()) {
            return Ok(elems.binary_search(&((x % self.parent.modulus) as u64)).is_ok());
        }
        Ok(self.contains_logs(&self.parent.log(x)?))
    }

    /// Whether `other` is a subgroup of `self`.
    pub fn contains(&self, other: &Subgroup) -> Result<bool> {
        self.same_parent(other)?;
        Ok(self.lattice.contains_lattice(&other.lattice))
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_parent(other)?;
        Ok(Subgroup::from_lattice(self.parent.clone(), self.lattice.join(&other.lattice)))
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_parent(other)?;
        Ok(Subgroup::from_lattice(
            self.parent.clone(),
            self.lattice.intersect(&other.lattice),
        ))
    }

    /// Preimage under the reduction `(Z/M)* -> (Z/m)*`, where `big` is
    /// `(Z/M)*` and `m | M`.
    pub fn preimage(&self, big: &Arc<UnitGroup>) -> Result<Subgroup> {
        if big.modulus == self.parent.modulus {
            return Ok(self.clone());
        }
        let images = big.reduction_images(&self.parent)?;
        Ok(Subgroup::from_lattice(
            big.clone(),
            Hnf::preimage(big.orders(), &images, &self.lattice),
        ))
    }

    /// Image under the reduction to `small = (Z/m)*`, `m | M`.
    pub fn image(&self, small: &Arc<UnitGroup>) -> Result<Subgroup> {
        if small.modulus == self.parent.modulus {
            return Ok(self.clone());
        }
        let images = self.parent.reduction_images(small)?;
        Ok(Subgroup::from_lattice(
            small.clone(),
            self.lattice.image(&images, small.orders()),
        ))
    }

    /// Kernel of `(Z/M)* -> (Z/m)*`, as a subgroup of `big`.
    pub fn reduction_kernel(big: &Arc<UnitGroup>, small: &Arc<UnitGroup>) -> Result<Subgroup> {
        Subgroup::trivial(small).preimage(big)
    }

    /// Sorted element list, materialized on first use when the order is at
    /// most the enumeration cap and the modulus fits in 64 bits.
    pub fn elements(&self) -> Option<&[u64]> {
        self.elements
            .get_or_init(|| self.enumerate().ok().map(Arc::from))
            .as_deref()
    }

    /// Lists every element, or fails when the subgroup is above the cap.
    pub fn enumerate(&self) -> Result<Vec<u64>> {
        let cap = self.parent.limits.subgroup_enumeration_cap;
        if self.order > cap as u128 {
            return Err(Error::cap("subgroup order", self.order, cap as u128));
        }
        let m = self
            .parent
            .modulus_u64()
            .ok_or_else(|| Error::cap("modulus for enumeration", self.parent.modulus, u64::MAX as u128))?;
        let mut elems = vec![1 % m];
        let orders = self.parent.orders();
        for (j, row) in self.lattice.rows().iter().enumerate() {
            let radix = orders[j] / self.lattice.pivot(j);
            if radix <= 1 {
                continue;
            }
            let h = self.parent.residue(row) as u64;
            let base = elems.clone();
            let mut power = 1 % m;
            for _ in 1..radix {
                power = mul_mod(power, h, m);
                elems.extend(base.iter().map(|&x| mul_mod(x, power, m)));
            }
        }
        elems.sort_unstable();
        Ok(elems)
    }

    /// Coset representatives of `(Z/m)* / H`, as coordinates.
    pub fn transversal(&self) -> Vec<Vec<u64>> {
        let r = self.parent.rank();
        let mut reps = vec![vec![0u64; r]];
        for j in 0..r {
            let g = self.lattice.pivot(j);
            if g <= 1 {
                continue;
            }
            reps = reps
                .into_iter()
                .flat_map(|v| {
                    (0..g).map(move |c| {
                        let mut w = v.clone();
                        w[j] = c;
                        w
                    })
                })
                .collect();
        }
        reps
    }

    /// Order of the image of `logs` in `(Z/m)* / H`.
    pub fn quotient_order(&self, logs: &[u64]) -> u128 {
        let orders = self.parent.orders();
        let mut ord = logs
            .iter()
            .zip(orders)
            .fold(1u128, |acc, (&x, &n)| lcm_u128(acc, (n / gcd(x % n, n)) as u128));
        let scaled = |k: u128| -> Vec<u64> {
            logs.iter()
                .zip(orders)
                .map(|(&x, &n)| ((x as u128 * (k % n as u128)) % n as u128) as u64)
                .collect()
        };
        let mut primes: Vec<u64> = self
            .parent
            .coords
            .iter()
            .flat_map(|c| c.order_factors.iter().map(|&(p, _)| p))
            .collect();
        primes.sort_unstable();
        primes.dedup();
        for p in primes {
            while ord % p as u128 == 0 && self.contains_logs(&scaled(ord / p as u128)) {
                ord /= p as u128;
            }
        }
        ord
    }
}

fn lcm_u128(a: u128, b: u128) -> u128 {
    a / arith::gcd_u128(a, b) * b
}
