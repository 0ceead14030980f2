use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::int::IntPolynomial;
use crate::arith::{inv_mod, mul_mod};
use crate::error::{Error, Result};

/// Polynomial over the prime field `GF(p)`, ascending coefficients in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FpPolynomial {
    #[serde(rename = "prime")]
    p: u64,
    #[serde(rename = "coefficients")]
    coeffs: Vec<u64>,
}

impl FpPolynomial {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPolynomial { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPolynomial { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPolynomial::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPolynomial::new(p, vec![0, 1])
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p).expect("prime field");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        FpPolynomial::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let p = self.p;
        FpPolynomial::new(
            p,
            (0..n)
                .map(|i| (self.coeffs.get(i).unwrap_or(&0) + other.coeffs.get(i).unwrap_or(&0)) % p)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let p = self.p;
        FpPolynomial::new(
            p,
            (0..n)
                .map(|i| (self.coeffs.get(i).unwrap_or(&0) + p - other.coeffs.get(i).unwrap_or(&0)) % p)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPolynomial::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPolynomial::new(self.p, out.into_iter().map(|c| c as u64).collect())
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.p;
        let d = divisor.deg();
        if self.coeffs.len() <= d {
            return (FpPolynomial::zero(p), self.clone());
        }
        let inv = inv_mod(divisor.leading(), p).expect("prime field");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + d], inv, p);
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - mul_mod(c, b, p)) % p;
            }
            quot[i] = c;
        }
        rem.truncate(d);
        (FpPolynomial::new(p, quot), FpPolynomial::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        FpPolynomial::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
        )
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = FpPolynomial::one(self.p).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Lift with coefficients in `[0, p)`.
    pub fn lift(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Inverse Frobenius for a polynomial whose exponents are all multiples of `p`.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        FpPolynomial::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Complete factorization into monic irreducibles with multiplicities.
    ///
    /// Squarefree decomposition, distinct-degree splitting, then
    /// Cantor-Zassenhaus equal-degree splitting driven by `seed`. The output
    /// is sorted by degree and then by coefficient vector, so it does not
    /// depend on the seed.
    pub fn factor(&self, seed: u64) -> Result<Vec<(FpPolynomial, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (part, mult) in self.monic().squarefree_decomposition() {
            for (block, d) in part.distinct_degree() {
                let mut pieces = Vec::new();
                block.equal_degree(d, &mut rng, &mut pieces);
                out.extend(pieces.into_iter().map(|f| (f, mult)));
            }
        }
        out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
        Ok(out)
    }

    /// Pairs `(g_i, i)` with `self = prod g_i^i`, each `g_i` squarefree; `self` monic.
    pub fn squarefree_decomposition(&self) -> Vec<(FpPolynomial, u32)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let p = self.p;
        let d = self.derivative();
        if d.is_zero() {
            for (g, m) in self.pth_root().squarefree_decomposition() {
                out.push((g, m * p as u32));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_exact(&c);
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div_exact(&y);
            if z.deg() > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w);
        }
        if !c.is_one() {
            for (g, m) in c.pth_root().squarefree_decomposition() {
                out.push((g, m * p as u32));
            }
        }
        out
    }

    /// Splits a monic squarefree polynomial into `(product of all irreducible
    /// factors of degree d, d)`.
    pub fn distinct_degree(&self) -> Vec<(FpPolynomial, usize)> {
        let p = self.p;
        let x = FpPolynomial::x(p);
        let mut out = Vec::new();
        let mut f = self.clone();
        let mut h = x.rem(&f);
        let mut d = 0;
        while f.deg() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(p, &f);
            let g = f.gcd(&h.sub(&x));
            if !g.is_one() {
                f = f.div_exact(&g);
                h = h.rem(&f);
                out.push((g, d));
            }
        }
        if f.deg() > 0 {
            let deg = f.deg();
            out.push((f, deg));
        }
        out
    }

    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPolynomial>) {
        let n = self.deg();
        if n == d {
            out.push(self.clone());
            return;
        }
        let p = self.p;
        loop {
            let a = FpPolynomial::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.deg() == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
                let mut frob = a.rem(self);
                let mut norm = frob.clone();
                for _ in 1..d {
                    frob = frob.pow_mod(p, self);
                    norm = norm.mul(&frob).rem(self);
                }
                norm.pow_mod((p - 1) / 2, self).sub(&FpPolynomial::one(p))
            };
            let g = self.gcd(&b);
            if g.deg() > 0 && g.deg() < n {
                g.equal_degree(d, rng, out);
                self.div_exact(&g).equal_degree(d, rng, out);
                return;
            }
        }
    }
}

impl fmt::Display for FpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.lift(), self.p)
    }
}
