//! Word-sized modular arithmetic, primality, factorization and discrete logs.

use std::collections::HashMap;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a as i128, m as i128);
    (g == 1).then(|| s.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TRIAL_DIVISION_BOUND: u64 = 1 << 12;

/// Prime factorization as sorted `(prime, exponent)` pairs; `factor(1)` is empty.
///
/// Trial division up to a small bound, then Brent's variant of Pollard rho
/// with a fixed sequence of constants, so the result never depends on chance.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor zero");
    let mut primes = Vec::new();
    let mut n = n;
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND && d * d <= n {
        while n % d == 0 {
            primes.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        split_large(n, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let r = (n as f64).sqrt() as u64;
    for s in r.saturating_sub(1)..=r + 1 {
        if s * s == n {
            split_large(s, out);
            split_large(s, out);
            return;
        }
    }
    let mut c = 1u64;
    loop {
        if let Some(d) = pollard_brent(n, c) {
            split_large(d, out);
            split_large(n / d, out);
            return;
        }
        c += 1;
    }
}

fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, m) = (2u64, 1u64, 1u64, 128u64);
    let (mut g, mut x, mut ys) = (1u64, 0u64, 0u64);
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

pub fn euler_phi_from(factors: &[(u64, u32)]) -> u64 {
    factors
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

pub fn euler_phi(n: u64) -> u64 {
    euler_phi_from(&factor(n))
}

pub fn is_squarefree(n: u64) -> bool {
    factor(n).iter().all(|&(_, e)| e == 1)
}

/// Order of `x` modulo `m`, given the factorization of the group order `n`
/// (any multiple of the true order works).
pub fn order_mod(x: u64, m: u64, n: u64, n_factors: &[(u64, u32)]) -> u64 {
    let mut ord = n;
    for &(p, _) in n_factors {
        while ord % p == 0 && pow_mod(x, ord / p, m) == 1 % m {
            ord /= p;
        }
    }
    ord
}

/// Least primitive root modulo an odd prime power `p^a`.
pub fn least_primitive_root(p: u64, a: u32) -> u64 {
    let modulus = p.pow(a);
    let phi = (p - 1) * p.pow(a - 1);
    let phi_factors = factor(phi);
    (2..modulus)
        .find(|&g| {
            g % p != 0
                && phi_factors
                    .iter()
                    .all(|&(q, _)| pow_mod(g, phi / q, modulus) != 1)
        })
        .unwrap_or(1)
}

/// Discrete logarithm of `x` to base `g` in a cyclic subgroup of `(Z/m)*`
/// of order `n`, by Pohlig-Hellman with baby-step giant-step on each prime.
pub fn discrete_log(g: u64, x: u64, n: u64, n_factors: &[(u64, u32)], m: u64) -> Option<u64> {
    let mut residues = Vec::with_capacity(n_factors.len());
    for &(q, e) in n_factors {
        let qe = q.pow(e);
        let cofactor = n / qe;
        let gq = pow_mod(g, cofactor, m);
        let xq = pow_mod(x, cofactor, m);
        // gq has order q^e; peel off base-q digits.
        let gamma = pow_mod(gq, qe / q, m);
        let mut digits = 0u64;
        let mut q_pow = 1u64;
        for k in 0..e {
            let shift = inv_pow(gq, digits, m);
            let h = pow_mod(mul_mod(xq, shift, m), qe / q_pow / q, m);
            let d = bsgs(gamma, h, q, m)?;
            digits += d * q_pow;
            if k + 1 < e {
                q_pow *= q;
            }
        }
        residues.push((digits, qe));
    }
    let mut acc = 0u64;
    let mut modulus = 1u64;
    for (r, qe) in residues {
        acc = crt_pair(acc, modulus, r, qe);
        modulus *= qe;
    }
    Some(acc % n.max(1))
}

fn inv_pow(g: u64, e: u64, m: u64) -> u64 {
    let ge = pow_mod(g, e, m);
    inv_mod(ge, m).expect("unit")
}

/// Solves `base^k = target` for `0 <= k < order`.
fn bsgs(base: u64, target: u64, order: u64, m: u64) -> Option<u64> {
    let target = target % m;
    if order <= 64 {
        let mut cur = 1 % m;
        for k in 0..order {
            if cur == target {
                return Some(k);
            }
            cur = mul_mod(cur, base, m);
        }
        return None;
    }
    let step = (order as f64).sqrt().ceil() as u64;
    let mut table = HashMap::with_capacity(step as usize);
    let mut cur = 1 % m;
    for j in 0..step {
        table.entry(cur).or_insert(j);
        cur = mul_mod(cur, base, m);
    }
    let giant = inv_mod(pow_mod(base, step, m), m)?;
    let mut gamma = target;
    for i in 0..=step {
        if let Some(&j) = table.get(&gamma) {
            let k = i * step + j;
            if k < order {
                return Some(k);
            }
        }
        gamma = mul_mod(gamma, giant, m);
    }
    None
}

/// Combines `x = a mod m1` and `x = b mod m2` for coprime moduli.
pub fn crt_pair(a: u64, m1: u64, b: u64, m2: u64) -> u64 {
    let r = crt_pair_u128(a as u128, m1 as u128, b as u128, m2 as u128);
    r as u64
}

/// Same as [`crt_pair`] with a 128-bit accumulated modulus.
pub fn crt_pair_u128(a: u128, m1: u128, b: u128, m2: u128) -> u128 {
    if m1 == 1 {
        return b % m2;
    }
    let m2_64 = m2 as u64;
    let inv = inv_mod((m1 % m2) as u64, m2_64).expect("coprime moduli");
    let diff = ((b % m2) + m2 - (a % m2)) % m2;
    let k = mul_mod(diff as u64, inv, m2_64) as u128;
    a + m1 * k
}

/// Primes up to and including `n`, by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn next_prime(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}
