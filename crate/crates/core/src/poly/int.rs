use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::fp::FpPolynomial;
use crate::arith::factor;

/// Dense polynomial over the integers, ascending coefficients, no trailing zeros.
///
/// Serializes as a list of coefficients; each is a number when it fits in an
/// `i64` and a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(i64),
            Text(String),
        }
        let raw = Vec::<Coeff>::deserialize(deserializer)?;
        let coeffs = raw
            .into_iter()
            .map(|c| match c {
                Coeff::Int(v) => Ok(BigInt::from(v)),
                Coeff::Text(s) => s.trim().parse::<BigInt>().map_err(D::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::from_i64s(&[1])
    }

    pub fn x() -> Self {
        IntPolynomial::from_i64s(&[0, 1])
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        IntPolynomial::new(c)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c`; `None` unless all divisions are exact.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntPolynomial::new(out))
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigInt::from(i))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn reduce_mod(&self, p: u64) -> FpPolynomial {
        let pb = BigInt::from(p);
        FpPolynomial::new(
            p,
            self.coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(&pb);
                    u64::try_from(&r).expect("reduced below p")
                })
                .collect(),
        )
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return (IntPolynomial::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = rem[i + d].clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * b;
            }
            quot[i] = c;
        }
        rem.truncate(d);
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("nonzero divisor");
        let lb = b.leading();
        let mut r = self.clone();
        let mut steps = (self.degree().unwrap_or(0) + 1).saturating_sub(db);
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading();
            let mut shifted = vec![BigInt::zero(); dr - db];
            shifted.extend(b.coeffs.iter().map(|c| c * &lr));
            r = r.scale(&lb).sub(&IntPolynomial::new(shifted));
            steps -= 1;
        }
        r.scale(&num_traits::pow(lb, steps))
    }

    /// The `m`-th cyclotomic polynomial, as `prod_{d | m} (x^d - 1)^mu(m/d)`.
    pub fn cyclotomic(m: u64) -> Self {
        assert!(m >= 1);
        let mut num = IntPolynomial::one();
        let mut den = IntPolynomial::one();
        for d in (1..=m).filter(|d| m % d == 0) {
            match mobius(m / d) {
                1 => num = num.mul(&IntPolynomial::x_pow_minus_one(d as usize)),
                -1 => den = den.mul(&IntPolynomial::x_pow_minus_one(d as usize)),
                _ => {}
            }
        }
        // den is monic up to sign
        let sign = den.leading();
        let (q, r) = num.scale(&sign).div_rem_monic(&den.scale(&sign));
        debug_assert!(r.is_zero());
        q
    }
}

fn mobius(n: u64) -> i32 {
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Resultant of two integer polynomials, by the subresultant PRS.
pub fn resultant(a: &IntPolynomial, b: &IntPolynomial) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = BigInt::one();
    if a.degree() < b.degree() {
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let ca = a.content();
    let cb = b.content();
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    let t = num_traits::pow(ca.clone(), db) * num_traits::pow(cb.clone(), da);
    a = a.div_exact_scalar(&ca).unwrap();
    b = b.div_exact_scalar(&cb).unwrap();
    if db == 0 {
        return s * t * num_traits::pow(b.leading(), da);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = r.div_exact_scalar(&divisor).expect("subresultant division is exact");
        g = a.leading();
        h = if delta == 0 {
            h
        } else {
            let num = num_traits::pow(g.clone(), delta);
            let den = num_traits::pow(h.clone(), delta - 1);
            num / den
        };
        match b.degree() {
            None => return BigInt::zero(),
            Some(0) => {
                let da = a.degree().unwrap();
                let num = num_traits::pow(b.leading(), da);
                let den = num_traits::pow(h, da - 1);
                return s * t * (num / den);
            }
            Some(_) => {}
        }
    }
}

/// `(-1)^(d(d-1)/2) / lc(f) * Res(f, f')`.
pub fn discriminant(f: &IntPolynomial) -> BigInt {
    let d = f.degree().expect("nonzero polynomial");
    if d == 0 {
        return BigInt::zero();
    }
    if d == 1 {
        return BigInt::one();
    }
    let r = resultant(f, &f.derivative());
    let signed = if (d * (d - 1) / 2) % 2 == 1 { -r } else { r };
    signed / f.leading()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(IntPolynomial::cyclotomic(1), IntPolynomial::from_i64s(&[-1, 1]));
        assert_eq!(IntPolynomial::cyclotomic(2), IntPolynomial::from_i64s(&[1, 1]));
        assert_eq!(IntPolynomial::cyclotomic(5), IntPolynomial::from_i64s(&[1, 1, 1, 1, 1]));
        assert_eq!(IntPolynomial::cyclotomic(12), IntPolynomial::from_i64s(&[1, 0, -1, 0, 1]));
        // Phi_105 is the first with a coefficient of absolute value 2
        let p105 = IntPolynomial::cyclotomic(105);
        assert_eq!(p105.degree(), Some(48));
        assert!(p105.coefficients().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn product_of_cyclotomics_is_x_pow_minus_one() {
        for n in 1..=40u64 {
            let prod = (1..=n)
                .filter(|d| n % d == 0)
                .fold(IntPolynomial::one(), |acc, d| acc.mul(&IntPolynomial::cyclotomic(d)));
            assert_eq!(prod, IntPolynomial::x_pow_minus_one(n as usize));
        }
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(discriminant(&IntPolynomial::from_i64s(&[-1, 0, 1])), BigInt::from(4));
        assert_eq!(discriminant(&IntPolynomial::from_i64s(&[-8, -2, -1, 1])), BigInt::from(-2012));
        // a x^2 + b x + c
        assert_eq!(discriminant(&IntPolynomial::from_i64s(&[3, 5, 2])), BigInt::from(25 - 24));
    }

    #[test]
    fn display() {
        assert_eq!(IntPolynomial::from_i64s(&[-8, -2, -1, 1]).to_string(), "x^3 - x^2 - 2*x - 8");
        assert_eq!(IntPolynomial::from_i64s(&[1, 0, 1]).to_string(), "x^2 + 1");
    }
}
