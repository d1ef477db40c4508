//! Exact fields: the rationals and small prime fields.
//!
//! Everything downstream is generic over [`Field`]. A field value is a
//! context (the prime, or nothing for the rationals); elements are plain
//! data manipulated through the context.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly;
use super::rng::Rng;
use crate::error::{Error, Result};

/// Serializable description of a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldCtx {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    PrimeField { p: u64 },
}

impl FieldCtx {
    /// The nonzero residues in ascending order.
    pub fn units(&self) -> Result<Vec<u64>> {
        match self {
            FieldCtx::Rationals => Err(Error::NotPrimeField),
            FieldCtx::PrimeField { p } => Ok((1..*p).collect()),
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            FieldCtx::Rationals => None,
            FieldCtx::PrimeField { p } => Some(*p),
        }
    }
}

pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn ctx(&self) -> FieldCtx;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;

    /// All elements in ascending order (finite fields only).
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// A random element: uniform over a finite field, a small integer otherwise.
    fn random_elem(&self, rng: &mut Rng) -> Self::Elem;

    /// Roots lying in the field of a polynomial given low-to-high.
    fn roots(&self, poly: &[Self::Elem]) -> Vec<Self::Elem>;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Integer power allowing negative exponents on units.
    fn powi(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow(&ai, e.unsigned_abs()))
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field of order `p`, elements are residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 || p >= 1 << 31 {
            return Err(Error::UnsupportedPrime(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduce a rational number, failing when the denominator vanishes mod p.
    pub fn reduce(&self, q: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u64()?;
        let den = q.denom().mod_floor(&p).to_u64()?;
        self.inv(&den).map(|di| self.mul(&num, &di))
    }

    pub fn units(&self) -> Vec<u64> {
        (1..self.p).collect()
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn ctx(&self) -> FieldCtx {
        FieldCtx::PrimeField { p: self.p }
    }

    #[inline]
    fn zero(&self) -> u64 {
        0
    }

    #[inline]
    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on signed values
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u64)
    }

    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn order(&self) -> Option<u64> {
        Some(self.p)
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }

    fn random_elem(&self, rng: &mut Rng) -> u64 {
        rng.below(self.p)
    }

    fn roots(&self, coeffs: &[u64]) -> Vec<u64> {
        let coeffs = poly::trimmed(self, coeffs);
        if coeffs.is_empty() {
            return (0..self.p).collect();
        }
        (0..self.p)
            .filter(|x| self.is_zero(&poly::eval(self, &coeffs, x)))
            .collect()
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let n: BigInt = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))?;
        Ok(n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap())
    }
}

/// The field of rational numbers with unbounded numerators and denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

/// Range used when sampling "random" rationals.
const RANDOM_RATIONAL_SPAN: u64 = 101;

impl Field for Rationals {
    type Elem = BigRational;

    fn ctx(&self) -> FieldCtx {
        FieldCtx::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    fn random_elem(&self, rng: &mut Rng) -> BigRational {
        let half = (RANDOM_RATIONAL_SPAN / 2) as i64;
        self.from_i64(rng.below(RANDOM_RATIONAL_SPAN) as i64 - half)
    }

    fn roots(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        rational_roots(self, coeffs)
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
        }
    }
}

/// Positive divisors of `n` by trial division; `None` when `n` is too large.
fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

/// Rational roots via the rational root theorem.
///
/// Coefficients whose cleared integer forms exceed 2^40 are not searched;
/// the result is then possibly incomplete.
fn rational_roots(q: &Rationals, coeffs: &[BigRational]) -> Vec<BigRational> {
    let coeffs = poly::trimmed(q, coeffs);
    if coeffs.is_empty() {
        return Vec::new();
    }
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let shift = ints.iter().take_while(|c| c.is_zero()).count();
    let mut roots = Vec::new();
    if shift > 0 {
        roots.push(q.zero());
    }
    let ints = &ints[shift..];
    if ints.len() > 1 {
        if let (Some(us), Some(vs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) {
            for u in &us {
                for v in &vs {
                    for sign in [1i64, -1] {
                        let cand = BigRational::new(BigInt::from(sign) * BigInt::from(*u), BigInt::from(*v));
                        if q.is_zero(&poly::eval(q, &coeffs, &cand)) && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_ascending() {
        assert_eq!(FieldCtx::PrimeField { p: 5 }.units().unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(FieldCtx::PrimeField { p: 7 }.units().unwrap().len(), 6);
        let u11 = FieldCtx::PrimeField { p: 11 }.units().unwrap();
        assert!(u11.contains(&10) && !u11.contains(&0));
        assert_eq!(FieldCtx::Rationals.units(), Err(Error::NotPrimeField));
    }

    #[test]
    fn rejects_bad_primes() {
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(3), Err(Error::UnsupportedPrime(3)));
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn inverses_mod_p() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 12);
    }

    #[test]
    fn rational_parse_and_format() {
        let q = Rationals;
        let x = q.parse_elem("-6/4").unwrap();
        assert_eq!(q.format_elem(&x), "-3/2");
        assert_eq!(q.format_elem(&q.from_i64(5)), "5");
        assert!(q.parse_elem("1/0").is_err());
    }

    #[test]
    fn rational_roots_of_product() {
        let q = Rationals;
        // (t - 2)(2t + 1) t = 2t^3 - 3t^2 - 2t
        let c: Vec<_> = [0, -2, -3, 2].iter().map(|&n| q.from_i64(n)).collect();
        let r = q.roots(&c);
        assert_eq!(r, vec![q.parse_elem("-1/2").unwrap(), q.zero(), q.from_i64(2)]);
    }

    #[test]
    fn reduce_rational_mod_p() {
        let f = PrimeField::new(7).unwrap();
        let half = Rationals.parse_elem("1/2").unwrap();
        assert_eq!(f.reduce(&half), Some(4));
        let seventh = Rationals.parse_elem("1/7").unwrap();
        assert_eq!(f.reduce(&seventh), None);
    }
}
