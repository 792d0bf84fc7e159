//! Coefficient rings: the integers, the rationals and prime fields, behind a
//! single exact-arithmetic interface.
//!
//! All three are Euclidean, which is what the Smith normal form and the
//! membership solvers in [`crate::linalg`] rely on. Integer arithmetic is
//! arbitrary precision; elimination can blow entries up far beyond any fixed
//! width.

use std::fmt;
use std::str::FromStr;

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{Integer as _, One, Signed, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Identifies one of the supported coefficient rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    Integers,
    Rationals,
    /// `Z/p` for a prime `p`.
    PrimeField(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown ring tag `{0}` (expected Z, Q or Fp:<prime>)")]
    UnknownTag(String),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut k = 3u64;
    while k.checked_mul(k).is_some_and(|sq| sq <= p) {
        if p % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self, RingError> {
        if is_prime(p) { Ok(RingSpec::PrimeField(p)) } else { Err(RingError::NotPrime(p)) }
    }

    pub fn validate(&self) -> Result<(), RingError> {
        match *self {
            RingSpec::PrimeField(p) if !is_prime(p) => Err(RingError::NotPrime(p)),
            _ => Ok(()),
        }
    }

    /// Short tag used in documents and on the command line.
    pub fn tag(&self) -> String {
        match self {
            RingSpec::Integers => "Z".to_string(),
            RingSpec::Rationals => "Q".to_string(),
            RingSpec::PrimeField(p) => format!("Fp:{p}"),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for RingSpec {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, RingError> {
        match s {
            "Z" | "z" => Ok(RingSpec::Integers),
            "Q" | "q" => Ok(RingSpec::Rationals),
            _ => {
                if let Some(p) = s.strip_prefix("Fp:").or_else(|| s.strip_prefix("fp:")) {
                    let p: u64 = p.parse().map_err(|_| RingError::UnknownTag(s.to_string()))?;
                    RingSpec::prime_field(p)
                } else {
                    Err(RingError::UnknownTag(s.to_string()))
                }
            }
        }
    }
}

/// A principal ring with effective Euclidean division.
///
/// The ring is a value, not just a type, so that `Z/p` can carry its modulus.
/// Elements do not know their ring; all arithmetic goes through the ring.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + Serialize + DeserializeOwned + 'static;

    fn spec(&self) -> RingSpec;
    fn is_field(&self) -> bool;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Integer representative when there is one (`None` for proper fractions).
    fn to_bigint(&self, a: &Self::Elem) -> Option<BigInt>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Euclidean division `a = q·b + r` with `norm(r) < norm(b)`; `b` must be
    /// nonzero. Over the integers the remainder is balanced, `|r| ≤ |b|/2`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// `Some(a/b)` when `b` is nonzero and divides `a` exactly.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Euclidean size; zero iff the element is zero.
    fn norm(&self, a: &Self::Elem) -> BigUint;
    /// The unit `u` such that `u·a` is the canonical associate: `|a|` over the
    /// integers, `1` over a field (for nonzero `a`).
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, String>;
}

/// The ring of integers with arbitrary-precision elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }
    fn is_field(&self) -> bool {
        false
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn to_bigint(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }
    fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        self.is_unit(a).then(|| a.clone())
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        assert!(!b.is_zero(), "division by zero");
        let (mut q, mut r) = a.div_rem(b);
        // Balance the remainder; smaller pivots keep SNF entry growth down.
        if r.magnitude() * 2u32 > *b.magnitude() {
            if r.sign() == b.sign() {
                q += 1;
                r -= b;
            } else {
                q -= 1;
                r += b;
            }
        }
        (q, r)
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }
    fn norm(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }
    fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() { BigInt::from(-1) } else { BigInt::one() }
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt, String> {
        s.parse().map_err(|e| format!("bad integer `{s}`: {e}"))
    }
}

/// The field of rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> RingSpec {
        RingSpec::Rationals
    }
    fn is_field(&self) -> bool {
        true
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
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn to_bigint(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.to_integer())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        assert!(!b.is_zero(), "division by zero");
        (a / b, BigRational::zero())
    }
    fn div_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
    fn gcd(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_zero() && b.is_zero() { BigRational::zero() } else { BigRational::one() }
    }
    fn norm(&self, a: &BigRational) -> BigUint {
        if a.is_zero() { BigUint::zero() } else { BigUint::one() }
    }
    fn normalizing_unit(&self, a: &BigRational) -> BigRational {
        if a.is_zero() { BigRational::one() } else { a.recip() }
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigRational, String> {
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|e| format!("bad rational `{s}`: {e}"))?;
            let d: BigInt = d.trim().parse().map_err(|e| format!("bad rational `{s}`: {e}"))?;
            if d.is_zero() {
                return Err(format!("bad rational `{s}`: zero denominator"));
            }
            Ok(BigRational::new(n, d))
        } else {
            let n: BigInt = s.trim().parse().map_err(|e| format!("bad rational `{s}`: {e}"))?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// The prime field `Z/p`; elements are reduced residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, RingError> {
        if is_prime(p) { Ok(PrimeField { p }) } else { Err(RingError::NotPrime(p)) }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, n: i128) -> u64 {
        let p = self.p as i128;
        (n.rem_euclid(p)) as u64
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let p = self.p as u128;
        let mut acc: u128 = 1;
        let mut b = base as u128 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        base = acc as u64;
        base
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn spec(&self) -> RingSpec {
        RingSpec::PrimeField(self.p)
    }
    fn is_field(&self) -> bool {
        true
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = n.mod_floor(&p);
        u64::try_from(r).expect("reduced residue fits in u64")
    }
    fn to_bigint(&self, a: &u64) -> Option<BigInt> {
        Some(BigInt::from(*a))
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.reduce_i128(*a as i128 - *b as i128)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 { 0 } else { self.p - a }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn inverse(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        let inv = self.inverse(b).expect("division by zero");
        (self.mul(a, &inv), 0)
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        self.inverse(b).map(|inv| self.mul(a, &inv))
    }
    fn gcd(&self, a: &u64, b: &u64) -> u64 {
        if *a == 0 && *b == 0 { 0 } else { 1 % self.p.max(2) }
    }
    fn norm(&self, a: &u64) -> BigUint {
        if *a == 0 { BigUint::zero() } else { BigUint::one() }
    }
    fn normalizing_unit(&self, a: &u64) -> u64 {
        if *a == 0 { 1 % self.p } else { self.inverse(a).unwrap() }
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, String> {
        let n: i64 = s.parse().map_err(|e| format!("bad residue `{s}`: {e}"))?;
        Ok(self.from_i64(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_requires_prime() {
        assert!(PrimeField::new(7).is_ok());
        assert_eq!(PrimeField::new(6), Err(RingError::NotPrime(6)));
        assert_eq!(RingSpec::prime_field(1), Err(RingError::NotPrime(1)));
        assert!(RingSpec::prime_field(2).is_ok());
    }

    #[test]
    fn ring_tags_round_trip() {
        for tag in ["Z", "Q", "Fp:5"] {
            let spec: RingSpec = tag.parse().unwrap();
            assert_eq!(spec.tag(), tag);
        }
        assert!("Fp:4".parse::<RingSpec>().is_err());
        assert!("GF2".parse::<RingSpec>().is_err());
    }

    #[test]
    fn balanced_division_over_z() {
        let z = Integers;
        for (a, b) in [(7i64, 3i64), (-7, 3), (7, -3), (8, 3), (9, -4), (5, 5), (-4, 8)] {
            let (q, r) = z.div_rem(&BigInt::from(a), &BigInt::from(b));
            assert_eq!(&q * BigInt::from(b) + &r, BigInt::from(a));
            assert!(r.magnitude() * 2u32 <= BigInt::from(b).magnitude().clone() * 1u32);
        }
    }

    #[test]
    fn mod_p_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.mul(&3, &4), 2);
        assert_eq!(f.inverse(&3), Some(2));
        assert_eq!(f.add(&4, &4), 3);
    }
}
