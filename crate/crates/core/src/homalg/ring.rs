//! Coefficient rings: the integers, the rationals and prime fields.
//!
//! Rings are passed around as small context objects so that a prime field can
//! carry its modulus at runtime. Every ring here is a Euclidean domain; the
//! linear algebra in this crate is written once against [`Ring`] and works for
//! all three.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tag describing a coefficient ring, used in reports and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
  Integers,
  Rationals,
  Prime(u64),
}

impl CoefficientRing {
  pub fn prime(p: u64) -> Result<Self> {
    if is_prime(p) {
      Ok(CoefficientRing::Prime(p))
    } else {
      Err(Error::InvalidInput(format!("modulus {p} is not prime")))
    }
  }

  pub fn is_field(&self) -> bool { !matches!(self, CoefficientRing::Integers) }
}

impl fmt::Display for CoefficientRing {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      CoefficientRing::Integers => write!(f, "Z"),
      CoefficientRing::Rationals => write!(f, "Q"),
      CoefficientRing::Prime(p) => write!(f, "Fp:{p}"),
    }
  }
}

impl FromStr for CoefficientRing {
  type Err = Error;

  fn from_str(s: &str) -> Result<Self> {
    let t = s.trim();
    match t {
      "Z" | "z" | "ZZ" => Ok(CoefficientRing::Integers),
      "Q" | "q" | "QQ" => Ok(CoefficientRing::Rationals),
      _ => {
        let rest = t
          .strip_prefix("Fp:")
          .or_else(|| t.strip_prefix("F"))
          .ok_or_else(|| Error::InvalidInput(format!("unknown ring `{s}` (expected Z, Q or Fp:<p>)")))?;
        let p: u64 = rest
          .parse()
          .map_err(|_| Error::InvalidInput(format!("unknown ring `{s}` (expected Z, Q or Fp:<p>)")))?;
        CoefficientRing::prime(p)
      },
    }
  }
}

pub fn is_prime(p: u64) -> bool {
  if p < 2 {
    return false;
  }
  let mut d = 2u64;
  while d * d <= p {
    if p % d == 0 {
      return false;
    }
    d += 1;
  }
  true
}

/// A commutative Euclidean ring given as a context object.
pub trait Ring: Clone + fmt::Debug + Send + Sync + 'static {
  type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

  fn kind(&self) -> CoefficientRing;
  fn zero(&self) -> Self::Elem;
  fn one(&self) -> Self::Elem;
  fn from_i64(&self, v: i64) -> Self::Elem;
  fn from_bigint(&self, v: &BigInt) -> Self::Elem;
  fn is_zero(&self, a: &Self::Elem) -> bool;
  fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
  fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
  fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
  fn neg(&self, a: &Self::Elem) -> Self::Elem;
  /// Inverse of a unit; `None` for non-units.
  fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
  /// Euclidean division `a = q*b + r`; `b` must be nonzero.
  fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
  /// Compares Euclidean sizes (absolute value over Z; all nonzero elements tie over fields).
  fn cmp_size(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;
  /// A unit `u` such that `u*a` is the canonical associate of `a`.
  fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;
  /// Integer representative used for reporting torsion coefficients.
  fn to_bigint(&self, a: &Self::Elem) -> BigInt;

  fn is_field(&self) -> bool { self.kind().is_field() }

  fn is_unit(&self, a: &Self::Elem) -> bool { self.inverse(a).is_some() }

  /// `acc += a*b`
  fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
    let prod = self.mul(a, b);
    *acc = self.add(acc, &prod);
  }

  /// Exact quotient `a / b` if `b` divides `a`.
  fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
    if self.is_zero(b) {
      return if self.is_zero(a) { Some(self.zero()) } else { None };
    }
    let (q, r) = self.div_rem(a, b);
    self.is_zero(&r).then_some(q)
  }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
  type Elem = BigInt;

  fn kind(&self) -> CoefficientRing { CoefficientRing::Integers }

  fn zero(&self) -> BigInt { BigInt::zero() }

  fn one(&self) -> BigInt { BigInt::one() }

  fn from_i64(&self, v: i64) -> BigInt { BigInt::from(v) }

  fn from_bigint(&self, v: &BigInt) -> BigInt { v.clone() }

  fn is_zero(&self, a: &BigInt) -> bool { a.is_zero() }

  fn add(&self, a: &BigInt, b: &BigInt) -> BigInt { a + b }

  fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt { a - b }

  fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt { a * b }

  fn neg(&self, a: &BigInt) -> BigInt { -a }

  fn inverse(&self, a: &BigInt) -> Option<BigInt> {
    if a.is_one() || (-a).is_one() {
      Some(a.clone())
    } else {
      None
    }
  }

  fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    // floor division towards a nonnegative remainder
    let (q, r) = a.div_mod_floor(b);
    if r.is_negative() {
      (q + 1, r - b)
    } else {
      (q, r)
    }
  }

  fn cmp_size(&self, a: &BigInt, b: &BigInt) -> Ordering { a.abs().cmp(&b.abs()) }

  fn normalizing_unit(&self, a: &BigInt) -> BigInt {
    if a.is_negative() {
      BigInt::from(-1)
    } else {
      BigInt::one()
    }
  }

  fn to_bigint(&self, a: &BigInt) -> BigInt { a.clone() }

  fn add_mul_assign(&self, acc: &mut BigInt, a: &BigInt, b: &BigInt) { *acc += a * b; }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
  type Elem = BigRational;

  fn kind(&self) -> CoefficientRing { CoefficientRing::Rationals }

  fn zero(&self) -> BigRational { BigRational::zero() }

  fn one(&self) -> BigRational { BigRational::one() }

  fn from_i64(&self, v: i64) -> BigRational { BigRational::from_integer(BigInt::from(v)) }

  fn from_bigint(&self, v: &BigInt) -> BigRational { BigRational::from_integer(v.clone()) }

  fn is_zero(&self, a: &BigRational) -> bool { a.is_zero() }

  fn add(&self, a: &BigRational, b: &BigRational) -> BigRational { a + b }

  fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational { a - b }

  fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational { a * b }

  fn neg(&self, a: &BigRational) -> BigRational { -a }

  fn inverse(&self, a: &BigRational) -> Option<BigRational> { (!a.is_zero()).then(|| a.recip()) }

  fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
    (a / b, BigRational::zero())
  }

  fn cmp_size(&self, a: &BigRational, b: &BigRational) -> Ordering {
    a.is_zero().cmp(&b.is_zero()).reverse()
  }

  fn normalizing_unit(&self, a: &BigRational) -> BigRational {
    if a.is_zero() {
      BigRational::one()
    } else {
      a.recip()
    }
  }

  fn to_bigint(&self, a: &BigRational) -> BigInt { a.to_integer() }
}

/// The prime field with `p` elements; elements are stored reduced in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
  p: u64,
}

impl PrimeField {
  pub fn new(p: u64) -> Result<Self> {
    if !is_prime(p) {
      return Err(Error::InvalidInput(format!("modulus {p} is not prime")));
    }
    if p >= 1 << 31 {
      return Err(Error::InvalidInput(format!("modulus {p} is too large (must be below 2^31)")));
    }
    Ok(PrimeField { p })
  }

  pub fn modulus(&self) -> u64 { self.p }

  fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= self.p;
    while exp > 0 {
      if exp & 1 == 1 {
        acc = acc * base % self.p;
      }
      base = base * base % self.p;
      exp >>= 1;
    }
    acc
  }
}

impl Ring for PrimeField {
  type Elem = u64;

  fn kind(&self) -> CoefficientRing { CoefficientRing::Prime(self.p) }

  fn zero(&self) -> u64 { 0 }

  fn one(&self) -> u64 { 1 % self.p }

  fn from_i64(&self, v: i64) -> u64 { v.rem_euclid(self.p as i64) as u64 }

  fn from_bigint(&self, v: &BigInt) -> u64 {
    let m = BigInt::from(self.p);
    v.mod_floor(&m).to_u64().expect("reduced value fits")
  }

  fn is_zero(&self, a: &u64) -> bool { *a == 0 }

  fn add(&self, a: &u64, b: &u64) -> u64 { (a + b) % self.p }

  fn sub(&self, a: &u64, b: &u64) -> u64 { (a + self.p - b) % self.p }

  fn mul(&self, a: &u64, b: &u64) -> u64 { a * b % self.p }

  fn neg(&self, a: &u64) -> u64 { (self.p - a) % self.p }

  fn inverse(&self, a: &u64) -> Option<u64> { (*a != 0).then(|| self.pow(*a, self.p - 2)) }

  fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
    let inv = self.inverse(b).expect("division by zero in prime field");
    (a * inv % self.p, 0)
  }

  fn cmp_size(&self, a: &u64, b: &u64) -> Ordering { (*a == 0).cmp(&(*b == 0)).reverse() }

  fn normalizing_unit(&self, a: &u64) -> u64 { self.inverse(a).unwrap_or(1) }

  fn to_bigint(&self, a: &u64) -> BigInt { BigInt::from(*a) }

  fn add_mul_assign(&self, acc: &mut u64, a: &u64, b: &u64) { *acc = (*acc + a * b) % self.p; }
}

/// Runs `$body` with `$r` bound to the concrete ring matching a [`CoefficientRing`] tag.
#[macro_export]
macro_rules! with_ring {
  ($tag:expr, $r:ident => $body:expr) => {
    match $tag {
      $crate::homalg::ring::CoefficientRing::Integers => {
        let $r = $crate::homalg::ring::Integers;
        $body
      },
      $crate::homalg::ring::CoefficientRing::Rationals => {
        let $r = $crate::homalg::ring::Rationals;
        $body
      },
      $crate::homalg::ring::CoefficientRing::Prime(p) => {
        let $r = $crate::homalg::ring::PrimeField::new(p).expect("validated prime modulus");
        $body
      },
    }
  };
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn parses_ring_tags() {
    assert_eq!("Z".parse::<CoefficientRing>().unwrap(), CoefficientRing::Integers);
    assert_eq!("Q".parse::<CoefficientRing>().unwrap(), CoefficientRing::Rationals);
    assert_eq!("Fp:3".parse::<CoefficientRing>().unwrap(), CoefficientRing::Prime(3));
    assert!("Fp:4".parse::<CoefficientRing>().is_err());
    assert!("R".parse::<CoefficientRing>().is_err());
  }

  #[test]
  fn integer_division_has_nonnegative_remainder() {
    let z = Integers;
    let (q, r) = z.div_rem(&BigInt::from(-7), &BigInt::from(3));
    assert_eq!((q, r), (BigInt::from(-3), BigInt::from(2)));
    let (q, r) = z.div_rem(&BigInt::from(7), &BigInt::from(-3));
    assert_eq!((q, r), (BigInt::from(-2), BigInt::from(1)));
  }

  #[test]
  fn prime_field_inverses() {
    let f = PrimeField::new(7).unwrap();
    for a in 1..7u64 {
      assert_eq!(f.mul(&a, &f.inverse(&a).unwrap()), 1);
    }
    assert_eq!(f.from_i64(-1), 6);
  }
}
