//! Exact scalars: arbitrary-precision rationals and prime-field residues.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

/// An element of ℚ or of 𝔽_p. Prime-field elements carry their modulus so that
/// arithmetic needs no external context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Q(BigRational),
    Fp { value: u64, modulus: u64 },
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % p) as u128;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => Scalar::Fp { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Fp { value: r.to_u64().expect("residue fits"), modulus: p }
            }
        }
    }

    /// `num/den` in this field; a denominator divisible by p is rejected.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Q(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::PrimeField(_) => {
                let d = self.from_bigint(den);
                if d.is_zero() {
                    return Err(Error::NonUnitDenominatorInGF(den.to_string()));
                }
                Ok(&self.from_bigint(num) * &d.inv()?)
            }
        }
    }

    /// All elements, for finite fields.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match *self {
            FieldSpec::Rationals => Err(Error::InfiniteFieldUnsupported),
            FieldSpec::PrimeField(p) => Ok((0..p).map(|value| Scalar::Fp { value, modulus: p }).collect()),
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Q(_)) => true,
            (FieldSpec::PrimeField(p), Scalar::Fp { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Rationals,
            Scalar::Fp { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { value, modulus } => {
                Scalar::Fp { value: mod_pow(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    /// Integer power; negative exponents invert. Panics on `0^(-k)`.
    pub fn pow(&self, e: i64) -> Scalar {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        match self {
            Scalar::Q(q) => {
                let e = e as i32;
                Scalar::Q(num_traits::Pow::pow(q, e))
            }
            Scalar::Fp { value, modulus } => Scalar::Fp { value: mod_pow(*value, e as u64, *modulus), modulus: *modulus },
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    /// True for a negative rational; prime-field residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { value: a, modulus }, Scalar::Fp { value: b, modulus: m2 }) => {
                debug_assert_eq!(modulus, m2);
                Scalar::Fp { value: ((*a as u128 + *b as u128) % *modulus as u128) as u64, modulus: *modulus }
            }
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { value: a, modulus }, Scalar::Fp { value: b, modulus: m2 }) => {
                debug_assert_eq!(modulus, m2);
                Scalar::Fp { value: ((*a as u128 * *b as u128) % *modulus as u128) as u64, modulus: *modulus }
            }
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { value, modulus } => Scalar::Fp { value: (modulus - value) % modulus, modulus: *modulus },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Inverse of a nonzero field element.
pub fn field_inv(a: &Scalar) -> Result<Scalar> {
    a.inv()
}
