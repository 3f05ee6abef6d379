//! Exact coefficient fields: the rationals and prime fields `Z/p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyError;

/// Largest modulus accepted for a prime field. Products of two residues fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The base field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The prime field `Z/p`; `p` must be a prime not exceeding [`MAX_PRIME`].
    pub fn prime(p: u64) -> Result<Self, PolyError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(PolyError::BadModulus(p));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        match *self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => FieldElem::Prime { value: v.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElem {
        match *self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = (v % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
                FieldElem::Prime { value: r.to_u64().expect("residue below modulus"), modulus: p }
            }
        }
    }

    /// `num / den`, failing when the denominator vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElem, PolyError> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        let inv = d.inverse().ok_or(PolyError::DivisionByZero)?;
        Ok(&n * &inv)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// An element of a [`Field`].
///
/// Rationals are kept reduced with a positive denominator (guaranteed by
/// `BigRational`); prime-field residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rational(_) => Field::Rational,
            FieldElem::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_zero(),
            FieldElem::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_one(),
            FieldElem::Prime { value, .. } => *value == 1,
        }
    }

    /// True when the element prints with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_negative(),
            FieldElem::Prime { .. } => false,
        }
    }

    pub fn inverse(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Rational(r) => FieldElem::Rational(r.recip()),
            FieldElem::Prime { value, modulus } => {
                FieldElem::Prime { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn abs(&self) -> FieldElem {
        match self {
            FieldElem::Rational(r) => FieldElem::Rational(r.abs()),
            other => other.clone(),
        }
    }

    /// Exact division; panics on a zero divisor.
    pub fn div(&self, other: &FieldElem) -> FieldElem {
        self * &other.inverse().expect("division by zero field element")
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn mismatch(a: &FieldElem, b: &FieldElem) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (FieldElem::Prime { value: a, modulus: p }, FieldElem::Prime { value: b, modulus: q }) if p == q => {
                FieldElem::Prime { value: (a + b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a - b),
            (FieldElem::Prime { value: a, modulus: p }, FieldElem::Prime { value: b, modulus: q }) if p == q => {
                FieldElem::Prime { value: (a + p - b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::Prime { value: a, modulus: p }, FieldElem::Prime { value: b, modulus: q }) if p == q => {
                FieldElem::Prime { value: a * b % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Prime { value, modulus } => {
                FieldElem::Prime { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}
