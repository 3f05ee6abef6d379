//! Coefficient arithmetic used inside Buchberger's algorithm.
//!
//! Over Q the engine works fraction-free on integer coefficients, dividing out
//! contents; over Z/p it works with plain residues.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{Field, FieldElem, Poly};

pub(crate) trait Coef: Clone + PartialEq + Debug {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn one_like(&self) -> Self;
    fn one_of(field: Field) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;

    /// `(u, v)` with `u / v = a / b` and both as small as the ring allows.
    fn cofactors(a: &Self, b: &Self) -> (Self, Self);

    /// Divides all coefficients by a common factor chosen so that the result is
    /// canonical up to units; returns that factor.
    fn normalize(coeffs: &mut [&mut Self]) -> Self;

    fn to_field(&self) -> FieldElem;

    /// Coefficients of a scalar multiple of `p`, with the scalar.
    fn from_poly(p: &Poly) -> (Vec<Self>, FieldElem);
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct ZCoef(pub BigInt);

impl Coef for ZCoef {
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn one_like(&self) -> Self {
        ZCoef(BigInt::one())
    }

    fn one_of(_: Field) -> Self {
        ZCoef(BigInt::one())
    }

    fn neg(&self) -> Self {
        ZCoef(-&self.0)
    }

    fn mul(&self, other: &Self) -> Self {
        ZCoef(&self.0 * &other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        ZCoef(&self.0 - &other.0)
    }

    fn cofactors(a: &Self, b: &Self) -> (Self, Self) {
        let g = a.0.gcd(&b.0);
        let (mut u, mut v) = (&a.0 / &g, &b.0 / &g);
        if v.is_negative() {
            u = -u;
            v = -v;
        }
        (ZCoef(u), ZCoef(v))
    }

    fn normalize(coeffs: &mut [&mut Self]) -> Self {
        let mut g = BigInt::zero();
        for c in coeffs.iter() {
            g = g.gcd(&c.0);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return ZCoef(BigInt::one());
        }
        if coeffs[0].0.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in coeffs.iter_mut() {
                c.0 = &c.0 / &g;
            }
        }
        ZCoef(g)
    }

    fn to_field(&self) -> FieldElem {
        FieldElem::Rational(BigRational::from_integer(self.0.clone()))
    }

    fn from_poly(p: &Poly) -> (Vec<Self>, FieldElem) {
        let mut den = BigInt::one();
        for (_, c) in p.terms() {
            if let FieldElem::Rational(r) = c {
                den = den.lcm(r.denom());
            }
        }
        let coeffs = p
            .terms()
            .iter()
            .map(|(_, c)| match c {
                FieldElem::Rational(r) => ZCoef(r.numer() * (&den / r.denom())),
                FieldElem::Prime { .. } => panic!("prime-field coefficient in a rational engine"),
            })
            .collect();
        (coeffs, FieldElem::Rational(BigRational::from_integer(den)))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct PCoef {
    pub v: u64,
    pub p: u64,
}

impl PCoef {
    fn inv(&self) -> PCoef {
        let mut acc = 1u64;
        let mut base = self.v;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        PCoef { v: acc, p: self.p }
    }
}

impl Coef for PCoef {
    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn is_one(&self) -> bool {
        self.v == 1
    }

    fn one_like(&self) -> Self {
        PCoef { v: 1, p: self.p }
    }

    fn one_of(field: Field) -> Self {
        PCoef { v: 1, p: field.characteristic() }
    }

    fn neg(&self) -> Self {
        PCoef { v: (self.p - self.v) % self.p, p: self.p }
    }

    fn mul(&self, other: &Self) -> Self {
        PCoef { v: self.v * other.v % self.p, p: self.p }
    }

    fn sub(&self, other: &Self) -> Self {
        PCoef { v: (self.v + self.p - other.v) % self.p, p: self.p }
    }

    fn cofactors(a: &Self, b: &Self) -> (Self, Self) {
        (a.mul(&b.inv()), a.one_like())
    }

    fn normalize(coeffs: &mut [&mut Self]) -> Self {
        let lc = *coeffs[0];
        if lc.is_one() {
            return lc;
        }
        let inv = lc.inv();
        for c in coeffs.iter_mut() {
            **c = c.mul(&inv);
        }
        lc
    }

    fn to_field(&self) -> FieldElem {
        FieldElem::Prime { value: self.v, modulus: self.p }
    }

    fn from_poly(p: &Poly) -> (Vec<Self>, FieldElem) {
        let modulus = match p.ring().field() {
            Field::Prime(q) => q,
            Field::Rational => panic!("rational coefficient in a prime-field engine"),
        };
        let coeffs = p
            .terms()
            .iter()
            .map(|(_, c)| match c {
                FieldElem::Prime { value, .. } => PCoef { v: *value, p: modulus },
                FieldElem::Rational(_) => panic!("rational coefficient in a prime-field engine"),
            })
            .collect();
        (coeffs, p.ring().field().one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_cofactors_keep_sign_on_numerator() {
        let (u, v) = ZCoef::cofactors(&ZCoef(BigInt::from(6)), &ZCoef(BigInt::from(-4)));
        assert_eq!((u.0, v.0), (BigInt::from(-3), BigInt::from(2)));
    }

    #[test]
    fn integer_normalize_divides_content() {
        let mut a = ZCoef(BigInt::from(-6));
        let mut b = ZCoef(BigInt::from(9));
        let g = ZCoef::normalize(&mut [&mut a, &mut b]);
        assert_eq!(g.0, BigInt::from(-3));
        assert_eq!((a.0, b.0), (BigInt::from(2), BigInt::from(-3)));
    }

    #[test]
    fn prime_normalize_is_monic() {
        let mut a = PCoef { v: 3, p: 7 };
        let mut b = PCoef { v: 1, p: 7 };
        PCoef::normalize(&mut [&mut a, &mut b]);
        assert_eq!((a.v, b.v), (1, 5));
    }
}
