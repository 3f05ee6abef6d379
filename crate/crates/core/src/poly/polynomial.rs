use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::{cmp_grevlex, BiDegree, BiGrade, Monomial};
use super::{FieldElem, PolyError, Ring};

/// Sparse polynomial; terms are kept sorted by descending grevlex with no zero coefficients.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, FieldElem)>,
}

fn desc(a: &Monomial, b: &Monomial) -> Ordering {
    cmp_grevlex(b.exps(), a.exps())
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<Ring>, c: FieldElem) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Arc<Ring>, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn var(ring: &Arc<Ring>, idx: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), idx), ring.field().one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: FieldElem) -> Self {
        assert_eq!(m.len(), ring.nvars(), "monomial length does not match ring");
        if c.is_zero() {
            return Self::zero(ring);
        }
        Poly { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), ring.nvars(), "monomial length does not match ring");
            match acc.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| desc(&a.0, &b.0));
        Poly { ring: ring.clone(), terms }
    }

    /// Trusts the caller that `terms` is already canonical.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, FieldElem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| desc(&w[0].0, &w[1].0) == Ordering::Less));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, FieldElem)> {
        self.terms
    }

    /// Number of terms; see [`Poly::is_zero`] for emptiness.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Leading term in grevlex.
    pub fn leading(&self) -> Option<&(Monomial, FieldElem)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    fn same_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match desc(ma, mb) {
                Ordering::Less => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })));
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return Ok(big.mul_term(m, c));
        }
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e = &*e + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| desc(&a.0, &b.0));
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    /// Multiplication by `c * m`; term order is preserved since grevlex is multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn bidegree(&self) -> BiGrade {
        let vars = self.ring.vars();
        let mut found: Option<BiDegree> = None;
        for (m, _) in &self.terms {
            let d = BiDegree::new(m.degree_in(vars.x_range()), m.degree_in(vars.t_range()));
            match found {
                None => found = Some(d),
                Some(e) if e != d => return BiGrade::NotBihomogeneous,
                _ => {}
            }
        }
        match found {
            None => BiGrade::Zero,
            Some(d) => BiGrade::Homogeneous(d),
        }
    }

    /// Homogeneous in the standard grading (every variable of degree one).
    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Smallest x-degree among the terms; `None` for zero.
    pub fn min_x_degree(&self) -> Option<u32> {
        let r = self.ring.vars().x_range();
        self.terms.iter().map(|(m, _)| m.degree_in(r.clone())).min()
    }

    /// True when no term involves a variable outside `keep`.
    pub fn only_uses(&self, keep: &[usize]) -> bool {
        self.terms.iter().all(|(m, _)| m.exps().iter().enumerate().all(|(i, &e)| e == 0 || keep.contains(&i)))
    }

    pub fn partial_derivative(&self, idx: usize) -> Poly {
        let field = self.ring.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.get(idx);
            if e == 0 {
                continue;
            }
            let c = c * &field.from_i64(e as i64);
            if c.is_zero() {
                continue;
            }
            let mut m = m.clone();
            m.set(idx, e - 1);
            terms.push((m, c));
        }
        // Lowering one exponent can reorder terms, so re-canonicalize.
        Poly::from_terms(&self.ring, terms)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// Over Q: the unique integer-coefficient multiple with coprime coefficients and
    /// positive leading coefficient. Over Z/p: the monic multiple.
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        match self.terms[0].1 {
            FieldElem::Prime { .. } => self.monic(),
            FieldElem::Rational(_) => {
                let mut den = BigInt::one();
                let mut num = BigInt::zero();
                for (_, c) in &self.terms {
                    if let FieldElem::Rational(r) = c {
                        den = den.lcm(r.denom());
                        num = num.gcd(r.numer());
                    }
                }
                let mut factor = BigRational::new(den, num);
                if self.terms[0].1.is_negative() {
                    factor = -factor;
                }
                self.scale(&FieldElem::Rational(factor))
            }
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        self.same_ring(d).ok()?;
        let (lm, lc) = &d.terms[0];
        let lc_inv = lc.inverse()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let q = m.div(lm)?;
            let qc = c * &lc_inv;
            rem = &rem - &d.mul_term(&q, &qc);
            quot.push((q, qc));
        }
        Some(Poly::from_sorted_terms(&self.ring, quot))
    }

    /// Substitutes `images[i]` for variable `i`; all images must live in one target ring.
    pub fn substitute(&self, target: &Arc<Ring>, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        let mut out = Poly::zero(target);
        let mut cache: HashMap<(usize, u16), Poly> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache.entry((i, e)).or_insert_with(|| images[i].pow(e as u32));
                t = &t * p;
            }
            out = &out + &t;
        }
        out
    }

    /// Relabels variables: variable `i` becomes `map[i]` in `target`.
    pub fn remap(&self, target: &Arc<Ring>, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.ring.nvars(), "one target per variable");
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::one(n);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    out.set(map[i], out.get(map[i]) + e);
                }
            }
            (out, c.clone())
        });
        Poly::from_terms(target, terms)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::print_poly(self))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Field};

    fn ring() -> Arc<Ring> {
        Ring::standard(Field::Rational, 3, 3).unwrap()
    }

    fn p(r: &Arc<Ring>, s: &str) -> Poly {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn additive_cancellation() {
        let r = ring();
        assert_eq!(&p(&r, "x1 + T1") + &p(&r, "-x1"), p(&r, "T1"));
    }

    #[test]
    fn square_expansion() {
        let r = ring();
        let q = p(&r, "T1*T2 - T3^2");
        assert_eq!(&q * &q, p(&r, "T1^2*T2^2 - 2*T1*T2*T3^2 + T3^4"));
    }

    #[test]
    fn bidegrees() {
        let r = ring();
        let f1 = p(&r, "x1^2*(T1*T2 - T3^2)");
        assert_eq!(f1.bidegree(), BiGrade::Homogeneous(BiDegree::new(2, 2)));
        let f3 = p(&r, "(T1*T2 - T3^2)^3");
        assert_eq!(f3.bidegree(), BiGrade::Homogeneous(BiDegree::new(0, 6)));
        assert_eq!(p(&r, "x1 + T1").bidegree(), BiGrade::NotBihomogeneous);
        assert_eq!(Poly::zero(&r).bidegree(), BiGrade::Zero);
    }

    #[test]
    fn derivatives() {
        let r = ring();
        assert_eq!(p(&r, "x1^3").partial_derivative(0), p(&r, "3*x1^2"));
        let f1 = p(&r, "x1^2*(T1*T2 - T3^2)");
        assert_eq!(f1.partial_derivative(0), p(&r, "2*x1*(T1*T2 - T3^2)"));
        assert!(p(&r, "T1").partial_derivative(0).is_zero());
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let a = p(&r, "x1 - T2");
        let b = p(&r, "x2^2 + 3*x1*T1 - 1/2");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(b.div_exact(&p(&r, "x1")), None);
    }

    #[test]
    fn normalized_is_primitive() {
        let r = ring();
        let q = p(&r, "-3/4*x1 + 1/2*T1");
        assert_eq!(q.normalized(), p(&r, "3*x1 - 2*T1"));
        let fp = Ring::standard(Field::prime(7).unwrap(), 1, 1).unwrap();
        assert_eq!(p(&fp, "3*x1 + T1").normalized(), p(&fp, "x1 + 5*T1"));
    }

    #[test]
    fn substitution_and_remap() {
        let r = ring();
        let q = p(&r, "x1*T1 + x2");
        let images: Vec<Poly> = (0..6).map(|i| if i == 0 { p(&r, "x3 + 1") } else { Poly::var(&r, i) }).collect();
        assert_eq!(q.substitute(&r, &images), p(&r, "x3*T1 + T1 + x2"));
        let big = Ring::standard(Field::Rational, 3, 4).unwrap();
        let shifted = q.remap(&big, &[0, 1, 2, 4, 5, 6]);
        assert_eq!(shifted, p(&big, "x1*T2 + x2"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Poly::one(&ring());
        let b = Poly::one(&Ring::standard(Field::Rational, 2, 2).unwrap());
        assert!(matches!(a.checked_add(&b), Err(PolyError::RingMismatch)));
    }
}
