//! Monomials, term orders and bidegrees.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Exp = u16;

/// Exponent vector over every variable of a ring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[Exp; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[idx] = 1;
        m
    }

    pub fn from_exps(exps: &[Exp]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exps(&self) -> &[Exp] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, idx: usize) -> Exp {
        self.0[idx]
    }

    pub fn set(&mut self, idx: usize, e: Exp) {
        self.0[idx] = e;
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, range: std::ops::Range<usize>) -> u32 {
        self.0[range].iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of variables with positive exponent (first 64 variables).
    pub fn support_mask(&self) -> u64 {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |acc, (i, _)| acc | (1 << i))
    }

    /// Reorders exponents so that position `k` holds the exponent of variable `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        Monomial(perm.iter().map(|&i| self.0[i]).collect())
    }

    /// Inverse of [`Monomial::permuted`].
    pub fn unpermuted(&self, perm: &[usize]) -> Monomial {
        let mut out = SmallVec::from_elem(0, self.0.len());
        for (k, &i) in perm.iter().enumerate() {
            out[i] = self.0[k];
        }
        Monomial(out)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Graded reverse lexicographic comparison on raw exponent order.
pub fn cmp_grevlex(a: &[Exp], b: &[Exp]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

pub fn cmp_lex(a: &[Exp], b: &[Exp]) -> Ordering {
    a.cmp(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
    /// Elimination order: the first `split` positions are compared by grevlex
    /// first, ties broken by grevlex on the remaining positions.
    Block(usize),
}

impl OrderKind {
    /// Compare exponent vectors already laid out in order position.
    pub fn cmp(&self, a: &[Exp], b: &[Exp]) -> Ordering {
        match *self {
            OrderKind::Grevlex => cmp_grevlex(a, b),
            OrderKind::Lex => cmp_lex(a, b),
            OrderKind::Block(s) => cmp_grevlex(&a[..s], &b[..s]).then_with(|| cmp_grevlex(&a[s..], &b[s..])),
        }
    }
}

/// A monomial order: an [`OrderKind`] applied after permuting variables.
///
/// `perm[k]` is the variable occupying position `k`; position 0 is the most
/// significant for lex and the first block for elimination orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    perm: Vec<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, perm: Vec<usize>) -> Self {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(p < perm.len() && !seen[p], "term order permutation is not a bijection");
            seen[p] = true;
        }
        if let OrderKind::Block(s) = kind {
            assert!(s <= perm.len(), "block split past the last variable");
        }
        TermOrder { kind, perm }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::Grevlex, (0..nvars).collect())
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, (0..nvars).collect())
    }

    /// Elimination order for `eliminate`: those variables form the first block,
    /// the rest keep their relative order.
    pub fn elimination(nvars: usize, eliminate: &[usize]) -> Self {
        let mut perm: Vec<usize> = eliminate.to_vec();
        perm.extend((0..nvars).filter(|i| !eliminate.contains(i)));
        Self::new(OrderKind::Block(eliminate.len()), perm)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let pa = a.permuted(&self.perm);
        let pb = b.permuted(&self.perm);
        self.kind.cmp(pa.exps(), pb.exps())
    }
}

/// (x-degree, T-degree).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiDegree {
    pub x: u32,
    pub t: u32,
}

impl BiDegree {
    pub fn new(x: u32, t: u32) -> Self {
        BiDegree { x, t }
    }
}

impl std::ops::Add for BiDegree {
    type Output = BiDegree;
    fn add(self, rhs: BiDegree) -> BiDegree {
        BiDegree::new(self.x + rhs.x, self.t + rhs.t)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.t)
    }
}

/// Result of asking a polynomial for its bidegree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BiGrade {
    /// The zero polynomial, compatible with every bidegree.
    Zero,
    Homogeneous(BiDegree),
    NotBihomogeneous,
}

impl BiGrade {
    pub fn degree(&self) -> Option<BiDegree> {
        match self {
            BiGrade::Homogeneous(d) => Some(*d),
            _ => None,
        }
    }

    /// Zero matches anything; a mixed polynomial matches nothing.
    pub fn is_compatible_with(&self, d: BiDegree) -> bool {
        match self {
            BiGrade::Zero => true,
            BiGrade::Homogeneous(e) => *e == d,
            BiGrade::NotBihomogeneous => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[Exp]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn grevlex_basics() {
        // x^2 > xy > y^2 > x z... in 3 vars, degree first
        assert_eq!(cmp_grevlex(&[2, 0, 0], &[1, 1, 0]), Ordering::Greater);
        assert_eq!(cmp_grevlex(&[1, 1, 0], &[0, 2, 0]), Ordering::Greater);
        assert_eq!(cmp_grevlex(&[0, 2, 0], &[1, 0, 1]), Ordering::Greater);
        assert_eq!(cmp_grevlex(&[0, 0, 1], &[1, 1, 0]), Ordering::Less);
    }

    #[test]
    fn lex_with_permutation() {
        // variables (a, b, c), order c > a > b
        let ord = TermOrder::new(OrderKind::Lex, vec![2, 0, 1]);
        assert_eq!(ord.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_order_eliminates() {
        let ord = TermOrder::elimination(3, &[1]);
        // anything involving var 1 beats any monomial free of it
        assert_eq!(ord.cmp(&m(&[0, 1, 0]), &m(&[7, 0, 7])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[2, 0, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[0, 3, 1]);
        assert_eq!(a.lcm(&b), m(&[1, 3, 1]));
        assert!(!a.divides(&b));
        assert!(a.divides(&a.lcm(&b)));
        assert_eq!(a.lcm(&b).div(&a), Some(m(&[0, 1, 1])));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 4])));
        assert_eq!(a.support_mask(), 0b011);
    }

    #[test]
    fn permutation_round_trip() {
        let perm = [2, 0, 1];
        let a = m(&[4, 5, 6]);
        assert_eq!(a.permuted(&perm), m(&[6, 4, 5]));
        assert_eq!(a.permuted(&perm).unpermuted(&perm), a);
    }
}
