//! Monomials packed into one `u128`, eight bits per variable.
//!
//! Each lane holds an exponent below 128 so the top bit of every lane is free as a
//! guard for carry-free divisibility tests. Lanes are placed so that comparing the
//! packed words directly realises the term order once the block degrees agree.

use std::cell::Cell;
use std::cmp::Ordering;

use crate::poly::{Exp, Monomial, OrderKind};

pub(crate) const MAX_VARS: usize = 16;
pub(crate) const MAX_EXP: u32 = 127;
const GUARD: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;
const LOW: u128 = 0x7F7F_7F7F_7F7F_7F7F_7F7F_7F7F_7F7F_7F7F;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub(crate) struct PMono {
    k: u128,
    d: [u16; 2],
}

#[derive(Debug)]
pub(crate) struct Layout {
    kind: OrderKind,
    split: usize,
    shift: Vec<u32>,
    lo_bits: u32,
    overflow: Cell<bool>,
}

impl Layout {
    pub fn new(kind: OrderKind, n: usize) -> Option<Self> {
        if n > MAX_VARS {
            return None;
        }
        let split = match kind {
            OrderKind::Block(s) => s,
            _ => n,
        };
        let shift = (0..n)
            .map(|p| {
                let lane = match kind {
                    OrderKind::Grevlex => p,
                    OrderKind::Lex => n - 1 - p,
                    OrderKind::Block(s) if p < s => n - s + p,
                    OrderKind::Block(s) => p - s,
                };
                8 * lane as u32
            })
            .collect();
        let lo_bits = 8 * (n - split) as u32;
        Some(Layout { kind, split, shift, lo_bits, overflow: Cell::new(false) })
    }

    /// Packs an exponent vector laid out in order position.
    pub fn pack(&self, exps: &[Exp]) -> Option<PMono> {
        let mut m = PMono::default();
        for (p, &e) in exps.iter().enumerate() {
            if e as u32 > MAX_EXP {
                return None;
            }
            m.k |= (e as u128) << self.shift[p];
            m.d[usize::from(p >= self.split)] += e;
        }
        Some(m)
    }

    pub fn unpack(&self, m: &PMono) -> Monomial {
        let exps: Vec<Exp> = self.shift.iter().map(|&s| ((m.k >> s) & 0xFF) as Exp).collect();
        Monomial::from_exps(&exps)
    }

    /// Set once any product left the representable range.
    pub fn overflowed(&self) -> bool {
        self.overflow.get()
    }

    #[inline]
    pub fn cmp(&self, a: &PMono, b: &PMono) -> Ordering {
        match self.kind {
            OrderKind::Grevlex => a.d[0].cmp(&b.d[0]).then_with(|| b.k.cmp(&a.k)),
            OrderKind::Lex => a.k.cmp(&b.k),
            OrderKind::Block(_) => {
                let lo_mask = low_mask(self.lo_bits);
                a.d[0]
                    .cmp(&b.d[0])
                    .then_with(|| hi(b.k, self.lo_bits).cmp(&hi(a.k, self.lo_bits)))
                    .then_with(|| a.d[1].cmp(&b.d[1]))
                    .then_with(|| (b.k & lo_mask).cmp(&(a.k & lo_mask)))
            }
        }
    }

    #[inline]
    pub fn mul(&self, a: &PMono, b: &PMono) -> PMono {
        let k = a.k + b.k;
        if k & GUARD != 0 {
            self.overflow.set(true);
        }
        PMono { k, d: [a.d[0] + b.d[0], a.d[1] + b.d[1]] }
    }
}

#[inline]
fn hi(k: u128, lo_bits: u32) -> u128 {
    k.checked_shr(lo_bits).unwrap_or(0)
}

#[inline]
fn low_mask(bits: u32) -> u128 {
    if bits >= 128 {
        u128::MAX
    } else {
        (1u128 << bits) - 1
    }
}

impl PMono {
    #[inline]
    pub fn divides(&self, other: &PMono) -> bool {
        ((other.k | GUARD) - self.k) & GUARD == GUARD
    }

    /// `self / other`, assuming `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &PMono) -> PMono {
        PMono { k: self.k - other.k, d: [self.d[0] - other.d[0], self.d[1] - other.d[1]] }
    }

    pub fn lcm(&self, other: &PMono, layout: &Layout) -> PMono {
        let ge = ((self.k | GUARD) - other.k) & GUARD;
        let mask = (ge >> 7) * 0xFF;
        let k = (self.k & mask) | (other.k & !mask);
        let lo = k & low_mask(layout.lo_bits);
        let d = match layout.kind {
            OrderKind::Block(_) => [lane_sum(hi(k, layout.lo_bits)), lane_sum(lo)],
            _ => [lane_sum(k), 0],
        };
        PMono { k, d }
    }

    pub fn is_coprime(&self, other: &PMono) -> bool {
        support(self.k) & support(other.k) == 0
    }

    /// Sum of `weights[p] * e_p`, with weights per order position.
    pub fn weighted_degree(&self, layout: &Layout, weights: &[u32]) -> u32 {
        layout.shift.iter().zip(weights).map(|(&s, &w)| ((self.k >> s) & 0xFF) as u32 * w).sum()
    }
}

/// Guard bit set in each nonzero lane.
#[inline]
fn support(k: u128) -> u128 {
    (((k & LOW) + LOW) | k) & GUARD
}

#[inline]
fn lane_sum(k: u128) -> u16 {
    // Lanes are below 128 and there are at most 16, so partial sums fit in the top 16 bits.
    let pairs =
        (k & 0x00FF_00FF_00FF_00FF_00FF_00FF_00FF_00FF) + ((k >> 8) & 0x00FF_00FF_00FF_00FF_00FF_00FF_00FF_00FF);
    let sum = pairs.wrapping_mul(0x0001_0001_0001_0001_0001_0001_0001_0001);
    (sum >> 112) as u16
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::cmp_grevlex;

    fn layouts(n: usize) -> Vec<Layout> {
        let mut out = vec![Layout::new(OrderKind::Grevlex, n).unwrap(), Layout::new(OrderKind::Lex, n).unwrap()];
        for s in 0..=n {
            out.push(Layout::new(OrderKind::Block(s), n).unwrap());
        }
        out
    }

    fn all_exps(n: usize, max: Exp) -> Vec<Vec<Exp>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out.into_iter().flat_map(|v| (0..=max).map(move |e| [v.clone(), vec![e]].concat())).collect();
        }
        out
    }

    #[test]
    fn packed_order_agrees_with_exponent_order() {
        let exps = all_exps(4, 2);
        for layout in layouts(4) {
            for a in &exps {
                for b in &exps {
                    let (pa, pb) = (layout.pack(a).unwrap(), layout.pack(b).unwrap());
                    assert_eq!(layout.cmp(&pa, &pb), layout.kind.cmp(a, b), "{:?} {a:?} {b:?}", layout.kind);
                    let divides = a.iter().zip(b).all(|(x, y)| x <= y);
                    assert_eq!(pa.divides(&pb), divides);
                    let lcm: Vec<Exp> = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
                    assert_eq!(pa.lcm(&pb, &layout), layout.pack(&lcm).unwrap());
                    let coprime = a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0);
                    assert_eq!(pa.is_coprime(&pb), coprime);
                    let prod: Vec<Exp> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    assert_eq!(layout.mul(&pa, &pb), layout.pack(&prod).unwrap());
                }
            }
        }
    }

    #[test]
    fn sixteen_variables_and_overflow() {
        let layout = Layout::new(OrderKind::Grevlex, 16).unwrap();
        let a: Vec<Exp> = (0..16).map(|i| 100 + i as Exp % 20).collect();
        let b: Vec<Exp> = (0..16).map(|i| i as Exp).collect();
        let (pa, pb) = (layout.pack(&a).unwrap(), layout.pack(&b).unwrap());
        assert_eq!(layout.cmp(&pa, &pb), cmp_grevlex(&a, &b));
        assert_eq!(layout.unpack(&pa).exps(), &a[..]);
        assert_eq!(pa.lcm(&pb, &layout).d[0] as u32, a.iter().map(|&e| e as u32).sum::<u32>());
        assert!(!layout.overflowed());
        layout.mul(&pa, &pa);
        assert!(layout.overflowed());
        assert!(layout.pack(&[128]).is_none());
        assert!(Layout::new(OrderKind::Grevlex, 17).is_none());
    }
}
