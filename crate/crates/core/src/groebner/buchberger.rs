//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller pair criteria.
//!
//! Monomials are packed (see [`super::packed`]) after permuting variables into
//! term-order position.

use std::cmp::Ordering;
use std::sync::Arc;

use super::coeff::Coef;
use super::packed::{Layout, PMono, MAX_EXP, MAX_VARS};
use super::{GroebnerError, Limits};
use crate::poly::{Field, FieldElem, Monomial, Poly, Ring, TermOrder};

type Terms<C> = Vec<(PMono, C)>;

/// How many reduction steps between content removals over Z.
const CONTENT_EVERY: usize = 8;

pub(crate) struct Engine<C: Coef> {
    layout: Layout,
    perm: Vec<usize>,
    weights: Vec<u32>,
    limits: Limits,
    polys: Vec<Terms<C>>,
    active: Vec<bool>,
    one: C,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: PMono,
    deg: u32,
}

impl<C: Coef> Engine<C> {
    /// `weights` are per ring variable and only steer pair selection.
    pub fn new(field: Field, order: &TermOrder, weights: &[u32], limits: Limits) -> Result<Self, GroebnerError> {
        let perm = order.perm().to_vec();
        let weights = perm.iter().map(|&v| weights[v]).collect();
        let layout = Layout::new(order.kind(), perm.len())
            .ok_or_else(|| GroebnerError::ResourceCap(format!("more than {MAX_VARS} variables")))?;
        Ok(Engine { layout, perm, weights, limits, polys: Vec::new(), active: Vec::new(), one: C::one_of(field) })
    }

    fn cmp(&self, a: &PMono, b: &PMono) -> Ordering {
        self.layout.cmp(a, b)
    }

    fn exponent_cap() -> GroebnerError {
        GroebnerError::ResourceCap(format!("an exponent above {MAX_EXP}"))
    }

    pub fn check_overflow(&self) -> Result<(), GroebnerError> {
        if self.layout.overflowed() {
            return Err(Self::exponent_cap());
        }
        Ok(())
    }

    /// Converts to internal form; the returned field element `s` satisfies
    /// `internal = s * p` up to coefficient embedding.
    pub fn import(&self, p: &Poly) -> Result<(Terms<C>, FieldElem), GroebnerError> {
        let (coeffs, scale) = C::from_poly(p);
        let mut terms: Terms<C> = Vec::with_capacity(coeffs.len());
        for ((m, _), c) in p.terms().iter().zip(coeffs) {
            let packed = self.layout.pack(m.permuted(&self.perm).exps()).ok_or_else(Self::exponent_cap)?;
            terms.push((packed, c));
        }
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Ok((terms, scale))
    }

    pub fn monomial(&self, m: &PMono) -> Monomial {
        self.layout.unpack(m).unpermuted(&self.perm)
    }

    pub fn export(&self, ring: &Arc<Ring>, terms: &Terms<C>) -> Poly {
        Poly::from_terms(ring, terms.iter().map(|(m, c)| (self.monomial(m), c.to_field())))
    }

    fn push(&mut self, terms: Terms<C>) -> Result<usize, GroebnerError> {
        if self.polys.len() >= self.limits.max_basis {
            return Err(GroebnerError::ResourceCap(format!("basis grew past {} elements", self.limits.max_basis)));
        }
        self.polys.push(terms);
        self.active.push(true);
        Ok(self.polys.len() - 1)
    }

    /// Loads an already reduced basis for normal form computations.
    pub fn load_basis(&mut self, basis: Vec<Terms<C>>) {
        for b in basis {
            self.polys.push(b);
            self.active.push(true);
        }
    }

    fn find_reducer(&self, m: &PMono, skip: Option<usize>) -> Option<usize> {
        (0..self.polys.len()).find(|&k| self.active[k] && Some(k) != skip && self.polys[k][0].0.divides(m))
    }

    /// `xs * xm * x - ys * ym * y` for descending term lists.
    fn lin_comb(&self, x: &[(PMono, C)], xm: &PMono, xs: &C, y: &[(PMono, C)], ym: &PMono, ys: &C) -> Terms<C> {
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        let scale = |c: &C, s: &C| if s.is_one() { c.clone() } else { c.mul(s) };
        let mut xi = x.first().map(|(m, _)| self.layout.mul(m, xm));
        let mut yj = y.first().map(|(m, _)| self.layout.mul(m, ym));
        loop {
            match (&xi, &yj) {
                (None, None) => break,
                (Some(a), None) => {
                    out.push((*a, scale(&x[i].1, xs)));
                    i += 1;
                    xi = x.get(i).map(|(m, _)| self.layout.mul(m, xm));
                }
                (None, Some(b)) => {
                    let c = scale(&y[j].1, ys);
                    out.push((*b, c.neg()));
                    j += 1;
                    yj = y.get(j).map(|(m, _)| self.layout.mul(m, ym));
                }
                (Some(a), Some(b)) => match self.cmp(a, b) {
                    Ordering::Greater => {
                        out.push((*a, scale(&x[i].1, xs)));
                        i += 1;
                        xi = x.get(i).map(|(m, _)| self.layout.mul(m, xm));
                    }
                    Ordering::Less => {
                        let c = scale(&y[j].1, ys);
                        out.push((*b, c.neg()));
                        j += 1;
                        yj = y.get(j).map(|(m, _)| self.layout.mul(m, ym));
                    }
                    Ordering::Equal => {
                        let c = scale(&x[i].1, xs).sub(&scale(&y[j].1, ys));
                        if !c.is_zero() {
                            out.push((*a, c));
                        }
                        i += 1;
                        j += 1;
                        xi = x.get(i).map(|(m, _)| self.layout.mul(m, xm));
                        yj = y.get(j).map(|(m, _)| self.layout.mul(m, ym));
                    }
                },
            }
        }
        out
    }

    /// Reduces `h` by the active basis, skipping element `skip`.
    ///
    /// Returns `(r, num, den)` with `num/den * h ≡ r`. With `full == false` only the
    /// leading term is reduced.
    pub fn reduce(&self, h: Terms<C>, full: bool, skip: Option<usize>) -> (Terms<C>, C, C) {
        let one = self.one.clone();
        let mut num = one.clone();
        let mut den = one.clone();
        let mut done: Terms<C> = Vec::new();
        let mut rest = h;
        let mut start = 0;
        let mut steps = 0;
        while start < rest.len() {
            let (m, c) = &rest[start];
            match self.find_reducer(m, skip) {
                Some(k) => {
                    let g = &self.polys[k];
                    let (u, v) = C::cofactors(c, &g[0].1);
                    let q = m.div(&g[0].0);
                    rest = self.lin_comb(&rest[start + 1..], &PMono::default(), &v, &g[1..], &q, &u);
                    start = 0;
                    if !v.is_one() {
                        for t in done.iter_mut() {
                            t.1 = t.1.mul(&v);
                        }
                        num = num.mul(&v);
                    }
                    steps += 1;
                    if steps % CONTENT_EVERY == 0 && !v.is_one() {
                        let mut all: Vec<&mut C> = done.iter_mut().chain(rest.iter_mut()).map(|t| &mut t.1).collect();
                        if !all.is_empty() {
                            den = den.mul(&C::normalize(&mut all));
                        }
                    }
                }
                None => {
                    if !full {
                        done.extend(rest.drain(start..));
                        break;
                    }
                    done.push(rest[start].clone());
                    start += 1;
                }
            }
        }
        if !done.is_empty() {
            let mut all: Vec<&mut C> = done.iter_mut().map(|t| &mut t.1).collect();
            den = den.mul(&C::normalize(&mut all));
        }
        (done, num, den)
    }

    fn update(&self, pairs: &mut Vec<Pair>, h: usize) {
        let lh = &self.polys[h][0].0;
        let layout = &self.layout;
        let mut c: Vec<Pair> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lcm = self.polys[g][0].0.lcm(lh, layout);
                let deg = lcm.weighted_degree(layout, &self.weights);
                Pair { i: g, j: h, lcm, deg }
            })
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = c.pop() {
            let coprime = self.polys[p.i][0].0.is_coprime(lh);
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d.into_iter().filter(|p| !self.polys[p.i][0].0.is_coprime(lh)).collect();
        pairs.retain(|p| {
            if !lh.divides(&p.lcm) {
                return true;
            }
            let li = self.polys[p.i][0].0.lcm(lh, layout);
            let lj = self.polys[p.j][0].0.lcm(lh, layout);
            li == p.lcm || lj == p.lcm
        });
        pairs.extend(e);
    }

    fn add_element(&mut self, pairs: &mut Vec<Pair>, terms: Terms<C>) -> Result<(), GroebnerError> {
        let h = self.push(terms)?;
        self.update(pairs, h);
        let lh = self.polys[h][0].0;
        for g in 0..h {
            if self.active[g] && lh.divides(&self.polys[g][0].0) {
                self.active[g] = false;
            }
        }
        Ok(())
    }

    fn select(&self, pairs: &[Pair]) -> usize {
        let mut best = 0;
        for k in 1..pairs.len() {
            let (a, b) = (&pairs[k], &pairs[best]);
            let ord =
                a.deg.cmp(&b.deg).then_with(|| self.cmp(&a.lcm, &b.lcm)).then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        best
    }

    fn spoly(&self, p: &Pair) -> Terms<C> {
        let (gi, gj) = (&self.polys[p.i], &self.polys[p.j]);
        let (u, v) = C::cofactors(&gi[0].1, &gj[0].1);
        let mi = p.lcm.div(&gi[0].0);
        let mj = p.lcm.div(&gj[0].0);
        self.lin_comb(&gi[1..], &mi, &v, &gj[1..], &mj, &u)
    }

    /// Runs the completion and returns the reduced basis sorted by increasing leading term.
    pub fn run(mut self, gens: Vec<Terms<C>>) -> Result<Vec<Terms<C>>, GroebnerError> {
        let mut pairs: Vec<Pair> = Vec::new();
        for g in gens {
            if g.is_empty() {
                continue;
            }
            let r = if self.polys.is_empty() {
                let mut g = g;
                let mut all: Vec<&mut C> = g.iter_mut().map(|t| &mut t.1).collect();
                C::normalize(&mut all);
                g
            } else {
                self.reduce(g, true, None).0
            };
            self.check_overflow()?;
            if !r.is_empty() {
                self.add_element(&mut pairs, r)?;
            }
        }
        let mut processed = 0usize;
        while !pairs.is_empty() {
            processed += 1;
            if processed > self.limits.max_pairs {
                return Err(GroebnerError::ResourceCap(format!("more than {} S-pairs", self.limits.max_pairs)));
            }
            let k = self.select(&pairs);
            let p = pairs.swap_remove(k);
            if self.limits.max_degree.is_some_and(|max| p.deg > max) {
                continue;
            }
            let s = self.spoly(&p);
            if s.is_empty() {
                continue;
            }
            let (r, _, _) = self.reduce(s, true, None);
            self.check_overflow()?;
            if !r.is_empty() {
                self.add_element(&mut pairs, r)?;
            }
        }
        self.finish()
    }

    fn finish(mut self) -> Result<Vec<Terms<C>>, GroebnerError> {
        let idx: Vec<usize> = (0..self.polys.len()).filter(|&k| self.active[k]).collect();
        let mut out = Vec::with_capacity(idx.len());
        for &k in &idx {
            let g = std::mem::take(&mut self.polys[k]);
            let lead = g[0].clone();
            // The leading term cannot be reduced by another active element, so only the tail changes.
            self.polys[k] = vec![lead];
            let (mut r, _, _) = self.reduce(g, true, Some(k));
            {
                let mut all: Vec<&mut C> = r.iter_mut().map(|t| &mut t.1).collect();
                C::normalize(&mut all);
            }
            self.polys[k] = r.clone();
            out.push(r);
        }
        self.check_overflow()?;
        out.sort_by(|a, b| self.cmp(&a[0].0, &b[0].0));
        Ok(out)
    }
}
