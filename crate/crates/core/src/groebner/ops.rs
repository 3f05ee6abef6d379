use super::{compute_groebner, max_independent_set, GroebnerBasis, GroebnerError, IdealGens, Limits};
use crate::poly::{OrderKind, Poly, TermOrder};

/// Ideal-theoretic operations over a polynomial ring, all via Buchberger's algorithm.
#[derive(Clone, Copy, Debug, Default)]
pub struct Oracle {
    pub limits: Limits,
}

fn same_ring(a: &IdealGens, b: &IdealGens) -> Result<(), GroebnerError> {
    if a.ring() == b.ring() {
        Ok(())
    } else {
        Err(GroebnerError::RingMismatch)
    }
}

impl Oracle {
    pub fn new(limits: Limits) -> Self {
        Oracle { limits }
    }

    pub fn groebner(&self, ideal: &IdealGens, order: &TermOrder) -> Result<GroebnerBasis, GroebnerError> {
        compute_groebner(ideal, order, &vec![1; ideal.ring().nvars()], self.limits)
    }

    pub fn grevlex(&self, ideal: &IdealGens) -> Result<GroebnerBasis, GroebnerError> {
        self.groebner(ideal, &TermOrder::grevlex(ideal.ring().nvars()))
    }

    pub fn contains(&self, ideal: &IdealGens, p: &Poly) -> Result<bool, GroebnerError> {
        Ok(self.grevlex(ideal)?.contains(p))
    }

    /// Membership through a basis truncated at `deg p` when both `ideal` and `p`
    /// are homogeneous; plain [`Oracle::contains`] otherwise.
    pub fn contains_graded(&self, ideal: &IdealGens, p: &Poly) -> Result<bool, GroebnerError> {
        if !ideal.is_homogeneous() || !p.is_homogeneous() {
            return self.contains(ideal, p);
        }
        let Some(deg) = p.total_degree() else { return Ok(true) };
        let n = ideal.ring().nvars();
        let limits = Limits { max_degree: Some(deg), ..self.limits };
        Ok(compute_groebner(ideal, &TermOrder::grevlex(n), &vec![1; n], limits)?.contains(p))
    }

    pub fn ideal_equal(&self, a: &IdealGens, b: &IdealGens) -> Result<bool, GroebnerError> {
        same_ring(a, b)?;
        if !self.grevlex(a)?.contains_ideal(b) {
            return Ok(false);
        }
        Ok(self.grevlex(b)?.contains_ideal(a))
    }

    /// Generators of `a ∩ k[keep]`.
    pub fn eliminate(&self, a: &IdealGens, keep: &[usize]) -> Result<IdealGens, GroebnerError> {
        let n = a.ring().nvars();
        let drop: Vec<usize> = (0..n).filter(|v| !keep.contains(v)).collect();
        if drop.is_empty() {
            return Ok(a.clone());
        }
        let gb = self.groebner(a, &TermOrder::elimination(n, &drop))?;
        Ok(IdealGens::new(a.ring(), gb.gens().iter().filter(|g| g.only_uses(keep)).cloned()))
    }

    pub fn intersect(&self, a: &IdealGens, b: &IdealGens) -> Result<IdealGens, GroebnerError> {
        same_ring(a, b)?;
        if a.is_empty() || b.is_empty() {
            return Ok(IdealGens::zero(a.ring()));
        }
        let ring = a.ring();
        let big = ring.with_aux("_t");
        let n = ring.nvars();
        let t = n;
        let embed: Vec<usize> = (0..n).collect();
        let tp = Poly::var(&big, t);
        let one_minus_t = &Poly::one(&big) - &tp;
        let mut gens = Vec::with_capacity(a.len() + b.len());
        for g in a.gens() {
            gens.push(&tp * &g.remap(&big, &embed));
        }
        for g in b.gens() {
            gens.push(&one_minus_t * &g.remap(&big, &embed));
        }
        let lifted = IdealGens::new(&big, gens);
        // t gets weight zero so that pair selection sees the ideal as graded.
        let mut weights = vec![1; n + 1];
        weights[t] = 0;
        let order = TermOrder::elimination(n + 1, &[t]);
        let gb = compute_groebner(&lifted, &order, &weights, self.limits)?;
        let back: Vec<usize> = (0..=n).map(|i| i.min(n - 1)).collect();
        let out = gb.gens().iter().filter(|g| g.only_uses(&embed)).map(|g| g.remap(ring, &back));
        Ok(IdealGens::new(ring, out))
    }

    /// `a : g`, computed as `(a ∩ (g)) / g`.
    pub fn colon(&self, a: &IdealGens, g: &Poly) -> Result<IdealGens, GroebnerError> {
        if g.is_zero() {
            return Err(GroebnerError::Precondition("colon by the zero polynomial".into()));
        }
        if g.ring() != a.ring() {
            return Err(GroebnerError::RingMismatch);
        }
        let meet = self.intersect(a, &IdealGens::new(a.ring(), [g.clone()]))?;
        let mut out = Vec::with_capacity(meet.len());
        for h in meet.gens() {
            let q = h
                .div_exact(g)
                .ok_or_else(|| GroebnerError::Internal(format!("{h} in the intersection is not divisible by {g}")))?;
            out.push(q);
        }
        Ok(IdealGens::new(a.ring(), out))
    }

    /// `a : x_v` for a homogeneous ideal, read off a grevlex basis with `x_v` last.
    pub fn colon_by_variable(&self, a: &IdealGens, v: usize) -> Result<IdealGens, GroebnerError> {
        if !a.is_homogeneous() {
            return Err(GroebnerError::Precondition("colon_by_variable needs a homogeneous ideal".into()));
        }
        let n = a.ring().nvars();
        let mut perm: Vec<usize> = (0..n).filter(|&i| i != v).collect();
        perm.push(v);
        let gb = self.groebner(a, &TermOrder::new(OrderKind::Grevlex, perm))?;
        let xv = Poly::var(a.ring(), v);
        let out = gb.gens().iter().map(|g| g.div_exact(&xv).unwrap_or_else(|| g.clone()));
        Ok(IdealGens::new(a.ring(), out))
    }

    /// `a : b`, the intersection of `a : g` over the generators `g` of `b`.
    ///
    /// Colons by a single variable of a homogeneous ideal take the grevlex shortcut;
    /// everything else goes through intersections.
    pub fn colon_ideal(&self, a: &IdealGens, b: &IdealGens) -> Result<IdealGens, GroebnerError> {
        same_ring(a, b)?;
        if b.is_empty() {
            return Err(GroebnerError::Precondition("colon by the zero ideal".into()));
        }
        let homogeneous = a.is_homogeneous();
        let mut acc: Option<IdealGens> = None;
        for g in b.gens() {
            let c = match single_variable(g) {
                Some(v) if homogeneous => self.colon_by_variable(a, v)?,
                _ => self.colon(a, g)?,
            };
            acc = Some(match acc {
                None => c,
                Some(prev) => self.intersect(&prev, &c)?,
            });
        }
        Ok(acc.expect("at least one generator"))
    }

    /// `a : b^∞` and the least `i` with `a : b^i = a : b^{i+1}`.
    pub fn saturate(&self, a: &IdealGens, b: &IdealGens) -> Result<(IdealGens, usize), GroebnerError> {
        let chain = self.colon_chain(a, b, None)?;
        let index = chain.len() - 1;
        Ok((chain.into_iter().last().expect("nonempty chain"), index))
    }

    /// The chain `a, a : b, a : b^2, …` up to the first repetition (exclusive),
    /// or up to `a : b^max` when `max` is given.
    pub fn colon_chain(
        &self,
        a: &IdealGens,
        b: &IdealGens,
        max: Option<usize>,
    ) -> Result<Vec<IdealGens>, GroebnerError> {
        let mut chain = vec![a.clone()];
        loop {
            let i = chain.len() - 1;
            if Some(i) == max {
                return Ok(chain);
            }
            if i >= self.limits.max_saturation_steps {
                return Err(GroebnerError::ResourceCap(format!("saturation did not stabilize within {i} steps")));
            }
            let cur = chain.last().expect("nonempty");
            let next = self.colon_ideal(cur, b)?;
            // cur ⊆ next always holds, so one inclusion decides equality.
            if self.grevlex(cur)?.contains_ideal(&next) {
                if max.is_some() {
                    chain.push(next);
                    continue;
                }
                return Ok(chain);
            }
            chain.push(next);
        }
    }

    /// Krull dimension of `k[vars]/a`; -1 for the unit ideal.
    pub fn dimension(&self, a: &IdealGens) -> Result<i64, GroebnerError> {
        let n = a.ring().nvars();
        assert!(n <= 64, "dimension supports at most 64 variables");
        if a.is_empty() {
            return Ok(n as i64);
        }
        let gb = self.grevlex(a)?;
        if gb.is_unit() {
            return Ok(-1);
        }
        let supports: Vec<u64> = gb.leads().iter().map(|m| m.support_mask()).collect();
        Ok(max_independent_set(n, &supports) as i64)
    }

    /// Height in the polynomial ring; the unit ideal reports the variable count.
    pub fn height(&self, a: &IdealGens) -> Result<usize, GroebnerError> {
        let n = a.ring().nvars() as i64;
        let dim = self.dimension(a)?;
        Ok(if dim < 0 { n as usize } else { (n - dim) as usize })
    }
}

fn single_variable(g: &Poly) -> Option<usize> {
    if g.len() != 1 {
        return None;
    }
    let (m, _) = &g.terms()[0];
    if m.degree() != 1 {
        return None;
    }
    m.exps().iter().position(|&e| e == 1)
}
