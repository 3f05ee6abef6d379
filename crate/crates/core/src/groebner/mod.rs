//! Gröbner bases and the ideal operations built on them.

mod buchberger;
mod coeff;
mod dimension;
mod ops;
mod packed;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::poly::{Field, FieldElem, Monomial, Poly, Ring, TermOrder};
use buchberger::Engine;
use coeff::{Coef, PCoef, ZCoef};

pub use dimension::max_independent_set;
pub use ops::Oracle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("ideals live in different rings")]
    RingMismatch,
    #[error("{0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Caps that turn a runaway computation into an error instead of a hang.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_basis: usize,
    pub max_pairs: usize,
    pub max_saturation_steps: usize,
    /// Skip S-pairs whose lcm has degree above this. For a homogeneous ideal the
    /// result is then a basis only up to this degree.
    pub max_degree: Option<u32>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_basis: 20_000, max_pairs: 2_000_000, max_saturation_steps: 64, max_degree: None }
    }
}

/// A finite list of generators; the empty list is the zero ideal.
#[derive(Clone, PartialEq, Eq)]
pub struct IdealGens {
    ring: Arc<Ring>,
    gens: Vec<Poly>,
}

impl IdealGens {
    pub fn new(ring: &Arc<Ring>, gens: impl IntoIterator<Item = Poly>) -> Self {
        let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        assert!(gens.iter().all(|g| g.ring() == ring), "generator from a different ring");
        IdealGens { ring: ring.clone(), gens }
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        IdealGens { ring: ring.clone(), gens: Vec::new() }
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        IdealGens { ring: ring.clone(), gens: vec![Poly::one(ring)] }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn into_gens(self) -> Vec<Poly> {
        self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn push(&mut self, p: Poly) {
        assert!(p.ring() == &self.ring, "generator from a different ring");
        if !p.is_zero() {
            self.gens.push(p);
        }
    }

    /// The ideal sum, keeping generator order.
    pub fn sum(&self, other: &IdealGens) -> IdealGens {
        let mut out = self.clone();
        for g in &other.gens {
            out.push(g.clone());
        }
        out
    }

    /// The ideal of the first `x_count` variables.
    pub fn variables(ring: &Arc<Ring>, vars: impl IntoIterator<Item = usize>) -> Self {
        IdealGens::new(ring, vars.into_iter().map(|i| Poly::var(ring, i)))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Poly::is_homogeneous)
    }
}

impl fmt::Debug for IdealGens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// A reduced Gröbner basis: monic, sorted by increasing leading term.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ideal: IdealGens,
    leads: Vec<Monomial>,
    order: TermOrder,
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &IdealGens {
        &self.ideal
    }

    pub fn gens(&self) -> &[Poly] {
        self.ideal.gens()
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    /// Leading monomials, aligned with [`GroebnerBasis::gens`].
    pub fn leads(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn is_unit(&self) -> bool {
        self.ideal.gens().iter().any(Poly::is_constant)
    }

    /// Panics if `p` or an intermediate remainder has an exponent above 127.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        assert!(p.ring() == self.ideal.ring(), "polynomial from a different ring");
        if p.is_zero() || self.ideal.is_empty() {
            return p.clone();
        }
        match self.ideal.ring().field() {
            Field::Rational => normal_form_in::<ZCoef>(self, p),
            Field::Prime(_) => normal_form_in::<PCoef>(self, p),
        }
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn contains_ideal(&self, other: &IdealGens) -> bool {
        other.gens().iter().all(|g| self.contains(g))
    }
}

fn engine_for<C: Coef>(
    ring: &Ring,
    order: &TermOrder,
    weights: &[u32],
    limits: Limits,
) -> Result<Engine<C>, GroebnerError> {
    Engine::new(ring.field(), order, weights, limits)
}

const PACKED: &str = "basis and operand fit the packed monomial range";

fn normal_form_in<C: Coef>(gb: &GroebnerBasis, p: &Poly) -> Poly {
    let ring = gb.ideal.ring();
    let weights = vec![1; ring.nvars()];
    let mut engine = engine_for::<C>(ring, &gb.order, &weights, Limits::default()).expect(PACKED);
    let basis = gb.gens().iter().map(|g| engine.import(g).expect(PACKED).0).collect();
    engine.load_basis(basis);
    let (terms, scale) = engine.import(p).expect(PACKED);
    let (r, num, den) = engine.reduce(terms, true, None);
    engine.check_overflow().expect(PACKED);
    let r = engine.export(ring, &r);
    // num/den * scale * p ≡ r
    let factor = den.to_field().div(&(&num.to_field() * &scale));
    r.scale(&factor)
}

pub(crate) fn compute_groebner(
    ideal: &IdealGens,
    order: &TermOrder,
    weights: &[u32],
    limits: Limits,
) -> Result<GroebnerBasis, GroebnerError> {
    match ideal.ring().field() {
        Field::Rational => groebner_in::<ZCoef>(ideal, order, weights, limits),
        Field::Prime(_) => groebner_in::<PCoef>(ideal, order, weights, limits),
    }
}

fn groebner_in<C: Coef>(
    ideal: &IdealGens,
    order: &TermOrder,
    weights: &[u32],
    limits: Limits,
) -> Result<GroebnerBasis, GroebnerError> {
    let ring = ideal.ring();
    assert_eq!(order.nvars(), ring.nvars(), "term order over a different number of variables");
    let engine = engine_for::<C>(ring, order, weights, limits)?;
    let gens = ideal.gens().iter().map(|g| engine.import(g).map(|t| t.0)).collect::<Result<_, _>>()?;
    let exporter = engine_for::<C>(ring, order, weights, limits)?;
    let basis = engine.run(gens)?;
    let leads: Vec<Monomial> = basis.iter().map(|b| exporter.monomial(&b[0].0)).collect();
    let gens = basis.iter().zip(&leads).map(|(b, lead)| exporter.export(ring, b).monic_by(lead));
    Ok(GroebnerBasis { ideal: IdealGens::new(ring, gens), leads, order: order.clone() })
}

trait MonicBy {
    fn monic_by(&self, lead: &Monomial) -> Poly;
}

impl MonicBy for Poly {
    /// Scales so that the coefficient of `lead` is one.
    fn monic_by(&self, lead: &Monomial) -> Poly {
        let c: &FieldElem =
            self.terms().iter().find(|(m, _)| m == lead).map(|(_, c)| c).expect("leading monomial present");
        self.scale(&c.inverse().expect("nonzero"))
    }
}
