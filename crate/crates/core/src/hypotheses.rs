//! Hypothesis checks for the iteration and random instances that pass them.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::groebner::{GroebnerError, IdealGens, Oracle};
use crate::matrix::PolyMatrix;
use crate::poly::{Field, Monomial, Poly, Ring};
use crate::rees::{InstanceIdeal, InstanceModule, Presentation};

/// One checked condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Where `n` sits relative to `d + e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    InScope,
    /// `n ≤ d`: the ideal is of linear type and `𝒜 = 𝓛`.
    LinearType,
    OutOfScope,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::InScope => "in scope",
            Scope::LinearType => "linear type",
            Scope::OutOfScope => "out of scope",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub conditions: Vec<Condition>,
    pub scope: Scope,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.conditions
            .iter()
            .filter(|c| !c.passed)
            .map(|c| match &c.witness {
                Some(w) => format!("{} ({w})", c.name),
                None => c.name.clone(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("no passing instance within {attempts} attempts from seed {seed}")]
    RetryBudget { seed: u64, attempts: usize },
    #[error("invalid parameters: {0}")]
    Parameters(String),
}

/// Height bookkeeping for the minor ideals of one presentation.
struct Heights<'a> {
    p: &'a Presentation,
    oracle: &'a Oracle,
}

impl Heights<'_> {
    fn minors(&self, k: isize) -> IdealGens {
        let ring = self.p.ring();
        if k <= 0 {
            return IdealGens::unit(ring);
        }
        IdealGens::new(ring, self.p.psi().minors(k as usize))
    }

    fn in_s(&self, k: isize) -> Result<usize, GroebnerError> {
        self.oracle.height(&self.minors(k))
    }

    /// Height of the image in `S/(f)`, computed as `ht_S(a + (f)) − 1`.
    fn in_r(&self, k: isize) -> Result<usize, GroebnerError> {
        let mut a = self.minors(k);
        a.push(self.p.f().clone());
        Ok(self.oracle.height(&a)? - 1)
    }

    fn variables_condition(&self) -> Result<Condition, GroebnerError> {
        let passed = self.oracle.ideal_equal(&self.minors(1), &self.p.x_ideal())?;
        Ok(Condition { name: "I_1(ψ) = (x)".into(), passed, witness: None })
    }
}

fn at_least(name: String, height: usize, bound: usize, label: &str) -> Condition {
    Condition { name, passed: height >= bound, witness: Some(format!("{label} = {height}")) }
}

fn scope(n: usize, target: usize) -> Scope {
    match n.cmp(&target) {
        std::cmp::Ordering::Equal => Scope::InScope,
        std::cmp::Ordering::Less => Scope::LinearType,
        std::cmp::Ordering::Greater => Scope::OutOfScope,
    }
}

/// Grade-2 perfection, `G_d` for `I`, `G_{d+1}` for `J`, `I_1(ψ) = (x)` and `n = d + 1`.
pub fn check_ideal_instance(inst: &InstanceIdeal, oracle: &Oracle) -> Result<HypothesisReport, GroebnerError> {
    let p = inst.presentation();
    let h = Heights { p, oracle };
    let n = p.n() as isize;
    let d = p.d() as isize;
    let mut conditions = Vec::new();
    let top = h.in_s(n - 1)?;
    conditions.push(at_least("ht I_{n-1}(ψ) ≥ 2".into(), top, 2, &format!("ht I_{}(ψ)", n - 1)));
    for j in 1..d {
        let ht = h.in_r(n - j)?;
        conditions.push(at_least(
            format!("G_d: ht_R I_{}(ψ) ≥ {}", n - j, j + 1),
            ht,
            (j + 1) as usize,
            &format!("ht_R I_{}(ψ)", n - j),
        ));
    }
    let low = h.in_s(n - d)?;
    conditions.push(at_least(
        format!("G_(d+1): ht I_{}(ψ) ≥ {}", n - d, d + 1),
        low,
        (d + 1) as usize,
        &format!("ht I_{}(ψ)", n - d),
    ));
    conditions.push(h.variables_condition()?);
    let scope = scope(p.n(), p.d() + 1);
    conditions.push(Condition {
        name: "n = d + 1".into(),
        passed: scope == Scope::InScope,
        witness: Some(format!("n = {}, d = {}: {scope}", p.n(), p.d())),
    });
    Ok(HypothesisReport { conditions, scope })
}

/// `G_d` for the module, `I_1(ψ) = (x)`, `n = d + e` and `d ≥ 2`.
pub fn check_module_instance(inst: &InstanceModule, oracle: &Oracle) -> Result<HypothesisReport, GroebnerError> {
    let p = inst.presentation();
    let h = Heights { p, oracle };
    let n = p.n() as isize;
    let d = p.d() as isize;
    let e = inst.e() as isize;
    let mut conditions = Vec::new();
    for j in e..=d + e - 2 {
        let ht = h.in_r(n - j)?;
        let bound = j - e + 2;
        conditions.push(at_least(
            format!("G_d: ht_R I_{}(ψ) ≥ {bound}", n - j),
            ht,
            bound as usize,
            &format!("ht_R I_{}(ψ)", n - j),
        ));
    }
    conditions.push(h.variables_condition()?);
    let scope = scope(p.n(), p.d() + inst.e());
    conditions.push(Condition {
        name: "n = d + e".into(),
        passed: scope == Scope::InScope,
        witness: Some(format!("n = {}, d = {}, e = {}: {scope}", p.n(), p.d(), inst.e())),
    });
    conditions.push(Condition { name: "d ≥ 2".into(), passed: d >= 2, witness: Some(format!("d = {d}")) });
    Ok(HypothesisReport { conditions, scope })
}

const ATTEMPTS: usize = 64;

fn coefficient(rng: &mut ChaCha8Rng, field: Field) -> crate::poly::FieldElem {
    field.from_i64(rng.gen_range(-3..=3))
}

fn random_linear_matrix(rng: &mut ChaCha8Rng, ring: &std::sync::Arc<Ring>, rows: usize, cols: usize) -> PolyMatrix {
    let x = ring.vars().x_count();
    let mut m = PolyMatrix::zeros(ring, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            let terms: Vec<_> =
                (0..x).map(|k| (Monomial::var(ring.nvars(), k), coefficient(rng, ring.field()))).collect();
            m.set(r, c, Poly::from_terms(ring, terms));
        }
    }
    m
}

fn random_form(rng: &mut ChaCha8Rng, ring: &std::sync::Arc<Ring>, degree: u32) -> Poly {
    let x = ring.vars().x_count();
    let mut terms = Vec::new();
    let mut exps = vec![0u16; ring.nvars()];
    monomials(x, degree, 0, &mut exps, &mut |e| {
        terms.push((Monomial::from_exps(e), coefficient(rng, ring.field())));
    });
    Poly::from_terms(ring, terms)
}

fn monomials(x: usize, left: u32, k: usize, exps: &mut Vec<u16>, emit: &mut dyn FnMut(&[u16])) {
    if k + 1 == x {
        exps[k] = left as u16;
        emit(exps);
        exps[k] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[k] = e as u16;
        monomials(x, left - e, k + 1, exps, emit);
    }
    exps[k] = 0;
}

/// A random `(d+1) × d` x-linear `ψ` and a random form `f` of degree `m`,
/// redrawn until [`check_ideal_instance`] passes. Deterministic in `seed`.
pub fn random_instance(
    d: usize,
    m: u32,
    seed: u64,
    field: Field,
    oracle: &Oracle,
) -> Result<InstanceIdeal, HypothesisError> {
    if d < 2 || m < 1 {
        return Err(HypothesisError::Parameters(format!("need d ≥ 2 and m ≥ 1, got d = {d}, m = {m}")));
    }
    let ring = Ring::standard(field, d + 1, d + 1).expect("nonempty blocks");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let psi = random_linear_matrix(&mut rng, &ring, d + 1, d);
        let f = random_form(&mut rng, &ring, m);
        let Ok(inst) = InstanceIdeal::new(f, psi) else { continue };
        if check_ideal_instance(&inst, oracle)?.passed() {
            return Ok(inst);
        }
    }
    Err(HypothesisError::RetryBudget { seed, attempts: ATTEMPTS })
}

/// A random rank `e` module instance with `n = d + e`, redrawn until
/// [`check_module_instance`] passes.
pub fn random_module_instance(
    d: usize,
    e: usize,
    m: u32,
    seed: u64,
    field: Field,
    oracle: &Oracle,
) -> Result<InstanceModule, HypothesisError> {
    if d < 2 || e < 1 || m < 1 {
        return Err(HypothesisError::Parameters(format!("need d ≥ 2, e ≥ 1 and m ≥ 1, got d = {d}, e = {e}, m = {m}")));
    }
    let n = d + e;
    let ring = Ring::standard(field, d + 1, n).expect("nonempty blocks");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let psi = random_linear_matrix(&mut rng, &ring, n, d);
        let f = random_form(&mut rng, &ring, m);
        let Ok(inst) = InstanceModule::new(e, f, psi) else { continue };
        if check_module_instance(&inst, oracle)?.passed() {
            return Ok(inst);
        }
    }
    Err(HypothesisError::RetryBudget { seed, attempts: ATTEMPTS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn instance(rows: &[[&str; 2]; 3], f: &str) -> InstanceIdeal {
        let r = Ring::standard(Field::Rational, 3, 3).unwrap();
        let rows = rows.iter().map(|row| row.iter().map(|s| parse_poly(s, &r).unwrap()).collect()).collect();
        InstanceIdeal::new(parse_poly(f, &r).unwrap(), PolyMatrix::from_rows(&r, rows).unwrap()).unwrap()
    }

    #[test]
    fn worked_example_passes() {
        let inst = instance(&[["x1", "x3"], ["x2", "x1"], ["x3", "x2"]], "x1^3");
        let report = check_ideal_instance(&inst, &Oracle::default()).unwrap();
        assert!(report.passed(), "{:?}", report.failures());
        assert_eq!(report.scope, Scope::InScope);
        assert_eq!(report.conditions[0].witness.as_deref(), Some("ht I_2(ψ) = 2"));
        assert_eq!(report.conditions[2].witness.as_deref(), Some("ht I_1(ψ) = 3"));
    }

    #[test]
    fn repeated_column_fails_perfection() {
        let inst = instance(&[["x1", "x1"], ["x2", "x2"], ["x3", "x3"]], "x1^3");
        let report = check_ideal_instance(&inst, &Oracle::default()).unwrap();
        assert!(!report.conditions[0].passed);
        assert!(!report.passed());
    }

    #[test]
    fn missing_variable_fails_entry_condition() {
        let inst = instance(&[["x1", "x2"], ["x2", "x1"], ["x1", "x2"]], "x1^3");
        let report = check_ideal_instance(&inst, &Oracle::default()).unwrap();
        let entry = report.conditions.iter().find(|c| c.name == "I_1(ψ) = (x)").unwrap();
        assert!(!entry.passed);
        assert!(report.failures().iter().any(|f| f.starts_with("I_1")));
    }

    #[test]
    fn random_instances_are_deterministic_and_pass() {
        let oracle = Oracle::default();
        let a = random_instance(2, 2, 7, Field::Rational, &oracle).unwrap();
        let b = random_instance(2, 2, 7, Field::Rational, &oracle).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n(), a.d() + 1);
        assert!(check_ideal_instance(&a, &oracle).unwrap().passed());
        assert!(random_instance(1, 2, 0, Field::Rational, &oracle).is_err());
    }

    #[test]
    fn random_module_instances_pass() {
        let oracle = Oracle::default();
        let inst = random_module_instance(2, 2, 2, 3, Field::Rational, &oracle).unwrap();
        assert_eq!((inst.n(), inst.e()), (4, 2));
        assert!(check_module_instance(&inst, &oracle).unwrap().passed());
    }
}
