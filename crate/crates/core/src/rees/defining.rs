use super::dual::PartialMode;
use super::iterate::{mjd_iterations, IterationState};
use super::{InstanceIdeal, Presentation, ReesError};
use crate::groebner::{IdealGens, Oracle};
use crate::hypotheses::check_ideal_instance;
use crate::poly::{BiGrade, Poly};

/// Generators `ℓ_1, …, ℓ_{n−e}, f, F_1, …, F_m` of the defining ideal `𝒜`.
#[derive(Clone, Debug)]
pub struct DefiningIdeal {
    generators: IdealGens,
    relations: usize,
    states: Vec<IterationState>,
}

impl DefiningIdeal {
    pub fn generators(&self) -> &IdealGens {
        &self.generators
    }

    /// The generators other than `f`, which generate `𝒥` modulo `(f)`.
    pub fn j_description(&self) -> Vec<Poly> {
        let gens = self.generators.gens();
        gens[..self.relations].iter().chain(&gens[self.relations + 1..]).cloned().collect()
    }

    pub fn states(&self) -> &[IterationState] {
        &self.states
    }

    /// The iteration determinants `F_1, …, F_m`.
    pub fn determinants(&self) -> &[Poly] {
        &self.generators.gens()[self.relations + 1..]
    }

    pub fn fiber(&self) -> Result<(Poly, u32), ReesError> {
        special_fiber(&self.generators)
    }
}

/// Runs the iteration without checking hypotheses.
pub fn run_defining_ideal(inst: impl AsRef<Presentation>, mode: PartialMode) -> Result<DefiningIdeal, ReesError> {
    let p = inst.as_ref();
    let states = mjd_iterations(p, mode)?;
    let generators = states.last().expect("m ≥ 1").result_ideal();
    Ok(DefiningIdeal { generators, relations: p.psi().cols(), states })
}

/// `𝒜 = 𝓛_m + (det 𝔅_m)` for an instance passing the hypotheses.
pub fn defining_ideal(inst: &InstanceIdeal, mode: PartialMode, oracle: &Oracle) -> Result<DefiningIdeal, ReesError> {
    let report = check_ideal_instance(inst, oracle)?;
    if !report.passed() {
        return Err(ReesError::Hypothesis(report.failures().join("; ")));
    }
    run_defining_ideal(inst, mode)
}

/// The single generator free of x, and its T-degree.
pub fn special_fiber(a: &IdealGens) -> Result<(Poly, u32), ReesError> {
    let pure: Vec<&Poly> =
        a.gens().iter().filter(|g| matches!(g.bidegree(), BiGrade::Homogeneous(d) if d.x == 0)).collect();
    match pure.as_slice() {
        [g] => {
            let deg = g.bidegree().degree().expect("homogeneous").t;
            Ok(((*g).clone(), deg))
        }
        other => Err(ReesError::Fiber(other.len())),
    }
}

/// `A ∩ k[T]`, by elimination of the x-block.
pub fn fiber_by_elimination(a: &IdealGens, oracle: &Oracle) -> Result<IdealGens, ReesError> {
    let keep: Vec<usize> = a.ring().vars().t_range().collect();
    Ok(oracle.eliminate(a, &keep)?)
}

/// `N = Σ (deg − 1) + 1` over the `n_vars` largest degrees.
pub fn saturation_index_bound(degrees: &[u32], n_vars: usize) -> Result<u32, ReesError> {
    if degrees.len() < n_vars {
        return Err(ReesError::Instance(format!("{} degrees for {n_vars} variables", degrees.len())));
    }
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    Ok(sorted[..n_vars].iter().map(|&d| d.saturating_sub(1)).sum::<u32>() + 1)
}

/// True when no generator lies in the ideal of the others. Bihomogeneous input
/// only needs bases up to each generator's degree.
pub fn is_minimal_generating_set(gens: &IdealGens, oracle: &Oracle) -> Result<bool, ReesError> {
    for i in 0..gens.len() {
        let others = IdealGens::new(
            gens.ring(),
            gens.gens().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()),
        );
        if oracle.contains_graded(&others, &gens.gens()[i])? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::PolyMatrix;
    use crate::poly::{parse_poly, Field, Ring};

    fn example(f: &str) -> InstanceIdeal {
        let r = Ring::standard(Field::Rational, 3, 3).unwrap();
        let rows = [["x1", "x3"], ["x2", "x1"], ["x3", "x2"]]
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(s, &r).unwrap()).collect())
            .collect();
        InstanceIdeal::new(parse_poly(f, &r).unwrap(), PolyMatrix::from_rows(&r, rows).unwrap()).unwrap()
    }

    #[test]
    fn worked_example_generators() {
        let inst = example("x1^3");
        let oracle = Oracle::default();
        let a = defining_ideal(&inst, PartialMode::Greedy, &oracle).unwrap();
        assert_eq!(a.generators().len(), 6);
        assert_eq!(a.j_description().len(), 5);
        assert!(!a.j_description().contains(inst.f()));
        let (fiber, deg) = a.fiber().unwrap();
        assert_eq!(fiber, parse_poly("(T1*T2 - T3^2)^3", inst.ring()).unwrap());
        assert_eq!(deg, 6);
        let (sat, index) = oracle.saturate(&inst.symmetric_ideal(), &inst.x_ideal()).unwrap();
        assert_eq!(index, 3);
        assert!(oracle.ideal_equal(&sat, a.generators()).unwrap());
        assert!(is_minimal_generating_set(a.generators(), &oracle).unwrap());
    }

    #[test]
    fn linear_case_fiber() {
        let inst = example("x3");
        let a = run_defining_ideal(&inst, PartialMode::Greedy).unwrap();
        assert_eq!(a.generators().len(), 4);
        assert_eq!(a.fiber().unwrap(), (parse_poly("T1*T3 - T2^2", inst.ring()).unwrap(), 2));
    }

    #[test]
    fn index_bounds() {
        assert_eq!(saturation_index_bound(&[1, 1, 3], 3).unwrap(), 3);
        assert_eq!(saturation_index_bound(&[1, 1, 1, 1], 3).unwrap(), 1);
        assert_eq!(saturation_index_bound(&[2, 3], 2).unwrap(), 4);
        assert!(saturation_index_bound(&[2], 2).is_err());
    }

    #[test]
    fn fiber_needs_a_unique_pure_generator() {
        let inst = example("x1^3");
        assert!(matches!(special_fiber(&inst.symmetric_ideal()), Err(ReesError::Fiber(0))));
    }
}
