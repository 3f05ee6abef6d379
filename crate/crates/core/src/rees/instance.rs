use std::ops::Deref;
use std::sync::Arc;

use super::ReesError;
use crate::groebner::IdealGens;
use crate::matrix::PolyMatrix;
use crate::poly::{BiDegree, BiGrade, Poly, PolyError, Ring};

/// A hypersurface `f` in `k[x_1..x_{d+1}]` together with an x-linear presentation
/// matrix `ψ` (n rows) over the ambient ring `k[x, T_1..T_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    f: Poly,
    psi: PolyMatrix,
}

impl Presentation {
    pub fn new(f: Poly, psi: PolyMatrix) -> Result<Self, ReesError> {
        let ring = psi.ring().clone();
        if f.ring() != &ring {
            return Err(PolyError::RingMismatch.into());
        }
        let vars = ring.vars();
        let n = psi.rows();
        if vars.t_count() != n {
            return Err(ReesError::Instance(format!("ψ has {n} rows but the ring has {} T variables", vars.t_count())));
        }
        if psi.cols() == 0 || psi.cols() >= n {
            return Err(ReesError::Instance(format!("ψ is {n}x{}; need 1 to {} columns", psi.cols(), n - 1)));
        }
        if vars.x_count() < 2 {
            return Err(ReesError::Instance("need at least two x variables".into()));
        }
        match f.bidegree() {
            BiGrade::Homogeneous(BiDegree { x, t: 0 })
                if x >= 1 && f.only_uses(&vars.x_range().collect::<Vec<_>>()) => {}
            _ => return Err(ReesError::Instance(format!("f = {f} is not a form of positive degree in x"))),
        }
        for r in 0..n {
            for c in 0..psi.cols() {
                let e = psi.get(r, c);
                if !e.bidegree().is_compatible_with(BiDegree::new(1, 0)) {
                    return Err(ReesError::NotLinear { row: r + 1, col: c + 1, entry: e.to_string() });
                }
            }
        }
        Ok(Presentation { f, psi })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.psi.ring()
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn psi(&self) -> &PolyMatrix {
        &self.psi
    }

    /// `d`, one less than the number of x variables.
    pub fn d(&self) -> usize {
        self.ring().vars().x_count() - 1
    }

    pub fn m(&self) -> u32 {
        self.f.total_degree().expect("f is nonzero")
    }

    /// Number of generators, the row count of `ψ`.
    pub fn n(&self) -> usize {
        self.psi.rows()
    }

    /// `n` minus the number of relations.
    pub fn rank(&self) -> usize {
        self.psi.rows() - self.psi.cols()
    }

    pub fn x_vars(&self) -> Vec<Poly> {
        self.ring().vars().x_range().map(|i| Poly::var(self.ring(), i)).collect()
    }

    pub fn t_vars(&self) -> Vec<Poly> {
        self.ring().vars().t_range().map(|i| Poly::var(self.ring(), i)).collect()
    }

    /// The entries `ℓ_j` of `[T]·ψ`.
    pub fn ell(&self) -> Vec<Poly> {
        self.psi.left_mul_row(&self.t_vars()).expect("T block matches the rows of ψ")
    }

    /// `𝓛 = (ℓ_1, …, ℓ_{n−e}, f)`.
    pub fn symmetric_ideal(&self) -> IdealGens {
        let mut gens = self.ell();
        gens.push(self.f.clone());
        IdealGens::new(self.ring(), gens)
    }

    /// `(x_1, …, x_{d+1})`.
    pub fn x_ideal(&self) -> IdealGens {
        IdealGens::new(self.ring(), self.x_vars())
    }
}

/// A presentation with `n − 1` relations, i.e. an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceIdeal(Presentation);

impl InstanceIdeal {
    pub fn new(f: Poly, psi: PolyMatrix) -> Result<Self, ReesError> {
        let p = Presentation::new(f, psi)?;
        if p.rank() != 1 {
            return Err(ReesError::Instance(format!(
                "an ideal presentation has n - 1 columns, got {} for n = {}",
                p.psi.cols(),
                p.n()
            )));
        }
        Ok(InstanceIdeal(p))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.0
    }
}

/// A presentation of a rank `e` module: `n` generators, `n − e` relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceModule(Presentation);

impl InstanceModule {
    pub fn new(e: usize, f: Poly, psi: PolyMatrix) -> Result<Self, ReesError> {
        let p = Presentation::new(f, psi)?;
        if e == 0 || p.rank() != e {
            return Err(ReesError::Instance(format!(
                "rank {e} needs n - {e} columns, got {} for n = {}",
                p.psi.cols(),
                p.n()
            )));
        }
        Ok(InstanceModule(p))
    }

    pub fn e(&self) -> usize {
        self.0.rank()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.0
    }
}

impl Deref for InstanceIdeal {
    type Target = Presentation;
    fn deref(&self) -> &Presentation {
        &self.0
    }
}

impl Deref for InstanceModule {
    type Target = Presentation;
    fn deref(&self) -> &Presentation {
        &self.0
    }
}

impl AsRef<Presentation> for InstanceIdeal {
    fn as_ref(&self) -> &Presentation {
        &self.0
    }
}

impl AsRef<Presentation> for InstanceModule {
    fn as_ref(&self) -> &Presentation {
        &self.0
    }
}

impl AsRef<Presentation> for Presentation {
    fn as_ref(&self) -> &Presentation {
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Field};

    fn ring(n: usize) -> Arc<Ring> {
        Ring::standard(Field::Rational, 3, n).unwrap()
    }

    fn mat(r: &Arc<Ring>, rows: &[&[&str]]) -> PolyMatrix {
        let rows = rows.iter().map(|row| row.iter().map(|s| parse_poly(s, r).unwrap()).collect()).collect();
        PolyMatrix::from_rows(r, rows).unwrap()
    }

    #[test]
    fn worked_example_is_valid() {
        let r = ring(3);
        let psi = mat(&r, &[&["x1", "x3"], &["x2", "x1"], &["x3", "x2"]]);
        let inst = InstanceIdeal::new(parse_poly("x1^3", &r).unwrap(), psi).unwrap();
        assert_eq!((inst.d(), inst.m(), inst.n(), inst.rank()), (2, 3, 3, 1));
        assert_eq!(inst.ell()[0], parse_poly("x1*T1 + x2*T2 + x3*T3", &r).unwrap());
        assert_eq!(inst.symmetric_ideal().len(), 3);
    }

    #[test]
    fn rejects_bad_shapes_and_entries() {
        let r = ring(3);
        let f = parse_poly("x1^3", &r).unwrap();
        let nonlinear = mat(&r, &[&["x1^2", "x3"], &["x2", "x1"], &["x3", "x2"]]);
        assert!(matches!(InstanceIdeal::new(f.clone(), nonlinear), Err(ReesError::NotLinear { row: 1, col: 1, .. })));
        let wide = mat(&r, &[&["x1"], &["x2"], &["x3"]]);
        assert!(InstanceIdeal::new(f.clone(), wide.clone()).is_err());
        assert!(InstanceModule::new(2, f.clone(), wide).is_ok());
        let psi = mat(&r, &[&["x1", "x3"], &["x2", "x1"], &["x3", "x2"]]);
        assert!(InstanceIdeal::new(parse_poly("x1*T1", &r).unwrap(), psi.clone()).is_err());
        assert!(InstanceIdeal::new(parse_poly("x1^2 + x2", &r).unwrap(), psi).is_err());
    }
}
