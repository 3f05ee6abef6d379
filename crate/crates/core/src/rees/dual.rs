use super::{Presentation, ReesError};
use crate::groebner::IdealGens;
use crate::matrix::PolyMatrix;
use crate::poly::{BiDegree, BiGrade, Poly};

/// How to write a form `F ∈ (x)` as `[x]·P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PartialMode {
    /// Each term goes to the first x variable dividing it.
    #[default]
    Greedy,
    /// `P_k = (1/a)·∂F/∂x_k` with `a` the x-degree of `F`.
    Euler,
}

/// The `(d+1) × (n−1)` matrix `B(ψ)` over `k[T]` with `[x]·B(ψ) = [T]·ψ`.
pub fn jacobian_dual(psi: &PolyMatrix) -> Result<PolyMatrix, ReesError> {
    let ring = psi.ring();
    let vars = ring.vars();
    if psi.rows() > vars.t_count() {
        return Err(ReesError::Instance(format!("ψ has {} rows but only {} T variables", psi.rows(), vars.t_count())));
    }
    let mut out = PolyMatrix::zeros(ring, vars.x_count(), psi.cols());
    for i in 0..psi.rows() {
        let ti = Poly::var(ring, vars.t(i));
        for j in 0..psi.cols() {
            let entry = psi.get(i, j);
            for (mono, c) in entry.terms() {
                let k = vars.x_range().find(|&k| mono.get(k) == 1).filter(|_| mono.degree() == 1);
                let Some(k) = k else {
                    return Err(ReesError::NotLinear { row: i + 1, col: j + 1, entry: entry.to_string() });
                };
                let updated = out.get(k, j) + &ti.scale(c);
                out.set(k, j, updated);
            }
        }
    }
    for j in 0..out.cols() {
        out.declare_column_degree(j, BiDegree::new(0, 1))?;
    }
    Ok(out)
}

/// A column `P` with `[x]·P = F`, for `F` bihomogeneous of positive x-degree.
pub fn partial_column(f: &Poly, mode: PartialMode) -> Result<PolyMatrix, ReesError> {
    let ring = f.ring();
    let vars = ring.vars();
    let deg = match f.bidegree() {
        BiGrade::Homogeneous(d) if d.x > 0 => d,
        _ => return Err(ReesError::NotInVariableIdeal(f.to_string())),
    };
    let rows = vars.x_count();
    let column: Vec<Poly> = match mode {
        PartialMode::Greedy => {
            let mut buckets = vec![Vec::new(); rows];
            for (mono, c) in f.terms() {
                let k = vars.x_range().find(|&k| mono.get(k) > 0).expect("positive x-degree");
                let mut q = mono.clone();
                q.set(k, mono.get(k) - 1);
                buckets[k].push((q, c.clone()));
            }
            buckets.into_iter().map(|b| Poly::from_terms(ring, b)).collect()
        }
        PartialMode::Euler => {
            let field = ring.field();
            let a = field.from_i64(deg.x as i64);
            let inv = a
                .inverse()
                .ok_or(ReesError::DegreeNotInvertible { degree: deg.x, characteristic: field.characteristic() })?;
            vars.x_range().map(|k| f.partial_derivative(k).scale(&inv)).collect()
        }
    };
    let mut out = PolyMatrix::from_columns(ring, rows, vec![column])?;
    out.declare_column_degree(0, BiDegree::new(deg.x - 1, deg.t))?;
    Ok(out)
}

/// `B = [B(ψ) | ∂f]` and `𝓛`, the ideal of the entries of `[x]·B`.
pub fn modified_jacobian_dual(
    inst: impl AsRef<Presentation>,
    mode: PartialMode,
) -> Result<(PolyMatrix, IdealGens), ReesError> {
    let p = inst.as_ref();
    let b = jacobian_dual(p.psi())?.hcat(&partial_column(p.f(), mode)?)?;
    Ok((b, p.symmetric_ideal()))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::poly::{parse_poly, Field, Ring};

    fn ring() -> Arc<Ring> {
        Ring::standard(Field::Rational, 3, 3).unwrap()
    }

    fn mat(r: &Arc<Ring>, rows: &[&[&str]]) -> PolyMatrix {
        let rows = rows.iter().map(|row| row.iter().map(|s| parse_poly(s, r).unwrap()).collect()).collect();
        PolyMatrix::from_rows(r, rows).unwrap()
    }

    fn col(r: &Arc<Ring>, entries: &[&str]) -> PolyMatrix {
        mat(r, &entries.iter().map(std::slice::from_ref).collect::<Vec<_>>())
    }

    #[test]
    fn worked_example_dual() {
        let r = ring();
        let psi = mat(&r, &[&["x1", "x3"], &["x2", "x1"], &["x3", "x2"]]);
        let b = jacobian_dual(&psi).unwrap();
        assert_eq!(b, mat(&r, &[&["T1", "T2"], &["T2", "T3"], &["T3", "T1"]]));
        assert_eq!(b.column_degree(1), Some(BiDegree::new(0, 1)));
    }

    #[test]
    fn trivial_duals() {
        let r = ring();
        let zero = PolyMatrix::zeros(&r, 3, 2);
        assert!(jacobian_dual(&zero).unwrap().is_zero());
        let single = mat(&r, &[&["x1"], &["0"], &["0"]]);
        assert_eq!(jacobian_dual(&single).unwrap(), col(&r, &["T1", "0", "0"]));
        let bad = mat(&r, &[&["x1*x2"], &["0"], &["0"]]);
        assert!(matches!(jacobian_dual(&bad), Err(ReesError::NotLinear { .. })));
    }

    #[test]
    fn partial_columns() {
        let r = ring();
        let cube = parse_poly("x1^3", &r).unwrap();
        for mode in [PartialMode::Greedy, PartialMode::Euler] {
            assert_eq!(partial_column(&cube, mode).unwrap(), col(&r, &["x1^2", "0", "0"]));
        }
        let f = parse_poly("x1*(T1*T2 - T3^2)^2", &r).unwrap();
        let p = partial_column(&f, PartialMode::Greedy).unwrap();
        assert_eq!(p, col(&r, &["(T1*T2 - T3^2)^2", "0", "0"]));
        assert_eq!(p.column_degree(0), Some(BiDegree::new(0, 4)));
        let lin = parse_poly("x1*T1 + x2*T2", &r).unwrap();
        assert_eq!(partial_column(&lin, PartialMode::Euler).unwrap(), col(&r, &["T1", "T2", "0"]));
        assert!(partial_column(&parse_poly("T1", &r).unwrap(), PartialMode::Greedy).is_err());
        assert!(partial_column(&parse_poly("x1 + T1", &r).unwrap(), PartialMode::Greedy).is_err());
    }

    #[test]
    fn euler_needs_an_invertible_degree() {
        let r = Ring::standard(Field::prime(3).unwrap(), 3, 3).unwrap();
        let f = parse_poly("x1^3 + x2^2*x3", &r).unwrap();
        assert!(matches!(
            partial_column(&f, PartialMode::Euler),
            Err(ReesError::DegreeNotInvertible { degree: 3, characteristic: 3 })
        ));
        assert!(partial_column(&f, PartialMode::Greedy).is_ok());
    }

    #[test]
    fn modified_dual_of_worked_example() {
        let r = ring();
        let psi = mat(&r, &[&["x1", "x3"], &["x2", "x1"], &["x3", "x2"]]);
        let inst = super::super::InstanceIdeal::new(parse_poly("x1^3", &r).unwrap(), psi).unwrap();
        let (b, l) = modified_jacobian_dual(&inst, PartialMode::Greedy).unwrap();
        assert_eq!(b, mat(&r, &[&["T1", "T2", "x1^2"], &["T2", "T3", "0"], &["T3", "T1", "0"]]));
        assert!(l.gens().contains(inst.f()));
        let x = inst.x_vars();
        let lhs = b.left_mul_row(&x).unwrap();
        assert_eq!(&lhs[..2], &inst.ell()[..]);
        assert_eq!(&lhs[2], inst.f());
    }

    #[test]
    fn linear_f_gives_a_unit_column() {
        let r = ring();
        let p = partial_column(&parse_poly("x3", &r).unwrap(), PartialMode::Greedy).unwrap();
        assert_eq!(p, col(&r, &["0", "0", "1"]));
    }
}
