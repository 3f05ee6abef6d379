use super::dual::jacobian_dual;
use super::{Presentation, ReesError};
use crate::groebner::IdealGens;
use crate::poly::Poly;

/// `∂(g) = det[B(ψ) | ∂_x]`, expanded along the operator column:
/// `Σ_k (−1)^{k+d+1} det(B(ψ) without row k) · ∂g/∂x_k` (rows counted from 1).
pub fn apply_operator(inst: impl AsRef<Presentation>, g: &Poly) -> Result<Poly, ReesError> {
    let p = inst.as_ref();
    let b_psi = jacobian_dual(p.psi())?;
    if b_psi.cols() != p.d() {
        return Err(ReesError::Instance(format!(
            "the operator needs B(ψ) with d = {} columns, got {}",
            p.d(),
            b_psi.cols()
        )));
    }
    let rows = b_psi.rows();
    let mut acc = Poly::zero(p.ring());
    for k in 0..rows {
        let dg = g.partial_derivative(p.ring().vars().x(k));
        if dg.is_zero() {
            continue;
        }
        let cofactor = b_psi.delete_row(k).determinant()?;
        let term = &cofactor * &dg;
        // 0-based k: (−1)^{(k+1)+(d+1)} = (−1)^{k+d}
        acc = if (k + p.d()) % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}

/// `(ℓ_1, …, ℓ_d, f, ∂f, ∂²f, …, ∂^m f)`.
pub fn diffop_iterations(inst: impl AsRef<Presentation>) -> Result<IdealGens, ReesError> {
    let p = inst.as_ref();
    let m = p.m();
    let characteristic = p.ring().field().characteristic();
    if characteristic != 0 && characteristic <= m as u64 {
        return Err(ReesError::Characteristic { m, characteristic });
    }
    let mut gens = p.symmetric_ideal().into_gens();
    let mut g = p.f().clone();
    for _ in 0..m {
        g = apply_operator(p, &g)?;
        gens.push(g.clone());
    }
    Ok(IdealGens::new(p.ring(), gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::PolyMatrix;
    use crate::poly::{parse_poly, Field, Ring};
    use crate::rees::InstanceIdeal;

    fn example(field: Field) -> InstanceIdeal {
        let r = Ring::standard(field, 3, 3).unwrap();
        let rows = [["x1", "x3"], ["x2", "x1"], ["x3", "x2"]]
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(s, &r).unwrap()).collect())
            .collect();
        let psi = PolyMatrix::from_rows(&r, rows).unwrap();
        InstanceIdeal::new(parse_poly("x1^3", &r).unwrap(), psi).unwrap()
    }

    #[test]
    fn first_application_on_worked_example() {
        let inst = example(Field::Rational);
        let r = inst.ring();
        let d = apply_operator(&inst, inst.f()).unwrap();
        assert_eq!(d, parse_poly("3*x1^2*(T1*T2 - T3^2)", r).unwrap());
        assert!(apply_operator(&inst, &Poly::from_i64(r, 5)).unwrap().is_zero());
    }

    #[test]
    fn last_application_is_pure_in_t() {
        let inst = example(Field::Rational);
        let gens = diffop_iterations(&inst).unwrap();
        assert_eq!(gens.len(), 6);
        let last = gens.gens().last().unwrap();
        assert_eq!(last, &parse_poly("6*(T1*T2 - T3^2)^3", inst.ring()).unwrap());
    }

    #[test]
    fn small_characteristic_is_refused() {
        let inst = example(Field::prime(2).unwrap());
        assert!(matches!(diffop_iterations(&inst), Err(ReesError::Characteristic { m: 3, characteristic: 2 })));
        assert!(diffop_iterations(example(Field::prime(5).unwrap())).is_ok());
    }
}
