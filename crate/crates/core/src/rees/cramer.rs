use super::ReesError;
use crate::groebner::{IdealGens, Oracle};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;

/// Checks `a_t·m_k − (−1)^{t−k}·a_k·m_t ∈ ([a]·M)` for all `t, k`, where `M` is
/// `r × (r−1)` and `m_t` is the minor of `M` with row `t` deleted.
pub fn cramer_check(a: &[Poly], m: &PolyMatrix, oracle: &Oracle) -> Result<bool, ReesError> {
    let r = a.len();
    if r == 0 || m.rows() != r || m.cols() + 1 != r {
        return Err(ReesError::Instance(format!(
            "need a row of length r and an r x (r-1) matrix, got {} and {}x{}",
            r,
            m.rows(),
            m.cols()
        )));
    }
    let ring = m.ring();
    let minors: Vec<Poly> = (0..r).map(|t| m.delete_row(t).determinant()).collect::<Result<_, _>>()?;
    let relations = IdealGens::new(ring, m.left_mul_row(a)?);
    let gb = oracle.grevlex(&relations)?;
    for t in 0..r {
        for k in 0..r {
            let lhs = &a[t] * &minors[k];
            let rhs = &a[k] * &minors[t];
            let diff = if (t + k) % 2 == 0 { &lhs - &rhs } else { &lhs + &rhs };
            if !gb.contains(&diff) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::poly::{parse_poly, Field, Ring};

    #[test]
    fn two_by_one() {
        let r = Ring::standard(Field::Rational, 2, 2).unwrap();
        let a = [parse_poly("x1", &r).unwrap(), parse_poly("x2", &r).unwrap()];
        let m = PolyMatrix::from_rows(&r, vec![vec![Poly::var(&r, 2)], vec![Poly::var(&r, 3)]]).unwrap();
        assert!(cramer_check(&a, &m, &Oracle::default()).unwrap());
    }

    #[test]
    fn a_false_identity_is_caught() {
        // Flipping the sign convention must break the check on a generic input.
        let r = Ring::standard(Field::Rational, 2, 2).unwrap();
        let a = [parse_poly("x1", &r).unwrap(), parse_poly("x2", &r).unwrap()];
        let m = PolyMatrix::from_rows(&r, vec![vec![Poly::var(&r, 2)], vec![Poly::var(&r, 3)]]).unwrap();
        let relations = IdealGens::new(&r, m.left_mul_row(&a).unwrap());
        let wrong = &(&a[0] * &Poly::var(&r, 2)) - &(&a[1] * &Poly::var(&r, 3));
        assert!(!Oracle::default().contains(&relations, &wrong).unwrap());
    }

    #[test]
    fn shape_is_checked() {
        let r = Ring::standard(Field::Rational, 2, 2).unwrap();
        let a = [Poly::var(&r, 0)];
        let m = PolyMatrix::zeros(&r, 2, 1);
        assert!(cramer_check(&a, &m, &Oracle::default()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn holds_for_random_three_by_two(coeffs in prop::collection::vec(-5i64..=5, 9)) {
            let r = Ring::standard(Field::prime(101).unwrap(), 3, 3).unwrap();
            let lin = |c: &[i64]| {
                let mut p = Poly::zero(&r);
                for (k, &ck) in c.iter().enumerate() {
                    p = &p + &Poly::var(&r, 3 + k).scale(&r.field().from_i64(ck));
                }
                p
            };
            let a: Vec<Poly> = (0..3).map(|i| Poly::var(&r, i)).collect();
            let m = PolyMatrix::from_rows(&r, vec![
                vec![lin(&coeffs[0..3]), lin(&coeffs[3..6])],
                vec![lin(&coeffs[6..9]), lin(&coeffs[0..3])],
                vec![lin(&coeffs[3..6]), lin(&coeffs[6..9])],
            ]).unwrap();
            prop_assert!(cramer_check(&a, &m, &Oracle::default()).unwrap());
        }
    }
}
