use proptest::prelude::*;
use reesdual_core::bourbaki::bourbaki_reduce;
use reesdual_core::groebner::Oracle;
use reesdual_core::hypotheses::random_instance;
use reesdual_core::poly::{BiDegree, BiGrade, Field, Poly};
use reesdual_core::rees::{
    jacobian_dual, matrix_iterations, mjd_iterations, partial_column, run_defining_ideal, InstanceIdeal,
    InstanceModule, PartialMode,
};

fn instance(d: usize, m: u32, seed: u64, field: Field) -> InstanceIdeal {
    random_instance(d, m, seed, field, &Oracle::default()).unwrap()
}

fn dot(a: &[Poly], b: &[Poly]) -> Poly {
    let ring = a[0].ring().clone();
    a.iter().zip(b).fold(Poly::zero(&ring), |acc, (x, y)| &acc + &(x * y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn jacobian_dual_identity(d in 2usize..=3, m in 1u32..=3, seed in 0u64..50) {
        let inst = instance(d, m, seed, Field::Rational);
        let b = jacobian_dual(inst.psi()).unwrap();
        let lhs = b.left_mul_row(&inst.x_vars()).unwrap();
        let rhs = inst.psi().left_mul_row(&inst.t_vars()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_columns_recover_the_form(d in 2usize..=3, m in 1u32..=3, seed in 0u64..50) {
        let inst = instance(d, m, seed, Field::Rational);
        let x = inst.x_vars();
        for mode in [PartialMode::Greedy, PartialMode::Euler] {
            let col = partial_column(inst.f(), mode).unwrap();
            prop_assert_eq!(&dot(&x, &col.column(0)), inst.f());
        }
    }

    #[test]
    fn determinant_bidegrees(d in 2usize..=3, m in 1u32..=3, seed in 0u64..50) {
        let inst = instance(d, m, seed, Field::prime(32003).unwrap());
        let states = mjd_iterations(&inst, PartialMode::Greedy).unwrap();
        prop_assert_eq!(states.len(), m as usize);
        for s in &states {
            let i = s.step() as u32;
            let expected = BiGrade::Homogeneous(BiDegree::new(m - i, i * d as u32));
            prop_assert_eq!(s.det().unwrap().bidegree(), expected);
        }
    }
}

#[test]
fn greedy_and_euler_agree() {
    let oracle = Oracle::default();
    for (d, m, seed) in [(2, 2, 0), (2, 3, 1), (3, 2, 2)] {
        let inst = instance(d, m, seed, Field::Rational);
        let a = run_defining_ideal(&inst, PartialMode::Greedy).unwrap();
        let b = run_defining_ideal(&inst, PartialMode::Euler).unwrap();
        assert!(oracle.ideal_equal(a.generators(), b.generators()).unwrap(), "d={d} m={m} seed={seed}");
    }
}

#[test]
fn rank_one_module_matches_the_ideal() {
    let inst = instance(2, 3, 4, Field::Rational);
    let module = InstanceModule::new(1, inst.f().clone(), inst.psi().clone()).unwrap();
    let a = run_defining_ideal(&inst, PartialMode::Greedy).unwrap();
    let b = run_defining_ideal(&module, PartialMode::Greedy).unwrap();
    assert_eq!(a.generators(), b.generators());
    let red = bourbaki_reduce(&module, 9, &Oracle::default()).unwrap();
    assert!(red.y_forms().is_empty());
    assert_eq!(red.ideal().psi().rows(), inst.psi().rows());
}

#[test]
fn results_are_deterministic() {
    let a = instance(3, 2, 5, Field::Rational);
    let b = instance(3, 2, 5, Field::Rational);
    assert_eq!(a, b);
    let ga = run_defining_ideal(&a, PartialMode::Greedy).unwrap();
    let gb = run_defining_ideal(&b, PartialMode::Greedy).unwrap();
    assert_eq!(ga.generators(), gb.generators());
}

#[test]
fn pruned_matrix_iteration_matches_full() {
    let oracle = Oracle::default();
    for seed in 0..3 {
        let inst = instance(2, 2, seed, Field::Rational);
        let (_, full) = matrix_iterations(&inst, 2, PartialMode::Greedy, None).unwrap();
        let (_, pruned) = matrix_iterations(&inst, 2, PartialMode::Greedy, Some(&oracle)).unwrap();
        assert!(oracle.ideal_equal(&full, &pruned).unwrap());
        let a = run_defining_ideal(&inst, PartialMode::Greedy).unwrap();
        assert!(oracle.ideal_equal(&full, a.generators()).unwrap());
    }
}
