//! Reduction of a module instance to an ideal instance through a Bourbaki ideal,
//! with the generic coefficients replaced by a seeded random choice.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::groebner::{IdealGens, Oracle};
use crate::hypotheses::{check_ideal_instance, check_module_instance};
use crate::matrix::PolyMatrix;
use crate::poly::{FieldElem, Poly, Ring};
use crate::rees::{run_defining_ideal, DefiningIdeal, InstanceIdeal, InstanceModule, PartialMode, ReesError};

const ATTEMPTS: usize = 32;

/// The generators `y_j = Σ_i Z_ij a_i` (j < e) together with `a_e, …, a_n`, and the
/// ideal presented by the bottom `n − e + 1` rows of the transformed `ψ`.
#[derive(Clone, Debug)]
pub struct BourbakiReduction {
    seed: u64,
    z: Vec<Vec<FieldElem>>,
    ideal: InstanceIdeal,
    y_forms: Vec<Poly>,
    embedding: Vec<usize>,
}

impl BourbakiReduction {
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The `n × (e−1)` coefficient matrix `Z`, row-major.
    pub fn z(&self) -> &[Vec<FieldElem>] {
        &self.z
    }

    /// The ideal instance, over `k[x, T_1..T_{n−e+1}]`.
    pub fn ideal(&self) -> &InstanceIdeal {
        &self.ideal
    }

    /// `Y_j = Σ_i Z_ij T_i` in the module's ring.
    pub fn y_forms(&self) -> &[Poly] {
        &self.y_forms
    }

    /// Moves a polynomial of the ideal's ring into the module's ring, sending
    /// `T_k` to `T_{k+e−1}`.
    pub fn embed(&self, p: &Poly, module_ring: &Arc<Ring>) -> Poly {
        p.remap(module_ring, &self.embedding)
    }
}

pub fn bourbaki_reduce(inst: &InstanceModule, seed: u64, oracle: &Oracle) -> Result<BourbakiReduction, ReesError> {
    let ring = inst.ring().clone();
    let e = inst.e();
    let n = inst.n();
    let x = ring.vars().x_count();
    let ideal_ring = Ring::standard(ring.field(), x, n - e + 1)?;
    let embedding: Vec<usize> = (0..ideal_ring.nvars()).map(|i| if i < x { i } else { i + e - 1 }).collect();
    // Inverse direction for ψ and f, whose entries only involve x.
    let restrict: Vec<usize> = (0..ring.nvars()).map(|i| i.min(x)).collect();
    let f_i = inst.f().remap(&ideal_ring, &restrict);
    if e == 1 {
        let psi = restrict_matrix(inst.psi(), &ideal_ring, &restrict);
        let ideal = InstanceIdeal::new(f_i, psi)?;
        return Ok(BourbakiReduction { seed, z: Vec::new(), ideal, y_forms: Vec::new(), embedding });
    }
    let field = ring.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let z: Vec<Vec<FieldElem>> =
            (0..n).map(|_| (0..e - 1).map(|_| field.from_i64(rng.gen_range(-5..=5))).collect()).collect();
        let top: Vec<Vec<FieldElem>> = z[..e - 1].to_vec();
        let Some(top_inv) = invert(&top) else { continue };
        // With Q = [Z | e_e..e_n], the bottom rows of Q^{-1}ψ are ψ_bot − Z_bot·Z_top^{-1}·ψ_top.
        let psi = inst.psi();
        let mut rows = Vec::with_capacity(n - e + 1);
        for (r, zr) in z.iter().enumerate().skip(e - 1) {
            let coeffs: Vec<FieldElem> = (0..e - 1)
                .map(|k| {
                    let mut acc = field.zero();
                    for (j, zrj) in zr.iter().enumerate() {
                        acc = &acc + &(zrj * &top_inv[j][k]);
                    }
                    acc
                })
                .collect();
            let row: Vec<Poly> = (0..psi.cols())
                .map(|c| {
                    let mut entry = psi.get(r, c).clone();
                    for (k, ck) in coeffs.iter().enumerate() {
                        entry = &entry - &psi.get(k, c).scale(ck);
                    }
                    entry.remap(&ideal_ring, &restrict)
                })
                .collect();
            rows.push(row);
        }
        let ideal = InstanceIdeal::new(f_i.clone(), PolyMatrix::from_rows(&ideal_ring, rows)?)?;
        if !check_ideal_instance(&ideal, oracle)?.passed() {
            continue;
        }
        let t = inst.t_vars();
        let y_forms = (0..e - 1)
            .map(|j| {
                let mut y = Poly::zero(&ring);
                for (i, ti) in t.iter().enumerate() {
                    y = &y + &ti.scale(&z[i][j]);
                }
                y
            })
            .collect();
        return Ok(BourbakiReduction { seed, z, ideal, y_forms, embedding });
    }
    Err(ReesError::RetryBudget { seed, attempts: ATTEMPTS })
}

fn restrict_matrix(m: &PolyMatrix, target: &Arc<Ring>, map: &[usize]) -> PolyMatrix {
    let mut out = PolyMatrix::zeros(target, m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.set(r, c, m.get(r, c).remap(target, map));
        }
    }
    out
}

/// Gauss–Jordan inverse of a square scalar matrix.
fn invert(a: &[Vec<FieldElem>]) -> Option<Vec<Vec<FieldElem>>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let field = a[0][0].field();
    let mut m: Vec<Vec<FieldElem>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].inverse()?;
        m[col] = m[col].iter().map(|v| v * &inv).collect();
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, p) in m[r].iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&factor * p);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The module's defining ideal together with the reduction used to cross-check it.
#[derive(Clone, Debug)]
pub struct ModuleDefiningIdeal {
    pub defining: DefiningIdeal,
    pub reduction: BourbakiReduction,
}

/// `𝓛_m + (det 𝔅_m)` from the module's own dual, cross-checked against the ideal
/// case: both sides must agree after adding `(Y_1, …, Y_{e−1})`.
pub fn module_defining_ideal(
    inst: &InstanceModule,
    seed: u64,
    mode: PartialMode,
    oracle: &Oracle,
) -> Result<ModuleDefiningIdeal, ReesError> {
    let report = check_module_instance(inst, oracle)?;
    if !report.passed() {
        return Err(ReesError::Hypothesis(report.failures().join("; ")));
    }
    let defining = run_defining_ideal(inst, mode)?;
    let reduction = bourbaki_reduce(inst, seed, oracle)?;
    let ring = inst.ring();
    let through_ideal = run_defining_ideal(reduction.ideal(), mode)?;
    let ys = IdealGens::new(ring, reduction.y_forms().iter().cloned());
    let embedded = IdealGens::new(ring, through_ideal.generators().gens().iter().map(|g| reduction.embed(g, ring)));
    if !oracle.ideal_equal(&defining.generators().sum(&ys), &embedded.sum(&ys))? {
        return Err(ReesError::CrossCheck {
            seed,
            message: "module result and Bourbaki ideal result differ modulo the Y forms".into(),
        });
    }
    Ok(ModuleDefiningIdeal { defining, reduction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypotheses::random_module_instance;
    use crate::poly::{parse_poly, Field};

    #[test]
    fn inverse_of_a_small_matrix() {
        let f = Field::Rational;
        let a = vec![vec![f.from_i64(2), f.from_i64(1)], vec![f.from_i64(1), f.from_i64(1)]];
        let inv = invert(&a).unwrap();
        assert_eq!(inv[0][0], f.from_i64(1));
        assert_eq!(inv[0][1], f.from_i64(-1));
        assert_eq!(inv[1][1], f.from_i64(2));
        assert!(invert(&[vec![f.zero()]]).is_none());
    }

    #[test]
    fn rank_one_is_the_identity() {
        let r = Ring::standard(Field::Rational, 3, 3).unwrap();
        let rows = [["x1", "x3"], ["x2", "x1"], ["x3", "x2"]]
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(s, &r).unwrap()).collect())
            .collect();
        let psi = PolyMatrix::from_rows(&r, rows).unwrap();
        let inst = InstanceModule::new(1, parse_poly("x1^3", &r).unwrap(), psi.clone()).unwrap();
        let red = bourbaki_reduce(&inst, 0, &Oracle::default()).unwrap();
        assert!(red.y_forms().is_empty());
        assert_eq!(red.ideal().psi(), &psi);
        let out = module_defining_ideal(&inst, 0, PartialMode::Greedy, &Oracle::default()).unwrap();
        assert_eq!(out.defining.generators().len(), 6);
    }

    #[test]
    fn rank_two_reduction_shapes_and_determinism() {
        let oracle = Oracle::default();
        let inst = random_module_instance(2, 2, 2, 5, Field::Rational, &oracle).unwrap();
        let a = bourbaki_reduce(&inst, 11, &oracle).unwrap();
        let b = bourbaki_reduce(&inst, 11, &oracle).unwrap();
        assert_eq!((a.ideal().psi().rows(), a.ideal().psi().cols()), (3, 2));
        assert_eq!(a.y_forms().len(), 1);
        assert_eq!(a.y_forms(), b.y_forms());
        assert_eq!(a.ideal(), b.ideal());
        let out = module_defining_ideal(&inst, 11, PartialMode::Greedy, &oracle).unwrap();
        assert_eq!(out.defining.generators().len(), 2 + 2 + 1);
    }
}
