use std::collections::HashSet;

use super::dual::{jacobian_dual, modified_jacobian_dual, partial_column, PartialMode};
use super::{Presentation, ReesError};
use crate::groebner::{IdealGens, Oracle};
use crate::matrix::PolyMatrix;
use crate::poly::{BiGrade, Poly};

/// The pair `(𝔅_i, 𝓛_i)` of step `i`, with `det 𝔅_i` when `𝔅_i` is square.
#[derive(Clone, Debug)]
pub struct IterationState {
    step: usize,
    matrix: PolyMatrix,
    ideal: IdealGens,
    det: Option<Poly>,
    dual_cols: usize,
}

impl IterationState {
    pub fn step(&self) -> usize {
        self.step
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn ideal(&self) -> &IdealGens {
        &self.ideal
    }

    pub fn det(&self) -> Option<&Poly> {
        self.det.as_ref()
    }

    /// `𝓛_i + I_{d,1}(B(ψ), 𝔅_i)`, which is `𝓛_i + (det 𝔅_i)` in the square case.
    pub fn result_ideal(&self) -> IdealGens {
        let mut out = self.ideal.clone();
        match &self.det {
            Some(det) => out.push(det.clone()),
            None => {
                let primary: Vec<usize> = (0..self.dual_cols).collect();
                for u in distinct(subminors(&self.matrix, &primary, 1)) {
                    out.push(u);
                }
            }
        }
        out
    }
}

/// Runs the modified Jacobian dual iteration for `m` steps and returns every state.
///
/// When `B(ψ)` has `d` columns each `𝔅_i` is square and step `i` appends the column
/// of `F_{i−1} = det 𝔅_{i−1}`; a vanishing determinant is an error. Otherwise the
/// appended columns come from the minors of `𝔅_{i−1}` using at least `d` columns of
/// `B(ψ)` that have positive x-degree.
pub fn mjd_iterations(inst: impl AsRef<Presentation>, mode: PartialMode) -> Result<Vec<IterationState>, ReesError> {
    let p = inst.as_ref();
    let b_psi = jacobian_dual(p.psi())?;
    let dual_cols = b_psi.cols();
    let square = dual_cols == p.d();
    let m = p.m() as usize;
    let (b, l) = modified_jacobian_dual(p, mode)?;
    let det = if square { Some(nonzero_det(&b, 1)?) } else { None };
    let mut states = vec![IterationState { step: 1, matrix: b, ideal: l, det, dual_cols }];
    let primary: Vec<usize> = (0..dual_cols).collect();
    for step in 2..=m {
        let prev = states.last().expect("nonempty");
        let us = match &prev.det {
            Some(f) => vec![f.clone()],
            None => distinct(subminors(&prev.matrix, &primary, 1)).into_iter().filter(has_positive_x_degree).collect(),
        };
        let mut matrix = b_psi.clone();
        let mut ideal = prev.ideal.clone();
        for u in us {
            matrix = matrix.hcat(&partial_column(&u, mode)?)?;
            ideal.push(u);
        }
        let det = if square { Some(nonzero_det(&matrix, step)?) } else { None };
        states.push(IterationState { step, matrix, ideal, det, dual_cols });
    }
    Ok(states)
}

/// `B_steps` of the matrix iteration and the ideal `𝓛 + I_{d+1}(B_steps)`.
///
/// `B_1 = B`; each further step appends the columns of the new maximal minors of
/// positive x-degree. With `prune`, a minor already in `L_{i−1} = ([x]·B_{i−1})` is
/// skipped, which keeps the matrices small without changing `L_i`. `steps ≤ 1`
/// returns `B` itself.
pub fn matrix_iterations(
    inst: impl AsRef<Presentation>,
    steps: usize,
    mode: PartialMode,
    prune: Option<&Oracle>,
) -> Result<(PolyMatrix, IdealGens), ReesError> {
    let p = inst.as_ref();
    let (mut b, l) = modified_jacobian_dual(p, mode)?;
    let mut seen: HashSet<Poly> = l.gens().iter().map(Poly::normalized).collect();
    let mut current = l.clone();
    for _ in 2..=steps {
        let gb = match prune {
            Some(oracle) => Some(oracle.grevlex(&current)?),
            None => None,
        };
        let mut fresh = Vec::new();
        for (_, u) in b.maximal_minors() {
            if u.is_zero() || !has_positive_x_degree(&u) || !seen.insert(u.normalized()) {
                continue;
            }
            if gb.as_ref().is_some_and(|gb| gb.contains(&u)) {
                continue;
            }
            fresh.push(u);
        }
        for u in fresh {
            b = b.hcat(&partial_column(&u, mode)?)?;
            current.push(u);
        }
    }
    let mut ideal = l;
    for u in distinct(b.maximal_minors().into_iter().map(|(_, u)| u).collect()) {
        ideal.push(u);
    }
    Ok((b, ideal))
}

/// `I_{r−i,i}(M′, M)`: the `r × r` minors of `M` with at least `r − i` columns
/// taken from `M′`, where `r` is the row count and `M′` is a column subset of `M`.
pub fn subminor_ideal(mprime: &PolyMatrix, m: &PolyMatrix, i: usize) -> Result<IdealGens, ReesError> {
    if mprime.rows() != m.rows() || mprime.ring() != m.ring() {
        return Err(ReesError::Instance("M′ and M differ in rows or ring".into()));
    }
    let mut used = vec![false; m.cols()];
    let mut primary = Vec::with_capacity(mprime.cols());
    for c in 0..mprime.cols() {
        let col = mprime.column(c);
        let found = (0..m.cols()).find(|&j| !used[j] && m.column(j) == col);
        let Some(j) = found else {
            return Err(ReesError::Instance(format!("column {} of M′ is not a column of M", c + 1)));
        };
        used[j] = true;
        primary.push(j);
    }
    Ok(IdealGens::new(m.ring(), distinct(subminors(m, &primary, i))))
}

/// Maximal minors of `m` using at most `i` columns outside `primary`.
pub(crate) fn subminors(m: &PolyMatrix, primary: &[usize], i: usize) -> Vec<Poly> {
    let admit = |chosen: &[usize], _: &[usize]| chosen.iter().filter(|c| !primary.contains(c)).count() <= i;
    m.maximal_minors_where(&admit).into_iter().map(|(_, u)| u).collect()
}

/// Nonzero entries of `polys`, dropping scalar multiples of earlier ones.
pub(crate) fn distinct(polys: Vec<Poly>) -> Vec<Poly> {
    let mut seen = HashSet::new();
    polys.into_iter().filter(|u| !u.is_zero() && seen.insert(u.normalized())).collect()
}

fn has_positive_x_degree(u: &Poly) -> bool {
    matches!(u.bidegree(), BiGrade::Homogeneous(d) if d.x > 0)
}

fn nonzero_det(b: &PolyMatrix, step: usize) -> Result<Poly, ReesError> {
    let det = b.determinant()?;
    if det.is_zero() {
        return Err(ReesError::VanishingDeterminant { step });
    }
    Ok(det)
}
