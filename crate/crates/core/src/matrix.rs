//! Dense matrices with polynomial entries.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::poly::{BiDegree, Poly, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("column {col} holds an entry that is not of bidegree {expected}")]
    ColumnDegree { col: usize, expected: BiDegree },
}

/// Row-major matrix over a polynomial ring, optionally tagging each column with
/// the bidegree shared by its nonzero entries. Equality ignores the tags.
#[derive(Clone)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
    col_degrees: Vec<Option<BiDegree>>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Arc<Ring>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Poly::zero(ring); rows * cols],
            col_degrees: vec![None; cols],
        }
    }

    pub fn from_rows(ring: &Arc<Ring>, rows: Vec<Vec<Poly>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(MatrixError::Shape("rows of unequal length".into()));
        }
        let entries: Vec<Poly> = rows.into_iter().flatten().collect();
        if entries.iter().any(|p| p.ring() != ring) {
            return Err(MatrixError::Shape("entry from a different ring".into()));
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: nrows, cols: ncols, entries, col_degrees: vec![None; ncols] })
    }

    pub fn from_columns(ring: &Arc<Ring>, rows: usize, columns: Vec<Vec<Poly>>) -> Result<Self, MatrixError> {
        let mut m = PolyMatrix::zeros(ring, rows, 0);
        for c in columns {
            m.push_column(c, None)?;
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn column(&self, c: usize) -> Vec<Poly> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[Poly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column_degree(&self, c: usize) -> Option<BiDegree> {
        self.col_degrees[c]
    }

    /// Declares the bidegree of column `c`, checking every entry against it.
    pub fn declare_column_degree(&mut self, c: usize, deg: BiDegree) -> Result<(), MatrixError> {
        for r in 0..self.rows {
            if !self.get(r, c).bidegree().is_compatible_with(deg) {
                return Err(MatrixError::ColumnDegree { col: c, expected: deg });
            }
        }
        self.col_degrees[c] = Some(deg);
        Ok(())
    }

    pub fn push_column(&mut self, col: Vec<Poly>, deg: Option<BiDegree>) -> Result<(), MatrixError> {
        if col.len() != self.rows {
            return Err(MatrixError::Shape(format!(
                "column of length {} for a matrix with {} rows",
                col.len(),
                self.rows
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for (r, p) in col.into_iter().enumerate() {
            entries.extend(self.row(r).iter().cloned());
            entries.push(p);
        }
        self.entries = entries;
        self.cols += 1;
        self.col_degrees.push(None);
        if let Some(d) = deg {
            if let Err(e) = self.declare_column_degree(self.cols - 1, d) {
                self.remove_last_column();
                return Err(e);
            }
        }
        Ok(())
    }

    fn remove_last_column(&mut self) {
        let cols = self.cols;
        self.entries = (0..self.rows).flat_map(|r| self.entries[r * cols..(r + 1) * cols - 1].to_vec()).collect();
        self.cols -= 1;
        self.col_degrees.pop();
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &PolyMatrix) -> Result<PolyMatrix, MatrixError> {
        if self.rows != other.rows {
            return Err(MatrixError::Shape("hcat of matrices with different row counts".into()));
        }
        let mut out = self.clone();
        for c in 0..other.cols {
            out.push_column(other.column(c), None)?;
            out.col_degrees[out.cols - 1] = other.col_degrees[c];
        }
        Ok(out)
    }

    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.get(r, c).clone());
            }
            out.col_degrees[j] = self.col_degrees[c];
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix {
        let entries = rows.iter().flat_map(|&r| self.row(r).to_vec()).collect();
        PolyMatrix {
            ring: self.ring.clone(),
            rows: rows.len(),
            cols: self.cols,
            entries,
            col_degrees: self.col_degrees.clone(),
        }
    }

    /// All nonzero `k x k` minors, in no particular order and with repeats.
    pub fn minors(&self, k: usize) -> Vec<Poly> {
        if k == 0 {
            return vec![Poly::one(&self.ring)];
        }
        if k > self.rows || k > self.cols {
            return Vec::new();
        }
        let mut out = Vec::new();
        for rows in subsets(self.rows, k) {
            let sub = self.select_rows(&rows);
            out.extend(sub.maximal_minors().into_iter().map(|(_, p)| p).filter(|p| !p.is_zero()));
        }
        out
    }

    pub fn delete_row(&self, row: usize) -> PolyMatrix {
        let entries = (0..self.rows).filter(|&r| r != row).flat_map(|r| self.row(r).to_vec()).collect();
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows - 1,
            cols: self.cols,
            entries,
            col_degrees: self.col_degrees.clone(),
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(&self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// The row vector `[a] * self`.
    pub fn left_mul_row(&self, a: &[Poly]) -> Result<Vec<Poly>, MatrixError> {
        if a.len() != self.rows {
            return Err(MatrixError::Shape(format!("row vector of length {} against {} rows", a.len(), self.rows)));
        }
        Ok((0..self.cols)
            .map(|c| {
                let mut acc = Poly::zero(&self.ring);
                for (r, ar) in a.iter().enumerate() {
                    let e = self.get(r, c);
                    if !e.is_zero() && !ar.is_zero() {
                        acc = &acc + &(ar * e);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn determinant(&self) -> Result<Poly, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        if self.rows == 0 {
            return Ok(Poly::one(&self.ring));
        }
        // Expanding the sparsest columns last keeps the memo small near the leaves.
        let mut order: Vec<usize> = (0..self.cols).collect();
        order.sort_by_key(|&c| std::cmp::Reverse(self.nonzeros_in_column(c)));
        let mut out = None;
        self.walk_minors(&order, &|_, _| true, &mut |_, det| out = Some(det.clone()));
        let det = out.expect("one full minor");
        Ok(if permutation_is_odd(&order) { -&det } else { det })
    }

    fn nonzeros_in_column(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| !self.get(r, c).is_zero()).count()
    }

    /// All maximal (rows x rows) minors, keyed by the increasing column index set.
    pub fn maximal_minors(&self) -> Vec<(Vec<usize>, Poly)> {
        self.maximal_minors_where(&|_, _| true)
    }

    /// Maximal minors over column sets accepted by `admit`.
    ///
    /// `admit(chosen, remaining)` is called on each partial column choice (`remaining`
    /// being the columns still available after the last chosen one) and must return
    /// false only if no completion of `chosen` can be accepted.
    pub fn maximal_minors_where(&self, admit: &dyn Fn(&[usize], &[usize]) -> bool) -> Vec<(Vec<usize>, Poly)> {
        let order: Vec<usize> = (0..self.cols).collect();
        let mut out = Vec::new();
        self.walk_minors(&order, admit, &mut |cols, det| out.push((cols.to_vec(), det.clone())));
        out
    }

    /// Depth-first over increasing column subsets (positions in `order`), carrying
    /// for each row subset the minor on the chosen columns. Extending by one column
    /// is a Laplace expansion along that column.
    fn walk_minors(
        &self,
        order: &[usize],
        admit: &dyn Fn(&[usize], &[usize]) -> bool,
        emit: &mut dyn FnMut(&[usize], &Poly),
    ) {
        let n = self.rows;
        if n == 0 || self.cols < n {
            return;
        }
        let mut base = HashMap::new();
        base.insert(0u32, Poly::one(&self.ring));
        let mut chosen = Vec::with_capacity(n);
        self.walk(order, 0, &mut chosen, &base, admit, emit);
    }

    fn walk(
        &self,
        order: &[usize],
        start: usize,
        chosen: &mut Vec<usize>,
        partial: &HashMap<u32, Poly>,
        admit: &dyn Fn(&[usize], &[usize]) -> bool,
        emit: &mut dyn FnMut(&[usize], &Poly),
    ) {
        let n = self.rows;
        let k = chosen.len();
        if k == n {
            let full = (1u32 << n) - 1;
            if let Some(det) = partial.get(&full) {
                emit(chosen, det);
            } else {
                emit(chosen, &Poly::zero(&self.ring));
            }
            return;
        }
        for pos in start..order.len() {
            if order.len() - pos < n - k {
                break;
            }
            let c = order[pos];
            chosen.push(c);
            if admit(chosen, &order[pos + 1..]) {
                let next = self.extend(partial, c, k + 1);
                self.walk(order, pos + 1, chosen, &next, admit, emit);
            }
            chosen.pop();
        }
    }

    /// Minors of size `size` on row subsets, using the previous column set plus `c` as the last column.
    fn extend(&self, partial: &HashMap<u32, Poly>, c: usize, size: usize) -> HashMap<u32, Poly> {
        let mut next: HashMap<u32, Poly> = HashMap::new();
        for (&mask, minor) in partial {
            if minor.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                if mask & (1 << r) != 0 {
                    continue;
                }
                let e = self.get(r, c);
                if e.is_zero() {
                    continue;
                }
                let new_mask = mask | (1 << r);
                // position of r among the rows of new_mask, counted from 0
                let p = (new_mask & ((1u32 << r) - 1)).count_ones() as usize;
                let term = minor * e;
                let term = if (p + size - 1) % 2 == 1 { -&term } else { term };
                match next.get_mut(&new_mask) {
                    Some(acc) => *acc = &*acc + &term,
                    None => {
                        next.insert(new_mask, term);
                    }
                }
            }
        }
        next.retain(|_, p| !p.is_zero());
        next
    }
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

impl PartialEq for PolyMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for PolyMatrix {}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{self}")
    }
}

/// Increasing `k`-subsets of `0..n`.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Field};

    fn ring() -> Arc<Ring> {
        Ring::standard(Field::Rational, 3, 3).unwrap()
    }

    fn mat(r: &Arc<Ring>, rows: &[&[&str]]) -> PolyMatrix {
        let rows = rows.iter().map(|row| row.iter().map(|s| parse_poly(s, r).unwrap()).collect()).collect();
        PolyMatrix::from_rows(r, rows).unwrap()
    }

    /// Leibniz formula over all permutations, as an independent check.
    fn leibniz(m: &PolyMatrix) -> Poly {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let mut acc = Poly::zero(m.ring());
        for p in perms(m.rows()) {
            let mut t = Poly::one(m.ring());
            for (r, &c) in p.iter().enumerate() {
                t = &t * m.get(r, c);
            }
            acc = if permutation_is_odd(&p) { &acc - &t } else { &acc + &t };
        }
        acc
    }

    #[test]
    fn worked_example_determinants() {
        let r = ring();
        let b1 = mat(&r, &[&["T1", "T2", "x1^2"], &["T2", "T3", "0"], &["T3", "T1", "0"]]);
        assert_eq!(b1.determinant().unwrap(), parse_poly("x1^2*(T1*T2 - T3^2)", &r).unwrap());
        let linear = mat(&r, &[&["T1", "T2", "0"], &["T2", "T3", "0"], &["T3", "T1", "1"]]);
        assert_eq!(linear.determinant().unwrap(), parse_poly("T1*T3 - T2^2", &r).unwrap());
    }

    #[test]
    fn determinant_matches_leibniz() {
        let r = ring();
        let m = mat(
            &r,
            &[
                &["x1 + T1", "2", "x2*T3", "0"],
                &["T2", "x3", "1", "x1"],
                &["0", "T1*T2", "x2 - 1", "3"],
                &["x1", "1/2", "T3", "x2^2"],
            ],
        );
        assert_eq!(m.determinant().unwrap(), leibniz(&m));
    }

    #[test]
    fn maximal_minors_of_worked_example_psi() {
        let r = ring();
        let psi = mat(&r, &[&["x1", "x3"], &["x2", "x1"], &["x3", "x2"]]);
        let minors: Vec<Poly> = psi.transpose().maximal_minors().into_iter().map(|(_, p)| p).collect();
        let expect = ["x1^2 - x2*x3", "x1*x2 - x3^2", "x2^2 - x1*x3"];
        assert_eq!(minors.len(), 3);
        for (got, want) in minors.iter().zip(expect) {
            assert_eq!(*got, parse_poly(want, &r).unwrap());
        }
    }

    #[test]
    fn minors_agree_with_submatrix_determinants() {
        let r = ring();
        let m = mat(&r, &[&["x1", "T1", "0", "x2*T2"], &["x3", "T2", "T3", "1"]]);
        for (cols, minor) in m.maximal_minors() {
            assert_eq!(minor, m.select_columns(&cols).determinant().unwrap(), "{cols:?}");
        }
        assert_eq!(m.maximal_minors().len(), 6);
    }

    #[test]
    fn row_product_and_shapes() {
        let r = ring();
        let b = mat(&r, &[&["T1", "T2"], &["T2", "T3"], &["T3", "T1"]]);
        let x: Vec<Poly> = (0..3).map(|i| Poly::var(&r, i)).collect();
        let prod = b.left_mul_row(&x).unwrap();
        assert_eq!(prod[0], parse_poly("x1*T1 + x2*T2 + x3*T3", &r).unwrap());
        assert!(b.determinant().is_err());
        assert!(b.left_mul_row(&x[..2]).is_err());
        assert_eq!(b.delete_row(2).determinant().unwrap(), parse_poly("T1*T3 - T2^2", &r).unwrap());
    }

    #[test]
    fn column_degrees_are_checked() {
        let r = ring();
        let mut b = mat(&r, &[&["T1"], &["0"], &["T3"]]);
        assert!(b.declare_column_degree(0, BiDegree::new(0, 1)).is_ok());
        let bad = vec![parse_poly("x1", &r).unwrap(), Poly::zero(&r), Poly::zero(&r)];
        assert!(b.push_column(bad, Some(BiDegree::new(0, 1))).is_err());
        assert_eq!(b.cols(), 1);
    }

    #[test]
    fn lower_order_minors() {
        let r = ring();
        let psi = mat(&r, &[&["x1", "x3"], &["x2", "x1"], &["x3", "x2"]]);
        assert_eq!(psi.minors(1).len(), 6);
        let two = psi.minors(2);
        assert_eq!(two.len(), 3);
        assert!(two.contains(&parse_poly("x1^2 - x2*x3", &r).unwrap()));
        assert!(psi.minors(3).is_empty());
        assert_eq!(psi.minors(0), vec![Poly::one(&r)]);
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
