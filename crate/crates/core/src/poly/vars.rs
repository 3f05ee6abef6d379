use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use super::{Field, PolyError};

/// Variable blocks of a ring `k[x_1..x_{d+1}, T_1..T_n, Z.., Y.., aux..]`.
///
/// Variables are indexed in block order: x-block, T-block, `Z{i}_{j}` (row-major),
/// `Y{j}`, then named auxiliary variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    x: usize,
    t: usize,
    z: (usize, usize),
    y: usize,
    aux: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    X,
    T,
    Z,
    Y,
    Aux,
}

impl VarSet {
    pub fn new(x_count: usize, t_count: usize) -> Result<Self, PolyError> {
        if x_count == 0 || t_count == 0 {
            return Err(PolyError::EmptyBlock);
        }
        Ok(VarSet { x: x_count, t: t_count, z: (0, 0), y: 0, aux: Vec::new() })
    }

    pub fn with_z(mut self, rows: usize, cols: usize) -> Self {
        self.z = (rows, cols);
        self
    }

    pub fn with_y(mut self, count: usize) -> Self {
        self.y = count;
        self
    }

    /// Appends a named auxiliary variable; its index is the new `len() - 1`.
    pub fn with_aux(mut self, name: impl Into<String>) -> Self {
        self.aux.push(name.into());
        self
    }

    pub fn x_count(&self) -> usize {
        self.x
    }

    pub fn t_count(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.x + self.t + self.z.0 * self.z.1 + self.y + self.aux.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn x_range(&self) -> Range<usize> {
        0..self.x
    }

    pub fn t_range(&self) -> Range<usize> {
        self.x..self.x + self.t
    }

    fn z_start(&self) -> usize {
        self.x + self.t
    }

    fn y_start(&self) -> usize {
        self.z_start() + self.z.0 * self.z.1
    }

    fn aux_start(&self) -> usize {
        self.y_start() + self.y
    }

    /// Index of `x_{k+1}` for 0-based `k`.
    pub fn x(&self, k: usize) -> usize {
        assert!(k < self.x, "x index out of range");
        k
    }

    /// Index of `T_{k+1}` for 0-based `k`.
    pub fn t(&self, k: usize) -> usize {
        assert!(k < self.t, "T index out of range");
        self.x + k
    }

    pub fn y(&self, k: usize) -> usize {
        assert!(k < self.y, "Y index out of range");
        self.y_start() + k
    }

    pub fn block_of(&self, idx: usize) -> Block {
        if idx < self.x {
            Block::X
        } else if idx < self.z_start() {
            Block::T
        } else if idx < self.y_start() {
            Block::Z
        } else if idx < self.aux_start() {
            Block::Y
        } else {
            Block::Aux
        }
    }

    pub fn name(&self, idx: usize) -> String {
        match self.block_of(idx) {
            Block::X => format!("x{}", idx + 1),
            Block::T => format!("T{}", idx - self.x + 1),
            Block::Z => {
                let k = idx - self.z_start();
                format!("Z{}_{}", k / self.z.1 + 1, k % self.z.1 + 1)
            }
            Block::Y => format!("Y{}", idx - self.y_start() + 1),
            Block::Aux => self.aux[idx - self.aux_start()].clone(),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        let num = |s: &str| -> Option<usize> {
            if s.is_empty() || s.starts_with('0') || !s.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            s.parse().ok()
        };
        if let Some(k) = name.strip_prefix('x').and_then(num) {
            return (1..=self.x).contains(&k).then(|| k - 1);
        }
        if let Some(k) = name.strip_prefix('T').and_then(num) {
            return (1..=self.t).contains(&k).then(|| self.x + k - 1);
        }
        if let Some(rest) = name.strip_prefix('Z') {
            let (i, j) = rest.split_once('_')?;
            let (i, j) = (num(i)?, num(j)?);
            if (1..=self.z.0).contains(&i) && (1..=self.z.1).contains(&j) {
                return Some(self.z_start() + (i - 1) * self.z.1 + (j - 1));
            }
            return None;
        }
        if let Some(k) = name.strip_prefix('Y').and_then(num) {
            return (1..=self.y).contains(&k).then(|| self.y_start() + k - 1);
        }
        self.aux.iter().position(|a| a == name).map(|p| self.aux_start() + p)
    }
}

/// A polynomial ring: base field plus variable blocks. Shared behind an `Arc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    vars: VarSet,
}

impl Ring {
    pub fn new(field: Field, vars: VarSet) -> Arc<Ring> {
        Arc::new(Ring { field, vars })
    }

    /// `k[x_1..x_{x_count}, T_1..T_{t_count}]`.
    pub fn standard(field: Field, x_count: usize, t_count: usize) -> Result<Arc<Ring>, PolyError> {
        Ok(Ring::new(field, VarSet::new(x_count, t_count)?))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// The same ring with one extra auxiliary variable appended last.
    pub fn with_aux(&self, name: &str) -> Arc<Ring> {
        Ring::new(self.field, self.vars.clone().with_aux(name))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| self.vars.name(i)).collect();
        write!(f, "{}[{}]", self.field, names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        let v = VarSet::new(3, 4).unwrap().with_z(4, 1).with_y(1).with_aux("_t");
        assert_eq!(v.len(), 3 + 4 + 4 + 1 + 1);
        for i in 0..v.len() {
            assert_eq!(v.index_of(&v.name(i)), Some(i), "{}", v.name(i));
        }
        assert_eq!(v.name(3), "T1");
        assert_eq!(v.name(8), "Z2_1");
        assert_eq!(v.index_of("x4"), None);
        assert_eq!(v.index_of("x01"), None);
        assert_eq!(v.index_of("T0"), None);
        assert_eq!(v.block_of(11), Block::Y);
    }

    #[test]
    fn empty_blocks_rejected() {
        assert!(VarSet::new(0, 2).is_err());
        assert!(VarSet::new(2, 0).is_err());
    }
}
