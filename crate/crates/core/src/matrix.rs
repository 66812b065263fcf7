//! Integer matrices for differentials and homotopies.
//!
//! Matrices with both dimensions at most [`DENSE_LIMIT`] are stored densely,
//! larger ones as coordinate maps. The two layouts compare equal and
//! serialize identically through [`IntMatrix::triplets`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Result, SchurError};

pub const DENSE_LIMIT: usize = 512;

#[derive(Clone, Debug)]
enum Storage {
    Dense(Vec<BigInt>),
    Sparse(BTreeMap<(usize, usize), BigInt>),
}

#[derive(Clone, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let storage = if rows <= DENSE_LIMIT && cols <= DENSE_LIMIT {
            Storage::Dense(vec![BigInt::zero(); rows * cols])
        } else {
            Storage::Sparse(BTreeMap::new())
        };
        IntMatrix { rows, cols, storage }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions
    /// are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(SchurError::SizeMismatch(format!(
                    "entry ({i}, {j}) outside a {rows}x{cols} matrix"
                )));
            }
            m.add_to(i, j, &v);
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(SchurError::SizeMismatch("ragged rows".into()));
        }
        let triplets = rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter().enumerate().filter(|(_, &v)| v != 0).map(move |(j, &v)| (i, j, BigInt::from(v)))
        });
        IntMatrix::from_triplets(rows.len(), cols, triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        match &self.storage {
            Storage::Dense(v) => v[i * self.cols + j].clone(),
            Storage::Sparse(m) => m.get(&(i, j)).cloned().unwrap_or_default(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        match &mut self.storage {
            Storage::Dense(v) => v[i * self.cols + j] = value,
            Storage::Sparse(m) => {
                if value.is_zero() {
                    m.remove(&(i, j));
                } else {
                    m.insert((i, j), value);
                }
            }
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: &BigInt) {
        if value.is_zero() {
            return;
        }
        match &mut self.storage {
            Storage::Dense(v) => v[i * self.cols + j] += value,
            Storage::Sparse(m) => {
                let slot = m.entry((i, j)).or_insert_with(BigInt::zero);
                *slot += value;
                if slot.is_zero() {
                    m.remove(&(i, j));
                }
            }
        }
    }

    /// Nonzero entries in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, BigInt)> {
        match &self.storage {
            Storage::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(idx, x)| (idx / self.cols, idx % self.cols, x.clone()))
                .collect(),
            Storage::Sparse(m) => m.iter().map(|(&(i, j), x)| (i, j, x.clone())).collect(),
        }
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(v) => v.iter().filter(|x| !x.is_zero()).count(),
            Storage::Sparse(m) => m.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMatrix::identity(self.rows)
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v;
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let t = self.triplets().into_iter().map(|(i, j, v)| (j, i, v));
        IntMatrix::from_triplets(self.cols, self.rows, t).expect("transpose stays in bounds")
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(SchurError::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); other.rows];
        for (k, j, v) in other.triplets() {
            by_row[k].push((j, v));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for (i, k, a) in self.triplets() {
            for (j, b) in &by_row[k] {
                out.add_to(i, *j, &(&a * b));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.combine(other, true)
    }

    fn combine(&self, other: &IntMatrix, negate: bool) -> Result<IntMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(SchurError::SizeMismatch(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (i, j, v) in other.triplets() {
            out.add_to(i, j, &if negate { -v } else { v });
        }
        Ok(out)
    }

    /// Entrywise reduction into `0..p`.
    pub fn reduce_mod(&self, p: u64) -> IntMatrix {
        let modulus = BigInt::from(p);
        let t = self.triplets().into_iter().map(|(i, j, v)| (i, j, v.mod_floor(&modulus)));
        IntMatrix::from_triplets(self.rows, self.cols, t).expect("reduction stays in bounds")
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (new, &old) in rows.iter().enumerate() {
            row_pos[old] = new;
        }
        let mut col_pos = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            col_pos[old] = new;
        }
        let t = self.triplets().into_iter().filter_map(|(i, j, v)| {
            let (a, b) = (row_pos[i], col_pos[j]);
            (a != usize::MAX && b != usize::MAX).then_some((a, b, v))
        });
        IntMatrix::from_triplets(rows.len(), cols.len(), t).expect("selection stays in bounds")
    }
}

impl PartialEq for IntMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.triplets() == other.triplets()
    }
}

impl Eq for IntMatrix {}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, row) in self.to_dense().iter().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn arithmetic() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.add(&b).unwrap(), m(&[&[1, 3], &[4, 4]]));
        assert!(a.sub(&a).unwrap().is_zero());
        assert_eq!(a.transpose(), m(&[&[1, 3], &[2, 4]]));
        assert!(a.mul(&m(&[&[1, 2, 3]])).is_err());
        assert!(IntMatrix::identity(3).is_identity());
    }

    #[test]
    fn reduction_and_selection() {
        let a = m(&[&[2, -1], &[5, 4]]);
        assert_eq!(a.reduce_mod(2), m(&[&[0, 1], &[1, 0]]));
        assert_eq!(a.select(&[1], &[1, 0]), m(&[&[4, 5]]));
    }

    #[test]
    fn layouts_agree() {
        let big = IntMatrix::from_triplets(600, 3, vec![(599, 2, BigInt::from(7))]).unwrap();
        assert!(!big.is_dense());
        let small = big.select(&[599], &[0, 1, 2]);
        assert!(small.is_dense());
        assert_eq!(small.triplets(), vec![(0, 2, BigInt::from(7))]);
        let mut same = IntMatrix::zeros(600, 3);
        same.set(599, 2, BigInt::from(7));
        assert_eq!(same, big);
        assert_eq!(big.transpose().mul(&big).unwrap().get(2, 2), BigInt::from(49));
    }
}
