use crate::{BitVec, LinalgError, Subspace};
use std::fmt;

/// Dense matrix over 𝔽₂ stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

/// Row-reduced echelon data of a matrix, optionally carrying a right-hand side.
struct Rref {
    rows: Vec<BitVec>,
    rhs: Vec<bool>,
    /// Pivot column of each of the leading `pivots.len()` rows.
    pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// # Panics
    /// Panics if the rows have differing lengths.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        BitMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_cols(rows: usize, cols: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Parses rows written as strings of `0`/`1`, mainly for tests.
    pub fn from_strs(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                let bits: Vec<bool> = r.chars().map(|c| c == '1').collect();
                BitVec::from_bools(&bits)
            })
            .collect();
        Self::from_rows(cols, data)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.data[r].set(c, v);
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn col(&self, c: usize) -> BitVec {
        BitVec::from_ones(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    /// # Panics
    /// Panics if `v.len() != cols`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        BitVec::from_bools(&self.data.iter().map(|r| r.dot(v)).collect::<Vec<_>>())
    }

    pub fn try_mul_vec(&self, v: &BitVec) -> Result<BitVec, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self.mul_vec(v))
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[r];
            for k in row.iter_ones() {
                acc.xor_assign(&other.data[k]);
            }
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.iter_ones() {
                out.set(c, r, true);
            }
        }
        out
    }

    fn rref(&self, rhs: Option<&BitVec>) -> Rref {
        let mut rows = self.data.clone();
        let mut rhs: Vec<bool> = match rhs {
            Some(b) => (0..self.rows).map(|i| b.get(i)).collect(),
            None => vec![false; self.rows],
        };
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(next, p);
            rhs.swap(next, p);
            let pivot_row = rows[next].clone();
            let pivot_rhs = rhs[next];
            for r in 0..self.rows {
                if r != next && rows[r].get(c) {
                    rows[r].xor_assign(&pivot_row);
                    rhs[r] ^= pivot_rhs;
                }
            }
            pivots.push(c);
            next += 1;
        }
        Rref { rows, rhs, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref(None).pivots.len()
    }

    /// Basis of the null space `{x : self·x = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let rr = self.rref(None);
        let mut is_pivot = vec![false; self.cols];
        for &c in &rr.pivots {
            is_pivot[c] = true;
        }
        let vecs = (0..self.cols).filter(|&f| !is_pivot[f]).map(|f| {
            let mut x = BitVec::unit(self.cols, f);
            for (r, &c) in rr.pivots.iter().enumerate() {
                if rr.rows[r].get(f) {
                    x.set(c, true);
                }
            }
            x
        });
        Subspace::from_spanning(self.cols, vecs)
    }

    /// A particular solution of `self·x = b` with all free variables zero, or
    /// `None` when the system is inconsistent.
    ///
    /// # Panics
    /// Panics if `b.len() != rows`.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let rr = self.rref(Some(b));
        let rank = rr.pivots.len();
        if rr.rhs[rank..].iter().any(|&x| x) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &c) in rr.pivots.iter().enumerate() {
            if rr.rhs[r] {
                x.set(c, true);
            }
        }
        Some(x)
    }

    /// Span of the columns.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_spanning(self.rows, (0..self.cols).map(|c| self.col(c)))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.concat(b))
            .collect();
        BitMatrix::from_rows(self.cols + other.cols, data)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        BitMatrix::from_rows(self.cols, data)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_small_cases() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(4, 5).rank(), 0);
        assert_eq!(BitMatrix::from_strs(&["11"]).rank(), 1);
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let k = BitMatrix::from_strs(&["11"]).kernel_basis();
        assert_eq!(k.basis(), &[BitVec::from_bools(&[true, true])]);
        assert_eq!(BitMatrix::identity(4).kernel_basis().dim(), 0);
    }

    #[test]
    fn solve_uses_free_variables_zero() {
        let m = BitMatrix::from_strs(&["11"]);
        let x = m.solve(&BitVec::from_bools(&[true])).unwrap();
        assert_eq!(x, BitVec::from_bools(&[true, false]));
        let b = BitVec::from_bools(&[true, false, true]);
        assert_eq!(BitMatrix::identity(3).solve(&b), Some(b.clone()));
        assert_eq!(BitMatrix::zeros(3, 2).solve(&b), None);
    }
}
