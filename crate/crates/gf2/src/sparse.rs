use crate::{BitMatrix, BitVec};

/// Vector over 𝔽₂ stored as the sorted list of its nonzero coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec(Vec<u32>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: usize) -> Self {
        SparseVec(vec![i as u32])
    }

    /// # Panics
    /// Debug builds check that `v` is strictly increasing.
    pub fn from_sorted(v: Vec<u32>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]), "indices not strictly increasing");
        SparseVec(v)
    }

    /// Sums the unit vectors at the given positions; pairs cancel.
    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<u32> = it.into_iter().map(|i| i as u32).collect();
        v.sort_unstable();
        let mut out = Vec::with_capacity(v.len());
        let mut i = 0;
        while i < v.len() {
            let mut j = i;
            while j < v.len() && v[j] == v[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                out.push(v[i]);
            }
            i = j;
        }
        SparseVec(out)
    }

    pub fn from_bitvec(b: &BitVec) -> Self {
        SparseVec(b.iter_ones().map(|i| i as u32).collect())
    }

    pub fn to_bitvec(&self, len: usize) -> BitVec {
        BitVec::from_ones(len, self.iter())
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn low(&self) -> Option<usize> {
        self.0.last().map(|&i| i as usize)
    }

    #[inline]
    pub fn first(&self) -> Option<usize> {
        self.0.first().map(|&i| i as usize)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&(i as u32)).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn toggle(&mut self, i: usize) {
        match self.0.binary_search(&(i as u32)) {
            Ok(p) => {
                self.0.remove(p);
            }
            Err(p) => self.0.insert(p, i as u32),
        }
    }

    /// Symmetric difference.
    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        SparseVec(out)
    }

    pub fn add_assign(&mut self, other: &SparseVec) {
        if other.is_zero() {
            return;
        }
        *self = self.add(other);
    }

    /// Parity of the overlap.
    pub fn dot(&self, other: &SparseVec) -> bool {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut n) = (0, 0, 0u32);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n % 2 == 1
    }

    /// Keeps the coordinates in `[lo, hi)`, shifted down by `lo`.
    pub fn window(&self, lo: usize, hi: usize) -> SparseVec {
        SparseVec(
            self.0
                .iter()
                .filter(|&&i| (i as usize) >= lo && (i as usize) < hi)
                .map(|&i| i - lo as u32)
                .collect(),
        )
    }

    pub fn shifted(&self, by: usize) -> SparseVec {
        SparseVec(self.0.iter().map(|&i| i + by as u32).collect())
    }
}

impl FromIterator<usize> for SparseVec {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        SparseVec::from_indices(iter)
    }
}

/// Column-major sparse matrix over 𝔽₂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpMat {
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl SpMat {
    pub fn new(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.low().is_none_or(|m| m < nrows)));
        SpMat { nrows, cols }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SpMat {
            nrows,
            cols: vec![SparseVec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SpMat {
            nrows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    #[inline]
    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cols[j].contains(i)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::len).sum()
    }

    /// # Panics
    /// Panics if `v` has a coordinate beyond the column count.
    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut acc: Vec<usize> = Vec::new();
        for j in v.iter() {
            acc.extend(self.cols[j].iter());
        }
        SparseVec::from_indices(acc)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SpMat) -> SpMat {
        assert_eq!(self.ncols(), other.nrows, "composition dimension mismatch");
        SpMat {
            nrows: self.nrows,
            cols: other.cols.iter().map(|c| self.mul_vec(c)).collect(),
        }
    }

    pub fn add(&self, other: &SpMat) -> SpMat {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()));
        SpMat {
            nrows: self.nrows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn transpose(&self) -> SpMat {
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for i in c.iter() {
                rows[i].push(j as u32);
            }
        }
        SpMat {
            nrows: self.ncols(),
            cols: rows.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn to_dense(&self) -> BitMatrix {
        BitMatrix::from_cols(
            self.nrows,
            &self.cols.iter().map(|c| c.to_bitvec(self.nrows)).collect::<Vec<_>>(),
        )
    }

    pub fn from_dense(m: &BitMatrix) -> SpMat {
        SpMat {
            nrows: m.rows(),
            cols: (0..m.cols()).map(|j| SparseVec::from_bitvec(&m.col(j))).collect(),
        }
    }

    pub fn push_col(&mut self, c: SparseVec) {
        debug_assert!(c.low().is_none_or(|m| m < self.nrows));
        self.cols.push(c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_difference() {
        let a = SparseVec::from_indices([1, 3, 5]);
        let b = SparseVec::from_indices([3, 4]);
        assert_eq!(a.add(&b), SparseVec::from_indices([1, 4, 5]));
        assert!(a.add(&a).is_zero());
    }

    #[test]
    fn dense_roundtrip() {
        let m = BitMatrix::from_strs(&["101", "011"]);
        assert_eq!(SpMat::from_dense(&m).to_dense(), m);
        assert_eq!(SpMat::from_dense(&m).transpose().to_dense(), m.transpose());
    }
}
