//! Sparse elimination keyed on the largest nonzero index of each vector.

use crate::{SpMat, SparseVec};
use std::collections::HashMap;

/// Column reduction `R = D·V` of a sparse matrix, with `V` upper unitriangular.
///
/// Nonzero columns of `R` have pairwise distinct largest indices ("lows").
#[derive(Clone, Debug)]
pub struct ColumnReduction {
    nrows: usize,
    d: Vec<SparseVec>,
    r: Vec<SparseVec>,
    v: Vec<SparseVec>,
    low_to_col: HashMap<usize, usize>,
}

impl ColumnReduction {
    pub fn new(d: &SpMat) -> Self {
        Self::with_cleared(d, &[])
    }

    /// Reduction in which the columns flagged in `cleared` are taken to be
    /// zero without work; callers pass columns already known to reduce to zero.
    pub fn with_cleared(d: &SpMat, cleared: &[bool]) -> Self {
        let mut r: Vec<SparseVec> = Vec::with_capacity(d.ncols());
        let mut v: Vec<SparseVec> = Vec::with_capacity(d.ncols());
        let mut low_to_col: HashMap<usize, usize> = HashMap::new();
        for j in 0..d.ncols() {
            if cleared.get(j).copied().unwrap_or(false) {
                r.push(SparseVec::new());
                v.push(SparseVec::new());
                continue;
            }
            let mut rc = d.col(j).clone();
            let mut vc = SparseVec::unit(j);
            while let Some(l) = rc.low() {
                match low_to_col.get(&l) {
                    Some(&k) => {
                        rc.add_assign(&r[k]);
                        vc.add_assign(&v[k]);
                    }
                    None => break,
                }
            }
            if let Some(l) = rc.low() {
                low_to_col.insert(l, j);
            }
            r.push(rc);
            v.push(vc);
        }
        ColumnReduction {
            nrows: d.nrows(),
            d: d.cols().to_vec(),
            r,
            v,
            low_to_col,
        }
    }

    pub fn rank(&self) -> usize {
        self.low_to_col.len()
    }

    pub fn ncols(&self) -> usize {
        self.r.len()
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    /// Kernel basis `{V_j : R_j = 0}`; the largest index of `V_j` is `j`.
    /// Cleared columns contribute empty vectors.
    pub fn kernel(&self) -> Vec<SparseVec> {
        self.r
            .iter()
            .zip(&self.v)
            .filter(|(r, _)| r.is_zero())
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Indices `j` with `R_j = 0`.
    pub fn kernel_indices(&self) -> Vec<usize> {
        (0..self.r.len()).filter(|&j| self.r[j].is_zero()).collect()
    }

    /// Nonzero reduced columns, an echelon basis of the image.
    pub fn image(&self) -> Vec<SparseVec> {
        self.r.iter().filter(|c| !c.is_zero()).cloned().collect()
    }

    pub fn reduced_col(&self, j: usize) -> &SparseVec {
        &self.r[j]
    }

    pub fn v_col(&self, j: usize) -> &SparseVec {
        &self.v[j]
    }

    /// Column whose reduced form has largest index `low`.
    pub fn col_with_low(&self, low: usize) -> Option<usize> {
        self.low_to_col.get(&low).copied()
    }

    /// Some `x` with `D·x = b`, or `None` if `b` is not in the image.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let mut rem = b.clone();
        let mut x = SparseVec::new();
        while let Some(l) = rem.low() {
            let k = *self.low_to_col.get(&l)?;
            rem.add_assign(&self.r[k]);
            x.add_assign(&self.v[k]);
        }
        Some(x)
    }

    /// `D·c` recovered from the stored reduction, `D = R·V⁻¹`.
    pub fn reduced_image_of(&self, c: &SparseVec) -> SparseVec {
        self.d_cols_mul(c)
    }

    fn d_cols_mul(&self, c: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for j in c.iter() {
            out.add_assign(&self.d[j]);
        }
        out
    }

    pub fn in_image(&self, b: &SparseVec) -> bool {
        let mut rem = b.clone();
        while let Some(l) = rem.low() {
            match self.low_to_col.get(&l) {
                Some(&k) => rem.add_assign(&self.r[k]),
                None => return false,
            }
        }
        true
    }
}

/// An echelon basis keyed by largest index, with each basis vector carrying a
/// tag recording how it was produced from inserted generators.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: HashMap<usize, (SparseVec, SparseVec)>,
    order: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Pivots in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.order
    }

    pub fn vector(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot).map(|(v, _)| v)
    }

    pub fn tag(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot).map(|(_, t)| t)
    }

    /// Eliminates leading indices while they are pivots; returns the leftover
    /// and the sum of the tags used.
    pub fn reduce_leading(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut tag = SparseVec::new();
        while let Some(l) = rem.low() {
            match self.rows.get(&l) {
                Some((b, t)) => {
                    rem.add_assign(b);
                    tag.add_assign(t);
                }
                None => break,
            }
        }
        (rem, tag)
    }

    /// Canonical form of `v` modulo the span: vanishes at every pivot.
    pub fn reduce_full(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut tag = SparseVec::new();
        let mut bound = usize::MAX;
        loop {
            let next = rem
                .iter()
                .rev()
                .filter(|&i| i < bound)
                .find(|i| self.rows.contains_key(i));
            let Some(i) = next else { break };
            let (b, t) = &self.rows[&i];
            rem.add_assign(b);
            tag.add_assign(t);
            bound = i;
        }
        (rem, tag)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_leading(v).0.is_zero()
    }

    /// Inserts `v` with the given tag; returns the new pivot if independent.
    pub fn insert(&mut self, v: &SparseVec, tag: SparseVec) -> Option<usize> {
        let (rem, t) = self.reduce_leading(v);
        let l = rem.low()?;
        self.rows.insert(l, (rem, t.add(&tag)));
        self.order.push(l);
        Some(l)
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.order.iter().map(|p| &self.rows[p].0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_of_triangle_boundary() {
        // edges 01, 02, 12 → vertices 0, 1, 2
        let d = SpMat::new(
            3,
            vec![
                SparseVec::from_indices([0, 1]),
                SparseVec::from_indices([0, 2]),
                SparseVec::from_indices([1, 2]),
            ],
        );
        let red = ColumnReduction::new(&d);
        assert_eq!(red.rank(), 2);
        let k = red.kernel();
        assert_eq!(k, vec![SparseVec::from_indices([0, 1, 2])]);
        let b = SparseVec::from_indices([0, 2]);
        let x = red.solve(&b).unwrap();
        assert_eq!(d.mul_vec(&x), b);
        assert!(red.solve(&SparseVec::from_indices([0])).is_none());
    }

    #[test]
    fn echelon_canonical_forms() {
        let mut e = Echelon::new();
        e.insert(&SparseVec::from_indices([0, 3]), SparseVec::unit(0));
        e.insert(&SparseVec::from_indices([1, 2]), SparseVec::unit(1));
        let (r, t) = e.reduce_full(&SparseVec::from_indices([0, 1, 2, 3]));
        assert!(r.is_zero());
        assert_eq!(t, SparseVec::from_indices([0, 1]));
        let (r2, _) = e.reduce_full(&SparseVec::from_indices([2, 3]));
        assert_eq!(r2, SparseVec::from_indices([0, 1]));
    }
}
