use crate::{BitMatrix, BitVec, LinalgError};

/// A subspace of 𝔽₂^n held as a reduced row-echelon basis.
///
/// Pivots are the first nonzero coordinate of each basis vector, strictly
/// increasing, and every other basis vector vanishes at each pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_spanning(ambient_dim, (0..ambient_dim).map(|i| BitVec::unit(ambient_dim, i)))
    }

    pub fn from_spanning(ambient_dim: usize, vecs: impl IntoIterator<Item = BitVec>) -> Self {
        let mut s = Self::zero(ambient_dim);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector outside ambient space");
        let r = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for b in &mut self.basis {
            if b.get(p) {
                b.xor_assign(&r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        true
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The unique vector in `v + self` vanishing at every pivot.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut r = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(b);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &BitVec) -> Option<BitVec> {
        if !self.contains(v) {
            return None;
        }
        Some(BitVec::from_bools(
            &self.pivots.iter().map(|&p| v.get(p)).collect::<Vec<_>>(),
        ))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b.clone());
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        // x·A = y·B  ⇔  (x, y) in the kernel of [Aᵀ | Bᵀ]
        let mut cols: Vec<BitVec> = self.basis.clone();
        cols.extend(other.basis.iter().cloned());
        let m = BitMatrix::from_cols(self.ambient_dim, &cols);
        let k = m.kernel_basis();
        Subspace::from_spanning(
            self.ambient_dim,
            k.basis().iter().map(|x| {
                let mut v = BitVec::zeros(self.ambient_dim);
                for i in x.iter_ones().filter(|&i| i < self.basis.len()) {
                    v.xor_assign(&self.basis[i]);
                }
                v
            }),
        )
    }

    /// Image of this subspace under a linear map.
    pub fn image_under(&self, m: &BitMatrix) -> Subspace {
        Subspace::from_spanning(m.rows(), self.basis.iter().map(|b| m.mul_vec(b)))
    }
}

/// A quotient `ambient / modulus` with canonical coset representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPresentation {
    ambient: Subspace,
    modulus: Subspace,
    complement: Subspace,
}

impl QuotientPresentation {
    pub fn new(ambient: Subspace, modulus: Subspace) -> Result<Self, LinalgError> {
        if ambient.ambient_dim() != modulus.ambient_dim() {
            return Err(LinalgError::Dimension {
                expected: ambient.ambient_dim(),
                found: modulus.ambient_dim(),
            });
        }
        if !modulus.is_subspace_of(&ambient) {
            return Err(LinalgError::ModulusNotContained);
        }
        let complement = Subspace::from_spanning(
            ambient.ambient_dim(),
            ambient.basis().iter().map(|a| modulus.reduce(a)),
        );
        Ok(QuotientPresentation {
            ambient,
            modulus,
            complement,
        })
    }

    pub fn ambient(&self) -> &Subspace {
        &self.ambient
    }

    pub fn modulus(&self) -> &Subspace {
        &self.modulus
    }

    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    /// Canonical representative of the coset of `v`.
    pub fn reduce(&self, v: &BitVec) -> Result<BitVec, LinalgError> {
        if !self.ambient.contains(v) {
            return Err(LinalgError::NotInAmbient);
        }
        Ok(self.modulus.reduce(v))
    }

    /// Canonical representatives forming a basis of the quotient.
    pub fn basis(&self) -> &[BitVec] {
        self.complement.basis()
    }

    /// Coordinates of the class of `v` in [`Self::basis`].
    pub fn coordinates(&self, v: &BitVec) -> Result<BitVec, LinalgError> {
        let r = self.reduce(v)?;
        Ok(self
            .complement
            .coordinates(&r)
            .expect("reduced vector lies in the complement"))
    }
}

/// Reduces `v` modulo `q`; a free function mirror of [`QuotientPresentation::reduce`].
pub fn quotient_reduce(q: &QuotientPresentation, v: &BitVec) -> Result<BitVec, LinalgError> {
    q.reduce(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> BitVec {
        BitVec::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    #[test]
    fn echelon_invariants() {
        let s = Subspace::from_spanning(4, [v("0110"), v("1100"), v("1010")]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 1]);
        for (b, &p) in s.basis().iter().zip(s.pivots()) {
            assert_eq!(b.first_one(), Some(p));
            for (c, _) in s.basis().iter().zip(s.pivots()).filter(|(c, _)| *c != b) {
                assert!(!c.get(p));
            }
        }
    }

    #[test]
    fn quotient_trivial_cases() {
        let amb = Subspace::full(3);
        let m = Subspace::from_spanning(3, [v("110")]);
        let q = QuotientPresentation::new(amb.clone(), m).unwrap();
        assert!(q.reduce(&v("110")).unwrap().is_zero());
        assert_eq!(q.dim(), 2);
        let q0 = QuotientPresentation::new(amb, Subspace::zero(3)).unwrap();
        assert_eq!(q0.reduce(&v("101")).unwrap(), v("101"));
    }

    #[test]
    fn quotient_rejects_outside_vectors() {
        let amb = Subspace::from_spanning(3, [v("100")]);
        let q = QuotientPresentation::new(amb, Subspace::zero(3)).unwrap();
        assert_eq!(q.reduce(&v("010")), Err(LinalgError::NotInAmbient));
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::from_spanning(3, [v("100"), v("010")]);
        let b = Subspace::from_spanning(3, [v("110"), v("001")]);
        let i = a.intersection(&b);
        assert_eq!(i.basis(), &[v("110")]);
    }
}
