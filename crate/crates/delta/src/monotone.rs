use crate::DeltaError;
use std::fmt;

/// A monotone map `[source] → [target]`, stored by its values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    target: usize,
    values: Vec<usize>,
}

/// A generating operator of the simplex category, written in the cosimplicial
/// convention: `Coface(i)` is δⁱ (skip `i`), `Codegeneracy(j)` is σʲ (hit `j` twice).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Coface(usize),
    Codegeneracy(usize),
}

impl MonotoneMap {
    pub fn new(values: Vec<usize>, target: usize) -> Result<Self, DeltaError> {
        if values.is_empty()
            || values.windows(2).any(|w| w[0] > w[1])
            || values.iter().any(|&v| v > target)
        {
            return Err(DeltaError::NotMonotone { values, target });
        }
        Ok(MonotoneMap { target, values })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap {
            target: n,
            values: (0..=n).collect(),
        }
    }

    /// δⁱ: `[n−1] → [n]`, missing the value `i`.
    ///
    /// # Panics
    /// Panics unless `1 ≤ n` and `i ≤ n`.
    pub fn coface(i: usize, n: usize) -> Self {
        assert!(n >= 1 && i <= n, "coface d^{i} into [{n}] undefined");
        MonotoneMap {
            target: n,
            values: (0..n).map(|v| if v < i { v } else { v + 1 }).collect(),
        }
    }

    /// σʲ: `[n+1] → [n]`, hitting `j` twice.
    ///
    /// # Panics
    /// Panics unless `j ≤ n`.
    pub fn codegeneracy(j: usize, n: usize) -> Self {
        assert!(j <= n, "codegeneracy s^{j} onto [{n}] undefined");
        MonotoneMap {
            target: n,
            values: (0..=n + 1).map(|v| if v <= j { v } else { v - 1 }).collect(),
        }
    }

    pub fn from_op(op: Op, n: usize) -> Result<Self, DeltaError> {
        match op {
            Op::Coface(i) if n >= 1 && i <= n => Ok(Self::coface(i, n)),
            Op::Codegeneracy(j) if j <= n => Ok(Self::codegeneracy(j, n)),
            _ => Err(DeltaError::BadOperator { op, n }),
        }
    }

    #[inline]
    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    #[inline]
    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &MonotoneMap) -> Result<MonotoneMap, DeltaError> {
        if self.target != g.source() {
            return Err(DeltaError::Endpoints {
                a: self.source(),
                b: self.target,
                c: g.source(),
            });
        }
        Ok(MonotoneMap {
            target: g.target,
            values: self.values.iter().map(|&v| g.values[v]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Number of distinct values.
    pub fn image_size(&self) -> usize {
        1 + self.values.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Unique factorization `self = (coface word) ∘ (codegeneracy word)`.
    ///
    /// The codegeneracy word is `σ^{j₁}∘⋯∘σ^{j_t}` with `j₁ < ⋯ < j_t`, listing
    /// the positions `j` with `f(j) = f(j+1)`; the coface word is
    /// `δ^{i_s}∘⋯∘δ^{i₁}` with `i_s > ⋯ > i₁`, listing the values not hit.
    /// Both words are returned left-to-right as written.
    pub fn epi_mono_factorize(&self) -> (Vec<Op>, Vec<Op>) {
        let degens = (0..self.source())
            .filter(|&j| self.values[j] == self.values[j + 1])
            .map(Op::Codegeneracy)
            .collect();
        let faces = (0..=self.target)
            .rev()
            .filter(|v| !self.values.contains(v))
            .map(Op::Coface)
            .collect();
        (degens, faces)
    }

    /// Evaluates a word written left to right, acting on `[source]`.
    pub fn from_word(word: &[Op], source: usize) -> Result<MonotoneMap, DeltaError> {
        let mut m = MonotoneMap::identity(source);
        for &op in word.iter().rev() {
            let n = m.target();
            let g = match op {
                Op::Coface(_) => MonotoneMap::from_op(op, n + 1)?,
                Op::Codegeneracy(_) => {
                    if n == 0 {
                        return Err(DeltaError::BadOperator { op, n });
                    }
                    MonotoneMap::from_op(op, n - 1)?
                }
            };
            m = m.then(&g)?;
        }
        Ok(m)
    }
}

/// `g ∘ f`, requiring `target(f) = source(g)`.
pub fn compose(f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap, DeltaError> {
    f.then(g)
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]→[{}]{:?}", self.source(), self.target, self.values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplicial_identity_on_point() {
        let d0 = MonotoneMap::coface(0, 1);
        let s0 = MonotoneMap::codegeneracy(0, 0);
        assert_eq!(d0.then(&s0).unwrap(), MonotoneMap::identity(0));
    }

    #[test]
    fn d2_after_d0() {
        let m = MonotoneMap::coface(0, 1).then(&MonotoneMap::coface(2, 2)).unwrap();
        assert_eq!(m.values(), &[1]);
    }

    #[test]
    fn factorization_of_0_0_2() {
        let f = MonotoneMap::new(vec![0, 0, 2], 2).unwrap();
        let (s, d) = f.epi_mono_factorize();
        assert_eq!(s, vec![Op::Codegeneracy(0)]);
        assert_eq!(d, vec![Op::Coface(1)]);
        let mut word = d.clone();
        word.extend(s);
        assert_eq!(MonotoneMap::from_word(&word, 2).unwrap(), f);
    }

    #[test]
    fn identity_factorizes_trivially() {
        let (s, d) = MonotoneMap::identity(3).epi_mono_factorize();
        assert!(s.is_empty() && d.is_empty());
    }

    #[test]
    fn rejects_mismatched_composition() {
        let f = MonotoneMap::identity(1);
        let g = MonotoneMap::identity(2);
        assert!(f.then(&g).is_err());
    }
}
