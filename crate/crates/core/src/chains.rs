//! Chain complexes over 𝔽₂, the complexes `W` and `W̄`, and the external
//! operations `q^m`.

use crate::simplicial::{reduce_mod2, SModule, Simp};
use crate::CoreError;
use cosimp_gf2::{BitMatrix, BitVec, ColumnReduction, QuotientPresentation, SpMat, SparseVec, Subspace};
use std::collections::{HashMap, HashSet};

/// A bounded chain complex `C_0 … C_top` with sparse differentials.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    /// `d[n] : C_n → C_{n−1}`; `d[0]` has no rows.
    pub d: Vec<SpMat>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, d: Vec<SpMat>) -> Self {
        assert_eq!(dims.len(), d.len());
        ChainComplex { dims, d }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn boundary(&self, n: usize, v: &SparseVec) -> SparseVec {
        if n == 0 || n > self.top() {
            SparseVec::new()
        } else {
            self.d[n].mul_vec(v)
        }
    }

    pub fn is_differential(&self) -> bool {
        (2..=self.top()).all(|n| self.d[n - 1].compose(&self.d[n]).is_zero())
    }

    /// `H_n` as `ker ∂_n / im ∂_{n+1}`, dense. Requires `n < top`.
    pub fn homology(&self, n: usize) -> Result<QuotientPresentation, CoreError> {
        if n >= self.top() {
            return Err(CoreError::OutOfRange(n));
        }
        let ker = if n == 0 {
            Subspace::full(self.dim(0))
        } else {
            self.d[n].to_dense().kernel_basis()
        };
        let im = self.d[n + 1].to_dense().column_space();
        QuotientPresentation::new(ker, im).map_err(|e| CoreError::Inconsistent(e.to_string()))
    }

    pub fn homology_data(&self) -> HomologyData {
        HomologyData::new(self)
    }
}

/// Contraction data `(f, g, h)` from a chain complex onto its homology,
/// obtained from column reductions of every differential.
///
/// With `C_n = A_n ⊕ H_n ⊕ B_n` (`B` boundaries, `H ⊕ B` cycles), `g`
/// includes the chosen representatives, `f` projects along `A ⊕ B`, and `h`
/// inverts `∂ : A_{n+1} → B_n` and vanishes on `A ⊕ H`.
#[derive(Clone, Debug)]
pub struct HomologyData {
    top: usize,
    red: Vec<ColumnReduction>,
    essential: Vec<Vec<usize>>,
    essential_pos: Vec<HashMap<usize, usize>>,
}

impl HomologyData {
    pub fn new(c: &ChainComplex) -> Self {
        let top = c.top();
        let mut red: Vec<Option<ColumnReduction>> = vec![None; top + 1];
        let mut cleared: Vec<bool> = Vec::new();
        for n in (0..=top).rev() {
            let dn = if n == 0 { SpMat::zeros(0, c.dim(0)) } else { c.d[n].clone() };
            let r = ColumnReduction::with_cleared(&dn, &cleared);
            cleared = vec![false; c.dim(n.saturating_sub(1))];
            if n > 0 {
                for j in 0..r.ncols() {
                    if let Some(l) = r.reduced_col(j).low() {
                        cleared[l] = true;
                    }
                }
            }
            red[n] = Some(r);
        }
        let red: Vec<ColumnReduction> = red.into_iter().map(|r| r.unwrap()).collect();
        let mut essential = Vec::new();
        let mut essential_pos = Vec::new();
        for n in 0..=top {
            let lows: HashSet<usize> = if n < top {
                (0..red[n + 1].ncols()).filter_map(|k| red[n + 1].reduced_col(k).low()).collect()
            } else {
                HashSet::new()
            };
            let e: Vec<usize> = (0..red[n].ncols())
                .filter(|&j| red[n].reduced_col(j).is_zero() && !red[n].v_col(j).is_zero() && !lows.contains(&j))
                .collect();
            essential_pos.push(e.iter().enumerate().map(|(i, &j)| (j, i)).collect());
            essential.push(e);
        }
        HomologyData {
            top,
            red,
            essential,
            essential_pos,
        }
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `dim H_n`; the top degree counts cycles only.
    pub fn betti(&self, n: usize) -> usize {
        self.essential.get(n).map_or(0, |e| e.len())
    }

    /// Representative cycle of the `k`-th class in degree `n`.
    pub fn rep(&self, n: usize, k: usize) -> SparseVec {
        self.red[n].v_col(self.essential[n][k]).clone()
    }

    /// `(f(c), h(c))` for a chain `c ∈ C_n`.
    pub fn split(&self, n: usize, c: &SparseVec) -> (SparseVec, SparseVec) {
        let mut z = c.clone();
        if n > 0 {
            let dc = self.red[n].reduced_image_of(c);
            let a = self.red[n].solve(&dc).expect("boundary of a chain lies in the image");
            z.add_assign(&a);
        }
        let mut coords = Vec::new();
        let mut h = SparseVec::new();
        while let Some(j) = z.low() {
            if let Some(&pos) = self.essential_pos[n].get(&j) {
                z.add_assign(self.red[n].v_col(j));
                coords.push(pos);
            } else {
                let k = self.red[n + 1]
                    .col_with_low(j)
                    .expect("cycle decomposes over representatives and boundaries");
                z.add_assign(self.red[n + 1].reduced_col(k));
                h.add_assign(self.red[n + 1].v_col(k));
            }
        }
        (SparseVec::from_indices(coords), h)
    }

    /// Homology class of a cycle.
    pub fn class_of(&self, n: usize, z: &SparseVec) -> SparseVec {
        self.split(n, z).0
    }

    /// A chain `b` with `∂b = c` when `c` is a boundary.
    pub fn preimage(&self, n: usize, c: &SparseVec) -> Option<SparseVec> {
        let (f, h) = self.split(n, c);
        (f.is_zero() && self.red.get(n).is_some()).then_some(h)
    }
}

/// Basis index of `a ⊗ b` in `(C⊗D)_n`, listed by `i = |a|` ascending.
#[derive(Clone, Debug)]
pub struct TensorIndex {
    pub offsets: Vec<Vec<usize>>,
}

impl TensorIndex {
    pub fn new(c: &ChainComplex, d: &ChainComplex, top: usize) -> Self {
        let offsets = (0..=top)
            .map(|n| {
                let mut acc = 0;
                (0..=n)
                    .map(|i| {
                        let o = acc;
                        acc += c.dim(i) * d.dim(n - i);
                        o
                    })
                    .collect()
            })
            .collect();
        TensorIndex { offsets }
    }
}

/// `C ⊗ D` truncated at the smaller top degree.
pub fn cc_tensor(c: &ChainComplex, d: &ChainComplex) -> ChainComplex {
    let top = c.top().min(d.top());
    let idx = TensorIndex::new(c, d, top);
    let at = |n: usize, i: usize, a: usize, b: usize| idx.offsets[n][i] + a * d.dim(n - i) + b;
    let mut dims = Vec::new();
    let mut mats = Vec::new();
    for n in 0..=top {
        let dim: usize = (0..=n).map(|i| c.dim(i) * d.dim(n - i)).sum();
        dims.push(dim);
        let mut cols = Vec::with_capacity(dim);
        for i in 0..=n {
            for a in 0..c.dim(i) {
                for b in 0..d.dim(n - i) {
                    let mut out = Vec::new();
                    if i > 0 {
                        for a2 in c.d[i].col(a).iter() {
                            out.push(at(n - 1, i - 1, a2, b));
                        }
                    }
                    if n - i > 0 {
                        for b2 in d.d[n - i].col(b).iter() {
                            out.push(at(n - 1, i, a, b2));
                        }
                    }
                    cols.push(SparseVec::from_indices(out));
                }
            }
        }
        let rows = if n == 0 { 0 } else { dims[n - 1] };
        mats.push(SpMat::new(rows, cols));
    }
    ChainComplex::new(dims, mats)
}

/// The complex `W`: basis `e_i, σe_i` in degree `i` (indices `0, 1`),
/// `∂e_i = (1+σ)e_{i−1}`.
#[derive(Clone, Debug)]
pub struct WComplex {
    pub complex: ChainComplex,
}

impl WComplex {
    pub fn new(top: usize) -> Self {
        let mut d = vec![SpMat::zeros(0, 2)];
        for _ in 1..=top {
            let both = SparseVec::from_indices([0, 1]);
            d.push(SpMat::new(2, vec![both.clone(), both]));
        }
        WComplex {
            complex: ChainComplex::new(vec![2; top + 1], d),
        }
    }

    pub fn sigma(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_indices(v.iter().map(|i| i ^ 1))
    }
}

/// `W̄ = W ⊗_π 𝔽₂`: one generator `ē_i` per degree, zero differential.
pub fn w_bar(top: usize) -> ChainComplex {
    let d = (0..=top)
        .map(|n| SpMat::zeros(if n == 0 { 0 } else { 1 }, 1))
        .collect();
    ChainComplex::new(vec![1; top + 1], d)
}

/// `ψ_W(e_m) = Σ_{i+j=m} e_i ⊗ σ^i e_j`, as pairs `((i, w), (j, w′))` with
/// `w, w′ ∈ {0 = e, 1 = σe}`. Applied to `σe_m` it is conjugated by σ⊗σ.
pub fn psi_w(m: usize, sigma: bool) -> Vec<((usize, usize), (usize, usize))> {
    let s = sigma as usize;
    (0..=m)
        .map(|i| ((i, s), (m - i, (i % 2) ^ s)))
        .collect()
}

/// `ψ_W̄(ē_m) = Σ ē_i ⊗ ē_j`.
pub fn psi_w_bar(m: usize) -> Vec<(usize, usize)> {
    (0..=m).map(|i| (i, m - i)).collect()
}

/// `W ⊗_π (C⊗C)` with basis `e_i ⊗ a ⊗ b`, one representative per free orbit.
#[derive(Clone, Debug)]
pub struct WTensorPi {
    pub complex: ChainComplex,
    /// `(i, |a|, a, b)` per basis index, per degree.
    pub basis: Vec<Vec<(usize, usize, usize, usize)>>,
    pub index: Vec<HashMap<(usize, usize, usize, usize), usize>>,
}

pub fn w_tensor_pi(c: &ChainComplex, top: usize) -> WTensorPi {
    let top = top.min(c.top());
    let mut basis = Vec::new();
    let mut index = Vec::new();
    for n in 0..=top {
        let mut b = Vec::new();
        for i in 0..=n {
            for j in 0..=n - i {
                let k = n - i - j;
                for a in 0..c.dim(j) {
                    for bb in 0..c.dim(k) {
                        b.push((i, j, a, bb));
                    }
                }
            }
        }
        index.push(b.iter().cloned().enumerate().map(|(x, y)| (y, x)).collect::<HashMap<_, _>>());
        basis.push(b);
    }
    let mut mats = vec![SpMat::zeros(0, basis[0].len())];
    for n in 1..=top {
        let mut cols = Vec::new();
        for &(i, j, a, b) in &basis[n] {
            let k = n - i - j;
            let mut out = Vec::new();
            if i > 0 {
                out.push(index[n - 1][&(i - 1, j, a, b)]);
                out.push(index[n - 1][&(i - 1, k, b, a)]);
            }
            if j > 0 {
                for a2 in c.d[j].col(a).iter() {
                    out.push(index[n - 1][&(i, j - 1, a2, b)]);
                }
            }
            if k > 0 {
                for b2 in c.d[k].col(b).iter() {
                    out.push(index[n - 1][&(i, j, a, b2)]);
                }
            }
            cols.push(SparseVec::from_indices(out));
        }
        mats.push(SpMat::new(basis[n - 1].len(), cols));
    }
    let dims = basis.iter().map(|b| b.len()).collect();
    WTensorPi {
        complex: ChainComplex::new(dims, mats),
        basis,
        index,
    }
}

impl WTensorPi {
    /// Class of `w ⊗ a ⊗ b` for `w ∈ {e_i, σe_i}`, using `σe_i⊗a⊗b = e_i⊗b⊗a`.
    pub fn element(&self, i: usize, sigma: bool, j: usize, a: usize, k: usize, b: usize) -> Option<usize> {
        let n = i + j + k;
        let key = if sigma { (i, k, b, a) } else { (i, j, a, b) };
        self.index.get(n)?.get(&key).copied()
    }

    /// `e_i ⊗ x ⊗ y` for chains `x ∈ C_j`, `y ∈ C_k`.
    pub fn tensor(&self, i: usize, sigma: bool, j: usize, x: &SparseVec, k: usize, y: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for a in x.iter() {
            for b in y.iter() {
                if let Some(ix) = self.element(i, sigma, j, a, k, b) {
                    out.push(ix);
                }
            }
        }
        SparseVec::from_indices(out)
    }
}

/// `q^m(c) = e_{m−|c|} ⊗ c ⊗ c + e_{m−|c|+1} ⊗ c ⊗ ∂c`, evaluated on the
/// chain itself (the operation is not additive).
pub fn qm_external(c: &ChainComplex, w: &WTensorPi, m: usize, n: usize, x: &SparseVec) -> Result<SparseVec, CoreError> {
    if n + m > w.complex.top() || n > c.top() {
        return Err(CoreError::OutOfRange(n + m));
    }
    let mut out = SparseVec::new();
    if m >= n {
        out.add_assign(&w.tensor(m - n, false, n, x, n, x));
    }
    if m + 1 >= n && n > 0 {
        let dx = c.boundary(n, x);
        out.add_assign(&w.tensor(m + 1 - n, false, n, x, n - 1, &dx));
    }
    Ok(out)
}

/// `N M` of a lazy simplicial module with its basis labels.
#[derive(Clone, Debug)]
pub struct LabeledComplex {
    pub complex: ChainComplex,
    pub labels: Vec<Vec<Simp>>,
    pub index: Vec<HashMap<Simp, usize>>,
}

impl LabeledComplex {
    pub fn from_parts(labels: Vec<Vec<Simp>>, boundary: impl Fn(usize, &Simp) -> Vec<Simp>) -> Self {
        let index: Vec<HashMap<Simp, usize>> = labels
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let mut d = vec![SpMat::zeros(0, labels[0].len())];
        for n in 1..labels.len() {
            let cols = labels[n]
                .iter()
                .map(|x| SparseVec::from_indices(boundary(n, x).iter().filter_map(|y| index[n - 1].get(y).copied())))
                .collect();
            d.push(SpMat::new(labels[n - 1].len(), cols));
        }
        let dims = labels.iter().map(|l| l.len()).collect();
        LabeledComplex {
            complex: ChainComplex::new(dims, d),
            labels,
            index,
        }
    }

    /// Sparse vector of the terms that are basis elements; others are dropped.
    pub fn vector(&self, n: usize, terms: &[Simp]) -> SparseVec {
        SparseVec::from_indices(terms.iter().filter_map(|t| self.index[n].get(t).copied()))
    }

    pub fn terms(&self, n: usize, v: &SparseVec) -> Vec<Simp> {
        v.iter().map(|i| self.labels[n][i].clone()).collect()
    }
}

/// `N M` with `∂ = Σ d_i`, degenerate terms discarded.
pub fn normalize(m: &dyn SModule, top: usize) -> LabeledComplex {
    let labels: Vec<Vec<Simp>> = (0..=top).map(|n| m.nondegenerate(n)).collect();
    LabeledComplex::from_parts(labels, |n, x| {
        reduce_mod2((0..=n).flat_map(|i| m.face(n, i, x)).collect())
    })
}

/// Dense matrix of a linear map given on basis vectors.
pub fn dense_of(rows: usize, cols: &[SparseVec]) -> BitMatrix {
    let bits: Vec<BitVec> = cols.iter().map(|c| c.to_bitvec(rows)).collect();
    BitMatrix::from_cols(rows, &bits)
}
