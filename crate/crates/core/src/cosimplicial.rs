//! Cosimplicial chain complexes, conormalization into bicomplexes, and total
//! complexes with their column filtration.

use crate::chains::ChainComplex;
use crate::simplicial::{conormal_bits, reduce_mod2, simp, CsRef, Simp};
use cosimp_gf2::{SpMat, SparseVec};
use std::collections::HashMap;
use std::sync::Arc;

/// A cosimplicial chain complex `Y^p_n` whose cofaces and codegeneracies send
/// basis elements to basis elements or zero.
pub trait CsChain: Send + Sync {
    fn name(&self) -> String;
    fn basis(&self, p: usize, n: usize) -> Vec<Simp>;
    /// `∂ : Y^p_n → Y^p_{n−1}` on a basis element, reduced mod 2.
    fn boundary(&self, p: usize, n: usize, x: &[u16]) -> Vec<Simp>;
    fn coface(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp>;
    fn codegeneracy(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp>;

    fn coface_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        if p == 0 {
            return 0;
        }
        let mut m = 0;
        for k in 0..=p {
            if let Some(y) = self.codegeneracy(p, n, k.saturating_sub(1), x) {
                if self.coface(p - 1, n, k, &y).as_deref() == Some(x) {
                    m |= 1 << k;
                }
            }
        }
        m
    }

    /// Basis of `C^p Y_n`: basis elements outside every `im d^k`, `k ≥ 1`.
    fn conormal_basis(&self, p: usize, n: usize) -> Vec<Simp> {
        let bits = conormal_bits(p);
        self.basis(p, n)
            .into_iter()
            .filter(|x| self.coface_mask(p, n, x) & bits == 0)
            .collect()
    }
}

pub type CsChainRef = Arc<dyn CsChain>;

/// `N𝕂X` degreewise.
#[derive(Clone)]
pub struct NormalizedChains {
    pub x: CsRef,
}

impl CsChain for NormalizedChains {
    fn name(&self) -> String {
        format!("N𝕂{}", self.x.name())
    }

    fn basis(&self, p: usize, n: usize) -> Vec<Simp> {
        self.x.nondegenerate(p, n)
    }

    fn boundary(&self, p: usize, n: usize, x: &[u16]) -> Vec<Simp> {
        if n == 0 {
            return Vec::new();
        }
        reduce_mod2(
            (0..=n)
                .filter_map(|i| self.x.face(p, n, i, x))
                .filter(|y| self.x.degeneracy_mask(p, n - 1, y) == 0)
                .collect(),
        )
    }

    fn coface(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        self.x.coface(p, n, k, x)
    }

    fn codegeneracy(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        self.x
            .codegeneracy(p, n, k, x)
            .filter(|y| self.x.degeneracy_mask(p - 1, n, y) == 0)
    }

    fn coface_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        self.x.coface_mask(p, n, x)
    }

    fn conormal_basis(&self, p: usize, n: usize) -> Vec<Simp> {
        self.x.cn_basis(p, n)
    }
}

/// Level-wise tensor `Y ⊗ Z` of cosimplicial chain complexes.
/// Basis `[j, len(a), a…, b…]` with `a ∈ Y_j`, `b ∈ Z_{n−j}`.
#[derive(Clone)]
pub struct TensorChain {
    pub y: CsChainRef,
    pub z: CsChainRef,
}

pub fn pack_graded(j: usize, a: &[u16], b: &[u16]) -> Simp {
    let mut s = Simp::with_capacity(a.len() + b.len() + 2);
    s.push(j as u16);
    s.push(a.len() as u16);
    s.extend_from_slice(a);
    s.extend_from_slice(b);
    s
}

pub fn split_graded(x: &[u16]) -> (usize, &[u16], &[u16]) {
    let j = x[0] as usize;
    let l = x[1] as usize;
    (j, &x[2..2 + l], &x[2 + l..])
}

impl CsChain for TensorChain {
    fn name(&self) -> String {
        format!("({}⊗{})", self.y.name(), self.z.name())
    }

    fn basis(&self, p: usize, n: usize) -> Vec<Simp> {
        let mut out = Vec::new();
        for j in 0..=n {
            let ys = self.y.basis(p, j);
            let zs = self.z.basis(p, n - j);
            for a in &ys {
                for b in &zs {
                    out.push(pack_graded(j, a, b));
                }
            }
        }
        out
    }

    fn boundary(&self, p: usize, n: usize, x: &[u16]) -> Vec<Simp> {
        let (j, a, b) = split_graded(x);
        let mut out = Vec::new();
        if j > 0 {
            for a2 in self.y.boundary(p, j, a) {
                out.push(pack_graded(j - 1, &a2, b));
            }
        }
        if n > j {
            for b2 in self.z.boundary(p, n - j, b) {
                out.push(pack_graded(j, a, &b2));
            }
        }
        reduce_mod2(out)
    }

    fn coface(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        let (j, a, b) = split_graded(x);
        Some(pack_graded(j, &self.y.coface(p, j, k, a)?, &self.z.coface(p, n - j, k, b)?))
    }

    fn codegeneracy(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        let (j, a, b) = split_graded(x);
        Some(pack_graded(
            j,
            &self.y.codegeneracy(p, j, k, a)?,
            &self.z.codegeneracy(p, n - j, k, b)?,
        ))
    }

    fn coface_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        let (j, a, b) = split_graded(x);
        self.y.coface_mask(p, j, a) & self.z.coface_mask(p, n - j, b)
    }

    fn conormal_basis(&self, p: usize, n: usize) -> Vec<Simp> {
        let bits = conormal_bits(p);
        let mut out = Vec::new();
        for j in 0..=n {
            let ys: Vec<(Simp, u64)> = self
                .y
                .basis(p, j)
                .into_iter()
                .map(|a| {
                    let m = self.y.coface_mask(p, j, &a);
                    (a, m)
                })
                .collect();
            let zs: Vec<(Simp, u64)> = self
                .z
                .basis(p, n - j)
                .into_iter()
                .map(|b| {
                    let m = self.z.coface_mask(p, n - j, &b);
                    (b, m)
                })
                .collect();
            for (a, ma) in &ys {
                for (b, mb) in &zs {
                    if ma & mb & bits == 0 {
                        out.push(pack_graded(j, a, b));
                    }
                }
            }
        }
        out
    }
}

/// `W ⊗_π (Y⊗Y)` degreewise. Basis `[i, j, len(a), a…, b…]` standing for
/// `e_i ⊗ a ⊗ b` with `a ∈ Y_j`.
#[derive(Clone)]
pub struct WOrbitChain {
    pub y: CsChainRef,
}

impl WOrbitChain {
    pub fn pack(i: usize, j: usize, a: &[u16], b: &[u16]) -> Simp {
        let mut s = Simp::with_capacity(a.len() + b.len() + 3);
        s.push(i as u16);
        s.extend_from_slice(&pack_graded(j, a, b));
        s
    }

    pub fn split(x: &[u16]) -> (usize, usize, &[u16], &[u16]) {
        let (j, a, b) = split_graded(&x[1..]);
        (x[0] as usize, j, a, b)
    }
}

impl CsChain for WOrbitChain {
    fn name(&self) -> String {
        format!("W⊗π{}²", self.y.name())
    }

    fn basis(&self, p: usize, n: usize) -> Vec<Simp> {
        let mut out = Vec::new();
        let per: Vec<Vec<Simp>> = (0..=n).map(|j| self.y.basis(p, j)).collect();
        for i in 0..=n {
            for j in 0..=n - i {
                for a in &per[j] {
                    for b in &per[n - i - j] {
                        out.push(Self::pack(i, j, a, b));
                    }
                }
            }
        }
        out
    }

    fn boundary(&self, p: usize, n: usize, x: &[u16]) -> Vec<Simp> {
        let (i, j, a, b) = Self::split(x);
        let k = n - i - j;
        let mut out = Vec::new();
        if i > 0 {
            out.push(Self::pack(i - 1, j, a, b));
            out.push(Self::pack(i - 1, k, b, a));
        }
        if j > 0 {
            for a2 in self.y.boundary(p, j, a) {
                out.push(Self::pack(i, j - 1, &a2, b));
            }
        }
        if k > 0 {
            for b2 in self.y.boundary(p, k, b) {
                out.push(Self::pack(i, j, a, &b2));
            }
        }
        reduce_mod2(out)
    }

    fn coface(&self, p: usize, n: usize, kk: usize, x: &[u16]) -> Option<Simp> {
        let (i, j, a, b) = Self::split(x);
        let k = n - i - j;
        Some(Self::pack(i, j, &self.y.coface(p, j, kk, a)?, &self.y.coface(p, k, kk, b)?))
    }

    fn codegeneracy(&self, p: usize, n: usize, kk: usize, x: &[u16]) -> Option<Simp> {
        let (i, j, a, b) = Self::split(x);
        let k = n - i - j;
        Some(Self::pack(
            i,
            j,
            &self.y.codegeneracy(p, j, kk, a)?,
            &self.y.codegeneracy(p, k, kk, b)?,
        ))
    }

    fn coface_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        let (i, j, a, b) = Self::split(x);
        self.y.coface_mask(p, j, a) & self.y.coface_mask(p, n - i - j, b)
    }

    fn conormal_basis(&self, p: usize, n: usize) -> Vec<Simp> {
        let bits = conormal_bits(p);
        let per: Vec<Vec<(Simp, u64)>> = (0..=n)
            .map(|j| {
                self.y
                    .basis(p, j)
                    .into_iter()
                    .map(|a| {
                        let m = self.y.coface_mask(p, j, &a);
                        (a, m)
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        for i in 0..=n {
            for j in 0..=n - i {
                for (a, ma) in &per[j] {
                    for (b, mb) in &per[n - i - j] {
                        if ma & mb & bits == 0 {
                            out.push(Self::pack(i, j, a, b));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Region of a truncated bicomplex where page entries agree with those of
/// the untruncated object.
///
/// Rows above `q_max` are missing and columns beyond `p_max` are discarded.
/// `E^r_{−p,q}` is exact when every differential `d^k`, `k < r`, leaving it
/// lands in a row below `q_max`; `E^∞` additionally needs every differential
/// that reaches `p_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralWindow {
    pub p_max: usize,
    pub q_max: usize,
}

impl SpectralWindow {
    pub fn exact_page(&self, p: usize, q: usize, r: usize) -> bool {
        p <= self.p_max && q < self.q_max && q + r <= self.q_max + 1
    }

    pub fn exact_infinity(&self, p: usize, q: usize) -> bool {
        p <= self.p_max && q + self.p_max < self.q_max + p + 1 && q < self.q_max
    }

    /// `H_m` of the total complex is exact when total degrees `m` and `m+1`
    /// are complete.
    pub fn exact_homology(&self, m: i64) -> bool {
        m + 1 + self.p_max as i64 <= self.q_max as i64
    }
}

/// A bicomplex `B_{−p,n}` with cells `p ≤ P`, `n ≤ Q`, each carrying basis
/// labels. `d_v` lowers `n`, `d_h` raises `p`.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    pub window: SpectralWindow,
    pub labels: Vec<Vec<Vec<Simp>>>,
    pub index: Vec<Vec<HashMap<Simp, usize>>>,
    /// `dv[p][n] : B_{p,n} → B_{p,n−1}`.
    pub dv: Vec<Vec<SpMat>>,
    /// `dh[p][n] : B_{p,n} → B_{p+1,n}` (no rows for `p = P`).
    pub dh: Vec<Vec<SpMat>>,
}

impl Bicomplex {
    pub fn p_max(&self) -> usize {
        self.window.p_max
    }

    pub fn q_max(&self) -> usize {
        self.window.q_max
    }

    pub fn dim(&self, p: usize, n: usize) -> usize {
        self.labels.get(p).and_then(|c| c.get(n)).map_or(0, |c| c.len())
    }

    pub fn vector(&self, p: usize, n: usize, terms: &[Simp]) -> SparseVec {
        SparseVec::from_indices(terms.iter().filter_map(|t| self.index[p][n].get(t).copied()))
    }

    /// Column `p` as a chain complex under `d_v`.
    pub fn column(&self, p: usize) -> ChainComplex {
        ChainComplex::new(
            (0..=self.q_max()).map(|n| self.dim(p, n)).collect(),
            self.dv[p].clone(),
        )
    }

    /// First failure of `d_v² = 0`, `d_h² = 0` or `d_h d_v = d_v d_h`.
    pub fn relation_failure(&self) -> Option<(&'static str, usize, usize)> {
        let (pm, qm) = (self.p_max(), self.q_max());
        for p in 0..=pm {
            for n in 0..=qm {
                if n >= 2 && !self.dv[p][n - 1].compose(&self.dv[p][n]).is_zero() {
                    return Some(("dv²", p, n));
                }
                if p + 2 <= pm && !self.dh[p + 1][n].compose(&self.dh[p][n]).is_zero() {
                    return Some(("dh²", p, n));
                }
                if p < pm && n >= 1 {
                    let a = self.dv[p + 1][n].compose(&self.dh[p][n]);
                    let b = self.dh[p][n - 1].compose(&self.dv[p][n]);
                    if a != b {
                        return Some(("dhdv", p, n));
                    }
                }
            }
        }
        None
    }

    /// `T_ℓ`: the bicomplex restricted to columns `p ≤ ℓ`.
    pub fn truncate_columns(&self, ell: usize) -> Bicomplex {
        let ell = ell.min(self.p_max());
        let mut b = Bicomplex {
            window: SpectralWindow {
                p_max: ell,
                q_max: self.q_max(),
            },
            labels: self.labels[..=ell].to_vec(),
            index: self.index[..=ell].to_vec(),
            dv: self.dv[..=ell].to_vec(),
            dh: self.dh[..=ell].to_vec(),
        };
        b.dh[ell] = (0..=self.q_max()).map(|n| SpMat::zeros(0, self.dim(ell, n))).collect();
        b
    }
}

/// `C Y`: cokernel of `d¹ … d^p` in each degree, `d_h` induced by `d⁰`.
pub fn conormalize(y: &dyn CsChain, p_max: usize, q_max: usize) -> Bicomplex {
    let labels: Vec<Vec<Vec<Simp>>> = (0..=p_max)
        .map(|p| (0..=q_max).map(|n| y.conormal_basis(p, n)).collect())
        .collect();
    from_labels(labels, p_max, q_max, |p, n, x| y.boundary(p, n, x), |p, n, x| y.coface(p, n, 0, x))
}

/// Assembles a bicomplex from cell bases and the two structure maps.
pub fn from_labels(
    labels: Vec<Vec<Vec<Simp>>>,
    p_max: usize,
    q_max: usize,
    vertical: impl Fn(usize, usize, &[u16]) -> Vec<Simp> + Sync,
    horizontal: impl Fn(usize, usize, &[u16]) -> Option<Simp> + Sync,
) -> Bicomplex {
    let index: Vec<Vec<HashMap<Simp, usize>>> = labels
        .iter()
        .map(|col| {
            col.iter()
                .map(|cell| cell.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
                .collect()
        })
        .collect();
    let mut dv = Vec::new();
    let mut dh = Vec::new();
    for p in 0..=p_max {
        let mut dvp = Vec::new();
        let mut dhp = Vec::new();
        for n in 0..=q_max {
            let cell = &labels[p][n];
            let rows = if n == 0 { 0 } else { labels[p][n - 1].len() };
            let cols: Vec<SparseVec> = if n == 0 {
                vec![SparseVec::new(); cell.len()]
            } else {
                cell.iter()
                    .map(|x| {
                        SparseVec::from_indices(
                            vertical(p, n, x).iter().filter_map(|t| index[p][n - 1].get(t).copied()),
                        )
                    })
                    .collect()
            };
            dvp.push(SpMat::new(rows, cols));
            let (rows, cols) = if p < p_max {
                (
                    labels[p + 1][n].len(),
                    cell.iter()
                        .map(|x| {
                            SparseVec::from_indices(horizontal(p, n, x).and_then(|t| index[p + 1][n].get(&t).copied()))
                        })
                        .collect(),
                )
            } else {
                (0, vec![SparseVec::new(); cell.len()])
            };
            dhp.push(SpMat::new(rows, cols));
        }
        dv.push(dvp);
        dh.push(dhp);
    }
    Bicomplex {
        window: SpectralWindow { p_max, q_max },
        labels,
        index,
        dv,
        dh,
    }
}

/// `CN𝕂X` for a cosimplicial simplicial set.
pub fn cn(x: CsRef, p_max: usize, q_max: usize) -> Bicomplex {
    conormalize(&NormalizedChains { x }, p_max, q_max)
}

/// `csm_tensor`: the level-wise smash product `𝕂X ⊗ 𝕂X′ = 𝕂(X∧X′)`.
pub fn csm_tensor(x: CsRef, y: CsRef) -> CsRef {
    Arc::new(crate::simplicial::Product::new(x, y))
}

/// A filtered chain complex with basis elements tagged by column `p`
/// (`F^{−s}` is spanned by basis elements with `p ≥ s`).
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    /// Lowest total degree present.
    pub lo: i64,
    /// Per total degree `lo, lo+1, …`: column of each basis element.
    pub columns: Vec<Vec<usize>>,
    /// `d[m−lo] : C_m → C_{m−1}`; the lowest degree has no rows.
    pub d: Vec<SpMat>,
    pub window: SpectralWindow,
}

impl FilteredComplex {
    pub fn hi(&self) -> i64 {
        self.lo + self.columns.len() as i64 - 1
    }

    pub fn dim(&self, m: i64) -> usize {
        if m < self.lo || m > self.hi() {
            0
        } else {
            self.columns[(m - self.lo) as usize].len()
        }
    }

    pub fn col_of(&self, m: i64, i: usize) -> usize {
        self.columns[(m - self.lo) as usize][i]
    }

    pub fn boundary(&self, m: i64, v: &SparseVec) -> SparseVec {
        if m <= self.lo || m > self.hi() {
            SparseVec::new()
        } else {
            self.d[(m - self.lo) as usize].mul_vec(v)
        }
    }

    pub fn is_differential(&self) -> bool {
        (2..self.d.len()).all(|k| self.d[k - 1].compose(&self.d[k]).is_zero())
    }

    /// Whether `∂F^{−s} ⊆ F^{−s}` holds for every basis element.
    pub fn filtration_preserved(&self) -> bool {
        (1..self.d.len()).all(|k| {
            let m = self.lo + k as i64;
            (0..self.dim(m)).all(|i| {
                let c = self.col_of(m, i);
                self.d[k].col(i).iter().all(|j| self.col_of(m - 1, j) >= c)
            })
        })
    }

    /// The least column index present in `v`, or `None` for zero.
    pub fn filtration_of(&self, m: i64, v: &SparseVec) -> Option<usize> {
        v.iter().map(|i| self.col_of(m, i)).min()
    }
}

/// Direct-sum total complex of the whole (truncated) bicomplex.
pub fn total(b: &Bicomplex) -> (FilteredComplex, TotalIndex) {
    let (pm, qm) = (b.p_max() as i64, b.q_max() as i64);
    let lo = -pm;
    let hi = qm;
    let mut columns = Vec::new();
    let mut offsets: Vec<HashMap<(usize, usize), usize>> = Vec::new();
    for m in lo..=hi {
        let mut cols = Vec::new();
        let mut off = HashMap::new();
        for p in 0..=pm {
            let n = m + p;
            if n < 0 || n > qm {
                continue;
            }
            off.insert((p as usize, n as usize), cols.len());
            cols.extend(std::iter::repeat_n(p as usize, b.dim(p as usize, n as usize)));
        }
        columns.push(cols);
        offsets.push(off);
    }
    let mut d = Vec::new();
    for m in lo..=hi {
        let k = (m - lo) as usize;
        let rows = if k == 0 { 0 } else { columns[k - 1].len() };
        let mut cols = vec![SparseVec::new(); columns[k].len()];
        if k > 0 {
            for (&(p, n), &o) in &offsets[k] {
                for i in 0..b.dim(p, n) {
                    let mut v = Vec::new();
                    if n > 0 {
                        let o2 = offsets[k - 1][&(p, n - 1)];
                        v.extend(b.dv[p][n].col(i).iter().map(|r| r + o2));
                    }
                    if p < b.p_max() {
                        if let Some(&o2) = offsets[k - 1].get(&(p + 1, n)) {
                            v.extend(b.dh[p][n].col(i).iter().map(|r| r + o2));
                        }
                    }
                    cols[o + i] = SparseVec::from_indices(v);
                }
            }
        }
        d.push(SpMat::new(rows, cols));
    }
    (
        FilteredComplex {
            lo,
            columns,
            d,
            window: b.window,
        },
        TotalIndex { lo, offsets },
    )
}

/// Position of bicomplex cells inside the total complex.
#[derive(Clone, Debug)]
pub struct TotalIndex {
    pub lo: i64,
    pub offsets: Vec<HashMap<(usize, usize), usize>>,
}

impl TotalIndex {
    pub fn offset(&self, p: usize, n: usize) -> Option<usize> {
        let m = n as i64 - p as i64;
        self.offsets.get((m - self.lo) as usize)?.get(&(p, n)).copied()
    }
}

/// A chain of the total complex given cellwise: `(p, n, vector)`.
pub type CellChain = Vec<(usize, usize, SparseVec)>;

/// Collapses a list of labeled terms `(p, n, label)` into per-cell vectors,
/// dropping labels that are not basis elements.
pub fn cell_chain(b: &Bicomplex, terms: &[(usize, usize, Simp)]) -> CellChain {
    let mut by_cell: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (p, n, x) in terms {
        if *p > b.p_max() || *n > b.q_max() {
            continue;
        }
        if let Some(&i) = b.index[*p][*n].get(x) {
            by_cell.entry((*p, *n)).or_default().push(i);
        }
    }
    let mut out: CellChain = by_cell
        .into_iter()
        .map(|((p, n), v)| (p, n, SparseVec::from_indices(v)))
        .filter(|(_, _, v)| !v.is_zero())
        .collect();
    out.sort_by_key(|(p, n, _)| (*p, *n));
    out
}

/// Cosimplicial Alexander–Whitney `C(Y)^a ⊗ C(Z)^b → C(Y⊗Z)^{a+b}`:
/// `y ⊗ z ↦ d^{a+b}⋯d^{a+1} y ⊗ d^{a−1}⋯d^0 z`.
#[allow(clippy::too_many_arguments)]
pub fn caw_cosimplicial(
    y: &dyn CsChain,
    z: &dyn CsChain,
    a: usize,
    j: usize,
    u: &[u16],
    b: usize,
    k: usize,
    v: &[u16],
) -> Option<(usize, Simp)> {
    let mut cu = simp(u);
    for (deg, kk) in (a..).zip(a + 1..=a + b) {
        cu = y.coface(deg, j, kk, &cu)?;
    }
    let mut cv = simp(v);
    for (deg, kk) in (b..).zip(0..a) {
        cv = z.coface(deg, k, kk, &cv)?;
    }
    Some((a + b, pack_graded(j, &cu, &cv)))
}

/// Cosimplicial shuffle `C(Y⊗Z)^p → ⊕ C(Y)^a ⊗ C(Z)^{p−a}`, summed over the
/// supplied shuffles; returns `(a, y-part, z-part)` terms.
pub fn cshuffle_cosimplicial(
    y: &dyn CsChain,
    z: &dyn CsChain,
    p: usize,
    n: usize,
    x: &[u16],
    shuffles: &dyn Fn(usize, usize) -> Vec<cosimp_delta::Shuffle>,
) -> Vec<(usize, Simp, Simp)> {
    let (j, u, v) = split_graded(x);
    let mut out = Vec::new();
    for a in 0..=p {
        for tau in shuffles(a, p - a) {
            let (wa, wb) = cosimp_delta::nabla_words(&tau);
            let Some(yu) = push_codegeneracies(y, p, j, wa.values(), u) else {
                continue;
            };
            let Some(zv) = push_codegeneracies(z, p, n - j, wb.values(), v) else {
                continue;
            };
            out.push((a, yu, zv));
        }
    }
    out
}

/// Applies the codegeneracies of a surjection `θ : [p] → [a]`, highest repeat first.
pub fn push_codegeneracies(y: &dyn CsChain, p: usize, n: usize, theta: &[usize], x: &[u16]) -> Option<Simp> {
    let mut cur = simp(x);
    let mut deg = p;
    for i in (0..theta.len() - 1).rev() {
        if theta[i] == theta[i + 1] {
            cur = y.codegeneracy(deg, n, i, &cur)?;
            deg -= 1;
        }
    }
    Some(cur)
}

/// Convenience: the conormalized normalized chains of `X`.
pub fn cs_normalized(x: CsRef) -> CsChainRef {
    Arc::new(NormalizedChains { x })
}

pub fn cs_tensor(y: CsChainRef, z: CsChainRef) -> CsChainRef {
    Arc::new(TensorChain { y, z })
}

pub fn w_orbit_chain(y: CsChainRef) -> CsChainRef {
    Arc::new(WOrbitChain { y })
}


/// Sums labeled terms of a single total degree into a vector of the total
/// complex. Terms outside the window are dropped; a term inside it that is not
/// a basis label is an error.
pub fn total_vector(b: &Bicomplex, idx: &TotalIndex, terms: &[(usize, usize, Simp)]) -> Result<SparseVec, crate::CoreError> {
    let mut out = Vec::new();
    for (p, n, x) in terms {
        if *p > b.p_max() || *n > b.q_max() {
            continue;
        }
        let i = b.index[*p][*n]
            .get(x)
            .ok_or_else(|| crate::CoreError::Inconsistent(format!("{x:?} is not a basis label at ({p},{n})")))?;
        out.push(idx.offset(*p, *n).expect("cell inside the window") + i);
    }
    Ok(SparseVec::from_indices(out))
}
