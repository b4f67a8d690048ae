//! `Tot` of a cosimplicial simplicial module.
//!
//! An element of `Tot_k V` is a map `𝕂(Δ^• × Δ^k) → V`. Both sides are
//! determined by their conormalized normalized bicomplexes, so an element is
//! stored as a bicomplex map `CN𝕂(sk_ℓΔ^• × Δ^k) → CN V` and its values on
//! arbitrary simplices are rebuilt on demand. The Moore complex `N Tot` is
//! solved level by level; the full simplicial module is its Dold–Kan image.

use crate::chains::ChainComplex;
use crate::cosimplicial::{cn, Bicomplex};
use crate::simplicial::{
    apply_faces, conormal_bits, faces_of_sum, reduce_mod2, Constant, CsRef, CsSet, HomotopyOrbits, Product, SModule, Simp,
    StandardCosimplicial,
};
use crate::CoreError;
use cosimp_delta::{enumerate_shuffles, nabla_words, Shuffle};
use cosimp_gf2::{ColumnReduction, SpMat, SparseVec};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// `sk_ℓΔ^• × Δ^k`, the representing object of `Tot^ℓ_k`.
pub fn tot_source(ell: usize, k: usize) -> CsRef {
    Arc::new(Product::new(
        Arc::new(StandardCosimplicial { skeleton: Some(ell) }),
        Arc::new(Constant::simplex(k)),
    ))
}

fn hits_positive(b: &[u16], k: usize) -> bool {
    (1..=k as u16).all(|v| b.contains(&v))
}

type Cell = (usize, usize);

#[derive(Clone, Debug, Default)]
struct Cells {
    labels: BTreeMap<Cell, Vec<Simp>>,
    index: HashMap<Cell, HashMap<Simp, usize>>,
}

impl Cells {
    fn insert(&mut self, cell: Cell, labels: Vec<Simp>) {
        self.index
            .insert(cell, labels.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect());
        self.labels.insert(cell, labels);
    }

    fn find(&self, cell: Cell, x: &[u16]) -> Option<usize> {
        self.index.get(&cell)?.get(x).copied()
    }
}

/// One level `N Tot_k`: a basis of bicomplex maps vanishing on every
/// generator whose `Δ^k` part misses a vertex `i ≥ 1`.
#[derive(Clone, Debug)]
pub struct TotLevel {
    pub k: usize,
    source: Cells,
    unknown_index: HashMap<(usize, usize, usize, usize), usize>,
    basis: Vec<SparseVec>,
    by_low: HashMap<usize, usize>,
    /// Per basis element: CN values `(p, generator) ↦ labels of CN V`.
    values: Vec<HashMap<(usize, Simp), Vec<Simp>>>,
}

impl TotLevel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a solution vector in the stored basis.
    fn coordinates(&self, w: &SparseVec) -> Option<SparseVec> {
        let mut rem = w.clone();
        let mut out = Vec::new();
        while let Some(l) = rem.low() {
            let &i = self.by_low.get(&l)?;
            rem.add_assign(&self.basis[i]);
            out.push(i);
        }
        Some(SparseVec::from_indices(out))
    }

    pub fn cn_value(&self, y: usize, p: usize, x: &[u16]) -> &[Simp] {
        self.values[y]
            .get(&(p, Simp::from_slice(x)))
            .map_or(&[], |v| v.as_slice())
    }

    /// Generators carrying a nonzero value of `y`.
    pub fn support(&self, y: usize) -> Vec<(usize, Simp)> {
        let mut v: Vec<(usize, Simp)> = self.values[y].keys().cloned().collect();
        v.sort();
        v
    }
}

/// `N Tot^ℓ V` in levels `0..=q_max`.
#[derive(Clone)]
pub struct NormTot {
    pub v: CsRef,
    pub ell: usize,
    pub target: Bicomplex,
    pub levels: Vec<TotLevel>,
    /// `boundary[k] : N_k → N_{k−1}` in basis coordinates (empty for `k = 0`).
    pub boundary: Vec<SpMat>,
}

impl std::fmt::Debug for NormTot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NormTot")
            .field("v", &self.v.name())
            .field("ell", &self.ell)
            .field("dims", &self.levels.iter().map(|l| l.dim()).collect::<Vec<_>>())
            .finish()
    }
}

impl NormTot {
    pub fn new(v: CsRef, ell: usize, q_max: usize) -> Result<Self, CoreError> {
        let target = cn(v.clone(), ell + 2, ell + 1 + q_max);
        let levels: Vec<TotLevel> = (0..=q_max).map(|k| solve_level(&target, ell, k)).collect();
        let mut boundary = vec![SpMat::zeros(0, levels[0].dim())];
        for k in 1..=q_max {
            let mut cols = Vec::with_capacity(levels[k].dim());
            for y in 0..levels[k].dim() {
                let w = d0_vector(&target, &levels[k], &levels[k - 1], y);
                let c = levels[k - 1]
                    .coordinates(&w)
                    .ok_or_else(|| CoreError::Inconsistent(format!("d_0 leaves N Tot at level {k}")))?;
                cols.push(c);
            }
            boundary.push(SpMat::new(levels[k - 1].dim(), cols));
        }
        Ok(NormTot {
            v,
            ell,
            target,
            levels,
            boundary,
        })
    }

    pub fn q_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, |l| l.dim())
    }

    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex::new((0..=self.q_max()).map(|k| self.dim(k)).collect(), self.boundary.clone())
    }
}

fn solve_level(target: &Bicomplex, ell: usize, k: usize) -> TotLevel {
    let a = tot_source(ell, k);
    let (pt, qt) = (target.p_max(), target.q_max());
    let tdim = |p: usize, n: usize| if p <= pt && n <= qt { target.dim(p, n) } else { 0 };
    let mut source = Cells::default();
    for p in 0..=ell + 1 {
        for n in 0..=(p + k).min(qt) {
            let needed = tdim(p, n) > 0 || (n >= 1 && tdim(p, n - 1) > 0) || tdim(p + 1, n) > 0;
            if needed {
                source.insert((p, n), a.cn_basis(p, n));
            }
        }
    }
    let normal = |x: &[u16]| hits_positive(Product::split(x).1, k);

    let mut unknowns = Vec::new();
    let mut unknown_index = HashMap::new();
    for (&(p, n), labels) in &source.labels {
        if tdim(p, n) == 0 {
            continue;
        }
        for (xi, x) in labels.iter().enumerate() {
            if normal(x) {
                for j in 0..tdim(p, n) {
                    unknown_index.insert((p, n, xi, j), unknowns.len());
                    unknowns.push((p, n, xi, j));
                }
            }
        }
    }

    let mut rows: HashMap<(u8, usize, usize, usize, usize), usize> = HashMap::new();
    let mut cols: Vec<Vec<usize>> = vec![Vec::new(); unknowns.len()];
    let mut row = |key: (u8, usize, usize, usize, usize)| {
        let next = rows.len();
        *rows.entry(key).or_insert(next)
    };
    for (&(p, n), labels) in &source.labels {
        for (xi, x) in labels.iter().enumerate() {
            let own = normal(x) && tdim(p, n) > 0;
            if n >= 1 && tdim(p, n - 1) > 0 {
                for i in 0..=n {
                    let Some(f) = a.face(p, n, i, x) else { continue };
                    let Some(fi) = source.find((p, n - 1), &f) else { continue };
                    for z in 0..tdim(p, n - 1) {
                        if let Some(&u) = unknown_index.get(&(p, n - 1, fi, z)) {
                            cols[u].push(row((0, p, n, xi, z)));
                        }
                    }
                }
                if own {
                    for j in 0..tdim(p, n) {
                        let u = unknown_index[&(p, n, xi, j)];
                        for z in target.dv[p][n].col(j).iter() {
                            cols[u].push(row((0, p, n, xi, z)));
                        }
                    }
                }
            }
            if p < pt && tdim(p + 1, n) > 0 {
                if let Some(c) = a.coface(p, n, 0, x) {
                    if let Some(ci) = source.find((p + 1, n), &c) {
                        for z in 0..tdim(p + 1, n) {
                            if let Some(&u) = unknown_index.get(&(p + 1, n, ci, z)) {
                                cols[u].push(row((1, p, n, xi, z)));
                            }
                        }
                    }
                }
                if own {
                    for j in 0..tdim(p, n) {
                        let u = unknown_index[&(p, n, xi, j)];
                        for z in target.dh[p][n].col(j).iter() {
                            cols[u].push(row((1, p, n, xi, z)));
                        }
                    }
                }
            }
        }
    }
    let nrows = rows.len();
    let m = SpMat::new(nrows, cols.into_iter().map(SparseVec::from_indices).collect());
    let basis = ColumnReduction::new(&m).kernel();
    let by_low = basis
        .iter()
        .enumerate()
        .map(|(i, v)| (v.low().expect("nonzero kernel vector"), i))
        .collect();
    let values = basis
        .iter()
        .map(|v| {
            let mut out: HashMap<(usize, Simp), Vec<Simp>> = HashMap::new();
            for u in v.iter() {
                let (p, n, xi, j) = unknowns[u];
                out.entry((p, source.labels[&(p, n)][xi].clone()))
                    .or_default()
                    .push(target.labels[p][n][j].clone());
            }
            out
        })
        .collect();
    TotLevel {
        k,
        source,
        unknown_index,
        basis,
        by_low,
        values,
    }
}

/// `d_0 F` of a level-`k` basis element, as a solution vector of level `k−1`:
/// `(d_0F)(a, b) = F(a, δ⁰b)`.
fn d0_vector(target: &Bicomplex, hi: &TotLevel, lo: &TotLevel, y: usize) -> SparseVec {
    let mut out = Vec::new();
    for ((p, x), labels) in &hi.values[y] {
        let (a, b) = Product::split(x);
        if b.contains(&0) {
            continue;
        }
        let b2: Simp = b.iter().map(|v| v - 1).collect();
        let x2 = Product::pack(a, &b2);
        let n = a.len() - 1;
        let Some(xi) = lo.source.find((*p, n), &x2) else { continue };
        for z in labels {
            let j = target.index[*p][n][z];
            if let Some(&u) = lo.unknown_index.get(&(*p, n, xi, j)) {
                out.push(u);
            }
        }
    }
    SparseVec::from_indices(out)
}

/// `Π_s = ∏_j (1 + s_j d_{j+1})`, highest `j` first: the projection onto
/// `∩_{i≥1} ker d_i` along the degenerate simplices.
pub fn project_simplicial(x: &dyn CsSet, p: usize, n: usize, terms: Vec<Simp>) -> Vec<Simp> {
    let mut cur = reduce_mod2(terms);
    for j in (0..n).rev() {
        let mut add: Vec<Simp> = cur
            .iter()
            .filter_map(|t| x.face(p, n, j + 1, t))
            .map(|u| x.degeneracy(p, n - 1, j, &u))
            .collect();
        add.extend(cur);
        cur = reduce_mod2(add);
    }
    cur
}

/// `Π_c = ∏_j (1 + d^{j+1} s^j)`, `j = 0` first: the projection onto
/// `∩_j ker s^j` along the images of `d^k`, `k ≥ 1`.
pub fn project_cosimplicial(x: &dyn CsSet, p: usize, n: usize, terms: Vec<Simp>) -> Vec<Simp> {
    let mut cur = reduce_mod2(terms);
    for j in 0..p {
        let mut add: Vec<Simp> = cur
            .iter()
            .filter_map(|t| x.codegeneracy(p, n, j, t))
            .filter_map(|u| x.coface(p - 1, n, j + 1, &u))
            .collect();
        add.extend(cur);
        cur = reduce_mod2(add);
    }
    cur
}

pub fn project_both(x: &dyn CsSet, p: usize, n: usize, terms: Vec<Simp>) -> Vec<Simp> {
    let s = project_simplicial(x, p, n, terms);
    project_cosimplicial(x, p, n, s)
}

/// The image of a sum of simplices in `CN𝕂X` at `(p, n)`.
pub fn cn_project(x: &dyn CsSet, p: usize, n: usize, terms: Vec<Simp>) -> Vec<Simp> {
    let bits = conormal_bits(p);
    reduce_mod2(terms)
        .into_iter()
        .filter(|z| x.degeneracy_mask(p, n, z) == 0 && x.coface_mask(p, n, z) & bits == 0)
        .collect()
}

/// Full values of `N Tot` basis elements on arbitrary simplices of the source,
/// rebuilt from their CN values and memoized.
pub struct TotEval<'a> {
    tot: &'a NormTot,
    sources: Vec<CsRef>,
    memo: HashMap<(usize, usize, usize, Simp), Vec<Simp>>,
    lifts: HashMap<(usize, Simp), Vec<Simp>>,
}

impl<'a> TotEval<'a> {
    pub fn new(tot: &'a NormTot) -> Self {
        TotEval {
            tot,
            sources: (0..=tot.q_max()).map(|k| tot_source(tot.ell, k)).collect(),
            memo: HashMap::new(),
            lifts: HashMap::new(),
        }
    }

    pub fn tot(&self) -> &'a NormTot {
        self.tot
    }

    /// `f_y(x)` for the level-`k` basis element `y` and `x ∈ (sk_ℓΔ^p × Δ^k)_n`.
    pub fn full(&mut self, k: usize, y: usize, p: usize, x: &[u16]) -> Vec<Simp> {
        let key = (k, y, p, Simp::from_slice(x));
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let src = self.sources[k].clone();
        let v = self.tot.v.clone();
        let (a, _) = Product::split(x);
        let n = a.len() - 1;
        let dm = src.degeneracy_mask(p, n, x);
        let out = if dm != 0 {
            let j = dm.trailing_zeros() as usize;
            let d = src.face(p, n, j, x).expect("face of a product of simplices");
            let inner = self.full(k, y, p, &d);
            reduce_mod2(inner.iter().map(|z| v.degeneracy(p, n - 1, j, z)).collect())
        } else if let Some(miss) = (0..=p as u16).find(|c| !a.contains(c)) {
            let miss = miss as usize;
            let j = miss.max(1) - 1;
            let c = src.codegeneracy(p, n, j, x).expect("codegeneracy of a product of simplices");
            let inner = self.full(k, y, p - 1, &c);
            reduce_mod2(inner.iter().filter_map(|z| v.coface(p - 1, n, miss, z)).collect())
        } else {
            let mut terms: Vec<Simp> = Vec::new();
            let labels: Vec<Simp> = self.tot.levels[k].cn_value(y, p, x).to_vec();
            for z in &labels {
                terms.extend(self.lift(p, n, z));
            }
            let proj = project_both(src.as_ref(), p, n, vec![Simp::from_slice(x)]);
            debug_assert!(proj.iter().any(|t| t.as_slice() == x));
            for t in proj {
                if t.as_slice() != x {
                    terms.extend(self.full(k, y, p, &t));
                }
            }
            reduce_mod2(terms)
        };
        self.memo.insert(key, out.clone());
        out
    }

    fn lift(&mut self, p: usize, n: usize, z: &Simp) -> Vec<Simp> {
        if let Some(v) = self.lifts.get(&(p, z.clone())) {
            return v.clone();
        }
        let out = project_both(self.tot.v.as_ref(), p, n, vec![z.clone()]);
        self.lifts.insert((p, z.clone()), out.clone());
        out
    }

    /// Full value of a basis element `[mask, y]` of `Tot_q` at `x ∈ A_q`.
    pub fn full_gamma(&mut self, q: usize, label: &[u16], p: usize, x: &[u16]) -> Vec<Simp> {
        let surj = surjection_of(q, label[0]);
        let k = surj[q] as usize;
        let (a, b) = Product::split(x);
        let b2: Simp = b.iter().map(|&v| surj[v as usize]).collect();
        let x2 = Product::pack(a, &b2);
        self.full(k, label[1] as usize, p, &x2)
    }

    /// The class of `full_gamma` in `CN V` at a generator `x` of `CN A_q`.
    pub fn cn_gamma(&mut self, q: usize, label: &[u16], p: usize, x: &[u16]) -> Vec<Simp> {
        let n = Product::split(x).0.len() - 1;
        let v = self.tot.v.clone();
        let full = self.full_gamma(q, label, p, x);
        cn_project(v.as_ref(), p, n, full)
    }
}

/// Values of the surjection `[q] ↠ [k]` whose repeat mask is `mask`.
pub fn surjection_of(q: usize, mask: u16) -> Vec<u16> {
    let mut out = vec![0u16; q + 1];
    for i in 0..q {
        out[i + 1] = out[i] + u16::from(mask >> i & 1 == 0);
    }
    out
}

pub fn mask_of(values: &[u16]) -> u16 {
    values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] == w[1])
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// `Tot V` as a simplicial module, with basis the pairs `(I, y)` of a
/// surjection `I : [q] ↠ [k]` and a basis element `y` of `N Tot_k`, standing
/// for `I^*y`. Labels are `[repeat mask of I, y]`.
#[derive(Clone)]
pub struct TotModule {
    pub tot: Arc<NormTot>,
}

impl SModule for TotModule {
    fn name(&self) -> String {
        format!("Tot{}", self.tot.v.name())
    }

    fn basis(&self, q: usize) -> Vec<Simp> {
        let mut out = Vec::new();
        for mask in 0..1u16 << q {
            let k = q - mask.count_ones() as usize;
            for y in 0..self.tot.dim(k) {
                out.push(Simp::from_slice(&[mask, y as u16]));
            }
        }
        out
    }

    fn face(&self, q: usize, i: usize, x: &[u16]) -> Vec<Simp> {
        let mut j = surjection_of(q, x[0]);
        let k = j[q];
        j.remove(i);
        let missing = (0..=k).find(|v| !j.contains(v));
        match missing {
            None => vec![Simp::from_slice(&[mask_of(&j), x[1]])],
            Some(0) => {
                let j2: Vec<u16> = j.iter().map(|v| v - 1).collect();
                let m = mask_of(&j2);
                self.tot.boundary[k as usize]
                    .col(x[1] as usize)
                    .iter()
                    .map(|y| Simp::from_slice(&[m, y as u16]))
                    .collect()
            }
            Some(_) => Vec::new(),
        }
    }

    fn degeneracy(&self, q: usize, j: usize, x: &[u16]) -> Simp {
        let mut s = surjection_of(q, x[0]);
        s.insert(j, s[j]);
        Simp::from_slice(&[mask_of(&s), x[1]])
    }

    fn degeneracy_mask(&self, _q: usize, x: &[u16]) -> u64 {
        x[0] as u64
    }
}

/// Which shuffles the maps built from `∇` sum over. `Corrupted` drops the last
/// shuffle of every `Sh(p, q)` with `p, q ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShuffleTable {
    Exact,
    Corrupted,
}

impl ShuffleTable {
    pub fn shuffles(self, p: usize, q: usize) -> Vec<Shuffle> {
        let mut s = enumerate_shuffles(p, q);
        if self == ShuffleTable::Corrupted && p > 0 && q > 0 {
            s.pop();
        }
        s
    }

    /// Nondegenerate top simplices of `Δ^p × Δ^q`, one per shuffle.
    pub fn prism_simplices(self, p: usize, q: usize) -> Vec<Simp> {
        self.shuffles(p, q)
            .iter()
            .map(|tau| {
                let (wa, wb) = nabla_words(tau);
                let a: Simp = wa.values().iter().map(|&v| v as u16).collect();
                let b: Simp = wb.values().iter().map(|&v| v as u16).collect();
                Product::pack(&a, &b)
            })
            .collect()
    }
}

/// `φ_ℓ : Tot_q → ⊕_{p≤ℓ} C^p N V_{p+q}`, `F ↦ Σ_p Σ_τ F(a_τ, b_τ)`, where
/// `value(p, x)` is the CN value at the prism simplex `x` of `Δ^p × Δ^q`.
pub fn phi(
    q: usize,
    ell: usize,
    table: ShuffleTable,
    mut value: impl FnMut(usize, &[u16]) -> Vec<Simp>,
) -> Vec<(usize, usize, Simp)> {
    let mut out = Vec::new();
    for p in 0..=ell {
        let mut terms = Vec::new();
        for x in table.prism_simplices(p, q) {
            terms.extend(value(p, &x));
        }
        out.extend(reduce_mod2(terms).into_iter().map(|z| (p, p + q, z)));
    }
    out
}

/// `φ_ℓ` of a sum of `Tot_q` basis labels.
pub fn phi_tot(ev: &mut TotEval, q: usize, ell: usize, table: ShuffleTable, labels: &[Simp]) -> Vec<(usize, usize, Simp)> {
    phi(q, ell, table, |p, x| {
        let mut t = Vec::new();
        for l in labels {
            t.extend(ev.cn_gamma(q, l, p, x));
        }
        t
    })
}

/// `χ(f ⊗ g)(x) = f(x) ⊗ g(x)` in `CN(U ⊗ V)`, for a pair label of `Tot_q U ⊗ Tot_q V`.
pub fn chi_value(
    eu: &mut TotEval,
    ev: &mut TotEval,
    uv: &dyn CsSet,
    q: usize,
    pair: &[u16],
    p: usize,
    x: &[u16],
) -> Vec<Simp> {
    let (f, g) = Product::split(pair);
    let n = Product::split(x).0.len() - 1;
    let fu = eu.full_gamma(q, f, p, x);
    let gv = ev.full_gamma(q, g, p, x);
    let mut terms = Vec::with_capacity(fu.len() * gv.len());
    for u in &fu {
        for w in &gv {
            terms.push(Product::pack(u, w));
        }
    }
    cn_project(uv, p, n, terms)
}

/// `ζ(e ⊗ f ⊗ g)(a, b) = (e∘b, f(a,b), g(a,b))` in `CN(𝕂Eπ ⊗_π U^{⊗2})`, for
/// an orbit label `[e, f, g]` of level `q`.
pub fn zeta_value(ev: &mut TotEval, orbits: &HomotopyOrbits, q: usize, label: &[u16], p: usize, x: &[u16]) -> Vec<Simp> {
    let e = label[0];
    let (f, g) = Product::split(&label[1..]);
    let (_, b) = Product::split(x);
    let n = b.len() - 1;
    let eb: u16 = b
        .iter()
        .enumerate()
        .fold(0, |m, (i, &v)| m | ((e >> v) & 1) << i);
    let fu = ev.full_gamma(q, f, p, x);
    let gu = ev.full_gamma(q, g, p, x);
    let mut terms = Vec::new();
    for u in &fu {
        for w in &gu {
            if let Some(l) = orbits.canon(p, n, eb, Product::pack(u, w)) {
                terms.push(l);
            }
        }
    }
    cn_project(orbits, p, n, terms)
}

/// Sorts labeled terms and cancels repeated ones in pairs.
pub fn reduce_terms(mut v: Vec<(usize, usize, Simp)>) -> Vec<(usize, usize, Simp)> {
    v.sort_unstable();
    let mut out: Vec<(usize, usize, Simp)> = Vec::with_capacity(v.len());
    for t in v {
        if out.last() == Some(&t) {
            out.pop();
        } else {
            out.push(t);
        }
    }
    out
}

/// Whether `u ⊗ w` is a basis element of `C^p(NU ⊗ NV)`.
fn tensor_cn_basis(u_set: &dyn CsSet, v_set: &dyn CsSet, p: usize, z: usize, n: usize, u: &[u16], w: &[u16]) -> bool {
    u_set.degeneracy_mask(p, z, u) == 0
        && v_set.degeneracy_mask(p, n - z, w) == 0
        && u_set.coface_mask(p, z, u) & v_set.coface_mask(p, n - z, w) & conormal_bits(p) == 0
}

/// `Σ_τ f(a_τ, b_τ)` as a sum of simplices of `V^p_{p+q}` for each `p ≤ ℓ`:
/// the representative of `φ_ℓ(f)` built from full values.
pub fn phi_full(ev: &mut TotEval, q: usize, ell: usize, table: ShuffleTable, label: &[u16]) -> Vec<(usize, Vec<Simp>)> {
    (0..=ell)
        .map(|p| {
            let mut t = Vec::new();
            for x in table.prism_simplices(p, q) {
                t.extend(ev.full_gamma(q, label, p, &x));
            }
            (p, reduce_mod2(t))
        })
        .filter(|(_, t)| !t.is_empty())
        .collect()
}

/// `(Tot U ⊗ Tot V)_q → T_ℓ C(NU ⊗ NV)` through `AW`, `φ_ℓ ⊗ φ_ℓ` and the
/// cosimplicial Alexander–Whitney map, the last applied to the full-value
/// representatives of `φ_ℓ`.
#[allow(clippy::too_many_arguments)]
pub fn tensor_route_split_first(
    eu: &mut TotEval,
    ev: &mut TotEval,
    tu: &TotModule,
    tv: &TotModule,
    q: usize,
    pair: &[u16],
    ell: usize,
    table: ShuffleTable,
) -> Vec<(usize, usize, Simp)> {
    let u_set = tu.tot.v.clone();
    let v_set = tv.tot.v.clone();
    let mut out = Vec::new();
    let (f0, g0) = Product::split(pair);
    for z in 0..=q {
        let front: Vec<usize> = (z + 1..=q).rev().collect();
        let fs = faces_of_sum(tu, q, &front, &[Simp::from_slice(f0)]);
        let gs = faces_of_sum(tv, q, &vec![0; z], &[Simp::from_slice(g0)]);
        let mut pf: BTreeMap<usize, Vec<Simp>> = BTreeMap::new();
        for f in &fs {
            for (k, t) in phi_full(eu, z, ell, table, f) {
                pf.entry(k).or_default().extend(t);
            }
        }
        let mut pg: BTreeMap<usize, Vec<Simp>> = BTreeMap::new();
        for g in &gs {
            for (k, t) in phi_full(ev, q - z, ell, table, g) {
                pg.entry(k).or_default().extend(t);
            }
        }
        let pf: Vec<(usize, Vec<Simp>)> = pf.into_iter().map(|(k, t)| (k, reduce_mod2(t))).collect();
        let pg: Vec<(usize, Vec<Simp>)> = pg.into_iter().map(|(k, t)| (k, reduce_mod2(t))).collect();
        for (k, us) in &pf {
            let nk = k + z;
            for (kb, ws) in &pg {
                let (k, kb) = (*k, *kb);
                if k + kb > ell {
                    continue;
                }
                let nkb = kb + q - z;
                let cus: Vec<Simp> = us
                    .iter()
                    .filter_map(|u| {
                        let mut c = u.clone();
                        for (deg, kk) in (k..).zip(k + 1..=k + kb) {
                            c = u_set.coface(deg, nk, kk, &c)?;
                        }
                        Some(c)
                    })
                    .collect();
                let cws: Vec<Simp> = ws
                    .iter()
                    .filter_map(|w| {
                        let mut c = w.clone();
                        for (deg, kk) in (kb..).zip(0..k) {
                            c = v_set.coface(deg, nkb, kk, &c)?;
                        }
                        Some(c)
                    })
                    .collect();
                let p = k + kb;
                for cu in &cus {
                    for cw in &cws {
                        if tensor_cn_basis(u_set.as_ref(), v_set.as_ref(), p, nk, nk + nkb, cu, cw) {
                            out.push((p, nk + nkb, crate::cosimplicial::pack_graded(nk, cu, cw)));
                        }
                    }
                }
            }
        }
    }
    reduce_terms(out)
}

/// The same map through `χ`, `φ_ℓ` and the level-wise Alexander–Whitney map.
#[allow(clippy::too_many_arguments)]
pub fn tensor_route_interchange_first(
    eu: &mut TotEval,
    ev: &mut TotEval,
    tu: &TotModule,
    tv: &TotModule,
    q: usize,
    pair: &[u16],
    ell: usize,
    table: ShuffleTable,
) -> Vec<(usize, usize, Simp)> {
    let u_set = tu.tot.v.clone();
    let v_set = tv.tot.v.clone();
    let uv = Product::new(u_set.clone(), v_set.clone());
    let mut out = Vec::new();
    for p in 0..=ell {
        let n = p + q;
        let mut terms = Vec::new();
        for x in table.prism_simplices(p, q) {
            terms.extend(chi_value(eu, ev, &uv, q, pair, p, &x));
        }
        for uw in reduce_mod2(terms) {
            let (u, w) = Product::split(&uw);
            for z in 0..=n {
                let front: Vec<usize> = (z + 1..=n).rev().collect();
                let Some(fu) = apply_faces(u_set.as_ref(), p, n, &front, u) else { continue };
                let Some(bw) = apply_faces(v_set.as_ref(), p, n, &vec![0; z], w) else { continue };
                if tensor_cn_basis(u_set.as_ref(), v_set.as_ref(), p, z, n, &fu, &bw) {
                    out.push((p, n, crate::cosimplicial::pack_graded(z, &fu, &bw)));
                }
            }
        }
    }
    reduce_terms(out)
}

impl ShuffleTable {
    /// The first `(p, q, z)` with `p + q ≤ max` at which `η` fails to biject
    /// `⊔ₖ T(k, z−k) × T(p−k, q+k−z)` onto `T(p, q)`.
    pub fn eta_failure(self, max: usize) -> Option<(usize, usize, usize)> {
        for n in 0..=max {
            for p in 0..=n {
                let q = n - p;
                let mut target = self.shuffles(p, q);
                target.sort_by(|a, b| a.perm().cmp(b.perm()));
                for z in 0..=n {
                    let mut image = Vec::new();
                    for k in z.saturating_sub(q)..=z.min(p) {
                        for a in self.shuffles(k, z - k) {
                            for b in self.shuffles(p - k, q + k - z) {
                                image.push(cosimp_delta::eta(&a, &b));
                            }
                        }
                    }
                    image.sort_by(|a, b| a.perm().cmp(b.perm()));
                    if image.len() != target.len() || image.iter().zip(&target).any(|(a, b)| a.perm() != b.perm()) {
                        return Some((p, q, z));
                    }
                }
            }
        }
        None
    }
}

/// Nondegenerate basis pairs of `(Tot U ⊗ Tot V)_q`, `q ≤ levels`, on which
/// the two routes to `T_ℓ C(NU ⊗ NV)` disagree.
pub fn tensor_route_mismatches(tu: &TotModule, tv: &TotModule, ell: usize, levels: usize, table: ShuffleTable) -> Vec<(usize, Simp)> {
    let mut eu = TotEval::new(&tu.tot);
    let mut ev = TotEval::new(&tv.tot);
    let pairs = crate::simplicial::TensorModule::new(Arc::new(tu.clone()), Arc::new(tv.clone()));
    let mut out = Vec::new();
    for q in 0..=levels.min(tu.tot.q_max()).min(tv.tot.q_max()) {
        for pair in pairs.nondegenerate(q) {
            let a = tensor_route_split_first(&mut eu, &mut ev, tu, tv, q, &pair, ell, table);
            let b = tensor_route_interchange_first(&mut eu, &mut ev, tu, tv, q, &pair, ell, table);
            if a != b {
                out.push((q, pair));
            }
        }
    }
    out
}
