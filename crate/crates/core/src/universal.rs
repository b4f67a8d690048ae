//! Universal examples `Ω_(∞,s,t)`, the homotopy-orbit models built from them,
//! representing maps, and the operations on `E^∞`.

use crate::chains::HomologyData;
use crate::cosimplicial::{
    cn, conormalize, cs_normalized, Bicomplex, CellChain, FilteredComplex, SpectralWindow, WOrbitChain,
};
use crate::simplicial::{
    degenerate_by, omega, pack_pair, reduce_mod2, CsRef, HomotopyOrbits, Linearized, OrbitModule, Product,
    SModule, Simp, TensorModule,
};
use crate::specseq::{abutment_filtration, e_infinity, filtered_representative, page, total_homology, Page, Reduction};
use crate::totalization::{cn_project, project_both};
use crate::CoreError;
use cosimp_delta::{enumerate_shuffles, nabla_words};
use cosimp_gf2::{BitMatrix, BitVec, ColumnReduction, QuotientPresentation, SpMat, SparseVec};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

/// `v(t,s,m)`: the column of `E^∞` hit by the `m`-th operation on a class
/// from `(−s,t)`.
pub fn v_degree(t: usize, s: usize, m: usize) -> Result<usize, CoreError> {
    if t < s {
        return Err(CoreError::BadParameters(format!("t = {t} < s = {s}")));
    }
    if m + s < t {
        return Err(CoreError::BadParameters(format!("m = {m} is below t − s = {}", t - s)));
    }
    Ok(if m >= t { s } else { t + s - m })
}

/// The bidegree `(v, v−s+m+t)` of `e_{p,q}` for the `m`-th operation.
pub fn operation_bidegree(s: usize, t: usize, m: usize) -> Result<(usize, usize), CoreError> {
    let v = v_degree(t, s, m)?;
    Ok((v, v + m + t - s))
}

/// The nonzero locus of `E^∞` for `Eπ ×_π Ω²`: the column `{s} × [2t, ∞)`
/// and the row `[s, 2s] × {2t}`.
pub fn orbit_locus(s: usize, t: usize, p: usize, n: usize) -> bool {
    (p == s && n >= 2 * t) || (n == 2 * t && (s..=2 * s).contains(&p))
}

/// `Eπ ×_π X²`.
pub fn hpi(x: CsRef) -> Arc<HomotopyOrbits> {
    Arc::new(HomotopyOrbits::new(Arc::new(Product::square(x))))
}

/// `C(W ⊗_π NX^{⊗2})`, the small model of `CN𝕂(Eπ ×_π X²)`.
pub fn small_model_bicomplex(x: CsRef, p_max: usize, q_max: usize) -> Bicomplex {
    conormalize(&WOrbitChain { y: cs_normalized(x) }, p_max, q_max)
}

/// `Ω_(∞,s,t)` with its conormalized bicomplex in a window.
#[derive(Clone)]
pub struct UniversalExample {
    pub s: usize,
    pub t: usize,
    pub space: CsRef,
    pub bicomplex: Bicomplex,
}

impl std::fmt::Debug for UniversalExample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UniversalExample")
            .field("s", &self.s)
            .field("t", &self.t)
            .field("window", &self.bicomplex.window)
            .finish()
    }
}

/// Builds `Ω_(∞,s,t)` and checks that `E¹` is a single `𝔽₂` at `(−s,t)`
/// throughout the window.
pub fn build_universal(s: usize, t: usize, p_max: usize, q_max: usize) -> Result<UniversalExample, CoreError> {
    let space = omega(s, t)?;
    let bicomplex = cn(space.clone(), p_max, q_max);
    let u = UniversalExample { s, t, space, bicomplex };
    let support = u.e1_support();
    let expected: Vec<(usize, usize, usize)> = if s <= p_max && t < q_max { vec![(s, t, 1)] } else { vec![] };
    if support != expected {
        return Err(CoreError::Inconsistent(format!("E¹ of Ω({s},{t}) is {support:?}")));
    }
    Ok(u)
}

impl UniversalExample {
    pub fn window(&self) -> SpectralWindow {
        self.bicomplex.window
    }

    /// Nonzero `E¹` entries `(p, n, dim)` in rows below `Q`.
    pub fn e1_support(&self) -> Vec<(usize, usize, usize)> {
        let b = &self.bicomplex;
        let mut out = Vec::new();
        for p in 0..=b.p_max() {
            let h = b.column(p).homology_data();
            for n in 0..b.q_max() {
                if h.betti(n) > 0 {
                    out.push((p, n, h.betti(n)));
                }
            }
        }
        out
    }

    /// The generator `ι` of `C N𝕂Ω` at `(−s,t)`.
    pub fn iota(&self) -> SparseVec {
        SparseVec::unit(0)
    }

    /// Nonzero cells of the bicomplex, `(p, n, dim)`.
    pub fn cell_support(&self) -> Vec<(usize, usize, usize)> {
        let b = &self.bicomplex;
        let mut out = Vec::new();
        for p in 0..=b.p_max() {
            for n in 0..=b.q_max() {
                if b.dim(p, n) > 0 {
                    out.push((p, n, b.dim(p, n)));
                }
            }
        }
        out
    }
}

/// The dot-and-arrow pattern of `C N𝕂Ω_(∞,s,t)`: a dot `x_i` at
/// `(s+i, t+i)`, a dot `y_i` at `(s+1+i, t+i)`, `d_h x_i = y_i` and
/// `d_v x_{i+1} = y_i`. Returns the first mismatch.
pub fn antidiagonal_mismatch(u: &UniversalExample) -> Option<String> {
    let b = &u.bicomplex;
    let (s, t) = (u.s, u.t);
    let dot = |p: usize, n: usize| {
        (p >= s && n >= t && p - s == n - t) || (p > s && n >= t && p - s - 1 == n - t)
    };
    for p in 0..=b.p_max() {
        for n in 0..=b.q_max() {
            let want = usize::from(dot(p, n));
            if b.dim(p, n) != want {
                return Some(format!("cell ({p},{n}) has dimension {}", b.dim(p, n)));
            }
        }
    }
    for i in 0.. {
        let (p, n) = (s + i, t + i);
        if p > b.p_max() || n > b.q_max() {
            break;
        }
        if p < b.p_max() && b.dh[p][n].col(0).is_zero() {
            return Some(format!("d_h vanishes at ({p},{n})"));
        }
        if i > 0 && b.dv[p][n].col(0).is_zero() {
            return Some(format!("d_v vanishes at ({p},{n})"));
        }
        if i == 0 && !b.dv[p][n].col(0).is_zero() {
            return Some(format!("d_v of the generator at ({p},{n}) is nonzero"));
        }
    }
    None
}

/// A bicomplex together with its reduction to vertical homology and the
/// page complex (rows below `Q`), with conversions between cellwise chains
/// and page-complex vectors.
pub struct Model {
    pub bicomplex: Bicomplex,
    pub reduction: Reduction,
    pub page: FilteredComplex,
    keep: Vec<Vec<usize>>,
    pos: Vec<HashMap<usize, usize>>,
    einf: OnceLock<Page>,
}

impl Model {
    pub fn new(bicomplex: Bicomplex) -> Self {
        let reduction = Reduction::new(&bicomplex);
        let (page, keep) = reduction.rows_below(bicomplex.q_max());
        let pos = keep
            .iter()
            .map(|k| k.iter().enumerate().map(|(a, &i)| (i, a)).collect())
            .collect();
        Model {
            bicomplex,
            reduction,
            page,
            keep,
            pos,
            einf: OnceLock::new(),
        }
    }

    pub fn window(&self) -> SpectralWindow {
        self.bicomplex.window
    }

    fn slot(&self, m: i64) -> usize {
        (m - self.page.lo) as usize
    }

    /// `f'` of a cellwise chain, as a vector of the page complex.
    pub fn reduce(&self, m: i64, c: &CellChain) -> SparseVec {
        let full = self.reduction.project(&self.bicomplex, m, c);
        let k = self.slot(m);
        SparseVec::from_indices(full.iter().filter_map(|i| self.pos[k].get(&i).copied()))
    }

    /// `g'` of a page-complex vector, as a cellwise chain.
    pub fn expand(&self, m: i64, v: &SparseVec) -> CellChain {
        let k = self.slot(m);
        let full = SparseVec::from_indices(v.iter().map(|i| self.keep[k][i]));
        self.reduction.lift(&self.bicomplex, m, &full)
    }

    pub fn e_infinity(&self) -> &Page {
        self.einf.get_or_init(|| e_infinity(&self.page))
    }

    pub fn page_at(&self, r: usize) -> Result<Page, CoreError> {
        page(&self.page, r)
    }

    pub fn homology(&self, m: i64) -> Result<QuotientPresentation, CoreError> {
        if !self.window().exact_homology(m) {
            return Err(CoreError::OutsideWindow { p: 0, q: m.max(0) as usize });
        }
        Ok(total_homology(&self.page, m))
    }

    /// The largest `s` with `[z] ∈ F^{−s}H_m`, or `None` when `[z] = 0`.
    pub fn filtration(&self, m: i64, z: &BitVec) -> Result<Option<usize>, CoreError> {
        let filt = abutment_filtration(&self.page, m)?;
        let top = filt.len() - 1;
        if filt[top].contains(z) {
            return Ok(None);
        }
        Ok((0..top).rev().find(|&s| filt[s].contains(z)))
    }

    /// The `E^∞_{−p,m+p}` class of a cycle `z` lying in `F^{−p}H_m`.
    pub fn einf_class(&self, m: i64, p: usize, z: &BitVec) -> Result<BitVec, CoreError> {
        let n = m + p as i64;
        if n < 0 || !self.window().exact_infinity(p, n as usize) {
            return Err(CoreError::OutsideWindow { p, q: n.max(0) as usize });
        }
        let zp = filtered_representative(&self.page, m, p, z)
            .ok_or_else(|| CoreError::NotInfiniteCycle(format!("class not in F^-{p}")))?;
        let entry = self
            .e_infinity()
            .entries
            .get(&(p, n as usize))
            .ok_or(CoreError::OutsideWindow { p, q: n as usize })?;
        entry
            .presentation
            .coordinates(&zp)
            .map_err(|e| CoreError::Inconsistent(e.to_string()))
    }

    /// Dimension of `E^∞_{−p,n}`, when exact.
    pub fn einf_dim(&self, p: usize, n: usize) -> Option<usize> {
        self.window()
            .exact_infinity(p, n)
            .then(|| self.e_infinity().dim(p, n))
    }

    pub fn to_bitvec(&self, m: i64, v: &SparseVec) -> BitVec {
        v.to_bitvec(self.page.dim(m))
    }
}

/// A bicomplex map given cell by cell: `cells[(p,n)] : src(p,n) → tgt(p,n)`.
#[derive(Clone, Debug, Default)]
pub struct CellMap {
    pub cells: BTreeMap<(usize, usize), SpMat>,
}

impl CellMap {
    /// Builds the matrices from the image of each source basis label, given
    /// as labels of the target cell.
    pub fn from_labels(src: &Bicomplex, tgt: &Bicomplex, mut image: impl FnMut(usize, usize, &[u16]) -> Vec<Simp>) -> Self {
        let mut cells = BTreeMap::new();
        for p in 0..=src.p_max().min(tgt.p_max()) {
            for n in 0..=src.q_max().min(tgt.q_max()) {
                let cols = src.labels[p][n]
                    .iter()
                    .map(|x| tgt.vector(p, n, &image(p, n, x)))
                    .collect();
                cells.insert((p, n), SpMat::new(tgt.dim(p, n), cols));
            }
        }
        CellMap { cells }
    }

    pub fn apply(&self, c: &CellChain) -> CellChain {
        c.iter()
            .filter_map(|(p, n, v)| {
                let w = self.cells.get(&(*p, *n))?.mul_vec(v);
                (!w.is_zero()).then_some((*p, *n, w))
            })
            .collect()
    }

    /// First cell where the map fails to commute with `d_v` or `d_h`.
    pub fn chain_map_failure(&self, src: &Bicomplex, tgt: &Bicomplex) -> Option<(&'static str, usize, usize)> {
        for (&(p, n), f) in &self.cells {
            if n > 0 {
                if let Some(g) = self.cells.get(&(p, n - 1)) {
                    if tgt.dv[p][n].compose(f) != g.compose(&src.dv[p][n]) {
                        return Some(("d_v", p, n));
                    }
                }
            }
            if let Some(g) = self.cells.get(&(p + 1, n)) {
                if p < src.p_max() && p < tgt.p_max() && tgt.dh[p][n].compose(f) != g.compose(&src.dh[p][n]) {
                    return Some(("d_h", p, n));
                }
            }
        }
        None
    }

    /// The map of page complexes, per total degree of the source.
    pub fn page_maps(&self, src: &Model, tgt: &Model) -> Vec<SpMat> {
        let lo = src.page.lo;
        (lo..=src.page.hi())
            .map(|m| {
                let cols = (0..src.page.dim(m))
                    .map(|i| tgt.reduce(m, &self.apply(&src.expand(m, &SparseVec::unit(i)))))
                    .collect();
                SpMat::new(tgt.page.dim(m), cols)
            })
            .collect()
    }

    /// Matrix of the induced map `E^∞_{−p,n}(src) → E^∞_{−p,n}(tgt)`.
    pub fn einf_map(&self, src: &Model, tgt: &Model, maps: &[SpMat], p: usize, n: usize) -> Result<BitMatrix, CoreError> {
        let m = n as i64 - p as i64;
        let se = src
            .e_infinity()
            .entries
            .get(&(p, n))
            .ok_or(CoreError::OutsideWindow { p, q: n })?;
        let te = tgt
            .e_infinity()
            .entries
            .get(&(p, n))
            .ok_or(CoreError::OutsideWindow { p, q: n })?;
        let k = (m - src.page.lo) as usize;
        let cols: Vec<BitVec> = se
            .reps()
            .iter()
            .map(|x| {
                let y = maps[k].mul_vec(&SparseVec::from_bitvec(x)).to_bitvec(tgt.page.dim(m));
                te.presentation
                    .coordinates(&y)
                    .map_err(|e| CoreError::Inconsistent(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(BitMatrix::from_cols(te.dim(), &cols))
    }

    /// Matrices of the induced map on vertical homology of each column,
    /// rows below `Q`: `(p, n) ↦ H_n(src column p) → H_n(tgt column p)`.
    pub fn e1_maps(&self, src: &Model, tgt: &Model) -> BTreeMap<(usize, usize), BitMatrix> {
        let mut out = BTreeMap::new();
        for (&(p, n), f) in &self.cells {
            if n >= src.window().q_max || n >= tgt.window().q_max {
                continue;
            }
            let hs: &HomologyData = &src.reduction.columns[p];
            let ht: &HomologyData = &tgt.reduction.columns[p];
            let cols: Vec<BitVec> = (0..hs.betti(n))
                .map(|k| ht.class_of(n, &f.mul_vec(&hs.rep(n, k))).to_bitvec(ht.betti(n)))
                .collect();
            out.insert((p, n), BitMatrix::from_cols(ht.betti(n), &cols));
        }
        out
    }
}

/// `e_i ⊗ a ⊗ b ↦ ∇(ê_i ⊗ ∇(a ⊗ b))` in `N(𝕂Eπ ⊗_π M^{⊗2})` for `a ∈ M_j`,
/// `b ∈ M_k`, where `ê_i = (e, σ, e, …)`. The orbit module must be built on
/// `TensorModule::square(m)`.
pub fn orbit_shuffle(m: &dyn SModule, orbit: &OrbitModule, i: usize, j: usize, a: &[u16], k: usize, b: &[u16]) -> Vec<Simp> {
    let inner = orbit.inner.as_ref();
    let n = j + k;
    let mut pairs = Vec::new();
    for tau in enumerate_shuffles(j, k) {
        let (wa, wb) = nabla_words(&tau);
        let sa = degenerate_by(m, j, wa.values(), a);
        let sb = degenerate_by(m, k, wb.values(), b);
        if m.degeneracy_mask(n, &sa) & m.degeneracy_mask(n, &sb) == 0 {
            pairs.push(pack_pair(&sa, &sb));
        }
    }
    let pairs = reduce_mod2(pairs);
    let mut out = Vec::new();
    for sigma in enumerate_shuffles(i, n) {
        let (we, wz) = nabla_words(&sigma);
        let e: u16 = we
            .values()
            .iter()
            .enumerate()
            .fold(0, |acc, (r, &v)| acc | ((v & 1) as u16) << r);
        for z in &pairs {
            let dz = degenerate_by(inner, n, wz.values(), z);
            let x = orbit.canon(i + n, e, &dz);
            if orbit.degeneracy_mask(i + n, &x) == 0 {
                out.push(x);
            }
        }
    }
    reduce_mod2(out)
}

/// The equivariant shuffle `C(W ⊗_π NX^{⊗2}) → CN𝕂(Eπ ×_π X²)` on the
/// cells both bicomplexes share.
pub fn equivariant_shuffle_map(x: &CsRef, small: &Bicomplex, big: &Bicomplex) -> CellMap {
    let orbits = hpi(x.clone());
    let mut columns: HashMap<usize, (Arc<Linearized>, OrbitModule)> = HashMap::new();
    CellMap::from_labels(small, big, |p, n, label| {
        let (lin, orbit) = columns
            .entry(p)
            .or_insert_with(|| {
                let lin = Arc::new(Linearized { x: x.clone(), p });
                let orbit = OrbitModule::new(Arc::new(TensorModule::square(lin.clone())));
                (lin, orbit)
            })
            .clone();
        let (i, j, a, b) = WOrbitChain::split(label);
        let k = n - i - j;
        let terms = orbit_shuffle(lin.as_ref(), &orbit, i, j, a, k, b);
        cn_project(orbits.as_ref(), p, n, terms)
    })
}

/// The two models of `CN𝕂(Eπ ×_π Ω²)` for a universal example, truncated at
/// column `2s` above which `E¹` vanishes, and the equivariant shuffle between
/// them.
pub struct OrbitModels {
    pub s: usize,
    pub t: usize,
    pub small: Model,
    pub big: Model,
    pub shuffle: CellMap,
    pub shuffle_pages: Vec<SpMat>,
}

impl OrbitModels {
    pub fn new(u: &UniversalExample, q_max: usize) -> Self {
        let p_eff = 2 * u.s;
        let small = Model::new(small_model_bicomplex(u.space.clone(), p_eff, q_max));
        let big = Model::new(cn(hpi(u.space.clone()), p_eff, q_max));
        let shuffle = equivariant_shuffle_map(&u.space, &small.bicomplex, &big.bicomplex);
        let shuffle_pages = shuffle.page_maps(&small, &big);
        OrbitModels {
            s: u.s,
            t: u.t,
            small,
            big,
            shuffle,
            shuffle_pages,
        }
    }

    /// First failure of the equivariant shuffle to be a bicomplex map that is
    /// an isomorphism on `E¹`.
    pub fn e1_iso_failure(&self) -> Option<String> {
        if let Some((what, p, n)) = self.shuffle.chain_map_failure(&self.small.bicomplex, &self.big.bicomplex) {
            return Some(format!("shuffle does not commute with {what} at ({p},{n})"));
        }
        for ((p, n), m) in self.shuffle.e1_maps(&self.small, &self.big) {
            if m.rows() != m.cols() || m.rank() != m.cols() {
                return Some(format!("E¹ map at ({p},{n}) is {}×{} of rank {}", m.rows(), m.cols(), m.rank()));
            }
        }
        None
    }

    /// The image of an `E^∞` class of the small model in the big one.
    pub fn shuffle_einf(&self, p: usize, n: usize, class: &BitVec) -> Result<BitVec, CoreError> {
        let m = self.shuffle.einf_map(&self.small, &self.big, &self.shuffle_pages, p, n)?;
        Ok(m.mul_vec(class))
    }
}

/// Nonzero `E¹` entries of `C(W ⊗_π NX^{⊗2})` in columns `lo..=p_max`,
/// rows below `q_max`.
pub fn small_model_e1_support(x: CsRef, lo: usize, p_max: usize, q_max: usize) -> Vec<(usize, usize, usize)> {
    let b = small_model_bicomplex(x, p_max, q_max);
    let mut out = Vec::new();
    for p in lo..=p_max {
        let h = b.column(p).homology_data();
        for n in 0..q_max {
            if h.betti(n) > 0 {
                out.push((p, n, h.betti(n)));
            }
        }
    }
    out
}

/// `e_{p,q}` for the `m`-th operation: the unique nonzero class of
/// `E^∞_{−v, v−s+m+t}` of the small model.
pub fn e_pq(models: &OrbitModels, m: usize) -> Result<(usize, usize, BitVec), CoreError> {
    let (p, n) = operation_bidegree(models.s, models.t, m)?;
    match models.small.einf_dim(p, n) {
        Some(1) => Ok((p, n, BitVec::from_ones(1, [0]))),
        Some(d) => Err(CoreError::Inconsistent(format!("E^∞ at ({p},{n}) has dimension {d}"))),
        None => Err(CoreError::OutsideWindow { p, q: n }),
    }
}

/// A map of bicomplexes `CN𝕂Ω → CN V` solved from its value on `ι`.
#[derive(Clone, Debug)]
pub struct RepresentingMap {
    pub s: usize,
    pub t: usize,
    pub map: CellMap,
}

/// Solves for a bicomplex map `R : CN𝕂Ω_(∞,s,t) → B` with `R(ι) = v`. The
/// source must share the target's window.
pub fn representing_map(u: &UniversalExample, target: &Bicomplex, v: &SparseVec) -> Result<RepresentingMap, CoreError> {
    let src = &u.bicomplex;
    if src.window != target.window {
        return Err(CoreError::BadParameters("source and target windows differ".into()));
    }
    let (pm, qm) = (src.p_max(), src.q_max());
    let mut var: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    for p in 0..=pm {
        for n in 0..=qm {
            for g in 0..src.dim(p, n) {
                if (p, n, g) == (u.s, u.t, 0) {
                    continue;
                }
                for j in 0..target.dim(p, n) {
                    let k = var.len();
                    var.insert((p, n, g, j), k);
                }
            }
        }
    }
    let mut row_of: HashMap<(u8, usize, usize, usize, usize), usize> = HashMap::new();
    let mut row = |key: (u8, usize, usize, usize, usize)| {
        let k = row_of.len();
        *row_of.entry(key).or_insert(k)
    };
    let mut cols: Vec<Vec<usize>> = vec![Vec::new(); var.len()];
    let mut rhs: Vec<usize> = Vec::new();
    let fixed = |p: usize, n: usize, g: usize| (p, n, g) == (u.s, u.t, 0);
    // R(g) = Σ_j r_{g,j} e_j; equations: d_v R g = R d_v g, d_h R g = R d_h g.
    for p in 0..=pm {
        for n in 0..=qm {
            for g in 0..src.dim(p, n) {
                if fixed(p, n, g) {
                    for i in v.iter() {
                        if n > 0 {
                            for r in target.dv[p][n].col(i).iter() {
                                rhs.push(row((0, p, n, g, r)));
                            }
                        }
                        if p < pm {
                            for r in target.dh[p][n].col(i).iter() {
                                rhs.push(row((1, p, n, g, r)));
                            }
                        }
                    }
                } else {
                    for j in 0..target.dim(p, n) {
                        let c = var[&(p, n, g, j)];
                        if n > 0 {
                            for r in target.dv[p][n].col(j).iter() {
                                cols[c].push(row((0, p, n, g, r)));
                            }
                        }
                        if p < pm {
                            for r in target.dh[p][n].col(j).iter() {
                                cols[c].push(row((1, p, n, g, r)));
                            }
                        }
                    }
                }
                if n > 0 {
                    for g2 in src.dv[p][n].col(g).iter() {
                        if fixed(p, n - 1, g2) {
                            for i in v.iter() {
                                rhs.push(row((0, p, n, g, i)));
                            }
                        } else {
                            for j in 0..target.dim(p, n - 1) {
                                let c = var[&(p, n - 1, g2, j)];
                                cols[c].push(row((0, p, n, g, j)));
                            }
                        }
                    }
                }
                if p < pm {
                    for g2 in src.dh[p][n].col(g).iter() {
                        if fixed(p + 1, n, g2) {
                            for i in v.iter() {
                                rhs.push(row((1, p, n, g, i)));
                            }
                        } else {
                            for j in 0..target.dim(p + 1, n) {
                                let c = var[&(p + 1, n, g2, j)];
                                cols[c].push(row((1, p, n, g, j)));
                            }
                        }
                    }
                }
            }
        }
    }
    let nrows = row_of.len();
    let a = SpMat::new(nrows, cols.into_iter().map(SparseVec::from_indices).collect());
    let b = SparseVec::from_indices(rhs);
    let x = ColumnReduction::new(&a)
        .solve(&b)
        .ok_or_else(|| CoreError::NotInfiniteCycle(format!("no bicomplex map sends ι to the given chain at ({},{})", u.s, u.t)))?;
    let mut cells = BTreeMap::new();
    for p in 0..=pm {
        for n in 0..=qm {
            let cols = (0..src.dim(p, n))
                .map(|g| {
                    if fixed(p, n, g) {
                        v.clone()
                    } else {
                        SparseVec::from_indices((0..target.dim(p, n)).filter(|&j| x.contains(var[&(p, n, g, j)])))
                    }
                })
                .collect();
            cells.insert((p, n), SpMat::new(target.dim(p, n), cols));
        }
    }
    Ok(RepresentingMap {
        s: u.s,
        t: u.t,
        map: CellMap { cells },
    })
}

/// A map of cosimplicial simplicial modules `𝕂X → 𝕂Y` recovered from a
/// bicomplex map `CN𝕂X → CN𝕂Y`, evaluated on arbitrary simplices of `X`
/// inside the window.
pub struct ExtendedMap<'a> {
    src: CsRef,
    tgt: CsRef,
    src_b: &'a Bicomplex,
    tgt_b: &'a Bicomplex,
    map: &'a CellMap,
    memo: HashMap<(usize, usize, Simp), Vec<Simp>>,
}

impl<'a> ExtendedMap<'a> {
    pub fn new(src: CsRef, tgt: CsRef, src_b: &'a Bicomplex, tgt_b: &'a Bicomplex, map: &'a CellMap) -> Self {
        ExtendedMap {
            src,
            tgt,
            src_b,
            tgt_b,
            map,
            memo: HashMap::new(),
        }
    }

    /// The value on `x ∈ X^p_n` as a sum of simplices of `Y^p_n`.
    pub fn value(&mut self, p: usize, n: usize, x: &[u16]) -> Vec<Simp> {
        let key = (p, n, Simp::from_slice(x));
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (src, tgt) = (self.src.clone(), self.tgt.clone());
        let dm = src.degeneracy_mask(p, n, x);
        let cm = src.coface_mask(p, n, x);
        let out = if dm != 0 {
            let j = dm.trailing_zeros() as usize;
            let y = src.face(p, n, j, x).expect("face of a degenerate simplex");
            let inner = self.value(p, n - 1, &y);
            reduce_mod2(inner.iter().map(|z| tgt.degeneracy(p, n - 1, j, z)).collect())
        } else if cm != 0 {
            let k = cm.trailing_zeros() as usize;
            let y = src
                .codegeneracy(p, n, k.max(1) - 1, x)
                .expect("codegeneracy of a coface image");
            let inner = self.value(p - 1, n, &y);
            reduce_mod2(inner.iter().filter_map(|z| tgt.coface(p - 1, n, k, z)).collect())
        } else {
            let mut terms = Vec::new();
            if let Some(&i) = self.src_b.index.get(p).and_then(|c| c.get(n)).and_then(|c| c.get(x)) {
                let col = self.map.cells[&(p, n)].col(i).clone();
                let labels: Vec<Simp> = col.iter().map(|j| self.tgt_b.labels[p][n][j].clone()).collect();
                terms.extend(project_both(tgt.as_ref(), p, n, labels));
            }
            for t in project_both(src.as_ref(), p, n, vec![Simp::from_slice(x)]) {
                if t.as_slice() != x {
                    terms.extend(self.value(p, n, &t));
                }
            }
            reduce_mod2(terms)
        };
        self.memo.insert(key, out.clone());
        out
    }
}

/// The map `C(W ⊗_π NX^{⊗2}) → C(W ⊗_π NY^{⊗2})` induced by a levelwise
/// linear map `f(p, n, x)` of cosimplicial simplicial modules.
pub fn small_model_map(
    src: &Bicomplex,
    tgt: &Bicomplex,
    mut f: impl FnMut(usize, usize, &[u16]) -> Vec<Simp>,
) -> CellMap {
    CellMap::from_labels(src, tgt, |p, n, label| {
        let (i, j, a, b) = WOrbitChain::split(label);
        let k = n - i - j;
        let fa = f(p, j, a);
        let fb = f(p, k, b);
        let mut out = Vec::with_capacity(fa.len() * fb.len());
        for x in &fa {
            for y in &fb {
                out.push(WOrbitChain::pack(i, j, x, y));
            }
        }
        reduce_mod2(out)
    })
}

/// `E^∞(1 ⊗ R_v^{⊗2})(e_{p,q})` in the small model of `V`.
#[derive(Clone, Debug)]
pub struct SsOperation {
    pub p: usize,
    pub n: usize,
    pub class: BitVec,
}

/// The spectral-sequence operation on an infinite cycle `v` of `CN V` at
/// `(−s,t)`, computed through the representing map of `v`. The universal
/// example must share the window of `V`'s bicomplex.
pub fn ss_operation(
    u: &UniversalExample,
    v_space: CsRef,
    v_bicomplex: &Bicomplex,
    target: &Model,
    v: &SparseVec,
    m: usize,
) -> Result<SsOperation, CoreError> {
    let w = v_bicomplex.window;
    let (p, n) = operation_bidegree(u.s, u.t, m)?;
    let source = Model::new(small_model_bicomplex(u.space.clone(), w.p_max, w.q_max));
    let e = match source.einf_dim(p, n) {
        Some(1) => BitVec::from_ones(1, [0]),
        Some(0) => return Ok(SsOperation { p, n, class: BitVec::zeros(target.e_infinity().dim(p, n)) }),
        Some(d) => return Err(CoreError::Inconsistent(format!("E^∞ at ({p},{n}) has dimension {d}"))),
        None => return Err(CoreError::OutsideWindow { p, q: n }),
    };
    let r = representing_map(u, v_bicomplex, v)?;
    let mut ext = ExtendedMap::new(u.space.clone(), v_space, &u.bicomplex, v_bicomplex, &r.map);
    let f = small_model_map(&source.bicomplex, &target.bicomplex, |p, n, x| {
        let vals = ext.value(p, n, x);
        vals.into_iter().filter(|z| ext.tgt.degeneracy_mask(p, n, z) == 0).collect()
    });
    let maps = f.page_maps(&source, target);
    let mat = f.einf_map(&source, target, &maps, p, n)?;
    Ok(SsOperation { p, n, class: mat.mul_vec(&e) })
}
