//! Spectral sequence of the column filtration: `Z^r/B^r`, pages, `E^∞`, the
//! abutment filtration, and the reduction of a bicomplex to its vertical
//! homology by homological perturbation.

use crate::chains::HomologyData;
use crate::cosimplicial::{Bicomplex, CellChain, FilteredComplex, SpectralWindow};
use crate::CoreError;
use cosimp_gf2::{BitMatrix, BitVec, QuotientPresentation, SpMat, SparseVec, Subspace};
use std::collections::BTreeMap;

/// One bidegree `E^r_{−p,n}` of a page; total degree `n − p`.
#[derive(Clone, Debug)]
pub struct PageEntry {
    pub r: usize,
    pub p: usize,
    pub n: usize,
    pub presentation: QuotientPresentation,
}

impl PageEntry {
    pub fn dim(&self) -> usize {
        self.presentation.dim()
    }

    pub fn reps(&self) -> &[BitVec] {
        self.presentation.basis()
    }

    pub fn total_degree(&self) -> i64 {
        self.n as i64 - self.p as i64
    }
}

/// A page with its differentials `d^r : E_{−p,n} → E_{−p−r,n+r−1}`.
#[derive(Clone, Debug)]
pub struct Page {
    pub r: usize,
    pub window: SpectralWindow,
    pub entries: BTreeMap<(usize, usize), PageEntry>,
    pub differentials: BTreeMap<(usize, usize), BitMatrix>,
}

impl Page {
    pub fn dim(&self, p: usize, n: usize) -> usize {
        self.entries.get(&(p, n)).map_or(0, |e| e.dim())
    }

    /// Nonzero entries as `(p, n, dim)`.
    pub fn support(&self) -> Vec<(usize, usize, usize)> {
        self.entries
            .values()
            .filter(|e| e.dim() > 0)
            .map(|e| (e.p, e.n, e.dim()))
            .collect()
    }
}

fn dense(m: &FilteredComplex, deg: i64) -> BitMatrix {
    if deg <= m.lo || deg > m.hi() {
        return BitMatrix::zeros(m.dim(deg - 1), m.dim(deg));
    }
    m.d[(deg - m.lo) as usize].to_dense()
}

fn embed(len: usize, idx: &[usize], v: &BitVec) -> BitVec {
    BitVec::from_ones(len, v.iter_ones().map(|i| idx[i]))
}

/// `F_p C_m` with `p ≤ 0` meaning everything.
fn filtration_indices(f: &FilteredComplex, m: i64, p: i64) -> Vec<usize> {
    (0..f.dim(m)).filter(|&i| f.col_of(m, i) as i64 >= p).collect()
}

/// `Z^r_p(m) = {x ∈ F_p C_m : ∂x ∈ F_{p+r}}`; `r = 0` gives `F_p`.
fn z_space(f: &FilteredComplex, r: usize, p: i64, m: i64) -> Subspace {
    let len = f.dim(m);
    let src = filtration_indices(f, m, p);
    if r == 0 {
        return Subspace::from_spanning(len, src.iter().map(|&i| BitVec::unit(len, i)));
    }
    let d = dense(f, m);
    let rows: Vec<usize> = (0..f.dim(m - 1))
        .filter(|&i| (f.col_of(m - 1, i) as i64) < p + r as i64)
        .collect();
    let mut sub = BitMatrix::zeros(rows.len(), src.len());
    for (a, &i) in rows.iter().enumerate() {
        for (b, &j) in src.iter().enumerate() {
            if d.get(i, j) {
                sub.set(a, b, true);
            }
        }
    }
    let ker = sub.kernel_basis();
    Subspace::from_spanning(len, ker.basis().iter().map(|v| embed(len, &src, v)))
}

fn b_space(f: &FilteredComplex, r: usize, p: i64, m: i64) -> Subspace {
    let len = f.dim(m);
    let mut b = z_space(f, r - 1, p + 1, m);
    if f.dim(m + 1) > 0 {
        let up = z_space(f, r - 1, p - r as i64 + 1, m + 1);
        let d = dense(f, m + 1);
        b = b.sum(&up.image_under(&d));
    }
    debug_assert_eq!(b.ambient_dim(), len);
    b
}

fn check_window(w: &SpectralWindow, p: usize, n: usize, r: usize) -> Result<(), CoreError> {
    if w.exact_page(p, n, r) {
        Ok(())
    } else {
        Err(CoreError::OutsideWindow { p, q: n })
    }
}

/// `(Z^r, B^r)` at `(−p, n)` as subspaces of `C_{n−p}`.
pub fn cycles_boundaries(f: &FilteredComplex, r: usize, p: usize, n: usize) -> Result<(Subspace, Subspace), CoreError> {
    if r == 0 {
        return Err(CoreError::BadParameters("pages start at r = 1".into()));
    }
    check_window(&f.window, p, n, r)?;
    let m = n as i64 - p as i64;
    Ok((z_space(f, r, p as i64, m), b_space(f, r, p as i64, m)))
}

fn entry(f: &FilteredComplex, r: usize, p: usize, n: usize) -> PageEntry {
    let m = n as i64 - p as i64;
    let z = z_space(f, r, p as i64, m);
    let b = b_space(f, r, p as i64, m);
    PageEntry {
        r,
        p,
        n,
        presentation: QuotientPresentation::new(z, b).expect("B^r ⊆ Z^r"),
    }
}

fn bidegrees(f: &FilteredComplex) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p in 0..=f.window.p_max {
        for m in f.lo..=f.hi() {
            let n = m + p as i64;
            if n >= 0 && (0..f.dim(m)).any(|i| f.col_of(m, i) == p) {
                out.push((p, n as usize));
            }
        }
    }
    out
}

fn page_at(f: &FilteredComplex, r: usize, keep: impl Fn(usize, usize) -> bool) -> Page {
    let mut entries = BTreeMap::new();
    for (p, n) in bidegrees(f) {
        if keep(p, n) {
            entries.insert((p, n), entry(f, r, p, n));
        }
    }
    let mut differentials = BTreeMap::new();
    for (&(p, n), e) in &entries {
        let tgt = (p + r, n + r - 1);
        let m = n as i64 - p as i64;
        let cols: Vec<BitVec> = match entries.get(&tgt) {
            Some(t) => {
                let d = dense(f, m);
                e.reps()
                    .iter()
                    .map(|x| t.presentation.coordinates(&d.mul_vec(x)).expect("∂ of an r-cycle is an r-cycle"))
                    .collect()
            }
            None => continue,
        };
        differentials.insert((p, n), BitMatrix::from_cols(entries[&tgt].dim(), &cols));
    }
    Page {
        r,
        window: f.window,
        entries,
        differentials,
    }
}

/// `E^r` on every bidegree where it is exact.
pub fn page(f: &FilteredComplex, r: usize) -> Result<Page, CoreError> {
    if r == 0 {
        return Err(CoreError::BadParameters("pages start at r = 1".into()));
    }
    let w = f.window;
    Ok(page_at(f, r, |p, n| w.exact_page(p, n, r)))
}

/// `E^r` on every bidegree, exact or not; used for internal comparisons.
pub fn page_unchecked(f: &FilteredComplex, r: usize) -> Page {
    page_at(f, r, |_, _| true)
}

/// First failure of `d^r d^r = 0` or `E^{r+1} ≅ H(E^r, d^r)` on the full
/// (unwindowed) pages of a finite filtered complex.
pub fn page_homology_failure(f: &FilteredComplex, r: usize) -> Option<String> {
    let e = page_unchecked(f, r);
    let next = page_unchecked(f, r + 1);
    for (&(p, n), d) in &e.differentials {
        if let Some(d2) = e.differentials.get(&(p + r, n + r - 1)) {
            if !d2.mul(d).is_zero() {
                return Some(format!("d^{r} d^{r} ≠ 0 at (-{p},{n})"));
            }
        }
    }
    for (&(p, n), entry) in &e.entries {
        let out = e.differentials.get(&(p, n)).map_or(0, |d| d.rank());
        let inc = (p >= r && n + 1 >= r)
            .then(|| e.differentials.get(&(p - r, n + 1 - r)))
            .flatten()
            .map_or(0, |d| d.rank());
        let h = entry.dim() - out - inc;
        if next.dim(p, n) != h {
            return Some(format!("E^{} at (-{p},{n}) has dimension {} but H(E^{r}) has {h}", r + 1, next.dim(p, n)));
        }
    }
    None
}

/// The stable page: `E^r` for `r` past the column span.
pub fn e_infinity(f: &FilteredComplex) -> Page {
    let w = f.window;
    page_at(f, w.p_max + 1, |p, n| w.exact_infinity(p, n))
}

/// `H_m` of the total complex as cycles modulo boundaries in `C_m`.
pub fn total_homology(f: &FilteredComplex, m: i64) -> QuotientPresentation {
    let len = f.dim(m);
    let z = if m > f.lo { dense(f, m).kernel_basis() } else { Subspace::full(len) };
    let b = if f.dim(m + 1) > 0 {
        dense(f, m + 1).column_space()
    } else {
        Subspace::zero(len)
    };
    QuotientPresentation::new(z, b).expect("boundaries are cycles")
}

/// `F^{−s}H_m = ker(H_m → H_m(T_{s−1}))` for `s = 0 … P+1`, as subspaces of
/// `C_m` containing the boundaries.
pub fn abutment_filtration(f: &FilteredComplex, m: i64) -> Result<Vec<Subspace>, CoreError> {
    if !f.window.exact_homology(m) {
        return Err(CoreError::OutsideWindow {
            p: 0,
            q: m.max(0) as usize,
        });
    }
    Ok(abutment_filtration_unchecked(f, m))
}

pub fn abutment_filtration_unchecked(f: &FilteredComplex, m: i64) -> Vec<Subspace> {
    let h = total_homology(f, m);
    (0..=f.window.p_max as i64 + 1)
        .map(|s| {
            let fs = z_space(f, 0, s, m);
            h.ambient().intersection(&fs.sum(h.modulus()))
        })
        .collect()
}

/// A cycle in `F_p` homologous to `z`, if one exists.
pub fn filtered_representative(f: &FilteredComplex, m: i64, p: usize, z: &BitVec) -> Option<BitVec> {
    let len = f.dim(m);
    let outside: Vec<usize> = (0..len).filter(|&i| f.col_of(m, i) < p).collect();
    let proj = |v: &BitVec| BitVec::from_ones(outside.len(), outside.iter().enumerate().filter(|(_, &i)| v.get(i)).map(|(a, _)| a));
    if f.dim(m + 1) == 0 {
        return proj(z).is_zero().then(|| z.clone());
    }
    let d = dense(f, m + 1);
    let mut sub = BitMatrix::zeros(outside.len(), d.cols());
    for (a, &i) in outside.iter().enumerate() {
        for j in 0..d.cols() {
            if d.get(i, j) {
                sub.set(a, j, true);
            }
        }
    }
    let c = sub.solve(&proj(z))?;
    let mut out = z.clone();
    out.xor_assign(&d.mul_vec(&c));
    Some(out)
}

/// The abutment map `F^{−p}H/F^{−p−1}H → E^∞_{−p,n}`: a basis of the
/// source (as cycles in `F_p`) and the matrix into `E^∞` coordinates.
pub fn abutment_map(f: &FilteredComplex, p: usize, n: usize) -> Result<(Vec<BitVec>, BitMatrix), CoreError> {
    let m = n as i64 - p as i64;
    if !f.window.exact_infinity(p, n) {
        return Err(CoreError::OutsideWindow { p, q: n });
    }
    let filt = abutment_filtration(f, m)?;
    let graded = QuotientPresentation::new(filt[p].clone(), filt[p + 1].clone())
        .map_err(|e| CoreError::Inconsistent(e.to_string()))?;
    let einf = entry(f, f.window.p_max + 1, p, n);
    let mut reps = Vec::new();
    let mut cols = Vec::new();
    for z in graded.basis() {
        let zp = filtered_representative(f, m, p, z)
            .ok_or_else(|| CoreError::NotInfiniteCycle(format!("no representative in F^-{p}")))?;
        cols.push(
            einf.presentation
                .coordinates(&zp)
                .map_err(|e| CoreError::Inconsistent(e.to_string()))?,
        );
        reps.push(zp);
    }
    Ok((reps, BitMatrix::from_cols(einf.dim(), &cols)))
}

/// Matrices of the map induced on `E^r` by a filtration-preserving chain
/// map, given per total degree of the source (`maps[m − src.lo]`).
pub fn induced_page_map(
    src: &FilteredComplex,
    tgt: &FilteredComplex,
    maps: &[SpMat],
    r: usize,
) -> Result<BTreeMap<(usize, usize), BitMatrix>, CoreError> {
    for (k, mk) in maps.iter().enumerate() {
        let m = src.lo + k as i64;
        for i in 0..src.dim(m) {
            let c = src.col_of(m, i);
            if mk.col(i).iter().any(|j| tgt.col_of(m, j) < c) {
                return Err(CoreError::Inconsistent(format!("map lowers filtration in degree {m}")));
            }
        }
    }
    let ps = page_unchecked(src, r);
    let pt = page_unchecked(tgt, r);
    let mut out = BTreeMap::new();
    for (&(p, n), e) in &ps.entries {
        if !(src.window.exact_page(p, n, r) && tgt.window.exact_page(p, n, r)) {
            continue;
        }
        let m = n as i64 - p as i64;
        let Some(t) = pt.entries.get(&(p, n)) else {
            continue;
        };
        let k = (m - src.lo) as usize;
        let cols: Vec<BitVec> = e
            .reps()
            .iter()
            .map(|x| {
                let y = maps[k].mul_vec(&SparseVec::from_bitvec(x)).to_bitvec(tgt.dim(m));
                t.presentation
                    .coordinates(&y)
                    .map_err(|e| CoreError::Inconsistent(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        out.insert((p, n), BitMatrix::from_cols(t.dim(), &cols));
    }
    Ok(out)
}

/// A bicomplex replaced by the vertical homology of its columns, with the
/// transferred differential `d' = f δ Σ (hδ)^k g` (`δ = d_h`) and the
/// comparison maps `g' = Σ (hδ)^k g`, `f' = f Σ (δh)^k`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub columns: Vec<HomologyData>,
    /// Generators per total degree, as `(p, n, k)` with `k` a class index.
    pub gens: Vec<Vec<(usize, usize, usize)>>,
    pub filtered: FilteredComplex,
    offsets: BTreeMap<(usize, usize), usize>,
    lo: i64,
}

impl Reduction {
    pub fn new(b: &Bicomplex) -> Self {
        let (pm, qm) = (b.p_max(), b.q_max());
        let columns: Vec<HomologyData> = (0..=pm).map(|p| b.column(p).homology_data()).collect();
        let lo = -(pm as i64);
        let mut gens = Vec::new();
        let mut offsets = BTreeMap::new();
        for m in lo..=qm as i64 {
            let mut g = Vec::new();
            for (p, col) in columns.iter().enumerate() {
                let n = m + p as i64;
                if n < 0 || n > qm as i64 {
                    continue;
                }
                let n = n as usize;
                offsets.insert((p, n), g.len());
                for k in 0..col.betti(n) {
                    g.push((p, n, k));
                }
            }
            gens.push(g);
        }
        let mut red = Reduction {
            columns,
            gens,
            filtered: FilteredComplex {
                lo,
                columns: Vec::new(),
                d: Vec::new(),
                window: b.window,
            },
            offsets,
            lo,
        };
        let mut d = Vec::new();
        for m in lo..=qm as i64 {
            let k = (m - lo) as usize;
            let rows = if k == 0 { 0 } else { red.gens[k - 1].len() };
            let cols: Vec<SparseVec> = red.gens[k]
                .iter()
                .map(|&(p, n, c)| {
                    if k == 0 {
                        return SparseVec::new();
                    }
                    let g = red.columns[p].rep(n, c);
                    let mut acc = SparseVec::new();
                    let mut cur = b.dh[p][n].mul_vec(&g);
                    let mut col = p + 1;
                    let mut row_cur = n;
                    while col <= pm && !cur.is_zero() {
                        let (fc, hc) = red.columns[col].split(row_cur, &cur);
                        let off = red.offsets[&(col, row_cur)];
                        acc.add_assign(&fc.shifted(off));
                        if row_cur + 1 > qm || col == pm {
                            break;
                        }
                        cur = b.dh[col][row_cur + 1].mul_vec(&hc);
                        col += 1;
                        row_cur += 1;
                    }
                    acc
                })
                .collect();
            d.push(SpMat::new(rows, cols));
        }
        red.filtered.columns = red.gens.iter().map(|g| g.iter().map(|&(p, _, _)| p).collect()).collect();
        red.filtered.d = d;
        red
    }

    /// The quotient by generators in rows `≥ q`. Rows above any bound form a
    /// subcomplex because `d'` never lowers the row, so page entries below
    /// `q` whose differentials stay below `q` are unchanged.
    pub fn rows_below(&self, q: usize) -> (FilteredComplex, Vec<Vec<usize>>) {
        let keep: Vec<Vec<usize>> = self
            .gens
            .iter()
            .map(|g| (0..g.len()).filter(|&i| g[i].1 < q).collect())
            .collect();
        let pos: Vec<std::collections::HashMap<usize, usize>> = keep
            .iter()
            .map(|k| k.iter().enumerate().map(|(a, &i)| (i, a)).collect())
            .collect();
        let mut d = Vec::new();
        for (k, kk) in keep.iter().enumerate() {
            let rows = if k == 0 { 0 } else { keep[k - 1].len() };
            let cols = kk
                .iter()
                .map(|&i| {
                    if k == 0 {
                        SparseVec::new()
                    } else {
                        SparseVec::from_indices(self.filtered.d[k].col(i).iter().filter_map(|j| pos[k - 1].get(&j).copied()))
                    }
                })
                .collect();
            d.push(SpMat::new(rows, cols));
        }
        let columns = keep
            .iter()
            .zip(&self.gens)
            .map(|(kk, g)| kk.iter().map(|&i| g[i].0).collect())
            .collect();
        (
            FilteredComplex {
                lo: self.lo,
                columns,
                d,
                window: self.filtered.window,
            },
            keep,
        )
    }

    /// `rows_below(Q)`: drops the top row, whose vertical homology is an
    /// artifact of truncation.
    pub fn page_complex(&self) -> FilteredComplex {
        self.rows_below(self.filtered.window.q_max).0
    }

    pub fn offset(&self, p: usize, n: usize) -> usize {
        self.offsets[&(p, n)]
    }

    pub fn window(&self) -> SpectralWindow {
        self.filtered.window
    }

    /// `g'` of a reduced chain in total degree `m`, as a cellwise chain.
    pub fn lift(&self, b: &Bicomplex, m: i64, x: &SparseVec) -> CellChain {
        let k = (m - self.lo) as usize;
        let mut cells: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for i in x.iter() {
            let (p, n, c) = self.gens[k][i];
            cells.entry((p, n)).or_default().add_assign(&self.columns[p].rep(n, c));
        }
        let mut out: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for p in 0..=b.p_max() {
            let here: Vec<((usize, usize), SparseVec)> =
                cells.iter().filter(|((pp, _), _)| *pp == p).map(|(k, v)| (*k, v.clone())).collect();
            for ((p, n), v) in here {
                if v.is_zero() {
                    continue;
                }
                out.entry((p, n)).or_default().add_assign(&v);
                if p < b.p_max() && n < b.q_max() {
                    let (_, h) = self.columns[p + 1].split(n, &b.dh[p][n].mul_vec(&v));
                    if !h.is_zero() {
                        cells.entry((p + 1, n + 1)).or_default().add_assign(&h);
                    }
                }
            }
        }
        out.into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((p, n), v)| (p, n, v))
            .collect()
    }

    /// `f'` of a cellwise chain in total degree `m`.
    pub fn project(&self, b: &Bicomplex, m: i64, c: &CellChain) -> SparseVec {
        let mut cells: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (p, n, v) in c {
            cells.entry((*p, *n)).or_default().add_assign(v);
        }
        let mut out = SparseVec::new();
        for p in 0..=b.p_max() {
            let here: Vec<((usize, usize), SparseVec)> =
                cells.iter().filter(|((pp, _), _)| *pp == p).map(|(k, v)| (*k, v.clone())).collect();
            for ((p, n), v) in here {
                if v.is_zero() {
                    continue;
                }
                let (f, h) = self.columns[p].split(n, &v);
                out.add_assign(&f.shifted(self.offset(p, n)));
                if p < b.p_max() && n < b.q_max() && !h.is_zero() {
                    let e = b.dh[p][n + 1].mul_vec(&h);
                    cells.entry((p + 1, n + 1)).or_default().add_assign(&e);
                }
            }
        }
        debug_assert!(out.iter().all(|i| i < self.filtered.dim(m)));
        out
    }
}
