//! Simplicial 𝔽₂-modules with a distinguished basis on which degeneracies act
//! by basis elements. Faces may produce sums.

use super::sets::{simp, CsRef, Simp};
use cosimp_delta::{nabla_words, Shuffle};
use cosimp_gf2::BitMatrix;
use std::collections::HashMap;
use std::sync::Arc;

/// Sorts and cancels repeated terms in pairs.
pub fn reduce_mod2(mut v: Vec<Simp>) -> Vec<Simp> {
    v.sort_unstable();
    let mut out = Vec::with_capacity(v.len());
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(v[i].clone());
        }
        i = j;
    }
    out
}

pub trait SModule: Send + Sync {
    fn name(&self) -> String;
    fn basis(&self, n: usize) -> Vec<Simp>;
    /// `d_i` of a basis element, as a list of terms (not yet reduced mod 2).
    fn face(&self, n: usize, i: usize, x: &[u16]) -> Vec<Simp>;
    fn degeneracy(&self, n: usize, j: usize, x: &[u16]) -> Simp;
    fn degeneracy_mask(&self, n: usize, x: &[u16]) -> u64;

    fn swap(&self, _n: usize, _x: &[u16]) -> Option<Simp> {
        None
    }

    fn has_swap(&self) -> bool {
        false
    }

    fn nondegenerate(&self, n: usize) -> Vec<Simp> {
        self.basis(n)
            .into_iter()
            .filter(|x| self.degeneracy_mask(n, x) == 0)
            .collect()
    }
}

pub type SModRef = Arc<dyn SModule>;

/// `d_i` applied to a sum.
pub fn face_of_sum(m: &dyn SModule, n: usize, i: usize, xs: &[Simp]) -> Vec<Simp> {
    reduce_mod2(xs.iter().flat_map(|x| m.face(n, i, x)).collect())
}

/// Faces applied in sequence, starting at level `n`.
pub fn faces_of_sum(m: &dyn SModule, n: usize, faces: &[usize], xs: &[Simp]) -> Vec<Simp> {
    let mut cur = xs.to_vec();
    for (k, &i) in faces.iter().enumerate() {
        cur = face_of_sum(m, n - k, i, &cur);
    }
    cur
}

/// `θ^*` for a surjection `θ : [n+r] → [n]`: degeneracies at the repeats, ascending.
pub fn degenerate_by(m: &dyn SModule, n: usize, theta: &[usize], x: &[u16]) -> Simp {
    let mut cur = simp(x);
    let mut lvl = n;
    for i in 0..theta.len() - 1 {
        if theta[i] == theta[i + 1] {
            cur = m.degeneracy(lvl, i, &cur);
            lvl += 1;
        }
    }
    cur
}

/// The linearization `𝕂X^p` of one cosimplicial degree.
#[derive(Clone)]
pub struct Linearized {
    pub x: CsRef,
    pub p: usize,
}

impl SModule for Linearized {
    fn name(&self) -> String {
        format!("𝕂{}^{}", self.x.name(), self.p)
    }

    fn basis(&self, n: usize) -> Vec<Simp> {
        self.x.simplices(self.p, n)
    }

    fn face(&self, n: usize, i: usize, x: &[u16]) -> Vec<Simp> {
        self.x.face(self.p, n, i, x).into_iter().collect()
    }

    fn degeneracy(&self, n: usize, j: usize, x: &[u16]) -> Simp {
        self.x.degeneracy(self.p, n, j, x)
    }

    fn degeneracy_mask(&self, n: usize, x: &[u16]) -> u64 {
        self.x.degeneracy_mask(self.p, n, x)
    }

    fn swap(&self, n: usize, x: &[u16]) -> Option<Simp> {
        self.x.swap(self.p, n, x)
    }

    fn has_swap(&self) -> bool {
        self.x.has_swap()
    }

    fn nondegenerate(&self, n: usize) -> Vec<Simp> {
        self.x.nondegenerate(self.p, n)
    }
}

/// `A ⊗ B` with basis the pairs of basis elements, encoded as for a product.
#[derive(Clone)]
pub struct TensorModule {
    pub a: SModRef,
    pub b: SModRef,
    pub square: bool,
}

impl TensorModule {
    pub fn new(a: SModRef, b: SModRef) -> Self {
        TensorModule { a, b, square: false }
    }

    pub fn square(a: SModRef) -> Self {
        TensorModule {
            b: a.clone(),
            a,
            square: true,
        }
    }
}

pub fn pack_pair(a: &[u16], b: &[u16]) -> Simp {
    super::sets::Product::pack(a, b)
}

pub fn split_pair(x: &[u16]) -> (&[u16], &[u16]) {
    super::sets::Product::split(x)
}

impl SModule for TensorModule {
    fn name(&self) -> String {
        format!("({}⊗{})", self.a.name(), self.b.name())
    }

    fn basis(&self, n: usize) -> Vec<Simp> {
        let xs = self.a.basis(n);
        let ys = self.b.basis(n);
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for x in &xs {
            for y in &ys {
                out.push(pack_pair(x, y));
            }
        }
        out
    }

    fn face(&self, n: usize, i: usize, x: &[u16]) -> Vec<Simp> {
        let (u, v) = split_pair(x);
        let fu = reduce_mod2(self.a.face(n, i, u));
        let fv = reduce_mod2(self.b.face(n, i, v));
        let mut out = Vec::with_capacity(fu.len() * fv.len());
        for a in &fu {
            for b in &fv {
                out.push(pack_pair(a, b));
            }
        }
        out
    }

    fn degeneracy(&self, n: usize, j: usize, x: &[u16]) -> Simp {
        let (u, v) = split_pair(x);
        pack_pair(&self.a.degeneracy(n, j, u), &self.b.degeneracy(n, j, v))
    }

    fn degeneracy_mask(&self, n: usize, x: &[u16]) -> u64 {
        let (u, v) = split_pair(x);
        self.a.degeneracy_mask(n, u) & self.b.degeneracy_mask(n, v)
    }

    fn swap(&self, _n: usize, x: &[u16]) -> Option<Simp> {
        if !self.square {
            return None;
        }
        let (u, v) = split_pair(x);
        Some(pack_pair(v, u))
    }

    fn has_swap(&self) -> bool {
        self.square
    }

    fn nondegenerate(&self, n: usize) -> Vec<Simp> {
        let xs: Vec<(Simp, u64)> = self.a.basis(n).into_iter().map(|x| {
            let m = self.a.degeneracy_mask(n, &x);
            (x, m)
        }).collect();
        let ys: Vec<(Simp, u64)> = self.b.basis(n).into_iter().map(|y| {
            let m = self.b.degeneracy_mask(n, &y);
            (y, m)
        }).collect();
        let mut out = Vec::new();
        for (x, mx) in &xs {
            for (y, my) in &ys {
                if mx & my == 0 {
                    out.push(pack_pair(x, y));
                }
            }
        }
        out
    }
}

/// `𝕂Eπ ⊗_π Z`. Basis `[e, z…]` with `e` a bit word whose bit 0 is clear.
#[derive(Clone)]
pub struct OrbitModule {
    pub inner: SModRef,
}

impl OrbitModule {
    pub fn new(inner: SModRef) -> Self {
        assert!(inner.has_swap(), "homotopy orbits need a π-action");
        OrbitModule { inner }
    }

    pub fn canon(&self, n: usize, e: u16, z: &[u16]) -> Simp {
        let (e, z) = if e & 1 == 0 {
            (e, simp(z))
        } else {
            let mask = ((1u32 << (n + 1)) - 1) as u16;
            (!e & mask, self.inner.swap(n, z).expect("swap"))
        };
        let mut s = Simp::with_capacity(z.len() + 1);
        s.push(e);
        s.extend_from_slice(&z);
        s
    }
}

impl SModule for OrbitModule {
    fn name(&self) -> String {
        format!("𝕂Eπ⊗π{}", self.inner.name())
    }

    fn basis(&self, n: usize) -> Vec<Simp> {
        let zs = self.inner.basis(n);
        let mut out = Vec::new();
        for e in (0..1u16 << (n + 1)).filter(|e| e & 1 == 0) {
            for z in &zs {
                out.push(self.canon(n, e, z));
            }
        }
        out
    }

    fn face(&self, n: usize, i: usize, x: &[u16]) -> Vec<Simp> {
        let e = super::sets::bit_delete_pub(x[0], i);
        self.inner
            .face(n, i, &x[1..])
            .into_iter()
            .map(|z| self.canon(n - 1, e, &z))
            .collect()
    }

    fn degeneracy(&self, n: usize, j: usize, x: &[u16]) -> Simp {
        let z = self.inner.degeneracy(n, j, &x[1..]);
        let mut s = Simp::with_capacity(z.len() + 1);
        s.push(super::sets::bit_repeat_pub(x[0], j));
        s.extend_from_slice(&z);
        s
    }

    fn degeneracy_mask(&self, n: usize, x: &[u16]) -> u64 {
        super::sets::HomotopyOrbits::e_mask(n, x[0]) & self.inner.degeneracy_mask(n, &x[1..])
    }

    fn nondegenerate(&self, n: usize) -> Vec<Simp> {
        let zs: Vec<(Simp, u64)> = self
            .inner
            .basis(n)
            .into_iter()
            .map(|z| {
                let m = self.inner.degeneracy_mask(n, &z);
                (z, m)
            })
            .collect();
        let mut out = Vec::new();
        for e in (0..1u16 << (n + 1)).filter(|e| e & 1 == 0) {
            let me = super::sets::HomotopyOrbits::e_mask(n, e);
            for (z, mz) in &zs {
                if me & mz == 0 {
                    let mut s = Simp::with_capacity(z.len() + 1);
                    s.push(e);
                    s.extend_from_slice(z);
                    out.push(s);
                }
            }
        }
        out
    }
}

/// `ξ : M⊗M → 𝕂Eπ⊗_π(M⊗M)`, `z⊗z′ ↦ (e,…,e)⊗z⊗z′`.
pub fn xi(pair: &[u16]) -> Simp {
    let mut s = Simp::with_capacity(pair.len() + 1);
    s.push(0);
    s.extend_from_slice(pair);
    s
}

/// Alexander–Whitney `N(A⊗B)_n → ⊕ NA_z ⊗ NB_{n−z}` on a basis pair, as
/// `(z, a, b)` triples with degenerate factors dropped.
pub fn aw_simplicial(a: &dyn SModule, b: &dyn SModule, n: usize, x: &[u16]) -> Vec<(usize, Simp, Simp)> {
    let (u, v) = split_pair(x);
    let mut out = Vec::new();
    for z in 0..=n {
        let front: Vec<usize> = (z + 1..=n).rev().collect();
        let back = vec![0; z];
        let fu: Vec<Simp> = faces_of_sum(a, n, &front, &[simp(u)])
            .into_iter()
            .filter(|w| a.degeneracy_mask(z, w) == 0)
            .collect();
        if fu.is_empty() {
            continue;
        }
        let bv: Vec<Simp> = faces_of_sum(b, n, &back, &[simp(v)])
            .into_iter()
            .filter(|w| b.degeneracy_mask(n - z, w) == 0)
            .collect();
        for s in &fu {
            for t in &bv {
                out.push((z, s.clone(), t.clone()));
            }
        }
    }
    out
}

/// Eilenberg–Zilber shuffle map `NA_p ⊗ NB_q → N(A⊗B)_{p+q}`, summed over the
/// supplied `(p,q)`-shuffles.
pub fn shuffle_simplicial(
    a: &dyn SModule,
    b: &dyn SModule,
    p: usize,
    x: &[u16],
    q: usize,
    y: &[u16],
    shuffles: &[Shuffle],
) -> Vec<Simp> {
    let mut out = Vec::new();
    for tau in shuffles {
        let (wa, wb) = nabla_words(tau);
        let sx = degenerate_by(a, p, wa.values(), x);
        let sy = degenerate_by(b, q, wb.values(), y);
        let pair = pack_pair(&sx, &sy);
        let m = a.degeneracy_mask(p + q, &sx) & b.degeneracy_mask(p + q, &sy);
        if m == 0 {
            out.push(pair);
        }
    }
    reduce_mod2(out)
}

/// A truncated simplicial module with its operators as dense matrices.
#[derive(Clone, Debug)]
pub struct SimplicialModule {
    pub top: usize,
    pub labels: Vec<Vec<Simp>>,
    /// `faces[n][i] : M_n → M_{n−1}` for `n ≥ 1`.
    pub faces: Vec<Vec<BitMatrix>>,
    /// `degeneracies[n][j] : M_n → M_{n+1}` for `n < top`.
    pub degeneracies: Vec<Vec<BitMatrix>>,
    pub involution: Option<Vec<BitMatrix>>,
}

impl SimplicialModule {
    pub fn dim(&self, n: usize) -> usize {
        self.labels[n].len()
    }

    /// Materializes a lazy module up to level `top`.
    pub fn from_lazy(m: &dyn SModule, top: usize) -> Self {
        let labels: Vec<Vec<Simp>> = (0..=top).map(|n| m.basis(n)).collect();
        let index: Vec<HashMap<Simp, usize>> = labels
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let mut fs = Vec::new();
            for i in 0..=n {
                let mut mat = BitMatrix::zeros(labels[n - 1].len(), labels[n].len());
                for (c, x) in labels[n].iter().enumerate() {
                    for y in m.face(n, i, x) {
                        let r = index[n - 1][&y];
                        mat.set(r, c, !mat.get(r, c));
                    }
                }
                fs.push(mat);
            }
            faces.push(fs);
        }
        let mut degeneracies = Vec::new();
        for n in 0..top {
            let mut ds = Vec::new();
            for j in 0..=n {
                let mut mat = BitMatrix::zeros(labels[n + 1].len(), labels[n].len());
                for (c, x) in labels[n].iter().enumerate() {
                    let y = m.degeneracy(n, j, x);
                    mat.set(index[n + 1][&y], c, true);
                }
                ds.push(mat);
            }
            degeneracies.push(ds);
        }
        let involution = m.has_swap().then(|| {
            (0..=top)
                .map(|n| {
                    let mut mat = BitMatrix::zeros(labels[n].len(), labels[n].len());
                    for (c, x) in labels[n].iter().enumerate() {
                        let y = m.swap(n, x).expect("swap");
                        mat.set(index[n][&y], c, true);
                    }
                    mat
                })
                .collect()
        });
        SimplicialModule {
            top,
            labels,
            faces,
            degeneracies,
            involution,
        }
    }

    /// First failing simplicial identity, if any, as `(name, n, i, j)`.
    pub fn identity_failure(&self) -> Option<(&'static str, usize, usize, usize)> {
        let top = self.top;
        for n in 2..=top {
            for i in 0..n {
                for j in i + 1..=n {
                    // d_i d_j = d_{j−1} d_i
                    let l = self.faces[n - 1][i].mul(&self.faces[n][j]);
                    let r = self.faces[n - 1][j - 1].mul(&self.faces[n][i]);
                    if l != r {
                        return Some(("dd", n, i, j));
                    }
                }
            }
        }
        for n in 0..top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let l = self.faces[n + 1][i].mul(&self.degeneracies[n][j]);
                    let ok = if i < j {
                        l == self.degeneracies[n - 1][j - 1].mul(&self.faces[n][i])
                    } else if i == j || i == j + 1 {
                        l == BitMatrix::identity(self.dim(n))
                    } else {
                        l == self.degeneracies[n - 1][j].mul(&self.faces[n][i - 1])
                    };
                    if !ok {
                        return Some(("ds", n, i, j));
                    }
                }
            }
        }
        for n in 0..top.saturating_sub(1) {
            for i in 0..=n {
                for j in i..=n {
                    // s_i s_j = s_{j+1} s_i
                    let l = self.degeneracies[n + 1][i].mul(&self.degeneracies[n][j]);
                    let r = self.degeneracies[n + 1][j + 1].mul(&self.degeneracies[n][i]);
                    if l != r {
                        return Some(("ss", n, i, j));
                    }
                }
            }
        }
        if let Some(inv) = &self.involution {
            for n in 0..=top {
                if inv[n].mul(&inv[n]) != BitMatrix::identity(self.dim(n)) {
                    return Some(("σσ", n, 0, 0));
                }
                if n > 0 {
                    for i in 0..=n {
                        if inv[n - 1].mul(&self.faces[n][i]) != self.faces[n][i].mul(&inv[n]) {
                            return Some(("σd", n, i, 0));
                        }
                    }
                }
            }
        }
        None
    }
}
