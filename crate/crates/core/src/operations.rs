//! The operations on `Tot` side: `q^m`, the interchange `ζ`, `Q^m_alg`,
//! external products, and the coactions of `W̄`.

use crate::chains::{normalize, HomologyData, LabeledComplex};
use crate::cosimplicial::{caw_cosimplicial, cell_chain, CellChain, NormalizedChains};
use crate::simplicial::{
    faces_of_sum, pack_pair, pullback, reduce_mod2, shuffle_simplicial, split_pair, xi, CsRef, CsSet, HomotopyOrbits,
    OrbitModule, Product, SModule, Simp, TensorModule,
};
use crate::totalization::{chi_value, cn_project, phi, reduce_terms, zeta_value, NormTot, ShuffleTable, TotEval, TotModule};
use crate::universal::{hpi, orbit_shuffle, Model};
use crate::CoreError;
use cosimp_delta::{enumerate_shuffles, nabla_words};
use cosimp_gf2::{BitVec, SparseVec};
use std::sync::Arc;

/// `N Tot^ℓ V` with the simplicial modules built on it: `Tot V`,
/// `𝕂Eπ ⊗_π (Tot V)^{⊗2}`, and the target `Eπ ×_π V²` of `ζ`.
pub struct TotSide {
    pub space: CsRef,
    pub ell: usize,
    pub tot: Arc<NormTot>,
    pub module: Arc<TotModule>,
    pub orbit: OrbitModule,
    pub orbits: Arc<HomotopyOrbits>,
}

impl TotSide {
    pub fn new(space: CsRef, ell: usize, levels: usize) -> Result<Self, CoreError> {
        let tot = Arc::new(NormTot::new(space.clone(), ell, levels)?);
        let module = Arc::new(TotModule { tot: tot.clone() });
        let orbit = OrbitModule::new(Arc::new(TensorModule::square(module.clone())));
        let orbits = hpi(space.clone());
        Ok(TotSide {
            space,
            ell,
            tot,
            module,
            orbit,
            orbits,
        })
    }

    pub fn eval(&self) -> TotEval<'_> {
        TotEval::new(&self.tot)
    }

    /// Homology of `N Tot` (the top level counts cycles only).
    pub fn homology(&self) -> HomologyData {
        self.tot.chain_complex().homology_data()
    }

    /// `Tot_n` labels of a vector of `N Tot_n`.
    pub fn labels(&self, v: &SparseVec) -> Vec<Simp> {
        v.iter().map(|y| Simp::from_slice(&[0, y as u16])).collect()
    }

    /// `N(𝕂Eπ ⊗_π (Tot V)^{⊗2})` through level `top`.
    pub fn orbit_complex(&self, top: usize) -> Result<LabeledComplex, CoreError> {
        if top > self.tot.q_max() {
            return Err(CoreError::OutOfRange(top));
        }
        Ok(normalize(&self.orbit, top))
    }

    /// `∇ q^m(x) = ∇(e_{m−n} ⊗ x ⊗ x + e_{m−n+1} ⊗ x ⊗ ∂x)` for `x ∈ N Tot_n`.
    pub fn qm(&self, m: usize, n: usize, x: &SparseVec) -> Result<Vec<Simp>, CoreError> {
        if n > self.tot.q_max() {
            return Err(CoreError::OutOfRange(n));
        }
        let mut out = Vec::new();
        let xs = self.labels(x);
        if m >= n {
            for a in &xs {
                for b in &xs {
                    out.extend(orbit_shuffle(self.module.as_ref(), &self.orbit, m - n, n, a, n, b));
                }
            }
        }
        if m + 1 >= n && n > 0 {
            let dx = self.labels(&self.tot.boundary[n].mul_vec(x));
            for a in &xs {
                for b in &dx {
                    out.extend(orbit_shuffle(self.module.as_ref(), &self.orbit, m + 1 - n, n, a, n - 1, b));
                }
            }
        }
        Ok(reduce_mod2(out))
    }

    /// `φ_ℓ ∘ ζ` on a sum of orbit labels of level `q`.
    pub fn zeta_phi(&self, ev: &mut TotEval, q: usize, labels: &[Simp]) -> Vec<(usize, usize, Simp)> {
        phi(q, self.ell, ShuffleTable::Exact, |p, x| {
            let mut t = Vec::new();
            for l in labels {
                t.extend(zeta_value(ev, &self.orbits, q, l, p, x));
            }
            t
        })
    }

    /// `φ_ℓ ∘ Tot(ξ) ∘ χ` on a sum of pair labels of `(Tot V ⊗ Tot V)_q`.
    pub fn xi_chi_phi(&self, ev: &mut TotEval, ev2: &mut TotEval, q: usize, pairs: &[Simp]) -> Vec<(usize, usize, Simp)> {
        let square = Product::square(self.space.clone());
        phi(q, self.ell, ShuffleTable::Exact, |p, x| {
            let n = Product::split(x).0.len() - 1;
            let mut t = Vec::new();
            for pair in pairs {
                for uv in chi_value(ev, ev2, &square, q, pair, p, x) {
                    t.push(xi(&uv));
                }
            }
            cn_project(self.orbits.as_ref(), p, n, t)
        })
    }

    /// `φ_ℓ` on a sum of `Tot_q` labels, in `T_ℓ CN V`.
    pub fn phi(&self, ev: &mut TotEval, q: usize, labels: &[Simp]) -> Vec<(usize, usize, Simp)> {
        crate::totalization::phi_tot(ev, q, self.ell, ShuffleTable::Exact, labels)
    }
}

/// A page-complex cycle of a model from labeled cells of total degree `m`.
pub fn cycle_in(model: &Model, m: i64, terms: &[(usize, usize, Simp)]) -> Result<BitVec, CoreError> {
    let c = cell_chain(&model.bicomplex, terms);
    let z = model.reduce(m, &c);
    if !model.page.boundary(m, &z).is_zero() {
        return Err(CoreError::Inconsistent(format!("image in degree {m} is not a cycle")));
    }
    Ok(model.to_bitvec(m, &z))
}

/// `Q^m_alg(x)` for a cycle `x ∈ N Tot_n V`, as a cycle of the page complex of
/// `T_ℓ CN(Eπ ×_π V²)` in degree `n+m`.
pub fn qm_alg(side: &TotSide, big: &Model, m: usize, n: usize, x: &SparseVec) -> Result<BitVec, CoreError> {
    let deg = (n + m) as i64;
    if !big.window().exact_homology(deg) || n + m > side.tot.q_max() + m {
        return Err(CoreError::OutsideWindow { p: 0, q: n + m });
    }
    let labels = side.qm(m, n, x)?;
    let mut ev = side.eval();
    let cells = side.zeta_phi(&mut ev, n + m, &labels);
    cycle_in(big, deg, &cells)
}

/// `∇(x ⊗ y)` in `N(Tot U ⊗ Tot V)` for `x ∈ N Tot_j U`, `y ∈ N Tot_k V`.
pub fn tot_shuffle(a: &TotSide, x: &SparseVec, j: usize, b: &TotSide, y: &SparseVec, k: usize) -> Vec<Simp> {
    let shuffles = enumerate_shuffles(j, k);
    let mut out = Vec::new();
    for u in a.labels(x) {
        for v in b.labels(y) {
            out.extend(shuffle_simplicial(a.module.as_ref(), b.module.as_ref(), j, &u, k, &v, &shuffles));
        }
    }
    reduce_mod2(out)
}

/// `φ_ℓ ∘ χ` on a sum of pair labels of `(Tot U ⊗ Tot V)_q`, in `T_ℓ CN(U ∧ V)`.
pub fn chi_phi(a: &TotSide, b: &TotSide, ell: usize, q: usize, pairs: &[Simp]) -> Vec<(usize, usize, Simp)> {
    let uv = Product::new(a.space.clone(), b.space.clone());
    let mut ea = a.eval();
    let mut eb = b.eval();
    phi(q, ell, ShuffleTable::Exact, |p, x| {
        let mut t = Vec::new();
        for pair in pairs {
            t.extend(chi_value(&mut ea, &mut eb, &uv, q, pair, p, x));
        }
        t
    })
}

/// `∇AW : T(CN U ⊗ CN V) → T CN(U ∧ V)` on a pair of labeled chains: the
/// cosimplicial Alexander–Whitney map followed by the simplicial shuffle.
pub fn nabla_aw(
    u: &CsRef,
    v: &CsRef,
    ell: usize,
    x: &[(usize, usize, Simp)],
    y: &[(usize, usize, Simp)],
) -> Vec<(usize, usize, Simp)> {
    let cu = NormalizedChains { x: u.clone() };
    let cv = NormalizedChains { x: v.clone() };
    let uv = Product::new(u.clone(), v.clone());
    let mut out = Vec::new();
    for (p, n, a) in x {
        for (p2, n2, b) in y {
            if p + p2 > ell {
                continue;
            }
            let Some((pp, packed)) = caw_cosimplicial(&cu, &cv, *p, *n, a, *p2, *n2, b) else {
                continue;
            };
            let (j, ca, cb) = crate::cosimplicial::split_graded(&packed);
            let k = n + n2 - j;
            let mut terms = Vec::new();
            for tau in enumerate_shuffles(j, k) {
                let (wa, wb) = nabla_words(&tau);
                let (Some(sa), Some(sb)) = (
                    pullback(u.as_ref(), pp, j, wa.values(), ca),
                    pullback(v.as_ref(), pp, k, wb.values(), cb),
                ) else {
                    continue;
                };
                terms.push(Product::pack(&sa, &sb));
            }
            out.extend(cn_project(&uv, pp, j + k, terms).into_iter().map(|z| (pp, j + k, z)));
        }
    }
    reduce_terms(out)
}

/// `ρ₁(a ⊗ z) = ā ⊗ (a ⊗ z)` on `Z_hπ`, with `ā ∈ Bπ_n` recorded by the bit
/// word of its canonical representative.
pub fn rho1(x: &[u16]) -> (u16, Simp) {
    (x[0], Simp::from_slice(x))
}

/// `(Δ ⊗ 1)ρ₁` and `(1 ⊗ ρ₁)ρ₁` on a label of `Z_hπ`, as triples.
pub fn rho1_coassociativity(x: &[u16]) -> ((u16, u16, Simp), (u16, u16, Simp)) {
    let (b, y) = rho1(x);
    let left = (b, b, y.clone());
    let (b2, y2) = rho1(&y);
    let right = (b, b2, y2);
    (left, right)
}

/// Whether the front `z`-face of the `Bπ` simplex with bit word `e` is the
/// nondegenerate `ē_z`.
pub fn front_alternates(e: u16, z: usize) -> bool {
    (0..z).all(|i| (e >> i & 1) != (e >> (i + 1) & 1))
}

/// `ρ₂ = AW ∘ Nρ₁ : N Z_hπ → W̄ ⊗ N Z_hπ` on a nondegenerate label of level
/// `n`, as pairs `(z, label)` standing for `ē_z ⊗ label`.
pub fn rho2(m: &dyn SModule, n: usize, x: &[u16]) -> Vec<(usize, Simp)> {
    let mut out = Vec::new();
    for z in 0..=n {
        if !front_alternates(x[0], z) {
            continue;
        }
        for y in faces_of_sum(m, n, &vec![0; z], &[Simp::from_slice(x)]) {
            if m.degeneracy_mask(n - z, &y) == 0 {
                out.push((z, y));
            }
        }
    }
    sort_cancel(out)
}

/// `ρ₃` on a cell label `(p, n, x)` of `CN𝕂(Eπ ×_π V²)`, as `(z, p, n−z, label)`.
pub fn rho3(orbits: &dyn CsSet, p: usize, n: usize, x: &[u16]) -> Vec<(usize, usize, usize, Simp)> {
    let mut out = Vec::new();
    for z in 0..=n {
        if !front_alternates(x[0], z) {
            continue;
        }
        let mut cur = Some(Simp::from_slice(x));
        for lvl in (n - z + 1..=n).rev() {
            cur = cur.and_then(|c| orbits.face(p, lvl, 0, &c));
        }
        if let Some(y) = cur {
            for w in cn_project(orbits, p, n - z, vec![y]) {
                out.push((z, p, n - z, w));
            }
        }
    }
    sort_cancel(out)
}

fn sort_cancel<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    let mut out: Vec<T> = Vec::with_capacity(v.len());
    for t in v {
        if out.last() == Some(&t) {
            out.pop();
        } else {
            out.push(t);
        }
    }
    out
}

/// `(ψ ⊗ 1)ρ₂` and `(1 ⊗ ρ₂)ρ₂` on a label, as `(i, j, label)` terms.
#[allow(clippy::type_complexity)]
pub fn rho2_coassociativity(m: &dyn SModule, n: usize, x: &[u16]) -> (Vec<(usize, usize, Simp)>, Vec<(usize, usize, Simp)>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (z, y) in rho2(m, n, x) {
        for i in 0..=z {
            left.push((i, z - i, y.clone()));
        }
        for (z2, w) in rho2(m, n - z, &y) {
            right.push((z, z2, w));
        }
    }
    (sort_cancel(left), sort_cancel(right))
}

/// `(ψ ⊗ 1)ρ₃` and `(1 ⊗ ρ₃)ρ₃` on a cell label.
#[allow(clippy::type_complexity)]
pub fn rho3_coassociativity(
    orbits: &dyn CsSet,
    p: usize,
    n: usize,
    x: &[u16],
) -> (Vec<(usize, usize, usize, usize, Simp)>, Vec<(usize, usize, usize, usize, Simp)>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (z, p2, n2, y) in rho3(orbits, p, n, x) {
        for i in 0..=z {
            left.push((i, z - i, p2, n2, y.clone()));
        }
        for (z2, p3, n3, w) in rho3(orbits, p2, n2, &y) {
            right.push((z, z2, p3, n3, w));
        }
    }
    (sort_cancel(left), sort_cancel(right))
}

/// Both sides of `ρ₃ ∘ φ_ℓ ∘ ζ = (1 ⊗ φ_ℓ ζ) ∘ ρ₂` on a nondegenerate label
/// of `N(𝕂Eπ ⊗_π (Tot V)^{⊗2})_q`, as `(z, p, n, label)` terms.
#[allow(clippy::type_complexity)]
pub fn comodule_sides(
    side: &TotSide,
    ev: &mut TotEval,
    q: usize,
    x: &[u16],
) -> (Vec<(usize, usize, usize, Simp)>, Vec<(usize, usize, usize, Simp)>) {
    let mut left = Vec::new();
    for (p, n, y) in side.zeta_phi(ev, q, &[Simp::from_slice(x)]) {
        left.extend(rho3(side.orbits.as_ref(), p, n, &y));
    }
    let mut right = Vec::new();
    for (z, y) in rho2(&side.orbit, q, x) {
        for (p, n, w) in side.zeta_phi(ev, q - z, &[y]) {
            right.push((z, p, n, w));
        }
    }
    (sort_cancel(left), sort_cancel(right))
}

/// The `ē_z`-components of `ρ₂` applied to a cycle of `N Z_hπ`, each as a
/// vector of the same complex.
pub fn rho2_components(m: &dyn SModule, complex: &LabeledComplex, n: usize, v: &SparseVec) -> Vec<SparseVec> {
    let mut parts: Vec<Vec<Simp>> = vec![Vec::new(); n + 1];
    for i in v.iter() {
        for (z, y) in rho2(m, n, &complex.labels[n][i]) {
            parts[z].push(y);
        }
    }
    parts
        .into_iter()
        .enumerate()
        .map(|(z, terms)| complex.vector(n - z, &reduce_mod2(terms)))
        .collect()
}

/// `ξ ∘ ∇(x ⊗ x)` in `N(𝕂Eπ ⊗_π (Tot V)^{⊗2})_{2n}`: the bottom operation
/// written without `q^m`.
pub fn bottom_via_xi(side: &TotSide, n: usize, x: &SparseVec) -> Vec<Simp> {
    let shuffles = enumerate_shuffles(n, n);
    let xs = side.labels(x);
    let mut out = Vec::new();
    for a in &xs {
        for b in &xs {
            for pair in shuffle_simplicial(side.module.as_ref(), side.module.as_ref(), n, a, n, b, &shuffles) {
                let y = xi(&pair);
                if side.orbit.degeneracy_mask(2 * n, &y) == 0 {
                    out.push(side.orbit.canon(2 * n, 0, &y[1..]));
                }
            }
        }
    }
    reduce_mod2(out)
}

/// The pair labels of `∇(x ⊗ x)`.
pub fn square_shuffle(side: &TotSide, n: usize, x: &SparseVec) -> Vec<Simp> {
    tot_shuffle(side, x, n, side, x, n)
}

/// Splits an orbit label `[e, f, g]` into its bit word and pair.
pub fn orbit_parts(x: &[u16]) -> (u16, (&[u16], &[u16])) {
    (x[0], split_pair(&x[1..]))
}

/// Joins a bit word and a pair into an orbit label.
pub fn orbit_label(e: u16, f: &[u16], g: &[u16]) -> Simp {
    let pair = pack_pair(f, g);
    let mut s = Simp::with_capacity(pair.len() + 1);
    s.push(e);
    s.extend_from_slice(&pair);
    s
}

/// A cellwise chain back to labeled terms.
pub fn chain_terms(b: &crate::cosimplicial::Bicomplex, c: &CellChain) -> Vec<(usize, usize, Simp)> {
    let mut out = Vec::new();
    for (p, n, v) in c {
        for i in v.iter() {
            out.push((*p, *n, b.labels[*p][*n][i].clone()));
        }
    }
    out
}
