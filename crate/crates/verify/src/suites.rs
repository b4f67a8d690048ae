//! Exhaustive combinatorial identities, and the structural identities of a
//! constructed object. Each returns a list of failures, empty on success.

use crate::expr::Expr;
use crate::VerifyError;
use cosimp_core::chains::{normalize, psi_w, psi_w_bar, qm_external, w_tensor_pi};
use cosimp_core::cosimplicial::{cn, total};
use cosimp_core::operations::{rho1_coassociativity, rho2_coassociativity, rho3_coassociativity};
use cosimp_core::simplicial::{
    aw_simplicial, build_preset, identity_failure, omega, CsSet, shuffle_simplicial, Linearized, OrbitModule, Preset,
    SModRef, SModule, TensorModule,
};
use cosimp_core::specseq::page_homology_failure;
use cosimp_core::universal::hpi;
use cosimp_delta::{
    binomial, comodule_identities, enumerate_shuffles, eta, eta_inverse, eta_restricted, eta_restricted_inverse,
    restricted_domain, restricted_front_map, tensor_identities,
};
use cosimp_gf2::SparseVec;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

fn mod2<T: Ord>(v: Vec<T>) -> Vec<T> {
    let mut counts: BTreeMap<T, bool> = BTreeMap::new();
    for t in v {
        let c = counts.entry(t).or_insert(false);
        *c = !*c;
    }
    counts.into_iter().filter(|(_, c)| *c).map(|(t, _)| t).collect()
}

/// `η` on `p, q ≤ max`, `η̈` on `k ≤ 3`, `p ≤ max`, the Vandermonde counts,
/// and the operator-word identities.
pub fn combinatorial_failures(max: usize) -> Vec<String> {
    let mut out = Vec::new();
    for p in 0..=max {
        for q in 0..=max {
            for z in 0..=p + q {
                let mut seen = BTreeSet::new();
                let mut count = 0u64;
                for k in z.saturating_sub(q)..=p.min(z) {
                    count += binomial(z, k) * binomial(p + q - z, p - k);
                    for a in enumerate_shuffles(k, z - k) {
                        for b in enumerate_shuffles(p - k, q + k - z) {
                            let g = eta(&a, &b);
                            if eta_inverse(&g, z).ok() != Some((k, a.clone(), b.clone())) {
                                out.push(format!("η⁻¹η ≠ id at p={p} q={q} z={z}"));
                            }
                            for id in tensor_identities(&a, &b).unwrap_or_default() {
                                if !id.holds() {
                                    out.push(format!("{} fails for {a:?} {b:?}", id.name));
                                }
                            }
                            seen.insert(g);
                        }
                    }
                }
                if count != binomial(p + q, p) {
                    out.push(format!("Vandermonde count fails at p={p} q={q} z={z}"));
                }
                if seen.len() as u64 != count || seen.iter().any(|g| (g.p(), g.q()) != (p, q)) {
                    out.push(format!("η is not a bijection at p={p} q={q} z={z}"));
                }
            }
        }
    }
    for k in 0..=3 {
        for p in 0..=max {
            for r in 0..=p {
                let dom = restricted_domain(k, p, r);
                if dom.len() as u64 != binomial(k + p - r, k) {
                    out.push(format!("restricted count fails at k={k} p={p} r={r}"));
                }
                let image: BTreeSet<_> = dom.iter().filter_map(|mu| eta_restricted(mu, r).ok()).collect();
                let target: BTreeSet<_> = enumerate_shuffles(k, p - r).into_iter().collect();
                if image != target || dom.iter().any(|mu| eta_restricted(mu, r).map(|a| eta_restricted_inverse(&a, r)).as_ref() != Ok(mu)) {
                    out.push(format!("η̈ is not a bijection at k={k} p={p} r={r}"));
                }
                for mu in enumerate_shuffles(k, p) {
                    let inside = k == 0 || r <= mu.apply(0);
                    let inj = restricted_front_map(&mu, r).map(|f| f.is_injective()).unwrap_or(false);
                    if inj != inside {
                        out.push(format!("front map injectivity wrong for {mu:?} r={r}"));
                    }
                    if inside {
                        for id in comodule_identities(&mu, r).unwrap_or_default() {
                            if !id.holds() {
                                out.push(format!("{} fails for {mu:?} r={r}", id.name));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Operator identities, `∂² = 0`, `d^r d^r = 0`, `E^{r+1} = H(E^r)` on full and
/// column-truncated bicomplexes, and `AW∘∇ = id`, all on a small window.
pub fn object_failures(e: &Expr) -> Result<Vec<String>, VerifyError> {
    let x = e.build(2, 3)?;
    let mut out = Vec::new();
    if let Some((what, p, n)) = identity_failure(x.as_ref(), 2, 2) {
        out.push(format!("{e}: {what} at ({p},{n})"));
    }
    let b = cn(x.clone(), 2, 3);
    if let Some((what, p, n)) = b.relation_failure() {
        out.push(format!("{e}: bicomplex relation {what} at ({p},{n})"));
    }
    for ell in [2, 1] {
        let (f, _) = total(&b.truncate_columns(ell));
        if !f.is_differential() || !f.filtration_preserved() {
            out.push(format!("{e}: total complex (ℓ = {ell}) is not a filtered differential"));
        }
        for r in 1..=3 {
            if let Some(m) = page_homology_failure(&f, r) {
                out.push(format!("{e}: ℓ = {ell}, r = {r}: {m}"));
            }
        }
    }
    for p in 0..=1 {
        let lin = Linearized { x: x.clone(), p };
        if !normalize(&lin, 3).complex.is_differential() {
            out.push(format!("{e}: N𝕂X^{p} has ∂² ≠ 0"));
        }
        for j in 0..=2 {
            for k in 0..=2 - j {
                let shuffles = enumerate_shuffles(j, k);
                for a in lin.nondegenerate(j).iter().take(3) {
                    for c in lin.nondegenerate(k).iter().take(3) {
                        let mut triples = Vec::new();
                        for pair in shuffle_simplicial(&lin, &lin, j, a, k, c, &shuffles) {
                            triples.extend(aw_simplicial(&lin, &lin, j + k, &pair));
                        }
                        if mod2(triples) != vec![(j, a.clone(), c.clone())] {
                            out.push(format!("{e}: AW∘∇ ≠ id on ({j},{k})"));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn square_orbits(m: SModRef) -> OrbitModule {
    OrbitModule::new(Arc::new(TensorModule::square(m)))
}

/// `q^m ∂ = ∂ q^m`, and coassociativity of `ψ_W`, `ψ_W̄`, `ρ₁`, `ρ₂`, `ρ₃`.
pub fn coalgebra_failures() -> Vec<String> {
    let mut out = Vec::new();
    let c = normalize(&Linearized { x: build_preset(Preset::Simplex(2)), p: 0 }, 7).complex;
    let w = w_tensor_pi(&c, 7);
    for n in 0..=3 {
        for m in 0..=7 - n {
            for i in 0..c.dim(n) {
                let x = SparseVec::unit(i);
                let (Ok(q), Ok(qd)) = (
                    qm_external(&c, &w, m, n, &x),
                    if n == 0 { Ok(SparseVec::new()) } else { qm_external(&c, &w, m, n - 1, &c.boundary(n, &x)) },
                ) else {
                    out.push(format!("q^{m} undefined in degree {n}"));
                    continue;
                };
                if w.complex.boundary(n + m, &q) != qd {
                    out.push(format!("q^{m}∂ ≠ ∂q^{m} on generator {i} of degree {n}"));
                }
            }
        }
    }
    for m in 0..=8 {
        for sigma in [false, true] {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for ((i, a), (j, b)) in psi_w(m, sigma) {
                for ((i2, a2), (j2, b2)) in psi_w(i, a == 1) {
                    left.push((i2, a2, j2, b2, j, b));
                }
                for ((i2, a2), (j2, b2)) in psi_w(j, b == 1) {
                    right.push((i, a, i2, a2, j2, b2));
                }
            }
            if mod2(left) != mod2(right) {
                out.push(format!("ψ_W is not coassociative in degree {m}"));
            }
        }
        let left: Vec<_> = psi_w_bar(m).into_iter().flat_map(|(i, j)| psi_w_bar(i).into_iter().map(move |(a, b)| (a, b, j))).collect();
        let right: Vec<_> = psi_w_bar(m).into_iter().flat_map(|(i, j)| psi_w_bar(j).into_iter().map(move |(a, b)| (i, a, b))).collect();
        if mod2(left) != mod2(right) {
            out.push(format!("ψ_W̄ is not coassociative in degree {m}"));
        }
    }
    let interval = square_orbits(Arc::new(Linearized { x: build_preset(Preset::Simplex(1)), p: 0 }));
    let omega_orbits = square_orbits(Arc::new(Linearized { x: omega(1, 1).expect("omega"), p: 1 }));
    for n in 0..=3 {
        for x in interval.basis(n) {
            let (l, r) = rho1_coassociativity(&x);
            if l != r {
                out.push(format!("ρ₁ is not coassociative on {:?}", x.as_slice()));
            }
        }
        for m in [&interval, &omega_orbits] {
            for x in m.nondegenerate(n) {
                let (l, r) = rho2_coassociativity(m, n, &x);
                if l != r {
                    out.push(format!("ρ₂ is not coassociative on {:?}", x.as_slice()));
                }
            }
        }
    }
    for (s, t) in [(1, 1), (1, 2)] {
        let orbits = hpi(omega(s, t).expect("omega"));
        for p in 0..=2 {
            for n in 0..=3 {
                for y in orbits.cn_basis(p, n) {
                    let (l, r) = rho3_coassociativity(orbits.as_ref(), p, n, &y);
                    if l != r {
                        out.push(format!("ρ₃ is not coassociative on {:?} at ({p},{n})", y.as_slice()));
                    }
                }
            }
        }
    }
    out
}
