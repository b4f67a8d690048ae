//! Simplicial and cosimplicial simplicial sets, their linearizations, and the
//! Eilenberg–Zilber maps.

mod modules;
mod sets;

pub use modules::{
    aw_simplicial, degenerate_by, face_of_sum, faces_of_sum, pack_pair, reduce_mod2, shuffle_simplicial,
    split_pair, xi, Linearized, OrbitModule, SModRef, SModule, SimplicialModule, TensorModule,
};
pub use sets::{
    apply_degeneracies, apply_faces, conormal_bits, identity_failure, is_operator_closed, pullback, pushforward, simp, Cofiber,
    Constant, ConstantKind, CsRef, CsSet, HomotopyOrbits, Predicate, Product, StandardCosimplicial, Simp, Sub,
    Suspension,
};

use crate::CoreError;
use std::sync::Arc;

/// Number of distinct vertices of a monotone vertex word.
pub fn image_size(x: &[u16]) -> usize {
    if x.is_empty() {
        0
    } else {
        1 + x.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `Δ^p` as a constant object.
    Simplex(usize),
    /// `sk_ℓ Δ^p`; `ℓ = −1` is empty.
    Skeleton { ell: i64, p: usize },
    EPi,
    BPi,
    /// The cosimplicial standard simplex `Δ^•`.
    Cosimplicial,
}

pub fn build_preset(kind: Preset) -> CsRef {
    match kind {
        Preset::Simplex(p) => Arc::new(Constant::simplex(p)),
        Preset::Skeleton { ell, p } => Arc::new(Sub {
            inner: Arc::new(Constant::simplex(p)),
            keep: Arc::new(move |_, _, x: &[u16]| (image_size(x) as i64) <= ell + 1),
        }),
        Preset::EPi => Arc::new(Constant(ConstantKind::EPi)),
        Preset::BPi => Arc::new(Constant(ConstantKind::BPi)),
        Preset::Cosimplicial => Arc::new(StandardCosimplicial { skeleton: None }),
    }
}

pub fn kan_suspension(x: CsRef) -> CsRef {
    Arc::new(Suspension { inner: x })
}

/// `X/A` for a subobject described by a predicate; checked for operator
/// closure up to the given degrees.
pub fn cofiber(x: CsRef, sub: Predicate, p_max: usize, q_max: usize) -> Result<CsRef, CoreError> {
    if !is_operator_closed(x.as_ref(), &sub, p_max, q_max) {
        return Err(CoreError::NotClosed);
    }
    Ok(Arc::new(Cofiber { inner: x, collapse: sub }))
}

/// `Ω_(∞,s,t) = Σ^{t−s} cof(sk_{s−1}Δ₊ → Δ₊)`.
pub fn omega(s: usize, t: usize) -> Result<CsRef, CoreError> {
    if t < s {
        return Err(CoreError::BadParameters(format!("t = {t} < s = {s}")));
    }
    let mut x: CsRef = Arc::new(Cofiber {
        inner: Arc::new(StandardCosimplicial { skeleton: None }),
        collapse: Arc::new(move |_, _, x: &[u16]| image_size(x) <= s),
    });
    for _ in s..t {
        x = kan_suspension(x);
    }
    Ok(x)
}

pub fn linearize(x: CsRef, p: usize) -> SModRef {
    Arc::new(Linearized { x, p })
}

pub fn sm_tensor(a: SModRef, b: SModRef) -> SModRef {
    Arc::new(TensorModule::new(a, b))
}

/// `Z_{hπ}` for `Z = M⊗M` with the swap.
pub fn homotopy_orbits_of_square(m: SModRef) -> SModRef {
    Arc::new(OrbitModule::new(Arc::new(TensorModule::square(m))))
}
