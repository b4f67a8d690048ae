//! Pointed cosimplicial simplicial sets, evaluated lazily.
//!
//! A simplex is a short `u16` word whose meaning is owned by the object that
//! produced it. The basepoint is never stored: an operator that lands on it
//! returns `None`, which is exactly the rule "basepoint images go to 0" once
//! the set is linearized.

use smallvec::SmallVec;
use std::sync::Arc;

pub type Simp = SmallVec<[u16; 14]>;

pub fn simp(v: &[u16]) -> Simp {
    SmallVec::from_slice(v)
}

/// Bits `1..=p`: the cofaces that conormalization divides out.
#[inline]
pub fn conormal_bits(p: usize) -> u64 {
    ((1u64 << (p + 1)) - 1) & !1
}

/// A pointed cosimplicial simplicial set `X^p_n`. All operators take the
/// degrees of their *source*.
pub trait CsSet: Send + Sync {
    fn name(&self) -> String;

    /// All non-basepoint simplices of `X^p_n`, degenerate ones included.
    fn simplices(&self, p: usize, n: usize) -> Vec<Simp>;

    /// `d_i : X^p_n → X^p_{n−1}`.
    fn face(&self, p: usize, n: usize, i: usize, x: &[u16]) -> Option<Simp>;

    /// `s_j : X^p_n → X^p_{n+1}`.
    fn degeneracy(&self, p: usize, n: usize, j: usize, x: &[u16]) -> Simp;

    /// `d^k : X^p_n → X^{p+1}_n`, `k ≤ p+1`.
    fn coface(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp>;

    /// `s^k : X^p_n → X^{p−1}_n`, `k < p`.
    fn codegeneracy(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp>;

    /// The π-action, when the object carries one.
    fn swap(&self, _p: usize, _n: usize, _x: &[u16]) -> Option<Simp> {
        None
    }

    fn has_swap(&self) -> bool {
        false
    }

    fn is_constant(&self) -> bool {
        false
    }

    /// Bit `i` is set iff `x = s_i y` for some `y`.
    fn degeneracy_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        let mut m = 0;
        for i in 0..n {
            if let Some(y) = self.face(p, n, i, x) {
                if self.degeneracy(p, n - 1, i, &y).as_slice() == x {
                    m |= 1 << i;
                }
            }
        }
        m
    }

    /// Bit `k` is set iff `x` lies in the image of `d^k : X^{p−1} → X^p`.
    fn coface_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        if p == 0 {
            return 0;
        }
        let mut m = 0;
        for k in 0..=p {
            let j = k.saturating_sub(1);
            if let Some(y) = self.codegeneracy(p, n, j, x) {
                if self.coface(p - 1, n, k, &y).as_deref() == Some(x) {
                    m |= 1 << k;
                }
            }
        }
        m
    }

    /// Simplices outside every `im d^k`, `1 ≤ k ≤ p`, with their degeneracy masks.
    fn conormal_simplices(&self, p: usize, n: usize) -> Vec<(Simp, u64)> {
        let bits = conormal_bits(p);
        self.simplices(p, n)
            .into_iter()
            .filter(|x| self.coface_mask(p, n, x) & bits == 0)
            .map(|x| {
                let m = self.degeneracy_mask(p, n, &x);
                (x, m)
            })
            .collect()
    }

    fn nondegenerate(&self, p: usize, n: usize) -> Vec<Simp> {
        self.simplices(p, n)
            .into_iter()
            .filter(|x| self.degeneracy_mask(p, n, x) == 0)
            .collect()
    }

    /// Basis of `C N 𝕂X` at `(−p, n)`.
    fn cn_basis(&self, p: usize, n: usize) -> Vec<Simp> {
        self.conormal_simplices(p, n)
            .into_iter()
            .filter(|(_, m)| *m == 0)
            .map(|(x, _)| x)
            .collect()
    }
}

pub type CsRef = Arc<dyn CsSet>;

/// Applies a word of faces `d_{i₁}` then `d_{i₂}` … starting at level `n`.
pub fn apply_faces(x: &dyn CsSet, p: usize, n: usize, faces: &[usize], s: &[u16]) -> Option<Simp> {
    let mut cur = simp(s);
    let mut lvl = n;
    for &i in faces {
        cur = x.face(p, lvl, i, &cur)?;
        lvl -= 1;
    }
    Some(cur)
}

/// Applies `s_{j₁}` then `s_{j₂}` … starting at level `n`.
pub fn apply_degeneracies(x: &dyn CsSet, p: usize, n: usize, degs: &[usize], s: &[u16]) -> Simp {
    let mut cur = simp(s);
    for (lvl, &j) in (n..).zip(degs) {
        cur = x.degeneracy(p, lvl, j, &cur);
    }
    cur
}

/// The pullback `θ^* s` along a monotone map `θ : [m] → [n]`, computed as
/// faces for the missing values followed by degeneracies for the repeats.
pub fn pullback(x: &dyn CsSet, p: usize, n: usize, theta: &[usize], s: &[u16]) -> Option<Simp> {
    let mut image: Vec<usize> = theta.to_vec();
    image.dedup();
    let missing: Vec<usize> = (0..=n).rev().filter(|v| !image.contains(v)).collect();
    let cur = apply_faces(x, p, n, &missing, s)?;
    let lvl = n - missing.len();
    let repeats: Vec<usize> = (0..theta.len().saturating_sub(1)).filter(|&i| theta[i] == theta[i + 1]).collect();
    Some(apply_degeneracies(x, p, lvl, &repeats, &cur))
}

/// Pushes `s ∈ X^p` along a monotone map `α : [p] → [p′]` of the cosimplicial
/// direction: codegeneracies for the repeats, then cofaces for the missing values.
pub fn pushforward(x: &dyn CsSet, p: usize, n: usize, alpha: &[usize], target: usize, s: &[u16]) -> Option<Simp> {
    let mut cur = simp(s);
    let mut deg = p;
    for i in (0..alpha.len().saturating_sub(1)).rev() {
        if alpha[i] == alpha[i + 1] {
            cur = x.codegeneracy(deg, n, i, &cur)?;
            deg -= 1;
        }
    }
    let mut image: Vec<usize> = alpha.to_vec();
    image.dedup();
    for v in 0..=target {
        if !image.contains(&v) {
            cur = x.coface(deg, n, v, &cur)?;
            deg += 1;
        }
    }
    Some(cur)
}

fn monotone_sequences(len: usize, max: usize, out: &mut Vec<Simp>) {
    fn rec(cur: &mut Simp, len: usize, lo: u16, max: u16, out: &mut Vec<Simp>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            rec(cur, len, v, max, out);
            cur.pop();
        }
    }
    rec(&mut Simp::new(), len, 0, max as u16, out);
}

fn delete(x: &[u16], i: usize) -> Simp {
    let mut y = simp(x);
    y.remove(i);
    y
}

fn repeat(x: &[u16], j: usize) -> Simp {
    let mut y = simp(x);
    y.insert(j, x[j]);
    y
}

fn distinct(x: &[u16]) -> usize {
    1 + x.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `Δ^•` (equivalently `Δ₊^•` once pointed), optionally restricted to the
/// `ℓ`-skeleton. Simplices of `Δ^p_n` are monotone vertex words of length `n+1`.
#[derive(Clone, Debug)]
pub struct StandardCosimplicial {
    pub skeleton: Option<usize>,
}

impl CsSet for StandardCosimplicial {
    fn name(&self) -> String {
        match self.skeleton {
            Some(l) => format!("sk{l}Δ"),
            None => "Δ".into(),
        }
    }

    fn simplices(&self, p: usize, n: usize) -> Vec<Simp> {
        let mut out = Vec::new();
        monotone_sequences(n + 1, p, &mut out);
        if let Some(l) = self.skeleton {
            out.retain(|x| distinct(x) <= l + 1);
        }
        out
    }

    fn face(&self, _p: usize, _n: usize, i: usize, x: &[u16]) -> Option<Simp> {
        Some(delete(x, i))
    }

    fn degeneracy(&self, _p: usize, _n: usize, j: usize, x: &[u16]) -> Simp {
        repeat(x, j)
    }

    fn coface(&self, _p: usize, _n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        Some(x.iter().map(|&v| v + (v as usize >= k) as u16).collect())
    }

    fn codegeneracy(&self, _p: usize, _n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        Some(x.iter().map(|&v| v - (v as usize > k) as u16).collect())
    }

    fn degeneracy_mask(&self, _p: usize, _n: usize, x: &[u16]) -> u64 {
        x.windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    fn coface_mask(&self, p: usize, _n: usize, x: &[u16]) -> u64 {
        if p == 0 {
            return 0;
        }
        (0..=p as u16).filter(|v| !x.contains(v)).fold(0, |m, v| m | 1 << v)
    }
}

/// Simplicial sets regarded as constant cosimplicial objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstantKind {
    /// `Δ^q`; vertex words as for [`StandardCosimplicial`].
    Simplex(usize),
    /// `Eπ`: words in `{0,1}`, with `1` standing for `σ`.
    EPi,
    /// `Bπ = Eπ/π`: `Eπ`-words normalized to start with `0`.
    BPi,
}

#[derive(Clone, Debug)]
pub struct Constant(pub ConstantKind);

impl Constant {
    pub fn simplex(q: usize) -> Self {
        Constant(ConstantKind::Simplex(q))
    }

    pub fn point() -> Self {
        Constant(ConstantKind::Simplex(0))
    }

    fn normalize_b(mut x: Simp) -> Simp {
        if x.first() == Some(&1) {
            for v in x.iter_mut() {
                *v ^= 1;
            }
        }
        x
    }
}

impl CsSet for Constant {
    fn name(&self) -> String {
        match self.0 {
            ConstantKind::Simplex(q) => format!("cΔ{q}"),
            ConstantKind::EPi => "Eπ".into(),
            ConstantKind::BPi => "Bπ".into(),
        }
    }

    fn simplices(&self, _p: usize, n: usize) -> Vec<Simp> {
        match self.0 {
            ConstantKind::Simplex(q) => {
                let mut out = Vec::new();
                monotone_sequences(n + 1, q, &mut out);
                out
            }
            ConstantKind::EPi | ConstantKind::BPi => {
                let lead = if self.0 == ConstantKind::BPi { 1 } else { 0 };
                (0..1u32 << (n + 1 - lead))
                    .map(|bits| {
                        let mut s: Simp = (0..=n).map(|i| ((bits >> i) & 1) as u16).collect();
                        if lead == 1 {
                            s.rotate_right(1);
                            s[0] = 0;
                        }
                        s
                    })
                    .collect()
            }
        }
    }

    fn face(&self, _p: usize, _n: usize, i: usize, x: &[u16]) -> Option<Simp> {
        let y = delete(x, i);
        Some(match self.0 {
            ConstantKind::BPi => Self::normalize_b(y),
            _ => y,
        })
    }

    fn degeneracy(&self, _p: usize, _n: usize, j: usize, x: &[u16]) -> Simp {
        repeat(x, j)
    }

    fn coface(&self, _p: usize, _n: usize, _k: usize, x: &[u16]) -> Option<Simp> {
        Some(simp(x))
    }

    fn codegeneracy(&self, _p: usize, _n: usize, _k: usize, x: &[u16]) -> Option<Simp> {
        Some(simp(x))
    }

    fn swap(&self, _p: usize, _n: usize, x: &[u16]) -> Option<Simp> {
        match self.0 {
            ConstantKind::EPi => Some(x.iter().map(|v| v ^ 1).collect()),
            _ => Some(simp(x)),
        }
    }

    fn has_swap(&self) -> bool {
        true
    }

    fn is_constant(&self) -> bool {
        true
    }

    fn degeneracy_mask(&self, _p: usize, _n: usize, x: &[u16]) -> u64 {
        x.windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    fn coface_mask(&self, p: usize, _n: usize, _x: &[u16]) -> u64 {
        if p == 0 {
            0
        } else {
            (1u64 << (p + 1)) - 1
        }
    }
}

pub type Predicate = Arc<dyn Fn(usize, usize, &[u16]) -> bool + Send + Sync>;

/// A levelwise subset closed under all operators.
#[derive(Clone)]
pub struct Sub {
    pub inner: CsRef,
    pub keep: Predicate,
}

impl CsSet for Sub {
    fn name(&self) -> String {
        format!("sub({})", self.inner.name())
    }

    fn simplices(&self, p: usize, n: usize) -> Vec<Simp> {
        let mut v = self.inner.simplices(p, n);
        v.retain(|x| (self.keep)(p, n, x));
        v
    }

    fn face(&self, p: usize, n: usize, i: usize, x: &[u16]) -> Option<Simp> {
        self.inner.face(p, n, i, x)
    }

    fn degeneracy(&self, p: usize, n: usize, j: usize, x: &[u16]) -> Simp {
        self.inner.degeneracy(p, n, j, x)
    }

    fn coface(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        self.inner.coface(p, n, k, x)
    }

    fn codegeneracy(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        self.inner.codegeneracy(p, n, k, x)
    }

    fn swap(&self, p: usize, n: usize, x: &[u16]) -> Option<Simp> {
        self.inner.swap(p, n, x)
    }

    fn has_swap(&self) -> bool {
        self.inner.has_swap()
    }

    fn is_constant(&self) -> bool {
        self.inner.is_constant()
    }

    fn degeneracy_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        self.inner.degeneracy_mask(p, n, x)
    }

    fn coface_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        self.inner.coface_mask(p, n, x)
    }
}

/// `X/A`: simplices of the subobject `A` become the basepoint.
#[derive(Clone)]
pub struct Cofiber {
    pub inner: CsRef,
    pub collapse: Predicate,
}

impl Cofiber {
    fn keep(&self, p: usize, n: usize, x: Option<Simp>) -> Option<Simp> {
        x.filter(|y| !(self.collapse)(p, n, y))
    }
}

impl CsSet for Cofiber {
    fn name(&self) -> String {
        format!("cof({})", self.inner.name())
    }

    fn simplices(&self, p: usize, n: usize) -> Vec<Simp> {
        let mut v = self.inner.simplices(p, n);
        v.retain(|x| !(self.collapse)(p, n, x));
        v
    }

    fn face(&self, p: usize, n: usize, i: usize, x: &[u16]) -> Option<Simp> {
        self.keep(p, n - 1, self.inner.face(p, n, i, x))
    }

    fn degeneracy(&self, p: usize, n: usize, j: usize, x: &[u16]) -> Simp {
        self.inner.degeneracy(p, n, j, x)
    }

    fn coface(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        self.keep(p + 1, n, self.inner.coface(p, n, k, x))
    }

    fn codegeneracy(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        self.keep(p - 1, n, self.inner.codegeneracy(p, n, k, x))
    }

    fn swap(&self, p: usize, n: usize, x: &[u16]) -> Option<Simp> {
        self.keep(p, n, self.inner.swap(p, n, x))
    }

    fn has_swap(&self) -> bool {
        self.inner.has_swap()
    }

    fn is_constant(&self) -> bool {
        self.inner.is_constant()
    }

    fn degeneracy_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        self.inner.degeneracy_mask(p, n, x)
    }

    fn coface_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        self.inner.coface_mask(p, n, x)
    }
}

/// Kan suspension. A simplex `[j, x…]` of `(ΣX)_n` stands for `x ∈ X_i`
/// with `i = n − 1 − j`, i.e. `x` followed by `j` copies of the cone direction.
#[derive(Clone)]
pub struct Suspension {
    pub inner: CsRef,
}

impl Suspension {
    fn split(n: usize, x: &[u16]) -> (usize, usize) {
        let j = x[0] as usize;
        (j, n - 1 - j)
    }

    fn pack(j: usize, x: &[u16]) -> Simp {
        let mut s = Simp::with_capacity(x.len() + 1);
        s.push(j as u16);
        s.extend_from_slice(x);
        s
    }
}

impl CsSet for Suspension {
    fn name(&self) -> String {
        format!("Σ{}", self.inner.name())
    }

    fn simplices(&self, p: usize, n: usize) -> Vec<Simp> {
        let mut out = Vec::new();
        for i in 0..n {
            for x in self.inner.simplices(p, i) {
                out.push(Self::pack(n - 1 - i, &x));
            }
        }
        out
    }

    fn face(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        let (j, i) = Self::split(n, x);
        if k <= i {
            if i == 0 {
                return None;
            }
            let y = self.inner.face(p, i, k, &x[1..])?;
            Some(Self::pack(j, &y))
        } else if j == 0 {
            None
        } else {
            Some(Self::pack(j - 1, &x[1..]))
        }
    }

    fn degeneracy(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Simp {
        let (j, i) = Self::split(n, x);
        if k <= i {
            Self::pack(j, &self.inner.degeneracy(p, i, k, &x[1..]))
        } else {
            Self::pack(j + 1, &x[1..])
        }
    }

    fn coface(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        let (j, i) = Self::split(n, x);
        Some(Self::pack(j, &self.inner.coface(p, i, k, &x[1..])?))
    }

    fn codegeneracy(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        let (j, i) = Self::split(n, x);
        Some(Self::pack(j, &self.inner.codegeneracy(p, i, k, &x[1..])?))
    }

    fn swap(&self, p: usize, n: usize, x: &[u16]) -> Option<Simp> {
        let (j, i) = Self::split(n, x);
        Some(Self::pack(j, &self.inner.swap(p, i, &x[1..])?))
    }

    fn has_swap(&self) -> bool {
        self.inner.has_swap()
    }

    fn is_constant(&self) -> bool {
        self.inner.is_constant()
    }

    fn degeneracy_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        let (_, i) = Self::split(n, x);
        let upper = ((1u64 << n) - 1) & !((1u64 << (i + 1)) - 1);
        self.inner.degeneracy_mask(p, i, &x[1..]) | upper
    }

    fn coface_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        let (_, i) = Self::split(n, x);
        self.inner.coface_mask(p, i, &x[1..])
    }
}

/// Levelwise smash product (cartesian product when both factors are unpointed).
/// Encoding: `[len(a), a…, b…]`.
#[derive(Clone)]
pub struct Product {
    pub a: CsRef,
    pub b: CsRef,
    /// Whether the factors are the same object, so that the swap is defined.
    pub square: bool,
}

impl Product {
    pub fn new(a: CsRef, b: CsRef) -> Self {
        Product { a, b, square: false }
    }

    pub fn square(a: CsRef) -> Self {
        Product {
            b: a.clone(),
            a,
            square: true,
        }
    }

    pub fn pack(a: &[u16], b: &[u16]) -> Simp {
        let mut s = Simp::with_capacity(a.len() + b.len() + 1);
        s.push(a.len() as u16);
        s.extend_from_slice(a);
        s.extend_from_slice(b);
        s
    }

    pub fn split(x: &[u16]) -> (&[u16], &[u16]) {
        let l = x[0] as usize;
        (&x[1..1 + l], &x[1 + l..])
    }

    fn both(a: Option<Simp>, b: Option<Simp>) -> Option<Simp> {
        Some(Self::pack(&a?, &b?))
    }
}

impl CsSet for Product {
    fn name(&self) -> String {
        format!("({}∧{})", self.a.name(), self.b.name())
    }

    fn simplices(&self, p: usize, n: usize) -> Vec<Simp> {
        let xs = self.a.simplices(p, n);
        let ys = self.b.simplices(p, n);
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for x in &xs {
            for y in &ys {
                out.push(Self::pack(x, y));
            }
        }
        out
    }

    fn face(&self, p: usize, n: usize, i: usize, x: &[u16]) -> Option<Simp> {
        let (u, v) = Self::split(x);
        Self::both(self.a.face(p, n, i, u), self.b.face(p, n, i, v))
    }

    fn degeneracy(&self, p: usize, n: usize, j: usize, x: &[u16]) -> Simp {
        let (u, v) = Self::split(x);
        Self::pack(&self.a.degeneracy(p, n, j, u), &self.b.degeneracy(p, n, j, v))
    }

    fn coface(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        let (u, v) = Self::split(x);
        Self::both(self.a.coface(p, n, k, u), self.b.coface(p, n, k, v))
    }

    fn codegeneracy(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        let (u, v) = Self::split(x);
        Self::both(self.a.codegeneracy(p, n, k, u), self.b.codegeneracy(p, n, k, v))
    }

    fn swap(&self, _p: usize, _n: usize, x: &[u16]) -> Option<Simp> {
        if !self.square {
            return None;
        }
        let (u, v) = Self::split(x);
        Some(Self::pack(v, u))
    }

    fn has_swap(&self) -> bool {
        self.square
    }

    fn is_constant(&self) -> bool {
        self.a.is_constant() && self.b.is_constant()
    }

    fn degeneracy_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        let (u, v) = Self::split(x);
        self.a.degeneracy_mask(p, n, u) & self.b.degeneracy_mask(p, n, v)
    }

    fn coface_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        let (u, v) = Self::split(x);
        self.a.coface_mask(p, n, u) & self.b.coface_mask(p, n, v)
    }

    fn conormal_simplices(&self, p: usize, n: usize) -> Vec<(Simp, u64)> {
        let bits = conormal_bits(p);
        let xs: Vec<(Simp, u64, u64)> = self
            .a
            .simplices(p, n)
            .into_iter()
            .map(|x| {
                let c = self.a.coface_mask(p, n, &x);
                let d = self.a.degeneracy_mask(p, n, &x);
                (x, c, d)
            })
            .collect();
        let ys: Vec<(Simp, u64, u64)> = if self.square {
            xs.clone()
        } else {
            self.b
                .simplices(p, n)
                .into_iter()
                .map(|y| {
                    let c = self.b.coface_mask(p, n, &y);
                    let d = self.b.degeneracy_mask(p, n, &y);
                    (y, c, d)
                })
                .collect()
        };
        let mut out = Vec::new();
        for (x, cx, dx) in &xs {
            for (y, cy, dy) in &ys {
                if cx & cy & bits == 0 {
                    out.push((Self::pack(x, y), dx & dy));
                }
            }
        }
        out
    }
}

/// `Eπ ×_π X` for `X` with a swap. A simplex `[e, x…]` packs the `Eπ`
/// coordinate as a bit word with bit 0 clear, which picks one representative
/// from each orbit of the free diagonal action.
#[derive(Clone)]
pub struct HomotopyOrbits {
    pub inner: CsRef,
}

impl HomotopyOrbits {
    pub fn new(inner: CsRef) -> Self {
        assert!(inner.has_swap(), "homotopy orbits need a π-action");
        HomotopyOrbits { inner }
    }

    /// The orbit representative of `(e, x)`.
    pub fn canon(&self, p: usize, n: usize, e: u16, x: Simp) -> Option<Simp> {
        if e & 1 == 0 {
            let mut s = Simp::with_capacity(x.len() + 1);
            s.push(e);
            s.extend_from_slice(&x);
            Some(s)
        } else {
            let mask = ((1u32 << (n + 1)) - 1) as u16;
            let y = self.inner.swap(p, n, &x)?;
            let mut s = Simp::with_capacity(y.len() + 1);
            s.push(!e & mask);
            s.extend_from_slice(&y);
            Some(s)
        }
    }

    /// Bit mask of positions `i` with `e_i = e_{i+1}`.
    pub fn e_mask(n: usize, e: u16) -> u64 {
        let diff = (e ^ (e >> 1)) as u64;
        !diff & ((1u64 << n) - 1)
    }
}

fn bit_delete(e: u16, i: usize) -> u16 {
    let low = e & ((1u16 << i) - 1);
    let high = (e >> (i + 1)) << i;
    low | high
}

fn bit_repeat(e: u16, j: usize) -> u16 {
    let low = e & ((1u16 << (j + 1)) - 1);
    let high = (e >> j) << (j + 1);
    low | high
}

impl CsSet for HomotopyOrbits {
    fn name(&self) -> String {
        format!("Eπ×π{}", self.inner.name())
    }

    fn simplices(&self, p: usize, n: usize) -> Vec<Simp> {
        let xs = self.inner.simplices(p, n);
        let mut out = Vec::new();
        for e in (0..1u16 << (n + 1)).filter(|e| e & 1 == 0) {
            for x in &xs {
                let mut s = Simp::with_capacity(x.len() + 1);
                s.push(e);
                s.extend_from_slice(x);
                out.push(s);
            }
        }
        out
    }

    fn face(&self, p: usize, n: usize, i: usize, x: &[u16]) -> Option<Simp> {
        let y = self.inner.face(p, n, i, &x[1..])?;
        self.canon(p, n - 1, bit_delete(x[0], i), y)
    }

    fn degeneracy(&self, p: usize, n: usize, j: usize, x: &[u16]) -> Simp {
        let y = self.inner.degeneracy(p, n, j, &x[1..]);
        let mut s = Simp::with_capacity(y.len() + 1);
        s.push(bit_repeat(x[0], j));
        s.extend_from_slice(&y);
        s
    }

    fn coface(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        let y = self.inner.coface(p, n, k, &x[1..])?;
        self.canon(p + 1, n, x[0], y)
    }

    fn codegeneracy(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        let y = self.inner.codegeneracy(p, n, k, &x[1..])?;
        self.canon(p - 1, n, x[0], y)
    }

    fn is_constant(&self) -> bool {
        self.inner.is_constant()
    }

    fn degeneracy_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        Self::e_mask(n, x[0]) & self.inner.degeneracy_mask(p, n, &x[1..])
    }

    fn coface_mask(&self, p: usize, n: usize, x: &[u16]) -> u64 {
        self.inner.coface_mask(p, n, &x[1..])
    }

    fn conormal_simplices(&self, p: usize, n: usize) -> Vec<(Simp, u64)> {
        let mut out = Vec::new();
        for (x, m) in self.inner.conormal_simplices(p, n) {
            for e in (0..1u16 << (n + 1)).filter(|e| e & 1 == 0) {
                let mut s = Simp::with_capacity(x.len() + 1);
                s.push(e);
                s.extend_from_slice(&x);
                out.push((s, Self::e_mask(n, e) & m));
            }
        }
        out
    }

    fn cn_basis(&self, p: usize, n: usize) -> Vec<Simp> {
        let mut out = Vec::new();
        for (x, d) in self.inner.conormal_simplices(p, n) {
            // transitions are forced at every position where x is degenerate
            let free: Vec<usize> = (0..n).filter(|i| d >> i & 1 == 0).collect();
            for bits in 0..1u32 << free.len() {
                let mut e: u16 = 0;
                let mut cur = 0u16;
                let mut fi = 0;
                for i in 0..n {
                    let flip = if d >> i & 1 == 1 {
                        true
                    } else {
                        let b = bits >> fi & 1 == 1;
                        fi += 1;
                        b
                    };
                    if flip {
                        cur ^= 1;
                    }
                    e |= cur << (i + 1);
                }
                let mut s = Simp::with_capacity(x.len() + 1);
                s.push(e);
                s.extend_from_slice(&x);
                out.push(s);
            }
        }
        out
    }
}

/// Checks that `collapse` picks out an operator-closed subobject up to
/// simplicial level `q` and cosimplicial degree `p`.
pub fn is_operator_closed(x: &dyn CsSet, pred: &Predicate, p_max: usize, q_max: usize) -> bool {
    for p in 0..=p_max {
        for n in 0..=q_max {
            for s in x.simplices(p, n).into_iter().filter(|s| pred(p, n, s)) {
                let inside = |pp: usize, nn: usize, y: Option<Simp>| y.is_none_or(|y| pred(pp, nn, &y));
                if n > 0 && !(0..=n).all(|i| inside(p, n - 1, x.face(p, n, i, &s))) {
                    return false;
                }
                if !(0..=n).all(|j| pred(p, n + 1, &x.degeneracy(p, n, j, &s))) {
                    return false;
                }
                if p < p_max && !(0..=p + 1).all(|k| inside(p + 1, n, x.coface(p, n, k, &s))) {
                    return false;
                }
                if p > 0 && !(0..p).all(|k| inside(p - 1, n, x.codegeneracy(p, n, k, &s))) {
                    return false;
                }
            }
        }
    }
    true
}

pub(crate) fn bit_delete_pub(e: u16, i: usize) -> u16 {
    bit_delete(e, i)
}

pub(crate) fn bit_repeat_pub(e: u16, j: usize) -> u16 {
    bit_repeat(e, j)
}

/// First failure of a simplicial, cosimplicial or mixed identity on the
/// simplices of `X^p_n`, `p ≤ p_max`, `n ≤ q_max`, as `(name, p, n)`.
pub fn identity_failure(x: &dyn CsSet, p_max: usize, q_max: usize) -> Option<(&'static str, usize, usize)> {
    let d = |p: usize, n: usize, i: usize, s: Option<Simp>| s.and_then(|s| x.face(p, n, i, &s));
    let sd = |p: usize, n: usize, j: usize, s: Option<Simp>| s.map(|s| x.degeneracy(p, n, j, &s));
    let cd = |p: usize, n: usize, k: usize, s: Option<Simp>| s.and_then(|s| x.coface(p, n, k, &s));
    let cs = |p: usize, n: usize, k: usize, s: Option<Simp>| s.and_then(|s| x.codegeneracy(p, n, k, &s));
    for p in 0..=p_max {
        for n in 0..=q_max {
            for s in x.simplices(p, n) {
                let s = Some(s);
                for i in 0..=n {
                    for j in i + 1..=n {
                        if n >= 2 && d(p, n - 1, i, d(p, n, j, s.clone())) != d(p, n - 1, j - 1, d(p, n, i, s.clone())) {
                            return Some(("d_i d_j", p, n));
                        }
                    }
                    for j in i..=n {
                        if sd(p, n + 1, i, sd(p, n, j, s.clone())) != sd(p, n + 1, j + 1, sd(p, n, i, s.clone())) {
                            return Some(("s_i s_j", p, n));
                        }
                    }
                }
                for j in 0..=n {
                    let up = sd(p, n, j, s.clone());
                    for i in 0..=n + 1 {
                        let lhs = d(p, n + 1, i, up.clone());
                        let rhs = if i == j || i == j + 1 {
                            s.clone()
                        } else if i < j {
                            sd(p, n - 1, j - 1, d(p, n, i, s.clone()))
                        } else {
                            sd(p, n - 1, j, d(p, n, i - 1, s.clone()))
                        };
                        if lhs != rhs {
                            return Some(("d_i s_j", p, n));
                        }
                    }
                }
                for i in 0..=p + 1 {
                    for j in i + 1..=p + 2 {
                        if cd(p + 1, n, j, cd(p, n, i, s.clone())) != cd(p + 1, n, i, cd(p, n, j - 1, s.clone())) {
                            return Some(("d^j d^i", p, n));
                        }
                    }
                }
                for k in 0..=p + 1 {
                    let up = cd(p, n, k, s.clone());
                    for j in 0..=p {
                        let lhs = cs(p + 1, n, j, up.clone());
                        let rhs = if k == j || k == j + 1 {
                            s.clone()
                        } else if k < j {
                            cd(p - 1, n, k, cs(p, n, j - 1, s.clone()))
                        } else {
                            cd(p - 1, n, k - 1, cs(p, n, j, s.clone()))
                        };
                        if lhs != rhs {
                            return Some(("s^j d^k", p, n));
                        }
                    }
                }
                if p >= 2 {
                    for i in 0..p - 1 {
                        for j in i..p - 1 {
                            if cs(p - 1, n, i, cs(p, n, j + 1, s.clone())) != cs(p - 1, n, j, cs(p, n, i, s.clone())) {
                                return Some(("s^j s^i", p, n));
                            }
                        }
                    }
                }
                for k in 0..=p + 1 {
                    for i in 0..=n {
                        if n >= 1 && cd(p, n - 1, k, d(p, n, i, s.clone())) != d(p + 1, n, i, cd(p, n, k, s.clone())) {
                            return Some(("d^k d_i", p, n));
                        }
                        if cd(p, n + 1, k, sd(p, n, i, s.clone())) != sd(p + 1, n, i, cd(p, n, k, s.clone())) {
                            return Some(("d^k s_i", p, n));
                        }
                    }
                }
                for k in 0..p {
                    for i in 0..=n {
                        if n >= 1 && cs(p, n - 1, k, d(p, n, i, s.clone())) != d(p - 1, n, i, cs(p, n, k, s.clone())) {
                            return Some(("s^k d_i", p, n));
                        }
                        if cs(p, n + 1, k, sd(p, n, i, s.clone())) != sd(p - 1, n, i, cs(p, n, k, s.clone())) {
                            return Some(("s^k s_i", p, n));
                        }
                    }
                }
            }
        }
    }
    None
}
