use crate::monotone::{MonotoneMap, Op};
use crate::shuffle::{eta, eta_restricted, Shuffle};
use crate::DeltaError;

/// Two operator words evaluated on a common source.
#[derive(Clone, Debug)]
pub struct WordIdentity {
    pub name: &'static str,
    pub lhs: MonotoneMap,
    pub rhs: MonotoneMap,
}

impl WordIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `s^{i₀} ⋯ s^{i_{n−1}}` written left to right.
pub fn word_of_degeneracies(indices: &[usize]) -> Vec<Op> {
    indices.iter().map(|&j| Op::Codegeneracy(j)).collect()
}

fn faces_desc(hi: usize, lo: usize) -> Vec<Op> {
    (lo..=hi).rev().map(Op::Coface).collect()
}

fn faces_below(n: usize) -> Vec<Op> {
    (0..n).rev().map(Op::Coface).collect()
}

fn cat(a: Vec<Op>, b: Vec<Op>) -> Vec<Op> {
    let mut a = a;
    a.extend(b);
    a
}

/// The two codegeneracy composites a shuffle contributes to the shuffle map:
/// `s^{τ(p)}⋯s^{τ(p+q−1)} : [p+q] → [p]` and `s^{τ(0)}⋯s^{τ(p−1)} : [p+q] → [q]`.
pub fn nabla_words(tau: &Shuffle) -> (MonotoneMap, MonotoneMap) {
    let n = tau.len();
    let a = MonotoneMap::from_word(&word_of_degeneracies(tau.second_block()), n)
        .expect("shuffle word");
    let b = MonotoneMap::from_word(&word_of_degeneracies(tau.first_block()), n)
        .expect("shuffle word");
    (a, b)
}

/// The four identities relating the shuffle `γ = η(α,β)` to the front and
/// back faces at the cut `z = k + j`.
pub fn tensor_identities(alpha: &Shuffle, beta: &Shuffle) -> Result<Vec<WordIdentity>, DeltaError> {
    let (k, j) = (alpha.p(), alpha.q());
    let (kb, jb) = (beta.p(), beta.q());
    let (z, p, q) = (k + j, k + kb, j + jb);
    let g = eta(alpha, beta);
    let gs = g.perm();
    let a = alpha.perm();
    let b = beta.perm();
    let front = faces_desc(p + q, z + 1);
    let back = faces_below(z);
    let mk = |name, l: Vec<Op>, r: Vec<Op>, src| -> Result<WordIdentity, DeltaError> {
        Ok(WordIdentity {
            name,
            lhs: MonotoneMap::from_word(&l, src)?,
            rhs: MonotoneMap::from_word(&r, src)?,
        })
    };
    Ok(vec![
        mk(
            "front/second",
            cat(word_of_degeneracies(&gs[p..]), front.clone()),
            cat(faces_desc(k + kb, k + 1), word_of_degeneracies(&a[k..k + j])),
            z,
        )?,
        mk(
            "front/first",
            cat(word_of_degeneracies(&gs[..p]), front),
            cat(faces_desc(q, j + 1), word_of_degeneracies(&a[..k])),
            z,
        )?,
        mk(
            "back/second",
            cat(word_of_degeneracies(&gs[p..]), back.clone()),
            cat(faces_below(k), word_of_degeneracies(&b[kb..kb + jb])),
            p + q - z,
        )?,
        mk(
            "back/first",
            cat(word_of_degeneracies(&gs[..p]), back),
            cat(faces_below(j), word_of_degeneracies(&b[..kb])),
            p + q - z,
        )?,
    ])
}

/// The two identities relating `μ ∈ Sh(k,p)` with `r ≤ μ(0)` to its image
/// under the restricted bijection, after removing the first `r` vertices.
pub fn comodule_identities(mu: &Shuffle, r: usize) -> Result<Vec<WordIdentity>, DeltaError> {
    let alpha = eta_restricted(mu, r)?;
    let (k, p) = (mu.p(), mu.q());
    let m = mu.perm();
    let a = alpha.perm();
    let src = p + k - r;
    Ok(vec![
        WordIdentity {
            name: "degeneracies past front faces",
            lhs: MonotoneMap::from_word(&cat(word_of_degeneracies(&m[..k]), faces_below(r)), src)?,
            rhs: MonotoneMap::from_word(&cat(faces_below(r), word_of_degeneracies(&a[..k])), src)?,
        },
        WordIdentity {
            name: "complementary degeneracies",
            lhs: MonotoneMap::from_word(&cat(word_of_degeneracies(&m[k..]), faces_below(r)), src)?,
            rhs: MonotoneMap::from_word(&word_of_degeneracies(&a[k..]), src)?,
        },
    ])
}

/// `s^{μ(0)}⋯s^{μ(k−1)} d^{p+k}⋯d^{r+1} : [r] → [p]`.
pub fn restricted_front_map(mu: &Shuffle, r: usize) -> Result<MonotoneMap, DeltaError> {
    let (k, p) = (mu.p(), mu.q());
    let faces = faces_desc(p + k, r + 1);
    MonotoneMap::from_word(&cat(word_of_degeneracies(&mu.perm()[..k]), faces), r)
}
