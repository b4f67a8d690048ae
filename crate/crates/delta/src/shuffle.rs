use crate::DeltaError;

/// A `(p,q)`-shuffle: a permutation of `[0, p+q−1]` increasing on `[0, p−1]`
/// and on `[p, p+q−1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shuffle {
    p: usize,
    q: usize,
    perm: Vec<usize>,
}

impl Shuffle {
    pub fn new(p: usize, q: usize, perm: Vec<usize>) -> Result<Self, DeltaError> {
        let n = p + q;
        let mut seen = vec![false; n];
        let ok = perm.len() == n
            && perm.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
            && perm[..p].windows(2).all(|w| w[0] < w[1])
            && perm[p..].windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(DeltaError::NotShuffle { p, q, perm });
        }
        Ok(Shuffle { p, q, perm })
    }

    /// The shuffle whose first block is the sorted set `first`.
    pub fn from_first_block(p: usize, q: usize, first: &[usize]) -> Result<Self, DeltaError> {
        let mut perm: Vec<usize> = first.to_vec();
        perm.extend((0..p + q).filter(|v| !first.contains(v)));
        Shuffle::new(p, q, perm)
    }

    pub fn identity(p: usize, q: usize) -> Self {
        Shuffle {
            p,
            q,
            perm: (0..p + q).collect(),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.p + self.q
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn first_block(&self) -> &[usize] {
        &self.perm[..self.p]
    }

    pub fn second_block(&self) -> &[usize] {
        &self.perm[self.p..]
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// All `(p,q)`-shuffles in lexicographic order of the permutation.
pub fn enumerate_shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    let n = p + q;
    let mut out = Vec::with_capacity(binomial(n, p) as usize);
    let mut comb: Vec<usize> = (0..p).collect();
    loop {
        out.push(Shuffle::from_first_block(p, q, &comb).expect("valid combination"));
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if comb[i] < n - p + i {
                comb[i] += 1;
                for j in i + 1..p {
                    comb[j] = comb[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Splits a `(p,q)`-shuffle at the cut `z` into `(k, α, β)` with
/// `α ∈ Sh(k, z−k)` and `β ∈ Sh(p−k, q−z+k)`.
///
/// `k` is the number of first-block values below `z`.
pub fn shuffle_split(
    gamma: &Shuffle,
    z: usize,
) -> Result<(usize, Shuffle, Shuffle), DeltaError> {
    let (p, q) = (gamma.p, gamma.q);
    if z > p + q {
        return Err(DeltaError::CutOutOfRange { z, total: p + q });
    }
    let g = &gamma.perm;
    let k = g[..p].iter().take_while(|&&v| v < z).count();
    let mut a = Vec::with_capacity(z);
    a.extend_from_slice(&g[..k]);
    a.extend((k..z).map(|t| g[t + p - k]));
    let mut b = Vec::with_capacity(p + q - z);
    b.extend((0..p - k).map(|t| g[t + k] - z));
    b.extend((p - k..p + q - z).map(|t| g[t + z] - z));
    let alpha = Shuffle::new(k, z - k, a)?;
    let beta = Shuffle::new(p - k, q + k - z, b)?;
    Ok((k, alpha, beta))
}

/// The bijection `⊔ₖ Sh(k, z−k) × Sh(p−k, q−z+k) → Sh(p, q)` with `k = α.p()`,
/// `z = α.len()`, `p = k + β.p()`, `q = α.q() + β.q()`.
pub fn eta(alpha: &Shuffle, beta: &Shuffle) -> Shuffle {
    let k = alpha.p;
    let z = alpha.len();
    let p = k + beta.p;
    let q = alpha.q + beta.q;
    let perm = (0..p + q)
        .map(|c| {
            if c < k {
                alpha.perm[c]
            } else if c < p {
                beta.perm[c - k] + z
            } else if c < p + z - k {
                alpha.perm[c - p + k]
            } else {
                beta.perm[c - z] + z
            }
        })
        .collect();
    Shuffle { p, q, perm }
}

pub fn eta_inverse(gamma: &Shuffle, z: usize) -> Result<(usize, Shuffle, Shuffle), DeltaError> {
    shuffle_split(gamma, z)
}

/// `{μ ∈ Sh(k,p) : r ≤ μ(0)}`; for `k = 0` the condition is vacuous.
pub fn restricted_domain(k: usize, p: usize, r: usize) -> Vec<Shuffle> {
    enumerate_shuffles(k, p)
        .into_iter()
        .filter(|mu| k == 0 || r <= mu.perm[0])
        .collect()
}

/// The bijection `{μ ∈ Sh(k,p) : r ≤ μ(0)} → Sh(k, p−r)`.
pub fn eta_restricted(mu: &Shuffle, r: usize) -> Result<Shuffle, DeltaError> {
    let (k, p) = (mu.p, mu.q);
    if r > p {
        return Err(DeltaError::RestrictionTooLarge { r, p });
    }
    if k > 0 && mu.perm[0] < r {
        return Err(DeltaError::OutsideRestriction);
    }
    let mut a = Vec::with_capacity(k + p - r);
    a.extend(mu.perm[..k].iter().map(|&v| v - r));
    a.extend((k..k + p - r).map(|t| mu.perm[t + r] - r));
    Shuffle::new(k, p - r, a)
}

pub fn eta_restricted_inverse(alpha: &Shuffle, r: usize) -> Shuffle {
    let k = alpha.p;
    let p = alpha.q + r;
    let perm = (0..k + p)
        .map(|t| {
            if t < k {
                alpha.perm[t] + r
            } else if t < k + r {
                t - k
            } else {
                alpha.perm[t - r] + r
            }
        })
        .collect();
    Shuffle { p: k, q: p, perm }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_one_shuffles_in_order() {
        let perms: Vec<Vec<usize>> = enumerate_shuffles(2, 1)
            .into_iter()
            .map(|s| s.perm().to_vec())
            .collect();
        assert_eq!(perms, vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 2, 0]]);
    }

    #[test]
    fn empty_blocks() {
        assert_eq!(enumerate_shuffles(0, 0).len(), 1);
        assert_eq!(enumerate_shuffles(0, 3), vec![Shuffle::identity(0, 3)]);
    }

    #[test]
    fn rejects_non_shuffle() {
        assert!(Shuffle::new(2, 1, vec![1, 0, 2]).is_err());
        assert!(Shuffle::new(1, 1, vec![0, 0]).is_err());
    }

    #[test]
    fn split_when_whole_first_block_is_below_cut() {
        let g = Shuffle::identity(1, 2);
        let (k, a, b) = shuffle_split(&g, 2).unwrap();
        assert_eq!(k, 1);
        assert_eq!(eta(&a, &b), g);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
