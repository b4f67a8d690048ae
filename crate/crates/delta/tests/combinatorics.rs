use cosimp_delta::*;
use proptest::prelude::*;
use std::collections::HashSet;

#[test]
fn shuffle_counts_are_binomial() {
    for p in 0..=5 {
        for q in 0..=5 {
            let all = enumerate_shuffles(p, q);
            assert_eq!(all.len() as u64, binomial(p + q, p));
            assert!(all.windows(2).all(|w| w[0].perm() < w[1].perm()));
        }
    }
}

#[test]
fn eta_is_a_bijection_with_vandermonde_count() {
    for p in 0..=5usize {
        for q in 0..=5usize {
            for z in 0..=p + q {
                let mut seen = HashSet::new();
                let mut total = 0u64;
                for k in z.saturating_sub(q)..=p.min(z) {
                    total += binomial(z, k) * binomial(p + q - z, p - k);
                    for a in enumerate_shuffles(k, z - k) {
                        for b in enumerate_shuffles(p - k, q + k - z) {
                            let g = eta(&a, &b);
                            assert_eq!((g.p(), g.q()), (p, q));
                            assert!(Shuffle::new(p, q, g.perm().to_vec()).is_ok());
                            assert_eq!(eta_inverse(&g, z).unwrap(), (k, a.clone(), b));
                            assert!(seen.insert(g));
                        }
                    }
                }
                assert_eq!(total, binomial(p + q, p));
                assert_eq!(seen.len() as u64, total);
            }
        }
    }
}

#[test]
fn restricted_eta_is_a_bijection() {
    for k in 0..=3 {
        for p in 0..=5 {
            for r in 0..=p {
                let dom = restricted_domain(k, p, r);
                assert_eq!(dom.len() as u64, binomial(k + p - r, k));
                let mut seen = HashSet::new();
                for mu in &dom {
                    let a = eta_restricted(mu, r).unwrap();
                    assert_eq!((a.p(), a.q()), (k, p - r));
                    assert_eq!(&eta_restricted_inverse(&a, r), mu);
                    assert!(seen.insert(a));
                }
                for a in enumerate_shuffles(k, p - r) {
                    assert!(dom.contains(&eta_restricted_inverse(&a, r)));
                }
            }
        }
    }
}

#[test]
fn tensor_word_identities() {
    for p in 0..=5usize {
        for q in 0..=5usize {
            for z in 0..=p + q {
                for k in z.saturating_sub(q)..=p.min(z) {
                    for a in enumerate_shuffles(k, z - k) {
                        for b in enumerate_shuffles(p - k, q + k - z) {
                            for id in tensor_identities(&a, &b).unwrap() {
                                assert!(id.holds(), "{} fails for {:?} {:?}", id.name, a, b);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn comodule_word_identities_and_injectivity() {
    for k in 0..=3 {
        for p in 0..=5 {
            for r in 0..=p {
                for mu in enumerate_shuffles(k, p) {
                    let inj = restricted_front_map(&mu, r).unwrap().is_injective();
                    let inside = k == 0 || r <= mu.apply(0);
                    assert_eq!(inj, inside, "{mu:?} r={r}");
                    if inside {
                        for id in comodule_identities(&mu, r).unwrap() {
                            assert!(id.holds(), "{} fails for {:?} r={}", id.name, mu, r);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn nabla_words_have_expected_endpoints() {
    for t in enumerate_shuffles(2, 3) {
        let (a, b) = nabla_words(&t);
        assert_eq!((a.source(), a.target()), (5, 2));
        assert_eq!((b.source(), b.target()), (5, 3));
        assert!(a.is_surjective() && b.is_surjective());
    }
}

fn monotone(max_src: usize, max_tgt: usize) -> impl Strategy<Value = MonotoneMap> {
    (0..=max_src, 0..=max_tgt).prop_flat_map(|(s, t)| monotone_between(s, t))
}

fn monotone_between(s: usize, t: usize) -> impl Strategy<Value = MonotoneMap> {
    prop::collection::vec(0..=t, s + 1).prop_map(move |mut v| {
        v.sort();
        MonotoneMap::new(v, t).unwrap()
    })
}

fn composable_triple() -> impl Strategy<Value = (MonotoneMap, MonotoneMap, MonotoneMap)> {
    (0..5usize, 0..5usize, 0..5usize, 0..5usize).prop_flat_map(|(a, b, c, d)| {
        (monotone_between(a, b), monotone_between(b, c), monotone_between(c, d))
    })
}

proptest! {
    #[test]
    fn factorization_recomposes(f in monotone(6, 6)) {
        let (s, d) = f.epi_mono_factorize();
        let mut w = d.clone();
        w.extend(s.iter().copied());
        prop_assert_eq!(MonotoneMap::from_word(&w, f.source()).unwrap(), f.clone());
        prop_assert_eq!(f.source() + 1 - s.len(), f.image_size());
    }

    #[test]
    fn composition_is_associative((f, g, h) in composable_triple()) {
        let lhs = f.then(&g).unwrap().then(&h).unwrap();
        let rhs = f.then(&g.then(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn cosimplicial_identities() {
    let d = MonotoneMap::coface;
    let s = MonotoneMap::codegeneracy;
    for n in 1..6 {
        for j in 0..=n {
            for i in 0..j {
                assert_eq!(d(i, n).then(&d(j, n + 1)), d(j - 1, n).then(&d(i, n + 1)));
            }
        }
    }
    for n in 2..6 {
        for i in 0..=n {
            for j in 0..n {
                let c = d(i, n).then(&s(j, n - 1)).unwrap();
                let rhs = if i == j || i == j + 1 {
                    MonotoneMap::identity(n - 1)
                } else if i < j {
                    s(j - 1, n - 2).then(&d(i, n - 1)).unwrap()
                } else {
                    s(j, n - 2).then(&d(i - 1, n - 1)).unwrap()
                };
                assert_eq!(c, rhs, "d^{i} then s^{j} on [{n}]");
            }
        }
    }
    for n in 0..5 {
        for i in 0..=n {
            for j in i..=n {
                assert_eq!(s(j + 1, n + 1).then(&s(i, n)), s(i, n + 1).then(&s(j, n)));
            }
        }
    }
}
