use cosimp_core::chains::*;
use cosimp_core::cosimplicial::{cn, total};
use cosimp_core::operations::*;
use cosimp_core::simplicial::*;
use cosimp_core::specseq::page_homology_failure;
use cosimp_core::universal::hpi;
use cosimp_delta::enumerate_shuffles;
use cosimp_gf2::SparseVec;
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
enum Expr {
    Simplex(usize),
    Skeleton(i64, usize),
    Cosimplicial,
    BPi,
    Omega(usize, usize),
    Suspension(Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Orbits(Box<Expr>),
}

impl Expr {
    fn build(&self) -> CsRef {
        match self {
            Expr::Simplex(p) => build_preset(Preset::Simplex(*p)),
            Expr::Skeleton(ell, p) => build_preset(Preset::Skeleton { ell: *ell, p: *p }),
            Expr::Cosimplicial => build_preset(Preset::Cosimplicial),
            Expr::BPi => build_preset(Preset::BPi),
            Expr::Omega(s, t) => omega(*s, *t).unwrap(),
            Expr::Suspension(x) => kan_suspension(x.build()),
            Expr::Product(a, b) => Arc::new(Product::new(a.build(), b.build())),
            Expr::Orbits(x) => hpi(x.build()),
        }
    }
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0usize..=2).prop_map(Expr::Simplex),
        (-1i64..=1, 1usize..=2).prop_map(|(l, p)| Expr::Skeleton(l, p)),
        Just(Expr::Cosimplicial),
        Just(Expr::BPi),
        (1usize..=2, 0usize..=1).prop_map(|(s, d)| Expr::Omega(s, s + d)),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(2, 4, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|x| Expr::Suspension(Box::new(x))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Product(Box::new(a), Box::new(b))),
            leaf().prop_map(|x| Expr::Orbits(Box::new(x))),
        ]
    })
    .prop_filter("keeps the cells small", |e| {
        let x = e.build();
        (0..=2).map(|p| x.simplices(p, 3).len()).sum::<usize>() <= 400
    })
}

fn mod2<T: Ord>(v: Vec<T>) -> Vec<T> {
    let mut counts: BTreeMap<T, bool> = BTreeMap::new();
    for t in v {
        let c = counts.entry(t).or_insert(false);
        *c = !*c;
    }
    counts.into_iter().filter(|(_, c)| *c).map(|(t, _)| t).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn operator_identities_hold(e in expr()) {
        let x = e.build();
        prop_assert_eq!(identity_failure(x.as_ref(), 2, 2), None);
    }

    #[test]
    fn conormalized_bicomplexes_are_bicomplexes(e in expr()) {
        let b = cn(e.build(), 2, 3);
        prop_assert_eq!(b.relation_failure(), None);
        let (f, _) = total(&b);
        prop_assert!(f.is_differential());
        prop_assert!(f.filtration_preserved());
        for r in 1..=3 {
            prop_assert_eq!(page_homology_failure(&f, r), None);
        }
    }

    #[test]
    fn normalized_chains_square_to_zero(e in expr(), p in 0usize..=1) {
        let c = normalize(&Linearized { x: e.build(), p }, 3);
        prop_assert!(c.complex.is_differential());
    }

    #[test]
    fn alexander_whitney_inverts_shuffle(e1 in expr(), e2 in expr(), p in 0usize..=1, j in 0usize..=2, k in 0usize..=2) {
        let a = Linearized { x: e1.build(), p };
        let b = Linearized { x: e2.build(), p };
        let shuffles = enumerate_shuffles(j, k);
        for x in a.nondegenerate(j).iter().take(4) {
            for y in b.nondegenerate(k).iter().take(4) {
                let mut triples = Vec::new();
                for pair in shuffle_simplicial(&a, &b, j, x, k, y, &shuffles) {
                    triples.extend(aw_simplicial(&a, &b, j + k, &pair));
                }
                prop_assert_eq!(mod2(triples), vec![(j, x.clone(), y.clone())]);
            }
        }
    }

    #[test]
    fn qm_commutes_with_boundary(n in 0usize..=2, m in 0usize..=4, bits in 1u32..256) {
        let c = normalize(&Linearized { x: build_preset(Preset::Simplex(2)), p: 0 }, 8).complex;
        let w = w_tensor_pi(&c, 8);
        let x = SparseVec::from_indices((0..c.dim(n)).filter(|i| bits >> i & 1 == 1));
        let q = qm_external(&c, &w, m, n, &x).unwrap();
        let lhs = w.complex.boundary(n + m, &q);
        let rhs = if n == 0 {
            SparseVec::new()
        } else {
            qm_external(&c, &w, m, n - 1, &c.boundary(n, &x)).unwrap()
        };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncated_pages_are_homology(e in expr(), ell in 1usize..=2) {
        let b = cn(e.build(), 2, 3).truncate_columns(ell);
        let (f, _) = total(&b);
        for r in 1..=ell + 1 {
            prop_assert_eq!(page_homology_failure(&f, r), None);
        }
    }
}

#[test]
fn qm_on_cycles_and_low_degrees() {
    let c = normalize(&Linearized { x: build_preset(Preset::Simplex(2)), p: 0 }, 6).complex;
    let w = w_tensor_pi(&c, 6);
    let v0 = SparseVec::unit(0);
    assert_eq!(qm_external(&c, &w, 0, 0, &v0).unwrap(), w.tensor(0, false, 0, &v0, 0, &v0));
    let cycle = c.boundary(2, &SparseVec::unit(0));
    assert_eq!(qm_external(&c, &w, 1, 1, &cycle).unwrap(), w.tensor(0, false, 1, &cycle, 1, &cycle));
    assert!(qm_external(&c, &w, 0, 2, &SparseVec::unit(0)).unwrap().is_zero());
    assert!(!qm_external(&c, &w, 1, 2, &SparseVec::unit(0)).unwrap().is_zero());
    assert!(qm_external(&c, &w, 5, 2, &SparseVec::unit(0)).is_err());
    assert!(w.complex.is_differential());
}

#[test]
fn w_complexes() {
    let w = WComplex::new(6);
    let h = w.complex.homology_data();
    assert_eq!((0..6).map(|n| h.betti(n)).collect::<Vec<_>>(), vec![1, 0, 0, 0, 0, 0]);
    let hb = w_bar(6).homology_data();
    assert!((0..=6).all(|n| hb.betti(n) == 1));
    let point = ChainComplex::new(vec![1], vec![cosimp_gf2::SpMat::zeros(0, 1)]);
    let wp = w_tensor_pi(&point, 0);
    assert_eq!(wp.complex.dim(0), 1);
    let c = normalize(&Linearized { x: build_preset(Preset::Simplex(1)), p: 0 }, 3).complex;
    let wt = w_tensor_pi(&c, 3);
    let cc = cc_tensor(&c, &c);
    for n in 0..=3 {
        let expect: usize = (0..=n).map(|i| cc.dim(n - i)).sum();
        assert_eq!(wt.complex.dim(n), expect);
    }
    assert!(cc.is_differential());
}

#[test]
fn psi_w_is_coassociative() {
    for m in 0..=8 {
        for sigma in [false, true] {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for ((i, w), (j, w2)) in psi_w(m, sigma) {
                for ((a, wa), (b, wb)) in psi_w(i, w == 1) {
                    left.push((a, wa, b, wb, j, w2));
                }
                for ((a, wa), (b, wb)) in psi_w(j, w2 == 1) {
                    right.push((i, w, a, wa, b, wb));
                }
            }
            assert_eq!(mod2(left), mod2(right), "m = {m}");
        }
        let bar: Vec<_> = psi_w_bar(m)
            .into_iter()
            .flat_map(|(i, j)| psi_w_bar(i).into_iter().map(move |(a, b)| (a, b, j)))
            .collect();
        let bar2: Vec<_> = psi_w_bar(m)
            .into_iter()
            .flat_map(|(i, j)| psi_w_bar(j).into_iter().map(move |(a, b)| (i, a, b)))
            .collect();
        assert_eq!(mod2(bar), mod2(bar2));
    }
    assert_eq!(psi_w(2, false), vec![((0, 0), (2, 0)), ((1, 0), (1, 1)), ((2, 0), (0, 0))]);
}

fn delta1_square() -> OrbitModule {
    let lin: SModRef = Arc::new(Linearized { x: build_preset(Preset::Simplex(1)), p: 0 });
    OrbitModule::new(Arc::new(TensorModule::square(lin)))
}

#[test]
fn rho1_is_coassociative_and_natural() {
    let z = delta1_square();
    let lin = Linearized { x: build_preset(Preset::Simplex(1)), p: 0 };
    let squash = |s: &[u16]| -> Simp { s.iter().map(|_| 0u16).collect() };
    for n in 0..=3 {
        for x in z.basis(n) {
            let (l, r) = rho1_coassociativity(&x);
            assert_eq!(l, r);
            let (e, pair) = orbit_parts(&x);
            let fx = z.canon(n, e, &pack_pair(&squash(pair.0), &squash(pair.1)));
            let (b, y) = rho1(&x);
            let (b2, fy) = rho1(&fx);
            let (_, py) = orbit_parts(&y);
            assert_eq!(b, b2);
            assert_eq!(fy, z.canon(n, b, &pack_pair(&squash(py.0), &squash(py.1))));
        }
    }
    let _ = lin;
}

#[test]
fn rho2_is_coassociative() {
    let lin: SModRef = Arc::new(Linearized { x: omega(1, 1).unwrap(), p: 1 });
    let z = OrbitModule::new(Arc::new(TensorModule::square(lin)));
    for m in [&z, &delta1_square()] {
        for n in 0..=3 {
            for x in m.nondegenerate(n) {
                let (l, r) = rho2_coassociativity(m, n, &x);
                assert_eq!(l, r);
            }
        }
    }
}

#[test]
fn rho3_is_coassociative_and_reduces_to_rho2_on_constants() {
    for x in [omega(1, 1).unwrap(), omega(1, 2).unwrap()] {
        let orbits = hpi(x);
        for p in 0..=2 {
            for n in 0..=3 {
                for y in orbits.cn_basis(p, n) {
                    let (l, r) = rho3_coassociativity(orbits.as_ref(), p, n, &y);
                    assert_eq!(l, r);
                }
            }
        }
    }
    let orbits = hpi(build_preset(Preset::Simplex(1)));
    let z = delta1_square();
    for n in 0..=3 {
        for y in orbits.cn_basis(0, n) {
            let three: Vec<(usize, Simp)> = rho3(orbits.as_ref(), 0, n, &y).into_iter().map(|(a, _, _, w)| (a, w)).collect();
            assert_eq!(three, rho2(&z, n, &y));
        }
    }
}

#[test]
fn front_alternation() {
    assert!(front_alternates(0b010, 2));
    assert!(!front_alternates(0b000, 1));
    assert!(front_alternates(0b000, 0));
}

struct ReversedFaces(CsRef);

impl CsSet for ReversedFaces {
    fn name(&self) -> String {
        "reversed".into()
    }
    fn simplices(&self, p: usize, n: usize) -> Vec<Simp> {
        self.0.simplices(p, n)
    }
    fn face(&self, p: usize, n: usize, i: usize, x: &[u16]) -> Option<Simp> {
        self.0.face(p, n, if n == 2 { 2 - i } else { i }, x)
    }
    fn degeneracy(&self, p: usize, n: usize, j: usize, x: &[u16]) -> Simp {
        self.0.degeneracy(p, n, j, x)
    }
    fn coface(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        self.0.coface(p, n, k, x)
    }
    fn codegeneracy(&self, p: usize, n: usize, k: usize, x: &[u16]) -> Option<Simp> {
        self.0.codegeneracy(p, n, k, x)
    }
}

#[test]
fn identity_checker_sees_broken_faces() {
    let x = ReversedFaces(build_preset(Preset::Simplex(1)));
    assert!(identity_failure(&x, 1, 2).is_some());
    assert_eq!(identity_failure(build_preset(Preset::Simplex(1)).as_ref(), 1, 2), None);
}
