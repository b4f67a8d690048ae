use cosimp_core::cosimplicial::cn;
use cosimp_core::operations::*;
use cosimp_core::simplicial::*;
use cosimp_core::universal::*;
use cosimp_gf2::{BitMatrix, BitVec, SparseVec};
use std::sync::Arc;

struct Setup {
    s: usize,
    t: usize,
    u: UniversalExample,
    models: OrbitModels,
    side: TotSide,
    top: usize,
    x: SparseVec,
}

fn setup(s: usize, t: usize, q: usize) -> Setup {
    let u = build_universal(s, t, 2 * s, q).unwrap();
    let models = OrbitModels::new(&u, q);
    let top = q - 2 * s - 1;
    let side = TotSide::new(u.space.clone(), 2 * s, top + 1).unwrap();
    let h = side.homology();
    assert_eq!(h.betti(t - s), 1);
    let x = h.rep(t - s, 0);
    Setup { s, t, u, models, side, top, x }
}

fn main_convergence(st: &Setup) {
    let (s, t, n) = (st.s, st.t, st.t - st.s);
    let um = Model::new(cn(st.u.space.clone(), 2 * s, st.u.window().q_max));
    let mut ev = st.side.eval();
    let phx = st.side.phi(&mut ev, n, &st.side.labels(&st.x));
    let z = cycle_in(&um, n as i64, &phx).unwrap();
    assert_eq!(um.filtration(n as i64, &z), Ok(Some(s)));
    assert_eq!(um.einf_class(n as i64, s, &z).unwrap(), BitVec::from_ones(1, [0]));
    for m in n..=st.top - n {
        let deg = (n + m) as i64;
        let q = qm_alg(&st.side, &st.models.big, m, n, &st.x).unwrap();
        let v = v_degree(t, s, m).unwrap();
        assert_eq!(st.models.big.filtration(deg, &q), Ok(Some(v)), "m = {m}");
        let lhs = st.models.big.einf_class(deg, v, &q).unwrap();
        let op = ss_operation(&st.u, st.u.space.clone(), &st.u.bicomplex, &st.models.small, &st.u.iota(), m).unwrap();
        let rhs = st.models.shuffle_einf(op.p, op.n, &op.class).unwrap();
        assert_eq!(lhs, rhs, "m = {m}");
        assert!(!lhs.is_zero());
    }
}

#[test]
fn main_convergence_for_one_one() {
    main_convergence(&setup(1, 1, 5));
}

#[test]
fn main_convergence_for_one_two() {
    main_convergence(&setup(1, 2, 7));
}

#[test]
fn qm_below_the_degree_vanishes() {
    let st = setup(1, 2, 7);
    assert!(st.side.qm(0, 1, &st.x).unwrap().is_empty());
    let z = qm_alg(&st.side, &st.models.big, 0, 1, &st.x).unwrap();
    assert!(z.is_zero());
    assert!(qm_alg(&st.side, &st.models.big, 9, 1, &st.x).is_err());
}

#[test]
fn bottom_operation_factors_through_the_square() {
    for (s, t, q) in [(1, 1, 5), (1, 2, 7)] {
        let st = setup(s, t, q);
        let n = t - s;
        let deg = (2 * n) as i64;
        let big = &st.models.big;
        let mut ev = st.side.eval();
        let mut ev2 = st.side.eval();
        let via_xi = st.side.zeta_phi(&mut ev, 2 * n, &bottom_via_xi(&st.side, n, &st.x));
        let a = cycle_in(big, deg, &via_xi).unwrap();
        let pairs = square_shuffle(&st.side, n, &st.x);
        let b = cycle_in(big, deg, &st.side.xi_chi_phi(&mut ev, &mut ev2, 2 * n, &pairs)).unwrap();
        let c = qm_alg(&st.side, big, n, n, &st.x).unwrap();
        let h = big.homology(deg).unwrap();
        assert_eq!(h.dim(), 1);
        let ca = h.coordinates(&a).unwrap();
        assert_eq!(ca, h.coordinates(&b).unwrap());
        assert_eq!(ca, h.coordinates(&c).unwrap());
        assert!(!ca.is_zero());
        assert_eq!(big.filtration(deg, &a), Ok(Some(2 * s)));
    }
}

fn orbit_degrees(st: &Setup) {
    let (s, t, n) = (st.s, st.t, st.t - st.s);
    let oc = st.side.orbit_complex(st.top + 1).unwrap();
    let hd = oc.complex.homology_data();
    let mut ev = st.side.eval();
    for k in 0..=st.top {
        let big_h = st.models.big.homology(k as i64).unwrap();
        assert_eq!(hd.betti(k), big_h.dim(), "degree {k}");
        let cols: Vec<BitVec> = (0..hd.betti(k))
            .map(|i| {
                let img = st.side.zeta_phi(&mut ev, k, &oc.terms(k, &hd.rep(k, i)));
                let z = cycle_in(&st.models.big, k as i64, &img).unwrap();
                big_h.coordinates(&z).unwrap()
            })
            .collect();
        let mat = BitMatrix::from_cols(big_h.dim(), &cols);
        assert_eq!(mat.rank(), hd.betti(k), "H(ζ) in degree {k}");
        if k >= 2 * n {
            let m = k - n;
            assert_eq!(big_h.dim(), 1);
            let v = v_degree(t, s, m).unwrap();
            let z = &big_h.basis()[0];
            assert_eq!(st.models.big.filtration(k as i64, z), Ok(Some(v)));
        } else {
            assert_eq!(big_h.dim(), 0);
        }
    }
}

#[test]
fn interchange_is_an_isomorphism_with_the_expected_filtration() {
    orbit_degrees(&setup(1, 1, 5));
    orbit_degrees(&setup(1, 2, 7));
}

#[test]
fn external_product_is_compatible_with_the_abutment() {
    let (a, b) = (omega(1, 1).unwrap(), omega(1, 2).unwrap());
    let ell = 2;
    let q = 6;
    let sa = TotSide::new(a.clone(), ell, 2).unwrap();
    let sb = TotSide::new(b.clone(), ell, 2).unwrap();
    let x = sa.homology().rep(0, 0);
    let y = sb.homology().rep(1, 0);
    let pairs = tot_shuffle(&sa, &x, 0, &sb, &y, 1);
    let left = chi_phi(&sa, &sb, ell, 1, &pairs);
    let mut ea = sa.eval();
    let mut eb = sb.eval();
    let px = sa.phi(&mut ea, 0, &sa.labels(&x));
    let py = sb.phi(&mut eb, 1, &sb.labels(&y));
    let right = nabla_aw(&a, &b, ell, &px, &py);
    let target = Model::new(cn(Arc::new(Product::new(a, b)), ell, q));
    let l = cycle_in(&target, 1, &left).unwrap();
    let r = cycle_in(&target, 1, &right).unwrap();
    assert_eq!(target.filtration(1, &l), Ok(Some(2)));
    assert_eq!(target.filtration(1, &r), Ok(Some(2)));
    assert_eq!(target.einf_class(1, 2, &l).unwrap(), target.einf_class(1, 2, &r).unwrap());
    assert!(!target.einf_class(1, 2, &l).unwrap().is_zero());
}

fn comodule_identity(space: CsRef, ell: usize, levels: usize) {
    let side = TotSide::new(space, ell, levels).unwrap();
    let oc = side.orbit_complex(levels).unwrap();
    let mut ev = side.eval();
    let mut checked = 0;
    for q in 0..=levels {
        for lab in &oc.labels[q] {
            let (l, r) = comodule_sides(&side, &mut ev, q, lab);
            assert_eq!(l, r, "level {q}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn comodule_identity_on_omega() {
    comodule_identity(omega(1, 1).unwrap(), 2, 3);
    comodule_identity(omega(1, 2).unwrap(), 2, 2);
}

#[test]
fn comodule_identity_on_a_constant_interval() {
    comodule_identity(build_preset(Preset::Simplex(1)), 2, 3);
}

#[test]
fn homology_coaction_is_cofree() {
    let side = TotSide::new(omega(1, 1).unwrap(), 2, 4).unwrap();
    let oc = side.orbit_complex(4).unwrap();
    let hd = oc.complex.homology_data();
    for n in 0..=3 {
        assert_eq!(hd.betti(n), 1);
        let parts = rho2_components(&side.orbit, &oc, n, &hd.rep(n, 0));
        for (z, part) in parts.iter().enumerate() {
            assert!(oc.complex.boundary(n - z, part).is_zero());
            assert!(!hd.class_of(n - z, part).is_zero(), "n = {n}, z = {z}");
        }
    }
}
