use cosimp_core::cosimplicial::{cell_chain, cn};
use cosimp_core::simplicial::*;
use cosimp_core::universal::*;
use cosimp_core::CoreError;
use cosimp_gf2::{BitVec, SparseVec};
use std::sync::Arc;
use std::time::{Duration, Instant};

#[test]
fn v_degree_values() {
    assert_eq!(v_degree(2, 1, 3), Ok(1));
    assert_eq!(v_degree(2, 1, 1), Ok(2));
    assert_eq!(v_degree(2, 1, 2), Ok(1));
    assert_eq!(v_degree(1, 1, 0), Ok(2));
    assert!(matches!(v_degree(1, 2, 3), Err(CoreError::BadParameters(_))));
    assert!(matches!(v_degree(3, 1, 1), Err(CoreError::BadParameters(_))));
    assert_eq!(operation_bidegree(1, 2, 1), Ok((2, 4)));
    for (s, t) in [(1, 1), (1, 2), (2, 3)] {
        for m in t - s..t + 4 {
            let (p, n) = operation_bidegree(s, t, m).unwrap();
            assert!(orbit_locus(s, t, p, n), "({s},{t}) m={m} gives ({p},{n})");
        }
    }
}

#[test]
fn e1_is_a_single_class() {
    for (s, t) in [(1, 1), (1, 2), (2, 2)] {
        let w = 2 * t + 2;
        let start = Instant::now();
        let u = build_universal(s, t, w, w).unwrap();
        assert_eq!(u.e1_support(), vec![(s, t, 1)]);
        assert!(start.elapsed() < Duration::from_secs(30));
        assert_eq!(u.bicomplex.relation_failure(), None);
    }
}

#[test]
fn e1_single_class_for_small_parameters() {
    for t in 1..=3 {
        for s in 1..=t {
            let u = build_universal(s, t, s + 2, t + 3).unwrap();
            assert_eq!(u.e1_support(), vec![(s, t, 1)]);
        }
    }
    assert!(build_universal(2, 1, 3, 3).is_err());
}

#[test]
fn bicomplex_matches_two_antidiagonals() {
    for (s, t, w) in [(1, 2, 6), (1, 1, 5), (2, 3, 6)] {
        let u = build_universal(s, t, w, w).unwrap();
        assert_eq!(antidiagonal_mismatch(&u), None);
    }
}

#[test]
fn antidiagonal_check_detects_a_broken_differential() {
    let mut u = build_universal(1, 2, 5, 5).unwrap();
    u.bicomplex.dh[1][2] = cosimp_gf2::SpMat::zeros(u.bicomplex.dim(2, 2), 1);
    assert!(antidiagonal_mismatch(&u).is_some());
}

fn check_orbit_pages(s: usize, t: usize, q: usize) -> OrbitModels {
    let u = build_universal(s, t, 2 * s, q).unwrap();
    let models = OrbitModels::new(&u, q);
    assert_eq!(models.e1_iso_failure(), None);
    for model in [&models.small, &models.big] {
        let e2 = model.page_at(2).unwrap();
        let einf = model.e_infinity();
        assert!(!einf.entries.is_empty());
        for (&(p, n), e) in &einf.entries {
            assert_eq!(e.dim(), usize::from(orbit_locus(s, t, p, n)), "E^∞ at ({p},{n})");
            assert_eq!(e2.dim(p, n), e.dim(), "E² at ({p},{n})");
        }
    }
    models
}

#[test]
fn orbit_pages_for_both_models() {
    check_orbit_pages(1, 1, 5);
    let models = check_orbit_pages(1, 2, 7);
    let locus: Vec<(usize, usize, usize)> = models.big.e_infinity().support();
    assert_eq!(locus, vec![(1, 4, 1), (1, 5, 1), (1, 6, 1), (2, 4, 1)]);
}

#[test]
fn small_model_vanishes_above_twice_s() {
    for (s, t) in [(1, 1), (1, 2)] {
        let x = omega(s, t).unwrap();
        assert!(small_model_e1_support(x, 2 * s + 1, 6, 7).is_empty());
    }
}

#[test]
fn e_pq_is_one_dimensional() {
    let u = build_universal(1, 1, 2, 5).unwrap();
    let models = OrbitModels::new(&u, 5);
    for m in 0..=2 {
        let (p, n, e) = e_pq(&models, m).unwrap();
        assert_eq!((p, n), operation_bidegree(1, 1, m).unwrap());
        assert!(!models.shuffle_einf(p, n, &e).unwrap().is_zero());
    }
    assert!(e_pq(&models, 6).is_err());
}

fn omega_times_interval(s: usize, t: usize) -> CsRef {
    Arc::new(Product::new(omega(s, t).unwrap(), Arc::new(Constant::simplex(1))))
}

fn pair_label(u: &UniversalExample, y: &[u16]) -> Simp {
    Product::pack(&u.bicomplex.labels[u.s][u.t][0], y)
}

#[test]
fn representing_map_of_iota_is_the_identity_on_einf() {
    let u = build_universal(1, 1, 2, 5).unwrap();
    let r = representing_map(&u, &u.bicomplex, &u.iota()).unwrap();
    assert_eq!(r.map.chain_map_failure(&u.bicomplex, &u.bicomplex), None);
    let model = Model::new(u.bicomplex.clone());
    let maps = r.map.page_maps(&model, &model);
    let m = r.map.einf_map(&model, &model, &maps, 1, 1).unwrap();
    assert_eq!(m.mul_vec(&BitVec::from_ones(1, [0])), BitVec::from_ones(1, [0]));
}

#[test]
fn representing_maps_into_a_preset() {
    let u = build_universal(1, 1, 2, 5).unwrap();
    let target = cn(omega_times_interval(1, 1), 2, 5);
    let src = Model::new(u.bicomplex.clone());
    let tgt = Model::new(target.clone());
    let a = target.vector(1, 1, &[pair_label(&u, &[0, 0])]);
    let b = target.vector(1, 1, &[pair_label(&u, &[1, 1])]);
    assert_eq!((a.len(), b.len()), (1, 1));
    let ra = representing_map(&u, &target, &a).unwrap();
    assert_eq!(ra.map.chain_map_failure(&u.bicomplex, &target), None);
    let e1 = ra.map.e1_maps(&src, &tgt);
    let col = &tgt.reduction.columns[1];
    let iota_class = e1[&(1, 1)].mul_vec(&BitVec::from_ones(1, [0]));
    assert_eq!(iota_class, col.class_of(1, &a).to_bitvec(col.betti(1)));
    let maps = ra.map.page_maps(&src, &tgt);
    assert!(!ra.map.einf_map(&src, &tgt, &maps, 1, 1).unwrap().is_zero());

    let boundary = a.add(&b);
    assert!(col.class_of(1, &boundary).is_zero());
    let rb = representing_map(&u, &target, &boundary).unwrap();
    assert_eq!(rb.map.chain_map_failure(&u.bicomplex, &target), None);
    let maps = rb.map.page_maps(&src, &tgt);
    assert!(rb.map.einf_map(&src, &tgt, &maps, 1, 1).unwrap().is_zero());
}

#[test]
fn representing_map_rejects_mismatched_windows() {
    let u = build_universal(1, 1, 2, 5).unwrap();
    let other = cn(omega(1, 1).unwrap(), 2, 4);
    assert!(representing_map(&u, &other, &SparseVec::unit(0)).is_err());
}

#[test]
fn ss_operation_on_the_universal_class() {
    let (s, t, q) = (1, 1, 5);
    let u = build_universal(s, t, 2, q).unwrap();
    let target = Model::new(small_model_bicomplex(u.space.clone(), 2, q));
    for m in 0..=2 {
        let op = ss_operation(&u, u.space.clone(), &u.bicomplex, &target, &u.iota(), m).unwrap();
        assert!(orbit_locus(s, t, op.p, op.n));
        assert_eq!(op.class, BitVec::from_ones(1, [0]), "m = {m}");
    }
    for (&(p, n), e) in &target.e_infinity().entries {
        assert_eq!(e.dim() > 0, orbit_locus(s, t, p, n));
    }
}

#[test]
fn ss_operation_is_natural() {
    let (q, p_max) = (5, 2);
    let u = build_universal(1, 1, p_max, q).unwrap();
    let v_space = omega_times_interval(1, 1);
    let v_cn = cn(v_space.clone(), p_max, q);
    let v_small = Model::new(small_model_bicomplex(v_space.clone(), p_max, q));
    let w_small = Model::new(small_model_bicomplex(u.space.clone(), p_max, q));
    let v = v_cn.vector(1, 1, &[pair_label(&u, &[0, 0])]);
    let g = small_model_map(&v_small.bicomplex, &w_small.bicomplex, |p, n, x| {
        let (a, _) = Product::split(x);
        if u.space.degeneracy_mask(p, n, a) == 0 {
            vec![Simp::from_slice(a)]
        } else {
            vec![]
        }
    });
    assert_eq!(g.chain_map_failure(&v_small.bicomplex, &w_small.bicomplex), None);
    let g_pages = g.page_maps(&v_small, &w_small);
    for m in 0..=2 {
        let op_v = ss_operation(&u, v_space.clone(), &v_cn, &v_small, &v, m).unwrap();
        let op_w = ss_operation(&u, u.space.clone(), &u.bicomplex, &w_small, &u.iota(), m).unwrap();
        let gm = g.einf_map(&v_small, &w_small, &g_pages, op_v.p, op_v.n).unwrap();
        assert_eq!(gm.mul_vec(&op_v.class), op_w.class, "m = {m}");
        assert!(!op_v.class.is_zero());
    }
}

#[test]
fn cell_chains_round_trip_through_models() {
    let u = build_universal(1, 2, 2, 6).unwrap();
    let model = Model::new(u.bicomplex.clone());
    let c = cell_chain(&u.bicomplex, &[(1, 2, u.bicomplex.labels[1][2][0].clone())]);
    let z = model.reduce(1, &c);
    assert!(model.page.boundary(1, &z).is_zero());
    let zb = model.to_bitvec(1, &z);
    assert_eq!(model.filtration(1, &zb), Ok(Some(1)));
    assert_eq!(model.einf_class(1, 1, &zb).unwrap(), BitVec::from_ones(1, [0]));
    let back = model.reduce(1, &model.expand(1, &z));
    assert_eq!(back, z);
}
