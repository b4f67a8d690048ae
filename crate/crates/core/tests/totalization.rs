use cosimp_core::cosimplicial::cn;
use cosimp_core::operations::cycle_in;
use cosimp_core::simplicial::*;
use cosimp_core::totalization::*;
use cosimp_core::universal::Model;
use cosimp_gf2::BitVec;
use std::sync::Arc;
use std::time::{Duration, Instant};

#[test]
fn tot_of_omega_has_one_class() {
    for (s, t, ell, levels) in [(1, 1, 2, 3), (1, 2, 2, 3), (2, 2, 4, 2), (1, 1, 3, 3)] {
        let tot = NormTot::new(omega(s, t).unwrap(), ell, levels).unwrap();
        let c = tot.chain_complex();
        assert!(c.is_differential());
        let h = c.homology_data();
        for k in 0..levels {
            assert_eq!(h.betti(k), usize::from(k == t - s), "Ω({s},{t}) ℓ={ell} k={k}");
        }
    }
}

#[test]
fn phi_of_the_generator_has_filtration_s() {
    for (s, t, q) in [(1, 1, 4), (1, 2, 5), (2, 2, 5)] {
        let ell = 2 * s;
        let tot = NormTot::new(omega(s, t).unwrap(), ell, t - s + 1).unwrap();
        let h = tot.chain_complex().homology_data();
        let n = t - s;
        let x: Vec<Simp> = h.rep(n, 0).iter().map(|y| Simp::from_slice(&[0, y as u16])).collect();
        let mut ev = TotEval::new(&tot);
        let img = phi_tot(&mut ev, n, ell, ShuffleTable::Exact, &x);
        let model = Model::new(cn(omega(s, t).unwrap(), ell, q));
        let z = cycle_in(&model, n as i64, &img).unwrap();
        assert_eq!(model.filtration(n as i64, &z), Ok(Some(s)), "Ω({s},{t})");
        assert_eq!(model.einf_class(n as i64, s, &z).unwrap(), BitVec::from_ones(1, [0]));
    }
}

#[test]
fn phi_vanishes_on_degenerate_labels() {
    let tot = Arc::new(NormTot::new(omega(1, 2).unwrap(), 2, 3).unwrap());
    let tm = TotModule { tot: tot.clone() };
    let mut ev = TotEval::new(&tot);
    for q in 1..=3 {
        for l in tm.basis(q).into_iter().filter(|l| l[0] != 0) {
            assert!(phi_tot(&mut ev, q, 2, ShuffleTable::Exact, &[l]).is_empty());
        }
    }
}

#[test]
fn tot_module_satisfies_the_identities() {
    let tot = Arc::new(NormTot::new(omega(1, 1).unwrap(), 2, 3).unwrap());
    let tm = TotModule { tot };
    let sm = SimplicialModule::from_lazy(&tm, 3);
    assert_eq!(sm.identity_failure(), None);
}

fn routes_agree(space: CsRef, ell: usize, levels: usize) -> usize {
    let tot = Arc::new(NormTot::new(space, ell, levels).unwrap());
    let tm = TotModule { tot };
    tensor_route_mismatches(&tm, &tm, ell, levels, ShuffleTable::Exact).len()
}

#[test]
fn tensor_routes_agree_for_omega_one_one() {
    let start = Instant::now();
    for ell in 0..=4 {
        assert_eq!(routes_agree(omega(1, 1).unwrap(), ell, 4), 0, "ℓ = {ell}");
    }
    assert!(start.elapsed() < Duration::from_secs(120));
}

#[test]
fn tensor_routes_agree_for_omega_one_two() {
    assert_eq!(routes_agree(omega(1, 2).unwrap(), 2, 3), 0);
}

#[test]
fn tensor_routes_agree_for_distinct_factors() {
    let a = Arc::new(NormTot::new(omega(1, 1).unwrap(), 2, 3).unwrap());
    let b = Arc::new(NormTot::new(Arc::new(Constant::simplex(1)), 2, 3).unwrap());
    let (ta, tb) = (TotModule { tot: a }, TotModule { tot: b });
    assert!(tensor_route_mismatches(&ta, &tb, 2, 3, ShuffleTable::Exact).is_empty());
}

#[test]
fn eta_detects_a_corrupted_table() {
    assert_eq!(ShuffleTable::Exact.eta_failure(6), None);
    assert_eq!(ShuffleTable::Corrupted.eta_failure(6), Some((1, 1, 1)));
}

#[test]
fn corrupted_table_breaks_the_routes_for_omega_one_two() {
    let tot = Arc::new(NormTot::new(omega(1, 2).unwrap(), 2, 3).unwrap());
    let tm = TotModule { tot };
    let bad = tensor_route_mismatches(&tm, &tm, 2, 3, ShuffleTable::Corrupted);
    assert_eq!(bad.len(), 4);
    assert!(bad.iter().all(|(q, _)| *q >= 1));
}
