use cosimp_core::simplicial::omega;
use cosimp_core::totalization::ShuffleTable;
use cosimp_verify::checks::tensor_products;
use cosimp_verify::{run_check, CheckId, Expr, Options, Overrides, Verdict};

fn at(s: usize, t: usize) -> Overrides {
    Overrides { s: Some(s), t: Some(t), ..Overrides::default() }
}

#[test]
fn every_check_passes_with_defaults() {
    for id in CheckId::ALL {
        let r = run_check(id, &Overrides::default(), &Options::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{id}: {:?}", r.witnesses);
        assert_eq!(r.duration_ms, 0);
    }
}

#[test]
fn main_convergence_at_the_documented_window() {
    for m in 0..=2 {
        let o = Overrides { m: Some(m), p: Some(5), q: Some(5), ..at(1, 1) };
        let r = run_check(CheckId::MainConvergence, &o, &Options::default()).unwrap();
        assert!(r.passed(), "m = {m}: {:?}", r.witnesses);
        assert_eq!(r.params.m, Some(m));
    }
}

#[test]
fn orbit_shape_at_a_wider_window() {
    let o = Overrides { p: Some(6), q: Some(7), ..at(1, 2) };
    assert!(run_check(CheckId::OrbitShape, &o, &Options::default()).unwrap().passed());
}

#[test]
fn checks_for_one_two() {
    for id in [CheckId::BottomOp, CheckId::InterchangeIso, CheckId::ExternalMult, CheckId::BicomplexShape] {
        let r = run_check(id, &at(1, 2), &Options::default()).unwrap();
        assert!(r.passed(), "{id}: {:?}", r.witnesses);
    }
}

#[test]
fn out_of_window_parameters_fault() {
    let opts = Options::default();
    assert!(run_check(CheckId::MainConvergence, &Overrides { m: Some(3), ..at(1, 1) }, &opts).is_err());
    assert!(run_check(CheckId::BottomOp, &Overrides { ell: Some(3), ..at(1, 1) }, &opts).is_err());
    assert!(run_check(CheckId::ExternalMult, &Overrides { q: Some(3), ..at(1, 1) }, &opts).is_err());
    assert!(run_check(CheckId::OrbitShape, &Overrides { p: Some(1), ..at(1, 2) }, &opts).is_err());
    assert!(run_check(CheckId::ComoduleMap, &Overrides { s: Some(0), ..at(1, 1) }, &opts).is_err());
    assert!("nope".parse::<CheckId>().is_err());
    assert_eq!("bottom-op".parse::<CheckId>().unwrap(), CheckId::BottomOp);
}

#[test]
fn corrupted_shuffles_are_caught_by_both_halves() {
    let w = tensor_products(omega(1, 1).unwrap(), 2, 3, ShuffleTable::Corrupted);
    assert_eq!(w.len(), 1);
    assert!(w[0].detail.contains("η"));
    let w = tensor_products(omega(1, 2).unwrap(), 2, 3, ShuffleTable::Corrupted);
    assert!(w.iter().any(|x| x.detail.contains("composites differ")));
    assert!(tensor_products(omega(1, 2).unwrap(), 2, 3, ShuffleTable::Exact).is_empty());
}

#[test]
fn custom_v_is_used() {
    let opts = Options { v: Some(Expr::parse("product(omega(1,1), simplex(1))").unwrap()), ..Options::default() };
    let o = Overrides { ell: Some(2), q: Some(2), ..Overrides::default() };
    assert!(run_check(CheckId::TensorProducts, &o, &opts).unwrap().passed());
    assert!(run_check(CheckId::ComoduleMap, &o, &opts).unwrap().passed());
}
