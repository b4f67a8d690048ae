//! The acceptance suite: one line per criterion, nonzero exit if any fails.

use cosimp_core::simplicial::{omega, Constant, CsRef};
use cosimp_core::totalization::ShuffleTable;
use cosimp_core::universal::build_universal;
use cosimp_verify::checks::{comodule_map, tensor_products};
use cosimp_verify::suites::{coalgebra_failures, combinatorial_failures, object_failures};
use cosimp_verify::{run_check, tot_homology, CheckId, Expr, Options, Overrides};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use std::sync::Arc;
use std::time::{Duration, Instant};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn at(s: usize, t: usize) -> Overrides {
    Overrides { s: Some(s), t: Some(t), ..Overrides::default() }
}

fn passes(id: CheckId, o: &Overrides) -> Outcome {
    let r = run_check(id, o, &Options::default()).map_err(|e| format!("{id}: {e}"))?;
    ensure(r.passed(), || format!("{id} ({},{}): {:?}", r.params.s, r.params.t, r.witnesses))
}

fn within(limit: Duration, start: Instant, what: &str) -> Outcome {
    ensure(start.elapsed() < limit, || format!("{what} took {:?}", start.elapsed()))
}

fn e1_single_class() -> Outcome {
    for (s, t) in [(1, 1), (1, 2), (2, 2)] {
        let w = 2 * t + 2;
        let start = Instant::now();
        let u = build_universal(s, t, w, w).map_err(|e| e.to_string())?;
        ensure(u.e1_support() == vec![(s, t, 1)], || format!("E¹ of ({s},{t}) is {:?}", u.e1_support()))?;
        within(Duration::from_secs(30), start, "E¹")?;
    }
    Ok(())
}

fn bicomplex_shape() -> Outcome {
    passes(CheckId::BicomplexShape, &at(1, 2))
}

fn orbit_shape() -> Outcome {
    let start = Instant::now();
    passes(CheckId::OrbitShape, &at(1, 1))?;
    passes(CheckId::OrbitShape, &at(1, 2))?;
    within(Duration::from_secs(120), start, "E² and E^∞")
}

fn tot_homology_of_omega() -> Outcome {
    for (s, t) in [(1, 1), (1, 2), (2, 2)] {
        let n = t - s;
        let summary = tot_homology(&Expr::Omega(s, t), 2 * s, n + 2).map_err(|e| e.to_string())?;
        for d in &summary.homology {
            let expected = if d.k == n { vec![Some(s)] } else { vec![] };
            ensure(d.filtration == expected, || format!("({s},{t}) H_{}: {:?}", d.k, d.filtration))?;
        }
    }
    Ok(())
}

fn orbit_homology() -> Outcome {
    passes(CheckId::InterchangeIso, &at(1, 1))?;
    passes(CheckId::InterchangeIso, &at(1, 2))
}

fn interchange() -> Outcome {
    passes(CheckId::InterchangeIso, &Overrides { q: Some(6), ..at(1, 1) })?;
    passes(CheckId::InterchangeIso, &Overrides { q: Some(8), ..at(1, 2) })
}

fn tensor_compatibility() -> Outcome {
    let start = Instant::now();
    let w = tensor_products(omega(1, 1).unwrap(), 4, 4, ShuffleTable::Exact);
    ensure(w.is_empty(), || format!("{w:?}"))?;
    within(Duration::from_secs(120), start, "composites")?;
    ensure(!tensor_products(omega(1, 1).unwrap(), 4, 4, ShuffleTable::Corrupted).is_empty(), || {
        "corrupted table passed".into()
    })
}

fn comodule() -> Outcome {
    let spaces: [CsRef; 2] = [omega(1, 1).unwrap(), Arc::new(Constant::simplex(1))];
    for v in spaces {
        let w = comodule_map(v, 2, 3);
        ensure(w.is_empty(), || format!("{w:?}"))?;
    }
    Ok(())
}

fn main_convergence() -> Outcome {
    passes(CheckId::MainConvergence, &at(1, 1))?;
    passes(CheckId::MainConvergence, &at(1, 2))
}

fn bottom_and_multiplication() -> Outcome {
    passes(CheckId::BottomOp, &at(1, 1))?;
    passes(CheckId::ExternalMult, &at(1, 1))
}

fn combinatorics() -> Outcome {
    let f = combinatorial_failures(5);
    ensure(f.is_empty(), || f.join("; "))
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0usize..=2).prop_map(Expr::Simplex),
        (-1i64..=1, 1usize..=2).prop_map(|(l, p)| Expr::Skeleton(l, p)),
        Just(Expr::Cosimplicial),
        Just(Expr::BPi),
        (1usize..=2, 0usize..=1).prop_map(|(s, d)| Expr::Omega(s, s + d)),
        (0usize..=1).prop_map(|k| Expr::Cofiber(Box::new(Expr::Cosimplicial), k)),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf()
        .prop_recursive(2, 4, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|x| Expr::Suspension(Box::new(x))),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::Product(Box::new(a), Box::new(b))),
                leaf().prop_map(|x| Expr::Orbits(Box::new(x))),
            ]
        })
        .prop_filter("keeps the cells small", |e| {
            e.build(2, 3).is_ok_and(|x| (0..=2).map(|p| x.simplices(p, 3).len()).sum::<usize>() <= 400)
        })
}

fn structural() -> Outcome {
    let f = coalgebra_failures();
    ensure(f.is_empty(), || f.join("; "))?;
    let mut runner = TestRunner::new_with_rng(
        Config { cases: 32, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    runner
        .run(&expr(), |e| {
            let f = object_failures(&e).map_err(|err| TestCaseError::fail(err.to_string()))?;
            prop_assert!(f.is_empty(), "{}", f.join("; "));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("E¹ of the universal examples is a single class", e1_single_class),
        ("bicomplex of Ω(1,2) has the two-antidiagonal shape", bicomplex_shape),
        ("E² = E^∞ of the homotopy orbits is the column plus the row", orbit_shape),
        ("H(N Tot 𝕂Ω) is one class of filtration s", tot_homology_of_omega),
        ("homotopy-orbit homology is one class of filtration v", orbit_homology),
        ("H(ζ) is bijective", interchange),
        ("the two tensor composites agree", tensor_compatibility),
        ("the comodule chain identity holds", comodule),
        ("main convergence diagram commutes", main_convergence),
        ("bottom operation and external multiplication", bottom_and_multiplication),
        ("combinatorial suite", combinatorics),
        ("structural suite", structural),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {:>2}: pass  {name} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({ms} ms): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 12 criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria pass");
}
