use cosimp_core::cosimplicial::cn;
use cosimp_core::simplicial::omega;
use cosimp_verify::Expr;

#[test]
fn parses_and_prints_canonically() {
    let e = Expr::parse(" Orbits( product(omega(1, 2), skeleton(-1, 2)) ) ").unwrap();
    assert_eq!(
        e,
        Expr::Orbits(Box::new(Expr::Product(Box::new(Expr::Omega(1, 2)), Box::new(Expr::Skeleton(-1, 2)))))
    );
    assert_eq!(e.to_string(), "orbits(product(omega(1,2),skeleton(-1,2)))");
    assert_eq!(Expr::parse(&e.to_string()).unwrap(), e);
    assert_eq!(Expr::parse("tensor(epi, bpi)").unwrap().to_string(), "product(epi,bpi)");
}

#[test]
fn rejects_malformed_input() {
    for bad in ["", "omega(1)", "omega(1,2", "simplex(-1)", "orbits(3)", "frob(1)", "epi extra", "cofiber(epi, 0)"] {
        let parsed = Expr::parse(bad);
        assert!(parsed.is_err() || parsed.unwrap().build(2, 3).is_err(), "{bad}");
    }
}

#[test]
fn cofiber_and_suspension_rebuild_omega() {
    let built = Expr::parse("suspension(cofiber(cosimplicial, 1))").unwrap().build(3, 4).unwrap();
    let a = cn(built, 3, 4);
    let b = cn(omega(1, 2).unwrap(), 3, 4);
    for p in 0..=3 {
        for n in 0..=4 {
            assert_eq!(a.dim(p, n), b.dim(p, n), "({p},{n})");
        }
    }
}
