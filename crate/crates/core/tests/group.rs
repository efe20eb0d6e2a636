use std::collections::HashSet;
use std::time::Instant;
use wildcover::families::{special_equations, special_family};
use wildcover::grp::{group_closure, lambda_dims, max_jumps, Aut, GroupEngine, PhiFamily};

const BOUND: usize = 1_000_000;

fn engine(n: usize) -> GroupEngine {
    let spec = special_family(5, n).unwrap();
    GroupEngine::with_equations(&spec, &special_equations(5, n).unwrap()).unwrap()
}

#[test]
fn special_n2_report() {
    let e = engine(2);
    let r = e.report(BOUND).unwrap();
    assert_eq!((r.order, r.center_order, r.derived_order, r.exponent), (625, 5, 25, 5));
    assert_eq!(r.lambda_dims, vec![0, 1, 2]);
    assert_eq!(r.center_generators.len(), 1);
}

#[test]
fn special_orders_and_exponents() {
    for n in 1..=4 {
        let start = Instant::now();
        let e = engine(n);
        let r = e.report(BOUND).unwrap();
        assert_eq!(r.order, 5u128.pow(n as u32 + 2), "n = {n}");
        assert_eq!(r.exponent, if n <= 3 { 5 } else { 25 });
        assert_eq!(r.center_order, 5);
        assert_eq!(r.lambda_dims, (0..=n).collect::<Vec<_>>());
        let g = e.closure(&e.generators(), BOUND).unwrap();
        assert!(e.center_characterization_check(&g));
        eprintln!("n = {n}: {:?}", start.elapsed());
    }
}

#[test]
fn generators_satisfy_equations_and_compose() {
    for n in [2, 4] {
        let e = engine(n);
        let gens: Vec<Aut> = e.generators().iter().map(|g| e.to_aut(g)).collect();
        for a in &gens {
            assert!(a.satisfies(e.equations()));
            for b in &gens {
                let ab = a.compose(b).unwrap();
                assert!(ab.satisfies(e.equations()));
            }
            assert!(a.compose(&a.inverse()).unwrap().is_identity());
            assert!(a.inverse().compose(a).unwrap().is_identity());
        }
        let x = e.generators();
        for a in &x {
            for b in &x {
                assert_eq!(e.to_aut(&e.compose(a, b)), e.to_aut(a).compose(&e.to_aut(b)).unwrap());
            }
        }
    }
}

#[test]
fn element_orders() {
    let e = engine(2);
    let t = e.to_aut(&e.generators()[0]);
    assert_eq!(t.element_order().unwrap(), 5);
    assert!(t.pow(5).is_identity());
    assert_eq!(Aut::identity(e.field(), 2).element_order().unwrap(), 1);
    let e4 = engine(4);
    let t4 = e4.to_aut(&e4.generators()[0]);
    assert_eq!(t4.element_order().unwrap(), 25);
}

#[test]
fn slow_closure_agrees() {
    let e = engine(1);
    let gens: Vec<Aut> = e.generators().iter().map(|g| e.to_aut(g)).collect();
    let g = group_closure(&gens, 10_000).unwrap();
    assert_eq!(g.len(), 125);
    let single = group_closure(&gens[..1], 100).unwrap();
    assert_eq!(single.len(), 5);
}

#[test]
fn root_choice_is_irrelevant() {
    let spec = special_family(5, 2).unwrap();
    let eqs = special_equations(5, 2).unwrap();
    let a = GroupEngine::with_equations(&spec, &eqs).unwrap();
    let b = GroupEngine::with_root_shift(&spec, &eqs, 3).unwrap();
    let ga: HashSet<_> = a.closure(&a.generators(), BOUND).unwrap().into_iter().collect();
    let gb: HashSet<_> = b.closure(&b.generators(), BOUND).unwrap().into_iter().collect();
    assert_eq!(ga, gb);
}

#[test]
fn exact_sequence_by_invariants() {
    for n in 2..=4 {
        let big = engine(n);
        let small = engine(n - 1);
        let g = big.closure(&big.generators(), BOUND).unwrap();
        let z = big.center(&g);
        let h = small.closure(&small.generators(), BOUND).unwrap();
        assert_eq!(g.len() / z.len(), h.len());
        assert_eq!(big.quotient_exponent(&g, &z), small.exponent(&h).unwrap());
        assert_eq!(lambda_dims(big.phi_family()).len(), lambda_dims(small.phi_family()).len() + 1);
    }
}

#[test]
fn center_inside_derived_equals_lambda_one() {
    let e = engine(3);
    let g = e.closure(&e.generators(), BOUND).unwrap();
    let z = e.center(&g);
    let d = e.derived(BOUND).unwrap();
    let dz: HashSet<_> = d.iter().collect();
    assert!(z.iter().all(|c| dz.contains(c)));
    let mut classes = e.central_derived_classes(&z, &d);
    classes.sort();
    assert_eq!(classes, e.lambda_one());
}

#[test]
fn noncentral_witness() {
    let e = engine(2);
    let sigma = e.lift(0, &[1, 0]);
    let gens = e.generators();
    assert!(gens.iter().any(|t| !e.commutes(&sigma, t)));
    assert!(max_jumps(&PhiFamily::from_spec(&special_family(5, 3).unwrap()).unwrap()));
}
