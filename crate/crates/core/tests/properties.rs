use proptest::collection::vec;
use proptest::prelude::*;
use std::collections::HashSet;
use wildcover::additive::{is_additive, subspace_poly, zero_set_in_degree, TwistedPoly};
use wildcover::asw::{dp_order, reduce};
use wildcover::cover::{span_elements, truncate_cover, CoverSpec};
use wildcover::families::{base_change, special_family, t_polynomial, WittLift};
use wildcover::ff::{Embedding, Fe, Field, FieldCtx};
use wildcover::grp::{lambda_dims, lambda_filtration, PhiFamily};
use wildcover::Poly;

fn field(p: u32, m: usize) -> Field {
    FieldCtx::default_field(p, m).unwrap()
}

fn fe(k: &Field, seed: u64) -> Fe {
    Fe::from_index(k, seed as u128 % k.order().unwrap())
}

fn poly(k: &Field, seeds: &[u64]) -> Poly {
    Poly::from_coeffs(k, seeds.iter().map(|s| fe(k, *s)).collect())
}

fn sparse(k: &Field, terms: &[(u64, usize)]) -> Poly {
    Poly::from_terms(k, terms.iter().map(|(c, e)| (fe(k, *c), *e)))
}

fn twisted(k: &Field, seeds: &[u64]) -> TwistedPoly {
    TwistedPoly::from_coeffs(k, seeds.iter().map(|s| fe(k, *s)).collect())
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 5, 7])
}

fn span_set(p: u32, vecs: &[Vec<u32>], n: usize) -> HashSet<Vec<u32>> {
    let mut out: HashSet<Vec<u32>> = HashSet::from([vec![0; n]]);
    for v in vecs {
        let prev: Vec<_> = out.iter().cloned().collect();
        for w in prev {
            for c in 1..p {
                out.insert(w.iter().zip(v).map(|(a, b)| (a + c * b) % p).collect());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn frobenius_is_a_ring_map(p in prime(), m in 1usize..=4, a in any::<u64>(), b in any::<u64>(), e in -6i64..6) {
        let k = field(p, m);
        let (a, b) = (fe(&k, a), fe(&k, b));
        prop_assert_eq!((&a * &b).frobenius(e), &a.frobenius(e) * &b.frobenius(e));
        prop_assert_eq!((&a + &b).frobenius(e), &a.frobenius(e) + &b.frobenius(e));
        prop_assert_eq!(a.wp().trace(), 0);
    }

    #[test]
    fn embedding_preserves_operations(a in any::<u64>(), b in any::<u64>()) {
        let (small, big) = (field(5, 2), field(5, 4));
        let emb = Embedding::new(&small, &big).unwrap();
        let (a, b) = (fe(&small, a), fe(&small, b));
        prop_assert_eq!(emb.apply(&(&a + &b)), &emb.apply(&a) + &emb.apply(&b));
        prop_assert_eq!(emb.apply(&(&a * &b)), &emb.apply(&a) * &emb.apply(&b));
        if !b.is_zero() {
            prop_assert_eq!(emb.apply(&b.inv().unwrap()), emb.apply(&b).inv().unwrap());
        }
    }

    #[test]
    fn delta_lowers_degree(p in prime(), c in vec(any::<u64>(), 2..12), y in any::<u64>()) {
        let k = field(p, 2);
        let f = poly(&k, &c);
        let y = fe(&k, y);
        prop_assume!(!y.is_zero() && f.degree().unwrap_or(0) > 0);
        let d = f.delta(&y);
        prop_assert!(d.is_zero() || d.degree().unwrap() < f.degree().unwrap());
    }

    #[test]
    fn compose_is_associative(f in vec(any::<u64>(), 1..4), g in vec(any::<u64>(), 1..4), h in vec(any::<u64>(), 1..4), a in any::<u64>()) {
        let k = field(5, 2);
        let (f, g, h) = (poly(&k, &f), poly(&k, &g), poly(&k, &h));
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        let a = fe(&k, a);
        prop_assert_eq!(f.compose(&g).evaluate(&a), f.evaluate(&g.evaluate(&a)));
    }

    #[test]
    fn twisted_ring_laws(a in vec(any::<u64>(), 1..3), b in vec(any::<u64>(), 1..3), c in vec(any::<u64>(), 1..3)) {
        let k = field(5, 2);
        let (a, b, c) = (twisted(&k, &a), twisted(&k, &b), twisted(&k, &c));
        let ab = a.twisted_mul(&b).unwrap();
        prop_assert_eq!(ab.twisted_mul(&c).unwrap(), a.twisted_mul(&b.twisted_mul(&c).unwrap()).unwrap());
        let left = a.twisted_mul(&b.try_add(&c).unwrap()).unwrap();
        prop_assert_eq!(left, ab.try_add(&a.twisted_mul(&c).unwrap()).unwrap());
        prop_assert_eq!(ab.to_poly(), a.to_poly().compose(&b.to_poly()));
        prop_assert!(is_additive(&ab.to_poly()));
    }

    #[test]
    fn subspace_poly_vanishes_exactly_on_span(seeds in vec(1u64..625, 1..4)) {
        let k = field(5, 4);
        let mut basis: Vec<Fe> = Vec::new();
        for s in seeds {
            let e = fe(&k, s);
            if !span_elements(&k, &basis).contains(&e) {
                basis.push(e);
            }
        }
        let s = subspace_poly(&k, &basis).unwrap();
        prop_assert!(s.is_separable());
        prop_assert!(is_additive(&s.to_poly()));
        let zs = zero_set_in_degree(&s, 4).unwrap();
        let got: HashSet<Fe> = span_elements(&zs.field, &zs.basis).into_iter().collect();
        let want: HashSet<Fe> = span_elements(&k, &basis).into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn dp_order_laws(p in prime(),
                     f in vec((any::<u64>(), 0usize..60), 1..6),
                     g in vec((any::<u64>(), 0usize..60), 1..6),
                     s in vec(any::<u64>(), 1..3)) {
        let k = field(p, 2);
        let (f, g) = (sparse(&k, &f), sparse(&k, &g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let (df, dg) = (dp_order(&f).unwrap(), dp_order(&g).unwrap());
        prop_assert!(dp_order(&f.try_mul(&g).unwrap()).unwrap() <= df + dg);
        prop_assert!(dp_order(&f.try_add(&g).unwrap()).is_none_or(|d| d <= df.max(dg)));
        prop_assert_eq!(dp_order(&f.pth_power()), Some(df));
        let s = twisted(&k, &s);
        prop_assume!(!s.is_zero());
        prop_assert_eq!(dp_order(&f.compose(&s.to_poly())), Some(df));
    }

    #[test]
    fn delta_drops_sigma_level(p in prime(), f in vec((any::<u64>(), 1usize..80), 1..6), y in 1u64..1000) {
        let k = field(p, 2);
        let f = sparse(&k, &f);
        let y = fe(&k, y);
        prop_assume!(!y.is_zero());
        if let Some(d) = dp_order(&f).filter(|d| *d >= 1) {
            prop_assert!(dp_order(&f.delta(&y)).is_none_or(|e| e < d));
        }
    }

    #[test]
    fn reduce_is_idempotent_and_wp_invariant(p in prime(), f in vec(any::<u64>(), 1..30), g in vec(any::<u64>(), 1..8)) {
        let k = field(p, 2);
        let (f, g) = (poly(&k, &f), poly(&k, &g));
        let r = reduce(&f);
        let again = reduce(&r.reduced);
        prop_assert_eq!(&again.reduced, &r.reduced);
        prop_assert_eq!(again.const_class, 0);
        prop_assert_eq!(reduce(&f.try_add(&g.wp()).unwrap()), r);
    }

    #[test]
    fn t_polynomial_telescopes(y in any::<u64>()) {
        let k = field(5, 3);
        let y = fe(&k, y);
        let t = t_polynomial(5, &y);
        let mut sum = Poly::zero(&k);
        for i in 0..5 {
            sum = sum.try_add(&t.shift(&y.scale(i))).unwrap();
        }
        prop_assert_eq!(sum, Poly::constant(-&y.pow(5)));
    }
}

#[test]
fn artin_schreier_roots_exist_iff_trace_vanishes() {
    for (p, m) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (5, 3), (5, 4), (7, 2)] {
        let k = field(p, m);
        for a in k.elements() {
            match a.as_root() {
                Ok(r) => assert_eq!(r.wp(), a),
                Err(_) => assert_ne!(a.trace(), 0, "{a} in F_{p}^{m}"),
            }
            assert_eq!(a.as_root().is_ok(), a.trace() == 0);
        }
    }
}

#[test]
fn twisted_mul_does_not_commute() {
    let k = field(5, 2);
    let t = TwistedPoly::scalar(Fe::gen(&k));
    let f = TwistedPoly::term(Fe::one(&k), 1);
    assert_ne!(t.twisted_mul(&f).unwrap(), f.twisted_mul(&t).unwrap());
}

#[test]
fn witt_numerators_have_valuation_one() {
    for p in [3, 5, 7] {
        let num = WittLift::numerator(p);
        assert!(num.coeffs.iter().all(|c| c % p == 0.into()));
        assert!(num.divide_by_p(p).is_ok());
    }
}

fn phi_generators(spec: &CoverSpec) -> Vec<(Fe, Vec<Vec<u32>>)> {
    PhiFamily::from_spec(spec).unwrap().generators
}

#[test]
fn lambda_filtration_ignores_generator_order_and_basis() {
    for n in 1..=4 {
        let spec = special_family(5, n).unwrap();
        let fam = PhiFamily::from_spec(&spec).unwrap();
        assert!(fam.commuting());
        let reference: Vec<HashSet<Vec<u32>>> = lambda_filtration(&fam).iter().map(|b| span_set(5, b, n)).collect();

        let mut gens = fam.generators.clone();
        gens.reverse();
        let permuted = PhiFamily::new(5, n, gens).unwrap();
        let got: Vec<_> = lambda_filtration(&permuted).iter().map(|b| span_set(5, b, n)).collect();
        assert_eq!(got, reference);

        let (a, b) = (&spec.v_basis[0], &spec.v_basis[1]);
        let other = vec![a + &b.scale(2), &a.scale(3) + &b.scale(2)];
        let respec = CoverSpec::from_classes(&spec.ambient, spec.functions.clone(), other).unwrap();
        let rebased = PhiFamily::new(5, n, phi_generators(&respec)).unwrap();
        let got: Vec<_> = lambda_filtration(&rebased).iter().map(|b| span_set(5, b, n)).collect();
        assert_eq!(got, reference);
        assert_eq!(lambda_dims(&rebased), (0..=n).collect::<Vec<_>>());
    }
}

#[test]
fn base_change_commutes_with_truncation() {
    let k = FieldCtx::prime(5).unwrap();
    let s0 = TwistedPoly::wp(&k);
    let spec = special_family(5, 3).unwrap();
    for d in 1..=3 {
        let a = truncate_cover(&base_change(&spec, &s0, 60).unwrap(), d).unwrap();
        let b = base_change(&truncate_cover(&spec, d).unwrap(), &s0, 60).unwrap();
        assert_eq!(a.ambient.header(), b.ambient.header());
        assert_eq!(a.reduced(), b.reduced());
        let va: HashSet<Fe> = a.v_elements().into_iter().collect();
        let vb: HashSet<Fe> = b.v_elements().into_iter().collect();
        assert_eq!(va, vb);
    }
}

/// Found by random search over F_9: a level-2 polynomial whose difference is a nonzero constant.
#[test]
fn delta_can_drop_more_than_one_level() {
    let k = field(3, 2);
    let t = Fe::gen(&k);
    let a = &(&t + &t) + &Fe::one(&k);
    let f = Poly::from_terms(&k, [(a.clone(), 18), (a.clone(), 10), (&t + &t, 9), (a, 2)]);
    let d = f.delta(&t);
    assert_eq!(dp_order(&f), Some(2));
    assert_eq!(dp_order(&d), Some(0));
    assert!(!d.is_zero());
}
