use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wildcover::additive::{zero_set, DEFAULT_AMBIENT_BOUND};
use wildcover::cover::{max_jump_check, span_elements, verify_cover, CoverSpec};
use wildcover::families::*;
use wildcover::ff::{Embedding, Fe, Field, FieldCtx};

fn random_fe(rng: &mut impl Rng, k: &Field) -> Fe {
    Fe::from_index(k, rng.gen_range(0..k.order().unwrap()))
}

fn random_nonzero(rng: &mut impl Rng, k: &Field) -> Fe {
    Fe::from_index(k, rng.gen_range(1..k.order().unwrap()))
}

/// Draws admissible `n = 4` parameters: `b0 ∈ μ_96`, `d8 - c7` in the constraint kernel.
pub fn random_n4(rng: &mut impl Rng) -> UniversalParams {
    let k8 = FieldCtx::default_field(5, 8).unwrap();
    let b0 = random_nonzero(rng, &k8).pow((5u64.pow(8) - 1) / 96);
    let zs = zero_set(&n4_t_constraint(&b0), DEFAULT_AMBIENT_BOUND).unwrap();
    let l = zs.field.clone();
    let b0 = zs.embedding.apply(&b0);
    let ts = span_elements(&l, &zs.basis);
    let t = ts[rng.gen_range(0..ts.len())].clone();
    let c7 = random_fe(rng, &l);
    UniversalParams::N4 { b0, d8: &c7 + &t, c7, d11: random_fe(rng, &l), d13: random_fe(rng, &l) }
}

fn assert_big(spec: &CoverSpec, n: usize) {
    assert_eq!(spec.degrees(), (1..=n).map(|i| 1 + 5 * i).collect::<Vec<_>>());
    assert_eq!(spec.v(), 2);
    let r = verify_cover(spec).unwrap();
    assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    assert!(max_jump_check(spec).unwrap().all_passed());
}

#[test]
fn universal_n3_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let k = FieldCtx::default_field(5, 2).unwrap();
    for _ in 0..5 {
        let p = UniversalParams::N3 {
            b0: random_nonzero(&mut rng, &k),
            c7: random_fe(&mut rng, &k),
            c9: random_fe(&mut rng, &k),
        };
        assert_big(&universal_p5(&p, DEFAULT_AMBIENT_BOUND).unwrap(), 3);
    }
}

#[test]
fn universal_n4_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..3 {
        let p = random_n4(&mut rng);
        eprintln!("field degree {}", p.field().degree());
        assert_big(&universal_p5(&p, DEFAULT_AMBIENT_BOUND).unwrap(), 4);
    }
}

#[test]
fn base_change_identity_keeps_span() {
    let spec = special_family(5, 2).unwrap();
    let k = FieldCtx::prime(5).unwrap();
    let same = base_change(&spec, &wildcover::additive::TwistedPoly::one(&k), 60).unwrap();
    assert_eq!(same.degrees(), spec.degrees());
    let emb = Embedding::new(&spec.ambient, &same.ambient).unwrap();
    let a: std::collections::HashSet<Fe> =
        span_elements(&same.ambient, &spec.v_basis.iter().map(|y| emb.apply(y)).collect::<Vec<_>>())
            .into_iter()
            .collect();
    let b: std::collections::HashSet<Fe> = same.v_elements().into_iter().collect();
    assert_eq!(a, b);
}
