use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cyclo_rr::abelian::FinAbGroup;
use cyclo_rr::catalog::{abelian_groups, random_gset, random_map};
use cyclo_rr::cyclotomic::{crt_join, crt_split, trace, CycFieldElem, CycModN};
use cyclo_rr::equivariant::{pullback, pushforward, EquivariantMap, GSet, KClass, KTheory};
use cyclo_rr::lrr::{lrr_forward, lrr_inverse, CyclotomicInertia, TwistedClass};
use cyclo_rr::numtheory::{divisors, euler_phi, units};
use cyclo_rr::rational::{self, frac, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| frac(n, d))
}

fn random_class<R: Rng>(k: &KTheory, rng: &mut R) -> KClass {
    let v: Vec<Rational> =
        (0..k.dim()).map(|_| frac(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect();
    k.from_vector(&v).unwrap()
}

fn group_and_rng(seed: u64, max_order: u64) -> (FinAbGroup, ChaCha8Rng) {
    let groups = abelian_groups(max_order);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = groups[rng.gen_range(0..groups.len())].clone();
    (g, rng)
}

/// `f` followed by the map to a single fixed point.
fn collapse(f: &EquivariantMap) -> EquivariantMap {
    let target = f.target();
    let pt = GSet::trivial(target.group(), 1);
    EquivariantMap::new(target.clone(), pt, vec![0; target.points()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rationals_survive_text(n in any::<i64>(), d in 1i64..=i64::MAX) {
        let x = frac(n, d);
        prop_assert_eq!(rational::parse(&rational::to_string(&x)).unwrap(), x);
    }

    #[test]
    fn crt_split_join_roundtrip(n in 1u64..=24, cs in prop::collection::vec(small_rational(), 24)) {
        let e = CycModN::new(n, cs[..n as usize].to_vec()).unwrap();
        prop_assert_eq!(crt_join(&crt_split(&e)), e);
    }

    #[test]
    fn trace_is_galois_equivariant(
        n in 1u64..=24,
        cs in prop::collection::vec(small_rational(), 24),
        pick in any::<prop::sample::Index>(),
    ) {
        let x = CycFieldElem::new(n, cs[..euler_phi(n) as usize].to_vec()).unwrap();
        let us = units(n);
        let u = us[pick.index(us.len())];
        for r in divisors(n) {
            let lhs = trace(&x.galois(u).unwrap(), r).unwrap();
            let rhs = trace(&x, r).unwrap().galois(u % r).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn projection_formula(seed in any::<u64>()) {
        let (g, mut rng) = group_and_rng(seed, 12);
        let f = random_map(&g, 6, &mut rng);
        let (src, tgt) = (KTheory::new(f.source()), KTheory::new(f.target()));
        let a = random_class(&src, &mut rng);
        let b = random_class(&tgt, &mut rng);
        let lhs = pushforward(&f, &src, &tgt, &src.mul(&a, &pullback(&f, &src, &tgt, &b).unwrap()).unwrap()).unwrap();
        let rhs = tgt.mul(&pushforward(&f, &src, &tgt, &a).unwrap(), &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pushforward_and_pullback_are_functorial(seed in any::<u64>()) {
        let (g, mut rng) = group_and_rng(seed, 12);
        let f = random_map(&g, 6, &mut rng);
        let c = collapse(&f);
        let gf = f.then(&c).unwrap();
        let (x, y, z) = (KTheory::new(f.source()), KTheory::new(f.target()), KTheory::new(c.target()));
        let a = random_class(&x, &mut rng);
        let two_steps = pushforward(&c, &y, &z, &pushforward(&f, &x, &y, &a).unwrap()).unwrap();
        prop_assert_eq!(pushforward(&gf, &x, &z, &a).unwrap(), two_steps);
        let b = random_class(&z, &mut rng);
        let back = pullback(&f, &x, &y, &pullback(&c, &y, &z, &b).unwrap()).unwrap();
        prop_assert_eq!(pullback(&gf, &x, &z, &b).unwrap(), back);
    }

    #[test]
    fn pushforward_preserves_support(seed in any::<u64>()) {
        let (g, mut rng) = group_and_rng(seed, 12);
        let f = random_map(&g, 6, &mut rng);
        let (src, tgt) = (KTheory::new(f.source()), KTheory::new(f.target()));
        let a = random_class(&src, &mut rng);
        for sigma in g.dual_cyclic_subgroups() {
            let local = src.localize(&a, &sigma).unwrap();
            let pushed = pushforward(&f, &src, &tgt, &local).unwrap();
            prop_assert_eq!(tgt.localize(&pushed, &sigma).unwrap(), pushed);
        }
    }

    #[test]
    fn lrr_roundtrip_on_random_classes(seed in any::<u64>()) {
        let (g, mut rng) = group_and_rng(seed, 16);
        let x = random_gset(&g, 6, &mut rng);
        let i = CyclotomicInertia::new(&x);
        let a = random_class(i.k_theory(), &mut rng);
        prop_assert_eq!(lrr_inverse(&i, &lrr_forward(&i, &a).unwrap()).unwrap(), a);
    }

    #[test]
    fn json_roundtrips(seed in any::<u64>()) {
        let (g, mut rng) = group_and_rng(seed, 16);
        let f = random_map(&g, 6, &mut rng);
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<EquivariantMap>(&text).unwrap(), f.clone());
        let i = CyclotomicInertia::new(f.source());
        let k = i.k_theory();
        let a = random_class(k, &mut rng);
        prop_assert_eq!(k.class_from_json(&k.class_to_json(&a)).unwrap(), a.clone());
        let w = lrr_forward(&i, &a).unwrap();
        prop_assert_eq!(TwistedClass::from_json(&i, &w.to_json(&i)).unwrap(), w);
    }
}
