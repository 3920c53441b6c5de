mod common;

use gentle_core::braid::{
    apply_word, integer_determinant, k0_classes, seed_sequence, BraidWord, IsoOptions,
};
use gentle_core::complex::{cone, ChainMap, ProjComplex};
use gentle_core::exceptional::{enumerate_presentations, linear_extensions};
use gentle_core::fixtures;
use gentle_core::hom::{euler_form, hom_all, hom_dims};
use gentle_core::iso::{iso_test, IsoVerdict};
use gentle_core::minimal::{is_contractible, is_minimal, minimalize};
use gentle_core::ribbon::surface_invariants;
use gentle_core::{Field, GentleQuiver, PathAlgebra};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebras() -> Vec<PathAlgebra> {
    [
        fixtures::a2(),
        fixtures::a3(),
        fixtures::kronecker(),
        fixtures::delta1(),
        fixtures::delta2(),
        fixtures::loop_nilpotent(),
    ]
    .into_iter()
    .map(|q| PathAlgebra::new(q, Field::default()).unwrap())
    .collect()
}

fn sample(which: usize, seed: u64, steps: usize) -> (PathAlgebra, ProjComplex) {
    let a = algebras().swap_remove(which);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = common::random_complex(&a, &mut rng, steps);
    (a, x)
}

fn nonzero(v: Vec<(i32, usize)>) -> Vec<(i32, usize)> {
    v.into_iter().filter(|&(_, d)| d > 0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructed_complexes_square_to_zero(which in 0..6usize, seed: u64) {
        let (a, x) = sample(which, seed, 5);
        prop_assert!(x.check_dd(&a).is_ok());
        prop_assert!(minimalize(&a, &x).check_dd(&a).is_ok());
        prop_assert!(x.shift(a.field(), 3).check_dd(&a).is_ok());
    }

    #[test]
    fn minimalize_is_idempotent(which in 0..6usize, seed: u64) {
        let (a, x) = sample(which, seed, 5);
        let m = minimalize(&a, &x);
        prop_assert!(is_minimal(&a, &m));
        prop_assert_eq!(minimalize(&a, &m), m);
    }

    #[test]
    fn cone_of_identity_is_contractible(which in 0..6usize, seed: u64) {
        let (a, x) = sample(which, seed, 4);
        let c = cone(&a, &ChainMap::identity(&a, &x)).unwrap();
        prop_assert!(is_contractible(&a, &c));
    }

    #[test]
    fn hom_dimensions_survive_minimalization(which in 0..6usize, seed: u64) {
        let (a, x) = sample(which, seed, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let y = common::random_complex(&a, &mut rng, 3);
        let m = minimalize(&a, &x);
        prop_assert_eq!(nonzero(hom_dims(&a, &x, &y)), nonzero(hom_dims(&a, &m, &y)));
        prop_assert_eq!(nonzero(hom_dims(&a, &y, &x)), nonzero(hom_dims(&a, &y, &m)));
        prop_assert_eq!(iso_test(&a, &x, &m, 20, seed), IsoVerdict::Isomorphic);
    }

    #[test]
    fn euler_form_is_additive_on_cones(which in 0..6usize, seed: u64) {
        let (a, x) = sample(which, seed, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let y = common::random_complex(&a, &mut rng, 3);
        let z = common::random_complex(&a, &mut rng, 2);
        for space in hom_all(&a, &x, &y) {
            for b in &space.basis {
                let g = b.unshift(a.field());
                let c = cone(&a, &g).unwrap();
                let xs = &g.source;
                prop_assert_eq!(
                    euler_form(&a, &z, &c),
                    euler_form(&a, &z, &y) - euler_form(&a, &z, xs)
                );
                prop_assert_eq!(
                    euler_form(&a, &c, &z),
                    euler_form(&a, &y, &z) - euler_form(&a, xs, &z)
                );
            }
        }
    }

    #[test]
    fn words_then_inverses_return_home(
        which in prop::sample::select(vec![1usize, 3]),
        word in prop::collection::vec((1..5i32, any::<bool>()), 1..6),
    ) {
        let a = algebras().swap_remove(which);
        let n = a.num_vertices() as i32;
        let order = linear_extensions(a.quiver(), 1).unwrap().remove(0);
        let seq = seed_sequence(&a, &order).unwrap();
        let w = BraidWord(
            word.into_iter()
                .map(|(g, inv)| {
                    let g = (g - 1) % (n - 1) + 1;
                    if inv { -g } else { g }
                })
                .collect(),
        );
        let there = apply_word(&a, &seq, &w).unwrap();
        prop_assert_eq!(integer_determinant(&k0_classes(&a, &there)).abs(), 1);
        let back = apply_word(&a, &there, &w.inverse()).unwrap();
        for (x, y) in back.items().iter().zip(seq.items()) {
            prop_assert_eq!(iso_test(&a, x, y, IsoOptions::default().trials, 0), IsoVerdict::Isomorphic);
        }
    }

    #[test]
    fn relation_cycles_are_punctures(idx in 0..400usize) {
        let all: Vec<GentleQuiver> = [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)]
            .into_iter()
            .flat_map(|(n, m)| enumerate_presentations(n, m))
            .collect();
        let q = &all[idx % all.len()];
        let inv = surface_invariants(q).unwrap();
        prop_assert_eq!(q.has_full_relation_cycle(), inv.punctures > 0);
    }

    #[test]
    fn gq_round_trip(idx in 0..400usize) {
        let all = enumerate_presentations(3, 4);
        let q = &all[idx % all.len()];
        prop_assert_eq!(&GentleQuiver::parse(&q.to_gq()).unwrap(), q);
    }
}

#[test]
fn cut_order_independence_on_corpus() {
    let mut pairs = 0;
    for (name, q) in fixtures::corpus() {
        for (u, v, same) in common::cut_order_results(&q) {
            assert!(same, "{name}: {{{u},{v}}}");
            pairs += 1;
        }
    }
    assert!(pairs > 0);
}
