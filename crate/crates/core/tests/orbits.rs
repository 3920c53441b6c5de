mod common;

use gentle_core::braid::{
    integer_determinant, k0_classes, orbit_explore, seed_sequence, IsoOptions,
};
use gentle_core::iso::{iso_test, IsoVerdict};
use gentle_core::{fixtures, Field, PathAlgebra};

fn linear(n: usize) -> PathAlgebra {
    PathAlgebra::new(fixtures::linear(n), Field::default()).unwrap()
}

#[test]
fn oracle_counts() {
    // (n+1)^(n-1) full sequences up to shift
    for (n, want) in [(2, 3), (3, 16), (4, 125)] {
        assert_eq!(common::brute_force_sequence_count(&linear(n)), want);
    }
}

#[test]
fn orbits_match_the_oracle() {
    for n in 2..=4 {
        let a = linear(n);
        let seq = seed_sequence(&a, &(0..n).collect::<Vec<_>>()).unwrap();
        let rep = orbit_explore(&a, &seq, 1000, IsoOptions::default()).unwrap();
        assert!(rep.closed);
        assert!(rep.quarantined.is_empty());
        assert_eq!(rep.size, common::brute_force_sequence_count(&a), "A{n}");
    }
}

#[test]
fn orbit_members_are_oracle_objects() {
    let a = linear(3);
    let ind = common::linear_indecomposables(&a);
    let seq = seed_sequence(&a, &[0, 1, 2]).unwrap();
    let rep = orbit_explore(&a, &seq, 1000, IsoOptions::default()).unwrap();
    for s in &rep.elements {
        for x in s.items() {
            assert!(ind
                .iter()
                .any(|y| iso_test(&a, x, y, 20, 0) == IsoVerdict::Isomorphic));
        }
        assert_eq!(integer_determinant(&k0_classes(&a, s)).abs(), 1);
    }
}

#[test]
fn annulus_orbit_is_infinite_at_desk_scale() {
    let a = PathAlgebra::new(fixtures::delta1(), Field::default()).unwrap();
    let seq = seed_sequence(&a, &[0, 1, 4, 3, 2]).unwrap();
    let rep = orbit_explore(&a, &seq, 200, IsoOptions::default()).unwrap();
    assert!(!rep.closed);
    assert!(rep.size > 200);
    for s in &rep.elements {
        assert_eq!(integer_determinant(&k0_classes(&a, s)).abs(), 1);
    }
}
