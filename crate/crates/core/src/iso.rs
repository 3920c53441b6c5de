//! Isomorphism testing in the homotopy category.
//!
//! Non-isomorphism is certified by invariants (summand multisets of the
//! minimal models, Hom dimensions, or a vanishing composition pairing
//! between objects with one-dimensional endomorphisms). Isomorphism is
//! certified by a map whose cone is contractible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::PathAlgebra;
use crate::complex::{cone_unchecked, ChainMap, ProjComplex};
use crate::hom::{hom_basis, hom_dims, is_null_homotopic};
use crate::minimal::{is_contractible, minimalize};

pub const DEFAULT_TRIALS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    Undetermined,
}

fn random_combination(
    alg: &PathAlgebra,
    basis: &[ChainMap],
    rng: &mut ChaCha8Rng,
) -> ChainMap {
    let f = alg.field();
    let mut acc = ChainMap::zero(&basis[0].source, &basis[0].target, basis[0].degree);
    for b in basis {
        let c = rng.gen_range(0..f.prime());
        acc = acc.add(f, &b.scale(f, c));
    }
    acc
}

pub fn iso_test(
    alg: &PathAlgebra,
    x: &ProjComplex,
    y: &ProjComplex,
    trials: usize,
    seed: u64,
) -> IsoVerdict {
    let xm = minimalize(alg, x);
    let ym = minimalize(alg, y);
    iso_test_minimal(alg, &xm, &ym, trials, seed)
}

/// As [`iso_test`], for inputs that are already minimal.
pub fn iso_test_minimal(
    alg: &PathAlgebra,
    xm: &ProjComplex,
    ym: &ProjComplex,
    trials: usize,
    seed: u64,
) -> IsoVerdict {
    if xm.is_zero() || ym.is_zero() {
        return if xm.is_zero() && ym.is_zero() {
            IsoVerdict::Isomorphic
        } else {
            IsoVerdict::NotIsomorphic
        };
    }
    if xm.summand_profile() != ym.summand_profile() {
        return IsoVerdict::NotIsomorphic;
    }
    if xm == ym {
        return IsoVerdict::Isomorphic;
    }
    let xx = hom_dims(alg, xm, xm);
    let xy = hom_dims(alg, xm, ym);
    let yx = hom_dims(alg, ym, xm);
    let yy = hom_dims(alg, ym, ym);
    if xx != xy || xx != yx || xx != yy {
        return IsoVerdict::NotIsomorphic;
    }
    let forward = hom_basis(alg, xm, ym, 0).basis;
    if forward.is_empty() {
        return IsoVerdict::NotIsomorphic;
    }
    let end_dim = xx.iter().find(|&&(l, _)| l == 0).map_or(0, |&(_, d)| d);
    if end_dim == 1 {
        // with End(X) = k, X ≅ Y iff some f: X -> Y, g: Y -> X has fg ≠ 0
        let backward = hom_basis(alg, ym, xm, 0).basis;
        let pairing_vanishes = forward.iter().all(|f| {
            backward.iter().all(|g| {
                let fg = f.compose(alg, g).expect("composable by construction");
                is_null_homotopic(alg, &fg)
            })
        });
        if pairing_vanishes {
            return IsoVerdict::NotIsomorphic;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let f = random_combination(alg, &forward, &mut rng);
        if is_contractible(alg, &cone_unchecked(alg, &f)) {
            return IsoVerdict::Isomorphic;
        }
    }
    IsoVerdict::Undetermined
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PathVector;
    use crate::complex::cone;
    use crate::fixtures;
    use crate::linalg::Field;

    #[test]
    fn basic_verdicts() {
        let alg = PathAlgebra::new(fixtures::a2(), Field::default()).unwrap();
        let p1 = ProjComplex::stalk(0, 0);
        let p2 = ProjComplex::stalk(1, 0);
        assert_eq!(iso_test(&alg, &p1, &p1, 20, 0), IsoVerdict::Isomorphic);
        assert_eq!(iso_test(&alg, &p1, &p2, 20, 0), IsoVerdict::NotIsomorphic);
        let c = cone(&alg, &ChainMap::identity(&alg, &p2)).unwrap();
        let (sum, _) = ProjComplex::direct_sum(&[&p1, &c]);
        assert_eq!(iso_test(&alg, &sum, &p1, 20, 0), IsoVerdict::Isomorphic);
    }

    #[test]
    fn rescaled_differential_is_isomorphic() {
        let alg = PathAlgebra::new(fixtures::a2(), Field::default()).unwrap();
        let p1 = ProjComplex::stalk(0, 0);
        let p2 = ProjComplex::stalk(1, 0);
        let a = alg.between(0, 1)[0];
        let make = |c: u64| {
            let mut m = ChainMap::zero(&p1, &p2, 0);
            m.set_entry(0, 0, 0, PathVector::scaled_path(&alg, a, c));
            cone(&alg, &m).unwrap()
        };
        assert_eq!(iso_test(&alg, &make(1), &make(7), 20, 3), IsoVerdict::Isomorphic);
    }

    #[test]
    fn kronecker_pencils_are_distinguished() {
        // cones of a and of b: same summands and Hom dimensions, not isomorphic
        let alg = PathAlgebra::new(fixtures::kronecker(), Field::default()).unwrap();
        let p1 = ProjComplex::stalk(0, 0);
        let p2 = ProjComplex::stalk(1, 0);
        let paths = alg.between(0, 1).to_vec();
        let make = |p: usize| {
            let mut m = ChainMap::zero(&p1, &p2, 0);
            m.set_entry(0, 0, 0, PathVector::basis(&alg, p));
            cone(&alg, &m).unwrap()
        };
        let (x, y) = (make(paths[0]), make(paths[1]));
        assert_eq!(iso_test(&alg, &x, &y, 20, 0), IsoVerdict::NotIsomorphic);
    }
}
