//! Minimal models by Gaussian elimination of invertible differential
//! entries.
//!
//! An entry `α: P_v -> P_v` with nonzero coefficient on `e_v` is invertible.
//! Removing its row summand in degree `k` and column summand in degree
//! `k + 1` and correcting `D'[r][c] = D[r][c] - D[r][j] α⁻¹ D[i][c]` gives a
//! homotopy equivalent complex; the neighbouring differentials just lose
//! the matching column and row.

use crate::algebra::{PathAlgebra, PathVector};
use crate::complex::{PathMatrix, ProjComplex};

/// Inverse of a unit in `e_v A e_v`, written `λ(e + r)` with `r` nilpotent.
pub(crate) fn unit_inverse(alg: &PathAlgebra, alpha: &PathVector) -> PathVector {
    let f = alg.field();
    let v = alpha.source;
    let e = PathVector::identity(alg, v);
    let lambda = alpha.unit_coefficient(alg);
    assert!(lambda != 0, "pivot is not a unit");
    let li = f.inv(lambda);
    // α = λ(e + r)  ⇒  α⁻¹ = λ⁻¹ Σ (-r)^m
    let r = alpha.scale(f, li).sub(f, &e);
    let minus_r = r.neg(f);
    let mut acc = e.clone();
    let mut power = e;
    loop {
        power = power.compose_unchecked(alg, &minus_r);
        if power.is_zero() {
            break;
        }
        acc = acc.add(f, &power);
    }
    acc.scale(f, li)
}

fn find_pivot(alg: &PathAlgebra, x: &ProjComplex) -> Option<(i32, usize, usize)> {
    for d in x.degrees() {
        for (i, row) in x.diff(d).iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.unit_coefficient(alg) != 0 {
                    return Some((d, i, j));
                }
            }
        }
    }
    None
}

fn eliminate(alg: &PathAlgebra, x: &ProjComplex, d: i32, i: usize, j: usize) -> ProjComplex {
    let f = alg.field();
    let lo = x.min_degree();
    let mut terms: Vec<Vec<usize>> = x.degrees().map(|k| x.term(k).to_vec()).collect();
    let mut diffs: Vec<PathMatrix> = x.degrees().map(|k| x.diff(k).to_vec()).collect();
    let k = (d - lo) as usize;
    let inv = unit_inverse(alg, &x.diff(d)[i][j]);
    let old = &diffs[k];
    let mut new = Vec::with_capacity(old.len() - 1);
    for (r, row) in old.iter().enumerate() {
        if r == i {
            continue;
        }
        let mut out_row = Vec::with_capacity(row.len() - 1);
        let factor = if row[j].is_zero() {
            None
        } else {
            Some(row[j].compose_unchecked(alg, &inv))
        };
        for (c, e) in row.iter().enumerate() {
            if c == j {
                continue;
            }
            match &factor {
                Some(g) if !old[i][c].is_zero() => {
                    let corr = g.compose_unchecked(alg, &old[i][c]);
                    out_row.push(e.sub(f, &corr));
                }
                _ => out_row.push(e.clone()),
            }
        }
        new.push(out_row);
    }
    diffs[k] = new;
    if k > 0 {
        for row in diffs[k - 1].iter_mut() {
            row.remove(i);
        }
    }
    diffs[k + 1].remove(j);
    terms[k].remove(i);
    terms[k + 1].remove(j);
    ProjComplex::from_raw(lo, terms, diffs)
}

/// Homotopy-equivalent complex with radical differential. Pivots are taken
/// in degree order, then row-major.
pub fn minimalize(alg: &PathAlgebra, x: &ProjComplex) -> ProjComplex {
    let mut cur = x.clone();
    while let Some((d, i, j)) = find_pivot(alg, &cur) {
        cur = eliminate(alg, &cur, d, i, j);
    }
    cur
}

pub fn is_minimal(alg: &PathAlgebra, x: &ProjComplex) -> bool {
    find_pivot(alg, x).is_none()
}

pub fn is_contractible(alg: &PathAlgebra, x: &ProjComplex) -> bool {
    minimalize(alg, x).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cone, ChainMap};
    use crate::fixtures;
    use crate::linalg::Field;

    #[test]
    fn inverse_of_unit_with_loop() {
        let alg = PathAlgebra::new(fixtures::loop_nilpotent(), Field::default()).unwrap();
        let f = alg.field();
        let e = alg.trivial(0);
        let a = alg.between(0, 0).iter().copied().find(|&p| p != e).unwrap();
        let alpha = PathVector::from_terms(&alg, 0, 0, [(e, 3), (a, 5)]).unwrap();
        let inv = unit_inverse(&alg, &alpha);
        let prod = alpha.compose_unchecked(&alg, &inv);
        assert_eq!(prod, PathVector::identity(&alg, 0));
        assert_eq!(inv.scale(f, 1), inv);
    }

    #[test]
    fn cone_of_identity_vanishes() {
        let alg = PathAlgebra::new(fixtures::delta1(), Field::default()).unwrap();
        let x = ProjComplex::stalk(0, 0);
        let c = cone(&alg, &ChainMap::identity(&alg, &x)).unwrap();
        assert!(minimalize(&alg, &c).is_zero());
        assert!(is_contractible(&alg, &c));
        assert!(!is_contractible(&alg, &x));
    }

    #[test]
    fn sum_with_contractible_part() {
        let alg = PathAlgebra::new(fixtures::a2(), Field::default()).unwrap();
        let p1 = ProjComplex::stalk(0, 0);
        let p2 = ProjComplex::stalk(1, 0);
        let c = cone(&alg, &ChainMap::identity(&alg, &p2)).unwrap();
        let (sum, _) = ProjComplex::direct_sum(&[&p1, &c]);
        assert_eq!(minimalize(&alg, &sum), p1);
    }

    #[test]
    fn minimal_complexes_are_fixed() {
        let alg = PathAlgebra::new(fixtures::a2(), Field::default()).unwrap();
        let p1 = ProjComplex::stalk(0, 0);
        let p2 = ProjComplex::stalk(1, 0);
        let mut m = ChainMap::zero(&p1, &p2, 0);
        m.set_entry(0, 0, 0, PathVector::basis(&alg, alg.between(0, 1)[0]));
        let c = cone(&alg, &m).unwrap();
        assert!(is_minimal(&alg, &c));
        assert_eq!(minimalize(&alg, &c), c);
        assert!(!is_contractible(&alg, &c));
    }
}
