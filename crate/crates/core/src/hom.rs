//! Morphism spaces in the homotopy category, computed as cohomology of the
//! Hom complex.
//!
//! `Hom^n(X, Y)` has one coordinate per triple (summand `i` of `X^k`,
//! summand `j` of `Y^{k+n}`, path from the vertex of `i` to the vertex of
//! `j`). Its differential is `δ(F) = D_X F - (-1)^n F D_Y`; closed
//! degree-`n` elements are exactly chain maps `X -> Y[n]`.

use std::collections::HashMap;

use crate::algebra::{PathAlgebra, PathVector};
use crate::complex::{ChainMap, ProjComplex};
use crate::linalg::{Echelon, Mat};

#[derive(Clone, Debug)]
pub(crate) struct HomCoords {
    pub n: i32,
    pub coords: Vec<(i32, usize, usize, usize)>,
    index: HashMap<(i32, usize, usize, usize), usize>,
}

impl HomCoords {
    pub fn new(alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex, n: i32) -> HomCoords {
        let mut coords = Vec::new();
        for k in x.degrees() {
            for (i, &v) in x.term(k).iter().enumerate() {
                for (j, &w) in y.term(k + n).iter().enumerate() {
                    for &p in alg.between(v, w) {
                        coords.push((k, i, j, p));
                    }
                }
            }
        }
        let index = coords.iter().enumerate().map(|(c, &t)| (t, c)).collect();
        HomCoords { n, coords, index }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn to_map(&self, alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex, v: &[u64]) -> ChainMap {
        let mut entries: HashMap<(i32, usize, usize), Vec<(usize, u64)>> = HashMap::new();
        for (c, &(k, i, j, p)) in self.coords.iter().enumerate() {
            if v[c] != 0 {
                entries.entry((k, i, j)).or_default().push((p, v[c]));
            }
        }
        let mut m = ChainMap::zero(x, y, self.n);
        for ((k, i, j), terms) in entries {
            let (s, t) = (x.term(k)[i], y.term(k + self.n)[j]);
            let e = PathVector::from_terms(alg, s, t, terms).expect("coordinates are typed");
            m.set_entry(k, i, j, e);
        }
        m
    }

    pub fn coordinates(&self, alg: &PathAlgebra, m: &ChainMap) -> Vec<u64> {
        let mut v = vec![0u64; self.len()];
        for &(k, i, j, _) in self.coords.iter() {
            let e = m.entry(k, i, j);
            for &(p, c) in e.terms() {
                v[self.index[&(k, i, j, p)]] = c % alg.field().prime();
            }
        }
        v
    }
}

/// Matrix of `δ: Hom^n -> Hom^{n+1}` (rows indexed by `to`, columns by `from`).
pub(crate) fn delta_matrix(
    alg: &PathAlgebra,
    x: &ProjComplex,
    y: &ProjComplex,
    from: &HomCoords,
    to: &HomCoords,
) -> Mat {
    let f = alg.field();
    let n = from.n;
    let sign = f.neg(f.sign(n));
    let mut m = Mat::zeros(to.len(), from.len());
    for (col, &(k, i, j, p)) in from.coords.iter().enumerate() {
        // D_X^{k-1} F^k lands in degree k - 1
        for (i2, row) in x.diff(k - 1).iter().enumerate() {
            for &(q, c) in row[i].terms() {
                if let Some(r) = alg.mul(q, p) {
                    m.add_to(f, to.index[&(k - 1, i2, j, r)], col, c);
                }
            }
        }
        // -(-1)^n F^k D_Y^{k+n}
        for (j2, e) in y.diff(k + n)[j].iter().enumerate() {
            for &(q, c) in e.terms() {
                if let Some(r) = alg.mul(p, q) {
                    m.add_to(f, to.index[&(k, i, j2, r)], col, f.mul(sign, c));
                }
            }
        }
    }
    m
}

/// Closed degree-`ℓ` maps modulo null-homotopic ones: a basis of
/// `Hom(X, Y[ℓ])`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub shift: i32,
    pub basis: Vec<ChainMap>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Shifts outside this window have no nonzero Hom coordinates.
pub fn hom_window(x: &ProjComplex, y: &ProjComplex) -> Option<(i32, i32)> {
    if x.is_zero() || y.is_zero() {
        return None;
    }
    Some((
        y.min_degree() - x.max_degree(),
        y.max_degree() - x.min_degree(),
    ))
}

pub fn hom_dim(alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex, l: i32) -> usize {
    let f = alg.field();
    let prev = HomCoords::new(alg, x, y, l - 1);
    let here = HomCoords::new(alg, x, y, l);
    if here.len() == 0 {
        return 0;
    }
    let next = HomCoords::new(alg, x, y, l + 1);
    let r_out = delta_matrix(alg, x, y, &here, &next).rank(f);
    let r_in = delta_matrix(alg, x, y, &prev, &here).rank(f);
    here.len() - r_out - r_in
}

/// `dim Hom(X, Y[ℓ])` for every `ℓ` in the window, zeros included.
pub fn hom_dims(alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex) -> Vec<(i32, usize)> {
    let Some((lo, hi)) = hom_window(x, y) else {
        return Vec::new();
    };
    let f = alg.field();
    let coords: Vec<HomCoords> = (lo - 1..=hi + 1).map(|n| HomCoords::new(alg, x, y, n)).collect();
    let ranks: Vec<usize> = (0..coords.len() - 1)
        .map(|i| {
            if coords[i].len() == 0 || coords[i + 1].len() == 0 {
                0
            } else {
                delta_matrix(alg, x, y, &coords[i], &coords[i + 1]).rank(f)
            }
        })
        .collect();
    (lo..=hi)
        .map(|l| {
            let i = (l - lo + 1) as usize;
            (l, coords[i].len() - ranks[i] - ranks[i - 1])
        })
        .collect()
}

pub fn hom_basis(alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex, l: i32) -> HomSpace {
    let f = alg.field();
    let here = HomCoords::new(alg, x, y, l);
    if here.len() == 0 {
        return HomSpace {
            shift: l,
            basis: Vec::new(),
        };
    }
    let prev = HomCoords::new(alg, x, y, l - 1);
    let next = HomCoords::new(alg, x, y, l + 1);
    let kernel = delta_matrix(alg, x, y, &here, &next).kernel(f);
    let image = delta_matrix(alg, x, y, &prev, &here);
    let mut ech = Echelon::new(*f, here.len());
    for c in 0..image.cols() {
        ech.insert(&image.column(c));
    }
    let basis = kernel
        .into_iter()
        .filter(|v| ech.insert(v))
        .map(|v| here.to_map(alg, x, y, &v))
        .collect();
    HomSpace { shift: l, basis }
}

/// Nonzero `Hom(X, Y[ℓ])` over the window, in increasing `ℓ`.
pub fn hom_all(alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex) -> Vec<HomSpace> {
    hom_dims(alg, x, y)
        .into_iter()
        .filter(|&(_, d)| d > 0)
        .map(|(l, _)| hom_basis(alg, x, y, l))
        .collect()
}

/// True iff the closed map `m` is null-homotopic.
pub fn is_null_homotopic(alg: &PathAlgebra, m: &ChainMap) -> bool {
    let (x, y) = (&m.source, &m.target);
    let here = HomCoords::new(alg, x, y, m.degree);
    if here.len() == 0 {
        return true;
    }
    let prev = HomCoords::new(alg, x, y, m.degree - 1);
    let image = delta_matrix(alg, x, y, &prev, &here);
    image.solve(alg.field(), &here.coordinates(alg, m)).is_some()
}

/// `Σ_ℓ (-1)^ℓ dim Hom(X, Y[ℓ])`.
pub fn euler_form(alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex) -> i64 {
    hom_dims(alg, x, y)
        .into_iter()
        .map(|(l, d)| if l.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cone;
    use crate::fixtures;
    use crate::linalg::Field;

    fn alg(q: crate::quiver::GentleQuiver) -> PathAlgebra {
        PathAlgebra::new(q, Field::default()).unwrap()
    }

    #[test]
    fn stalk_homs_in_a2() {
        let a = alg(fixtures::a2());
        let p1 = ProjComplex::stalk(0, 0);
        let p2 = ProjComplex::stalk(1, 0);
        assert_eq!(hom_dim(&a, &p1, &p2, 0), 1);
        for l in -3..=3 {
            assert_eq!(hom_dim(&a, &p2, &p1, l), 0);
        }
        assert_eq!(hom_dims(&a, &p1, &p1), vec![(0, 1)]);
        let all = hom_all(&a, &p1, &p2);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].shift, 0);
        assert!(hom_all(&a, &p2, &p1).is_empty());
    }

    #[test]
    fn identity_is_a_nonzero_class() {
        let a = alg(fixtures::delta1());
        let x = ProjComplex::stalk(2, 0);
        let id = ChainMap::identity(&a, &x);
        assert!(id.is_closed(&a));
        assert!(!is_null_homotopic(&a, &id));
        assert_eq!(hom_dim(&a, &x, &x, 0), 1);
    }

    #[test]
    fn kronecker_hom() {
        let a = alg(fixtures::kronecker());
        let b = hom_basis(&a, &ProjComplex::stalk(0, 0), &ProjComplex::stalk(1, 0), 0);
        assert_eq!(b.dim(), 2);
    }

    #[test]
    fn cone_of_identity_has_no_homs() {
        let a = alg(fixtures::a2());
        let x = ProjComplex::stalk(0, 0);
        let c = cone(&a, &ChainMap::identity(&a, &x)).unwrap();
        assert_eq!(c.total_rank(), 2);
        for (_, d) in hom_dims(&a, &c, &c) {
            assert_eq!(d, 0);
        }
        let id = ChainMap::identity(&a, &c);
        assert!(is_null_homotopic(&a, &id));
    }

    #[test]
    fn two_term_complex_is_rigid() {
        let a = alg(fixtures::a2());
        let x = ProjComplex::stalk(0, 0);
        let y = ProjComplex::stalk(1, 0);
        let m = hom_basis(&a, &x, &y, 0).basis.remove(0);
        let c = cone(&a, &m).unwrap();
        assert_eq!(hom_dims(&a, &c, &c), vec![(-1, 0), (0, 1), (1, 0)]);
        // Hom(P2, C) = 0 in every shift? P2 -> P2 in degree 0 survives
        assert_eq!(euler_form(&a, &y, &c), euler_form(&a, &y, &y) - euler_form(&a, &y, &x));
    }
}
