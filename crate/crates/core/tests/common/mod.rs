#![allow(dead_code)]

use gentle_core::complex::{cone, ProjComplex};
use gentle_core::exceptional::{cut_collection, presentation};
use gentle_core::hom::{hom_all, hom_dims};
use gentle_core::{GentleQuiver, PathAlgebra, PathVector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Builds a complex from stalks by repeatedly taking cones of random
/// morphisms and adding contractible summands.
pub fn random_complex(alg: &PathAlgebra, rng: &mut ChaCha8Rng, steps: usize) -> ProjComplex {
    let f = alg.field();
    let n = alg.num_vertices();
    let mut pool: Vec<ProjComplex> = (0..3)
        .map(|_| ProjComplex::stalk(rng.gen_range(0..n), rng.gen_range(-1..=1)))
        .collect();
    for _ in 0..steps {
        let x = pool.choose(rng).unwrap().clone();
        let y = pool.choose(rng).unwrap().clone();
        let spaces = hom_all(alg, &x, &y);
        let next = if spaces.is_empty() || rng.gen_bool(0.2) {
            let v = rng.gen_range(0..n);
            let d = rng.gen_range(-1..=1);
            let s = ProjComplex::stalk(v, d);
            let id = gentle_core::complex::ChainMap::identity(alg, &s);
            let c = cone(alg, &id).unwrap();
            ProjComplex::direct_sum(&[&y, &c]).0
        } else {
            let space = spaces.choose(rng).unwrap();
            let mut m = space.basis[0].scale(f, 0);
            for b in &space.basis {
                m = m.add(f, &b.scale(f, rng.gen_range(0..f.prime())));
            }
            cone(alg, &m.unshift(f)).unwrap()
        };
        if !next.is_zero() && next.total_rank() <= 8 {
            pool.push(next);
        }
    }
    pool.pop().unwrap()
}

/// Indecomposables of linear `A_n` without relations, up to shift: the
/// stalks and the two-term complexes `P_v -p-> P_w` for each nonzero path.
pub fn linear_indecomposables(alg: &PathAlgebra) -> Vec<ProjComplex> {
    let n = alg.num_vertices();
    let mut out: Vec<ProjComplex> = (0..n).map(|v| ProjComplex::stalk(v, 0)).collect();
    for v in 0..n {
        for w in 0..n {
            if v == w {
                continue;
            }
            for &p in alg.between(v, w) {
                let c = ProjComplex::new(
                    alg,
                    0,
                    vec![vec![v], vec![w]],
                    vec![vec![vec![PathVector::basis(alg, p)]]],
                )
                .unwrap();
                out.push(c);
            }
        }
    }
    out
}

/// Number of full exceptional sequences up to shifts of the members,
/// counted over ordered tuples of indecomposables.
pub fn brute_force_sequence_count(alg: &PathAlgebra) -> usize {
    let ind = linear_indecomposables(alg);
    let n = alg.num_vertices();
    let vanish = |x: &ProjComplex, y: &ProjComplex| hom_dims(alg, x, y).iter().all(|&(_, d)| d == 0);
    let mut later_ok = vec![vec![false; ind.len()]; ind.len()];
    for (i, x) in ind.iter().enumerate() {
        for (j, y) in ind.iter().enumerate() {
            // y may come after x iff nothing maps from y back to x
            later_ok[i][j] = i != j && vanish(y, x);
        }
    }
    fn count(later_ok: &[Vec<bool>], chosen: &mut Vec<usize>, n: usize) -> usize {
        if chosen.len() == n {
            return 1;
        }
        let mut total = 0;
        for j in 0..later_ok.len() {
            if chosen.iter().all(|&i| later_ok[i][j]) {
                chosen.push(j);
                total += count(later_ok, chosen, n);
                chosen.pop();
            }
        }
        total
    }
    count(&later_ok, &mut Vec::new(), n)
}

/// For every 2-subset that is a valid exceptional collection, whether both
/// cutting orders give the same presentation. Invalid subsets are skipped.
pub fn cut_order_results(q: &GentleQuiver) -> Vec<(String, String, bool)> {
    let ids: Vec<String> = q.vertices().to_vec();
    let mut out = Vec::new();
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            let (u, v) = (ids[i].as_str(), ids[j].as_str());
            let (Ok(a), Ok(b)) = (cut_collection(q, &[u, v]), cut_collection(q, &[v, u])) else {
                continue;
            };
            out.push((u.to_string(), v.to_string(), presentation(&a) == presentation(&b)));
        }
    }
    out
}
