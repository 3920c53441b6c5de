//! The path algebra `kQ/I` of a finite-dimensional gentle quiver.
//!
//! The basis is the set of allowed paths (no relation as a subword), with
//! arrows composed left to right: `ab` is `a` followed by `b`. Products of
//! basis paths are basis paths or zero, so multiplication is a lookup table.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::quiver::GentleQuiver;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    /// Empty for the trivial path at `source`.
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Enumerates every allowed path of a finite-dimensional quiver, in the order
/// (source, target, length, arrow ids).
pub fn enumerate_paths(q: &GentleQuiver) -> Result<Vec<Path>> {
    if !q.is_finite_dimensional() {
        return Err(Error::InfiniteDimensional);
    }
    let mut all: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
    let mut frontier: Vec<Path> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| Path {
            source: a.source,
            target: a.target,
            arrows: vec![i],
        })
        .collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let last = *p.arrows.last().unwrap();
            for b in q.allowed_successors(last) {
                let mut arrows = p.arrows.clone();
                arrows.push(b);
                next.push(Path {
                    source: p.source,
                    target: q.arrows()[b].target,
                    arrows,
                });
            }
        }
        all.append(&mut frontier);
        frontier = next;
    }
    let key = |p: &Path| {
        (
            p.source,
            p.target,
            p.len(),
            p.arrows
                .iter()
                .map(|&a| q.arrows()[a].id.clone())
                .collect::<Vec<_>>(),
        )
    };
    all.sort_by_cached_key(key);
    Ok(all)
}

/// Allowed paths from `v` to `w`, by length then arrow ids; includes the
/// trivial path when `v == w`.
pub fn allowed_paths(q: &GentleQuiver, v: &str, w: &str) -> Result<Vec<Path>> {
    let v = q.require_vertex(v)?;
    let w = q.require_vertex(w)?;
    Ok(enumerate_paths(q)?
        .into_iter()
        .filter(|p| p.source == v && p.target == w)
        .collect())
}

#[derive(Clone, Debug)]
pub struct PathAlgebra {
    quiver: GentleQuiver,
    field: Field,
    paths: Vec<Path>,
    lookup: HashMap<Path, usize>,
    between: Vec<Vec<Vec<usize>>>,
    ending_at: Vec<Vec<usize>>,
    starting_at: Vec<Vec<usize>>,
    // append[p][a] = p·a when nonzero
    append: Vec<Vec<Option<usize>>>,
}

impl PathAlgebra {
    /// Requires a gentle, finite-dimensional quiver.
    pub fn new(quiver: GentleQuiver, field: Field) -> Result<Self> {
        let report = quiver.validate();
        if !report.finite_dimensional {
            return Err(Error::InfiniteDimensional);
        }
        if !report.is_gentle() {
            return Err(Error::NotGentle(report.violations.join("; ")));
        }
        let paths = enumerate_paths(&quiver)?;
        let n = quiver.num_vertices();
        let lookup: HashMap<Path, usize> =
            paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut between = vec![vec![Vec::new(); n]; n];
        let mut ending_at = vec![Vec::new(); n];
        let mut starting_at = vec![Vec::new(); n];
        for (i, p) in paths.iter().enumerate() {
            between[p.source][p.target].push(i);
            ending_at[p.target].push(i);
            starting_at[p.source].push(i);
        }
        let mut append = vec![vec![None; quiver.num_arrows()]; paths.len()];
        for (i, p) in paths.iter().enumerate() {
            for b in quiver.out_arrows(p.target) {
                if let Some(&last) = p.arrows.last() {
                    if quiver.is_relation(last, b) {
                        continue;
                    }
                }
                let mut arrows = p.arrows.clone();
                arrows.push(b);
                let ext = Path {
                    source: p.source,
                    target: quiver.arrows()[b].target,
                    arrows,
                };
                append[i][b] = Some(lookup[&ext]);
            }
        }
        Ok(PathAlgebra {
            quiver,
            field,
            paths,
            lookup,
            between,
            ending_at,
            starting_at,
            append,
        })
    }

    pub fn quiver(&self) -> &GentleQuiver {
        &self.quiver
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    /// Index of the trivial path at `v`.
    pub fn trivial(&self, v: usize) -> usize {
        self.lookup[&Path::trivial(v)]
    }

    /// Basis of `e_v A e_w`: allowed paths from `v` to `w`.
    pub fn between(&self, v: usize, w: usize) -> &[usize] {
        &self.between[v][w]
    }

    pub fn ending_at(&self, v: usize) -> &[usize] {
        &self.ending_at[v]
    }

    pub fn starting_at(&self, v: usize) -> &[usize] {
        &self.starting_at[v]
    }

    /// `p·a`, or `None` if zero or not composable.
    pub fn append_arrow(&self, p: usize, a: usize) -> Option<usize> {
        self.append[p][a]
    }

    /// Product of two basis paths; `None` when zero or not composable.
    pub fn mul(&self, p: usize, q: usize) -> Option<usize> {
        if self.paths[p].target != self.paths[q].source {
            return None;
        }
        let mut cur = p;
        for &a in &self.paths[q].arrows {
            cur = self.append[cur][a]?;
        }
        Some(cur)
    }

    /// If `q = p·y` for an allowed path `y`, returns `y`.
    pub fn strip_prefix(&self, p: usize, q: usize) -> Option<usize> {
        let (pp, qq) = (&self.paths[p], &self.paths[q]);
        if pp.source != qq.source || !qq.arrows.starts_with(&pp.arrows) {
            return None;
        }
        let rest = Path {
            source: pp.target,
            target: qq.target,
            arrows: qq.arrows[pp.arrows.len()..].to_vec(),
        };
        self.index_of(&rest)
    }

    /// If `q = x·p` for an allowed path `x`, returns `x`.
    pub fn strip_suffix(&self, p: usize, q: usize) -> Option<usize> {
        let (pp, qq) = (&self.paths[p], &self.paths[q]);
        if pp.target != qq.target || !qq.arrows.ends_with(&pp.arrows) {
            return None;
        }
        let rest = Path {
            source: qq.source,
            target: pp.source,
            arrows: qq.arrows[..qq.arrows.len() - pp.arrows.len()].to_vec(),
        };
        self.index_of(&rest)
    }

    pub fn path_label(&self, i: usize) -> String {
        let p = &self.paths[i];
        if p.is_trivial() {
            format!("e_{}", self.quiver.vertex_id(p.source))
        } else {
            self.quiver.arrow_names(&p.arrows)
        }
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        self.quiver.vertex_id(v)
    }
}

/// A linear combination of parallel allowed paths. Terms are sorted by path
/// index with nonzero coefficients; the zero vector keeps its typing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathVector {
    pub source: usize,
    pub target: usize,
    terms: Vec<(usize, u64)>,
}

impl PathVector {
    pub fn zero(source: usize, target: usize) -> Self {
        PathVector {
            source,
            target,
            terms: Vec::new(),
        }
    }

    pub fn basis(alg: &PathAlgebra, p: usize) -> Self {
        Self::scaled_path(alg, p, 1)
    }

    pub fn scaled_path(alg: &PathAlgebra, p: usize, c: u64) -> Self {
        let path = alg.path(p);
        let mut v = Self::zero(path.source, path.target);
        if c != 0 {
            v.terms.push((p, c));
        }
        v
    }

    pub fn identity(alg: &PathAlgebra, v: usize) -> Self {
        Self::basis(alg, alg.trivial(v))
    }

    /// Builds from unsorted terms, merging duplicates and dropping zeros.
    pub fn from_terms(
        alg: &PathAlgebra,
        source: usize,
        target: usize,
        terms: impl IntoIterator<Item = (usize, u64)>,
    ) -> Result<Self> {
        let f = alg.field();
        let mut acc: Vec<(usize, u64)> = Vec::new();
        for (p, c) in terms {
            let path = alg.path(p);
            if path.source != source || path.target != target {
                return Err(Error::Composability(
                    alg.path_label(p),
                    format!("{}->{}", alg.vertex_id(source), alg.vertex_id(target)),
                ));
            }
            acc.push((p, c % f.prime()));
        }
        acc.sort_unstable_by_key(|t| t.0);
        let mut terms: Vec<(usize, u64)> = Vec::with_capacity(acc.len());
        for (p, c) in acc {
            match terms.last_mut() {
                Some((q, d)) if *q == p => *d = f.add(*d, c),
                _ => terms.push((p, c)),
            }
        }
        terms.retain(|t| t.1 != 0);
        Ok(PathVector {
            source,
            target,
            terms,
        })
    }

    pub fn terms(&self) -> &[(usize, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: usize) -> u64 {
        self.terms
            .binary_search_by_key(&p, |t| t.0)
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Coefficient of the trivial path (zero unless source == target).
    pub fn unit_coefficient(&self, alg: &PathAlgebra) -> u64 {
        if self.source != self.target {
            return 0;
        }
        self.coefficient(alg.trivial(self.source))
    }

    pub fn add(&self, f: &Field, other: &PathVector) -> PathVector {
        debug_assert_eq!((self.source, self.target), (other.source, other.target));
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = j == other.terms.len()
                || (i < self.terms.len() && self.terms[i].0 < other.terms[j].0);
            let take_right = i == self.terms.len()
                || (j < other.terms.len() && other.terms[j].0 < self.terms[i].0);
            if take_left {
                out.push(self.terms[i]);
                i += 1;
            } else if take_right {
                out.push(other.terms[j]);
                j += 1;
            } else {
                let c = f.add(self.terms[i].1, other.terms[j].1);
                if c != 0 {
                    out.push((self.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        PathVector {
            source: self.source,
            target: self.target,
            terms: out,
        }
    }

    pub fn scale(&self, f: &Field, c: u64) -> PathVector {
        if c == 0 {
            return PathVector::zero(self.source, self.target);
        }
        PathVector {
            source: self.source,
            target: self.target,
            terms: self.terms.iter().map(|&(p, d)| (p, f.mul(c, d))).collect(),
        }
    }

    pub fn neg(&self, f: &Field) -> PathVector {
        self.scale(f, f.neg(1))
    }

    pub fn sub(&self, f: &Field, other: &PathVector) -> PathVector {
        self.add(f, &other.neg(f))
    }

    /// Bilinear concatenation `self · other`; relation subwords vanish.
    pub fn compose(&self, alg: &PathAlgebra, other: &PathVector) -> Result<PathVector> {
        if self.target != other.source {
            return Err(Error::Composability(
                alg.vertex_id(self.target).to_string(),
                alg.vertex_id(other.source).to_string(),
            ));
        }
        Ok(self.compose_unchecked(alg, other))
    }

    pub(crate) fn compose_unchecked(&self, alg: &PathAlgebra, other: &PathVector) -> PathVector {
        let f = alg.field();
        let mut terms = Vec::new();
        for &(p, c) in &self.terms {
            for &(q, d) in &other.terms {
                if let Some(r) = alg.mul(p, q) {
                    terms.push((r, f.mul(c, d)));
                }
            }
        }
        PathVector::from_terms(alg, self.source, other.target, terms)
            .expect("products of parallel paths stay parallel")
    }

    pub fn label(&self, alg: &PathAlgebra) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = alg.field();
        self.terms
            .iter()
            .map(|&(p, c)| {
                let c = f.to_i64(c);
                if c == 1 {
                    alg.path_label(p)
                } else {
                    format!("{c}*{}", alg.path_label(p))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
