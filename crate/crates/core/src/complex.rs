//! Bounded complexes of indecomposable projectives with path-valued
//! differentials.
//!
//! Degrees are cohomological. The differential at degree `d` is a matrix
//! whose entry `(i, j)` is a combination of paths from the vertex of the
//! `i`-th summand in degree `d` to the vertex of the `j`-th summand in
//! degree `d + 1`; maps compose left to right, so `d∘d = 0` reads
//! `D_d · D_{d+1} = 0` as a product of path matrices.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::algebra::{PathAlgebra, PathVector};
use crate::error::{Error, Result};
use crate::linalg::Field;

pub type PathMatrix = Vec<Vec<PathVector>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjComplex {
    lo: i32,
    terms: Vec<Vec<usize>>,
    // one matrix per degree; the last one has no columns
    diffs: Vec<PathMatrix>,
}

pub(crate) fn zero_matrix(rows: &[usize], cols: &[usize]) -> PathMatrix {
    rows.iter()
        .map(|&v| cols.iter().map(|&w| PathVector::zero(v, w)).collect())
        .collect()
}

pub(crate) fn matrix_product(alg: &PathAlgebra, a: &PathMatrix, b: &PathMatrix, rows: &[usize], cols: &[usize]) -> PathMatrix {
    let f = alg.field();
    let mut out = zero_matrix(rows, cols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x.compose_unchecked(alg, y);
                if !p.is_zero() {
                    out[i][j] = out[i][j].add(f, &p);
                }
            }
        }
    }
    out
}

fn matrix_is_zero(m: &PathMatrix) -> bool {
    m.iter().all(|r| r.iter().all(PathVector::is_zero))
}

impl ProjComplex {
    pub fn zero() -> Self {
        ProjComplex {
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `P_v` concentrated in degree `d`.
    pub fn stalk(v: usize, d: i32) -> Self {
        ProjComplex {
            lo: d,
            terms: vec![vec![v]],
            diffs: vec![vec![vec![]]],
        }
    }

    /// Builds a complex from consecutive terms starting at degree `lo` and the
    /// differentials between them (`terms.len() - 1` matrices). Checks typing
    /// and `d∘d = 0`, then trims empty end degrees.
    pub fn new(alg: &PathAlgebra, lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<PathMatrix>) -> Result<Self> {
        if terms.is_empty() {
            return Ok(Self::zero());
        }
        if diffs.len() + 1 != terms.len() {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        let n = alg.num_vertices();
        if let Some(&v) = terms.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::InvalidComplex(format!("vertex index {v} out of range")));
        }
        let mut full = diffs;
        full.push(vec![vec![]; terms.last().unwrap().len()]);
        let c = ProjComplex {
            lo,
            terms,
            diffs: full,
        };
        for k in 0..c.terms.len() {
            let d = &c.diffs[k];
            let cols = c.terms.get(k + 1).map_or(0, Vec::len);
            if d.len() != c.terms[k].len() || d.iter().any(|r| r.len() != cols) {
                return Err(Error::InvalidComplex(format!(
                    "differential at degree {} has the wrong shape",
                    c.lo + k as i32
                )));
            }
            for (i, row) in d.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    if e.source != c.terms[k][i] || e.target != c.terms[k + 1][j] {
                        return Err(Error::InvalidComplex(format!(
                            "entry ({i},{j}) at degree {} is not a path {} -> {}",
                            c.lo + k as i32,
                            alg.vertex_id(c.terms[k][i]),
                            alg.vertex_id(c.terms[k + 1][j])
                        )));
                    }
                }
            }
        }
        c.check_dd(alg)?;
        Ok(c.trimmed())
    }

    pub(crate) fn from_raw(lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<PathMatrix>) -> Self {
        debug_assert_eq!(terms.len(), diffs.len());
        ProjComplex { lo, terms, diffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.terms.last().is_some_and(Vec::is_empty) {
            self.terms.pop();
            self.diffs.pop();
            if let Some(d) = self.diffs.last_mut() {
                for row in d.iter_mut() {
                    row.clear();
                }
            }
        }
        let lead = self.terms.iter().take_while(|t| t.is_empty()).count();
        if lead == self.terms.len() {
            return Self::zero();
        }
        self.terms.drain(..lead);
        self.diffs.drain(..lead);
        self.lo += lead as i32;
        self
    }

    pub fn check_dd(&self, alg: &PathAlgebra) -> Result<()> {
        for k in 0..self.terms.len().saturating_sub(2) {
            let prod = matrix_product(
                alg,
                &self.diffs[k],
                &self.diffs[k + 1],
                &self.terms[k],
                &self.terms[k + 2],
            );
            if !matrix_is_zero(&prod) {
                return Err(Error::InvalidComplex(format!(
                    "d∘d ≠ 0 at degree {}",
                    self.lo + k as i32
                )));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree with a nonzero term.
    pub fn min_degree(&self) -> i32 {
        self.lo
    }

    pub fn max_degree(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        (0..self.terms.len() as i32).map(move |k| self.lo + k)
    }

    fn slot(&self, d: i32) -> Option<usize> {
        let k = d - self.lo;
        (k >= 0 && (k as usize) < self.terms.len()).then_some(k as usize)
    }

    /// Summand vertices in degree `d` (empty outside the support).
    pub fn term(&self, d: i32) -> &[usize] {
        self.slot(d).map_or(&[], |k| &self.terms[k])
    }

    /// Differential from degree `d` to `d + 1` (no rows outside the support).
    pub fn diff(&self, d: i32) -> &[Vec<PathVector>] {
        self.slot(d).map_or(&[], |k| &self.diffs[k])
    }

    pub fn total_rank(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// `X[s]`: degree `k` holds `X^{k+s}`, differential multiplied by `(-1)^s`.
    pub fn shift(&self, f: &Field, s: i32) -> ProjComplex {
        let mut out = self.clone();
        if self.is_zero() {
            return out;
        }
        out.lo -= s;
        if s % 2 != 0 {
            for d in out.diffs.iter_mut() {
                for row in d.iter_mut() {
                    for e in row.iter_mut() {
                        *e = e.neg(f);
                    }
                }
            }
        }
        out
    }

    /// Direct sum, summands of `parts[0]` first in every degree. Also returns
    /// the offset of each part's summands in each degree.
    pub fn direct_sum(parts: &[&ProjComplex]) -> (ProjComplex, SumLayout) {
        let nonzero: Vec<&&ProjComplex> = parts.iter().filter(|p| !p.is_zero()).collect();
        if nonzero.is_empty() {
            return (
                ProjComplex::zero(),
                SumLayout {
                    lo: 0,
                    offsets: vec![Vec::new(); parts.len()],
                },
            );
        }
        let lo = nonzero.iter().map(|p| p.min_degree()).min().unwrap();
        let hi = nonzero.iter().map(|p| p.max_degree()).max().unwrap();
        let len = (hi - lo + 1) as usize;
        let mut terms = vec![Vec::new(); len];
        let mut offsets = vec![vec![0usize; len]; parts.len()];
        for (pi, p) in parts.iter().enumerate() {
            for k in 0..len {
                offsets[pi][k] = terms[k].len();
                terms[k].extend_from_slice(p.term(lo + k as i32));
            }
        }
        let mut diffs: Vec<PathMatrix> = (0..len)
            .map(|k| {
                let next: &[usize] = terms.get(k + 1).map_or(&[], |t| t.as_slice());
                zero_matrix(&terms[k], next)
            })
            .collect();
        for (pi, p) in parts.iter().enumerate() {
            for k in 0..len.saturating_sub(1) {
                let d = lo + k as i32;
                for (i, row) in p.diff(d).iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        diffs[k][offsets[pi][k] + i][offsets[pi][k + 1] + j] = e.clone();
                    }
                }
            }
        }
        let out = ProjComplex { lo, terms, diffs };
        (out, SumLayout { lo, offsets })
    }

    /// Class in the Grothendieck group: `Σ (-1)^d [P_v]` as a vector of
    /// integers indexed by vertex.
    pub fn k0_class(&self, num_vertices: usize) -> Vec<i64> {
        let mut out = vec![0i64; num_vertices];
        for d in self.degrees() {
            let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
            for &v in self.term(d) {
                out[v] += sign;
            }
        }
        out
    }

    /// Per-degree sorted vertex multisets.
    pub fn summand_profile(&self) -> Vec<(i32, Vec<usize>)> {
        self.degrees()
            .map(|d| {
                let mut t = self.term(d).to_vec();
                t.sort_unstable();
                (d, t)
            })
            .collect()
    }

    pub fn to_json(&self, alg: &PathAlgebra) -> Value {
        let f = alg.field();
        let mut terms = Map::new();
        let mut diff = Map::new();
        for d in self.degrees() {
            terms.insert(
                d.to_string(),
                Value::Array(
                    self.term(d)
                        .iter()
                        .map(|&v| Value::String(alg.vertex_id(v).to_string()))
                        .collect(),
                ),
            );
            if !self.term(d + 1).is_empty() {
                let rows: Vec<Value> = self
                    .diff(d)
                    .iter()
                    .map(|row| {
                        Value::Array(
                            row.iter()
                                .map(|e| {
                                    Value::Array(
                                        e.terms()
                                            .iter()
                                            .map(|&(p, c)| json!([path_json(alg, p), f.to_i64(c)]))
                                            .collect(),
                                    )
                                })
                                .collect(),
                        )
                    })
                    .collect();
                diff.insert(d.to_string(), Value::Array(rows));
            }
        }
        json!({ "terms": terms, "diff": diff })
    }

    /// Parses the JSON form written by [`ProjComplex::to_json`]. Accepts a
    /// bare `[path, coef]` pair as an entry and a bare arrow id as a path.
    pub fn from_json(alg: &PathAlgebra, v: &Value) -> Result<ProjComplex> {
        let bad = |m: &str| Error::Json(m.to_string());
        let terms_obj = v
            .get("terms")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing object `terms`"))?;
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (k, list) in terms_obj {
            let d: i32 = k.parse().map_err(|_| bad(&format!("degree `{k}` is not an integer")))?;
            let list = list
                .as_array()
                .ok_or_else(|| bad(&format!("terms at degree {d} must be a list")))?;
            let mut vs = Vec::new();
            for id in list {
                let id = id.as_str().ok_or_else(|| bad("vertex ids must be strings"))?;
                vs.push(alg.quiver().require_vertex(id)?);
            }
            by_degree.insert(d, vs);
        }
        if by_degree.values().all(Vec::is_empty) {
            return Ok(ProjComplex::zero());
        }
        let lo = *by_degree.keys().next().unwrap();
        let hi = *by_degree.keys().next_back().unwrap();
        let terms: Vec<Vec<usize>> = (lo..=hi)
            .map(|d| by_degree.get(&d).cloned().unwrap_or_default())
            .collect();
        let mut diffs: Vec<PathMatrix> = (0..terms.len() - 1)
            .map(|k| zero_matrix(&terms[k], &terms[k + 1]))
            .collect();
        if let Some(diff_obj) = v.get("diff") {
            let diff_obj = diff_obj.as_object().ok_or_else(|| bad("`diff` must be an object"))?;
            for (k, rows) in diff_obj {
                let d: i32 = k.parse().map_err(|_| bad(&format!("degree `{k}` is not an integer")))?;
                if d < lo || d >= hi {
                    return Err(bad(&format!("differential at degree {d} is outside the terms")));
                }
                let slot = (d - lo) as usize;
                let rows = rows.as_array().ok_or_else(|| bad("differential must be a matrix"))?;
                if rows.len() != terms[slot].len() {
                    return Err(bad(&format!("differential at degree {d} has the wrong row count")));
                }
                for (i, row) in rows.iter().enumerate() {
                    let row = row.as_array().ok_or_else(|| bad("matrix rows must be lists"))?;
                    if row.len() != terms[slot + 1].len() {
                        return Err(bad(&format!("differential at degree {d} has the wrong column count")));
                    }
                    for (j, entry) in row.iter().enumerate() {
                        let (s, t) = (terms[slot][i], terms[slot + 1][j]);
                        diffs[slot][i][j] = parse_entry(alg, entry, s, t)?;
                    }
                }
            }
        }
        ProjComplex::new(alg, lo, terms, diffs)
    }
}

fn path_json(alg: &PathAlgebra, p: usize) -> Value {
    let path = alg.path(p);
    if path.is_trivial() {
        Value::String(format!("e_{}", alg.vertex_id(path.source)))
    } else {
        Value::Array(
            path.arrows
                .iter()
                .map(|&a| Value::String(alg.quiver().arrows()[a].id.clone()))
                .collect(),
        )
    }
}

fn parse_path(alg: &PathAlgebra, v: &Value, source: usize) -> Result<Option<usize>> {
    let q = alg.quiver();
    let arrows: Vec<usize> = match v {
        Value::String(s) => {
            if let Some(vid) = s.strip_prefix("e_") {
                if q.vertex_index(vid).is_some() && q.arrow_index(s).is_none() {
                    let vi = q.require_vertex(vid)?;
                    return Ok(Some(alg.trivial(vi)));
                }
            }
            vec![q
                .arrow_index(s)
                .ok_or_else(|| Error::Json(format!("unknown arrow `{s}`")))?]
        }
        Value::Array(ids) => ids
            .iter()
            .map(|x| {
                let s = x.as_str().ok_or_else(|| Error::Json("arrow ids must be strings".into()))?;
                q.arrow_index(s)
                    .ok_or_else(|| Error::Json(format!("unknown arrow `{s}`")))
            })
            .collect::<Result<_>>()?,
        _ => return Err(Error::Json("a path is a list of arrow ids or `e_<vertex>`".into())),
    };
    if arrows.is_empty() {
        return Ok(Some(alg.trivial(source)));
    }
    let mut cur = alg.trivial(q.arrows()[arrows[0]].source);
    for a in arrows {
        match alg.append_arrow(cur, a) {
            Some(n) => cur = n,
            None => {
                if q.arrows()[a].source != alg.path(cur).target {
                    return Err(Error::Json("path arrows are not composable".into()));
                }
                return Ok(None);
            }
        }
    }
    Ok(Some(cur))
}

fn parse_entry(alg: &PathAlgebra, v: &Value, source: usize, target: usize) -> Result<PathVector> {
    let f = alg.field();
    let list = v
        .as_array()
        .ok_or_else(|| Error::Json("an entry is a list of [path, coef] terms".into()))?;
    let single = list.len() == 2 && list[1].is_i64();
    let items: Vec<&Value> = if single { vec![v] } else { list.iter().collect() };
    let mut terms = Vec::new();
    for t in items {
        let pair = t
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Json("a term is [path, coef]".into()))?;
        let c = pair[1]
            .as_i64()
            .ok_or_else(|| Error::Json("coefficients are integers".into()))?;
        if let Some(p) = parse_path(alg, &pair[0], source)? {
            terms.push((p, f.from_i64(c)));
        }
    }
    PathVector::from_terms(alg, source, target, terms)
        .map_err(|_| Error::Json("entry path has the wrong endpoints".into()))
}

/// Where each part of a direct sum sits: `offsets[part][d - lo]` is the
/// index of the part's first summand in degree `d`.
#[derive(Clone, Debug)]
pub struct SumLayout {
    pub lo: i32,
    pub offsets: Vec<Vec<usize>>,
}

impl SumLayout {
    pub fn offset(&self, part: usize, d: i32) -> usize {
        let k = d - self.lo;
        if k < 0 {
            return 0;
        }
        self.offsets[part].get(k as usize).copied().unwrap_or(0)
    }
}

/// A degree-`n` morphism `X -> Y[n]`, stored as one block per degree `k` of
/// `X`, the block mapping `X^k` to `Y^{k+n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: ProjComplex,
    pub target: ProjComplex,
    pub degree: i32,
    blocks: BTreeMap<i32, PathMatrix>,
}

impl ChainMap {
    pub fn zero(source: &ProjComplex, target: &ProjComplex, degree: i32) -> ChainMap {
        let mut blocks = BTreeMap::new();
        for k in source.degrees() {
            let cols = target.term(k + degree);
            if !cols.is_empty() && !source.term(k).is_empty() {
                blocks.insert(k, zero_matrix(source.term(k), cols));
            }
        }
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            blocks,
        }
    }

    pub fn identity(alg: &PathAlgebra, x: &ProjComplex) -> ChainMap {
        let mut m = ChainMap::zero(x, x, 0);
        for (k, b) in m.blocks.iter_mut() {
            for (i, &v) in x.term(*k).iter().enumerate() {
                b[i][i] = PathVector::identity(alg, v);
            }
        }
        m
    }

    /// Block `X^k -> Y^{k+n}`; `None` when either side is empty.
    pub fn block(&self, k: i32) -> Option<&PathMatrix> {
        self.blocks.get(&k)
    }

    pub fn entry(&self, k: i32, i: usize, j: usize) -> PathVector {
        match self.blocks.get(&k) {
            Some(b) => b[i][j].clone(),
            None => PathVector::zero(self.source.term(k)[i], self.target.term(k + self.degree)[j]),
        }
    }

    pub fn set_entry(&mut self, k: i32, i: usize, j: usize, e: PathVector) {
        let b = self
            .blocks
            .get_mut(&k)
            .expect("entry inside the map's support");
        b[i][j] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(matrix_is_zero)
    }

    pub fn add(&self, f: &Field, other: &ChainMap) -> ChainMap {
        let mut out = self.clone();
        for (k, b) in out.blocks.iter_mut() {
            let o = &other.blocks[k];
            for (i, row) in b.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    *e = e.add(f, &o[i][j]);
                }
            }
        }
        out
    }

    pub fn scale(&self, f: &Field, c: u64) -> ChainMap {
        let mut out = self.clone();
        for b in out.blocks.values_mut() {
            for row in b.iter_mut() {
                for e in row.iter_mut() {
                    *e = e.scale(f, c);
                }
            }
        }
        out
    }

    /// `δ(F)` in the Hom complex: `D_X F - (-1)^n F D_Y`, a degree `n+1` map.
    pub fn differential(&self, alg: &PathAlgebra) -> ChainMap {
        let f = alg.field();
        let n = self.degree;
        let (x, y) = (&self.source, &self.target);
        let mut out = ChainMap::zero(x, y, n + 1);
        let sign = f.neg(f.sign(n));
        for (&k, b) in out.blocks.iter_mut() {
            let rows = x.term(k);
            let cols = y.term(k + n + 1);
            if let Some(next) = self.blocks.get(&(k + 1)) {
                let p = matrix_product(alg, &x.diff(k).to_vec(), next, rows, cols);
                add_matrix(f, b, &p, 1);
            }
            if let Some(here) = self.blocks.get(&k) {
                let p = matrix_product(alg, here, &y.diff(k + n).to_vec(), rows, cols);
                add_matrix(f, b, &p, sign);
            }
        }
        out
    }

    /// The same blocks read as a degree-0 map `X[-n] -> Y`.
    pub fn unshift(&self, f: &Field) -> ChainMap {
        let n = self.degree;
        ChainMap {
            source: self.source.shift(f, -n),
            target: self.target.clone(),
            degree: 0,
            blocks: self.blocks.iter().map(|(&k, b)| (k + n, b.clone())).collect(),
        }
    }

    pub fn is_closed(&self, alg: &PathAlgebra) -> bool {
        self.differential(alg).is_zero()
    }

    /// Composite `self` then `other` (left to right), of degree `n + m`.
    pub fn compose(&self, alg: &PathAlgebra, other: &ChainMap) -> Result<ChainMap> {
        if self.target != other.source {
            return Err(Error::Precondition("maps are not composable".into()));
        }
        let mut out = ChainMap::zero(&self.source, &other.target, self.degree + other.degree);
        let f = alg.field();
        for (&k, b) in out.blocks.iter_mut() {
            let mid = k + self.degree;
            if let (Some(l), Some(r)) = (self.blocks.get(&k), other.blocks.get(&mid)) {
                let p = matrix_product(
                    alg,
                    l,
                    r,
                    self.source.term(k),
                    other.target.term(mid + other.degree),
                );
                add_matrix(f, b, &p, 1);
            }
        }
        Ok(out)
    }
}

fn add_matrix(f: &Field, acc: &mut PathMatrix, m: &PathMatrix, c: u64) {
    for (i, row) in acc.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            if !m[i][j].is_zero() {
                *e = e.add(f, &m[i][j].scale(f, c));
            }
        }
    }
}

/// Mapping cone of a closed degree-0 map `F: X -> Y`: degree `k` holds
/// `Y^k ⊕ X^{k+1}`, with rows `(D_Y, 0)` for `Y^k` and `(F, -D_X)` for
/// `X^{k+1}`.
pub fn cone(alg: &PathAlgebra, map: &ChainMap) -> Result<ProjComplex> {
    if map.degree != 0 {
        return Err(Error::Precondition("cone needs a degree-0 map".into()));
    }
    if !map.is_closed(alg) {
        return Err(Error::NotClosed);
    }
    Ok(cone_unchecked(alg, map))
}

pub(crate) fn cone_unchecked(alg: &PathAlgebra, map: &ChainMap) -> ProjComplex {
    let f = alg.field();
    let (x, y) = (&map.source, &map.target);
    if x.is_zero() && y.is_zero() {
        return ProjComplex::zero();
    }
    let lo = match (x.is_zero(), y.is_zero()) {
        (true, _) => y.min_degree(),
        (_, true) => x.min_degree() - 1,
        _ => y.min_degree().min(x.min_degree() - 1),
    };
    let hi = match (x.is_zero(), y.is_zero()) {
        (true, _) => y.max_degree(),
        (_, true) => x.max_degree() - 1,
        _ => y.max_degree().max(x.max_degree() - 1),
    };
    let len = (hi - lo + 1) as usize;
    let terms: Vec<Vec<usize>> = (0..len)
        .map(|k| {
            let d = lo + k as i32;
            let mut t = y.term(d).to_vec();
            t.extend_from_slice(x.term(d + 1));
            t
        })
        .collect();
    let mut diffs = Vec::with_capacity(len);
    for k in 0..len {
        let d = lo + k as i32;
        let next: &[usize] = terms.get(k + 1).map_or(&[], |t| t.as_slice());
        let mut m = zero_matrix(&terms[k], next);
        if k + 1 < len {
            let ny = y.term(d).len();
            let ny1 = y.term(d + 1).len();
            for (i, row) in y.diff(d).iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    m[i][j] = e.clone();
                }
            }
            if let Some(b) = map.block(d + 1) {
                for (i, row) in b.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        m[ny + i][j] = e.clone();
                    }
                }
            }
            for (i, row) in x.diff(d + 1).iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    m[ny + i][ny1 + j] = e.neg(f);
                }
            }
        }
        diffs.push(m);
    }
    let out = ProjComplex::from_raw(lo, terms, diffs);
    debug_assert!(out.check_dd(alg).is_ok(), "cone of a non-closed map");
    out
}

/// Assembles `⊕_j X_j -> Y` from maps `X_j -> Y` given as degree-`n_j`
/// elements `X -> Y[n_j]`, where `X_j = X[-n_j]`.
pub(crate) fn evaluation_map(alg: &PathAlgebra, maps: &[ChainMap]) -> ChainMap {
    let f = alg.field();
    let x = &maps[0].source;
    let y = &maps[0].target;
    let shifted: Vec<ProjComplex> = maps.iter().map(|m| x.shift(f, -m.degree)).collect();
    let refs: Vec<&ProjComplex> = shifted.iter().collect();
    let (sum, layout) = ProjComplex::direct_sum(&refs);
    let mut out = ChainMap::zero(&sum, y, 0);
    for (j, m) in maps.iter().enumerate() {
        // X[-n]^k = X^{k-n}; its block is m's block at X-degree k - n
        for k in sum.degrees() {
            if let Some(b) = m.block(k - m.degree) {
                let off = layout.offset(j, k);
                for (i, row) in b.iter().enumerate() {
                    for (c, e) in row.iter().enumerate() {
                        out.set_entry(k, off + i, c, e.clone());
                    }
                }
            }
        }
    }
    out
}

/// Assembles `X -> ⊕_j Y[n_j]` from degree-`n_j` elements `X -> Y[n_j]`.
pub(crate) fn coevaluation_map(alg: &PathAlgebra, maps: &[ChainMap]) -> ChainMap {
    let f = alg.field();
    let x = &maps[0].source;
    let y = &maps[0].target;
    let shifted: Vec<ProjComplex> = maps.iter().map(|m| y.shift(f, m.degree)).collect();
    let refs: Vec<&ProjComplex> = shifted.iter().collect();
    let (sum, layout) = ProjComplex::direct_sum(&refs);
    let mut out = ChainMap::zero(x, &sum, 0);
    for (j, m) in maps.iter().enumerate() {
        for k in x.degrees() {
            if let Some(b) = m.block(k) {
                let off = layout.offset(j, k);
                for (i, row) in b.iter().enumerate() {
                    for (c, e) in row.iter().enumerate() {
                        out.set_entry(k, i, off + c, e.clone());
                    }
                }
            }
        }
    }
    out
}
