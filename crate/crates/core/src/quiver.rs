//! Quivers with length-two monomial relations and the `.gq` text format.
//!
//! ```text
//! # comments run to end of line
//! vertex <id>
//! arrow <id> <source> <target>
//! rel <arrow> <arrow>
//! ```
//!
//! A relation `rel a b` means the path `ab` (first `a`, then `b`) is zero.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GentleQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<(usize, usize)>,
}

/// Outcome of [`GentleQuiver::validate`]. Violations are data, not errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GentleReport {
    pub violations: Vec<String>,
    /// No oriented cycle whose consecutive arrows all compose to nonzero paths.
    pub finite_dimensional: bool,
    /// No oriented cycle whose consecutive arrows all lie in the relations.
    pub finite_global_dimension: bool,
}

impl GentleReport {
    pub fn is_gentle(&self) -> bool {
        self.violations.is_empty()
    }
}

impl GentleQuiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: &str) -> Result<usize> {
        if self.vertex_index(id).is_some() {
            return Err(Error::DuplicateId {
                line: 0,
                id: id.to_string(),
            });
        }
        self.vertices.push(id.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, id: &str, source: &str, target: &str) -> Result<usize> {
        let s = self
            .vertex_index(source)
            .ok_or_else(|| Error::NoSuchVertex(source.to_string()))?;
        let t = self
            .vertex_index(target)
            .ok_or_else(|| Error::NoSuchVertex(target.to_string()))?;
        self.push_arrow(id, s, t)
    }

    pub(crate) fn push_arrow(&mut self, id: &str, source: usize, target: usize) -> Result<usize> {
        if self.arrow_index(id).is_some() {
            return Err(Error::DuplicateId {
                line: 0,
                id: id.to_string(),
            });
        }
        self.arrows.push(Arrow {
            id: id.to_string(),
            source,
            target,
        });
        Ok(self.arrows.len() - 1)
    }

    pub fn add_relation(&mut self, first: &str, second: &str) -> Result<()> {
        let a = self.arrow_index(first).ok_or_else(|| Error::UnknownArrow {
            line: 0,
            id: first.to_string(),
        })?;
        let b = self.arrow_index(second).ok_or_else(|| Error::UnknownArrow {
            line: 0,
            id: second.to_string(),
        })?;
        self.push_relation(a, b)
    }

    pub(crate) fn push_relation(&mut self, a: usize, b: usize) -> Result<()> {
        if self.arrows[a].target != self.arrows[b].source {
            return Err(Error::NotComposable {
                line: 0,
                first: self.arrows[a].id.clone(),
                second: self.arrows[b].id.clone(),
            });
        }
        if !self.relations.contains(&(a, b)) {
            self.relations.push((a, b));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[(usize, usize)] {
        &self.relations
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn require_vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index(id)
            .ok_or_else(|| Error::NoSuchVertex(id.to_string()))
    }

    pub fn is_relation(&self, a: usize, b: usize) -> bool {
        self.relations.contains(&(a, b))
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Arrows `b` with `ab` a path and `ab` not a relation.
    pub fn allowed_successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        let t = self.arrows[a].target;
        self.out_arrows(t).filter(move |&b| !self.is_relation(a, b))
    }

    pub fn allowed_predecessors(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        let s = self.arrows[b].source;
        self.in_arrows(s).filter(move |&a| !self.is_relation(a, b))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut q = GentleQuiver::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            let arity = |k: usize| -> Result<()> {
                if tokens.len() != k + 1 {
                    return Err(Error::Syntax {
                        line,
                        msg: format!("`{}` expects {} argument(s)", tokens[0], k),
                    });
                }
                Ok(())
            };
            match tokens[0] {
                "vertex" => {
                    arity(1)?;
                    if q.vertex_index(tokens[1]).is_some() {
                        return Err(Error::DuplicateId {
                            line,
                            id: tokens[1].to_string(),
                        });
                    }
                    q.vertices.push(tokens[1].to_string());
                }
                "arrow" => {
                    arity(3)?;
                    if q.arrow_index(tokens[1]).is_some() {
                        return Err(Error::DuplicateId {
                            line,
                            id: tokens[1].to_string(),
                        });
                    }
                    let lookup = |id: &str| {
                        q.vertex_index(id).ok_or_else(|| Error::UnknownVertex {
                            line,
                            id: id.to_string(),
                        })
                    };
                    let s = lookup(tokens[2])?;
                    let t = lookup(tokens[3])?;
                    q.arrows.push(Arrow {
                        id: tokens[1].to_string(),
                        source: s,
                        target: t,
                    });
                }
                "rel" => {
                    arity(2)?;
                    let lookup = |id: &str| {
                        q.arrow_index(id).ok_or_else(|| Error::UnknownArrow {
                            line,
                            id: id.to_string(),
                        })
                    };
                    let a = lookup(tokens[1])?;
                    let b = lookup(tokens[2])?;
                    if q.arrows[a].target != q.arrows[b].source {
                        return Err(Error::NotComposable {
                            line,
                            first: tokens[1].to_string(),
                            second: tokens[2].to_string(),
                        });
                    }
                    if q.relations.contains(&(a, b)) {
                        return Err(Error::DuplicateId {
                            line,
                            id: format!("rel {} {}", tokens[1], tokens[2]),
                        });
                    }
                    q.relations.push((a, b));
                }
                other => {
                    return Err(Error::Syntax {
                        line,
                        msg: format!("unknown keyword `{other}`"),
                    })
                }
            }
        }
        Ok(q)
    }

    pub fn to_gq(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            writeln!(s, "vertex {v}").unwrap();
        }
        for a in &self.arrows {
            writeln!(
                s,
                "arrow {} {} {}",
                a.id, self.vertices[a.source], self.vertices[a.target]
            )
            .unwrap();
        }
        for &(a, b) in &self.relations {
            writeln!(s, "rel {} {}", self.arrows[a].id, self.arrows[b].id).unwrap();
        }
        s
    }

    /// Checks every gentle condition and both cycle conditions.
    pub fn validate(&self) -> GentleReport {
        let mut violations = Vec::new();
        for (v, id) in self.vertices.iter().enumerate() {
            let outs = self.out_arrows(v).count();
            let ins = self.in_arrows(v).count();
            if outs > 2 {
                violations.push(format!("vertex {id} is the source of {outs} arrows"));
            }
            if ins > 2 {
                violations.push(format!("vertex {id} is the target of {ins} arrows"));
            }
        }
        for (a, arrow) in self.arrows.iter().enumerate() {
            let succ: Vec<usize> = self.out_arrows(arrow.target).collect();
            let pred: Vec<usize> = self.in_arrows(arrow.source).collect();
            let allowed_succ = succ.iter().filter(|&&b| !self.is_relation(a, b)).count();
            let rel_succ = succ.len() - allowed_succ;
            let allowed_pred = pred.iter().filter(|&&c| !self.is_relation(c, a)).count();
            let rel_pred = pred.len() - allowed_pred;
            let id = &arrow.id;
            if allowed_succ > 1 {
                violations.push(format!("arrow {id} has {allowed_succ} allowed successors"));
            }
            if rel_succ > 1 {
                violations.push(format!("arrow {id} has {rel_succ} relation successors"));
            }
            if allowed_pred > 1 {
                violations.push(format!("arrow {id} has {allowed_pred} allowed predecessors"));
            }
            if rel_pred > 1 {
                violations.push(format!("arrow {id} has {rel_pred} relation predecessors"));
            }
        }
        let allowed_cycle = self.arrow_cycle(|a, b| !self.is_relation(a, b));
        if let Some(cycle) = &allowed_cycle {
            violations.push(format!("all-allowed cycle {}", self.arrow_names(cycle)));
        }
        let relation_cycle = self.arrow_cycle(|a, b| self.is_relation(a, b));
        GentleReport {
            violations,
            finite_dimensional: allowed_cycle.is_none(),
            finite_global_dimension: relation_cycle.is_none(),
        }
    }

    /// True iff some oriented cycle has every cyclically consecutive pair in
    /// the relations (infinite global dimension).
    pub fn has_full_relation_cycle(&self) -> bool {
        self.arrow_cycle(|a, b| self.is_relation(a, b)).is_some()
    }

    pub fn is_finite_dimensional(&self) -> bool {
        self.arrow_cycle(|a, b| !self.is_relation(a, b)).is_none()
    }

    /// Returns a cycle in the graph on arrows with an edge `a -> b` whenever
    /// `ab` is a path and `link(a, b)` holds.
    fn arrow_cycle(&self, link: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
        let n = self.arrows.len();
        let next: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                self.out_arrows(self.arrows[a].target)
                    .filter(|&b| link(a, b))
                    .collect()
            })
            .collect();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        let mut stack: Vec<usize> = Vec::new();
        fn dfs(
            a: usize,
            next: &[Vec<usize>],
            state: &mut [u8],
            stack: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            state[a] = 1;
            stack.push(a);
            for &b in &next[a] {
                if state[b] == 1 {
                    let start = stack.iter().position(|&x| x == b).unwrap();
                    return Some(stack[start..].to_vec());
                }
                if state[b] == 0 {
                    if let Some(c) = dfs(b, next, state, stack) {
                        return Some(c);
                    }
                }
            }
            stack.pop();
            state[a] = 2;
            None
        }
        for a in 0..n {
            if state[a] == 0 {
                if let Some(c) = dfs(a, &next, &mut state, &mut stack) {
                    return Some(c);
                }
            }
        }
        None
    }

    pub(crate) fn arrow_names(&self, arrows: &[usize]) -> String {
        arrows
            .iter()
            .map(|&a| self.arrows[a].id.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Arrows reversed; relation `(a, b)` becomes `(b, a)`.
    pub fn opposite(&self) -> GentleQuiver {
        GentleQuiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    id: a.id.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
            relations: self.relations.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    /// True iff the quiver has an oriented cycle (loops included).
    pub fn has_oriented_cycle(&self) -> bool {
        self.topological_order().is_none()
    }

    /// Kahn order on vertices, `None` when an oriented cycle exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for a in self.out_arrows(v).collect::<Vec<_>>() {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Connected components of the underlying graph, each as sorted vertex
    /// indices, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for a in &self.arrows {
                    for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = id;
                            members.push(y);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Full subquiver on `keep` (in the given order), with the arrows and
    /// relations among them.
    pub fn full_subquiver(&self, keep: &[usize]) -> GentleQuiver {
        let set: HashSet<usize> = keep.iter().copied().collect();
        let mut q = GentleQuiver::new();
        let mut new_index = vec![usize::MAX; self.vertices.len()];
        for &v in keep {
            new_index[v] = q.vertices.len();
            q.vertices.push(self.vertices[v].clone());
        }
        let mut arrow_map = vec![usize::MAX; self.arrows.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            if set.contains(&a.source) && set.contains(&a.target) {
                arrow_map[i] = q.arrows.len();
                q.arrows.push(Arrow {
                    id: a.id.clone(),
                    source: new_index[a.source],
                    target: new_index[a.target],
                });
            }
        }
        for &(a, b) in &self.relations {
            if arrow_map[a] != usize::MAX && arrow_map[b] != usize::MAX {
                q.relations.push((arrow_map[a], arrow_map[b]));
            }
        }
        q
    }
}
