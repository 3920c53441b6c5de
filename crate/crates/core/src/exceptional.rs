//! Quiver-level combinatorics of exceptional dissections: acyclicity, linear
//! extensions, the existence criterion, cutting along arcs, completion and
//! the Koszul-dual presentation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::GentleQuiver;
use crate::ribbon::{
    classify_special, surface_invariants, RibbonGraph, Special, SurfaceInvariants,
};

fn require_gentle(q: &GentleQuiver) -> Result<()> {
    let report = q.validate();
    if report.is_gentle() {
        Ok(())
    } else {
        Err(Error::NotGentle(report.violations.join("; ")))
    }
}

fn lookup_all(q: &GentleQuiver, ids: &[&str]) -> Result<Vec<usize>> {
    ids.iter().map(|id| q.require_vertex(id)).collect()
}

/// A dissection is exceptional iff its quiver has no oriented cycle.
pub fn is_exceptional_dissection(q: &GentleQuiver) -> Result<bool> {
    require_gentle(q)?;
    if q.has_full_relation_cycle() {
        return Err(Error::Punctured);
    }
    Ok(!q.has_oriented_cycle())
}

/// Linear extensions of the reachability order, smallest vertex id first at
/// each choice point, at most `cap` of them.
pub fn linear_extensions(q: &GentleQuiver, cap: usize) -> Result<Vec<Vec<usize>>> {
    if q.has_oriented_cycle() {
        return Err(Error::NotAcyclic);
    }
    let n = q.num_vertices();
    let mut indeg = vec![0usize; n];
    for a in q.arrows() {
        indeg[a.target] += 1;
    }
    let mut by_id: Vec<usize> = (0..n).collect();
    by_id.sort_by(|&x, &y| q.vertex_id(x).cmp(q.vertex_id(y)));

    fn go(
        q: &GentleQuiver,
        by_id: &[usize],
        indeg: &mut [usize],
        used: &mut [bool],
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if prefix.len() == by_id.len() {
            out.push(prefix.clone());
            return;
        }
        for &v in by_id {
            if used[v] || indeg[v] != 0 {
                continue;
            }
            used[v] = true;
            prefix.push(v);
            for a in q.out_arrows(v) {
                indeg[q.arrows()[a].target] -= 1;
            }
            go(q, by_id, indeg, used, prefix, out, cap);
            for a in q.out_arrows(v) {
                indeg[q.arrows()[a].target] += 1;
            }
            prefix.pop();
            used[v] = false;
            if out.len() >= cap {
                return;
            }
        }
    }

    let mut out = Vec::new();
    if cap > 0 {
        go(
            q,
            &by_id,
            &mut indeg,
            &mut vec![false; n],
            &mut Vec::new(),
            &mut out,
            cap,
        );
    }
    Ok(out)
}

/// An acyclic quiver with a vertex order compatible with its arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedDissection {
    quiver: GentleQuiver,
    order: Vec<usize>,
}

impl OrderedDissection {
    pub fn new(quiver: GentleQuiver, order: Vec<usize>) -> Result<Self> {
        let n = quiver.num_vertices();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::Precondition("order is not a permutation".into()));
            }
            position[v] = i;
        }
        if order.len() != n {
            return Err(Error::Precondition("order is not a permutation".into()));
        }
        for a in quiver.arrows() {
            if position[a.source] >= position[a.target] {
                return Err(Error::Precondition(format!(
                    "arrow {} runs against the order",
                    a.id
                )));
            }
        }
        Ok(OrderedDissection { quiver, order })
    }

    pub fn quiver(&self) -> &GentleQuiver {
        &self.quiver
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Existence {
    pub exists: bool,
    pub reason: Option<String>,
}

/// Decides whether the perfect derived category admits a full exceptional
/// sequence: it does unless the surface is punctured or some component is
/// `T(g,1,1)`.
pub fn exists_full_exceptional(q: &GentleQuiver) -> Result<Existence> {
    require_gentle(q)?;
    if q.has_full_relation_cycle() {
        return Ok(Existence {
            exists: false,
            reason: Some("punctures".into()),
        });
    }
    for comp in q.components() {
        let sub = q.full_subquiver(&comp);
        let inv = surface_invariants(&sub)?;
        if inv.boundaries == 1 && inv.circ == 1 {
            return Ok(Existence {
                exists: false,
                reason: Some(format!("T({},1,1)", inv.genus)),
            });
        }
    }
    Ok(Existence {
        exists: true,
        reason: None,
    })
}

/// The quiver of a sub-collection of arcs: consecutive chosen ends in each
/// fan are joined by an arrow, skipping ends of unchosen arcs.
pub fn induced_collection_quiver(q: &GentleQuiver, subset: &[&str]) -> Result<GentleQuiver> {
    let chosen = lookup_all(q, subset)?;
    if chosen.is_empty() {
        return Err(Error::Precondition("empty subset".into()));
    }
    let rg = RibbonGraph::build(q)?;
    let keep: BTreeSet<usize> = chosen.iter().copied().collect();
    let mut out = GentleQuiver::new();
    let mut new_index = vec![usize::MAX; q.num_vertices()];
    for v in 0..q.num_vertices() {
        if keep.contains(&v) {
            new_index[v] = out.add_vertex(q.vertex_id(v))?;
        }
    }
    // original arrow linking each fan position to the next
    let mut link: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let ends = rg.end_assignment();
    for (i, a) in q.arrows().iter().enumerate() {
        let from = crate::ribbon::ArcEnd {
            arc: a.source,
            end: ends.source_end[i],
        };
        link.insert(rg.locate(from), i);
    }
    // (arrow in new quiver, source end, target end)
    let mut new_ends = Vec::new();
    let mut order: Vec<(usize, String, usize, usize, crate::ribbon::EndTag, crate::ribbon::EndTag)> =
        Vec::new();
    for (f, fan) in rg.fans().iter().enumerate() {
        let picked: Vec<usize> = (0..fan.ends.len())
            .filter(|&p| keep.contains(&fan.ends[p].arc))
            .collect();
        for w in picked.windows(2) {
            let (p, r) = (w[0], w[1]);
            let chain: Vec<usize> = (p..r).map(|k| link[&(f, k)]).collect();
            let name = if chain.len() == 1 {
                q.arrows()[chain[0]].id.clone()
            } else {
                let ids: String = chain.iter().map(|&a| q.arrows()[a].id.as_str()).collect();
                format!("[{ids}]")
            };
            order.push((
                chain[0],
                name,
                fan.ends[p].arc,
                fan.ends[r].arc,
                fan.ends[p].end,
                fan.ends[r].end,
            ));
        }
    }
    order.sort_by_key(|o| o.0);
    for (_, name, s, t, se, te) in order {
        out.push_arrow(&name, new_index[s], new_index[t])?;
        new_ends.push((se, te));
    }
    let arrows = out.arrows().to_vec();
    let mut rels = Vec::new();
    for (x, ax) in arrows.iter().enumerate() {
        for (y, ay) in arrows.iter().enumerate() {
            if ax.target == ay.source && new_ends[x].1 != new_ends[y].0 {
                rels.push((x, y));
            }
        }
    }
    // relations in the order of the original relations where possible
    for (x, y) in rels {
        out.push_relation(x, y)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    pub quiver: GentleQuiver,
    /// For each new arrow id, the arrows of the input quiver it is made of.
    pub provenance: Vec<(String, Vec<String>)>,
}

/// Cuts the surface along arc `v`: removes the vertex, keeps the arrows
/// away from it, and replaces each relation `c1 c2` through `v` by a
/// composite arrow `[c1c2]`.
pub fn cut_vertex(q: &GentleQuiver, v: &str) -> Result<CutResult> {
    require_gentle(q)?;
    let vi = q.require_vertex(v)?;
    let rg = RibbonGraph::build(q)?;
    if rg.is_loop_arc(vi) {
        return Err(Error::LoopArc(v.to_string()));
    }
    let mut out = GentleQuiver::new();
    let mut new_index = vec![usize::MAX; q.num_vertices()];
    for w in 0..q.num_vertices() {
        if w != vi {
            new_index[w] = out.add_vertex(q.vertex_id(w))?;
        }
    }
    // each new arrow is a path of old arrows
    let mut made_of: Vec<Vec<usize>> = Vec::new();
    for (i, a) in q.arrows().iter().enumerate() {
        if a.source != vi && a.target != vi {
            out.push_arrow(&a.id, new_index[a.source], new_index[a.target])?;
            made_of.push(vec![i]);
        }
    }
    for &(c1, c2) in q.relations() {
        if q.arrows()[c1].target != vi {
            continue;
        }
        let (a1, a2) = (&q.arrows()[c1], &q.arrows()[c2]);
        let name = format!("[{}{}]", a1.id, a2.id);
        out.push_arrow(&name, new_index[a1.source], new_index[a2.target])?;
        made_of.push(vec![c1, c2]);
    }
    for (x, px) in made_of.iter().enumerate() {
        for (y, py) in made_of.iter().enumerate() {
            let (last, first) = (*px.last().unwrap(), py[0]);
            if out.arrows()[x].target == out.arrows()[y].source && q.is_relation(last, first) {
                out.push_relation(x, y)?;
            }
        }
    }
    let report = out.validate();
    if !report.is_gentle() {
        return Err(Error::Internal(format!(
            "cut quiver is not gentle: {}",
            report.violations.join("; ")
        )));
    }
    let provenance = made_of
        .iter()
        .enumerate()
        .map(|(x, p)| {
            (
                out.arrows()[x].id.clone(),
                p.iter().map(|&a| q.arrows()[a].id.clone()).collect(),
            )
        })
        .collect();
    Ok(CutResult {
        quiver: out,
        provenance,
    })
}

fn check_collection(q: &GentleQuiver, subset: &[&str]) -> Result<()> {
    let idx = lookup_all(q, subset)?;
    if subset.is_empty() {
        return Ok(());
    }
    let rg = RibbonGraph::build(q)?;
    for (&id, &v) in subset.iter().zip(&idx) {
        if rg.is_loop_arc(v) {
            return Err(Error::LoopArc(id.to_string()));
        }
    }
    if induced_collection_quiver(q, subset)?.has_oriented_cycle() {
        return Err(Error::Precondition(format!(
            "{{{}}} is not an exceptional collection: induced quiver has an oriented cycle",
            subset.join(",")
        )));
    }
    Ok(())
}

/// Cuts along every arc of an exceptional collection, in the given order.
pub fn cut_collection(q: &GentleQuiver, subset: &[&str]) -> Result<GentleQuiver> {
    require_gentle(q)?;
    check_collection(q, subset)?;
    let mut cur = q.clone();
    for &v in subset {
        cur = cut_vertex(&cur, v)?.quiver;
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<String>,
    pub invariants: SurfaceInvariants,
    pub special: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Completion {
    pub completable: bool,
    pub components: Vec<ComponentReport>,
    /// Indices into `components` of the `T(g,1,1)` components.
    pub offending: Vec<usize>,
}

/// Splits a quiver into components and classifies each surface.
pub fn component_reports(q: &GentleQuiver) -> Result<Vec<ComponentReport>> {
    let mut out = Vec::new();
    for comp in q.components() {
        let sub = q.full_subquiver(&comp);
        let invariants = surface_invariants(&sub)?;
        let special = classify_special(&invariants)?;
        out.push(ComponentReport {
            vertices: sub.vertices().to_vec(),
            invariants,
            special: special.label(),
        });
    }
    Ok(out)
}

/// Whether an exceptional collection of arcs of the dissection extends to a
/// full exceptional collection: no component of the cut surface may be
/// `T(g,1,1)`.
pub fn can_complete(q: &GentleQuiver, subset: &[&str]) -> Result<Completion> {
    let ex = exists_full_exceptional(q)?;
    if !ex.exists {
        return Err(Error::Precondition(format!(
            "no full exceptional sequence exists ({})",
            ex.reason.unwrap_or_default()
        )));
    }
    let cut = cut_collection(q, subset)?;
    let components = component_reports(&cut)?;
    let offending: Vec<usize> = components
        .iter()
        .enumerate()
        .filter(|(_, c)| matches!(&c.special, Some(s) if s.ends_with(",1,1)")))
        .map(|(i, _)| i)
        .collect();
    Ok(Completion {
        completable: offending.is_empty(),
        components,
        offending,
    })
}

/// Opposite quiver with the complementary set of relations on composable
/// pairs. Finite dimensionality is not required of the result.
pub fn koszul_dual_quiver(q: &GentleQuiver) -> Result<GentleQuiver> {
    require_gentle(q)?;
    let mut out = GentleQuiver::new();
    for v in q.vertices() {
        out.add_vertex(v)?;
    }
    for a in q.arrows() {
        out.push_arrow(&a.id, a.target, a.source)?;
    }
    for (a, arrow) in q.arrows().iter().enumerate() {
        for b in q.out_arrows(arrow.target) {
            if !q.is_relation(a, b) {
                out.push_relation(b, a)?;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    /// `T(g,1,2)`: one boundary component with two ○-points.
    OneBoundaryTwoPoints,
    /// `T(g,2,2)`: two boundary components with one ○-point each.
    TwoBoundariesTwoPoints,
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::OneBoundaryTwoPoints => write!(f, "T(g,1,2)"),
            SurfaceKind::TwoBoundariesTwoPoints => write!(f, "T(g,2,2)"),
        }
    }
}

impl SurfaceKind {
    pub fn special(self, g: i64) -> Special {
        match self {
            SurfaceKind::OneBoundaryTwoPoints => Special::T12(g),
            SurfaceKind::TwoBoundariesTwoPoints => Special::T22(g),
        }
    }
}

/// Ladder quiver of an exceptional dissection of `T(g,1,2)` or `T(g,2,2)`:
/// vertices `1..=m` with a pair of arrows `u_k, l_k: k+1 -> k` for each
/// `k < m`, and relations `u_{k+1} u_k`, `l_{k+1} l_k`.
pub fn gen_surface_quiver(kind: SurfaceKind, g: usize) -> Result<GentleQuiver> {
    if g < 1 {
        return Err(Error::Precondition("genus must be at least 1".into()));
    }
    let m = match kind {
        SurfaceKind::OneBoundaryTwoPoints => 2 * g + 1,
        SurfaceKind::TwoBoundariesTwoPoints => 2 * g + 2,
    };
    let mut q = GentleQuiver::new();
    for v in 1..=m {
        q.add_vertex(&v.to_string())?;
    }
    for k in 1..m {
        let (s, t) = ((k + 1).to_string(), k.to_string());
        q.add_arrow(&format!("u{k}"), &s, &t)?;
        q.add_arrow(&format!("l{k}"), &s, &t)?;
    }
    for k in 1..m - 1 {
        q.add_relation(&format!("u{}", k + 1), &format!("u{k}"))?;
        q.add_relation(&format!("l{}", k + 1), &format!("l{k}"))?;
    }
    Ok(q)
}

/// Arrow names with composite brackets flattened, so `[[cd]e]` and
/// `[c[de]]` agree.
pub fn canonical_arrow_name(name: &str) -> String {
    if name.contains('[') {
        let inner: String = name.chars().filter(|&c| c != '[' && c != ']').collect();
        format!("[{inner}]")
    } else {
        name.to_string()
    }
}

/// Order-free description of a presentation, with canonical arrow names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Presentation {
    pub vertices: BTreeSet<String>,
    pub arrows: BTreeSet<(String, String, String)>,
    pub relations: BTreeSet<(String, String)>,
}

pub fn presentation(q: &GentleQuiver) -> Presentation {
    let name = |a: usize| canonical_arrow_name(&q.arrows()[a].id);
    Presentation {
        vertices: q.vertices().iter().cloned().collect(),
        arrows: q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                (
                    name(i),
                    q.vertex_id(a.source).to_string(),
                    q.vertex_id(a.target).to_string(),
                )
            })
            .collect(),
        relations: q.relations().iter().map(|&(a, b)| (name(a), name(b))).collect(),
    }
}

/// Gentle presentations on `n` vertices with `m` arrows that have finite
/// global dimension.
pub fn enumerate_gentle(n: usize, m: usize) -> Vec<GentleQuiver> {
    enumerate_presentations(n, m)
        .into_iter()
        .filter(|q| q.validate().finite_global_dimension)
        .collect()
}

/// All gentle presentations on `n` vertices with `m` arrows (vertex ids
/// `1..=n`, arrows `x1..`), punctured ones included. Presentations differing
/// by arrow order are listed once.
pub fn enumerate_presentations(n: usize, m: usize) -> Vec<GentleQuiver> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
    let mut out = Vec::new();
    let mut choice = Vec::with_capacity(m);
    fn multisets(
        pairs: &[(usize, usize)],
        start: usize,
        m: usize,
        n: usize,
        choice: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if choice.len() == m {
            f(choice);
            return;
        }
        for i in start..pairs.len() {
            choice.push(i);
            let mut outd = vec![0; n];
            let mut ind = vec![0; n];
            for &c in choice.iter() {
                outd[pairs[c].0] += 1;
                ind[pairs[c].1] += 1;
            }
            if outd.iter().all(|&d| d <= 2) && ind.iter().all(|&d| d <= 2) {
                multisets(pairs, i, m, n, choice, f);
            }
            choice.pop();
        }
    }
    multisets(&pairs, 0, m, n, &mut choice, &mut |arrows: &[usize]| {
        let mut base = GentleQuiver::new();
        for v in 1..=n {
            base.add_vertex(&v.to_string()).unwrap();
        }
        for (k, &c) in arrows.iter().enumerate() {
            let (s, t) = pairs[c];
            base.push_arrow(&format!("x{}", k + 1), s, t).unwrap();
        }
        // per arrow: the list of possible relation sets with its successors
        let options: Vec<Vec<Vec<usize>>> = (0..m)
            .map(|a| {
                let succ: Vec<usize> = base.out_arrows(base.arrows()[a].target).collect();
                match succ.len() {
                    0 => vec![vec![]],
                    1 => vec![vec![], vec![succ[0]]],
                    _ => succ.iter().map(|&b| vec![b]).collect(),
                }
            })
            .collect();
        let mut idx = vec![0usize; m];
        loop {
            let mut q = base.clone();
            for a in 0..m {
                for &b in &options[a][idx[a]] {
                    q.push_relation(a, b).unwrap();
                }
            }
            if q.validate().is_gentle() {
                out.push(q);
            }
            // odometer
            let mut k = 0;
            while k < m {
                idx[k] += 1;
                if idx[k] < options[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == m {
                break;
            }
        }
    });
    out
}

/// A quiver from the exhaustive 3-vertex/4-arrow search with a non-loop
/// vertex whose cut is connected of signature `(2,3)`, together with that
/// vertex.
pub fn find_uncompletable_fixture() -> Option<(GentleQuiver, String)> {
    for q in enumerate_gentle(3, 4) {
        if q.components().len() != 1 {
            continue;
        }
        let Ok(rg) = RibbonGraph::build(&q) else {
            continue;
        };
        for v in 0..q.num_vertices() {
            if rg.is_loop_arc(v) {
                continue;
            }
            let id = q.vertex_id(v).to_string();
            let Ok(cut) = cut_vertex(&q, &id) else {
                continue;
            };
            let c = cut.quiver;
            if c.components().len() == 1 && c.num_vertices() == 2 && c.num_arrows() == 3 {
                return Some((q, id));
            }
        }
    }
    None
}
