//! Reconstruction of the dissected marked surface from a gentle quiver.
//!
//! Each vertex is an arc with two ends. Composable arrows `a: α→β`,
//! `b: β→γ` meet `β` at the same end exactly when `ab` is not a relation.
//! Chains of arrows linking ends form the fans around ○-points, ordered
//! anticlockwise. Closing every fan with a boundary gap gives a rotation
//! system whose faces are the polygons of the dissection: faces through a
//! gap hold a boundary ●, gapless faces hold a puncture, and the
//! gap-successor permutation traces the boundary components.
//!
//! Face tracing from an end `e` steps to `σ(opposite(e))`, where `σ` is the
//! rotation successor at the fan (`e₁ … e_k gap`). On A₂ (`a: 1→2`) the fans
//! are `[1A 2A]`, `[1B]`, `[2B]`, and the three traced faces are `1A|gap₂`,
//! `1B 2A|gap₃`, `2B|gap₁`; the gap permutation is the single cycle
//! `F₁ → F₃ → F₂ → F₁`, so the disk has one boundary component.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::GentleQuiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EndTag {
    A,
    B,
}

impl EndTag {
    pub fn other(self) -> EndTag {
        match self {
            EndTag::A => EndTag::B,
            EndTag::B => EndTag::A,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcEnd {
    pub arc: usize,
    pub end: EndTag,
}

impl ArcEnd {
    pub fn opposite(self) -> ArcEnd {
        ArcEnd {
            arc: self.arc,
            end: self.end.other(),
        }
    }
}

/// Which end of its source and of its target each arrow is attached to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndAssignment {
    pub source_end: Vec<EndTag>,
    pub target_end: Vec<EndTag>,
}

/// Arc ends around one ○-point, anticlockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub ends: Vec<ArcEnd>,
}

/// Rotation direction used when tracing faces. Counts are identical under
/// both; the faces are traversed in mirror order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    #[default]
    Anticlockwise,
    Clockwise,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Ends visited, each followed by a walk along its arc.
    pub ends: Vec<ArcEnd>,
    /// Fan whose boundary gap closes this face; `None` for a puncture face.
    pub gap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTrace {
    pub faces: Vec<Face>,
    /// `gap_successor[f]` is the fan reached by walking the boundary from
    /// the gap of fan `f`.
    pub gap_successor: Vec<usize>,
    /// Cycles of `gap_successor`, one per boundary component.
    pub boundary_cycles: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub genus: i64,
    pub boundaries: i64,
    pub circ: i64,
    pub bullet: i64,
    pub punctures: i64,
    pub chi: i64,
    /// Number of connected components of the surface.
    #[serde(skip)]
    pub components: i64,
}

impl SurfaceInvariants {
    pub fn num_vertices(&self) -> i64 {
        self.circ - self.chi
    }

    pub fn num_arrows(&self) -> i64 {
        self.num_vertices() - self.chi
    }

    pub fn tuple(&self) -> (i64, i64, i64, i64, i64) {
        (
            self.genus,
            self.boundaries,
            self.circ,
            self.bullet,
            self.punctures,
        )
    }
}

/// The three small unpunctured surfaces singled out by the existence
/// criterion, with their genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Special {
    /// One boundary component with one ○-point.
    T11(i64),
    /// One boundary component with two ○-points.
    T12(i64),
    /// Two boundary components with one ○-point each.
    T22(i64),
    Other,
}

impl fmt::Display for Special {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Special::T11(g) => write!(f, "T({g},1,1)"),
            Special::T12(g) => write!(f, "T({g},1,2)"),
            Special::T22(g) => write!(f, "T({g},2,2)"),
            Special::Other => write!(f, "other"),
        }
    }
}

impl Special {
    pub fn label(&self) -> Option<String> {
        match self {
            Special::Other => None,
            s => Some(s.to_string()),
        }
    }
}

/// Fans, faces and invariants of a gentle quiver, computed once.
#[derive(Clone, Debug)]
pub struct RibbonGraph {
    ends: EndAssignment,
    fans: Vec<Fan>,
    fan_of: HashMap<ArcEnd, (usize, usize)>,
    num_arcs: usize,
    num_arrows: usize,
    components: usize,
}

pub fn assign_ends(q: &GentleQuiver) -> Result<EndAssignment> {
    let report = q.validate();
    if !report.is_gentle() {
        return Err(Error::NotGentle(report.violations.join("; ")));
    }
    let n = q.num_arrows();
    let mut source_end = vec![EndTag::A; n];
    let mut target_end = vec![EndTag::A; n];
    for v in 0..q.num_vertices() {
        // half-edges at v: (arrow, incoming?)
        let mut half: Vec<(usize, bool)> = Vec::new();
        for (i, a) in q.arrows().iter().enumerate() {
            if a.target == v {
                half.push((i, true));
            }
            if a.source == v {
                half.push((i, false));
            }
        }
        let mut class = vec![usize::MAX; half.len()];
        let mut classes = 0;
        for i in 0..half.len() {
            if class[i] != usize::MAX {
                continue;
            }
            class[i] = classes;
            for j in i + 1..half.len() {
                let (x, xin) = half[i];
                let (y, yin) = half[j];
                let same = match (xin, yin) {
                    (true, false) => !q.is_relation(x, y),
                    (false, true) => !q.is_relation(y, x),
                    _ => false,
                };
                if same {
                    if class[j] != usize::MAX {
                        return Err(Error::Internal(format!(
                            "end assignment at vertex {} is inconsistent",
                            q.vertex_id(v)
                        )));
                    }
                    class[j] = classes;
                }
            }
            classes += 1;
        }
        if classes > 2 {
            return Err(Error::Internal(format!(
                "vertex {} needs {classes} ends",
                q.vertex_id(v)
            )));
        }
        for (i, &(a, incoming)) in half.iter().enumerate() {
            let tag = if class[i] == 0 { EndTag::A } else { EndTag::B };
            if incoming {
                target_end[a] = tag;
            } else {
                source_end[a] = tag;
            }
        }
    }
    Ok(EndAssignment {
        source_end,
        target_end,
    })
}

impl RibbonGraph {
    pub fn build(q: &GentleQuiver) -> Result<RibbonGraph> {
        let ends = assign_ends(q)?;
        let n = q.num_vertices();
        let mut next: HashMap<ArcEnd, ArcEnd> = HashMap::new();
        let mut has_prev: HashMap<ArcEnd, bool> = HashMap::new();
        for (i, a) in q.arrows().iter().enumerate() {
            let from = ArcEnd {
                arc: a.source,
                end: ends.source_end[i],
            };
            let to = ArcEnd {
                arc: a.target,
                end: ends.target_end[i],
            };
            if next.insert(from, to).is_some() || has_prev.insert(to, true).is_some() {
                return Err(Error::Internal("arc end linked twice".into()));
            }
        }
        let all_ends: Vec<ArcEnd> = (0..n)
            .flat_map(|arc| {
                [EndTag::A, EndTag::B]
                    .into_iter()
                    .map(move |end| ArcEnd { arc, end })
            })
            .collect();
        let mut fans = Vec::new();
        let mut fan_of = HashMap::new();
        for &start in &all_ends {
            if has_prev.contains_key(&start) {
                continue;
            }
            let mut chain = vec![start];
            let mut cur = start;
            while let Some(&nx) = next.get(&cur) {
                chain.push(nx);
                cur = nx;
            }
            for (pos, &e) in chain.iter().enumerate() {
                fan_of.insert(e, (fans.len(), pos));
            }
            fans.push(Fan { ends: chain });
        }
        if fan_of.len() != all_ends.len() {
            // the remaining ends sit on cyclic chains of allowed compositions
            return Err(Error::InfiniteDimensional);
        }
        Ok(RibbonGraph {
            ends,
            fans,
            fan_of,
            num_arcs: n,
            num_arrows: q.num_arrows(),
            components: q.components().len(),
        })
    }

    pub fn end_assignment(&self) -> &EndAssignment {
        &self.ends
    }

    pub fn fans(&self) -> &[Fan] {
        &self.fans
    }

    /// (fan index, position in fan) of an end.
    pub fn locate(&self, e: ArcEnd) -> (usize, usize) {
        self.fan_of[&e]
    }

    pub fn is_loop_arc(&self, v: usize) -> bool {
        let a = self.locate(ArcEnd { arc: v, end: EndTag::A }).0;
        let b = self.locate(ArcEnd { arc: v, end: EndTag::B }).0;
        a == b
    }

    pub fn trace_faces(&self) -> Result<FaceTrace> {
        self.trace_faces_with(Orientation::default())
    }

    pub fn trace_faces_with(&self, orientation: Orientation) -> Result<FaceTrace> {
        // rotation order at each fan, the gap implicitly after the last end
        let rotation: Vec<Vec<ArcEnd>> = self
            .fans
            .iter()
            .map(|f| match orientation {
                Orientation::Anticlockwise => f.ends.clone(),
                Orientation::Clockwise => f.ends.iter().rev().copied().collect(),
            })
            .collect();
        let position = |e: ArcEnd| -> (usize, usize) {
            let (fan, pos) = self.fan_of[&e];
            match orientation {
                Orientation::Anticlockwise => (fan, pos),
                Orientation::Clockwise => (fan, rotation[fan].len() - 1 - pos),
            }
        };
        // σ(e): next end in rotation, or Err(fan) when the gap comes next
        let succ = |e: ArcEnd| -> std::result::Result<ArcEnd, usize> {
            let (fan, pos) = position(e);
            rotation[fan].get(pos + 1).copied().ok_or(fan)
        };

        let total_ends = 2 * self.num_arcs;
        let mut seen: HashMap<ArcEnd, usize> = HashMap::new();
        let mut faces = Vec::new();
        let mut gap_successor = vec![usize::MAX; self.fans.len()];
        for (f, rot) in rotation.iter().enumerate() {
            let mut cur = rot[0];
            let mut ends = Vec::new();
            loop {
                if seen.insert(cur, faces.len()).is_some() {
                    return Err(Error::Internal("face tracing revisited an end".into()));
                }
                ends.push(cur);
                match succ(cur.opposite()) {
                    Ok(nx) => cur = nx,
                    Err(gap_fan) => {
                        if gap_successor[gap_fan] != usize::MAX {
                            return Err(Error::Internal("gap closes two faces".into()));
                        }
                        gap_successor[gap_fan] = f;
                        break;
                    }
                }
                if ends.len() > total_ends {
                    return Err(Error::Internal("face tracing did not terminate".into()));
                }
            }
            faces.push(Face {
                ends,
                gap: Some(f),
            });
        }
        // what is left are the gapless (puncture) faces
        for arc in 0..self.num_arcs {
            for end in [EndTag::A, EndTag::B] {
                let start = ArcEnd { arc, end };
                if seen.contains_key(&start) {
                    continue;
                }
                let mut ends = Vec::new();
                let mut cur = start;
                loop {
                    seen.insert(cur, faces.len());
                    ends.push(cur);
                    cur = succ(cur.opposite()).map_err(|_| {
                        Error::Internal("puncture face reached a boundary gap".into())
                    })?;
                    if cur == start {
                        break;
                    }
                    if seen.contains_key(&cur) {
                        return Err(Error::Internal("puncture faces overlap".into()));
                    }
                }
                faces.push(Face { ends, gap: None });
            }
        }
        let mut boundary_cycles = Vec::new();
        let mut visited = vec![false; self.fans.len()];
        for start in 0..self.fans.len() {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                cycle.push(cur);
                cur = gap_successor[cur];
            }
            if cur != start {
                return Err(Error::Internal("gap successor is not a permutation".into()));
            }
            boundary_cycles.push(cycle);
        }
        Ok(FaceTrace {
            faces,
            gap_successor,
            boundary_cycles,
        })
    }

    pub fn invariants(&self) -> Result<SurfaceInvariants> {
        let trace = self.trace_faces()?;
        let q0 = self.num_arcs as i64;
        let q1 = self.num_arrows as i64;
        let chi = q0 - q1;
        let circ = self.fans.len() as i64;
        let bullet = trace.faces.iter().filter(|f| f.gap.is_some()).count() as i64;
        let punctures = trace.faces.len() as i64 - bullet;
        let boundaries = trace.boundary_cycles.len() as i64;
        let components = self.components as i64;
        let twice_genus = 2 * components - boundaries - punctures - chi;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::Internal(format!(
                "non-integral genus: 2g = {twice_genus}"
            )));
        }
        let inv = SurfaceInvariants {
            genus: twice_genus / 2,
            boundaries,
            circ,
            bullet,
            punctures,
            chi,
            components,
        };
        let checks = [
            (bullet == circ, "|M●| = |M°|"),
            (circ == 2 * q0 - q1, "|M°| = 2|Q0| - |Q1|"),
            (
                bullet + punctures - q0 == 2 * components - 2 * inv.genus - boundaries,
                "cellular Euler characteristic",
            ),
        ];
        for (ok, what) in checks {
            if !ok {
                return Err(Error::Internal(format!("surface bookkeeping failed: {what}")));
            }
        }
        Ok(inv)
    }
}

pub fn build_fans(q: &GentleQuiver) -> Result<Vec<Fan>> {
    Ok(RibbonGraph::build(q)?.fans)
}

pub fn trace_faces(q: &GentleQuiver) -> Result<FaceTrace> {
    RibbonGraph::build(q)?.trace_faces()
}

pub fn surface_invariants(q: &GentleQuiver) -> Result<SurfaceInvariants> {
    if q.num_vertices() == 0 {
        return Err(Error::Precondition("empty quiver has no surface".into()));
    }
    RibbonGraph::build(q)?.invariants()
}

pub fn is_loop_arc(q: &GentleQuiver, v: &str) -> Result<bool> {
    let v = q.require_vertex(v)?;
    Ok(RibbonGraph::build(q)?.is_loop_arc(v))
}

/// Which special surface, if any, a quiver signature `(|Q0|, |Q1|)` forces.
pub fn classify_signature(q0: i64, q1: i64) -> Special {
    if q0 >= 2 && q0 % 2 == 0 && q1 == 2 * q0 - 1 {
        return Special::T11(q0 / 2);
    }
    if q0 >= 3 && q0 % 2 == 1 && q1 == 2 * q0 - 2 {
        return Special::T12((q0 - 1) / 2);
    }
    if q0 >= 4 && q0 % 2 == 0 && q1 == 2 * q0 - 2 {
        return Special::T22((q0 - 2) / 2);
    }
    Special::Other
}

/// Classifies a connected unpunctured surface, cross-checked against the
/// quiver-signature test.
pub fn classify_special(inv: &SurfaceInvariants) -> Result<Special> {
    if inv.punctures > 0 {
        return Err(Error::Punctured);
    }
    if inv.components != 1 {
        return Err(Error::Precondition(
            "classification needs a connected surface".into(),
        ));
    }
    let g = inv.genus;
    let by_surface = match (inv.boundaries, inv.circ) {
        _ if g < 1 => Special::Other,
        (1, 1) => Special::T11(g),
        (1, 2) => Special::T12(g),
        (2, 2) => Special::T22(g),
        _ => Special::Other,
    };
    let by_signature = classify_signature(inv.num_vertices(), inv.num_arrows());
    if by_surface != by_signature {
        return Err(Error::Internal(format!(
            "surface says {by_surface}, signature says {by_signature}"
        )));
    }
    Ok(by_surface)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exceptional::{gen_surface_quiver, SurfaceKind};
    use crate::fixtures;

    fn end(q: &GentleQuiver, arrow: &str) -> (EndTag, EndTag) {
        let e = assign_ends(q).unwrap();
        let i = q.arrow_index(arrow).unwrap();
        (e.source_end[i], e.target_end[i])
    }

    #[test]
    fn end_rule_on_delta1() {
        let q = fixtures::delta1();
        // c and d meet γ4 at different ends (cd is a relation)
        assert_ne!(end(&q, "c").1, end(&q, "d").0);
        // e and d meet γ4 at the same end (ed is allowed)
        assert_eq!(end(&q, "e").1, end(&q, "d").0);
    }

    #[test]
    fn loop_arrow_uses_both_ends() {
        let q = fixtures::loop_nilpotent();
        let (s, t) = end(&q, "a");
        assert_ne!(s, t);
    }

    #[test]
    fn fan_counts() {
        assert_eq!(build_fans(&fixtures::a2()).unwrap().len(), 3);
        assert_eq!(build_fans(&fixtures::delta1()).unwrap().len(), 5);
        let fans = build_fans(&fixtures::loop_nilpotent()).unwrap();
        assert_eq!(fans.len(), 1);
        assert_eq!(fans[0].ends.len(), 2);
    }

    #[test]
    fn a2_fan_contains_arrow_link() {
        let fans = build_fans(&fixtures::a2()).unwrap();
        assert!(fans.iter().any(|f| f.ends.len() == 2
            && f.ends[0].arc == 0
            && f.ends[1].arc == 1));
    }

    #[test]
    fn face_examples() {
        let t = trace_faces(&fixtures::a2()).unwrap();
        assert_eq!(t.faces.len(), 3);
        assert!(t.faces.iter().all(|f| f.gap.is_some()));
        assert_eq!(t.boundary_cycles.len(), 1);

        let t = trace_faces(&fixtures::delta1()).unwrap();
        assert_eq!(t.faces.len(), 5);
        assert!(t.faces.iter().all(|f| f.gap.is_some()));
        assert_eq!(t.boundary_cycles.len(), 2);

        let t = trace_faces(&fixtures::loop_nilpotent()).unwrap();
        assert_eq!(t.faces.len(), 2);
        assert_eq!(t.faces.iter().filter(|f| f.gap.is_none()).count(), 1);
        assert_eq!(t.boundary_cycles.len(), 1);
    }

    #[test]
    fn a2_trace_matches_documented_walk() {
        let t = trace_faces(&fixtures::a2()).unwrap();
        // fans: 0 = [1A 2A], 1 = [1B], 2 = [2B]
        assert_eq!(t.gap_successor, vec![2, 0, 1]);
    }

    #[test]
    fn clockwise_tracing_gives_same_counts() {
        for (_, q) in fixtures::corpus() {
            let g = RibbonGraph::build(&q).unwrap();
            let a = g.trace_faces_with(Orientation::Anticlockwise).unwrap();
            let c = g.trace_faces_with(Orientation::Clockwise).unwrap();
            assert_eq!(a.faces.len(), c.faces.len());
            assert_eq!(a.boundary_cycles.len(), c.boundary_cycles.len());
        }
    }

    #[test]
    fn invariant_examples() {
        let t = |q: GentleQuiver| surface_invariants(&q).unwrap().tuple();
        assert_eq!(t(fixtures::delta1()), (0, 2, 5, 5, 0));
        assert_eq!(t(fixtures::delta2()), (0, 2, 5, 5, 0));
        assert_eq!(t(fixtures::kronecker()), (0, 2, 2, 2, 0));
        assert_eq!(t(fixtures::loop_nilpotent()), (0, 1, 1, 1, 1));
        assert_eq!(t(fixtures::a2()), (0, 1, 3, 3, 0));
    }

    #[test]
    fn special_surfaces() {
        let t112 = gen_surface_quiver(SurfaceKind::OneBoundaryTwoPoints, 1).unwrap();
        let inv = surface_invariants(&t112).unwrap();
        assert_eq!(classify_special(&inv).unwrap(), Special::T12(1));
        let t122 = gen_surface_quiver(SurfaceKind::TwoBoundariesTwoPoints, 1).unwrap();
        let inv = surface_invariants(&t122).unwrap();
        assert_eq!(classify_special(&inv).unwrap(), Special::T22(1));
        let inv = surface_invariants(&fixtures::delta1()).unwrap();
        assert_eq!(classify_special(&inv).unwrap(), Special::Other);
        let inv = surface_invariants(&fixtures::loop_nilpotent()).unwrap();
        assert_eq!(classify_special(&inv), Err(Error::Punctured));
    }

    #[test]
    fn loop_arcs() {
        let lp = fixtures::loop_nilpotent();
        assert!(is_loop_arc(&lp, "1").unwrap());
        assert!(!is_loop_arc(&fixtures::delta1(), "γ3").unwrap());
        assert!(!is_loop_arc(&fixtures::a2(), "1").unwrap());
        assert!(is_loop_arc(&fixtures::a2(), "9").is_err());
    }

    #[test]
    fn every_arrow_links_one_fan_pair() {
        for (_, q) in fixtures::corpus() {
            let fans = build_fans(&q).unwrap();
            let links: usize = fans.iter().map(|f| f.ends.len() - 1).sum();
            assert_eq!(links, q.num_arrows());
        }
    }
}
