// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Covering projections, partial covers and list assignments.
//!
//! A map `f: G -> H` is checked fibre by fibre. For every target edge `h`
//! and every source vertex `v` in the fibre of an endpoint of `h`, count the
//! edge-ends at `v` sent to `h` (a loop of `G` counts twice). A cover needs
//! exactly one such end for an ordinary edge or semi-edge `h` and exactly two
//! for a loop `h`; a partial cover needs at most that many. These counts
//! are the matching, semi-edge family and cycle family shapes of the
//! preimages.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph};

/// Vertex and edge maps from `G` to `H`, addressed by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CoverMap {
    pub vmap: Vec<usize>,
    pub emap: Vec<usize>,
}

impl CoverMap {
    pub fn identity(g: &Multigraph) -> CoverMap {
        CoverMap {
            vmap: (0..g.vertex_count()).collect(),
            emap: (0..g.edge_count()).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &CoverMap) -> CoverMap {
        CoverMap {
            vmap: self.vmap.iter().map(|&x| other.vmap[x]).collect(),
            emap: self.emap.iter().map(|&h| other.emap[h]).collect(),
        }
    }
}

/// Admissible targets. Missing keys mean the full list.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ListAssignment {
    pub vertices: BTreeMap<usize, BTreeSet<usize>>,
    pub edges: BTreeMap<usize, BTreeSet<usize>>,
}

impl ListAssignment {
    pub fn full() -> Self {
        Self::default()
    }

    pub fn is_full(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    /// Intersects the list of `v` with `allowed`.
    pub fn restrict_vertex(&mut self, v: usize, allowed: impl IntoIterator<Item = usize>) {
        let allowed: BTreeSet<usize> = allowed.into_iter().collect();
        match self.vertices.get_mut(&v) {
            Some(cur) => cur.retain(|x| allowed.contains(x)),
            None => {
                self.vertices.insert(v, allowed);
            }
        }
    }

    pub fn restrict_edge(&mut self, e: usize, allowed: impl IntoIterator<Item = usize>) {
        let allowed: BTreeSet<usize> = allowed.into_iter().collect();
        match self.edges.get_mut(&e) {
            Some(cur) => cur.retain(|x| allowed.contains(x)),
            None => {
                self.edges.insert(e, allowed);
            }
        }
    }

    pub fn pin_vertex(&mut self, v: usize, x: usize) {
        self.restrict_vertex(v, [x]);
    }

    pub fn pin_edge(&mut self, e: usize, h: usize) {
        self.restrict_edge(e, [h]);
    }

    #[inline]
    pub fn allows_vertex(&self, v: usize, x: usize) -> bool {
        self.vertices.get(&v).is_none_or(|l| l.contains(&x))
    }

    #[inline]
    pub fn allows_edge(&self, e: usize, h: usize) -> bool {
        self.edges.get(&e).is_none_or(|l| l.contains(&h))
    }

    /// Checks that keys exist in `g` and targets exist in `h`.
    pub fn validate(&self, g: &Multigraph, h: &Multigraph) -> Result<()> {
        for (&v, list) in &self.vertices {
            if v >= g.vertex_count() {
                return Err(Error::InvalidParameter(format!("list key {v} is not a vertex of G")));
            }
            if let Some(&x) = list.iter().find(|&&x| x >= h.vertex_count()) {
                return Err(Error::InvalidParameter(format!("list target {x} is not a vertex of H")));
            }
        }
        for (&e, list) in &self.edges {
            if e >= g.edge_count() {
                return Err(Error::InvalidParameter(format!("list key {e} is not an edge of G")));
            }
            if let Some(&f) = list.iter().find(|&&f| f >= h.edge_count()) {
                return Err(Error::InvalidParameter(format!("list target {f} is not an edge of H")));
            }
        }
        Ok(())
    }
}

/// Whether `f` sends every listed element into its list.
pub fn respects_lists(f: &CoverMap, lists: &ListAssignment) -> bool {
    lists
        .vertices
        .iter()
        .all(|(&v, l)| f.vmap.get(v).is_some_and(|x| l.contains(x)))
        && lists
            .edges
            .iter()
            .all(|(&e, l)| f.emap.get(e).is_some_and(|h| l.contains(h)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Total,
    Partial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    /// Two preimage edges of an ordinary edge or semi-edge meet at a vertex.
    NotMatching,
    /// A vertex meets the preimage of a loop more than twice.
    NotCycleFamily,
    /// Some fibre vertex is missed by the preimage (covers only).
    NotSpanning,
}

/// Why a map is not a (partial) covering projection. Ids are resolved so
/// the value prints on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotTotal {
        vertices: usize,
        expected_vertices: usize,
        edges: usize,
        expected_edges: usize,
    },
    UnknownTarget {
        source: String,
        target: usize,
    },
    Incidence {
        edge: String,
        target: String,
        reason: String,
    },
    Structure {
        target: String,
        kind: StructureKind,
        vertex: String,
        edges: Vec<String>,
    },
    List {
        source: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotTotal {
                vertices,
                expected_vertices,
                edges,
                expected_edges,
            } => write!(
                f,
                "map is not total: {vertices}/{expected_vertices} vertices, {edges}/{expected_edges} edges"
            ),
            Violation::UnknownTarget { source, target } => {
                write!(f, "`{source}` is mapped to nonexistent target #{target}")
            }
            Violation::Incidence {
                edge,
                target,
                reason,
            } => write!(f, "edge `{edge}` -> `{target}` breaks incidence: {reason}"),
            Violation::Structure {
                target,
                kind,
                vertex,
                edges,
            } => {
                let what = match kind {
                    StructureKind::NotMatching => "is not a matching",
                    StructureKind::NotCycleFamily => "is not a union of cycles and paths",
                    StructureKind::NotSpanning => "does not span the fibre",
                };
                write!(
                    f,
                    "preimage of `{target}` {what} at vertex `{vertex}` (edges: {})",
                    edges.join(", ")
                )
            }
            Violation::List { source } => write!(f, "`{source}` is mapped outside its list"),
        }
    }
}

impl std::error::Error for Violation {}

/// Shape of the preimage of one target edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Matching { size: usize },
    SemiFamily { semi_edges: usize, ordinary: usize },
    CycleFamily { cycles: usize, paths: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFiber {
    pub preimage: Vec<usize>,
    pub shape: Shape,
    pub spanning: bool,
}

/// Fibres of an accepted map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub vertex_fibers: Vec<Vec<usize>>,
    pub edge_fibers: Vec<EdgeFiber>,
}

/// Checks a covering projection.
pub fn verify_cover(
    g: &Multigraph,
    h: &Multigraph,
    f: &CoverMap,
) -> std::result::Result<FiberReport, Violation> {
    verify(g, h, f, Mode::Total)
}

/// Checks a partial covering projection.
pub fn verify_partial_cover(
    g: &Multigraph,
    h: &Multigraph,
    f: &CoverMap,
) -> std::result::Result<FiberReport, Violation> {
    verify(g, h, f, Mode::Partial)
}

pub fn verify(
    g: &Multigraph,
    h: &Multigraph,
    f: &CoverMap,
    mode: Mode,
) -> std::result::Result<FiberReport, Violation> {
    if f.vmap.len() != g.vertex_count() || f.emap.len() != g.edge_count() {
        return Err(Violation::NotTotal {
            vertices: f.vmap.len(),
            expected_vertices: g.vertex_count(),
            edges: f.emap.len(),
            expected_edges: g.edge_count(),
        });
    }
    for (v, &x) in f.vmap.iter().enumerate() {
        if x >= h.vertex_count() {
            return Err(Violation::UnknownTarget {
                source: g.vertex_id(v).to_string(),
                target: x,
            });
        }
    }
    for (e, &t) in f.emap.iter().enumerate() {
        if t >= h.edge_count() {
            return Err(Violation::UnknownTarget {
                source: g.edge(e).id.clone(),
                target: t,
            });
        }
    }

    for (e, edge) in g.edges().iter().enumerate() {
        let target = h.edge(f.emap[e]);
        let img = [f.vmap[edge.ends[0]], f.vmap[edge.ends[1]]];
        let fail = |reason: &str| Violation::Incidence {
            edge: edge.id.clone(),
            target: target.id.clone(),
            reason: reason.to_string(),
        };
        match (edge.kind, target.kind) {
            (EdgeKind::Loop, EdgeKind::Loop) | (EdgeKind::Semi, EdgeKind::Semi) => {
                if img[0] != target.ends[0] {
                    return Err(fail("endpoint image is not the target's vertex"));
                }
            }
            (EdgeKind::Loop, _) => return Err(fail("a loop can only map to a loop")),
            (EdgeKind::Semi, _) => return Err(fail("a semi-edge can only map to a semi-edge")),
            (EdgeKind::Ordinary, EdgeKind::Ordinary) => {
                let ok = (img[0] == target.ends[0] && img[1] == target.ends[1])
                    || (img[0] == target.ends[1] && img[1] == target.ends[0]);
                if !ok {
                    return Err(fail("endpoint images differ from the target's endpoints"));
                }
            }
            (EdgeKind::Ordinary, _) => {
                if img[0] != target.ends[0] || img[1] != target.ends[0] {
                    return Err(fail("both endpoints must lie in the fibre of the target's vertex"));
                }
            }
        }
    }

    let mut vertex_fibers = vec![Vec::new(); h.vertex_count()];
    for (v, &x) in f.vmap.iter().enumerate() {
        vertex_fibers[x].push(v);
    }
    let mut preimages = vec![Vec::new(); h.edge_count()];
    for (e, &t) in f.emap.iter().enumerate() {
        preimages[t].push(e);
    }

    // Edge-ends at each source vertex, grouped by target edge.
    let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertex_count()];
    for v in 0..g.vertex_count() {
        for &e in g.incident(v) {
            let t = f.emap[e];
            let c = g.edge(e).ends_at(v);
            match ends[v].iter_mut().find(|(tt, _)| *tt == t) {
                Some(slot) => slot.1 += c,
                None => ends[v].push((t, c)),
            }
        }
    }

    let mut edge_fibers = Vec::with_capacity(h.edge_count());
    for (t, target) in h.edges().iter().enumerate() {
        let need = if target.kind == EdgeKind::Loop { 2 } else { 1 };
        let mut spanning = true;
        let fibre_vertices = target.ends.iter().copied().collect::<std::collections::BTreeSet<_>>();
        for &x in &fibre_vertices {
            for &v in &vertex_fibers[x] {
                let have = ends[v]
                    .iter()
                    .find(|(tt, _)| *tt == t)
                    .map_or(0, |&(_, c)| c);
                if have > need {
                    let kind = if target.kind == EdgeKind::Loop {
                        StructureKind::NotCycleFamily
                    } else {
                        StructureKind::NotMatching
                    };
                    return Err(Violation::Structure {
                        target: target.id.clone(),
                        kind,
                        vertex: g.vertex_id(v).to_string(),
                        edges: g
                            .incident(v)
                            .iter()
                            .filter(|&&e| f.emap[e] == t)
                            .map(|&e| g.edge(e).id.clone())
                            .collect(),
                    });
                }
                if have < need {
                    spanning = false;
                    if mode == Mode::Total {
                        return Err(Violation::Structure {
                            target: target.id.clone(),
                            kind: StructureKind::NotSpanning,
                            vertex: g.vertex_id(v).to_string(),
                            edges: Vec::new(),
                        });
                    }
                }
            }
        }
        let pre = &preimages[t];
        let shape = match target.kind {
            EdgeKind::Ordinary => Shape::Matching { size: pre.len() },
            EdgeKind::Semi => {
                let semi = pre
                    .iter()
                    .filter(|&&e| g.edge(e).kind == EdgeKind::Semi)
                    .count();
                Shape::SemiFamily {
                    semi_edges: semi,
                    ordinary: pre.len() - semi,
                }
            }
            EdgeKind::Loop => cycle_shape(g, pre),
        };
        edge_fibers.push(EdgeFiber {
            preimage: pre.clone(),
            shape,
            spanning,
        });
    }
    Ok(FiberReport {
        vertex_fibers,
        edge_fibers,
    })
}

/// Counts cycles and paths of a subgraph whose degrees are at most two.
fn cycle_shape(g: &Multigraph, edges: &[usize]) -> Shape {
    let mut vertices: Vec<usize> = edges.iter().flat_map(|&e| g.edge(e).ends).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let index = |v: usize| vertices.binary_search(&v).expect("endpoint listed");
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut degree = vec![0usize; vertices.len()];
    for &e in edges {
        let edge = g.edge(e);
        let (a, b) = (index(edge.ends[0]), index(edge.ends[1]));
        if edge.kind == EdgeKind::Loop {
            degree[a] += 2;
        } else {
            degree[a] += 1;
            degree[b] += 1;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut comp_full: BTreeMap<usize, bool> = BTreeMap::new();
    for i in 0..vertices.len() {
        let r = find(&mut parent, i);
        let entry = comp_full.entry(r).or_insert(true);
        *entry &= degree[i] == 2;
    }
    let cycles = comp_full.values().filter(|&&c| c).count();
    Shape::CycleFamily {
        cycles,
        paths: comp_full.len() - cycles,
    }
}

/// Checks a map and its lists in one call.
pub fn verify_list_cover(
    g: &Multigraph,
    h: &Multigraph,
    f: &CoverMap,
    lists: &ListAssignment,
    mode: Mode,
) -> std::result::Result<FiberReport, Violation> {
    let report = verify(g, h, f, mode)?;
    for (&v, l) in &lists.vertices {
        if !l.contains(&f.vmap[v]) {
            return Err(Violation::List {
                source: g.vertex_id(v).to_string(),
            });
        }
    }
    for (&e, l) in &lists.edges {
        if !l.contains(&f.emap[e]) {
            return Err(Violation::List {
                source: g.edge(e).id.clone(),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{cycle, one_vertex, ring};

    /// Every map from `g` to `h` whose edge images are incidence-compatible.
    fn all_maps(g: &Multigraph, h: &Multigraph) -> Vec<CoverMap> {
        let n = g.vertex_count();
        let m = g.edge_count();
        let mut out = Vec::new();
        let total = h.vertex_count().pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let vmap: Vec<usize> = (0..n)
                .map(|_| {
                    let x = c % h.vertex_count();
                    c /= h.vertex_count();
                    x
                })
                .collect();
            let etotal = h.edge_count().pow(m as u32);
            for ecode in 0..etotal {
                let mut c = ecode;
                let emap: Vec<usize> = (0..m)
                    .map(|_| {
                        let x = c % h.edge_count();
                        c /= h.edge_count();
                        x
                    })
                    .collect();
                out.push(CoverMap {
                    vmap: vmap.clone(),
                    emap,
                });
            }
        }
        out
    }

    /// Edge images join the images of their ends, with kinds as allowed.
    fn incidence(g: &Multigraph, h: &Multigraph, f: &CoverMap) -> bool {
        g.edges().iter().enumerate().all(|(e, edge)| {
            let t = h.edge(f.emap[e]);
            let (a, b) = (f.vmap[edge.ends[0]], f.vmap[edge.ends[1]]);
            match (edge.kind, t.kind) {
                (EdgeKind::Ordinary, EdgeKind::Ordinary) => {
                    let mut x = [a, b];
                    let mut y = t.ends;
                    x.sort_unstable();
                    y.sort_unstable();
                    x == y
                }
                (EdgeKind::Ordinary, _) => a == b && a == t.ends[0],
                (k, l) => k == l && a == t.ends[0],
            }
        })
    }

    fn local_bijection(g: &Multigraph, h: &Multigraph, f: &CoverMap) -> bool {
        incidence(g, h, f) && (0..g.vertex_count()).all(|v| {
            let x = f.vmap[v];
            let mut got: Vec<usize> = Vec::new();
            for &e in g.incident(v) {
                for _ in 0..g.edge(e).ends_at(v) {
                    got.push(f.emap[e]);
                }
            }
            let mut want: Vec<usize> = Vec::new();
            for &t in h.incident(x) {
                for _ in 0..h.edge(t).ends_at(x) {
                    want.push(t);
                }
            }
            got.sort_unstable();
            want.sort_unstable();
            got == want
        })
    }

    #[test]
    fn identity_on_ring() {
        let g = ring(3).unwrap();
        assert!(verify_cover(&g, &g, &CoverMap::identity(&g)).is_ok());
    }

    #[test]
    fn cycles_onto_triangle() {
        let h = cycle(3).unwrap();
        let c6 = cycle(6).unwrap();
        let winding = CoverMap {
            vmap: vec![0, 1, 2, 0, 1, 2],
            emap: vec![0, 1, 2, 0, 1, 2],
        };
        let report = verify_cover(&c6, &h, &winding).unwrap();
        assert!(report.edge_fibers.iter().all(|f| f.spanning));
        let c5 = cycle(5).unwrap();
        assert!(all_maps(&c5, &h).iter().all(|f| verify_cover(&c5, &h, f).is_err()));
    }

    #[test]
    fn cycles_onto_two_semi_edges() {
        let h = one_vertex(2, 0);
        let c4 = cycle(4).unwrap();
        let alt = CoverMap {
            vmap: vec![0; 4],
            emap: vec![0, 1, 0, 1],
        };
        assert!(verify_cover(&c4, &h, &alt).is_ok());
        let c3 = cycle(3).unwrap();
        assert!(all_maps(&c3, &h).iter().all(|f| verify_cover(&c3, &h, f).is_err()));
    }

    #[test]
    fn accepted_maps_are_local_bijections() {
        let targets = [one_vertex(1, 1), one_vertex(0, 2), cycle(2).unwrap(), one_vertex(2, 0)];
        let sources = [
            crate::graph::generate::complete(4).unwrap(),
            cycle(4).unwrap(),
            one_vertex(1, 1),
            crate::graph::generate::open_path(2).unwrap(),
        ];
        let mut accepted = 0;
        for h in &targets {
            for g in &sources {
                if g.vertex_count() > 4 || g.edge_count() > 6 {
                    continue;
                }
                for f in all_maps(g, h) {
                    let ok = verify_cover(g, h, &f).is_ok();
                    assert_eq!(ok, local_bijection(g, h, &f), "{f:?}");
                    if ok {
                        accepted += 1;
                        assert!(verify_partial_cover(g, h, &f).is_ok());
                        for v in 0..g.vertex_count() {
                            assert_eq!(g.degree(v), h.degree(f.vmap[v]));
                        }
                    }
                }
            }
        }
        assert!(accepted > 0);
    }

    #[test]
    fn matching_violation() {
        let h = crate::graph::generate::complete(2).unwrap();
        let mut g = Multigraph::new();
        for i in 0..3 {
            g.add_vertex(format!("p{i}")).unwrap();
        }
        g.add_ordinary("x", 0, 1).unwrap();
        g.add_ordinary("y", 1, 2).unwrap();
        let f = CoverMap {
            vmap: vec![0, 1, 0],
            emap: vec![0, 0],
        };
        match verify_partial_cover(&g, &h, &f) {
            Err(Violation::Structure { kind, .. }) => assert_eq!(kind, StructureKind::NotMatching),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_total_and_lists() {
        let g = cycle(3).unwrap();
        let f = CoverMap {
            vmap: vec![0, 1],
            emap: vec![],
        };
        assert!(matches!(verify_cover(&g, &g, &f), Err(Violation::NotTotal { .. })));
        let id = CoverMap::identity(&g);
        let mut lists = ListAssignment::full();
        assert!(respects_lists(&id, &lists));
        lists.pin_vertex(1, 1);
        assert!(respects_lists(&id, &lists));
        lists.pin_vertex(2, 0);
        assert!(!respects_lists(&id, &lists));
    }

    #[test]
    fn loop_preimage_shape() {
        let h = one_vertex(0, 1);
        let g = cycle(3).unwrap();
        let f = CoverMap {
            vmap: vec![0; 3],
            emap: vec![0; 3],
        };
        let r = verify_cover(&g, &h, &f).unwrap();
        assert_eq!(r.edge_fibers[0].shape, Shape::CycleFamily { cycles: 1, paths: 0 });
        let mut p = Multigraph::new();
        p.add_vertex("a").unwrap();
        p.add_vertex("b").unwrap();
        p.add_ordinary("ab", 0, 1).unwrap();
        let f = CoverMap {
            vmap: vec![0, 0],
            emap: vec![0],
        };
        assert!(verify_cover(&p, &h, &f).is_err());
        let r = verify_partial_cover(&p, &h, &f).unwrap();
        assert_eq!(r.edge_fibers[0].shape, Shape::CycleFamily { cycles: 0, paths: 1 });
    }
}
