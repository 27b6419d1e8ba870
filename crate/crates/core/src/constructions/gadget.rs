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

//! Split gadgets `G_u` and their behaviour under partial covers.

use serde::Serialize;

use crate::covering::{ListAssignment, Mode};
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph};
use crate::solver::{for_each_cover, solve_with, Budget, EnumOptions, SolverOptions, Status};

use super::permutations;

/// `G` with vertex `u` replaced by one pendant vertex per incident edge.
#[derive(Clone, Debug)]
pub struct SplitGadget {
    pub graph: Multigraph,
    /// Pendant vertex of each former edge at `u`, in the order of
    /// `pendant_edges`.
    pub pendant_vertices: Vec<usize>,
    pub pendant_edges: Vec<usize>,
    pub origin: Multigraph,
    pub u: usize,
}

/// Splits `u` into pendant vertices `u_e`. Vertices other than `u` keep
/// their relative order and come first; edges keep ids and order.
pub fn split_vertex(g: &Multigraph, u: usize) -> Result<SplitGadget> {
    if u >= g.vertex_count() {
        return Err(Error::UnknownVertex(u.to_string()));
    }
    if g.loops_at(u) + g.semis_at(u) > 0 {
        return Err(Error::Precondition(format!(
            "vertex `{}` carries loops or semi-edges",
            g.vertex_id(u)
        )));
    }
    let mut out = Multigraph::new();
    let mut index = vec![usize::MAX; g.vertex_count()];
    for v in (0..g.vertex_count()).filter(|&v| v != u) {
        index[v] = out.add_vertex(g.vertex_id(v))?;
    }
    let mut pendant_vertices = Vec::new();
    for &e in g.incident(u) {
        let mut id = format!("{}_{}", g.vertex_id(u), g.edge(e).id);
        while out.vertex(&id).is_some() || g.vertex(&id).is_some() {
            id.push('\'');
        }
        pendant_vertices.push(out.add_vertex(id)?);
    }
    let pendant_edges = g.incident(u).to_vec();
    for (e, edge) in g.edges().iter().enumerate() {
        let [a, b] = edge.ends.map(|x| {
            if x == u {
                let i = pendant_edges.iter().position(|&p| p == e).expect("incident");
                pendant_vertices[i]
            } else {
                index[x]
            }
        });
        out.add_edge(edge.id.clone(), edge.kind, a, b)?;
    }
    Ok(SplitGadget {
        graph: out,
        pendant_vertices,
        pendant_edges,
        origin: g.clone(),
        u,
    })
}

impl SplitGadget {
    pub fn k(&self) -> usize {
        self.pendant_edges.len()
    }

    /// Identifies the pendant vertices again, restoring `u` at its index.
    pub fn merge(&self) -> Multigraph {
        let n = self.graph.vertex_count() - self.k();
        let mut out = Multigraph::new();
        let mut index = vec![usize::MAX; self.graph.vertex_count()];
        for v in 0..=n {
            if v == self.u {
                out.add_vertex(self.origin.vertex_id(self.u)).expect("fresh");
            }
            if v < n {
                index[v] = out.add_vertex(self.graph.vertex_id(v)).expect("fresh");
            }
        }
        for &p in &self.pendant_vertices {
            index[p] = self.u;
        }
        for edge in self.graph.edges() {
            let [a, b] = edge.ends.map(|x| index[x]);
            out.add_edge(edge.id.clone(), edge.kind, a, b).expect("merged edge");
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetCheckOptions {
    /// Refuse when the partial covers outnumber this.
    pub max_maps: usize,
    pub budget: Budget,
}

impl Default for GadgetCheckOptions {
    fn default() -> Self {
        GadgetCheckOptions {
            max_maps: 1_000_000,
            budget: Budget::unlimited(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub holds: bool,
    /// Cases examined: pinned solver calls or enumerated maps.
    pub checked: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    /// Every vertex and edge bijection at the pendants extends.
    pub extends: PropertyCheck,
    /// Pendant vertices share one image.
    pub same_vertex: PropertyCheck,
    /// Pendant edges have distinct images.
    pub distinct_edges: PropertyCheck,
    pub partial_covers: usize,
}

impl GadgetReport {
    pub fn all_hold(&self) -> bool {
        self.extends.holds && self.same_vertex.holds && self.distinct_edges.holds
    }
}

fn describe(h: &Multigraph, x: usize, edges: &[usize]) -> String {
    let ids: Vec<&str> = edges.iter().map(|&e| h.edge(e).id.as_str()).collect();
    format!("{} via [{}]", h.vertex_id(x), ids.join(", "))
}

/// Checks the three gadget properties against `h`: pinned solver calls for
/// every vertex and pendant bijection, then one enumeration of all partial
/// covers.
pub fn verify_gadget(
    split: &SplitGadget,
    h: &Multigraph,
    options: &GadgetCheckOptions,
) -> Result<GadgetReport> {
    let g = &split.graph;
    if h.edges().iter().any(|e| e.kind != EdgeKind::Ordinary) {
        return Err(Error::Precondition("gadget target has loops or semi-edges".into()));
    }
    let solver = SolverOptions {
        budget: options.budget,
        ..SolverOptions::default()
    };
    let k = split.k();
    let mut extends = PropertyCheck {
        holds: true,
        checked: 0,
        counterexample: None,
    };
    let perms = permutations(k);
    for x in 0..h.vertex_count() {
        let at_x = h.incident(x);
        if at_x.len() != k {
            continue;
        }
        for perm in &perms {
            let edges: Vec<usize> = perm.iter().map(|&i| at_x[i]).collect();
            let mut lists = ListAssignment::full();
            for (i, &p) in split.pendant_vertices.iter().enumerate() {
                lists.pin_vertex(p, x);
                lists.pin_edge(split.pendant_edges[i], edges[i]);
            }
            extends.checked += 1;
            match solve_with(g, h, &lists, Mode::Partial, &solver)?.status {
                Status::Satisfiable(_) => {}
                Status::Unsatisfiable => {
                    if extends.holds {
                        extends.holds = false;
                        extends.counterexample = Some(describe(h, x, &edges));
                    }
                }
                Status::ResourceLimit => {
                    return Err(Error::TooLarge("gadget check ran out of budget".into()))
                }
            }
        }
    }

    let mut same_vertex = PropertyCheck {
        holds: true,
        checked: 0,
        counterexample: None,
    };
    let mut distinct_edges = same_vertex.clone();
    let enum_options = EnumOptions {
        mode: Mode::Partial,
        limit: Some(options.max_maps + 1),
        distinct_vertex_maps: false,
        solver,
    };
    let summary = for_each_cover(g, h, &ListAssignment::full(), &enum_options, |f| {
        let images: Vec<usize> = split.pendant_vertices.iter().map(|&p| f.vmap[p]).collect();
        let edges: Vec<usize> = split.pendant_edges.iter().map(|&e| f.emap[e]).collect();
        if same_vertex.holds && images.windows(2).any(|w| w[0] != w[1]) {
            same_vertex.holds = false;
            let ids: Vec<&str> = images.iter().map(|&x| h.vertex_id(x)).collect();
            same_vertex.counterexample = Some(format!("pendants sent to [{}]", ids.join(", ")));
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if distinct_edges.holds && sorted.len() < edges.len() {
            distinct_edges.holds = false;
            let ids: Vec<&str> = edges.iter().map(|&e| h.edge(e).id.as_str()).collect();
            distinct_edges.counterexample = Some(format!("pendant edges sent to [{}]", ids.join(", ")));
        }
        true
    })?;
    if summary.truncated {
        return Err(Error::TooLarge(format!(
            "gadget has more than {} partial covers",
            options.max_maps
        )));
    }
    if summary.resource_limit {
        return Err(Error::TooLarge("gadget check ran out of budget".into()));
    }
    same_vertex.checked = summary.count;
    distinct_edges.checked = summary.count;
    Ok(GadgetReport {
        extends,
        same_vertex,
        distinct_edges,
        partial_covers: summary.count,
    })
}
