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

//! Rainbow colouring of a bi-regular incidence graph to list cover.

use crate::constructions::{verify_gadget, GadgetCheckOptions, SplitGadget};
use crate::covering::ListAssignment;
use crate::error::{Error, Result};
use crate::graph::{Builder, EdgeKind, Multigraph};

use super::source::{SimpleGraph, SourceProblem};
use super::{Anchor, Encoding, Manifest, ReductionOutput};

/// First vertex of `h` with no loops, semi-edges or parallel edges.
fn simple_vertex(h: &Multigraph) -> Option<usize> {
    (0..h.vertex_count()).find(|&x| {
        let mut seen = Vec::new();
        h.incident(x).iter().all(|&e| {
            let edge = h.edge(e);
            let y = edge.other(x);
            let fresh = edge.kind == EdgeKind::Ordinary && !seen.contains(&y);
            seen.push(y);
            fresh
        })
    })
}

/// List cover instance of `h` that is satisfiable iff the `a` side of
/// `incidence` (degree `k-1`) can be coloured with `k` colours so that every
/// `b` vertex (degree `k`) sees each colour once. `gadget` must have `k`
/// pendants and pass [`verify_gadget`] against `h`.
pub fn reduce_hypergraph(
    incidence: &Multigraph,
    h: &Multigraph,
    gadget: &SplitGadget,
) -> Result<ReductionOutput> {
    let k = h
        .regular_degree()
        .filter(|&k| k >= 3)
        .ok_or_else(|| Error::Precondition("target must be k-regular with k >= 3".into()))?;
    if gadget.k() != k {
        return Err(Error::Precondition(format!(
            "gadget has {} pendants, target degree is {k}",
            gadget.k()
        )));
    }
    let x = simple_vertex(h).ok_or_else(|| Error::Precondition("target has no simple vertex".into()))?;
    let src = SimpleGraph::from_multigraph(incidence)?;
    let adj = src.adjacency();
    let (mut a_side, mut b_side) = (Vec::new(), Vec::new());
    for (v, nb) in adj.iter().enumerate() {
        match nb.len() {
            d if d == k - 1 => a_side.push(v),
            d if d == k => b_side.push(v),
            d => {
                return Err(Error::Precondition(format!(
                    "vertex `{}` has degree {d}; expected {} or {k}",
                    src.vertices[v],
                    k - 1
                )))
            }
        }
    }
    if let Some(&(u, v)) = src
        .edges
        .iter()
        .find(|&&(u, v)| adj[u].len() == adj[v].len())
    {
        return Err(Error::Precondition(format!(
            "edge {}-{} joins two vertices of the same side",
            src.vertices[u], src.vertices[v]
        )));
    }
    let report = verify_gadget(gadget, h, &GadgetCheckOptions::default())?;
    if !report.all_hold() {
        let failed = [&report.extends, &report.same_vertex, &report.distinct_edges]
            .into_iter()
            .find_map(|c| c.counterexample.clone())
            .unwrap_or_default();
        return Err(Error::Precondition(format!("gadget fails verification: {failed}")));
    }

    let part = &gadget.graph;
    let pend = &gadget.pendant_vertices;
    let pendant_edge = gadget.pendant_edges[0];
    let q = part.edge(pendant_edge).other(pend[0]);
    if pend.contains(&q) {
        return Err(Error::Precondition("gadget pendants are adjacent".into()));
    }
    let name = |v: usize| &src.vertices[v];
    let mut b = Builder::new();
    let mut lists = ListAssignment::full();

    // Per b vertex: a copy of the gadget plus B_v. (u, w) per incident a.
    let mut bv = vec![usize::MAX; src.len()];
    let mut uw = vec![Vec::new(); src.len()];
    for &v in &b_side {
        let hub = b.vertex(format!("B{}", name(v)));
        lists.pin_vertex(hub, x);
        bv[v] = hub;
        let map = b.instantiate(part, &format!("B{}.", name(v)), &[]);
        for (i, &a) in adj[v].iter().enumerate() {
            let u = map[pend[i]];
            let w = map[part.edge(gadget.pendant_edges[i]).other(pend[i])];
            uw[v].push((a, u, w));
        }
    }

    let mut anchors = Vec::with_capacity(a_side.len());
    for &a in &a_side {
        let ell: Vec<usize> = (1..k).map(|i| b.vertex(format!("A{}.l{i}", name(a)))).collect();
        let r: Vec<usize> = (1..k).map(|i| b.vertex(format!("A{}.r{i}", name(a)))).collect();
        let mut anchor = Anchor {
            primary: r.iter().map(|&v| b.graph().vertex_id(v).to_owned()).collect(),
            partner: Vec::new(),
        };
        for &l in &ell {
            lists.pin_vertex(l, x);
        }
        for &v in &adj[a] {
            let &(_, u, w) = uw[v].iter().find(|t| t.0 == a).expect("incident");
            let mut glue: Vec<(usize, usize)> = vec![(pend[0], bv[v])];
            glue.extend(pend[1..].iter().zip(&ell).map(|(&p, &l)| (p, l)));
            let left = b.instantiate(part, &format!("A{}.L{}.", name(a), name(v)), &glue);
            // Pendant 0 of the right copy and its neighbour coincide with w
            // and u; their edge is the one already joining them.
            let mut glue: Vec<(usize, usize)> = vec![(pend[0], w), (q, u)];
            glue.extend(pend[1..].iter().zip(&r).map(|(&p, &rr)| (p, rr)));
            b.instantiate_skipping(part, &format!("A{}.R{}.", name(a), name(v)), &glue, &[pendant_edge]);
            let g = b.graph();
            anchor.primary.push(g.vertex_id(w).to_owned());
            anchor.primary.push(g.vertex_id(left[q]).to_owned());
            anchor.partner.push(g.vertex_id(u).to_owned());
        }
        for (&l, &rr) in ell.iter().zip(&r) {
            b.ordinary(l, rr);
        }
        anchors.push(anchor);
    }
    let graph = b.finish();
    let neighbours = h
        .incident(x)
        .iter()
        .map(|&e| h.vertex_id(h.edge(e).other(x)).to_owned())
        .collect();
    Ok(ReductionOutput {
        lists,
        target: h.clone(),
        manifest: Manifest {
            source: SourceProblem::Rainbow {
                incidence: src,
                a: a_side,
                b: b_side,
                k,
            },
            target: "given".into(),
            encoding: Encoding::Neighbours {
                x: h.vertex_id(x).to_owned(),
                neighbours,
            },
            anchors,
        },
        graph,
    })
}
