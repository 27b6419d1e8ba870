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

//! Ring cover instances from cycle homomorphism and 4-colouring.

use crate::covering::ListAssignment;
use crate::error::{Error, Result};
use crate::graph::generate::{ring, ring_vertex};
use crate::graph::{Builder, Multigraph};

use super::gadgets::{edge_gadget, edge_gadget_at, one_gadget, vertex_gadget, zero_one_gadget, GadgetSpec};
use super::source::{SimpleGraph, SourceProblem};
use super::{Anchor, Encoding, Manifest, ReductionOutput};

/// Leaf pairs handed out to incident edges, one pair per edge.
struct VertexGadgets {
    /// `(black, white)` per pair, per source vertex.
    pairs: Vec<Vec<(usize, usize)>>,
    next: Vec<usize>,
}

impl VertexGadgets {
    fn build(b: &mut Builder, src: &SimpleGraph, k: usize) -> Result<VertexGadgets> {
        let inc = src.incident_edges();
        let mut pairs = Vec::new();
        for (v, edges) in inc.iter().enumerate() {
            if edges.is_empty() {
                pairs.push(Vec::new());
                continue;
            }
            let spec = vertex_gadget(k, edges.len())?;
            let map = b.instantiate(&spec.graph, &format!("V{}.", src.vertices[v]), &[]);
            pairs.push(
                (1..=edges.len())
                    .map(|j| {
                        (
                            map[spec.terminal(&format!("b{j}"))],
                            map[spec.terminal(&format!("w{j}"))],
                        )
                    })
                    .collect(),
            );
        }
        Ok(VertexGadgets {
            next: vec![0; pairs.len()],
            pairs,
        })
    }

    fn take(&mut self, v: usize) -> (usize, usize) {
        let p = self.pairs[v][self.next[v]];
        self.next[v] += 1;
        p
    }

    fn anchors(&self, g: &Multigraph, white_primary: bool) -> Vec<Anchor> {
        self.pairs
            .iter()
            .map(|pairs| {
                let ids = |pick: fn(&(usize, usize)) -> usize| -> Vec<String> {
                    pairs.iter().map(|p| g.vertex_id(pick(p)).to_owned()).collect()
                };
                let (black, white) = (ids(|p| p.0), ids(|p| p.1));
                if white_primary {
                    Anchor { primary: white, partner: black }
                } else {
                    Anchor { primary: black, partner: white }
                }
            })
            .collect()
    }
}

/// Glues an edge gadget between the next free leaf pairs of `u` and `v`.
fn attach(b: &mut Builder, gadget: &GadgetSpec, prefix: &str, u: (usize, usize), v: (usize, usize)) {
    let glue = [
        (gadget.terminal("ub"), u.0),
        (gadget.terminal("uw"), u.1),
        (gadget.terminal("vb"), v.0),
        (gadget.terminal("vw"), v.1),
    ];
    b.instantiate(&gadget.graph, prefix, &glue);
}

fn ring_instance(src: &SimpleGraph, k: usize, gadget: &GadgetSpec) -> Result<(Multigraph, VertexGadgets)> {
    let mut b = Builder::new();
    let mut vg = VertexGadgets::build(&mut b, src, k)?;
    for (t, &(u, v)) in src.edges.iter().enumerate() {
        let (pu, pv) = (vg.take(u), vg.take(v));
        attach(&mut b, gadget, &format!("E{t}."), pu, pv);
    }
    Ok((b.finish(), vg))
}

/// Cover of the `k`-ring, `k = 2^alpha (2 beta + 3)`, encoding
/// homomorphisms of `g` to `C_{2 beta + 3}`. No lists.
pub fn reduce_ring_hom(g: &Multigraph, alpha: u32, beta: usize) -> Result<ReductionOutput> {
    let src = SimpleGraph::from_multigraph(g)?;
    let m = 2 * beta + 3;
    let unit = 1usize
        .checked_shl(alpha)
        .filter(|u| u.checked_mul(m).is_some())
        .ok_or_else(|| Error::InvalidParameter(format!("alpha {alpha} too large")))?;
    let k = unit * m;
    let gadget = edge_gadget(k, alpha)?;
    let (graph, vg) = ring_instance(&src, k, &gadget)?;
    let anchors = vg.anchors(&graph, false);
    Ok(ReductionOutput {
        lists: ListAssignment::full(),
        target: ring(k)?,
        manifest: Manifest {
            source: SourceProblem::CycleHom { graph: src, m },
            target: format!("ring {k}"),
            encoding: Encoding::RingSteps { k, unit: 2 * unit },
            anchors,
        },
        graph,
    })
}

/// List cover of the `k`-ring, `k = 2^alpha` with `alpha >= 3`, encoding
/// list homomorphisms of `g` to `C_k`. `lists[v]` holds 0-based cycle
/// vertices.
pub fn reduce_ring_list(g: &Multigraph, lists: &[Vec<usize>], alpha: u32) -> Result<ReductionOutput> {
    if alpha < 3 {
        return Err(Error::InvalidParameter(format!("list ring reduction needs alpha >= 3, got {alpha}")));
    }
    let k = 1usize
        .checked_shl(alpha)
        .filter(|&k| k <= 64)
        .ok_or_else(|| Error::InvalidParameter(format!("alpha {alpha} too large")))?;
    let src = SimpleGraph::from_multigraph(g)?;
    if lists.len() != src.len() {
        return Err(Error::InvalidParameter(format!(
            "expected {} lists, got {}",
            src.len(),
            lists.len()
        )));
    }
    if let Some(&c) = lists.iter().flatten().find(|&&c| c >= k) {
        return Err(Error::InvalidParameter(format!("list entry {c} is not a vertex of C_{k}")));
    }
    let gadget = edge_gadget_at(k, 3)?;
    let (mut graph, vg) = ring_instance(&src, k, &gadget)?;
    let mut out_lists = ListAssignment::full();
    for (v, pairs) in vg.pairs.iter().enumerate() {
        let black: Vec<usize> = lists[v].iter().map(|&c| ring_vertex(k, c + 1, false)).collect();
        let white: Vec<usize> = lists[v].iter().map(|&c| ring_vertex(k, c + 1, true)).collect();
        for &(bl, wh) in pairs {
            out_lists.restrict_vertex(bl, black.iter().copied());
            out_lists.restrict_vertex(wh, white.iter().copied());
        }
        if pairs.is_empty() && lists[v].is_empty() {
            // An isolated vertex with nothing allowed: a vertex of degree 0
            // has no cover onto a cubic target.
            graph.add_vertex(format!("void.{}", src.vertices[v]))?;
        }
    }
    let anchors = vg.anchors(&graph, false);
    let lists = lists
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect();
    Ok(ReductionOutput {
        lists: out_lists,
        target: ring(k)?,
        manifest: Manifest {
            source: SourceProblem::ListCycleHom { graph: src, m: k, lists },
            target: format!("ring {k}"),
            encoding: Encoding::RingVertex { k },
            anchors,
        },
        graph,
    })
}

/// Cover of the 4-ring encoding 4-colourings of `g`. Each source edge
/// `uv` becomes the chain `u`, 1-gadget, vertex gadget, 0-1-gadget, vertex
/// gadget, 0-1-gadget, `v`, so the colour of `v` is the colour of `u`
/// shifted by 1, 2 or 3.
pub fn reduce_fourring(g: &Multigraph) -> Result<ReductionOutput> {
    let src = SimpleGraph::from_multigraph(g)?;
    let k = 4;
    let one = one_gadget();
    let zero_one = zero_one_gadget();
    let middle = vertex_gadget(k, 2)?;
    let mut b = Builder::new();
    let mut vg = VertexGadgets::build(&mut b, &src, k)?;
    let glue = |gadget: &GadgetSpec, left: (usize, usize), right: (usize, usize)| {
        [
            (gadget.terminal("lb"), left.0),
            (gadget.terminal("lw"), left.1),
            (gadget.terminal("rb"), right.0),
            (gadget.terminal("rw"), right.1),
        ]
    };
    for (t, &(u, v)) in src.edges.iter().enumerate() {
        let (pu, pv) = (vg.take(u), vg.take(v));
        let mut mid = Vec::new();
        for name in ["A", "B"] {
            let map = b.instantiate(&middle.graph, &format!("E{t}.{name}."), &[]);
            let pair = |j: usize| {
                (
                    map[middle.terminal(&format!("b{j}"))],
                    map[middle.terminal(&format!("w{j}"))],
                )
            };
            mid.push((pair(1), pair(2)));
        }
        b.instantiate(&one.graph, &format!("E{t}.one."), &glue(&one, pu, mid[0].0));
        b.instantiate(&zero_one.graph, &format!("E{t}.z1."), &glue(&zero_one, mid[0].1, mid[1].0));
        b.instantiate(&zero_one.graph, &format!("E{t}.z2."), &glue(&zero_one, mid[1].1, pv));
    }
    let graph = b.finish();
    let anchors = vg.anchors(&graph, true);
    Ok(ReductionOutput {
        lists: ListAssignment::full(),
        target: ring(k)?,
        manifest: Manifest {
            source: SourceProblem::Coloring { graph: src, colors: 4 },
            target: format!("ring {k}"),
            encoding: Encoding::RingPair { k },
            anchors,
        },
        graph,
    })
}
