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

//! Gadget reductions onto covering problems.
//!
//! * [`reduce_ring_hom`]: homomorphism to an odd cycle to ring cover.
//! * [`reduce_ring_list`]: list homomorphism to `C_k` to list ring cover.
//! * [`reduce_fourring`]: 4-colouring to 4-ring cover.
//! * [`reduce_hypergraph`]: rainbow colouring of a bi-regular incidence
//!   graph to list cover of a regular bipartite target.
//! * [`lift_via_k2`]: list cover of `S × K_2` by list cover of `S`.
//!
//! Every reduction returns the instance together with a [`Manifest`] from
//! which covers translate back into source certificates.

pub mod gadgets;
mod hypergraph;
mod lift;
mod ring;
pub mod source;

#[cfg(test)]
mod tests;

use serde::{Deserialize, Serialize};

use crate::covering::{CoverMap, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::generate::ring as ring_graph;
use crate::graph::Multigraph;
use crate::solver::{solve, Budget, Status};

pub use gadgets::{
    behavior_table, edge_gadget, edge_gadget_at, enforcing_gadget, one_gadget, vertex_gadget,
    zero_one_gadget, BehaviorTable, GadgetKind, GadgetSpec,
};
pub use hypergraph::reduce_hypergraph;
pub use lift::lift_via_k2;
pub use ring::{reduce_fourring, reduce_ring_hom, reduce_ring_list};
pub use source::{Certificate, SimpleGraph, SourceProblem};

/// How target vertices encode source colours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Encoding {
    /// Colours are steps of `unit` ring positions, after rotating each
    /// source component so its first anchor sits on a multiple of `unit`.
    RingSteps { k: usize, unit: usize },
    /// Colour `j` is ring vertex `j+1`.
    RingVertex { k: usize },
    /// Colour `j` is the pair `j+1`, `(j+1)'`.
    RingPair { k: usize },
    /// Colour `j` is the `j`-th neighbour of `x`.
    Neighbours { x: String, neighbours: Vec<String> },
}

/// Instance vertices carrying one source colour slot. `primary` vertices
/// take the colour vertex, `partner` vertices its partner.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchor {
    pub primary: Vec<String>,
    pub partner: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub source: SourceProblem,
    /// Target description, e.g. `ring 3`.
    pub target: String,
    pub encoding: Encoding,
    /// One per certificate slot.
    pub anchors: Vec<Anchor>,
}

/// An emitted instance with its translation data.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub graph: Multigraph,
    pub lists: ListAssignment,
    pub target: Multigraph,
    pub manifest: Manifest,
}

impl ReductionOutput {
    pub fn back_translate(&self, f: &CoverMap) -> Result<Certificate> {
        back_translate(&self.manifest, &self.graph, &self.target, f)
    }

    pub fn forward_hint(&self, cert: &Certificate) -> Result<ListAssignment> {
        forward_hint(&self.manifest, &self.graph, &self.target, &self.lists, cert)
    }

    /// Extends the hinted pins to a cover with the solver.
    pub fn complete_hint(&self, cert: &Certificate, budget: Budget) -> Result<Option<CoverMap>> {
        let lists = self.forward_hint(cert)?;
        match solve(&self.graph, &self.target, &lists, budget)?.status {
            Status::Satisfiable(f) => Ok(Some(f)),
            Status::Unsatisfiable => Ok(None),
            Status::ResourceLimit => Err(Error::TooLarge("hint completion ran out of budget".into())),
        }
    }
}

fn lookup(g: &Multigraph, id: &str) -> Result<usize> {
    g.vertex(id).ok_or_else(|| Error::UnknownVertex(id.to_owned()))
}

/// Position of target vertex `x` on the `k`-ring, by id.
fn ring_position(h: &Multigraph, x: usize, k: usize) -> Result<usize> {
    let r = ring_graph(k)?;
    r.vertex(h.vertex_id(x))
        .ok_or_else(|| Error::Certificate(format!("`{}` is not a vertex of the {k}-ring", h.vertex_id(x))))
}

fn ring_target(h: &Multigraph, r: usize, k: usize) -> Result<usize> {
    let ring = ring_graph(k)?;
    lookup(h, ring.vertex_id(r % (2 * k)))
}

/// Colour for a slot without anchors.
fn default_colour(source: &SourceProblem, slot: usize) -> usize {
    match source {
        SourceProblem::ListCycleHom { lists, .. } => lists[slot].first().copied().unwrap_or(0),
        _ => 0,
    }
}

/// Reads a source certificate off a cover of the emitted instance.
pub fn back_translate(
    manifest: &Manifest,
    g: &Multigraph,
    h: &Multigraph,
    f: &CoverMap,
) -> Result<Certificate> {
    if f.vmap.len() != g.vertex_count() {
        return Err(Error::Certificate("cover does not match the instance".into()));
    }
    let image = |slot: usize| -> Result<Option<usize>> {
        match manifest.anchors[slot].primary.first() {
            Some(id) => Ok(Some(f.vmap[lookup(g, id)?])),
            None => Ok(None),
        }
    };
    let slots = manifest.anchors.len();
    let mut colors = Vec::with_capacity(slots);
    match &manifest.encoding {
        Encoding::RingSteps { k, unit } => {
            let len = 2 * k;
            let comp = match &manifest.source {
                SourceProblem::CycleHom { graph, .. } => graph.component_ids(),
                _ => (0..slots).collect(),
            };
            let mut base: Vec<Option<usize>> = vec![None; slots];
            for s in 0..slots {
                let Some(x) = image(s)? else {
                    colors.push(default_colour(&manifest.source, s));
                    continue;
                };
                let r = ring_position(h, x, *k)?;
                let b = *base[comp[s]].get_or_insert(r % unit);
                let diff = (r + len - b) % len;
                if !diff.is_multiple_of(*unit) {
                    return Err(Error::Certificate(format!(
                        "ring position {r} is not {b} modulo {unit}"
                    )));
                }
                colors.push(diff / unit);
            }
        }
        Encoding::RingVertex { k } => {
            for s in 0..slots {
                match image(s)? {
                    Some(x) => {
                        let r = ring_position(h, x, *k)?;
                        if r % 2 == 1 {
                            return Err(Error::Certificate(format!(
                                "anchor of slot {s} sits on a primed vertex"
                            )));
                        }
                        colors.push(r / 2);
                    }
                    None => colors.push(default_colour(&manifest.source, s)),
                }
            }
        }
        Encoding::RingPair { k } => {
            for s in 0..slots {
                match image(s)? {
                    Some(x) => colors.push(ring_position(h, x, *k)? / 2),
                    None => colors.push(default_colour(&manifest.source, s)),
                }
            }
        }
        Encoding::Neighbours { neighbours, .. } => {
            for s in 0..slots {
                let x = image(s)?.ok_or_else(|| Error::Certificate(format!("slot {s} has no anchor")))?;
                let id = h.vertex_id(x);
                let c = neighbours
                    .iter()
                    .position(|n| n == id)
                    .ok_or_else(|| Error::Certificate(format!("`{id}` is not a colour vertex")))?;
                colors.push(c);
            }
        }
    }
    Ok(Certificate { colors })
}

/// Pins the anchors of every slot according to `cert`, on top of `lists`.
pub fn forward_hint(
    manifest: &Manifest,
    g: &Multigraph,
    h: &Multigraph,
    lists: &ListAssignment,
    cert: &Certificate,
) -> Result<ListAssignment> {
    manifest.source.verify(cert)?;
    let mut out = lists.clone();
    for (s, anchor) in manifest.anchors.iter().enumerate() {
        let c = cert.colors[s];
        let (primary, partner) = match &manifest.encoding {
            Encoding::RingSteps { k, unit } => (ring_target(h, unit * c, *k)?, ring_target(h, unit * c + 1, *k)?),
            Encoding::RingVertex { k } | Encoding::RingPair { k } => {
                (ring_target(h, 2 * c, *k)?, ring_target(h, 2 * c + 1, *k)?)
            }
            Encoding::Neighbours { x, neighbours } => (lookup(h, &neighbours[c])?, lookup(h, x)?),
        };
        for id in &anchor.primary {
            out.pin_vertex(lookup(g, id)?, primary);
        }
        for id in &anchor.partner {
            out.pin_vertex(lookup(g, id)?, partner);
        }
    }
    Ok(out)
}
