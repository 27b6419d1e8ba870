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

//! Multicovers: a graph `G` with a vertex `u` whose incident edges can be
//! sent onto the edges at any vertex of `H` in every possible way.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::covering::CoverMap;
use crate::error::{Error, Result};
use crate::graph::generate::complete_bipartite;
use crate::graph::{EdgeKind, Multigraph};

use super::coloring::{latin_square_coloring, proper_edge_coloring, EdgeColoring};
use super::permutations;
use super::product::{colored_product, ColoredFactor};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorPlan {
    /// `k!` colour-permuted copies of `H` per vertex of `H`, then `K_{k,k}`
    /// if the product has parallel edges.
    #[default]
    Default,
    /// `G = H` with `u` its first vertex.
    #[serde(rename = "self")]
    SelfCover,
}

impl FromStr for FactorPlan {
    type Err = Error;

    fn from_str(s: &str) -> Result<FactorPlan> {
        match s {
            "default" => Ok(FactorPlan::Default),
            "self" => Ok(FactorPlan::SelfCover),
            _ => Err(Error::InvalidParameter(format!("unknown factor plan `{s}`"))),
        }
    }
}

impl fmt::Display for FactorPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorPlan::Default => "default",
            FactorPlan::SelfCover => "self",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MulticoverOptions {
    pub plan: FactorPlan,
    /// Refuse plans whose products exceed this many vertices.
    pub max_vertices: usize,
}

impl Default for MulticoverOptions {
    fn default() -> Self {
        MulticoverOptions {
            plan: FactorPlan::Default,
            max_vertices: 1 << 16,
        }
    }
}

/// Sending `u` to `x` with the edges at `u` mapped in order onto `edges`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Demand {
    pub x: usize,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Multicover {
    pub graph: Multigraph,
    pub u: usize,
    pub coloring: EdgeColoring,
    /// Covering projections onto `H` that come with the construction.
    pub projections: Vec<CoverMap>,
    pub plan: FactorPlan,
}

impl Multicover {
    /// Every vertex of `H` paired with every bijection from the edges at `u`.
    pub fn demands(&self, h: &Multigraph) -> Vec<Demand> {
        let at_u = self.graph.incident(self.u).len();
        let mut out = Vec::new();
        for x in 0..h.vertex_count() {
            let at_x = h.incident(x);
            if at_x.len() != at_u {
                continue;
            }
            for perm in permutations(at_u) {
                out.push(Demand {
                    x,
                    edges: perm.iter().map(|&i| at_x[i]).collect(),
                });
            }
        }
        out
    }

    /// The demand a projection realises.
    pub fn demand_of(&self, p: &CoverMap) -> Demand {
        Demand {
            x: p.vmap[self.u],
            edges: self.graph.incident(self.u).iter().map(|&e| p.emap[e]).collect(),
        }
    }

    /// Demands not realised by any provided projection.
    pub fn missing_demands(&self, h: &Multigraph) -> Vec<Demand> {
        let got: Vec<Demand> = self.projections.iter().map(|p| self.demand_of(p)).collect();
        self.demands(h).into_iter().filter(|d| !got.contains(d)).collect()
    }
}

fn check_target(h: &Multigraph) -> Result<usize> {
    if h.edges().iter().any(|e| e.kind != EdgeKind::Ordinary) {
        return Err(Error::Precondition("multicover target has loops or semi-edges".into()));
    }
    if !h.is_connected() || h.vertex_count() == 0 {
        return Err(Error::Precondition("multicover target must be connected and non-empty".into()));
    }
    h.regular_degree()
        .ok_or_else(|| Error::Precondition("multicover target must be regular".into()))
}

/// Vertex count of the default plan as `n^(n*k!)`, and its value if it fits.
pub fn default_plan_size(n: usize, k: usize) -> (String, Option<usize>) {
    let factors = (1..=k).try_fold(n, |acc, i| acc.checked_mul(i));
    let value = factors.and_then(|f| u32::try_from(f).ok()).and_then(|f| n.checked_pow(f));
    let exponent = factors.map_or_else(|| format!("{n}*{k}!"), |f| f.to_string());
    (format!("{n}^{exponent}"), value)
}

/// Builds a multicover of `h` under the chosen plan.
pub fn multicover(h: &Multigraph, options: &MulticoverOptions) -> Result<Multicover> {
    let k = check_target(h)?;
    let base = proper_edge_coloring(h, k)?;
    if options.plan == FactorPlan::SelfCover {
        return Ok(Multicover {
            graph: h.clone(),
            u: 0,
            coloring: base,
            projections: vec![CoverMap::identity(h)],
            plan: FactorPlan::SelfCover,
        });
    }

    let n = h.vertex_count();
    let (estimate, size) = default_plan_size(n, k);
    let too_large = || {
        Error::TooLarge(format!(
            "default multicover plan needs {estimate} vertices (limit {})",
            options.max_vertices
        ))
    };
    if size.is_none_or(|s| s > options.max_vertices) {
        return Err(too_large());
    }
    let perms = permutations(k);
    let mut factors = Vec::new();
    let mut u = 0;
    for x in 0..n {
        for perm in &perms {
            factors.push(ColoredFactor::new(h.clone(), base.permuted(perm))?);
            u = u * n + x;
        }
    }
    let mut result = colored_product(&factors)?;
    if result.product.has_parallel_edges() {
        if result.product.vertex_count().saturating_mul(2 * k) > options.max_vertices {
            return Err(too_large());
        }
        let kkk = ColoredFactor::new(complete_bipartite(k)?, latin_square_coloring(k))?;
        let first = ColoredFactor::new(result.product, result.product_coloring)?;
        let outer = colored_product(&[first, kkk])?;
        let to_first = &outer.projections[0];
        result.projections = result.projections.iter().map(|p| to_first.then(p)).collect();
        result.product = outer.product;
        result.product_coloring = outer.product_coloring;
        u *= 2 * k;
    }
    let u_id = result.product.vertex_id(u).to_owned();
    let result = result.component_of(u);
    let u = result.product.vertex(&u_id).expect("u is in its own component");
    Ok(Multicover {
        graph: result.product,
        u,
        coloring: result.product_coloring,
        projections: result.projections,
        plan: FactorPlan::Default,
    })
}
