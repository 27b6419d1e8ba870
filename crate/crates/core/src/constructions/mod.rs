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

//! Edge colourings, colored products, multicovers, split gadgets and the
//! product with `K_2`.

pub mod coloring;
pub mod gadget;
pub mod multicover;
pub mod product;


pub use coloring::{latin_square_coloring, proper_edge_coloring, EdgeColoring};
pub use gadget::{split_vertex, verify_gadget, GadgetCheckOptions, GadgetReport, SplitGadget};
pub use multicover::{default_plan_size, multicover, FactorPlan, Multicover, MulticoverOptions};
pub use product::{colored_product, ColoredFactor, ProductResult};

use crate::covering::CoverMap;
use crate::graph::{EdgeKind, Multigraph};

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| p[i - 1] < p[j]).expect("pivot has a successor");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// `g × K_2`: vertex `v` becomes `(v,b)` at index `2v` and `(v,w)` at
/// `2v+1`. An ordinary edge `e = xy` becomes `e.0 = (x,b)(y,w)` and
/// `e.1 = (x,w)(y,b)`; a loop becomes the double edge `e.0`, `e.1` across
/// its vertex pair; a semi-edge becomes the single edge `e.0`.
pub fn times_k2(g: &Multigraph) -> Multigraph {
    let mut out = Multigraph::new();
    for v in 0..g.vertex_count() {
        let id = g.vertex_id(v);
        out.add_vertex(format!("({id},b)")).expect("fresh");
        out.add_vertex(format!("({id},w)")).expect("fresh");
    }
    for edge in g.edges() {
        let [x, y] = edge.ends;
        let (b, w) = (|v: usize| 2 * v, |v: usize| 2 * v + 1);
        out.add_ordinary(format!("{}.0", edge.id), b(x), w(y))
            .expect("distinct sides");
        match edge.kind {
            EdgeKind::Ordinary => {
                out.add_ordinary(format!("{}.1", edge.id), w(x), b(y))
                    .expect("distinct sides");
            }
            EdgeKind::Loop => {
                out.add_ordinary(format!("{}.1", edge.id), b(x), w(y))
                    .expect("distinct sides");
            }
            EdgeKind::Semi => {}
        }
    }
    out
}

/// The covering projection `g × K_2 → g`.
pub fn k2_projection(g: &Multigraph) -> CoverMap {
    let mut emap = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        emap.push(e);
        if edge.kind != EdgeKind::Semi {
            emap.push(e);
        }
    }
    CoverMap {
        vmap: (0..2 * g.vertex_count()).map(|v| v / 2).collect(),
        emap,
    }
}
