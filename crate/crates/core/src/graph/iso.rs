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

//! Isomorphism of small multigraphs by colour refinement and backtracking.
//!
//! Parallel semi-edges (and parallel loops) at a vertex are interchangeable;
//! only their number matters. Worst-case running time is exponential.

use std::collections::HashMap;

use super::{EdgeKind, Multigraph};

/// A vertex bijection together with a kind-preserving edge bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vmap: Vec<usize>,
    pub emap: Vec<usize>,
}

impl Isomorphism {
    /// Checks that the maps are bijections preserving kinds and incidence.
    pub fn verify(&self, g: &Multigraph, h: &Multigraph) -> bool {
        if self.vmap.len() != g.vertex_count()
            || self.emap.len() != g.edge_count()
            || g.vertex_count() != h.vertex_count()
            || g.edge_count() != h.edge_count()
        {
            return false;
        }
        let mut hit_v = vec![false; h.vertex_count()];
        for &x in &self.vmap {
            if x >= hit_v.len() || std::mem::replace(&mut hit_v[x], true) {
                return false;
            }
        }
        let mut hit_e = vec![false; h.edge_count()];
        for (e, &f) in self.emap.iter().enumerate() {
            if f >= hit_e.len() || std::mem::replace(&mut hit_e[f], true) {
                return false;
            }
            let (ge, he) = (g.edge(e), h.edge(f));
            if ge.kind != he.kind {
                return false;
            }
            let mut a = [self.vmap[ge.ends[0]], self.vmap[ge.ends[1]]];
            let mut b = he.ends;
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return false;
            }
        }
        true
    }
}

fn pair_multiplicities(g: &Multigraph) -> HashMap<(usize, usize), usize> {
    let mut m = HashMap::new();
    for e in g.edges() {
        if e.kind == EdgeKind::Ordinary {
            let (a, b) = (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]));
            *m.entry((a, b)).or_insert(0) += 1;
        }
    }
    m
}

/// Stable colouring of both graphs with a shared palette.
fn refine(g: &Multigraph, h: &Multigraph) -> (Vec<usize>, Vec<usize>) {
    let init = |x: &Multigraph| -> Vec<(usize, usize, usize)> {
        (0..x.vertex_count())
            .map(|v| (x.degree(v), x.loops_at(v), x.semis_at(v)))
            .collect()
    };
    let mut palette: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut assign = |sig: &[(usize, usize, usize)]| -> Vec<usize> {
        sig.iter()
            .map(|s| {
                let n = palette.len();
                *palette.entry(*s).or_insert(n)
            })
            .collect()
    };
    let mut cg = assign(&init(g));
    let mut ch = assign(&init(h));
    let classes = |c: &[usize], d: &[usize]| {
        let mut all: Vec<usize> = c.iter().chain(d).copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    let mut count = classes(&cg, &ch);
    loop {
        let mut palette: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut step = |x: &Multigraph, c: &[usize]| -> Vec<usize> {
            (0..x.vertex_count())
                .map(|v| {
                    let mut nb: Vec<usize> = x.neighbors(v).map(|w| c[w]).collect();
                    nb.sort_unstable();
                    let sig = (c[v], nb);
                    let n = palette.len();
                    *palette.entry(sig).or_insert(n)
                })
                .collect()
        };
        let ng = step(g, &cg);
        let nh = step(h, &ch);
        let n = classes(&ng, &nh);
        cg = ng;
        ch = nh;
        if n == count {
            break;
        }
        count = n;
    }
    (cg, ch)
}

/// Returns an isomorphism from `g` onto `h` preserving edge kinds and
/// multiplicities, or `None`.
pub fn are_isomorphic(g: &Multigraph, h: &Multigraph) -> Option<Isomorphism> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.vertex_count();
    let (cg, ch) = refine(g, h);
    let mut hist_g = cg.clone();
    let mut hist_h = ch.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return None;
    }
    let mg = pair_multiplicities(g);
    let mh = pair_multiplicities(h);
    let mult = |m: &HashMap<(usize, usize), usize>, a: usize, b: usize| {
        m.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    };

    // Vertex order: rarest colour first, then breadth-first so that each
    // vertex after the first in a component has a mapped neighbour.
    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in &cg {
        *class_size.entry(c).or_insert(0) += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let start = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (class_size[&cg[v]], v))
            .expect("unplaced vertex");
        placed[start] = true;
        let mut i = order.len();
        order.push(start);
        while i < order.len() {
            let v = order[i];
            i += 1;
            let mut nb: Vec<usize> = g.neighbors(v).filter(|&w| !placed[w]).collect();
            nb.sort_unstable_by_key(|&w| (class_size[&cg[w]], w));
            nb.dedup();
            for w in nb {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
        }
    }

    let mut vmap = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn extend(
        i: usize,
        order: &[usize],
        h: &Multigraph,
        cg: &[usize],
        ch: &[usize],
        vmap: &mut [usize],
        used: &mut [bool],
        mult: &dyn Fn(bool, usize, usize) -> usize,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for x in 0..h.vertex_count() {
            if used[x] || ch[x] != cg[v] {
                continue;
            }
            let consistent = order[..i]
                .iter()
                .all(|&u| mult(true, v, u) == mult(false, x, vmap[u]));
            if !consistent {
                continue;
            }
            vmap[v] = x;
            used[x] = true;
            if extend(i + 1, order, h, cg, ch, vmap, used, mult) {
                return true;
            }
            used[x] = false;
            vmap[v] = usize::MAX;
        }
        false
    }
    let lookup = |in_g: bool, a: usize, b: usize| {
        if in_g {
            mult(&mg, a, b)
        } else {
            mult(&mh, a, b)
        }
    };
    if !extend(0, &order, h, &cg, &ch, &mut vmap, &mut used, &lookup) {
        return None;
    }

    // Edges: match parallel classes in id order.
    let mut classes_h: HashMap<(EdgeKind, usize, usize), Vec<usize>> = HashMap::new();
    for (f, e) in h.edges().iter().enumerate() {
        let (a, b) = (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]));
        classes_h.entry((e.kind, a, b)).or_default().push(f);
    }
    for list in classes_h.values_mut() {
        list.reverse();
    }
    let mut emap = vec![usize::MAX; g.edge_count()];
    for (e, edge) in g.edges().iter().enumerate() {
        let (a, b) = (vmap[edge.ends[0]], vmap[edge.ends[1]]);
        let key = (edge.kind, a.min(b), a.max(b));
        emap[e] = classes_h.get_mut(&key)?.pop()?;
    }
    let iso = Isomorphism { vmap, emap };
    debug_assert!(iso.verify(g, h));
    Some(iso)
}
