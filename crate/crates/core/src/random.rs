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

//! Seeded random instances: multigraphs, cubic multigraphs, random lifts
//! (covers with a planted projection) and list assignments.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::covering::{CoverMap, ListAssignment};
use crate::graph::{EdgeKind, Multigraph};

pub use rand::SeedableRng;

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn numbered(n: usize) -> Multigraph {
    let mut g = Multigraph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).expect("fresh id");
    }
    g
}

/// `m` edges on `n` vertices; each is a loop, a semi-edge or an ordinary
/// edge with the given probabilities (the rest ordinary).
pub fn multigraph(rng: &mut InstanceRng, n: usize, m: usize, p_loop: f64, p_semi: f64) -> Multigraph {
    let mut g = numbered(n);
    if n == 0 {
        return g;
    }
    for i in 0..m {
        let r: f64 = rng.gen();
        let a = rng.gen_range(0..n);
        let id = format!("e{i}");
        if r < p_loop {
            g.add_loop(id, a).expect("valid");
        } else if r < p_loop + p_semi || n == 1 {
            g.add_semi(id, a).expect("valid");
        } else {
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            g.add_ordinary(id, a, b).expect("valid");
        }
    }
    g
}

/// A cubic multigraph on `n` vertices by random pairing of edge-ends. Each
/// end becomes a semi-edge with probability `p_semi`; two ends of one
/// vertex paired together form a loop.
pub fn cubic(rng: &mut InstanceRng, n: usize, p_semi: f64) -> Multigraph {
    let mut g = numbered(n);
    let mut ends = Vec::new();
    let mut next = 0;
    for v in 0..n {
        for _ in 0..3 {
            if rng.gen_bool(p_semi) {
                g.add_semi(format!("e{next}"), v).expect("valid");
                next += 1;
            } else {
                ends.push(v);
            }
        }
    }
    ends.shuffle(rng);
    if ends.len() % 2 == 1 {
        let v = ends.pop().expect("odd, so non-empty");
        g.add_semi(format!("e{next}"), v).expect("valid");
        next += 1;
    }
    for pair in ends.chunks(2) {
        let id = format!("e{next}");
        next += 1;
        if pair[0] == pair[1] {
            g.add_loop(id, pair[0]).expect("valid");
        } else {
            g.add_ordinary(id, pair[0], pair[1]).expect("valid");
        }
    }
    g
}

/// A random `n`-fold lift of `h` with its projection. Ordinary edges lift
/// along a random permutation, loops along a random permutation of the
/// fibre (fixed points stay loops), semi-edges along a random involution
/// (fixed points stay semi-edges).
pub fn lift(rng: &mut InstanceRng, h: &Multigraph, n: usize) -> (Multigraph, CoverMap) {
    let mut g = Multigraph::new();
    let mut vmap = Vec::new();
    for x in 0..h.vertex_count() {
        for i in 0..n {
            g.add_vertex(format!("{}.{i}", h.vertex_id(x))).expect("fresh id");
            vmap.push(x);
        }
    }
    let at = |x: usize, i: usize| x * n + i;
    let mut emap = Vec::new();
    for (t, e) in h.edges().iter().enumerate() {
        let [x, y] = e.ends;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        match e.kind {
            EdgeKind::Ordinary => {
                for i in 0..n {
                    g.add_ordinary(format!("{}.{i}", e.id), at(x, i), at(y, perm[i]))
                        .expect("valid");
                    emap.push(t);
                }
            }
            EdgeKind::Loop => {
                for i in 0..n {
                    let id = format!("{}.{i}", e.id);
                    if perm[i] == i {
                        g.add_loop(id, at(x, i)).expect("valid");
                    } else {
                        g.add_ordinary(id, at(x, i), at(x, perm[i])).expect("valid");
                    }
                    emap.push(t);
                }
            }
            EdgeKind::Semi => {
                // Pair up a random prefix of the shuffled fibre.
                let pairs = rng.gen_range(0..=n / 2);
                for p in 0..pairs {
                    let (a, b) = (perm[2 * p], perm[2 * p + 1]);
                    g.add_ordinary(format!("{}.{a}", e.id), at(x, a), at(x, b))
                        .expect("valid");
                    emap.push(t);
                }
                for &a in &perm[2 * pairs..] {
                    g.add_semi(format!("{}.{a}", e.id), at(x, a)).expect("valid");
                    emap.push(t);
                }
            }
        }
    }
    (g, CoverMap { vmap, emap })
}

/// List density for random list assignments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Density {
    Full,
    /// Every list keeps each target with probability 1/2.
    Half,
    /// A third of the elements get a one-element list.
    Singleton,
}

impl Density {
    pub const ALL: [Density; 3] = [Density::Full, Density::Half, Density::Singleton];
}

/// Random lists. With a `planted` map, every list keeps the planted image
/// with probability 3/4, which keeps a fair share of instances solvable.
pub fn lists(
    rng: &mut InstanceRng,
    g: &Multigraph,
    h: &Multigraph,
    density: Density,
    planted: Option<&CoverMap>,
) -> ListAssignment {
    let mut lists = ListAssignment::full();
    let pick = |rng: &mut InstanceRng, size: usize, planted: Option<usize>| -> Vec<usize> {
        match density {
            Density::Full => (0..size).collect(),
            Density::Half => {
                let keep_planted = planted.filter(|_| rng.gen_bool(0.75));
                (0..size)
                    .filter(|&x| Some(x) == keep_planted || rng.gen_bool(0.5))
                    .collect()
            }
            Density::Singleton => match planted.filter(|_| rng.gen_bool(0.75)) {
                Some(x) => vec![x],
                None if size == 0 => Vec::new(),
                None => vec![rng.gen_range(0..size)],
            },
        }
    };
    if density == Density::Full {
        return lists;
    }
    for v in 0..g.vertex_count() {
        if density == Density::Singleton && !rng.gen_bool(1.0 / 3.0) {
            continue;
        }
        let l = pick(rng, h.vertex_count(), planted.map(|f| f.vmap[v]));
        lists.restrict_vertex(v, l);
    }
    for e in 0..g.edge_count() {
        if density == Density::Singleton && !rng.gen_bool(1.0 / 3.0) {
            continue;
        }
        let l = pick(rng, h.edge_count(), planted.map(|f| f.emap[e]));
        lists.restrict_edge(e, l);
    }
    lists
}

/// Shuffles vertex and edge order; returns the graph and the old-to-new
/// vertex and edge indices.
pub fn shuffle(rng: &mut InstanceRng, g: &Multigraph) -> (Multigraph, Vec<usize>, Vec<usize>) {
    let mut vorder: Vec<usize> = (0..g.vertex_count()).collect();
    let mut eorder: Vec<usize> = (0..g.edge_count()).collect();
    vorder.shuffle(rng);
    eorder.shuffle(rng);
    let mut vnew = vec![0; g.vertex_count()];
    let mut out = Multigraph::new();
    for &v in &vorder {
        vnew[v] = out.add_vertex(g.vertex_id(v)).expect("ids are unique");
    }
    let mut enew = vec![0; g.edge_count()];
    for &e in &eorder {
        let edge = g.edge(e);
        enew[e] = out
            .add_edge(edge.id.clone(), edge.kind, vnew[edge.ends[0]], vnew[edge.ends[1]])
            .expect("valid");
    }
    (out, vnew, enew)
}
