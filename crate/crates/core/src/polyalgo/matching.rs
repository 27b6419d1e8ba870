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

//! Maximum cardinality matching in general graphs (Edmonds' blossom
//! algorithm, O(V^3)).

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{EdgeKind, Multigraph};

const NIL: usize = usize::MAX;

/// A set of pairwise disjoint ordinary edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    /// Edge indices, ascending.
    pub edges: Vec<usize>,
    pub perfect: bool,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Whether the edges are ordinary and pairwise disjoint.
    pub fn is_valid(&self, g: &Multigraph) -> bool {
        let mut used = vec![false; g.vertex_count()];
        self.edges.iter().all(|&e| {
            let edge = g.edge(e);
            if edge.kind != EdgeKind::Ordinary {
                return false;
            }
            let [a, b] = edge.ends;
            let ok = !used[a] && !used[b];
            used[a] = true;
            used[b] = true;
            ok
        })
    }
}

struct Blossom {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_queue: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NIL {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches for an augmenting path from `root`; returns its free end.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.in_queue.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NIL);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.queue.push_back(root);
        self.in_queue[root] = true;
        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NIL && self.parent[self.mate[to]] != NIL) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for u in 0..n {
                        if self.in_blossom[self.base[u]] {
                            self.base[u] = cur;
                            if !self.in_queue[u] {
                                self.in_queue[u] = true;
                                self.queue.push_back(u);
                            }
                        }
                    }
                } else if self.parent[to] == NIL {
                    self.parent[to] = v;
                    if self.mate[to] == NIL {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.in_queue[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }
}

/// A maximum matching over the ordinary edges of `g`. Loops and semi-edges
/// are ignored. Deterministic: ties resolve by vertex and edge order.
pub fn maximum_matching(g: &Multigraph) -> Matching {
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        if e.kind == EdgeKind::Ordinary {
            let [a, b] = e.ends;
            if !adj[a].contains(&b) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    let mut m = Blossom {
        adj,
        mate: vec![NIL; n],
        parent: vec![NIL; n],
        base: (0..n).collect(),
        in_queue: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    // Greedy start.
    for v in 0..n {
        if m.mate[v] == NIL {
            if let Some(&w) = m.adj[v].iter().find(|&&w| m.mate[w] == NIL) {
                m.mate[v] = w;
                m.mate[w] = v;
            }
        }
    }
    for v in 0..n {
        if m.mate[v] != NIL {
            continue;
        }
        if let Some(mut u) = m.find_path(v) {
            while u != NIL {
                let pv = m.parent[u];
                let ppv = m.mate[pv];
                m.mate[u] = pv;
                m.mate[pv] = u;
                u = ppv;
            }
        }
    }
    // Lowest-index edge for each matched pair.
    let mut edges = Vec::new();
    let mut taken = vec![false; n];
    for (i, e) in g.edges().iter().enumerate() {
        let [a, b] = e.ends;
        if e.kind == EdgeKind::Ordinary && m.mate[a] == b && !taken[a] {
            taken[a] = true;
            taken[b] = true;
            edges.push(i);
        }
    }
    let perfect = 2 * edges.len() == n;
    Matching { edges, perfect }
}
