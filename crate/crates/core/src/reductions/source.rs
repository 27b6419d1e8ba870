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

//! Source problems of the reductions, their certificates and brute-force
//! solvers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph};

/// A simple graph by vertex ids and index pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn from_multigraph(g: &Multigraph) -> Result<SimpleGraph> {
        if !g.is_simple() {
            return Err(Error::Precondition("source graph must be simple".into()));
        }
        Ok(SimpleGraph {
            vertices: g.vertex_ids().to_vec(),
            edges: g
                .edges()
                .iter()
                .filter(|e| e.kind == EdgeKind::Ordinary)
                .map(|e| (e.ends[0], e.ends[1]))
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Edge indices at every vertex, in edge order.
    pub fn incident_edges(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.len()];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push(i);
            inc[b].push(i);
        }
        inc
    }

    /// Component index of every vertex, numbered by smallest vertex.
    pub fn component_ids(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.len()];
        let mut next = 0;
        for s in 0..self.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "kebab-case")]
pub enum SourceProblem {
    /// Homomorphism to the cycle `C_m`.
    CycleHom { graph: SimpleGraph, m: usize },
    /// List homomorphism to `C_m`; lists hold 0-based cycle vertices.
    ListCycleHom {
        graph: SimpleGraph,
        m: usize,
        lists: Vec<Vec<usize>>,
    },
    /// Proper vertex colouring with `colors` colours.
    Coloring { graph: SimpleGraph, colors: usize },
    /// Colour the `a` side with `k` colours so that every `b` vertex sees
    /// each colour exactly once.
    Rainbow {
        incidence: SimpleGraph,
        a: Vec<usize>,
        b: Vec<usize>,
        k: usize,
    },
}

/// Colours indexed like the source vertices (for [`SourceProblem::Rainbow`],
/// like its `a` side).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub colors: Vec<usize>,
}

fn cycle_adjacent(x: usize, y: usize, m: usize) -> bool {
    (x + m - y) % m == 1 || (y + m - x) % m == 1
}

impl SourceProblem {
    /// Number of colour slots in a certificate.
    pub fn slots(&self) -> usize {
        match self {
            SourceProblem::CycleHom { graph, .. }
            | SourceProblem::ListCycleHom { graph, .. }
            | SourceProblem::Coloring { graph, .. } => graph.len(),
            SourceProblem::Rainbow { a, .. } => a.len(),
        }
    }

    fn palette(&self) -> usize {
        match *self {
            SourceProblem::CycleHom { m, .. } | SourceProblem::ListCycleHom { m, .. } => m,
            SourceProblem::Coloring { colors, .. } => colors,
            SourceProblem::Rainbow { k, .. } => k,
        }
    }

    /// Checks a certificate; the error names the first violation.
    pub fn verify(&self, cert: &Certificate) -> Result<()> {
        let bad = |msg: String| Err(Error::Certificate(msg));
        if cert.colors.len() != self.slots() {
            return bad(format!("expected {} colours, got {}", self.slots(), cert.colors.len()));
        }
        if let Some(c) = cert.colors.iter().find(|&&c| c >= self.palette()) {
            return bad(format!("colour {c} out of range"));
        }
        let c = &cert.colors;
        match self {
            SourceProblem::CycleHom { graph, m } | SourceProblem::ListCycleHom { graph, m, .. } => {
                for &(u, v) in &graph.edges {
                    if !cycle_adjacent(c[u], c[v], *m) {
                        return bad(format!(
                            "edge {}-{} maps to non-adjacent {} and {}",
                            graph.vertices[u], graph.vertices[v], c[u], c[v]
                        ));
                    }
                }
                if let SourceProblem::ListCycleHom { lists, .. } = self {
                    for (v, list) in lists.iter().enumerate() {
                        if !list.contains(&c[v]) {
                            return bad(format!("{} leaves its list", graph.vertices[v]));
                        }
                    }
                }
            }
            SourceProblem::Coloring { graph, .. } => {
                for &(u, v) in &graph.edges {
                    if c[u] == c[v] {
                        return bad(format!(
                            "edge {}-{} is monochromatic",
                            graph.vertices[u], graph.vertices[v]
                        ));
                    }
                }
            }
            SourceProblem::Rainbow { incidence, a, b, k } => {
                let slot = a_slots(incidence.len(), a);
                let adj = incidence.adjacency();
                for &v in b {
                    let mut seen = vec![false; *k];
                    for &w in &adj[v] {
                        if slot[w] == usize::MAX {
                            return bad(format!("{} has a neighbour outside `a`", incidence.vertices[v]));
                        }
                        let col = c[slot[w]];
                        if std::mem::replace(&mut seen[col], true) {
                            return bad(format!("{} sees colour {col} twice", incidence.vertices[v]));
                        }
                    }
                    if seen.iter().any(|s| !s) {
                        return bad(format!("{} misses a colour", incidence.vertices[v]));
                    }
                }
            }
        }
        Ok(())
    }

    /// First certificate in lexicographic order, by backtracking.
    pub fn brute_force(&self) -> Option<Certificate> {
        let n = self.slots();
        let palette = self.palette();
        // Constraints between slots: (other slot, relation).
        let mut constraints: Vec<Vec<usize>> = vec![Vec::new(); n];
        match self {
            SourceProblem::CycleHom { graph, .. }
            | SourceProblem::ListCycleHom { graph, .. }
            | SourceProblem::Coloring { graph, .. } => {
                for &(u, v) in &graph.edges {
                    constraints[u].push(v);
                    constraints[v].push(u);
                }
            }
            SourceProblem::Rainbow { incidence, a, b, .. } => {
                let slot = a_slots(incidence.len(), a);
                let adj = incidence.adjacency();
                for &v in b {
                    for &x in &adj[v] {
                        for &y in &adj[v] {
                            if x != y {
                                constraints[slot[x]].push(slot[y]);
                            }
                        }
                    }
                }
            }
        }
        let allowed = |s: usize, col: usize| match self {
            SourceProblem::ListCycleHom { lists, .. } => lists[s].contains(&col),
            _ => true,
        };
        let compatible = |x: usize, y: usize| match *self {
            SourceProblem::CycleHom { m, .. } | SourceProblem::ListCycleHom { m, .. } => {
                cycle_adjacent(x, y, m)
            }
            _ => x != y,
        };
        let mut colors = vec![usize::MAX; n];
        fn go(
            s: usize,
            colors: &mut Vec<usize>,
            palette: usize,
            constraints: &[Vec<usize>],
            allowed: &dyn Fn(usize, usize) -> bool,
            compatible: &dyn Fn(usize, usize) -> bool,
        ) -> bool {
            if s == colors.len() {
                return true;
            }
            for col in 0..palette {
                let ok = allowed(s, col)
                    && constraints[s]
                        .iter()
                        .all(|&t| colors[t] == usize::MAX || compatible(col, colors[t]));
                if ok {
                    colors[s] = col;
                    if go(s + 1, colors, palette, constraints, allowed, compatible) {
                        return true;
                    }
                }
            }
            colors[s] = usize::MAX;
            false
        }
        go(0, &mut colors, palette, &constraints, &allowed, &compatible).then(|| {
            let cert = Certificate { colors };
            debug_assert!(self.verify(&cert).is_ok());
            cert
        })
    }
}

/// Position of every `a` vertex in `a`.
fn a_slots(n: usize, a: &[usize]) -> Vec<usize> {
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in a.iter().enumerate() {
        slot[v] = i;
    }
    slot
}
