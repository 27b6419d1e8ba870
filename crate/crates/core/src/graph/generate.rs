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

//! Named graph families.

use std::str::FromStr;

use super::{iso, EdgeKind, Multigraph};
use crate::error::{Error, Result};

/// The k-ring: a cycle on `1, 1', 2, 2', ..., k, k'` in which every edge
/// `j j'` is doubled (edges `dja`, `djb`) and `j' (j+1)` is single (`sj`).
pub fn ring(k: usize) -> Result<Multigraph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("ring needs k >= 2, got {k}")));
    }
    let mut g = Multigraph::new();
    for j in 1..=k {
        g.add_vertex(j.to_string())?;
        g.add_vertex(format!("{j}'"))?;
    }
    for j in 0..k {
        let (a, b) = (2 * j, 2 * j + 1);
        g.add_ordinary(format!("d{}a", j + 1), a, b)?;
        g.add_ordinary(format!("d{}b", j + 1), a, b)?;
        g.add_ordinary(format!("s{}", j + 1), b, (2 * j + 2) % (2 * k))?;
    }
    Ok(g)
}

/// Index of ring vertex `j` (`primed` selects `j'`), 1-based `j`.
pub fn ring_vertex(k: usize, j: usize, primed: bool) -> usize {
    2 * ((j + k - 1) % k) + usize::from(primed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EndDecoration {
    Semi,
    Loop,
    TwoSemis,
}

/// All non-isomorphic k-sausages: a path on `k` vertices with every other
/// edge doubled and end vertices decorated up to degree 3.
pub fn sausages(k: usize) -> Result<Vec<Multigraph>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("sausages need k >= 2, got {k}")));
    }
    let mut found: Vec<Multigraph> = Vec::new();
    for parity in 0..2 {
        let doubled = |i: usize| i % 2 == parity;
        let end_options = |doubled_end: bool| {
            if doubled_end {
                vec![EndDecoration::Semi]
            } else {
                vec![EndDecoration::Loop, EndDecoration::TwoSemis]
            }
        };
        let first = end_options(doubled(0));
        let last = end_options(doubled(k - 2));
        for &a in &first {
            for &b in &last {
                let g = sausage(k, &doubled, a, b)?;
                if !found.iter().any(|h| iso::are_isomorphic(h, &g).is_some()) {
                    found.push(g);
                }
            }
        }
    }
    Ok(found)
}

fn sausage(
    k: usize,
    doubled: &dyn Fn(usize) -> bool,
    first: EndDecoration,
    last: EndDecoration,
) -> Result<Multigraph> {
    let mut g = Multigraph::new();
    for i in 1..=k {
        g.add_vertex(format!("v{i}"))?;
    }
    for i in 0..k - 1 {
        if doubled(i) {
            g.add_ordinary(format!("p{}a", i + 1), i, i + 1)?;
            g.add_ordinary(format!("p{}b", i + 1), i, i + 1)?;
        } else {
            g.add_ordinary(format!("p{}", i + 1), i, i + 1)?;
        }
    }
    for (v, deco, tag) in [(0, first, "l"), (k - 1, last, "r")] {
        match deco {
            EndDecoration::Semi => {
                g.add_semi(format!("{tag}s"), v)?;
            }
            EndDecoration::Loop => {
                g.add_loop(format!("{tag}l"), v)?;
            }
            EndDecoration::TwoSemis => {
                g.add_semi(format!("{tag}s1"), v)?;
                g.add_semi(format!("{tag}s2"), v)?;
            }
        }
    }
    Ok(g)
}

/// One vertex `x` with `s` semi-edges and `l` loops.
pub fn one_vertex(s: usize, l: usize) -> Multigraph {
    let mut g = Multigraph::new();
    g.add_vertex("x").expect("fresh");
    for i in 1..=s {
        g.add_semi(format!("s{i}"), 0).expect("fresh");
    }
    for i in 1..=l {
        g.add_loop(format!("l{i}"), 0).expect("fresh");
    }
    g
}

/// The cycle `v1 .. vn`, edge `ei` joining `vi` and `v(i+1)`. `C1` is a
/// vertex with a loop and `C2` a double edge.
pub fn cycle(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("cycle needs n >= 1".into()));
    }
    let mut g = Multigraph::new();
    for i in 1..=n {
        g.add_vertex(format!("v{i}"))?;
    }
    if n == 1 {
        g.add_loop("e1", 0)?;
    } else {
        for i in 0..n {
            g.add_ordinary(format!("e{}", i + 1), i, (i + 1) % n)?;
        }
    }
    Ok(g)
}

/// The open path `v1 .. vn` with semi-edges `s0` at `v1` and `sn` at `vn`.
pub fn open_path(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("open path needs n >= 1".into()));
    }
    let mut g = Multigraph::new();
    for i in 1..=n {
        g.add_vertex(format!("v{i}"))?;
    }
    g.add_semi("s0", 0)?;
    for i in 0..n - 1 {
        g.add_ordinary(format!("e{}", i + 1), i, i + 1)?;
    }
    g.add_semi(format!("s{n}"), n - 1)?;
    Ok(g)
}

/// `K_{k,k}` on `a1..ak`, `b1..bk`; edge `ai-bj` has id `aibj`.
pub fn complete_bipartite(k: usize) -> Result<Multigraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("complete bipartite needs k >= 1".into()));
    }
    let mut g = Multigraph::new();
    for i in 1..=k {
        g.add_vertex(format!("a{i}"))?;
    }
    for j in 1..=k {
        g.add_vertex(format!("b{j}"))?;
    }
    for i in 0..k {
        for j in 0..k {
            g.add_ordinary(format!("a{}b{}", i + 1, j + 1), i, k + j)?;
        }
    }
    Ok(g)
}

/// Two vertices `a`, `b` joined by three parallel edges.
pub fn triple_edge() -> Multigraph {
    let mut g = Multigraph::new();
    g.add_vertex("a").expect("fresh");
    g.add_vertex("b").expect("fresh");
    for i in 1..=3 {
        g.add_ordinary(format!("e{i}"), 0, 1).expect("fresh");
    }
    g
}

/// `K_n` on `v1..vn`.
pub fn complete(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("complete graph needs n >= 1".into()));
    }
    let mut g = Multigraph::new();
    for i in 1..=n {
        g.add_vertex(format!("v{i}"))?;
    }
    for i in 0..n {
        for j in i + 1..n {
            g.add_ordinary(format!("v{}v{}", i + 1, j + 1), i, j)?;
        }
    }
    Ok(g)
}

/// The Petersen graph: outer 5-cycle `o0..o4`, inner pentagram `i0..i4`.
pub fn petersen() -> Multigraph {
    let mut g = Multigraph::new();
    for i in 0..5 {
        g.add_vertex(format!("o{i}")).expect("fresh");
    }
    for i in 0..5 {
        g.add_vertex(format!("i{i}")).expect("fresh");
    }
    for i in 0..5 {
        g.add_ordinary(format!("o{i}o{}", (i + 1) % 5), i, (i + 1) % 5)
            .expect("fresh");
        g.add_ordinary(format!("o{i}i{i}"), i, 5 + i).expect("fresh");
        g.add_ordinary(format!("i{i}i{}", (i + 2) % 5), 5 + i, 5 + (i + 2) % 5)
            .expect("fresh");
    }
    g
}

/// A family name with parameters, as accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Ring(usize),
    Sausages(usize),
    OneVertex { semis: usize, loops: usize },
    Cycle(usize),
    OpenPath(usize),
    CompleteBipartite(usize),
    TripleEdge,
    Complete(usize),
    Petersen,
}

impl Family {
    /// Parses `name` with its positional parameters.
    pub fn parse(name: &str, params: &[usize]) -> Result<Family> {
        let want = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "family `{name}` takes {n} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let f = match name {
            "ring" => {
                want(1)?;
                Family::Ring(params[0])
            }
            "sausages" => {
                want(1)?;
                Family::Sausages(params[0])
            }
            "one-vertex" | "one_vertex" => {
                want(2)?;
                Family::OneVertex {
                    semis: params[0],
                    loops: params[1],
                }
            }
            "cycle" => {
                want(1)?;
                Family::Cycle(params[0])
            }
            "open-path" | "open_path" => {
                want(1)?;
                Family::OpenPath(params[0])
            }
            "complete-bipartite" | "complete_bipartite" => {
                want(1)?;
                Family::CompleteBipartite(params[0])
            }
            "triple-edge" | "triple_edge" => {
                want(0)?;
                Family::TripleEdge
            }
            "complete" => {
                want(1)?;
                Family::Complete(params[0])
            }
            "petersen" => {
                want(0)?;
                Family::Petersen
            }
            _ => return Err(Error::InvalidParameter(format!("unknown family `{name}`"))),
        };
        Ok(f)
    }

    pub fn build(&self) -> Result<Vec<Multigraph>> {
        Ok(match *self {
            Family::Ring(k) => vec![ring(k)?],
            Family::Sausages(k) => sausages(k)?,
            Family::OneVertex { semis, loops } => vec![one_vertex(semis, loops)],
            Family::Cycle(n) => vec![cycle(n)?],
            Family::OpenPath(n) => vec![open_path(n)?],
            Family::CompleteBipartite(k) => vec![complete_bipartite(k)?],
            Family::TripleEdge => vec![triple_edge()],
            Family::Complete(n) => vec![complete(n)?],
            Family::Petersen => vec![petersen()],
        })
    }
}

impl FromStr for EdgeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EdgeKind::parse(s).ok_or_else(|| Error::InvalidParameter(format!("unknown edge kind `{s}`")))
    }
}

/// Attaches `kind`-typed edges in bulk; used by tests and generators.
pub fn from_edge_list(n: usize, edges: &[(EdgeKind, usize, usize)]) -> Result<Multigraph> {
    let mut g = Multigraph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}"))?;
    }
    for (i, &(kind, a, b)) in edges.iter().enumerate() {
        g.add_edge(format!("e{i}"), kind, a, b)?;
    }
    Ok(g)
}
