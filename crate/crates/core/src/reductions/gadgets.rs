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

//! Ring gadgets.
//!
//! Cycle vertices are numbered from 1 in a fixed direction and positions
//! are taken modulo the cycle length. Ring vertices are indexed
//! `1, 1', 2, 2', ...` as `0, 1, 2, 3, ...` (see
//! [`ring_vertex`](crate::graph::generate::ring_vertex)); the two ends of a
//! double edge are partners.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::covering::ListAssignment;
use crate::error::{Error, Result};
use crate::graph::{Builder, Multigraph};
use crate::solver::{for_each_cover, EnumOptions, SolverOptions};
use crate::Mode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GadgetKind {
    Vertex { k: usize, deg: usize },
    Enforcing { k: usize },
    /// `offset` is the cycle position of the second attachment.
    Edge { k: usize, offset: usize },
    One,
    ZeroOne,
}

/// A gadget graph with named boundary vertices.
#[derive(Clone, Debug)]
pub struct GadgetSpec {
    pub kind: GadgetKind,
    pub graph: Multigraph,
    pub terminals: Vec<(String, usize)>,
}

impl GadgetSpec {
    pub fn terminal(&self, name: &str) -> usize {
        self.terminals
            .iter()
            .find(|(n, _)| n == name)
            .unwrap_or_else(|| panic!("gadget has no terminal `{name}`"))
            .1
    }
}

/// 1-based cycle position modulo `len`.
fn pos(p: isize, len: usize) -> usize {
    (p - 1).rem_euclid(len as isize) as usize + 1
}

/// Joins `x` and `y` by an enforcing gadget, one leaf on each.
pub(crate) fn link(b: &mut Builder, enforcing: &GadgetSpec, prefix: &str, x: usize, y: usize) {
    let glue = [(enforcing.terminal("b1"), x), (enforcing.terminal("w1"), y)];
    b.instantiate(&enforcing.graph, prefix, &glue);
}

/// Two cycles `C_l`, `l = 2k·deg`, joined by `v1.(2i-1) v2.(2i)` and
/// `v2.(2i-1) v1.(2i)`. The edge `v2.(2kj-1) v2.(2kj)` is removed for every
/// `j` and its ends get the leaves `b{j}` and `w{j}`.
pub fn vertex_gadget(k: usize, deg: usize) -> Result<GadgetSpec> {
    if k < 2 || deg < 1 {
        return Err(Error::InvalidParameter(format!(
            "vertex gadget needs k >= 2 and deg >= 1, got k={k}, deg={deg}"
        )));
    }
    let l = 2 * k * deg;
    let mut b = Builder::new();
    let v1: Vec<usize> = (1..=l).map(|i| b.vertex(format!("v1.{i}"))).collect();
    let v2: Vec<usize> = (1..=l).map(|i| b.vertex(format!("v2.{i}"))).collect();
    let at = |c: &[usize], i: usize| c[i - 1];
    let deleted = |i: usize| i % (2 * k) == 2 * k - 1;
    for i in 1..=l {
        b.ordinary(at(&v1, i), at(&v1, pos(i as isize + 1, l)));
        if !deleted(i) {
            b.ordinary(at(&v2, i), at(&v2, pos(i as isize + 1, l)));
        }
    }
    for i in 1..=l / 2 {
        b.ordinary(at(&v1, 2 * i - 1), at(&v2, 2 * i));
        b.ordinary(at(&v2, 2 * i - 1), at(&v1, 2 * i));
    }
    let mut terminals = Vec::new();
    for j in 1..=deg {
        let black = b.vertex(format!("b{j}"));
        b.ordinary(at(&v2, 2 * k * j - 1), black);
        let white = b.vertex(format!("w{j}"));
        b.ordinary(at(&v2, 2 * k * j), white);
        terminals.push((format!("b{j}"), black));
        terminals.push((format!("w{j}"), white));
    }
    Ok(GadgetSpec {
        kind: GadgetKind::Vertex { k, deg },
        graph: b.finish(),
        terminals,
    })
}

/// The vertex gadget of degree 1. Its leaves `b1`, `w1` end up on the two
/// ends of one double edge.
pub fn enforcing_gadget(k: usize) -> Result<GadgetSpec> {
    let mut g = vertex_gadget(k, 1)?;
    g.kind = GadgetKind::Enforcing { k };
    Ok(g)
}

/// `k` cycles `C_{2k}` named `c{j}.{p}`. Odd `j` links to `j+1` at even
/// positions, even `j` at odd positions, and the free positions `p` of the
/// first cycle link to `p+k` on the last, except for the attachments `1`
/// and `offset`. Terminals: `ub = c1.1`, `uw = ck.(1+k)`, `vb = c1.offset`,
/// `vw = ck.(offset+k)`.
pub fn edge_gadget_at(k: usize, offset: usize) -> Result<GadgetSpec> {
    if k < 2 || offset.is_multiple_of(2) || offset < 3 || offset > 2 * k {
        return Err(Error::InvalidParameter(format!(
            "edge gadget needs k >= 2 and an odd offset in 3..=2k, got k={k}, offset={offset}"
        )));
    }
    let len = 2 * k;
    let enforcing = enforcing_gadget(k)?;
    let mut b = Builder::new();
    let cycles: Vec<Vec<usize>> = (1..=k)
        .map(|j| {
            let c: Vec<usize> = (1..=len).map(|p| b.vertex(format!("c{j}.{p}"))).collect();
            for p in 0..len {
                b.ordinary(c[p], c[(p + 1) % len]);
            }
            c
        })
        .collect();
    let at = |j: usize, p: isize| cycles[j - 1][pos(p, len) - 1];
    let mut links = 0;
    for j in 1..k {
        let parity = if j % 2 == 1 { 0 } else { 1 };
        for p in (1..=len).filter(|p| p % 2 == parity) {
            link(&mut b, &enforcing, &format!("f{links}."), at(j, p as isize), at(j + 1, p as isize));
            links += 1;
        }
    }
    for p in (1..=len).filter(|&p| p % 2 == 1 && p != 1 && p != offset) {
        let p = p as isize;
        link(&mut b, &enforcing, &format!("f{links}."), at(1, p), at(k, p + k as isize));
        links += 1;
    }
    let o = offset as isize;
    let kk = k as isize;
    let terminals = vec![
        ("ub".to_owned(), at(1, 1)),
        ("uw".to_owned(), at(k, 1 + kk)),
        ("vb".to_owned(), at(1, o)),
        ("vw".to_owned(), at(k, o + kk)),
    ];
    Ok(GadgetSpec {
        kind: GadgetKind::Edge { k, offset },
        graph: b.finish(),
        terminals,
    })
}

/// The edge gadget for `k = 2^alpha (2 beta + 3)`: attachments at positions
/// `1` and `1 + 2^(alpha+1)`.
pub fn edge_gadget(k: usize, alpha: u32) -> Result<GadgetSpec> {
    let unit = 1usize
        .checked_shl(alpha)
        .filter(|&u| u > 0 && k.is_multiple_of(u) && (k / u) % 2 == 1 && k / u >= 3)
        .ok_or_else(|| {
            Error::InvalidParameter(format!("k={k} is not 2^{alpha} times an odd number >= 3"))
        })?;
    edge_gadget_at(k, 1 + 2 * unit)
}

/// For the 4-ring: an 8-cycle `c1..c8` with `c5-c6` and `c7-c8` linked.
/// Terminals `lw = c1`, `lb = c2`, `rw = c3`, `rb = c4`. Left terminals on
/// `i, i'` force the right ones onto `i+1, (i+1)'`.
pub fn one_gadget() -> GadgetSpec {
    let enforcing = enforcing_gadget(4).expect("k = 4");
    let mut b = Builder::new();
    let c: Vec<usize> = (1..=8).map(|i| b.vertex(format!("c{i}"))).collect();
    for i in 0..8 {
        b.ordinary(c[i], c[(i + 1) % 8]);
    }
    link(&mut b, &enforcing, "f0.", c[4], c[5]);
    link(&mut b, &enforcing, "f1.", c[6], c[7]);
    GadgetSpec {
        kind: GadgetKind::One,
        graph: b.finish(),
        terminals: vec![
            ("lw".to_owned(), c[0]),
            ("lb".to_owned(), c[1]),
            ("rw".to_owned(), c[2]),
            ("rb".to_owned(), c[3]),
        ],
    }
}

/// For the 4-ring: four 8-cycles `t0..t3` (vertices `t{t}.{j}`, `j` in
/// `0..8`). `t{t}.{j}` links to `t{t+1}.{j}` when `t + j` is even, and
/// `t0.{j}` to `t3.{j+4}` for odd `j`. The pairs `lb = t0.0`, `lw = t1.0`
/// and `rw = t0.1`, `rb = t3.5` take the place of two links. Left terminals
/// on `i, i'` allow exactly `i, i'` or `i+1, (i+1)'` on the right.
pub fn zero_one_gadget() -> GadgetSpec {
    let enforcing = enforcing_gadget(4).expect("k = 4");
    let mut b = Builder::new();
    let layers: Vec<Vec<usize>> = (0..4)
        .map(|t| {
            let c: Vec<usize> = (0..8).map(|j| b.vertex(format!("t{t}.{j}"))).collect();
            for j in 0..8 {
                b.ordinary(c[j], c[(j + 1) % 8]);
            }
            c
        })
        .collect();
    let mut links = 0;
    for t in 0..3 {
        for j in (0..8).filter(|j| (t + j) % 2 == 0 && !(t == 0 && *j == 0)) {
            link(&mut b, &enforcing, &format!("f{links}."), layers[t][j], layers[t + 1][j]);
            links += 1;
        }
    }
    for j in (3..8).step_by(2) {
        link(&mut b, &enforcing, &format!("f{links}."), layers[0][j], layers[3][(j + 4) % 8]);
        links += 1;
    }
    GadgetSpec {
        kind: GadgetKind::ZeroOne,
        graph: b.finish(),
        terminals: vec![
            ("lw".to_owned(), layers[1][0]),
            ("lb".to_owned(), layers[0][0]),
            ("rw".to_owned(), layers[0][1]),
            ("rb".to_owned(), layers[3][5]),
        ],
    }
}

/// Images of the remaining terminals for every image of the pinned ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BehaviorTable {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    /// Input images (vertex ids of the target) to every output image tuple
    /// seen in some partial cover.
    pub rows: BTreeMap<Vec<String>, BTreeSet<Vec<String>>>,
}

/// Enumerates the partial covers of the isolated gadget onto `h` for every
/// assignment of `inputs` in `pins`.
pub fn behavior_table(
    spec: &GadgetSpec,
    h: &Multigraph,
    inputs: &[&str],
    pins: &[Vec<usize>],
    solver: SolverOptions,
) -> Result<BehaviorTable> {
    let input_vertices: Vec<usize> = inputs.iter().map(|n| spec.terminal(n)).collect();
    let outputs: Vec<(String, usize)> = spec
        .terminals
        .iter()
        .filter(|(n, _)| !inputs.contains(&n.as_str()))
        .cloned()
        .collect();
    let mut rows = BTreeMap::new();
    let options = EnumOptions {
        mode: Mode::Partial,
        limit: None,
        distinct_vertex_maps: true,
        solver,
    };
    for pin in pins {
        let mut lists = ListAssignment::full();
        for (&v, &x) in input_vertices.iter().zip(pin) {
            lists.pin_vertex(v, x);
        }
        let mut seen = BTreeSet::new();
        let summary = for_each_cover(&spec.graph, h, &lists, &options, |f| {
            seen.insert(
                outputs
                    .iter()
                    .map(|(_, v)| h.vertex_id(f.vmap[*v]).to_owned())
                    .collect::<Vec<_>>(),
            );
            true
        })?;
        if summary.resource_limit {
            return Err(Error::TooLarge("behaviour enumeration ran out of budget".into()));
        }
        let key = pin.iter().map(|&x| h.vertex_id(x).to_owned()).collect();
        rows.insert(key, seen);
    }
    Ok(BehaviorTable {
        inputs: inputs.iter().map(|s| s.to_string()).collect(),
        outputs: outputs.into_iter().map(|(n, _)| n).collect(),
        rows,
    })
}
