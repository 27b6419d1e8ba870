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

//! Exact search for list covering projections.
//!
//! The search branches on vertex images first. Each vertex `v` keeps a
//! candidate set of target vertices and each edge a candidate set of target
//! edges. Propagation checks, for every candidate `x` of `v`, that the edges
//! at `v` can be distributed onto the edges at `x` (a small capacitated
//! matching: one end per ordinary edge or semi-edge, two per loop), and keeps
//! only supported edge candidates. The undecided part of the graph is split
//! into independent pieces as the search goes, and each piece is solved on
//! its own. Branching prefers small domains near vertices whose check has
//! failed often, and the search restarts with a growing backtrack allowance
//! so that these failure counts steer later runs. Once every vertex of a
//! piece is fixed, the remaining edge choices split into independent groups
//! that are completed one at a time.
//!
//! Target graphs are limited to [`MAX_TARGET`] vertices and edges.

mod engine;
pub mod oracle;

use std::time::Duration;

use serde::Serialize;

use crate::covering::{CoverMap, ListAssignment, Mode};
use crate::error::{Error, Result};
use crate::graph::Multigraph;

pub use engine::MAX_TARGET;
use engine::Engine;

/// Node and wall-clock limits. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(n: u64) -> Self {
        Budget {
            max_nodes: Some(n),
            max_time: None,
        }
    }

    pub fn time(d: Duration) -> Self {
        Budget {
            max_nodes: None,
            max_time: Some(d),
        }
    }
}

/// Switches for the individual pruning rules. All are sound; turning one
/// off must never change a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pruning {
    /// Discard target vertices of the wrong degree up front.
    pub degree_filter: bool,
    /// Local-bijection consistency after every branching step. When off,
    /// the check runs only once a component's vertices are all fixed.
    pub local_consistency: bool,
    /// Solve connected components (and independent edge groups) separately.
    pub component_split: bool,
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning {
            degree_filter: true,
            local_consistency: true,
            component_split: true,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverOptions {
    pub budget: Budget,
    pub pruning: Pruning,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub nodes: u64,
    pub backtracks: u64,
    pub revisions: u64,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1000.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Satisfiable(CoverMap),
    Unsatisfiable,
    ResourceLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: Status,
    pub stats: Stats,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self.status, Status::Satisfiable(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self.status, Status::Unsatisfiable)
    }

    pub fn witness(&self) -> Option<&CoverMap> {
        match &self.status {
            Status::Satisfiable(f) => Some(f),
            _ => None,
        }
    }

    /// `Some(true)` / `Some(false)` for a verdict, `None` on resource limit.
    pub fn verdict(&self) -> Option<bool> {
        match self.status {
            Status::Satisfiable(_) => Some(true),
            Status::Unsatisfiable => Some(false),
            Status::ResourceLimit => None,
        }
    }
}

fn check_inputs(g: &Multigraph, h: &Multigraph, lists: &ListAssignment) -> Result<()> {
    if h.vertex_count() > MAX_TARGET || h.edge_count() > MAX_TARGET {
        return Err(Error::TooLarge(format!(
            "target has {} vertices and {} edges; the solver supports at most {MAX_TARGET} of each",
            h.vertex_count(),
            h.edge_count()
        )));
    }
    lists.validate(g, h)
}

/// Decides List-H-Cover for `g`.
pub fn solve(
    g: &Multigraph,
    h: &Multigraph,
    lists: &ListAssignment,
    budget: Budget,
) -> Result<SolveOutcome> {
    solve_with(
        g,
        h,
        lists,
        Mode::Total,
        &SolverOptions {
            budget,
            pruning: Pruning::default(),
        },
    )
}

/// Decides the existence of a (partial) cover with explicit options.
pub fn solve_with(
    g: &Multigraph,
    h: &Multigraph,
    lists: &ListAssignment,
    mode: Mode,
    options: &SolverOptions,
) -> Result<SolveOutcome> {
    check_inputs(g, h, lists)?;
    let mut engine = Engine::new(g, h, lists, mode, options);
    let status = engine.solve();
    Ok(SolveOutcome {
        status,
        stats: engine.stats(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub mode: Mode,
    /// Stop after this many maps.
    pub limit: Option<usize>,
    /// Report one map per distinct vertex map instead of every edge map.
    pub distinct_vertex_maps: bool,
    pub solver: SolverOptions,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            mode: Mode::Total,
            limit: None,
            distinct_vertex_maps: false,
            solver: SolverOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumSummary {
    pub count: usize,
    /// The limit was reached before the search space was exhausted.
    pub truncated: bool,
    /// The budget ran out; `count` is a lower bound.
    pub resource_limit: bool,
    pub stats: Stats,
}

/// Streams every (partial) cover respecting the lists to `sink`, in a fixed
/// order. `sink` returns `false` to stop early.
pub fn for_each_cover(
    g: &Multigraph,
    h: &Multigraph,
    lists: &ListAssignment,
    options: &EnumOptions,
    mut sink: impl FnMut(&CoverMap) -> bool,
) -> Result<EnumSummary> {
    check_inputs(g, h, lists)?;
    let mut engine = Engine::new(g, h, lists, options.mode, &options.solver);
    Ok(engine.enumerate(options.limit, options.distinct_vertex_maps, &mut sink))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub maps: Vec<CoverMap>,
    pub truncated: bool,
    pub resource_limit: bool,
    pub stats: Stats,
}

fn collect(
    g: &Multigraph,
    h: &Multigraph,
    lists: &ListAssignment,
    options: &EnumOptions,
) -> Result<Enumeration> {
    let mut maps = Vec::new();
    let summary = for_each_cover(g, h, lists, options, |f| {
        maps.push(f.clone());
        true
    })?;
    Ok(Enumeration {
        maps,
        truncated: summary.truncated,
        resource_limit: summary.resource_limit,
        stats: summary.stats,
    })
}

/// All covering projections respecting the lists, up to `limit`.
pub fn enumerate(
    g: &Multigraph,
    h: &Multigraph,
    lists: &ListAssignment,
    limit: Option<usize>,
) -> Result<Enumeration> {
    collect(
        g,
        h,
        lists,
        &EnumOptions {
            limit,
            ..EnumOptions::default()
        },
    )
}

/// All partial covering projections respecting the lists, up to `limit`.
pub fn enumerate_partial(
    g: &Multigraph,
    h: &Multigraph,
    lists: &ListAssignment,
    limit: Option<usize>,
) -> Result<Enumeration> {
    collect(
        g,
        h,
        lists,
        &EnumOptions {
            mode: Mode::Partial,
            limit,
            ..EnumOptions::default()
        },
    )
}
