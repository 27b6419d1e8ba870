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

use std::rc::Rc;
use std::time::Instant;

use super::{Budget, EnumSummary, Pruning, SolverOptions, Stats, Status};
use crate::covering::{verify_list_cover, CoverMap, ListAssignment, Mode};
use crate::graph::{EdgeKind, Multigraph};

type Bits = u128;

/// Largest supported number of target vertices and of target edges.
pub const MAX_TARGET: usize = Bits::BITS as usize;

const NONE: usize = usize::MAX;

#[inline]
fn bit(i: usize) -> Bits {
    1 << i
}

#[inline]
fn single(b: Bits) -> bool {
    b != 0 && b & (b - 1) == 0
}

struct Ones(Bits);

impl Iterator for Ones {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Backtracks in the first run of a component; each restart adds half.
const RESTART_BASE: u64 = 10_000;

enum Flow {
    Continue,
    Stop,
    Abort,
}

/// Scratch space for the per-vertex distribution check.
#[derive(Default)]
struct Local {
    cand: Vec<Bits>,
    trial: Vec<Bits>,
    loop_item: Vec<bool>,
    assign: Vec<usize>,
    owner: Vec<usize>,
    seen: Vec<bool>,
    blocked: Vec<bool>,
    support: Vec<Bits>,
    union: Vec<Bits>,
}

/// Target-side tables.
struct Target {
    /// Edges at each vertex.
    at: Vec<Bits>,
    /// Matching units at each vertex: one per edge-end, so loops twice.
    units: Vec<Vec<usize>>,
    /// `other[t]` for edge `t` is its endpoint pair.
    ends: Vec<[usize; 2]>,
    semi: Bits,
    loops: Bits,
    degree: Vec<usize>,
    loop_count: Vec<usize>,
    semi_count: Vec<usize>,
}

impl Target {
    fn new(h: &Multigraph) -> Target {
        let n = h.vertex_count();
        let mut at = vec![0; n];
        let mut units = vec![Vec::new(); n];
        let mut semi = 0;
        let mut loops = 0;
        for (t, e) in h.edges().iter().enumerate() {
            at[e.ends[0]] |= bit(t);
            at[e.ends[1]] |= bit(t);
            match e.kind {
                EdgeKind::Ordinary => {
                    units[e.ends[0]].push(t);
                    units[e.ends[1]].push(t);
                }
                EdgeKind::Semi => {
                    semi |= bit(t);
                    units[e.ends[0]].push(t);
                }
                EdgeKind::Loop => {
                    loops |= bit(t);
                    units[e.ends[0]].push(t);
                    units[e.ends[0]].push(t);
                }
            }
        }
        Target {
            at,
            units,
            ends: h.edges().iter().map(|e| e.ends).collect(),
            semi,
            loops,
            degree: (0..n).map(|x| h.degree(x)).collect(),
            loop_count: (0..n).map(|x| h.loops_at(x)).collect(),
            semi_count: (0..n).map(|x| h.semis_at(x)).collect(),
        }
    }

    #[inline]
    fn other(&self, t: usize, x: usize) -> usize {
        let [a, b] = self.ends[t];
        if a == x {
            b
        } else {
            a
        }
    }
}

pub(super) struct Engine<'a> {
    g: &'a Multigraph,
    h: &'a Multigraph,
    lists: &'a ListAssignment,
    mode: Mode,
    pruning: Pruning,
    budget: Budget,
    target: Target,
    vdom: Vec<Bits>,
    edom: Vec<Bits>,
    /// `(variable, previous domain)`; variables `0..n` are vertices, the
    /// rest edges.
    trail: Vec<(usize, Bits)>,
    queue: Vec<usize>,
    queued: Vec<bool>,
    local: Local,
    comps: Rc<Vec<Vec<usize>>>,
    start: Instant,
    nodes: u64,
    backtracks: u64,
    revisions: u64,
    out_of_budget: bool,
    initial_ok: bool,
    /// Part index per vertex during [`Engine::split`].
    part: Vec<usize>,
    /// Failures of the local check at each vertex.
    weight: Vec<u64>,
    /// Backtrack count at which the current search restarts.
    restart_at: Option<u64>,
    restarting: bool,
}

impl<'a> Engine<'a> {
    pub(super) fn new(
        g: &'a Multigraph,
        h: &'a Multigraph,
        lists: &'a ListAssignment,
        mode: Mode,
        options: &SolverOptions,
    ) -> Engine<'a> {
        let target = Target::new(h);
        let n = g.vertex_count();
        let all_v: Bits = if h.vertex_count() == MAX_TARGET {
            Bits::MAX
        } else {
            bit(h.vertex_count()) - 1
        };
        let all_e: Bits = if h.edge_count() == MAX_TARGET {
            Bits::MAX
        } else {
            bit(h.edge_count()) - 1
        };
        let pruning = options.pruning;
        let mut vdom = vec![0; n];
        for (v, dom) in vdom.iter_mut().enumerate() {
            let mut d = match lists.vertices.get(&v) {
                Some(l) => l.iter().fold(0, |acc, &x| acc | bit(x)),
                None => all_v,
            };
            if pruning.degree_filter {
                let (deg, lp, sm) = (g.degree(v), g.loops_at(v), g.semis_at(v));
                for x in Ones(d) {
                    let deg_ok = match mode {
                        Mode::Total => target.degree[x] == deg,
                        Mode::Partial => target.degree[x] >= deg,
                    };
                    if !deg_ok || target.loop_count[x] < lp || target.semi_count[x] < sm {
                        d &= !bit(x);
                    }
                }
            }
            *dom = d;
        }
        let mut edom = vec![0; g.edge_count()];
        for (e, dom) in edom.iter_mut().enumerate() {
            let d = match lists.edges.get(&e) {
                Some(l) => l.iter().fold(0, |acc, &t| acc | bit(t)),
                None => all_e,
            };
            *dom = match g.edge(e).kind {
                EdgeKind::Loop => d & target.loops,
                EdgeKind::Semi => d & target.semi,
                EdgeKind::Ordinary => d,
            };
        }

        let comps: Vec<Vec<usize>> = if pruning.component_split {
            g.components()
        } else if n > 0 {
            vec![(0..n).collect()]
        } else {
            Vec::new()
        };
        // Each component in breadth-first order; ties in the branching
        // heuristic go to the earlier vertex in this order.
        let comps: Vec<Vec<usize>> = comps.iter().map(|c| bfs_order(g, c)).collect();

        let mut engine = Engine {
            g,
            h,
            lists,
            mode,
            pruning,
            budget: options.budget,
            target,
            vdom,
            edom,
            trail: Vec::new(),
            queue: Vec::new(),
            queued: vec![false; n],
            local: Local::default(),
            comps: Rc::new(comps),
            start: Instant::now(),
            nodes: 0,
            backtracks: 0,
            revisions: 0,
            out_of_budget: false,
            initial_ok: true,
            part: vec![usize::MAX; n],
            weight: vec![1; n],
            restart_at: None,
            restarting: false,
        };
        engine.initial_ok = engine.vdom.iter().all(|&d| d != 0)
            && engine.edom.iter().all(|&d| d != 0)
            && (!engine.pruning.local_consistency || {
                for v in 0..n {
                    engine.enqueue(v);
                }
                engine.propagate()
            });
        engine
    }

    pub(super) fn stats(&self) -> Stats {
        Stats {
            nodes: self.nodes,
            backtracks: self.backtracks,
            revisions: self.revisions,
            elapsed: self.start.elapsed(),
        }
    }

    // ----- domains and trail -----

    #[inline]
    fn set_vdom(&mut self, v: usize, d: Bits) {
        self.trail.push((v, self.vdom[v]));
        self.vdom[v] = d;
    }

    #[inline]
    fn set_edom(&mut self, e: usize, d: Bits) {
        self.trail.push((self.vdom.len() + e, self.edom[e]));
        self.edom[e] = d;
    }

    fn undo(&mut self, mark: usize) {
        let n = self.vdom.len();
        while self.trail.len() > mark {
            let (var, old) = self.trail.pop().expect("non-empty trail");
            if var < n {
                self.vdom[var] = old;
            } else {
                self.edom[var - n] = old;
            }
        }
    }

    #[inline]
    fn enqueue(&mut self, v: usize) {
        if !self.queued[v] {
            self.queued[v] = true;
            self.queue.push(v);
        }
    }

    fn clear_queue(&mut self) {
        for v in self.queue.drain(..) {
            self.queued[v] = false;
        }
    }

    fn propagate(&mut self) -> bool {
        let mut i = 0;
        while i < self.queue.len() {
            let v = self.queue[i];
            i += 1;
            self.queued[v] = false;
            if !self.revise(v) {
                self.weight[v] += 1;
                self.queue.drain(..i);
                self.clear_queue();
                return false;
            }
            if i > 4096 {
                self.queue.drain(..i);
                i = 0;
            }
        }
        self.queue.clear();
        true
    }

    // ----- local distribution check -----

    /// Recomputes the candidates of `v` and of the edges at `v`.
    fn revise(&mut self, v: usize) -> bool {
        self.revisions += 1;
        let g = self.g;
        let items = g.incident(v);
        let d = items.len();
        let mut local = std::mem::take(&mut self.local);
        local.union.clear();
        local.union.resize(d, 0);
        local.loop_item.clear();
        local.loop_item.extend(items.iter().map(|&e| g.edge(e).kind == EdgeKind::Loop));
        let mut keep: Bits = 0;
        for x in Ones(self.vdom[v]) {
            if self.candidates(v, x, &mut local.cand) && self.supports(x, &mut local) {
                keep |= bit(x);
                for i in 0..d {
                    local.union[i] |= local.support[i];
                }
            }
        }
        if keep == 0 {
            self.local = local;
            return false;
        }
        if keep != self.vdom[v] {
            self.set_vdom(v, keep);
            for &e in items {
                let w = g.edge(e).other(v);
                if w != v {
                    self.enqueue(w);
                }
            }
        }
        for (i, &e) in items.iter().enumerate() {
            let nd = self.edom[e] & local.union[i];
            if nd != self.edom[e] {
                self.set_edom(e, nd);
                let w = g.edge(e).other(v);
                if w != v {
                    self.enqueue(w);
                }
            }
        }
        self.local = local;
        true
    }

    /// Candidate target edges of each edge at `v` if `v` maps to `x`.
    fn candidates(&self, v: usize, x: usize, cand: &mut Vec<Bits>) -> bool {
        cand.clear();
        for &e in self.g.incident(v) {
            let edge = self.g.edge(e);
            let mut c = self.edom[e] & self.target.at[x];
            if edge.kind == EdgeKind::Ordinary {
                let w = edge.other(v);
                let dw = self.vdom[w];
                for t in Ones(c) {
                    if dw & bit(self.target.other(t, x)) == 0 {
                        c &= !bit(t);
                    }
                }
            }
            if c == 0 {
                return false;
            }
            cand.push(c);
        }
        true
    }

    /// Fills `local.support` with the supported candidates at `x`; false if
    /// no distribution exists.
    fn supports(&self, x: usize, local: &mut Local) -> bool {
        let units = &self.target.units[x];
        let exact = self.mode == Mode::Total;
        let d = local.cand.len();
        local.support.clear();
        local.support.resize(d, 0);
        local.trial.clear();
        local.trial.extend_from_slice(&local.cand);
        if !distribute(&local.trial, &local.loop_item, units, exact, &mut local.assign, &mut local.owner, &mut local.seen, &mut local.blocked) {
            return false;
        }
        for i in 0..d {
            local.support[i] |= bit(local.assign[i]);
        }
        for i in 0..d {
            let missing = local.cand[i] & !local.support[i];
            for t in Ones(missing) {
                if local.support[i] & bit(t) != 0 {
                    continue;
                }
                local.trial.copy_from_slice(&local.cand);
                local.trial[i] = bit(t);
                if distribute(&local.trial, &local.loop_item, units, exact, &mut local.assign, &mut local.owner, &mut local.seen, &mut local.blocked) {
                    for j in 0..d {
                        local.support[j] |= bit(local.assign[j]);
                    }
                }
            }
        }
        true
    }

    // ----- search -----

    fn out_of_budget(&mut self) -> bool {
        if self.out_of_budget || self.restarting {
            return true;
        }
        if self.restart_at.is_some_and(|at| self.backtracks >= at) {
            self.restarting = true;
            return true;
        }
        if let Some(limit) = self.budget.max_nodes {
            if self.nodes > limit {
                self.out_of_budget = true;
            }
        }
        if let Some(limit) = self.budget.max_time {
            if self.nodes.is_multiple_of(256) && self.start.elapsed() > limit {
                self.out_of_budget = true;
            }
        }
        self.out_of_budget
    }

    /// Smallest domain relative to the failure weight around the vertex;
    /// ties go to the earlier vertex.
    fn select_weighted(&self, comp: &[usize]) -> Option<usize> {
        let mut best = None;
        let (mut best_size, mut best_weight) = (0, 1);
        for &v in comp {
            let s = u64::from(self.vdom[v].count_ones());
            if s <= 1 {
                continue;
            }
            let w = self.weight[v]
                + self.g.incident(v).iter().map(|&e| self.weight[self.g.edge(e).other(v)]).sum::<u64>();
            if best.is_none() || s * best_weight < best_size * w {
                (best_size, best_weight) = (s, w);
                best = Some(v);
            }
        }
        best
    }

    fn select_vertex(&self, comp: &[usize]) -> Option<usize> {
        let mut best = None;
        let mut best_size = u32::MAX;
        for &v in comp {
            let s = self.vdom[v].count_ones();
            if s > 1 && s < best_size {
                best_size = s;
                best = Some(v);
                if s == 2 {
                    break;
                }
            }
        }
        best
    }

    fn select_edge(&self, group: &[usize]) -> Option<usize> {
        let mut best = None;
        let mut best_size = u32::MAX;
        for &e in group {
            let s = self.edom[e].count_ones();
            if s > 1 && s < best_size {
                best_size = s;
                best = Some(e);
            }
        }
        best
    }

    /// Fixes `v` to `x` and propagates.
    fn assign_vertex(&mut self, v: usize, x: usize) -> bool {
        self.set_vdom(v, bit(x));
        if !self.pruning.local_consistency {
            return true;
        }
        self.enqueue(v);
        for &e in self.g.incident(v) {
            let w = self.g.edge(e).other(v);
            if w != v {
                self.enqueue(w);
            }
        }
        self.propagate()
    }

    fn assign_edge(&mut self, e: usize, t: usize) -> bool {
        self.set_edom(e, bit(t));
        let [a, b] = self.g.edge(e).ends;
        self.enqueue(a);
        self.enqueue(b);
        self.propagate()
    }

    /// Called once every vertex of `comp` is fixed: runs the deferred
    /// consistency check when propagation is off.
    fn settle(&mut self, comp: &[usize]) -> bool {
        if self.pruning.local_consistency {
            return true;
        }
        for &v in comp {
            self.enqueue(v);
        }
        self.propagate()
    }

    /// Undetermined edges of `comp`, grouped so that groups share no vertex.
    fn edge_groups(&self, comp: &[usize]) -> Vec<Vec<usize>> {
        let g = self.g;
        let mut edges: Vec<usize> = Vec::new();
        for &v in comp {
            for &e in g.incident(v) {
                if g.edge(e).ends[0] == v && !single(self.edom[e]) {
                    edges.push(e);
                }
            }
        }
        edges.sort_unstable();
        if edges.is_empty() {
            return Vec::new();
        }
        if !self.pruning.component_split {
            return vec![edges];
        }
        let mut parent: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        fn find(p: &mut std::collections::HashMap<usize, usize>, x: usize) -> usize {
            let mut r = x;
            while let Some(&q) = p.get(&r) {
                if q == r {
                    break;
                }
                r = q;
            }
            p.insert(x, r);
            r
        }
        for &e in &edges {
            let [a, b] = g.edge(e).ends;
            parent.entry(a).or_insert(a);
            parent.entry(b).or_insert(b);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent.insert(ra, rb);
            }
        }
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for &e in &edges {
            let r = find(&mut parent, g.edge(e).ends[0]);
            match groups.iter_mut().find(|(root, _)| *root == r) {
                Some((_, list)) => list.push(e),
                None => groups.push((r, vec![e])),
            }
        }
        groups.into_iter().map(|(_, l)| l).collect()
    }

    /// Completes one edge group; on success the assignment stays in place.
    fn solve_group(&mut self, group: &[usize]) -> Flow {
        if self.out_of_budget() {
            return Flow::Abort;
        }
        let Some(e) = self.select_edge(group) else {
            return Flow::Stop;
        };
        for t in Ones(self.edom[e]) {
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign_edge(e, t) {
                match self.solve_group(group) {
                    Flow::Continue => {}
                    other => return other,
                }
            }
            self.undo(mark);
            self.backtracks += 1;
        }
        Flow::Continue
    }

    fn solve_edges(&mut self, comp: &[usize]) -> Flow {
        if !self.settle(comp) {
            return Flow::Continue;
        }
        for group in self.edge_groups(comp) {
            match self.solve_group(&group) {
                Flow::Stop => {}
                other => return other,
            }
        }
        Flow::Stop
    }

    /// Open parts of `comp`, smallest first, each in `comp` order. Two
    /// vertices share a part when an edge joins them that is undecided or
    /// touches an unfixed vertex; decided vertices whose edges are all fixed
    /// are dropped.
    fn split(&mut self, comp: &[usize]) -> Vec<Vec<usize>> {
        let g = self.g;
        let open = |s: &Self, e: usize, a: usize, b: usize| {
            !single(s.edom[e]) || !single(s.vdom[a]) || !single(s.vdom[b])
        };
        let mut parts = 0;
        let mut stack = Vec::new();
        for &v in comp {
            if self.part[v] != usize::MAX {
                continue;
            }
            let starts = !single(self.vdom[v])
                || g.incident(v).iter().any(|&e| !single(self.edom[e]));
            if !starts {
                continue;
            }
            self.part[v] = parts;
            stack.push(v);
            while let Some(u) = stack.pop() {
                for &e in g.incident(u) {
                    let w = g.edge(e).other(u);
                    if self.part[w] == usize::MAX && open(self, e, u, w) {
                        self.part[w] = parts;
                        stack.push(w);
                    }
                }
            }
            parts += 1;
        }
        let mut out = vec![Vec::new(); parts];
        for &v in comp {
            if let Some(p) = out.get_mut(self.part[v]) {
                p.push(v);
            }
            self.part[v] = usize::MAX;
        }
        out.sort_by_key(Vec::len);
        out
    }

    fn solve_vertices(&mut self, comp: &[usize]) -> Flow {
        if self.out_of_budget() {
            return Flow::Abort;
        }
        if self.pruning.component_split && self.pruning.local_consistency {
            let parts = self.split(comp);
            if parts.len() != 1 || parts[0].len() != comp.len() {
                for part in &parts {
                    match self.solve_vertices(part) {
                        Flow::Stop => {}
                        other => return other,
                    }
                }
                return Flow::Stop;
            }
        }
        let Some(v) = self.select_weighted(comp) else {
            return self.solve_edges(comp);
        };
        for x in Ones(self.vdom[v]) {
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign_vertex(v, x) {
                match self.solve_vertices(comp) {
                    Flow::Continue => {}
                    other => return other,
                }
            }
            self.undo(mark);
            self.backtracks += 1;
        }
        Flow::Continue
    }

    /// Solves every component in turn, leaving the solution in the domains.
    fn solve_components(&mut self) -> Status {
        if !self.initial_ok {
            return Status::Unsatisfiable;
        }
        let comps = Rc::clone(&self.comps);
        for comp in comps.iter() {
            // Restarts keep the failure weights, so later runs branch where
            // earlier ones failed.
            let mark = self.trail.len();
            let mut run = RESTART_BASE;
            loop {
                self.restart_at = Some(self.backtracks + run);
                let flow = self.solve_vertices(comp);
                self.restart_at = None;
                if !std::mem::take(&mut self.restarting) || self.out_of_budget {
                    match flow {
                        Flow::Stop => break,
                        Flow::Continue => return Status::Unsatisfiable,
                        Flow::Abort => return Status::ResourceLimit,
                    }
                }
                self.undo(mark);
                run += run / 2;
            }
        }
        Status::Satisfiable(self.current_map())
    }

    pub(super) fn solve(&mut self) -> Status {
        let status = self.solve_components();
        if let Status::Satisfiable(f) = &status {
            self.check(f);
        }
        status
    }

    fn current_map(&self) -> CoverMap {
        let pick = |d: Bits| {
            debug_assert!(single(d));
            d.trailing_zeros() as usize
        };
        CoverMap {
            vmap: self.vdom.iter().map(|&d| pick(d)).collect(),
            emap: self.edom.iter().map(|&d| pick(d)).collect(),
        }
    }

    fn check(&self, f: &CoverMap) {
        if let Err(v) = verify_list_cover(self.g, self.h, f, self.lists, self.mode) {
            panic!("solver produced an invalid map: {v}");
        }
    }

    // ----- enumeration -----

    pub(super) fn enumerate(
        &mut self,
        limit: Option<usize>,
        distinct_vertex_maps: bool,
        sink: &mut dyn FnMut(&CoverMap) -> bool,
    ) -> EnumSummary {
        let mut summary = EnumSummary {
            count: 0,
            truncated: false,
            resource_limit: false,
            stats: Stats::default(),
        };
        // A component without covers empties the product; find out before
        // enumerating the others.
        let base = self.trail.len();
        let status = self.solve_components();
        self.undo(base);
        match status {
            Status::Unsatisfiable => {
                summary.stats = self.stats();
                return summary;
            }
            Status::ResourceLimit => {
                summary.resource_limit = true;
                summary.stats = self.stats();
                return summary;
            }
            Status::Satisfiable(_) => {}
        }
        if limit == Some(0) {
            summary.truncated = true;
            summary.stats = self.stats();
            return summary;
        }
        let mut ctx = EnumCtx {
            limit,
            distinct: distinct_vertex_maps,
            count: 0,
            truncated: false,
            sink,
        };
        let flow = self.enum_vertices(0, &mut ctx);
        summary.count = ctx.count;
        summary.truncated = ctx.truncated;
        summary.resource_limit = matches!(flow, Flow::Abort);
        summary.stats = self.stats();
        summary
    }

    fn emit(&mut self, ctx: &mut EnumCtx<'_>) -> Flow {
        let f = self.current_map();
        self.check(&f);
        ctx.count += 1;
        if !(ctx.sink)(&f) {
            ctx.truncated = true;
            return Flow::Stop;
        }
        if ctx.limit.is_some_and(|l| ctx.count >= l) {
            ctx.truncated = true;
            return Flow::Stop;
        }
        Flow::Continue
    }

    fn enum_vertices(&mut self, ci: usize, ctx: &mut EnumCtx<'_>) -> Flow {
        if self.out_of_budget() {
            return Flow::Abort;
        }
        let comps = Rc::clone(&self.comps);
        if ci == comps.len() {
            return self.emit(ctx);
        }
        let comp = &comps[ci];
        let Some(v) = self.select_vertex(comp) else {
            return self.enum_edges(ci, ctx);
        };
        for x in Ones(self.vdom[v]) {
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign_vertex(v, x) {
                match self.enum_vertices(ci, ctx) {
                    Flow::Continue => {}
                    other => {
                        self.undo(mark);
                        return other;
                    }
                }
            }
            self.undo(mark);
        }
        Flow::Continue
    }

    fn enum_edges(&mut self, ci: usize, ctx: &mut EnumCtx<'_>) -> Flow {
        let comps = Rc::clone(&self.comps);
        let comp = &comps[ci];
        let mark = self.trail.len();
        if !self.settle(comp) {
            self.undo(mark);
            return Flow::Continue;
        }
        let flow = if ctx.distinct {
            match self.solve_edges(comp) {
                Flow::Stop => self.enum_vertices(ci + 1, ctx),
                other => other,
            }
        } else {
            let groups = self.edge_groups(comp);
            self.enum_groups(ci, &groups, 0, ctx)
        };
        self.undo(mark);
        flow
    }

    fn enum_groups(
        &mut self,
        ci: usize,
        groups: &[Vec<usize>],
        j: usize,
        ctx: &mut EnumCtx<'_>,
    ) -> Flow {
        if self.out_of_budget() {
            return Flow::Abort;
        }
        if j == groups.len() {
            return self.enum_vertices(ci + 1, ctx);
        }
        let Some(e) = self.select_edge(&groups[j]) else {
            return self.enum_groups(ci, groups, j + 1, ctx);
        };
        for t in Ones(self.edom[e]) {
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign_edge(e, t) {
                match self.enum_groups(ci, groups, j, ctx) {
                    Flow::Continue => {}
                    other => {
                        self.undo(mark);
                        return other;
                    }
                }
            }
            self.undo(mark);
        }
        Flow::Continue
    }
}

struct EnumCtx<'s> {
    limit: Option<usize>,
    distinct: bool,
    count: usize,
    truncated: bool,
    sink: &'s mut dyn FnMut(&CoverMap) -> bool,
}

/// Breadth-first order of `comp` from its smallest vertex.
fn bfs_order(g: &Multigraph, comp: &[usize]) -> Vec<usize> {
    let Some(&first) = comp.first() else {
        return Vec::new();
    };
    let mut seen = std::collections::HashSet::with_capacity(comp.len());
    let mut order = Vec::with_capacity(comp.len());
    seen.insert(first);
    order.push(first);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for w in g.neighbors(v) {
            if seen.insert(w) {
                order.push(w);
            }
        }
    }
    // Without the component split, `comp` may span several components.
    for &v in comp {
        if seen.insert(v) {
            order.push(v);
            let mut j = order.len() - 1;
            while j < order.len() {
                let u = order[j];
                j += 1;
                for w in g.neighbors(u) {
                    if seen.insert(w) {
                        order.push(w);
                    }
                }
            }
        }
    }
    order
}

/// Distributes the items (edges at a source vertex) onto the units (edge
/// ends at a target vertex). Loop items take both units of one target loop.
/// In exact mode every unit must be used.
#[allow(clippy::too_many_arguments)]
fn distribute(
    cand: &[Bits],
    loop_item: &[bool],
    units: &[usize],
    exact: bool,
    assign: &mut Vec<usize>,
    owner: &mut Vec<usize>,
    seen: &mut Vec<bool>,
    blocked: &mut Vec<bool>,
) -> bool {
    let demand: usize = loop_item.iter().map(|&l| if l { 2 } else { 1 }).sum();
    if demand > units.len() || (exact && demand != units.len()) {
        return false;
    }
    assign.clear();
    assign.resize(cand.len(), NONE);
    blocked.clear();
    blocked.resize(units.len(), false);
    let loop_items: Vec<usize> = (0..cand.len()).filter(|&i| loop_item[i]).collect();
    place_loops(cand, loop_item, &loop_items, 0, units, assign, owner, seen, blocked)
}

#[allow(clippy::too_many_arguments)]
fn place_loops(
    cand: &[Bits],
    loop_item: &[bool],
    loop_items: &[usize],
    k: usize,
    units: &[usize],
    assign: &mut Vec<usize>,
    owner: &mut Vec<usize>,
    seen: &mut Vec<bool>,
    blocked: &mut Vec<bool>,
) -> bool {
    if k == loop_items.len() {
        return match_singles(cand, loop_item, units, assign, owner, seen, blocked);
    }
    let i = loop_items[k];
    for u in 0..units.len() {
        // The two units of a loop are adjacent; use the first of the pair.
        if blocked[u] || u + 1 >= units.len() || units[u + 1] != units[u] {
            continue;
        }
        if u > 0 && units[u - 1] == units[u] {
            continue;
        }
        let t = units[u];
        if cand[i] & bit(t) == 0 {
            continue;
        }
        blocked[u] = true;
        blocked[u + 1] = true;
        assign[i] = t;
        if place_loops(cand, loop_item, loop_items, k + 1, units, assign, owner, seen, blocked) {
            return true;
        }
        blocked[u] = false;
        blocked[u + 1] = false;
        assign[i] = NONE;
    }
    false
}

fn match_singles(
    cand: &[Bits],
    loop_item: &[bool],
    units: &[usize],
    assign: &mut [usize],
    owner: &mut Vec<usize>,
    seen: &mut Vec<bool>,
    blocked: &[bool],
) -> bool {
    owner.clear();
    owner.resize(units.len(), NONE);
    for i in 0..cand.len() {
        if loop_item[i] {
            continue;
        }
        seen.clear();
        seen.resize(units.len(), false);
        if !augment(i, cand, units, owner, seen, blocked) {
            return false;
        }
    }
    for (u, &i) in owner.iter().enumerate() {
        if i != NONE {
            assign[i] = units[u];
        }
    }
    true
}

fn augment(
    i: usize,
    cand: &[Bits],
    units: &[usize],
    owner: &mut [usize],
    seen: &mut [bool],
    blocked: &[bool],
) -> bool {
    for u in 0..units.len() {
        if blocked[u] || seen[u] || cand[i] & bit(units[u]) == 0 {
            continue;
        }
        seen[u] = true;
        if owner[u] == NONE || augment(owner[u], cand, units, owner, seen, blocked) {
            owner[u] = i;
            return true;
        }
    }
    false
}
