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

//! Acceptance run: one line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::Rng;

use semicover::constructions::{
    colored_product, default_plan_size, multicover, permutations, proper_edge_coloring, split_vertex,
    times_k2, ColoredFactor, EdgeColoring, FactorPlan, MulticoverOptions,
};
use semicover::covering::verify_cover;
use semicover::graph::generate::{
    complete, complete_bipartite, cycle, one_vertex, open_path, petersen, ring, ring_vertex, sausages,
    triple_edge,
};
use semicover::graph::iso::are_isomorphic;
use semicover::graph::{EdgeKind, Multigraph};
use semicover::polyalgo::{decide, decide_loop_semi};
use semicover::random::{self, Density, InstanceRng};
use semicover::reductions::gadgets::{behavior_table, one_gadget, zero_one_gadget};
use semicover::reductions::{
    lift_via_k2, reduce_fourring, reduce_hypergraph, reduce_ring_hom, reduce_ring_list, ReductionOutput,
};
use semicover::solver::oracle::{oracle, oracle_all, OracleLimits};
use semicover::solver::{enumerate_partial, solve, Budget, SolveOutcome, SolverOptions};
use semicover::{CoverMap, ListAssignment, Mode};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("{what} took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
    } else {
        Ok(())
    }
}

/// Count-form cover check: incidences kept and, at every vertex, each
/// target edge at the image hit once per end it has there.
fn is_cover(g: &Multigraph, h: &Multigraph, f: &CoverMap) -> bool {
    let incidences = g.edges().iter().enumerate().all(|(e, edge)| {
        let t = h.edge(f.emap[e]);
        let a = f.vmap[edge.ends[0]];
        let b = f.vmap[edge.ends[1]];
        match (edge.kind, t.kind) {
            (EdgeKind::Semi, EdgeKind::Semi) | (EdgeKind::Loop, EdgeKind::Loop) => a == t.ends[0],
            (EdgeKind::Ordinary, EdgeKind::Semi | EdgeKind::Loop) => a == t.ends[0] && b == t.ends[0],
            (EdgeKind::Ordinary, EdgeKind::Ordinary) => {
                (a, b) == (t.ends[0], t.ends[1]) || (b, a) == (t.ends[0], t.ends[1])
            }
            _ => false,
        }
    });
    incidences
        && (0..g.vertex_count()).all(|v| {
            let x = f.vmap[v];
            let mut hits = vec![0usize; h.edge_count()];
            for &e in g.incident(v) {
                hits[f.emap[e]] += if g.edge(e).kind == EdgeKind::Loop { 2 } else { 1 };
            }
            hits.iter()
                .enumerate()
                .all(|(t, &n)| n == ends_at(h, t, x))
        })
}

/// Edge-ends of target edge `t` at `x`.
fn ends_at(h: &Multigraph, t: usize, x: usize) -> usize {
    let e = h.edge(t);
    match e.kind {
        EdgeKind::Semi => usize::from(e.ends[0] == x),
        EdgeKind::Loop => 2 * usize::from(e.ends[0] == x),
        EdgeKind::Ordinary => e.ends.iter().filter(|&&y| y == x).count(),
    }
}

fn respects(f: &CoverMap, lists: &ListAssignment) -> bool {
    f.vmap.iter().enumerate().all(|(v, &x)| lists.allows_vertex(v, x))
        && f.emap.iter().enumerate().all(|(e, &t)| lists.allows_edge(e, t))
}

/// Brute-force colouring search: `n` slots, `palette` colours, unary
/// `allowed`, binary `ok` on every pair.
fn csp(
    n: usize,
    palette: usize,
    allowed: &dyn Fn(usize, usize) -> bool,
    pairs: &[(usize, usize)],
    ok: &dyn Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let mut c = vec![0; n];
    let mut i = 0;
    let mut next = vec![0; n + 1];
    loop {
        if i == n {
            return Some(c);
        }
        let mut placed = false;
        while next[i] < palette {
            let col = next[i];
            next[i] += 1;
            if !allowed(i, col) {
                continue;
            }
            c[i] = col;
            let fits = pairs.iter().all(|&(u, v)| {
                let other = if u == i { v } else if v == i { u } else { return true };
                other > i || ok(c[i], c[other])
            });
            if fits {
                placed = true;
                break;
            }
        }
        if placed {
            i += 1;
            next[i] = 0;
        } else if i == 0 {
            return None;
        } else {
            i -= 1;
        }
    }
}

fn edges_of(g: &Multigraph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| (e.ends[0], e.ends[1])).collect()
}

fn cycle_adjacent(m: usize) -> impl Fn(usize, usize) -> bool {
    move |x, y| (x + 1) % m == y || (y + 1) % m == x
}

fn path(n: usize) -> Multigraph {
    let mut g = Multigraph::new();
    for i in 0..n {
        g.add_vertex(format!("p{i}")).unwrap();
        if i > 0 {
            g.add_ordinary(format!("q{i}"), i - 1, i).unwrap();
        }
    }
    g
}

fn incidence(g: &Multigraph) -> Multigraph {
    let mut out = Multigraph::new();
    for v in 0..g.vertex_count() {
        out.add_vertex(g.vertex_id(v)).unwrap();
    }
    for e in g.edges() {
        let a = out.add_vertex(format!("e{}", e.id)).unwrap();
        out.add_ordinary(format!("{}a", e.id), a, e.ends[0]).unwrap();
        out.add_ordinary(format!("{}b", e.id), a, e.ends[1]).unwrap();
    }
    out
}

fn solved(out: &ReductionOutput, limit: Duration) -> Result<SolveOutcome, String> {
    solve(&out.graph, &out.target, &out.lists, Budget::time(limit)).map_err(|e| e.to_string())
}

/// Checks the witness, translates it back and checks the certificate.
fn certificate(out: &ReductionOutput, sol: &SolveOutcome) -> Result<Vec<usize>, String> {
    let f = sol.witness().ok_or("no witness")?;
    ensure!(is_cover(&out.graph, &out.target, f) && respects(f, &out.lists), "witness is not a list cover");
    let cert = out.back_translate(f).map_err(|e| e.to_string())?;
    Ok(cert.colors)
}

/// Lists for `g` onto `h` at `density`, planted on a cover when one exists.
fn random_lists(rng: &mut InstanceRng, g: &Multigraph, h: &Multigraph, density: Density) -> ListAssignment {
    let planted = oracle(g, h, &ListAssignment::full()).ok().and_then(|o| o.witness().cloned());
    random::lists(rng, g, h, density, planted.as_ref())
}

fn c1_solver_matches_oracle() -> Outcome {
    let start = Instant::now();
    let targets = [
        ("C3", cycle(3).unwrap()),
        ("C4", cycle(4).unwrap()),
        ("F(2,0)", one_vertex(2, 0)),
        ("F(1,1)", one_vertex(1, 1)),
        ("F(0,3)", one_vertex(0, 3)),
        ("triple edge", triple_edge()),
        ("K2", complete(2).unwrap()),
    ];
    let mut rng = random::rng(1);
    let (mut runs, mut sat) = (0, 0);
    for round in 0..24 {
        for (name, h) in &targets {
            for density in Density::ALL {
                let g = if round % 2 == 0 {
                    let n = rng.gen_range(1..=8 / h.vertex_count());
                    random::lift(&mut rng, h, n).0
                } else {
                    let n = rng.gen_range(1..=8);
                    let m = rng.gen_range(0..=2 * n);
                    random::multigraph(&mut rng, n, m, 0.15, 0.15)
                };
                let (g, _, _) = random::shuffle(&mut rng, &g);
                let lists = random_lists(&mut rng, &g, h, density);
                let fast = solve(&g, h, &lists, Budget::unlimited()).map_err(|e| e.to_string())?;
                let slow = oracle(&g, h, &lists).map_err(|e| e.to_string())?;
                ensure!(
                    fast.verdict() == slow.verdict(),
                    "{name}, {density:?}: solver {:?}, oracle {:?}",
                    fast.verdict(),
                    slow.verdict()
                );
                if let Some(f) = fast.witness() {
                    ensure!(is_cover(&g, h, f) && respects(f, &lists), "{name}: bad witness");
                    sat += 1;
                }
                runs += 1;
            }
        }
    }
    within(start, Duration::from_secs(300), "oracle comparison")?;
    Ok(format!("{runs} instances, {sat} satisfiable, 0 disagreements"))
}

fn c2_two_regular_targets() -> Outcome {
    let mut targets = Vec::new();
    for t in 1..=4 {
        targets.push((format!("C{t}"), cycle(t).unwrap()));
        targets.push((format!("P{t}"), open_path(t).unwrap()));
    }
    let mut rng = random::rng(2);
    let (mut runs, mut sat) = (0, 0);
    for n in 1..=12 {
        for g in [cycle(n).unwrap(), open_path(n).unwrap()] {
            for (name, h) in &targets {
                for density in Density::ALL {
                    let lists = random_lists(&mut rng, &g, h, density);
                    let poly = decide(h, &g, &lists)
                        .map_err(|e| e.to_string())?
                        .ok_or_else(|| format!("{name} not dispatched"))?;
                    let slow = oracle(&g, h, &lists).map_err(|e| e.to_string())?;
                    ensure!(poly.verdict() == slow.verdict(), "n={n} onto {name}, {density:?}");
                    if let Some(f) = poly.witness() {
                        ensure!(is_cover(&g, h, f) && respects(f, &lists), "bad witness onto {name}");
                        sat += 1;
                    }
                    runs += 1;
                }
            }
        }
    }
    let (c6, c3) = (cycle(6).unwrap(), cycle(3).unwrap());
    let all = oracle_all(&c6, &c3, &ListAssignment::full(), Mode::Total, OracleLimits::default())
        .map_err(|e| e.to_string())?;
    let solver = semicover::solver::enumerate(&c6, &c3, &ListAssignment::full(), None).map_err(|e| e.to_string())?;
    ensure!(all.len() == 6 && solver.maps.len() == 6, "C6 onto C3: {} and {} covers", all.len(), solver.maps.len());
    Ok(format!("{runs} instances, {sat} satisfiable, 0 disagreements; C6 onto C3 has 6 covers"))
}

fn c3_loop_and_semi() -> Outcome {
    let h = one_vertex(1, 1);
    let mut rng = random::rng(3);
    let mut sat = 0;
    for i in 0..200 {
        let n = rng.gen_range(1..=12);
        let p_semi = if i % 2 == 0 { 0.0 } else { 0.2 };
        let g = random::cubic(&mut rng, n, p_semi);
        let density = Density::ALL[i % 3];
        let lists = random_lists(&mut rng, &g, &h, density);
        let poly = decide_loop_semi(&h, &g, &lists).map_err(|e| e.to_string())?;
        let slow = oracle(&g, &h, &lists).map_err(|e| e.to_string())?;
        ensure!(poly.verdict() == slow.verdict(), "instance {i} (n={n}) disagrees");
        if let Some(f) = poly.witness() {
            ensure!(is_cover(&g, &h, f) && respects(f, &lists), "instance {i}: bad witness");
            sat += 1;
        }
    }
    let k4 = complete(4).unwrap();
    let out = decide_loop_semi(&h, &k4, &ListAssignment::full()).map_err(|e| e.to_string())?;
    ensure!(out.is_sat(), "K4 should cover the loop with a semi-edge");
    Ok(format!("200 cubic instances, {sat} satisfiable, 0 disagreements; K4 satisfiable"))
}

fn colored(rng: &mut InstanceRng, g: Multigraph) -> ColoredFactor {
    let base = proper_edge_coloring(&g, 3).unwrap();
    let perms = permutations(3);
    let coloring: EdgeColoring = base.permuted(&perms[rng.gen_range(0..perms.len())]);
    ColoredFactor::new(g, coloring).unwrap()
}

fn c4_product_projections() -> Outcome {
    let mut rng = random::rng(4);
    let mut checked = 0;
    for _ in 0..50 {
        let count = rng.gen_range(2..=3);
        let factors: Vec<ColoredFactor> = (0..count)
            .map(|_| {
                let g = match rng.gen_range(0..3) {
                    0 => triple_edge(),
                    1 => complete_bipartite(3).unwrap(),
                    _ => complete(4).unwrap(),
                };
                colored(&mut rng, g)
            })
            .collect();
        let p = colored_product(&factors).map_err(|e| e.to_string())?;
        for (i, f) in p.projections.iter().enumerate() {
            let h = &factors[i].graph;
            ensure!(verify_cover(&p.product, h, f).is_ok(), "projection {i} fails the verifier");
            ensure!(is_cover(&p.product, h, f), "projection {i} fails the count check");
            checked += 1;
        }
    }
    Ok(format!("50 products, {checked} projections verified"))
}

fn c5_split_partial_covers() -> Outcome {
    let mut report = Vec::new();
    for (name, h) in [("K33", complete_bipartite(3).unwrap()), ("triple edge", triple_edge())] {
        let start = Instant::now();
        let s = split_vertex(&h, 0).map_err(|e| e.to_string())?;
        let all = enumerate_partial(&s.graph, &h, &ListAssignment::full(), None).map_err(|e| e.to_string())?;
        ensure!(!all.truncated && !all.resource_limit, "{name}: enumeration incomplete");
        ensure!(!all.maps.is_empty(), "{name}: no partial covers");
        for f in &all.maps {
            let images: BTreeSet<usize> = s.pendant_vertices.iter().map(|&p| f.vmap[p]).collect();
            let edges: BTreeSet<usize> = s.pendant_edges.iter().map(|&e| f.emap[e]).collect();
            ensure!(images.len() == 1, "{name}: pendants split over {images:?}");
            ensure!(edges.len() == s.pendant_edges.len(), "{name}: pendant edges collide");
        }
        within(start, Duration::from_secs(60), name)?;
        report.push(format!("{name}: {} partial covers", all.maps.len()));
    }
    Ok(report.join("; "))
}

fn c6_multicover_demands() -> Outcome {
    let h = complete_bipartite(3).unwrap();
    let m = multicover(&h, &MulticoverOptions { plan: FactorPlan::SelfCover, max_vertices: 1 << 16 })
        .map_err(|e| e.to_string())?;
    let demands = m.demands(&h);
    ensure!(demands.len() == 36, "{} demands", demands.len());
    let at_u = m.graph.incident(m.u).to_vec();
    let mut slowest = Duration::ZERO;
    for d in &demands {
        let mut lists = ListAssignment::full();
        lists.pin_vertex(m.u, d.x);
        for (&e, &t) in at_u.iter().zip(&d.edges) {
            lists.pin_edge(e, t);
        }
        let start = Instant::now();
        let out = solve(&m.graph, &h, &lists, Budget::unlimited()).map_err(|e| e.to_string())?;
        slowest = slowest.max(start.elapsed());
        within(start, Duration::from_secs(1), "pinned solve")?;
        let f = out.witness().ok_or_else(|| format!("demand {d:?} not realised"))?;
        ensure!(is_cover(&m.graph, &h, f) && respects(f, &lists), "demand {d:?}: bad witness");
    }

    let start = Instant::now();
    let t = triple_edge();
    let base = proper_edge_coloring(&t, 3).map_err(|e| e.to_string())?;
    let factors: Vec<ColoredFactor> = (0..t.vertex_count())
        .flat_map(|_| permutations(3))
        .map(|p| ColoredFactor::new(t.clone(), base.permuted(&p)).unwrap())
        .collect();
    let raw = colored_product(&factors).map_err(|e| e.to_string())?;
    let before = raw.product.vertex_count() * if raw.product.has_parallel_edges() { 6 } else { 1 };
    ensure!(default_plan_size(2, 3).1 == Some(raw.product.vertex_count()), "plan size mismatch");
    let mc = multicover(&t, &MulticoverOptions::default()).map_err(|e| e.to_string())?;
    for (i, p) in mc.projections.iter().enumerate() {
        ensure!(verify_cover(&mc.graph, &t, p).is_ok() && is_cover(&mc.graph, &t, p), "projection {i} fails");
    }
    ensure!(mc.missing_demands(&t).is_empty(), "triple edge multicover misses demands");
    within(start, Duration::from_secs(120), "triple edge multicover")?;
    Ok(format!(
        "36 demands realised (slowest {:.0} ms); triple edge multicover: {before} vertices before extraction, {} after, {} projections verified",
        slowest.as_secs_f64() * 1000.0,
        mc.graph.vertex_count(),
        mc.projections.len()
    ))
}

fn c7_sausages() -> Outcome {
    let mut counts = Vec::new();
    for k in 2..=5 {
        let r = ring(k).map_err(|e| e.to_string())?;
        let variants = sausages(k).map_err(|e| e.to_string())?;
        for (i, s) in variants.iter().enumerate() {
            ensure!(are_isomorphic(&times_k2(s), &r).is_some(), "k={k} variant {i} is not a ring");
        }
        counts.push(variants.len());
    }
    ensure!(counts[1] == 2 && counts[2] == 4, "variant counts {counts:?} for k = 2..5");
    Ok(format!("variant counts for k = 2..5: {counts:?}, all products isomorphic to the ring"))
}

fn c8_ring_hom() -> Outcome {
    let limit = Duration::from_secs(120);
    let c3 = cycle(3).unwrap();
    let pairs = edges_of(&c3);
    ensure!(csp(3, 3, &|_, _| true, &pairs, &cycle_adjacent(3)).is_some(), "oracle: C3 should map");
    let start = Instant::now();
    let out = reduce_ring_hom(&c3, 0, 0).map_err(|e| e.to_string())?;
    ensure!(out.graph.is_simple(), "instance not simple");
    let sol = solved(&out, limit)?;
    within(start, limit, "C3")?;
    ensure!(sol.is_sat(), "C3 instance: {:?}", sol.verdict());
    let cert = certificate(&out, &sol)?;
    ensure!(
        pairs.iter().all(|&(u, v)| cycle_adjacent(3)(cert[u], cert[v])),
        "back-translated map {cert:?} is not a homomorphism"
    );

    let k4 = complete(4).unwrap();
    ensure!(csp(4, 3, &|_, _| true, &edges_of(&k4), &cycle_adjacent(3)).is_none(), "oracle: K4 maps");
    let start = Instant::now();
    let out = reduce_ring_hom(&k4, 0, 0).map_err(|e| e.to_string())?;
    let sol = solved(&out, limit)?;
    within(start, limit, "K4")?;
    ensure!(sol.is_unsat(), "K4 instance: {:?}", sol.verdict());
    Ok(format!("C3 satisfiable with homomorphism {cert:?}; K4 unsatisfiable in {:.1}s", start.elapsed().as_secs_f64()))
}

fn c9_fourring() -> Outcome {
    let h = ring(4).unwrap();
    let pins: Vec<Vec<usize>> = (0..8).map(|x| vec![x, x ^ 1]).collect();
    let solver = SolverOptions::default();
    let one = behavior_table(&one_gadget(), &h, &["lw", "lb"], &pins, solver).map_err(|e| e.to_string())?;
    let zero_one =
        behavior_table(&zero_one_gadget(), &h, &["lw", "lb"], &pins, solver).map_err(|e| e.to_string())?;
    let pair = |j: usize, primed_first: bool| -> Vec<String> {
        let a = ring_vertex(4, (j + 3) % 4 + 1, primed_first);
        vec![h.vertex_id(a).to_owned(), h.vertex_id(a ^ 1).to_owned()]
    };
    for j in 1..=4 {
        for primed in [false, true] {
            let key = pair(j, primed);
            let step = if primed { 3 } else { 1 };
            let next = pair((j + step - 1) % 4 + 1, primed);
            ensure!(one.rows[&key] == BTreeSet::from([next.clone()]), "one-gadget row {key:?}");
            ensure!(zero_one.rows[&key] == BTreeSet::from([key.clone(), next]), "zero-one row {key:?}");
        }
    }

    let limit = Duration::from_secs(600);
    let distinct = |a: usize, b: usize| a != b;
    let k4 = complete(4).unwrap();
    let pairs = edges_of(&k4);
    let start = Instant::now();
    let out = reduce_fourring(&k4).map_err(|e| e.to_string())?;
    ensure!(out.graph.is_simple(), "instance not simple");
    let sol = solved(&out, limit)?;
    within(start, limit, "K4")?;
    ensure!(sol.is_sat(), "K4 instance: {:?}", sol.verdict());
    let cert = certificate(&out, &sol)?;
    ensure!(pairs.iter().all(|&(u, v)| cert[u] != cert[v]) && cert.iter().all(|&c| c < 4), "bad colouring {cert:?}");
    let k4_time = start.elapsed();

    let k5 = complete(5).unwrap();
    ensure!(csp(5, 4, &|_, _| true, &edges_of(&k5), &distinct).is_none(), "oracle: K5 is 4-colourable");
    let start = Instant::now();
    let out = reduce_fourring(&k5).map_err(|e| e.to_string())?;
    let sol = solved(&out, limit)?;
    within(start, limit, "K5")?;
    ensure!(sol.is_unsat(), "K5 instance: {:?}", sol.verdict());
    Ok(format!(
        "gadget tables confirmed; K4 satisfiable ({:.1}s, colouring {cert:?}); K5 unsatisfiable ({:.1}s)",
        k4_time.as_secs_f64(),
        start.elapsed().as_secs_f64()
    ))
}

fn c10_ring_lists() -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(10);
    let mut sat = 0;
    for i in 0..20 {
        let g = path(if i < 10 { 2 } else { rng.gen_range(3..=4) });
        let n = g.vertex_count();
        let lists: Vec<Vec<usize>> = (0..n).map(|_| (0..8).filter(|_| rng.gen_bool(0.35)).collect()).collect();
        let pairs = edges_of(&g);
        let expect = csp(n, 8, &|s, c| lists[s].contains(&c), &pairs, &cycle_adjacent(8));
        let out = reduce_ring_list(&g, &lists, 3).map_err(|e| e.to_string())?;
        ensure!(out.graph.is_simple(), "instance {i} not simple");
        let sol = solved(&out, Duration::from_secs(300))?;
        ensure!(sol.verdict() == Some(expect.is_some()), "instance {i} {lists:?}: {:?}", sol.verdict());
        if sol.is_sat() {
            let cert = certificate(&out, &sol)?;
            let ok = pairs.iter().all(|&(u, v)| cycle_adjacent(8)(cert[u], cert[v]))
                && (0..n).all(|s| lists[s].contains(&cert[s]));
            ensure!(ok, "instance {i}: back-translated {cert:?} is not a list homomorphism");
            sat += 1;
        }
    }
    within(start, Duration::from_secs(300), "list instances")?;
    Ok(format!("20 instances, {sat} satisfiable, 0 disagreements"))
}

fn c11_hypergraph() -> Outcome {
    let limit = Duration::from_secs(600);
    let h = complete_bipartite(3).unwrap();
    let gadget = split_vertex(&h, 0).map_err(|e| e.to_string())?;
    let k4 = complete(4).unwrap();
    let start = Instant::now();
    let out = reduce_hypergraph(&incidence(&k4), &h, &gadget).map_err(|e| e.to_string())?;
    let sol = solved(&out, limit)?;
    within(start, limit, "K4")?;
    ensure!(sol.is_sat(), "K4 incidence: {:?}", sol.verdict());
    let cert = certificate(&out, &sol)?;
    for v in 0..k4.vertex_count() {
        let seen: BTreeSet<usize> = k4.incident(v).iter().map(|&e| cert[e]).collect();
        ensure!(seen == BTreeSet::from([0, 1, 2]), "vertex {v} sees colours {seen:?}");
    }

    let p = petersen();
    let start = Instant::now();
    let out = reduce_hypergraph(&incidence(&p), &h, &gadget).map_err(|e| e.to_string())?;
    ensure!(out.graph.is_simple(), "instance not simple");
    let sol = solved(&out, limit)?;
    within(start, limit, "Petersen")?;
    ensure!(sol.is_unsat(), "Petersen incidence: {:?}", sol.verdict());
    Ok(format!(
        "K4 satisfiable with rainbow colouring {cert:?}; Petersen unsatisfiable ({:.1}s)",
        start.elapsed().as_secs_f64()
    ))
}

fn c12_lift() -> Outcome {
    let mut rng = random::rng(12);
    let (mut runs, mut sat) = (0, 0);
    for k in [3, 4] {
        let variants = sausages(k).map_err(|e| e.to_string())?;
        let r = ring(k).map_err(|e| e.to_string())?;
        for i in 0..25 {
            let s = &variants[i % variants.len()];
            let rs = times_k2(s);
            let g = if i % 5 == 4 {
                loop {
                    let g = random::cubic(&mut rng, 2 * k, 0.0);
                    if g.two_coloring().is_some() {
                        break g;
                    }
                }
            } else {
                let n = rng.gen_range(1..=2);
                random::lift(&mut rng, &rs, n).0
            };
            let mut lists = ListAssignment::full();
            if i % 3 != 0 {
                for v in 0..g.vertex_count() {
                    lists.restrict_vertex(v, (0..rs.vertex_count()).filter(|_| rng.gen_bool(0.6)));
                }
            }
            let mut calls = 0;
            let lifted = lift_via_k2(&g, &lists, s, &mut |sub, l| {
                calls += 1;
                solve(sub, s, l, Budget::unlimited())
            })
            .map_err(|e| e.to_string())?;
            let direct = solve(&g, &rs, &lists, Budget::unlimited()).map_err(|e| e.to_string())?;
            ensure!(lifted.verdict() == direct.verdict(), "k={k} instance {i} disagrees");
            if let Some(f) = lifted.witness() {
                ensure!(is_cover(&g, &rs, f) && respects(f, &lists), "k={k} instance {i}: bad cover");
                ensure!(are_isomorphic(&rs, &r).is_some(), "product is not the ring");
                sat += 1;
            }
            ensure!(calls >= 1, "no oracle call for a bipartite input");
            runs += 1;
        }
    }
    let s = sausages(3).unwrap().remove(0);
    for g in [complete(4).unwrap(), petersen(), cycle(5).unwrap()] {
        let mut calls = 0;
        let out = lift_via_k2(&g, &ListAssignment::full(), &s, &mut |sub, l| {
            calls += 1;
            solve(sub, &s, l, Budget::unlimited())
        })
        .map_err(|e| e.to_string())?;
        ensure!(out.is_unsat() && calls == 0, "non-bipartite input reached the oracle");
    }
    Ok(format!("{runs} bipartite instances, {sat} satisfiable, 0 disagreements; non-bipartite inputs rejected"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("solver agrees with the brute-force oracle", c1_solver_matches_oracle),
        ("two-regular targets: polynomial decider agrees with the oracle", c2_two_regular_targets),
        ("loop plus semi-edge target: decider agrees with the oracle", c3_loop_and_semi),
        ("colored product projections are covers", c4_product_projections),
        ("split gadget partial covers keep pendants together", c5_split_partial_covers),
        ("multicover demands and the triple edge multicover", c6_multicover_demands),
        ("sausages times K2 are rings", c7_sausages),
        ("ring homomorphism reduction end to end", c8_ring_hom),
        ("four-colouring reduction and gadget tables", c9_fourring),
        ("list homomorphism to C8 reduction against brute force", c10_ring_lists),
        ("rainbow colouring reduction on K4 and Petersen", c11_hypergraph),
        ("lifting through the K2 product", c12_lift),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| (*s).to_owned()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
