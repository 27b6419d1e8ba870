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

use std::collections::BTreeSet;

use rand::Rng;

use super::*;
use crate::constructions::{split_vertex, times_k2};
use crate::covering::{verify_cover, verify_list_cover, Mode};
use crate::graph::generate::{complete, complete_bipartite, cycle, petersen, ring, sausages};
use crate::graph::iso::are_isomorphic;
use crate::random;
use crate::solver::{for_each_cover, solve, Budget, EnumOptions, SolveOutcome, SolverOptions};

/// Backtracking over `n` slots with `palette` colours, unary `allowed` and
/// `ok` on every pair.
fn csp(
    n: usize,
    palette: usize,
    allowed: &dyn Fn(usize, usize) -> bool,
    pairs: &[(usize, usize)],
    ok: &dyn Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    fn go(
        i: usize,
        c: &mut Vec<usize>,
        palette: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        pairs: &[(usize, usize)],
        ok: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        if i == c.len() {
            return true;
        }
        for col in (0..palette).filter(|&col| allowed(i, col)) {
            c[i] = col;
            let fits = pairs.iter().all(|&(u, v)| {
                let (u, v) = if u == i { (u, v) } else if v == i { (v, u) } else { return true };
                v > i || ok(c[u], c[v])
            });
            if fits && go(i + 1, c, palette, allowed, pairs, ok) {
                return true;
            }
        }
        false
    }
    let mut c = vec![0; n];
    go(0, &mut c, palette, allowed, pairs, ok).then_some(c)
}

fn holds(cert: &[usize], pairs: &[(usize, usize)], ok: &dyn Fn(usize, usize) -> bool) -> bool {
    pairs.iter().all(|&(u, v)| ok(cert[u], cert[v]))
}

/// Simple path on `n` vertices.
fn path(n: usize) -> crate::error::Result<Multigraph> {
    let mut g = Multigraph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}"))?;
        if i > 0 {
            g.add_ordinary(format!("e{i}"), i - 1, i)?;
        }
    }
    Ok(g)
}

fn edges_of(g: &Multigraph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| (e.ends[0], e.ends[1])).collect()
}

fn cycle_ok(m: usize) -> impl Fn(usize, usize) -> bool {
    move |x, y| (x + 1) % m == y || (y + 1) % m == x
}

fn distinct(x: usize, y: usize) -> bool {
    x != y
}

/// Vertices of `g` (degree `k`) followed by one vertex per edge (degree 2).
fn incidence(g: &Multigraph) -> Multigraph {
    let mut out = g.induced(&[]).0;
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

/// Pairs of edges of `g` that share a vertex.
fn line_pairs(g: &Multigraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let inc = g.incident(v);
        for (i, &e) in inc.iter().enumerate() {
            for &f in &inc[i + 1..] {
                out.push((e, f));
            }
        }
    }
    out
}

fn solve_out(out: &ReductionOutput) -> SolveOutcome {
    solve(&out.graph, &out.target, &out.lists, Budget::unlimited()).unwrap()
}

/// Witness translates to a certificate, and the certificate re-hints to a
/// cover with the same translation.
fn round_trip(out: &ReductionOutput, sol: &SolveOutcome, check: &dyn Fn(&[usize]) -> bool) {
    let f = sol.witness().expect("satisfiable");
    verify_list_cover(&out.graph, &out.target, f, &out.lists, Mode::Total).unwrap();
    let cert = out.back_translate(f).unwrap();
    assert!(check(&cert.colors), "{:?}", cert.colors);
    out.manifest.source.verify(&cert).unwrap();
    let g = out.complete_hint(&cert, Budget::unlimited()).unwrap().expect("hint extends");
    verify_cover(&out.graph, &out.target, &g).unwrap();
    assert_eq!(out.back_translate(&g).unwrap(), cert);
}

fn ids(h: &Multigraph, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| h.vertex_id(x).to_owned()).collect()
}

#[test]
fn one_and_zero_one_tables() {
    let h = ring(4).unwrap();
    let pins: Vec<Vec<usize>> = (0..8).map(|x| vec![x, x ^ 1]).collect();
    let solver = SolverOptions::default();
    let one = behavior_table(&one_gadget(), &h, &["lw", "lb"], &pins, solver).unwrap();
    let zero_one = behavior_table(&zero_one_gadget(), &h, &["lw", "lb"], &pins, solver).unwrap();
    assert_eq!(one.outputs, ["rw", "rb"]);
    for x in 0..8 {
        // One step clockwise from an unprimed pair, counter-clockwise from a
        // primed one.
        let step = |s: usize| if x % 2 == 0 { (x + 2 * s) % 8 } else { (x + 8 - 2 * s) % 8 };
        let key = ids(&h, &[x, x ^ 1]);
        let expect_one: BTreeSet<_> = [ids(&h, &[step(1), step(1) ^ 1])].into();
        let expect_zero_one: BTreeSet<_> =
            [ids(&h, &[step(0), step(0) ^ 1]), ids(&h, &[step(1), step(1) ^ 1])].into();
        assert_eq!(one.rows[&key], expect_one);
        assert_eq!(zero_one.rows[&key], expect_zero_one);
    }
}

#[test]
fn vertex_gadget_tables() {
    let solver = SolverOptions::default();
    for (k, deg) in [(3, 2), (3, 3), (4, 2)] {
        let h = ring(k).unwrap();
        let spec = vertex_gadget(k, deg).unwrap();
        let pins: Vec<Vec<usize>> = (0..2 * k).map(|x| vec![x]).collect();
        let table = behavior_table(&spec, &h, &["b1"], &pins, solver).unwrap();
        for x in 0..2 * k {
            let expect: Vec<String> = table
                .outputs
                .iter()
                .map(|t| h.vertex_id(if t.starts_with('b') { x } else { x ^ 1 }).to_owned())
                .collect();
            assert_eq!(table.rows[&ids(&h, &[x])], BTreeSet::from([expect]), "k={k} deg={deg}");
        }
    }
}

#[test]
fn vertex_gadget_structure() {
    let g = vertex_gadget(5, 3).unwrap().graph;
    assert_eq!(g.vertex_count(), 2 * 30 + 6);
    assert!(g.two_coloring().is_some());
    assert!(g.is_simple());
    let leaves = (0..g.vertex_count()).filter(|&v| g.degree(v) == 1).count();
    assert_eq!(leaves, 6);
    assert!((0..g.vertex_count()).all(|v| matches!(g.degree(v), 1 | 3)));

    let spec = vertex_gadget(3, 1).unwrap();
    assert_eq!(spec.graph.vertex_count(), 14);
    assert!(are_isomorphic(&spec.graph, &enforcing_gadget(3).unwrap().graph).is_some());
    assert!(vertex_gadget(1, 2).is_err());
    assert!(vertex_gadget(3, 0).is_err());
}

#[test]
fn edge_gadget_structure() {
    for (k, alpha) in [(3, 0), (5, 0), (6, 1)] {
        let spec = edge_gadget(k, alpha).unwrap();
        let g = &spec.graph;
        assert!(g.is_simple());
        let twos: BTreeSet<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) == 2).collect();
        let terminals: BTreeSet<usize> = spec.terminals.iter().map(|t| t.1).collect();
        assert_eq!(twos, terminals, "k={k}");
        assert!((0..g.vertex_count()).all(|v| terminals.contains(&v) || g.degree(v) == 3));
    }
    assert_eq!(edge_gadget(3, 0).unwrap().kind, GadgetKind::Edge { k: 3, offset: 3 });
    assert_eq!(edge_gadget(6, 1).unwrap().kind, GadgetKind::Edge { k: 6, offset: 5 });
    assert!(edge_gadget(4, 0).is_err());
    assert!(edge_gadget(4, 2).is_err());
    assert!(edge_gadget_at(8, 4).is_err());
}

#[test]
fn edge_gadget_table() {
    let h = ring(3).unwrap();
    let spec = edge_gadget(3, 0).unwrap();
    let pins: Vec<Vec<usize>> = (0..6).map(|x| vec![x]).collect();
    let table = behavior_table(&spec, &h, &["ub"], &pins, SolverOptions::default()).unwrap();
    assert_eq!(table.outputs, ["uw", "vb", "vw"]);
    for x in 0..6 {
        let expect: BTreeSet<Vec<String>> = [2, 4]
            .iter()
            .map(|d| {
                let y = (x + d) % 6;
                ids(&h, &[x ^ 1, y, y ^ 1])
            })
            .collect();
        assert_eq!(table.rows[&ids(&h, &[x])], expect);
    }
}

#[test]
fn edge_gadget_layers_shift() {
    let h = ring(3).unwrap();
    let spec = edge_gadget(3, 0).unwrap();
    let g = &spec.graph;
    let mut lists = ListAssignment::full();
    lists.pin_vertex(spec.terminal("ub"), 0);
    let opts = EnumOptions {
        mode: Mode::Partial,
        distinct_vertex_maps: true,
        ..EnumOptions::default()
    };
    let mut seen = 0;
    for_each_cover(g, &h, &lists, &opts, |f| {
        let at = |j: usize, p: usize| f.vmap[g.vertex(&format!("c{j}.{p}")).unwrap()];
        // Each layer walks the ring, one position behind the previous one.
        let dir = if at(1, 2) == 1 { 1 } else { 5 };
        for j in 1..=3 {
            for p in 1..=6 {
                assert_eq!(at(j, p), (dir * (p - 1) + 6 - (j - 1)) % 6, "c{j}.{p}");
            }
        }
        seen += 1;
        true
    })
    .unwrap();
    assert_eq!(seen, 2);
}

#[test]
fn ring_hom_triangle_and_k4() {
    let c3 = reduce_ring_hom(&cycle(3).unwrap(), 0, 0).unwrap();
    assert!(c3.graph.is_simple());
    assert_eq!(c3.graph.regular_degree(), Some(3));
    assert!(c3.lists.is_full());
    let sol = solve_out(&c3);
    let pairs = edges_of(&cycle(3).unwrap());
    round_trip(&c3, &sol, &|c| holds(c, &pairs, &cycle_ok(3)));

    let k4 = complete(4).unwrap();
    assert_eq!(csp(4, 3, &|_, _| true, &edges_of(&k4), &cycle_ok(3)), None);
    let out = reduce_ring_hom(&k4, 0, 0).unwrap();
    assert!(out.graph.is_simple());
    assert!(solve_out(&out).is_unsat());
}

#[test]
fn ring_hom_matches_oracle() {
    let graphs = [
        ("path", path(4).unwrap()),
        ("c5", cycle(5).unwrap()),
        ("c4", cycle(4).unwrap()),
    ];
    for (alpha, beta) in [(0, 0), (0, 1), (1, 0)] {
        let m = 2 * beta + 3;
        for (name, g) in &graphs {
            let pairs = edges_of(g);
            let expect = csp(g.vertex_count(), m, &|_, _| true, &pairs, &cycle_ok(m)).is_some();
            let out = reduce_ring_hom(g, alpha, beta).unwrap();
            let sol = solve_out(&out);
            assert_eq!(sol.is_sat(), expect, "{name} alpha={alpha} beta={beta}");
            if expect {
                round_trip(&out, &sol, &|c| holds(c, &pairs, &cycle_ok(m)));
            }
        }
    }
}

#[test]
fn ring_hom_isolated_vertices() {
    let mut g = path(2).unwrap();
    g.add_vertex("lone").unwrap();
    let out = reduce_ring_hom(&g, 0, 0).unwrap();
    let sol = solve_out(&out);
    round_trip(&out, &sol, &|c| c.len() == 3 && c[0] != c[1]);
}

fn single_edge_lists(a: &[usize], b: &[usize]) -> ReductionOutput {
    reduce_ring_list(&path(2).unwrap(), &[a.to_vec(), b.to_vec()], 3).unwrap()
}

#[test]
fn ring_list_single_edge() {
    let sat = single_edge_lists(&[0], &[1]);
    assert!(sat.graph.is_simple());
    let sol = solve_out(&sat);
    round_trip(&sat, &sol, &|c| c == [0, 1]);
    assert!(solve_out(&single_edge_lists(&[0], &[4])).is_unsat());
    assert!(solve_out(&single_edge_lists(&[], &[1])).is_unsat());
}

#[test]
fn ring_list_matches_oracle() {
    let mut rng = random::rng(11);
    let g = path(3).unwrap();
    let pairs = edges_of(&g);
    for _ in 0..6 {
        let lists: Vec<Vec<usize>> = (0..3)
            .map(|_| (0..8).filter(|_| rng.gen_bool(0.3)).collect())
            .collect();
        let expect = csp(3, 8, &|s, c| lists[s].contains(&c), &pairs, &cycle_ok(8));
        let out = reduce_ring_list(&g, &lists, 3).unwrap();
        let sol = solve_out(&out);
        assert_eq!(sol.is_sat(), expect.is_some(), "{lists:?}");
        if expect.is_some() {
            round_trip(&out, &sol, &|c| {
                holds(c, &pairs, &cycle_ok(8)) && (0..3).all(|s| lists[s].contains(&c[s]))
            });
        }
    }
}

#[test]
fn ring_list_errors_and_isolated() {
    let g = path(2).unwrap();
    assert!(reduce_ring_list(&g, &[vec![0], vec![1]], 2).is_err());
    assert!(reduce_ring_list(&g, &[vec![0]], 3).is_err());
    assert!(reduce_ring_list(&g, &[vec![0], vec![8]], 3).is_err());
    let mut g = path(2).unwrap();
    g.add_vertex("lone").unwrap();
    let empty = reduce_ring_list(&g, &[vec![0], vec![1], vec![]], 3).unwrap();
    assert!(solve_out(&empty).is_unsat());
    let listed = reduce_ring_list(&g, &[vec![0], vec![1], vec![5]], 3).unwrap();
    let sol = solve_out(&listed);
    round_trip(&listed, &sol, &|c| c == [0, 1, 5]);
}

#[test]
fn fourring_small() {
    for (name, g, colourable) in [
        ("edge", path(2).unwrap(), true),
        ("triangle", cycle(3).unwrap(), true),
    ] {
        let pairs = edges_of(&g);
        assert_eq!(csp(g.vertex_count(), 4, &|_, _| true, &pairs, &distinct).is_some(), colourable);
        let out = reduce_fourring(&g).unwrap();
        assert!(out.graph.is_simple());
        assert_eq!(out.graph.regular_degree(), Some(3), "{name}");
        let sol = solve_out(&out);
        round_trip(&out, &sol, &|c| holds(c, &pairs, &distinct));
    }
}

#[test]
fn hypergraph_k4() {
    let h = complete_bipartite(3).unwrap();
    let gadget = split_vertex(&h, 0).unwrap();
    let k4 = complete(4).unwrap();
    let line = line_pairs(&k4);
    assert!(csp(6, 3, &|_, _| true, &line, &distinct).is_some());
    let out = reduce_hypergraph(&incidence(&k4), &h, &gadget).unwrap();
    assert!(out.graph.is_simple());
    assert_eq!(out.graph.regular_degree(), Some(3));
    let sol = solve_out(&out);
    round_trip(&out, &sol, &|c| holds(c, &line, &distinct));
}

#[test]
fn hypergraph_refusals() {
    let h = complete_bipartite(3).unwrap();
    let gadget = split_vertex(&h, 0).unwrap();
    // Degrees 3 and 2 are fine, degree 1 is not.
    assert!(reduce_hypergraph(&path(3).unwrap(), &h, &gadget).is_err());
    // A gadget from another graph fails verification.
    let wrong = split_vertex(&petersen(), 0).unwrap();
    assert!(reduce_hypergraph(&incidence(&complete(4).unwrap()), &h, &wrong).is_err());
    // Same-side edge.
    assert!(reduce_hypergraph(&complete(4).unwrap(), &h, &gadget).is_err());
}

fn direct(g: &Multigraph, r: &Multigraph, lists: &ListAssignment) -> Option<bool> {
    solve(g, r, lists, Budget::unlimited()).unwrap().verdict()
}

fn lift(g: &Multigraph, lists: &ListAssignment, s: &Multigraph, calls: &mut usize) -> SolveOutcome {
    lift_via_k2(g, lists, s, &mut |sub, l| {
        *calls += 1;
        solve(sub, s, l, Budget::unlimited())
    })
    .unwrap()
}

#[test]
fn lift_ring_over_sausages() {
    for k in [3, 4] {
        let g = ring(k).unwrap();
        for s in sausages(k).unwrap() {
            let r = times_k2(&s);
            assert!(are_isomorphic(&r, &g).is_some());
            let mut calls = 0;
            let out = lift(&g, &ListAssignment::full(), &s, &mut calls);
            assert!(out.is_sat());
            verify_cover(&g, &r, out.witness().unwrap()).unwrap();
            assert!(calls >= 1);
        }
    }
}

#[test]
fn lift_rejects_non_bipartite() {
    let s = sausages(3).unwrap().remove(0);
    let mut calls = 0;
    let out = lift(&complete(4).unwrap(), &ListAssignment::full(), &s, &mut calls);
    assert!(out.is_unsat());
    assert_eq!(calls, 0);
    let out = lift(&cycle(12).unwrap(), &ListAssignment::full(), &s, &mut calls);
    assert!(out.is_unsat());
}

#[test]
fn lift_matches_direct_solve() {
    let mut rng = random::rng(5);
    for k in [3, 4] {
        for s in sausages(k).unwrap() {
            let r = times_k2(&s);
            for _ in 0..4 {
                let (g, planted) = random::lift(&mut rng, &r, 2);
                let mut lists = ListAssignment::full();
                for v in 0..g.vertex_count() {
                    let keep = rng.gen_bool(0.75);
                    let l: Vec<usize> = (0..r.vertex_count())
                        .filter(|&x| (keep && x == planted.vmap[v]) || rng.gen_bool(0.4))
                        .collect();
                    lists.restrict_vertex(v, l);
                }
                let mut calls = 0;
                let out = lift(&g, &lists, &s, &mut calls);
                assert_eq!(out.verdict(), direct(&g, &r, &lists));
                if let Some(f) = out.witness() {
                    verify_list_cover(&g, &r, f, &lists, Mode::Total).unwrap();
                }
            }
        }
    }
}

#[test]
fn lift_edge_lists_must_be_fibres() {
    let s = sausages(3).unwrap().remove(0);
    let r = times_k2(&s);
    let half = (0..r.edge_count())
        .find(|&e| r.edge(e).id.ends_with(".1"))
        .unwrap();
    let mut lists = ListAssignment::full();
    lists.restrict_edge(0, [half]);
    let out = lift_via_k2(&r, &lists, &s, &mut |_, _| unreachable!());
    assert!(out.is_err());
    let mut lists = ListAssignment::full();
    lists.restrict_edge(0, [half - 1, half]);
    assert!(lift_via_k2(&r, &lists, &s, &mut |sub, l| solve(sub, &s, l, Budget::unlimited())).is_ok());
}

#[test]
fn fourring_k4_k5() {
    let k4 = complete(4).unwrap();
    let pairs = edges_of(&k4);
    assert!(csp(4, 4, &|_, _| true, &pairs, &distinct).is_some());
    let out = reduce_fourring(&k4).unwrap();
    assert!(out.graph.is_simple());
    let sol = solve_out(&out);
    round_trip(&out, &sol, &|c| holds(c, &pairs, &distinct));

    let k5 = complete(5).unwrap();
    assert!(csp(5, 4, &|_, _| true, &edges_of(&k5), &distinct).is_none());
    let out = reduce_fourring(&k5).unwrap();
    assert!(solve_out(&out).is_unsat());
}

#[test]
fn hypergraph_petersen() {
    let h = complete_bipartite(3).unwrap();
    let gadget = split_vertex(&h, 0).unwrap();
    let p = petersen();
    assert!(csp(15, 3, &|_, _| true, &line_pairs(&p), &distinct).is_none());
    let out = reduce_hypergraph(&incidence(&p), &h, &gadget).unwrap();
    assert!(out.graph.is_simple());
    assert!(solve_out(&out).is_unsat());
}
