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

use super::*;
use crate::graph::generate::{complete, cycle, one_vertex, open_path, ring, triple_edge};
use crate::random::{self, Density};
use crate::solver::oracle::oracle;
use crate::solver::{solve, Budget};

fn full() -> ListAssignment {
    ListAssignment::full()
}

#[test]
fn dispatch_cases() {
    assert_eq!(dispatch(&one_vertex(1, 1)).unwrap(), PolyCase::LoopPlusSemi);
    assert_eq!(dispatch(&cycle(4).unwrap()).unwrap(), PolyCase::CycleTarget);
    assert_eq!(dispatch(&cycle(2).unwrap()).unwrap(), PolyCase::CycleTarget);
    assert_eq!(dispatch(&cycle(1).unwrap()).unwrap(), PolyCase::F01Loop);
    assert_eq!(dispatch(&one_vertex(2, 0)).unwrap(), PolyCase::F20TwoSemis);
    assert_eq!(dispatch(&one_vertex(1, 0)).unwrap(), PolyCase::F10OrK2);
    assert_eq!(dispatch(&complete(2).unwrap()).unwrap(), PolyCase::F10OrK2);
    assert_eq!(dispatch(&open_path(3).unwrap()).unwrap(), PolyCase::OpenPathTarget);
    assert_eq!(dispatch(&ring(4).unwrap()).unwrap(), PolyCase::None);
    assert_eq!(dispatch(&one_vertex(0, 3)).unwrap(), PolyCase::None);
    assert_eq!(dispatch(&triple_edge()).unwrap(), PolyCase::None);
    let mut two = cycle(3).unwrap();
    two.add_vertex("far").unwrap();
    assert!(dispatch(&two).is_err());
}

#[test]
fn hexagon_checks_six_candidates() {
    let out = decide_2regular(&cycle(3).unwrap(), &cycle(6).unwrap(), &full()).unwrap();
    assert!(out.is_sat());
    assert_eq!(out.stats.nodes, 6);
}

#[test]
fn path_alternates_semi_edges() {
    let h = one_vertex(2, 0);
    let g = open_path(4).unwrap();
    let mut lists = full();
    for v in 0..g.vertex_count() {
        lists.pin_vertex(v, 0);
    }
    // Edges along the path: s0, e1, e2, e3, s4.
    let order = ["s0", "e1", "e2", "e3", "s4"];
    for (i, id) in order.iter().enumerate() {
        lists.pin_edge(g.edge_by_id(id).unwrap(), i % 2);
    }
    assert!(decide_2regular(&h, &g, &lists).unwrap().is_sat());
    lists.pin_edge(g.edge_by_id("e2").unwrap(), 1);
    assert!(decide_2regular(&h, &g, &lists).unwrap().is_unsat());
}

#[test]
fn empty_vertex_list() {
    let mut lists = full();
    lists.restrict_vertex(0, []);
    let out = decide_2regular(&cycle(3).unwrap(), &cycle(6).unwrap(), &lists).unwrap();
    assert!(out.is_unsat());
}

#[test]
fn one_regular() {
    let k2 = complete(2).unwrap();
    let f10 = one_vertex(1, 0);
    assert!(decide_1regular(&k2, &k2, &full()).unwrap().is_sat());
    assert!(decide_1regular(&k2, &cycle(4).unwrap(), &full()).unwrap().is_unsat());
    assert!(decide_1regular(&f10, &k2, &full()).unwrap().is_sat());
    assert!(decide_1regular(&f10, &f10, &full()).unwrap().is_sat());
    assert!(decide_1regular(&k2, &f10, &full()).unwrap().is_unsat());
    assert!(decide_1regular(&cycle(3).unwrap(), &k2, &full()).is_err());
}

#[test]
fn loop_semi_rules() {
    let h = one_vertex(1, 1);
    assert!(decide_loop_semi(&h, &complete(4).unwrap(), &full()).unwrap().is_sat());
    let g = one_vertex(2, 0);
    let mut g3 = g.clone();
    g3.add_semi("s3", 0).unwrap();
    let r = decide_loop_semi_with(&h, &g3, &full(), &DEFAULT_ORDER).unwrap();
    assert_eq!(r.rejection, Some(Rejection::TwoSemis));
    // K4 with every edge at one vertex forced off the loop: rule (e).
    let k4 = complete(4).unwrap();
    let mut lists = full();
    let semi = 0;
    for &e in k4.incident(0).iter().take(2) {
        lists.pin_edge(e, semi);
    }
    let r = decide_loop_semi_with(&h, &k4, &lists, &DEFAULT_ORDER).unwrap();
    assert_eq!(r.rejection, Some(Rejection::TwoNonLoop));
    // The Petersen graph with one edge pinned to the semi-edge is still fine.
    let p = crate::graph::generate::petersen();
    let mut lists = full();
    lists.pin_edge(0, semi);
    let r = decide_loop_semi_with(&h, &p, &lists, &DEFAULT_ORDER).unwrap();
    assert!(r.outcome.is_sat());
    assert!(r.matching.unwrap().contains(&0));
}

fn two_regular_targets() -> Vec<Multigraph> {
    let mut out = vec![cycle(1).unwrap(), one_vertex(2, 0)];
    for t in 2..=4 {
        out.push(cycle(t).unwrap());
        out.push(open_path(t).unwrap());
    }
    out
}

/// Disjoint union of cycles and open paths of the given lengths.
fn union(parts: &[(bool, usize)]) -> Multigraph {
    let mut g = Multigraph::new();
    for (p, &(is_cycle, n)) in parts.iter().enumerate() {
        let part = if is_cycle { cycle(n).unwrap() } else { open_path(n).unwrap() };
        let off = g.vertex_count();
        for v in 0..part.vertex_count() {
            g.add_vertex(format!("c{p}.{}", part.vertex_id(v))).unwrap();
        }
        for e in part.edges() {
            g.add_edge(format!("c{p}.{}", e.id), e.kind, off + e.ends[0], off + e.ends[1])
                .unwrap();
        }
    }
    g
}

#[test]
fn two_regular_agrees_with_oracle() {
    let mut rng = random::rng(23);
    let mut sat = 0;
    for h in two_regular_targets() {
        for n in 1..=8 {
            for is_cycle in [true, false] {
                for density in Density::ALL {
                    let g = union(&[(is_cycle, n)]);
                    let lists = random::lists(&mut rng, &g, &h, density, None);
                    let want = oracle(&g, &h, &lists).unwrap().verdict();
                    let got = decide_2regular(&h, &g, &lists).unwrap();
                    assert_eq!(got.verdict(), want, "{h:?} {g:?} {lists:?}");
                    sat += usize::from(got.is_sat());
                }
            }
        }
        let g = union(&[(true, 4), (false, 2)]);
        let want = oracle(&g, &h, &full()).unwrap().verdict();
        assert_eq!(decide_2regular(&h, &g, &full()).unwrap().verdict(), want);
    }
    assert!(sat > 20);
}

#[test]
fn loop_semi_agrees_with_oracle() {
    let h = one_vertex(1, 1);
    let mut rng = random::rng(31);
    for i in 0..150 {
        let g = random::cubic(&mut rng, 1 + i % 8, if i % 2 == 0 { 0.0 } else { 0.2 });
        let lists = random::lists(&mut rng, &g, &h, Density::ALL[i % 3], None);
        let want = oracle(&g, &h, &lists).unwrap().verdict();
        let got = decide_loop_semi(&h, &g, &lists).unwrap();
        assert_eq!(got.verdict(), want, "{g:?} {lists:?}");
        assert_eq!(got.verdict(), solve(&g, &h, &lists, Budget::unlimited()).unwrap().verdict());
    }
}

#[test]
fn step_order_does_not_matter() {
    let h = one_vertex(1, 1);
    let orders: Vec<Vec<Step>> = vec![
        DEFAULT_ORDER.to_vec(),
        vec![Step::IsolateNonLoopEdges, Step::RemoveNonSemiEdges, Step::DeleteSemiVertices],
        vec![Step::RemoveNonSemiEdges, Step::IsolateNonLoopEdges, Step::DeleteSemiVertices],
        vec![Step::IsolateNonLoopEdges, Step::DeleteSemiVertices, Step::RemoveNonSemiEdges],
    ];
    let mut rng = random::rng(37);
    for i in 0..120 {
        let g = random::cubic(&mut rng, 2 + i % 10, 0.15);
        let lists = random::lists(&mut rng, &g, &h, Density::ALL[i % 3], None);
        let reports: Vec<_> = orders
            .iter()
            .map(|o| decide_loop_semi_with(&h, &g, &lists, o).unwrap())
            .collect();
        for r in &reports[1..] {
            assert_eq!(r.outcome.verdict(), reports[0].outcome.verdict());
            assert_eq!(r.auxiliary_edges, reports[0].auxiliary_edges);
        }
    }
}

#[test]
fn triple_edge_fast_path() {
    let h = triple_edge();
    let mut rng = random::rng(53);
    let mut sat = 0;
    for i in 0..60 {
        let g = if i % 3 == 0 {
            random::lift(&mut rng, &h, 1 + i % 5).0
        } else {
            random::cubic(&mut rng, 2 * (1 + i % 4), 0.1 * (i % 2) as f64)
        };
        let want = oracle(&g, &h, &full()).unwrap().verdict();
        let got = decide(&h, &g, &full()).unwrap().unwrap();
        assert_eq!(got.verdict(), want, "{g:?}");
        sat += usize::from(got.is_sat());
    }
    assert!(sat >= 20);
    let mut lists = full();
    lists.pin_vertex(0, 0);
    assert!(decide(&h, &complete(2).unwrap(), &lists).unwrap().is_none());
}
