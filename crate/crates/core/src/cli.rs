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

//! The `semicover` command line.
//!
//! Every command prints one JSON document on standard output: a graph
//! document for the emitters (`generate`, `product`, `multicover`, `split`,
//! `times-k2`, `reduce`), a cover document for `translate --certificate`,
//! and a result object otherwise. A file argument `-` reads standard input.
//!
//! Exit codes: 0 yes or success, 1 no, 2 usage or domain error, 3 resource
//! limit.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::constructions::{
    colored_product, multicover, proper_edge_coloring, split_vertex, times_k2, verify_gadget,
    ColoredFactor, FactorPlan, GadgetCheckOptions, MulticoverOptions,
};
use crate::covering::{verify, verify_list_cover, ListAssignment, Mode};
use crate::error::Error;
use crate::format::{
    cover_to_string, cover_to_value, graph_document_to_string, graph_to_string, parse_cover,
    parse_graph, parse_lists, GraphDocument, RawLists,
};
use crate::graph::generate::{complete_bipartite, Family};
use crate::graph::iso::are_isomorphic;
use crate::graph::Multigraph;
use crate::polyalgo::{decide, dispatch, maximum_matching};
use crate::random;
use crate::reductions::{
    back_translate, forward_hint, reduce_fourring, reduce_hypergraph, reduce_ring_hom,
    reduce_ring_list, Certificate, Manifest, ReductionOutput,
};
use crate::solver::{for_each_cover, solve_with, Budget, EnumOptions, Pruning, SolverOptions, Stats};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "semicover", version, about = "Covering projections of graphs with semi-edges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Search {
    /// Stop after this many search nodes.
    #[arg(long, value_name = "N")]
    max_nodes: Option<u64>,
    /// Stop after this many seconds.
    #[arg(long, value_name = "SECS")]
    timeout: Option<f64>,
    /// Report node counts and timing.
    #[arg(long)]
    stats: bool,
}

impl Search {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.max_nodes,
            max_time: self.timeout.map(Duration::from_secs_f64),
        }
    }
}

#[derive(Args, Debug)]
struct Instance {
    /// Source graph.
    g: String,
    /// Target graph.
    h: String,
    /// Lists document; defaults to the lists inside the source document.
    #[arg(long, value_name = "FILE")]
    lists: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a named graph: ring K, sausages K, one-vertex S L, cycle N,
    /// open-path N, complete-bipartite K, triple-edge, complete N,
    /// petersen, random N M, random-cubic N.
    Generate {
        family: String,
        params: Vec<usize>,
        /// Which of several variants (sausages).
        #[arg(long, default_value_t = 0)]
        variant: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify a covering projection.
    Check {
        #[command(flatten)]
        instance: Instance,
        cover: String,
    },
    /// Verify a partial covering projection.
    CheckPartial {
        #[command(flatten)]
        instance: Instance,
        cover: String,
    },
    /// Decide List-H-Cover.
    Solve {
        #[command(flatten)]
        instance: Instance,
        /// Write the cover found to this file.
        #[arg(long, value_name = "FILE")]
        witness: Option<String>,
        #[command(flatten)]
        search: Search,
        #[arg(long)]
        no_degree_filter: bool,
        #[arg(long)]
        no_propagation: bool,
        #[arg(long)]
        no_split: bool,
    },
    /// List (partial) covering projections.
    Enumerate {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        partial: bool,
        #[arg(long)]
        limit: Option<usize>,
        /// One map per distinct vertex map.
        #[arg(long)]
        distinct_vertex_maps: bool,
        #[command(flatten)]
        search: Search,
    },
    /// Decide with the polynomial algorithm for the target.
    Poly {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_name = "FILE")]
        witness: Option<String>,
    },
    /// Maximum matching of the ordinary edges.
    Matching { g: String },
    /// Proper edge colouring of a regular graph.
    ColorEdges {
        g: String,
        /// Number of colours; defaults to the degree.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Colored product of regular graphs.
    Product {
        #[arg(required = true)]
        factors: Vec<String>,
        /// Keep only the component of the first vertex.
        #[arg(long)]
        component: bool,
    },
    /// Multicover of a regular edge-colourable graph.
    Multicover {
        h: String,
        /// `default` or `self`.
        #[arg(long, default_value = "default")]
        plan: FactorPlan,
        #[arg(long, default_value_t = 1 << 16)]
        max_vertices: usize,
    },
    /// Split a vertex into pendant vertices.
    Split {
        g: String,
        #[arg(long)]
        vertex: String,
    },
    /// The product with K2.
    TimesK2 { g: String },
    /// Check the gadget properties of a split vertex against a target.
    VerifyGadget {
        g: String,
        h: String,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 1_000_000)]
        max_maps: usize,
    },
    /// Emit a reduction instance with its translation manifest.
    Reduce {
        #[command(subcommand)]
        kind: Reduce,
    },
    /// Translate between covers of a reduction instance and certificates.
    Translate {
        instance: String,
        h: String,
        /// Cover to translate back.
        #[arg(long, value_name = "FILE", required_unless_present = "certificate")]
        cover: Option<String>,
        /// Certificate (`{"colors": [...]}` or an array) to extend to a cover.
        #[arg(long, value_name = "FILE", conflicts_with = "cover")]
        certificate: Option<String>,
        #[command(flatten)]
        search: Search,
    },
    /// Decide isomorphism.
    Isomorphic { g: String, h: String },
}

#[derive(Subcommand, Debug)]
enum Reduce {
    /// Homomorphism to C_{2 beta + 3} as a cover of the k-ring,
    /// k = 2^alpha (2 beta + 3).
    RingHom {
        source: String,
        #[arg(long, default_value_t = 0)]
        alpha: u32,
        #[arg(long, default_value_t = 0)]
        beta: usize,
        #[arg(long, value_name = "FILE")]
        target_out: Option<String>,
    },
    /// List homomorphism to C_k as a list cover of the k-ring, k = 2^alpha.
    RingList {
        source: String,
        /// JSON object from vertex id to cycle vertices (0-based).
        #[arg(long, value_name = "FILE")]
        lists: String,
        #[arg(long, default_value_t = 3)]
        alpha: u32,
        #[arg(long, value_name = "FILE")]
        target_out: Option<String>,
    },
    /// 4-colouring as a cover of the 4-ring.
    Fourring {
        source: String,
        #[arg(long, value_name = "FILE")]
        target_out: Option<String>,
    },
    /// Rainbow colouring of an incidence graph as a list cover.
    Hypergraph {
        incidence: String,
        /// Target graph; defaults to K_{3,3}.
        #[arg(long, value_name = "FILE")]
        target: Option<String>,
        /// Target vertex to split for the gadget; defaults to the first.
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long, value_name = "FILE")]
        target_out: Option<String>,
    },
}

/// A failed command: exit code and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<(i32, String), Failure>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> std::result::Result<String, Failure> {
        let fail = |e: std::io::Error| Failure {
            code: EXIT_USAGE,
            message: format!("{path}: {e}"),
        };
        if path == "-" {
            if std::mem::replace(&mut self.stdin_used, true) {
                return Err(Failure {
                    code: EXIT_USAGE,
                    message: "standard input can be read only once".into(),
                });
            }
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(fail)?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(fail)
        }
    }

    fn graph_doc(&mut self, path: &str) -> std::result::Result<GraphDocument, Failure> {
        let text = self.read(path)?;
        parse_graph(&text).map_err(|e| in_file(path, e))
    }

    fn graph(&mut self, path: &str) -> std::result::Result<Multigraph, Failure> {
        Ok(self.graph_doc(path)?.graph)
    }

    /// Source, target and lists of an instance.
    fn instance(
        &mut self,
        inst: &Instance,
    ) -> std::result::Result<(GraphDocument, Multigraph, ListAssignment), Failure> {
        let doc = self.graph_doc(&inst.g)?;
        let h = self.graph(&inst.h)?;
        let raw = match &inst.lists {
            Some(path) => {
                let text = self.read(path)?;
                Some(parse_lists(&text).map_err(|e| in_file(path, e))?)
            }
            None => doc.lists.clone(),
        };
        let lists = match raw {
            Some(raw) => raw.resolve(&doc.graph, &h)?,
            None => ListAssignment::full(),
        };
        Ok((doc, h, lists))
    }
}

fn in_file(path: &str, e: Error) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: format!("{path}: {e}"),
    }
}

fn write_file(path: &str, text: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, format!("{text}\n")).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{path}: {e}"),
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn verdict_code(v: Option<bool>) -> i32 {
    match v {
        Some(true) => EXIT_YES,
        Some(false) => EXIT_NO,
        None => EXIT_LIMIT,
    }
}

fn verdict_name(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    }
}

fn stats_value(s: &Stats) -> Value {
    serde_json::to_value(s).expect("serializable")
}

/// Runs one command line; returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_YES
            };
        }
    };
    let mut io = Io {
        stdin,
        stdin_used: false,
    };
    match execute(cli.command, &mut io) {
        Ok((code, text)) => {
            let _ = writeln!(stdout, "{text}");
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, io: &mut Io<'_>) -> Outcome {
    match command {
        Command::Generate {
            family,
            params,
            variant,
            seed,
        } => generate(&family, &params, variant, seed),
        Command::Check { instance, cover } => check(io, &instance, &cover, Mode::Total),
        Command::CheckPartial { instance, cover } => check(io, &instance, &cover, Mode::Partial),
        Command::Solve {
            instance,
            witness,
            search,
            no_degree_filter,
            no_propagation,
            no_split,
        } => {
            let (doc, h, lists) = io.instance(&instance)?;
            let g = &doc.graph;
            let options = SolverOptions {
                budget: search.budget(),
                pruning: Pruning {
                    degree_filter: !no_degree_filter,
                    local_consistency: !no_propagation,
                    component_split: !no_split,
                },
            };
            let out = solve_with(g, &h, &lists, Mode::Total, &options)?;
            let mut doc = Map::new();
            doc.insert("verdict".into(), verdict_name(out.verdict()).into());
            if let Some(f) = out.witness() {
                doc.insert("witness".into(), cover_to_value(f, g, &h));
                if let Some(path) = &witness {
                    write_file(path, &cover_to_string(f, g, &h))?;
                }
            }
            if search.stats {
                doc.insert("stats".into(), stats_value(&out.stats));
            }
            Ok((verdict_code(out.verdict()), pretty(&Value::Object(doc))))
        }
        Command::Enumerate {
            instance,
            partial,
            limit,
            distinct_vertex_maps,
            search,
        } => {
            let (doc, h, lists) = io.instance(&instance)?;
            let g = &doc.graph;
            let options = EnumOptions {
                mode: if partial { Mode::Partial } else { Mode::Total },
                limit,
                distinct_vertex_maps,
                solver: SolverOptions {
                    budget: search.budget(),
                    ..SolverOptions::default()
                },
            };
            let mut covers = Vec::new();
            let summary = for_each_cover(g, &h, &lists, &options, |f| {
                covers.push(cover_to_value(f, g, &h));
                true
            })?;
            let mut doc = json!({
                "count": summary.count,
                "truncated": summary.truncated,
                "resource_limit": summary.resource_limit,
                "covers": covers,
            });
            if search.stats {
                doc["stats"] = stats_value(&summary.stats);
            }
            let code = if summary.count > 0 {
                EXIT_YES
            } else if summary.resource_limit {
                EXIT_LIMIT
            } else {
                EXIT_NO
            };
            Ok((code, pretty(&doc)))
        }
        Command::Poly { instance, witness } => {
            let (doc, h, lists) = io.instance(&instance)?;
            let g = &doc.graph;
            let case = dispatch(&h)?;
            let out = decide(&h, g, &lists)?.ok_or_else(|| Failure {
                code: EXIT_USAGE,
                message: "the target is not one of the polynomial cases".into(),
            })?;
            let mut doc = json!({ "case": case.as_str(), "verdict": verdict_name(out.verdict()) });
            if let Some(f) = out.witness() {
                doc["witness"] = cover_to_value(f, g, &h);
                if let Some(path) = &witness {
                    write_file(path, &cover_to_string(f, g, &h))?;
                }
            }
            Ok((verdict_code(out.verdict()), pretty(&doc)))
        }
        Command::Matching { g } => {
            let g = io.graph(&g)?;
            let m = maximum_matching(&g);
            let edges: Vec<&str> = m.edges.iter().map(|&e| g.edge(e).id.as_str()).collect();
            let doc = json!({ "size": m.size(), "perfect": m.perfect, "edges": edges });
            Ok((EXIT_YES, pretty(&doc)))
        }
        Command::ColorEdges { g, k } => {
            let g = io.graph(&g)?;
            let k = match k.or_else(|| g.regular_degree()) {
                Some(k) => k,
                None => return Err(Error::Precondition("graph is not regular".into()).into()),
            };
            match proper_edge_coloring(&g, k) {
                Ok(c) => {
                    let colors: Map<String, Value> = (0..g.edge_count())
                        .map(|e| (g.edge(e).id.clone(), c.colors[e].into()))
                        .collect();
                    Ok((EXIT_YES, pretty(&json!({ "colorable": true, "k": k, "colors": colors }))))
                }
                Err(Error::NotColorable(why)) => Ok((
                    EXIT_NO,
                    pretty(&json!({ "colorable": false, "k": k, "reason": why })),
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Product { factors, component } => {
            let mut colored = Vec::new();
            for path in &factors {
                let g = io.graph(path)?;
                let k = g
                    .regular_degree()
                    .ok_or_else(|| in_file(path, Error::Precondition("factor is not regular".into())))?;
                let c = proper_edge_coloring(&g, k).map_err(|e| in_file(path, e))?;
                colored.push(ColoredFactor::new(g, c).map_err(|e| in_file(path, e))?);
            }
            let mut result = colored_product(&colored)?;
            if component {
                result = result.component_of(0);
            }
            Ok((EXIT_YES, graph_to_string(&result.product)))
        }
        Command::Multicover {
            h,
            plan,
            max_vertices,
        } => {
            let h = io.graph(&h)?;
            let m = multicover(&h, &MulticoverOptions { plan, max_vertices })?;
            let meta = json!({ "kind": "multicover", "u": m.graph.vertex_id(m.u), "plan": plan.to_string() });
            Ok((EXIT_YES, graph_document_to_string(&m.graph, None, Some(meta))))
        }
        Command::Split { g, vertex } => {
            let g = io.graph(&g)?;
            let u = g.require_vertex(&vertex)?;
            let s = split_vertex(&g, u)?;
            let pendants: Vec<&str> = s.pendant_vertices.iter().map(|&p| s.graph.vertex_id(p)).collect();
            let meta = json!({ "kind": "split", "vertex": vertex, "pendants": pendants });
            Ok((EXIT_YES, graph_document_to_string(&s.graph, None, Some(meta))))
        }
        Command::TimesK2 { g } => {
            let g = io.graph(&g)?;
            Ok((EXIT_YES, graph_to_string(&times_k2(&g))))
        }
        Command::VerifyGadget {
            g,
            h,
            vertex,
            max_maps,
        } => {
            let g = io.graph(&g)?;
            let h = io.graph(&h)?;
            let s = split_vertex(&g, g.require_vertex(&vertex)?)?;
            let report = verify_gadget(
                &s,
                &h,
                &GadgetCheckOptions {
                    max_maps,
                    ..GadgetCheckOptions::default()
                },
            )?;
            let code = if report.all_hold() { EXIT_YES } else { EXIT_NO };
            let mut doc = serde_json::to_value(&report).expect("serializable");
            doc["holds"] = report.all_hold().into();
            Ok((code, pretty(&doc)))
        }
        Command::Reduce { kind } => reduce(io, kind),
        Command::Translate {
            instance,
            h,
            cover,
            certificate,
            search,
        } => translate(io, &instance, &h, cover.as_deref(), certificate.as_deref(), &search),
        Command::Isomorphic { g, h } => {
            let g = io.graph(&g)?;
            let h = io.graph(&h)?;
            Ok(match are_isomorphic(&g, &h) {
                Some(iso) => {
                    let vmap: Map<String, Value> = iso
                        .vmap
                        .iter()
                        .enumerate()
                        .map(|(v, &x)| (g.vertex_id(v).to_owned(), h.vertex_id(x).into()))
                        .collect();
                    let emap: Map<String, Value> = iso
                        .emap
                        .iter()
                        .enumerate()
                        .map(|(e, &t)| (g.edge(e).id.clone(), h.edge(t).id.clone().into()))
                        .collect();
                    (EXIT_YES, pretty(&json!({ "isomorphic": true, "vmap": vmap, "emap": emap })))
                }
                None => (EXIT_NO, pretty(&json!({ "isomorphic": false }))),
            })
        }
    }
}

fn generate(family: &str, params: &[usize], variant: usize, seed: u64) -> Outcome {
    let mut rng = random::rng(seed);
    let graphs = match (family, params) {
        ("random", &[n, m]) => vec![random::multigraph(&mut rng, n, m, 0.1, 0.1)],
        ("random-cubic", &[n]) => vec![random::cubic(&mut rng, n, 0.1)],
        ("random" | "random-cubic", _) => {
            return Err(Error::InvalidParameter(format!("wrong number of parameters for `{family}`")).into())
        }
        _ => Family::parse(family, params)?.build()?,
    };
    let count = graphs.len();
    let g = graphs.into_iter().nth(variant).ok_or_else(|| {
        Failure::from(Error::InvalidParameter(format!(
            "variant {variant} requested, `{family}` has {count}"
        )))
    })?;
    Ok((EXIT_YES, graph_to_string(&g)))
}

fn check(io: &mut Io<'_>, inst: &Instance, cover: &str, mode: Mode) -> Outcome {
    let (doc, h, lists) = io.instance(inst)?;
    let g = &doc.graph;
    let text = io.read(cover)?;
    let f = parse_cover(&text, g, &h).map_err(|e| in_file(cover, e))?;
    let result = if lists.is_full() {
        verify(g, &h, &f, mode)
    } else {
        verify_list_cover(g, &h, &f, &lists, mode)
    };
    Ok(match result {
        Ok(report) => {
            let fibres: Map<String, Value> = report
                .vertex_fibers
                .iter()
                .enumerate()
                .map(|(x, fib)| {
                    let ids: Vec<&str> = fib.iter().map(|&v| g.vertex_id(v)).collect();
                    (h.vertex_id(x).to_owned(), json!(ids))
                })
                .collect();
            (EXIT_YES, pretty(&json!({ "valid": true, "vertex_fibers": fibres })))
        }
        Err(v) => (EXIT_NO, pretty(&json!({ "valid": false, "violation": v.to_string() }))),
    })
}

fn emit_reduction(out: &ReductionOutput, target_out: Option<&str>) -> Outcome {
    if let Some(path) = target_out {
        write_file(path, &graph_to_string(&out.target))?;
    }
    let lists = RawLists::from_assignment(&out.lists, &out.graph, &out.target);
    let manifest = serde_json::to_value(&out.manifest).expect("serializable");
    Ok((EXIT_YES, graph_document_to_string(&out.graph, Some(&lists), Some(manifest))))
}

fn reduce(io: &mut Io<'_>, kind: Reduce) -> Outcome {
    match kind {
        Reduce::RingHom {
            source,
            alpha,
            beta,
            target_out,
        } => {
            let g = io.graph(&source)?;
            emit_reduction(&reduce_ring_hom(&g, alpha, beta)?, target_out.as_deref())
        }
        Reduce::RingList {
            source,
            lists,
            alpha,
            target_out,
        } => {
            let g = io.graph(&source)?;
            let text = io.read(&lists)?;
            let raw: indexmap::IndexMap<String, Vec<usize>> = serde_json::from_str(&text).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: format!("{lists}: {e}"),
            })?;
            let mut by_vertex = vec![Vec::new(); g.vertex_count()];
            let mut given = vec![false; g.vertex_count()];
            for (id, l) in raw {
                let v = g.require_vertex(&id).map_err(|e| in_file(&lists, e))?;
                by_vertex[v] = l;
                given[v] = true;
            }
            if let Some(v) = given.iter().position(|&b| !b) {
                return Err(in_file(
                    &lists,
                    Error::InvalidParameter(format!("no list for vertex `{}`", g.vertex_id(v))),
                ));
            }
            emit_reduction(&reduce_ring_list(&g, &by_vertex, alpha)?, target_out.as_deref())
        }
        Reduce::Fourring { source, target_out } => {
            let g = io.graph(&source)?;
            emit_reduction(&reduce_fourring(&g)?, target_out.as_deref())
        }
        Reduce::Hypergraph {
            incidence,
            target,
            vertex,
            target_out,
        } => {
            let k = io.graph(&incidence)?;
            let h = match &target {
                Some(path) => io.graph(path)?,
                None => complete_bipartite(3)?,
            };
            let u = match &vertex {
                Some(id) => h.require_vertex(id)?,
                None => 0,
            };
            let gadget = split_vertex(&h, u)?;
            emit_reduction(&reduce_hypergraph(&k, &h, &gadget)?, target_out.as_deref())
        }
    }
}

fn translate(
    io: &mut Io<'_>,
    instance: &str,
    h: &str,
    cover: Option<&str>,
    certificate: Option<&str>,
    search: &Search,
) -> Outcome {
    let doc = io.graph_doc(instance)?;
    let h = io.graph(h)?;
    let g = &doc.graph;
    let manifest: Manifest = match doc.reduction.clone() {
        Some(v) => serde_json::from_value(v).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("{instance}: reduction manifest: {e}"),
        })?,
        None => {
            return Err(Failure {
                code: EXIT_USAGE,
                message: format!("{instance}: no reduction manifest"),
            })
        }
    };
    if let Some(path) = cover {
        let text = io.read(path)?;
        let f = parse_cover(&text, g, &h).map_err(|e| in_file(path, e))?;
        let cert = back_translate(&manifest, g, &h, &f)?;
        return Ok(match manifest.source.verify(&cert) {
            Ok(()) => (EXIT_YES, pretty(&json!({ "valid": true, "colors": cert.colors }))),
            Err(e) => (
                EXIT_NO,
                pretty(&json!({ "valid": false, "colors": cert.colors, "reason": e.to_string() })),
            ),
        });
    }
    let path = certificate.expect("clap requires one of cover and certificate");
    let text = io.read(path)?;
    let cert: Certificate = match serde_json::from_str::<Certificate>(&text) {
        Ok(c) => c,
        Err(_) => Certificate {
            colors: serde_json::from_str(&text).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: format!("{path}: {e}"),
            })?,
        },
    };
    let raw = doc.lists.clone().unwrap_or_default();
    let lists = raw.resolve(g, &h)?;
    let hinted = match forward_hint(&manifest, g, &h, &lists, &cert) {
        Ok(l) => l,
        Err(Error::Certificate(why)) => {
            return Err(Failure {
                code: EXIT_NO,
                message: format!("invalid certificate: {why}"),
            })
        }
        Err(e) => return Err(e.into()),
    };
    let out = solve_with(
        g,
        &h,
        &hinted,
        Mode::Total,
        &SolverOptions {
            budget: search.budget(),
            ..SolverOptions::default()
        },
    )?;
    match out.witness() {
        Some(f) => Ok((EXIT_YES, cover_to_string(f, g, &h))),
        None => Err(Failure {
            code: verdict_code(out.verdict()),
            message: match out.verdict() {
                None => "hint completion ran out of budget".into(),
                _ => "the certificate does not extend to a cover".into(),
            },
        }),
    }
}
