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

//! Covering projections of graphs with loops, semi-edges and multiple
//! edges.
//!
//! * [`graph`]: the multigraph model, named families and isomorphism.
//! * [`covering`]: cover maps, lists and the fibre-wise verifier.
//! * [`format`]: the JSON graph, lists and cover documents.
//! * [`solver`]: exact search for (list) covers plus a naive oracle.
//! * [`polyalgo`]: polynomial deciders for the tractable targets.
//! * [`constructions`]: edge colourings, colored products, multicovers and
//!   split gadgets.
//! * [`reductions`]: gadget reductions from colouring and homomorphism
//!   problems, and the lifting through `S × K_2`.
//! * [`random`]: seeded random instances.
//! * [`cli`]: the `semicover` command line.

pub mod cli;
pub mod constructions;
pub mod covering;
pub mod error;
pub mod format;
pub mod graph;
pub mod polyalgo;
pub mod random;
pub mod reductions;
pub mod solver;

pub use covering::{CoverMap, ListAssignment, Mode};
pub use error::{Error, Result};
pub use graph::{EdgeKind, Multigraph, VertexClass};
