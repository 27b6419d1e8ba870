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

//! Colored products of edge-coloured regular graphs.

use crate::covering::CoverMap;
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph};

use super::coloring::EdgeColoring;

/// Largest product the constructions will materialise.
pub const MAX_PRODUCT_VERTICES: usize = 1 << 22;

/// A `k`-regular graph without loops or semi-edges with a proper
/// `k`-edge-colouring.
#[derive(Clone, Debug)]
pub struct ColoredFactor {
    pub graph: Multigraph,
    pub coloring: EdgeColoring,
}

impl ColoredFactor {
    pub fn new(graph: Multigraph, coloring: EdgeColoring) -> Result<ColoredFactor> {
        if graph.edges().iter().any(|e| e.kind != EdgeKind::Ordinary) {
            return Err(Error::Precondition("factor has loops or semi-edges".into()));
        }
        if (0..graph.vertex_count()).any(|v| graph.degree(v) != coloring.k) {
            return Err(Error::Precondition(format!("factor is not {}-regular", coloring.k)));
        }
        if !coloring.is_proper(&graph) {
            return Err(Error::Precondition("factor colouring is not proper".into()));
        }
        Ok(ColoredFactor { graph, coloring })
    }

    pub fn k(&self) -> usize {
        self.coloring.k
    }

    /// `(edge, other end)` of colour `c` at every vertex.
    fn mates(&self) -> Vec<Vec<(usize, usize)>> {
        (0..self.graph.vertex_count())
            .map(|v| {
                (0..self.k())
                    .map(|c| {
                        let e = self.coloring.edge_at(&self.graph, v, c).expect("proper and regular");
                        (e, self.graph.edge(e).other(v))
                    })
                    .collect()
            })
            .collect()
    }
}

/// A colored product with its colouring and one projection per factor.
#[derive(Clone, Debug)]
pub struct ProductResult {
    pub product: Multigraph,
    pub product_coloring: EdgeColoring,
    pub projections: Vec<CoverMap>,
}

impl ProductResult {
    /// Keeps the component of `root`, reindexing colouring and projections.
    pub fn component_of(&self, root: usize) -> ProductResult {
        let comp = self
            .product
            .components()
            .into_iter()
            .find(|c| c.binary_search(&root).is_ok())
            .expect("root is a vertex");
        let (product, _, kept) = self.product.induced(&comp);
        ProductResult {
            product,
            product_coloring: EdgeColoring {
                colors: kept.iter().map(|&e| self.product_coloring.colors[e]).collect(),
                k: self.product_coloring.k,
            },
            projections: self
                .projections
                .iter()
                .map(|p| CoverMap {
                    vmap: comp.iter().map(|&v| p.vmap[v]).collect(),
                    emap: kept.iter().map(|&e| p.emap[e]).collect(),
                })
                .collect(),
        }
    }
}

/// Number of vertices of the product of graphs with these orders.
pub fn product_order(orders: impl IntoIterator<Item = usize>) -> Option<usize> {
    orders.into_iter().try_fold(1usize, |acc, n| acc.checked_mul(n))
}

/// `(x1,...,xm)`.
pub fn tuple_id<'a>(parts: impl IntoIterator<Item = &'a str>) -> String {
    let parts: Vec<&str> = parts.into_iter().collect();
    format!("({})", parts.join(","))
}

/// The colored product: vertex tuples, and for every colour `c` the product
/// of the colour-`c` perfect matchings. Vertices are ordered
/// lexicographically with the first factor most significant; edges by
/// lower endpoint, then colour. Edge `u-v` of colour `c` has id `u-v/c`.
pub fn colored_product(factors: &[ColoredFactor]) -> Result<ProductResult> {
    let first = factors
        .first()
        .ok_or_else(|| Error::InvalidParameter("colored product of no factors".into()))?;
    let k = first.k();
    if let Some(f) = factors.iter().find(|f| f.k() != k) {
        return Err(Error::InvalidParameter(format!(
            "factors use {} and {} colours",
            k,
            f.k()
        )));
    }
    let orders: Vec<usize> = factors.iter().map(|f| f.graph.vertex_count()).collect();
    let total = product_order(orders.iter().copied())
        .filter(|&n| n <= MAX_PRODUCT_VERTICES)
        .ok_or_else(|| {
            Error::TooLarge(format!(
                "colored product of orders {orders:?} exceeds {MAX_PRODUCT_VERTICES} vertices"
            ))
        })?;
    let m = factors.len();
    let mates: Vec<_> = factors.iter().map(ColoredFactor::mates).collect();
    let coords = |mut u: usize| {
        let mut c = vec![0; m];
        for i in (0..m).rev() {
            c[i] = u % orders[i];
            u /= orders[i];
        }
        c
    };

    let mut product = Multigraph::new();
    for u in 0..total {
        let c = coords(u);
        let id = tuple_id((0..m).map(|i| factors[i].graph.vertex_id(c[i])));
        product.add_vertex(id)?;
    }
    let mut colors = Vec::new();
    let mut projections = vec![CoverMap::default(); m];
    for (i, p) in projections.iter_mut().enumerate() {
        p.vmap = (0..total).map(|u| coords(u)[i]).collect();
    }
    for u in 0..total {
        let cu = coords(u);
        for c in 0..k {
            let mut v = 0;
            for i in 0..m {
                v = v * orders[i] + mates[i][cu[i]][c].1;
            }
            if v < u {
                continue;
            }
            let id = format!("{}-{}/{c}", product.vertex_id(u), product.vertex_id(v));
            product.add_ordinary(id, u, v)?;
            colors.push(c);
            for (i, p) in projections.iter_mut().enumerate() {
                p.emap.push(mates[i][cu[i]][c].0);
            }
        }
    }
    Ok(ProductResult {
        product,
        product_coloring: EdgeColoring { colors, k },
        projections,
    })
}
