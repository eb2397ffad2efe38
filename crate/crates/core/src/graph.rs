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

//! Simple undirected graphs, bipartite graphs with explicit sides, and the
//! instance generators used by the test suites.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, GraphError, Result};
use crate::treewidth::TreeDecomposition;

/// An undirected edge stored with its smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(&self, x: usize) -> usize {
        debug_assert!(self.contains(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.contains(other.u) || self.contains(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Simple undirected graph on the vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            m: 0,
        }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> std::result::Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for a in 0..n {
            for b in a + 1..n {
                g.insert_unchecked(a, b);
            }
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> std::result::Result<(), GraphError> {
        let n = self.n();
        for x in [a, b] {
            if x >= n {
                return Err(GraphError::OutOfRange { vertex: x, n });
            }
        }
        if a == b {
            return Err(GraphError::Loop(a));
        }
        if self.adj[a].contains(&b) {
            return Err(GraphError::Duplicate(Edge::new(a, b)));
        }
        self.insert_unchecked(a, b);
        Ok(())
    }

    fn insert_unchecked(&mut self, a: usize, b: usize) {
        if self.adj[a].insert(b) {
            self.adj[b].insert(a);
            self.m += 1;
        }
    }

    /// Removes the edge if present; returns whether it was there.
    pub fn remove_edge(&mut self, e: Edge) -> bool {
        if e.v < self.n() && self.adj[e.u].remove(&e.v) {
            self.adj[e.v].remove(&e.u);
            self.m -= 1;
            true
        } else {
            false
        }
    }

    /// Deletes every edge at `v`, leaving it isolated. Returns the removed edges.
    pub fn isolate(&mut self, v: usize) -> Vec<Edge> {
        let nbrs = std::mem::take(&mut self.adj[v]);
        for &w in &nbrs {
            self.adj[w].remove(&v);
        }
        self.m -= nbrs.len();
        nbrs.into_iter().map(|w| Edge::new(v, w)).collect()
    }

    /// The graph with `v` removed and higher ids shifted down by one.
    pub fn without_vertex(&self, v: usize) -> Graph {
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let mut g = Graph::empty(self.n() - 1);
        for e in self.edges() {
            if !e.contains(v) {
                g.insert_unchecked(shift(e.u), shift(e.v));
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn is_edgeless(&self) -> bool {
        self.m == 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn neighbours(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n() && self.adj[a].contains(&b)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, nbrs)| nbrs.range(a + 1..).map(move |&b| Edge { u: a, v: b }))
    }

    pub fn incident_edges(&self, v: usize) -> impl Iterator<Item = Edge> + '_ {
        self.adj[v].iter().map(move |&w| Edge::new(v, w))
    }

    pub fn degree_sum(&self, e: Edge) -> usize {
        self.degree(e.u) + self.degree(e.v)
    }

    /// Minimum of `deg(u) + deg(v)` over all edges, `None` when edgeless.
    pub fn min_edge_degree_sum(&self) -> Option<usize> {
        self.edges().map(|e| self.degree_sum(e)).min()
    }
}

/// Bipartite graph with explicit sides `U` and `W`.
///
/// Vertex ids are arbitrary, which lets a bipartite subgraph of a [`Graph`]
/// keep the host's ids. Edges are stored as canonical [`Edge`]s; use
/// [`BipartiteGraph::orient`] to recover the `(u, w)` orientation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BipartiteGraph {
    side_u: BTreeSet<usize>,
    side_w: BTreeSet<usize>,
    adj: BTreeMap<usize, BTreeSet<usize>>,
}

impl BipartiteGraph {
    pub fn new(
        side_u: impl IntoIterator<Item = usize>,
        side_w: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> std::result::Result<Self, GraphError> {
        let side_u: BTreeSet<usize> = side_u.into_iter().collect();
        let side_w: BTreeSet<usize> = side_w.into_iter().collect();
        if let Some(&x) = side_u.intersection(&side_w).next() {
            return Err(GraphError::SideOverlap(x));
        }
        let adj = side_u
            .iter()
            .chain(side_w.iter())
            .map(|&x| (x, BTreeSet::new()))
            .collect();
        let mut h = BipartiteGraph {
            side_u,
            side_w,
            adj,
        };
        for (u, w) in edges {
            h.add_edge(u, w)?;
        }
        Ok(h)
    }

    /// Adds the edge `uw` with `u` on the U side.
    pub fn add_edge(&mut self, u: usize, w: usize) -> std::result::Result<(), GraphError> {
        if !self.side_u.contains(&u) || !self.side_w.contains(&w) {
            return Err(GraphError::NotCrossing(Edge::new(u, w)));
        }
        if !self.adj.get_mut(&u).expect("side vertex").insert(w) {
            return Err(GraphError::Duplicate(Edge::new(u, w)));
        }
        self.adj.get_mut(&w).expect("side vertex").insert(u);
        Ok(())
    }

    pub fn side_u(&self) -> &BTreeSet<usize> {
        &self.side_u
    }

    pub fn side_w(&self) -> &BTreeSet<usize> {
        &self.side_w
    }

    pub fn is_u(&self, x: usize) -> bool {
        self.side_u.contains(&x)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj.get(&x).map_or(0, BTreeSet::len)
    }

    pub fn neighbours(&self, x: usize) -> &BTreeSet<usize> {
        &self.adj[&x]
    }

    pub fn edge_count(&self) -> usize {
        self.side_u.iter().map(|u| self.degree(*u)).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.adj.get(&e.u).is_some_and(|s| s.contains(&e.v))
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .side_u
            .iter()
            .flat_map(|&u| self.adj[&u].iter().map(move |&w| Edge::new(u, w)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Returns `(u, w)` with `u` on the U side.
    pub fn orient(&self, e: Edge) -> (usize, usize) {
        if self.side_u.contains(&e.u) {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        }
    }

    /// Subgraph induced by the given U and W vertices.
    pub fn induced(&self, keep_u: &BTreeSet<usize>, keep_w: &BTreeSet<usize>) -> BipartiteGraph {
        let side_u: BTreeSet<usize> = self.side_u.intersection(keep_u).copied().collect();
        let side_w: BTreeSet<usize> = self.side_w.intersection(keep_w).copied().collect();
        let edges: Vec<(usize, usize)> = side_u
            .iter()
            .flat_map(|&u| {
                self.adj[&u]
                    .iter()
                    .filter(|w| side_w.contains(w))
                    .map(move |&w| (u, w))
            })
            .collect();
        BipartiteGraph::new(side_u, side_w, edges).expect("induced subgraph of a valid graph")
    }

    /// `H[C ∪ N(C)]` for `C ⊆ W`.
    pub fn around(&self, c: &BTreeSet<usize>) -> BipartiteGraph {
        let nc: BTreeSet<usize> = c
            .iter()
            .filter(|w| self.side_w.contains(w))
            .flat_map(|w| self.adj[w].iter().copied())
            .collect();
        self.induced(&nc, c)
    }

    /// Same graph with the roles of the two sides exchanged.
    pub fn swapped(&self) -> BipartiteGraph {
        BipartiteGraph {
            side_u: self.side_w.clone(),
            side_w: self.side_u.clone(),
            adj: self.adj.clone(),
        }
    }

    /// Relabels to a [`Graph`] on `0..|U|+|W|` (U first, each side in id order).
    /// Returns the graph and the old id of each new vertex.
    pub fn to_graph(&self) -> (Graph, Vec<usize>) {
        let order: Vec<usize> = self
            .side_u
            .iter()
            .chain(self.side_w.iter())
            .copied()
            .collect();
        let index: BTreeMap<usize, usize> =
            order.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut g = Graph::empty(order.len());
        for e in self.edges() {
            g.insert_unchecked(index[&e.u], index[&e.v]);
        }
        (g, order)
    }
}

/// The tightness family: `G_1` is `K_{2,1}`; `G_{j+1}` adds one U-vertex
/// and `j` W-vertices, the new W-vertices complete to all of `U_{j+1}`.
///
/// U-vertices get ids `0..=i` (in order of addition), W-vertices follow
/// batch by batch.
pub fn gen_gi(i: usize) -> Result<BipartiteGraph> {
    if i == 0 {
        return Err(Error::pre("G_i is defined for i >= 1"));
    }
    let u_count = i + 1;
    let w_count = i * (i + 1) / 2;
    let mut edges = Vec::new();
    let mut next_w = u_count;
    for batch in 1..=i {
        for _ in 0..batch {
            for u in 0..=batch {
                edges.push((u, next_w));
            }
            next_w += 1;
        }
    }
    debug_assert_eq!(next_w, u_count + w_count);
    Ok(BipartiteGraph::new(
        0..u_count,
        u_count..u_count + w_count,
        edges,
    )?)
}

/// Random partial k-tree with its natural width-k decomposition.
///
/// Vertices `0..=k` form the initial clique (never thinned). Each further
/// vertex is joined to a random k-subset of a random existing bag, which adds
/// one bag to the decomposition. Every other edge survives independently with
/// probability `edge_keep`.
pub fn gen_partial_ktree(
    k: usize,
    n: usize,
    edge_keep: f64,
    seed: u64,
) -> Result<(Graph, TreeDecomposition)> {
    if k < 1 || k >= n {
        return Err(Error::pre(format!("need 1 <= k < n, got k={k}, n={n}")));
    }
    if !(0.0..=1.0).contains(&edge_keep) {
        return Err(Error::pre(format!("edge_keep {edge_keep} not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    let mut bags: Vec<Vec<usize>> = vec![(0..=k).collect()];
    let mut tree_edges = Vec::new();
    for a in 0..=k {
        for b in a + 1..=k {
            g.insert_unchecked(a, b);
        }
    }
    for v in k + 1..n {
        let parent = rng.gen_range(0..bags.len());
        let mut clique = bags[parent].clone();
        clique.shuffle(&mut rng);
        clique.truncate(k);
        for &c in &clique {
            if rng.gen_bool(edge_keep) {
                g.insert_unchecked(c, v);
            }
        }
        clique.push(v);
        clique.sort_unstable();
        tree_edges.push((parent, bags.len()));
        bags.push(clique);
    }
    let td = TreeDecomposition::new(
        bags.into_iter().map(|b| b.into_iter().collect()).collect(),
        tree_edges,
    );
    Ok((g, td))
}
