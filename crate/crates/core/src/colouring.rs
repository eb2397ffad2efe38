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

//! Colour lists and (partial) edge and total colourings.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, Graph};

/// Colours are positive integers.
pub type Colour = u32;

/// A list of admissible colours per edge.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ListAssignment {
    lists: BTreeMap<Edge, BTreeSet<Colour>>,
}

impl ListAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: Edge, list: impl IntoIterator<Item = Colour>) {
        self.lists.insert(e, list.into_iter().collect());
    }

    pub fn get(&self, e: Edge) -> Option<&BTreeSet<Colour>> {
        self.lists.get(&e)
    }

    pub fn size(&self, e: Edge) -> usize {
        self.lists.get(&e).map_or(0, BTreeSet::len)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, &BTreeSet<Colour>)> {
        self.lists.iter().map(|(e, l)| (*e, l))
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// The same list `{1..=size}` on every edge.
    pub fn constant(edges: impl IntoIterator<Item = Edge>, size: usize) -> Self {
        let mut l = ListAssignment::new();
        for e in edges {
            l.insert(e, 1..=size as Colour);
        }
        l
    }

    /// Each edge gets `size` distinct colours drawn uniformly from
    /// `{1..=2*size}`, edges visited in canonical order.
    pub fn uniform_random(g: &Graph, size: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut l = ListAssignment::new();
        for e in g.edges() {
            let picked = sample(&mut rng, 2 * size, size);
            l.insert(e, picked.into_iter().map(|c| c as Colour + 1));
        }
        l
    }

    /// Union of all lists, ascending.
    pub fn all_colours(&self) -> BTreeSet<Colour> {
        self.lists.values().flatten().copied().collect()
    }
}

/// A possibly partial map from edges to colours.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeColouring {
    colours: BTreeMap<Edge, Colour>,
}

impl EdgeColouring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, e: Edge, c: Colour) {
        self.colours.insert(e, c);
    }

    pub fn get(&self, e: Edge) -> Option<Colour> {
        self.colours.get(&e).copied()
    }

    pub fn remove(&mut self, e: Edge) -> Option<Colour> {
        self.colours.remove(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, Colour)> + '_ {
        self.colours.iter().map(|(e, c)| (*e, *c))
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    /// Colours already used on coloured edges of `g` at `v`.
    pub fn used_at(&self, g: &Graph, v: usize) -> BTreeSet<Colour> {
        g.incident_edges(v).filter_map(|e| self.get(e)).collect()
    }

    pub fn max_colour(&self) -> Option<Colour> {
        self.colours.values().max().copied()
    }
}

impl FromIterator<(Edge, Colour)> for EdgeColouring {
    fn from_iter<I: IntoIterator<Item = (Edge, Colour)>>(iter: I) -> Self {
        EdgeColouring {
            colours: iter.into_iter().collect(),
        }
    }
}

/// Colours on vertices and edges from the palette `{1..=palette}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalColouring {
    pub vertices: Vec<Option<Colour>>,
    pub edges: EdgeColouring,
    pub palette: Colour,
}

impl TotalColouring {
    pub fn new(n: usize, palette: Colour) -> Self {
        TotalColouring {
            vertices: vec![None; n],
            edges: EdgeColouring::new(),
            palette,
        }
    }

    pub fn vertex(&self, v: usize) -> Option<Colour> {
        self.vertices[v]
    }

    pub fn edge(&self, e: Edge) -> Option<Colour> {
        self.edges.get(e)
    }

    /// Palette colours absent from `v` and from every coloured edge at `v`.
    pub fn missing(&self, g: &Graph, v: usize) -> BTreeSet<Colour> {
        let mut m: BTreeSet<Colour> = (1..=self.palette).collect();
        if let Some(c) = self.vertices[v] {
            m.remove(&c);
        }
        for e in g.incident_edges(v) {
            if let Some(c) = self.edges.get(e) {
                m.remove(&c);
            }
        }
        m
    }

    /// Colours `v` may not take: neighbour colours and incident edge colours.
    pub fn forbidden_for_vertex(&self, g: &Graph, v: usize) -> BTreeSet<Colour> {
        let mut f: BTreeSet<Colour> = g
            .neighbours(v)
            .iter()
            .filter_map(|&w| self.vertices[w])
            .collect();
        f.extend(g.incident_edges(v).filter_map(|e| self.edges.get(e)));
        f
    }

    /// Colours edge `e` may not take, ignoring its own current colour.
    pub fn forbidden_for_edge(&self, g: &Graph, e: Edge) -> BTreeSet<Colour> {
        let mut f = BTreeSet::new();
        for x in [e.u, e.v] {
            f.extend(self.vertices[x]);
            f.extend(
                g.incident_edges(x)
                    .filter(|&f| f != e)
                    .filter_map(|f| self.edges.get(f)),
            );
        }
        f
    }

    /// Smallest palette colour outside `forbidden`.
    pub fn first_free(&self, forbidden: &BTreeSet<Colour>) -> Option<Colour> {
        (1..=self.palette).find(|c| !forbidden.contains(c))
    }

    pub fn colours_used(&self) -> BTreeSet<Colour> {
        self.vertices
            .iter()
            .flatten()
            .copied()
            .chain(self.edges.iter().map(|(_, c)| c))
            .collect()
    }
}
