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

//! Exhaustive ground truth and validators. These are deliberately simple:
//! plain backtracking with hard size caps.

use std::fmt;

use crate::colouring::{Colour, EdgeColouring, ListAssignment, TotalColouring};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Edge, Graph};
use crate::search::ConflictSearch;

/// Size caps for the exhaustive engines. Exceeding one is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub edge_list_edges: usize,
    pub total_elements: usize,
    pub choosable_edges: usize,
    pub choosable_universe: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            edge_list_edges: 24,
            total_elements: 20,
            choosable_edges: 4,
            choosable_universe: 6,
        }
    }
}

/// Searches for an `L`-edge-colouring of `g`.
pub fn oracle_edge_list_colour(
    g: &Graph,
    lists: &ListAssignment,
    cap: usize,
) -> Result<Option<EdgeColouring>> {
    if g.edge_count() > cap {
        return Err(Error::CapExceeded {
            what: "edge-list oracle edges",
            size: g.edge_count(),
            cap,
        });
    }
    let edges: Vec<Edge> = g.edges().collect();
    let mut table = Vec::with_capacity(edges.len());
    for &e in &edges {
        let l = lists
            .get(e)
            .ok_or_else(|| Error::pre(format!("no list for edge {e}")))?;
        table.push(l.iter().copied().collect());
    }
    let search = line_graph_search(g, &edges, table);
    Ok(search
        .solve(u64::MAX)?
        .map(|cs| edges.iter().copied().zip(cs).collect()))
}

pub(crate) fn line_graph_search(
    g: &Graph,
    edges: &[Edge],
    lists: Vec<Vec<Colour>>,
) -> ConflictSearch {
    let mut search = ConflictSearch::new(lists);
    let pos: std::collections::BTreeMap<Edge, usize> =
        edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    for v in 0..g.n() {
        let at: Vec<usize> = g.incident_edges(v).map(|e| pos[&e]).collect();
        for (i, &a) in at.iter().enumerate() {
            for &b in &at[i + 1..] {
                search.add_conflict(a, b);
            }
        }
    }
    search
}

/// Decides whether `g` has a total colouring from `{1..=palette}`.
///
/// Vertices come before edges in the tie-break order of the search.
pub fn oracle_total_colour(
    g: &Graph,
    palette: Colour,
    cap: usize,
) -> Result<Option<TotalColouring>> {
    let size = g.n() + g.edge_count();
    if size > cap {
        return Err(Error::CapExceeded {
            what: "total oracle elements",
            size,
            cap,
        });
    }
    let n = g.n();
    let edges: Vec<Edge> = g.edges().collect();
    let mut search = ConflictSearch::new(vec![(1..=palette).collect(); size]).symmetric();
    for e in g.edges() {
        search.add_conflict(e.u, e.v);
    }
    for (i, e) in edges.iter().enumerate() {
        search.add_conflict(n + i, e.u);
        search.add_conflict(n + i, e.v);
    }
    let pos: std::collections::BTreeMap<Edge, usize> =
        edges.iter().enumerate().map(|(i, e)| (*e, n + i)).collect();
    for v in 0..n {
        let at: Vec<usize> = g.incident_edges(v).map(|e| pos[&e]).collect();
        for (i, &a) in at.iter().enumerate() {
            for &b in &at[i + 1..] {
                search.add_conflict(a, b);
            }
        }
    }
    Ok(search.solve(u64::MAX)?.map(|cs| {
        let mut t = TotalColouring::new(n, palette);
        for (slot, &c) in t.vertices.iter_mut().zip(&cs[..n]) {
            *slot = Some(c);
        }
        for (i, &e) in edges.iter().enumerate() {
            t.edges.set(e, cs[n + i]);
        }
        t
    }))
}

/// Bounded-universe choosability of the W side: every assignment of lists
/// with `|L(uw)| = deg(u)` drawn from `universe` must admit a colouring.
///
/// Only a finite corroboration of the general quantifier. The first edge's
/// list is fixed to the lowest colours, which loses nothing because the
/// universe is closed under permuting colours.
pub fn oracle_choosable(
    h: &BipartiteGraph,
    universe: &[Colour],
    caps: &OracleCaps,
) -> Result<bool> {
    let edges = h.edges();
    if edges.len() > caps.choosable_edges {
        return Err(Error::CapExceeded {
            what: "choosability oracle edges",
            size: edges.len(),
            cap: caps.choosable_edges,
        });
    }
    let mut universe = universe.to_vec();
    universe.sort_unstable();
    universe.dedup();
    if universe.len() > caps.choosable_universe {
        return Err(Error::CapExceeded {
            what: "choosability oracle universe",
            size: universe.len(),
            cap: caps.choosable_universe,
        });
    }
    let sizes: Vec<usize> = edges.iter().map(|&e| h.degree(h.orient(e).0)).collect();
    if sizes.iter().any(|&s| s > universe.len()) {
        return Err(Error::pre("a U-vertex degree exceeds the universe size"));
    }
    let (g, order) = h.to_graph();
    let local = |x: usize| order.iter().position(|&y| y == x).expect("vertex of h");
    let local_edges: Vec<Edge> = edges
        .iter()
        .map(|e| Edge::new(local(e.u), local(e.v)))
        .collect();
    let choices: Vec<Vec<Vec<Colour>>> = sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            if i == 0 {
                vec![universe[..s].to_vec()]
            } else {
                combinations(&universe, s)
            }
        })
        .collect();
    let mut pick = vec![0usize; edges.len()];
    loop {
        let mut lists = ListAssignment::new();
        for (i, &e) in local_edges.iter().enumerate() {
            lists.insert(e, choices[i][pick[i]].iter().copied());
        }
        if oracle_edge_list_colour(&g, &lists, usize::MAX)?.is_none() {
            return Ok(false);
        }
        // Odometer over the per-edge choices.
        let mut i = 0;
        loop {
            if i == pick.len() {
                return Ok(true);
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

fn combinations(items: &[Colour], size: usize) -> Vec<Vec<Colour>> {
    fn go(
        items: &[Colour],
        size: usize,
        start: usize,
        cur: &mut Vec<Colour>,
        out: &mut Vec<Vec<Colour>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::new(), &mut out);
    out
}

/// A vertex or an edge of the checked graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Element {
    Vertex(usize),
    Edge(Edge),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "vertex {v}"),
            Element::Edge(e) => write!(f, "edge {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotInGraph(Element),
    Uncoloured(Element),
    /// Two edges at `vertex` share a colour.
    Properness {
        vertex: usize,
        first: Edge,
        second: Edge,
        colour: Colour,
    },
    /// Adjacent vertices share a colour.
    AdjacentVertices {
        edge: Edge,
        colour: Colour,
    },
    ListMembership {
        edge: Edge,
        colour: Colour,
    },
    PaletteRange {
        element: Element,
        colour: Colour,
    },
    VertexEdgeClash {
        vertex: usize,
        edge: Edge,
        colour: Colour,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotInGraph(x) => write!(f, "{x} not in graph"),
            Violation::Uncoloured(x) => write!(f, "{x} uncoloured"),
            Violation::Properness {
                vertex,
                first,
                second,
                colour,
            } => write!(
                f,
                "properness at vertex {vertex}: edges {first} and {second} both coloured {colour}"
            ),
            Violation::AdjacentVertices { edge, colour } => {
                write!(f, "properness: both ends of {edge} coloured {colour}")
            }
            Violation::ListMembership { edge, colour } => {
                write!(f, "list membership: colour {colour} not in list of {edge}")
            }
            Violation::PaletteRange { element, colour } => {
                write!(f, "palette range: {element} coloured {colour}")
            }
            Violation::VertexEdgeClash {
                vertex,
                edge,
                colour,
            } => {
                write!(
                    f,
                    "clash: vertex {vertex} and edge {edge} both coloured {colour}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

fn edge_properness(
    g: &Graph,
    colour_of: impl Fn(Edge) -> Option<Colour>,
    out: &mut Vec<Violation>,
) {
    for v in 0..g.n() {
        let mut seen: std::collections::BTreeMap<Colour, Edge> = Default::default();
        for e in g.incident_edges(v) {
            if let Some(c) = colour_of(e) {
                if let Some(&first) = seen.get(&c) {
                    out.push(Violation::Properness {
                        vertex: v,
                        first,
                        second: e,
                        colour: c,
                    });
                } else {
                    seen.insert(c, e);
                }
            }
        }
    }
}

/// Checks a complete edge colouring, optionally against lists.
pub fn validate_edge_colouring(
    g: &Graph,
    colouring: &EdgeColouring,
    lists: Option<&ListAssignment>,
) -> ViolationReport {
    let mut out = Vec::new();
    for (e, _) in colouring.iter() {
        if !g.contains_edge(e) {
            out.push(Violation::NotInGraph(Element::Edge(e)));
        }
    }
    for e in g.edges() {
        match colouring.get(e) {
            None => out.push(Violation::Uncoloured(Element::Edge(e))),
            Some(c) => {
                if let Some(l) = lists {
                    if !l.get(e).is_some_and(|l| l.contains(&c)) {
                        out.push(Violation::ListMembership { edge: e, colour: c });
                    }
                }
            }
        }
    }
    edge_properness(g, |e| colouring.get(e), &mut out);
    ViolationReport { violations: out }
}

/// Checks a complete total colouring with colours in `{1..=palette}`.
pub fn validate_total_colouring(g: &Graph, t: &TotalColouring, palette: Colour) -> ViolationReport {
    let mut out = Vec::new();
    if t.vertices.len() != g.n() {
        for v in g.n()..t.vertices.len() {
            out.push(Violation::NotInGraph(Element::Vertex(v)));
        }
    }
    for (e, _) in t.edges.iter() {
        if !g.contains_edge(e) {
            out.push(Violation::NotInGraph(Element::Edge(e)));
        }
    }
    let in_range = |c: Colour| (1..=palette).contains(&c);
    for v in 0..g.n() {
        match t.vertices.get(v).copied().flatten() {
            None => out.push(Violation::Uncoloured(Element::Vertex(v))),
            Some(c) if !in_range(c) => out.push(Violation::PaletteRange {
                element: Element::Vertex(v),
                colour: c,
            }),
            Some(_) => {}
        }
    }
    for e in g.edges() {
        match t.edge(e) {
            None => out.push(Violation::Uncoloured(Element::Edge(e))),
            Some(c) => {
                if !in_range(c) {
                    out.push(Violation::PaletteRange {
                        element: Element::Edge(e),
                        colour: c,
                    });
                }
                for x in [e.u, e.v] {
                    if t.vertices.get(x).copied().flatten() == Some(c) {
                        out.push(Violation::VertexEdgeClash {
                            vertex: x,
                            edge: e,
                            colour: c,
                        });
                    }
                }
            }
        }
        if let (Some(a), Some(b)) = (
            t.vertices.get(e.u).copied().flatten(),
            t.vertices.get(e.v).copied().flatten(),
        ) {
            if a == b {
                out.push(Violation::AdjacentVertices { edge: e, colour: a });
            }
        }
    }
    edge_properness(g, |e| t.edge(e), &mut out);
    ViolationReport { violations: out }
}

/// Properness of the coloured part only; uncoloured elements are ignored.
pub(crate) fn partial_total_violations(g: &Graph, t: &TotalColouring) -> Vec<Violation> {
    validate_total_colouring(g, t, t.palette)
        .violations
        .into_iter()
        .filter(|v| !matches!(v, Violation::Uncoloured(_)))
        .collect()
}
