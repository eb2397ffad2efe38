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

//! List edge colouring of graphs of width at most `k` from lists of size
//! `max(ceil((k+3)^2 / 2), Δ(G))`.
//!
//! Reduction: edges with endpoint degree sum below `Δ + 2` are peeled (any
//! colouring of the rest leaves one of their colours free). Once none are
//! left, a witness `(U, W, x)` exists with `|W| > k(k+1)/2`, which is enough
//! for a choosable subset `C ⊆ W`; `C` is deleted. Colouring then replays the
//! records backwards.

use std::collections::{BTreeMap, BTreeSet};

use crate::choosability::{colour_choosable_extension, find_choosable_subset};
use crate::colouring::{Colour, EdgeColouring, ListAssignment};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Edge, Graph};
use crate::oracles::validate_edge_colouring;
use crate::treewidth::{extract_witness, root_decomposition, validate_td, TreeDecomposition};

/// `ceil((k+3)^2 / 2)`.
pub fn list_size_threshold(k: usize) -> usize {
    ((k + 3) * (k + 3)).div_ceil(2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeelRecord {
    /// An edge removed because its degree sum was small.
    Edge(Edge),
    /// A choosable set removed with all of its edges.
    Subset {
        c: BTreeSet<usize>,
        neighbours: BTreeSet<usize>,
        /// `H[C ∪ N(C)]`, holding exactly the removed edges.
        graph: BipartiteGraph,
    },
}

impl PeelRecord {
    pub fn edges(&self) -> Vec<Edge> {
        match self {
            PeelRecord::Edge(e) => vec![*e],
            PeelRecord::Subset { graph, .. } => graph.edges(),
        }
    }
}

/// Removal records in the order they happened.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PeelStack {
    pub records: Vec<PeelRecord>,
}

impl PeelStack {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn removed_edges(&self) -> Vec<Edge> {
        self.records.iter().flat_map(PeelRecord::edges).collect()
    }
}

/// Removes edges with degree sum `< threshold`, smallest edge first, until
/// none is left. Removals only lower degrees, so a candidate stays one.
pub(crate) fn peel_in_place(g: &mut Graph, threshold: usize, stack: &mut Vec<Edge>) {
    let mut candidates: BTreeSet<Edge> =
        g.edges().filter(|&e| g.degree_sum(e) < threshold).collect();
    while let Some(e) = candidates.pop_first() {
        g.remove_edge(e);
        stack.push(e);
        for x in [e.u, e.v] {
            for f in g.incident_edges(x).collect::<Vec<_>>() {
                if g.degree_sum(f) < threshold {
                    candidates.insert(f);
                }
            }
        }
    }
}

/// Peels `g` down to its core with respect to `threshold`.
pub fn peel_edges(g: &Graph, threshold: usize) -> (Graph, PeelStack) {
    let mut core = g.clone();
    let mut removed = Vec::new();
    peel_in_place(&mut core, threshold, &mut removed);
    let stack = PeelStack {
        records: removed.into_iter().map(PeelRecord::Edge).collect(),
    };
    (core, stack)
}

fn used_colours(colouring: &EdgeColouring) -> BTreeMap<usize, BTreeSet<Colour>> {
    let mut used: BTreeMap<usize, BTreeSet<Colour>> = BTreeMap::new();
    for (e, c) in colouring.iter() {
        used.entry(e.u).or_default().insert(c);
        used.entry(e.v).or_default().insert(c);
    }
    used
}

fn colour_peeled_edge(
    e: Edge,
    lists: &ListAssignment,
    used: &mut BTreeMap<usize, BTreeSet<Colour>>,
    colouring: &mut EdgeColouring,
) -> Result<()> {
    let blocked = |c: &Colour| {
        used.get(&e.u).is_some_and(|s| s.contains(c))
            || used.get(&e.v).is_some_and(|s| s.contains(c))
    };
    let c = lists
        .get(e)
        .and_then(|l| l.iter().find(|c| !blocked(c)).copied())
        .ok_or_else(|| Error::internal(format!("no free list colour for peeled edge {e}")))?;
    colouring.set(e, c);
    used.entry(e.u).or_default().insert(c);
    used.entry(e.v).or_default().insert(c);
    Ok(())
}

/// Colours the edges of an all-edge peel stack in reverse order, each with
/// the smallest list colour not yet used at either endpoint.
pub fn replay_edge_peels(
    partial: EdgeColouring,
    stack: &PeelStack,
    lists: &ListAssignment,
) -> Result<EdgeColouring> {
    let mut colouring = partial;
    let mut used = used_colours(&colouring);
    for record in stack.records.iter().rev() {
        match record {
            PeelRecord::Edge(e) => colour_peeled_edge(*e, lists, &mut used, &mut colouring)?,
            PeelRecord::Subset { .. } => {
                return Err(Error::pre("replay_edge_peels only handles edge records"));
            }
        }
    }
    Ok(colouring)
}

/// Runs the reduction on `g` with degree parameter `delta` and returns the
/// removal records; the graph is edgeless afterwards.
pub fn reduce_for_list_edge(
    g: &Graph,
    td: &TreeDecomposition,
    k: usize,
    delta: usize,
) -> Result<PeelStack> {
    let mut stack = PeelStack::default();
    if g.is_edgeless() {
        return Ok(stack);
    }
    let rooted = root_decomposition(td, 0)?;
    let mut work = g.clone();
    let mut peeled = Vec::new();
    let mut rounds = 0usize;
    loop {
        rounds += 1;
        if rounds > g.edge_count() + g.n() + 1 {
            return Err(Error::internal("reduction failed to make progress"));
        }
        peel_in_place(&mut work, delta + 2, &mut peeled);
        stack.records.extend(peeled.drain(..).map(PeelRecord::Edge));
        if work.is_edgeless() {
            return Ok(stack);
        }
        let witness = extract_witness(&work, &rooted, k, delta)?;
        if 2 * witness.w.len() <= (k + 1) * k {
            return Err(Error::pre(format!(
                "witness has |W|={} but k={k} needs more than {}; degree parameter {delta} too small",
                witness.w.len(),
                (k + 1) * k / 2
            )));
        }
        let edges: Vec<(usize, usize)> = witness
            .w
            .iter()
            .flat_map(|&w| work.neighbours(w).iter().map(move |&u| (u, w)))
            .collect();
        let h = BipartiteGraph::new(witness.u.iter().copied(), witness.w.iter().copied(), edges)?;
        let cert = find_choosable_subset(&h)?;
        let hc = h.around(&cert.c);
        for &c in &cert.c {
            work.isolate(c);
        }
        stack.records.push(PeelRecord::Subset {
            neighbours: hc.side_u().clone(),
            c: cert.c,
            graph: hc,
        });
    }
}

/// Colours every edge of `g` from `lists`.
///
/// Needs a valid decomposition of width at most `k` and lists of size at
/// least `max(threshold, Δ(G))`, the threshold being
/// [`list_size_threshold`] unless overridden in `cfg`.
pub fn solve_list_edge(
    g: &Graph,
    td: &TreeDecomposition,
    lists: &ListAssignment,
    k: usize,
    cfg: &RunConfig,
) -> Result<EdgeColouring> {
    if let Some(v) = validate_td(g, td).first() {
        return Err(Error::pre(format!("invalid decomposition: {v}")));
    }
    if td.width() > k {
        return Err(Error::pre(format!(
            "decomposition width {} exceeds k={k}",
            td.width()
        )));
    }
    let threshold = cfg
        .threshold_override
        .unwrap_or_else(|| list_size_threshold(k));
    let delta = threshold.max(g.max_degree());
    for e in g.edges() {
        if lists.size(e) < delta {
            return Err(Error::pre(format!(
                "list of edge {e} has {} colours, need {delta}",
                lists.size(e)
            )));
        }
    }
    let stack = reduce_for_list_edge(g, td, k, delta)?;

    let mut colouring = EdgeColouring::new();
    let mut used: BTreeMap<usize, BTreeSet<Colour>> = BTreeMap::new();
    for record in stack.records.iter().rev() {
        match record {
            PeelRecord::Edge(e) => colour_peeled_edge(*e, lists, &mut used, &mut colouring)?,
            PeelRecord::Subset { graph: hc, .. } => {
                let mut residual = ListAssignment::new();
                for e in hc.edges() {
                    let (v, _) = hc.orient(e);
                    let taken = used.get(&v);
                    let rest: BTreeSet<Colour> = lists
                        .get(e)
                        .into_iter()
                        .flatten()
                        .filter(|c| !taken.is_some_and(|t| t.contains(c)))
                        .copied()
                        .collect();
                    if rest.len() < hc.degree(v) {
                        return Err(Error::internal(format!(
                            "residual list of {e} has {} colours, below d_H({v})={}",
                            rest.len(),
                            hc.degree(v)
                        )));
                    }
                    residual.insert(e, rest);
                }
                let part = colour_choosable_extension(hc, &residual, cfg.search_budget)?;
                for (e, c) in part.iter() {
                    colouring.set(e, c);
                    used.entry(e.u).or_default().insert(c);
                    used.entry(e.v).or_default().insert(c);
                }
            }
        }
    }
    let report = validate_edge_colouring(g, &colouring, Some(lists));
    if !report.is_empty() {
        return Err(Error::internal(format!(
            "edge colouring failed validation: {report}"
        )));
    }
    Ok(colouring)
}
