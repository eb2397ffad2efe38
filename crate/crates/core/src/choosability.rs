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

//! List edge colouring of bipartite graphs by the kernel method.
//!
//! A proper edge colouring `c*` of a bipartite graph orients its line graph:
//! at a U-vertex edges point to larger `c*`, at a W-vertex to smaller `c*`.
//! Every induced subgraph of that digraph has a kernel, found here as a
//! stable matching. Colouring colour classes by kernels, one colour at a
//! time, succeeds whenever every list is longer than the out-degree of its
//! edge.
//!
//! With `c*(uw) <= deg(u)` the out-degree of `uw` is at most `deg(u) - 1`,
//! so lists of size `deg(u)` suffice. This is what makes a W side choosable,
//! and [`find_choosable_subset`] locates such a side inside a larger graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::colouring::{Colour, EdgeColouring, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Edge};
use crate::search::ConflictSearch;

/// Default node budget for the auxiliary-colouring search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// A proper edge colouring used only as a priority between edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryEdgeOrder(EdgeColouring);

impl AuxiliaryEdgeOrder {
    pub fn new(cstar: EdgeColouring) -> Self {
        AuxiliaryEdgeOrder(cstar)
    }

    pub fn rank(&self, e: Edge) -> Colour {
        self.0.get(e).expect("order covers every edge")
    }

    pub fn as_colouring(&self) -> &EdgeColouring {
        &self.0
    }

    /// Defined on every edge of `h` and proper.
    pub fn is_proper_on(&self, h: &BipartiteGraph) -> bool {
        let edges = h.edges();
        if edges.iter().any(|&e| self.0.get(e).is_none()) {
            return false;
        }
        h.side_u().iter().chain(h.side_w()).all(|&x| {
            let ranks: BTreeSet<Colour> = h
                .neighbours(x)
                .iter()
                .map(|&y| self.rank(Edge::new(x, y)))
                .collect();
            ranks.len() == h.degree(x)
        })
    }

    /// `c*(uw) <= deg(u)` on every edge.
    pub fn is_lstar_bounded(&self, h: &BipartiteGraph) -> bool {
        h.edges().into_iter().all(|e| {
            let (u, _) = h.orient(e);
            self.0.get(e).is_some_and(|c| c as usize <= h.degree(u))
        })
    }

    /// Edges that `e` points to: larger rank at its U end, smaller at its W end.
    pub fn out_degree(&self, h: &BipartiteGraph, e: Edge) -> usize {
        let (u, w) = h.orient(e);
        let c = self.rank(e);
        let at_u = h
            .neighbours(u)
            .iter()
            .filter(|&&y| self.rank(Edge::new(u, y)) > c)
            .count();
        let at_w = h
            .neighbours(w)
            .iter()
            .filter(|&&y| self.rank(Edge::new(y, w)) < c)
            .count();
        at_u + at_w
    }
}

/// `L*(uw) = {1, ..., deg(u)}`.
pub fn lstar_lists(h: &BipartiteGraph) -> ListAssignment {
    let mut l = ListAssignment::new();
    for e in h.edges() {
        let (u, _) = h.orient(e);
        l.insert(e, 1..=h.degree(u) as Colour);
    }
    l
}

fn bipartite_search(h: &BipartiteGraph, edges: &[Edge], lists: Vec<Vec<Colour>>) -> ConflictSearch {
    let pos: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut search = ConflictSearch::new(lists);
    for &x in h.side_u().iter().chain(h.side_w()) {
        let at: Vec<usize> = h
            .neighbours(x)
            .iter()
            .map(|&y| pos[&Edge::new(x, y)])
            .collect();
        for (i, &a) in at.iter().enumerate() {
            for &b in &at[i + 1..] {
                search.add_conflict(a, b);
            }
        }
    }
    search
}

/// Exhaustive search for an edge colouring from the lists `L*`.
///
/// Returns `Ok(None)` when none exists and `Err(BudgetExceeded)` when the
/// search gives up first.
pub fn find_lstar_colouring(h: &BipartiteGraph, budget: u64) -> Result<Option<EdgeColouring>> {
    let edges = h.edges();
    let lists = edges
        .iter()
        .map(|&e| (1..=h.degree(h.orient(e).0) as Colour).collect())
        .collect();
    let found = bipartite_search(h, &edges, lists).solve(budget)?;
    Ok(found.map(|cs| edges.iter().copied().zip(cs).collect()))
}

/// W is choosable iff `h` is colourable from `L*`.
pub fn is_choosable_via_lstar(h: &BipartiteGraph, budget: u64) -> Result<bool> {
    Ok(find_lstar_colouring(h, budget)?.is_some())
}

/// A proper colouring with `Δ(h)` colours, found by search.
pub fn delta_bounded_order(h: &BipartiteGraph, budget: u64) -> Result<AuxiliaryEdgeOrder> {
    let edges = h.edges();
    let delta = h.max_degree() as Colour;
    let search = bipartite_search(h, &edges, vec![(1..=delta).collect(); edges.len()]).symmetric();
    let found = search
        .solve(budget)?
        .ok_or_else(|| Error::internal("bipartite graph without a Δ-edge-colouring"))?;
    Ok(AuxiliaryEdgeOrder::new(
        edges.iter().copied().zip(found).collect(),
    ))
}

fn dominated(
    h: &BipartiteGraph,
    order: &AuxiliaryEdgeOrder,
    kernel: &BTreeSet<Edge>,
    e: Edge,
) -> bool {
    let (u, w) = h.orient(e);
    let c = order.rank(e);
    h.neighbours(u).iter().any(|&y| {
        let f = Edge::new(u, y);
        kernel.contains(&f) && order.rank(f) > c
    }) || h.neighbours(w).iter().any(|&y| {
        let f = Edge::new(y, w);
        kernel.contains(&f) && order.rank(f) < c
    })
}

/// Whether `kernel ⊆ f` is a matching that dominates every other edge of `f`.
pub fn is_kernel(
    h: &BipartiteGraph,
    order: &AuxiliaryEdgeOrder,
    f: &BTreeSet<Edge>,
    kernel: &BTreeSet<Edge>,
) -> bool {
    if !kernel.is_subset(f) {
        return false;
    }
    let mut ends = BTreeSet::new();
    for e in kernel {
        if !ends.insert(e.u) || !ends.insert(e.v) {
            return false;
        }
    }
    f.difference(kernel)
        .all(|&e| dominated(h, order, kernel, e))
}

/// Kernel of the oriented line graph restricted to `f`, via deferred
/// acceptance: U-vertices propose in decreasing rank, each W-vertex keeps
/// the smallest-rank proposal.
pub fn kernel_for_colour(
    h: &BipartiteGraph,
    order: &AuxiliaryEdgeOrder,
    f: &BTreeSet<Edge>,
) -> Result<BTreeSet<Edge>> {
    let mut prefs: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for &e in f {
        if !h.has_edge(e) {
            return Err(Error::pre(format!("edge {e} not in the bipartite graph")));
        }
        prefs.entry(h.orient(e).0).or_default().push(e);
    }
    for list in prefs.values_mut() {
        list.sort_by_key(|&e| std::cmp::Reverse(order.rank(e)));
    }
    let mut next: BTreeMap<usize, usize> = prefs.keys().map(|&u| (u, 0)).collect();
    let mut held: BTreeMap<usize, Edge> = BTreeMap::new();
    let mut free: VecDeque<usize> = prefs.keys().copied().collect();
    while let Some(u) = free.pop_front() {
        let i = next[&u];
        let Some(&e) = prefs[&u].get(i) else {
            continue;
        };
        *next.get_mut(&u).expect("proposer") += 1;
        let (_, w) = h.orient(e);
        match held.get(&w) {
            None => {
                held.insert(w, e);
            }
            Some(&cur) if order.rank(e) < order.rank(cur) => {
                held.insert(w, e);
                free.push_back(h.orient(cur).0);
            }
            Some(_) => free.push_back(u),
        }
    }
    let kernel: BTreeSet<Edge> = held.into_values().collect();
    if !is_kernel(h, order, f, &kernel) {
        return Err(Error::internal("stable matching is not a kernel"));
    }
    Ok(kernel)
}

/// Colours `h` from `lists`, processing colours in increasing order and
/// giving each colour to a kernel of the uncoloured edges that list it.
///
/// Requires `order` proper and `out_degree(e) < |L(e)|` on every edge.
pub fn kernel_list_colour(
    h: &BipartiteGraph,
    lists: &ListAssignment,
    order: &AuxiliaryEdgeOrder,
) -> Result<EdgeColouring> {
    if !order.is_proper_on(h) {
        return Err(Error::pre(
            "auxiliary order is not a proper colouring of every edge",
        ));
    }
    let edges = h.edges();
    for &e in &edges {
        let out = order.out_degree(h, e);
        let size = lists.size(e);
        if out >= size {
            return Err(Error::pre(format!(
                "edge {e}: out-degree {out} not below list size {size}"
            )));
        }
    }
    let mut colouring = EdgeColouring::new();
    let mut uncoloured: BTreeSet<Edge> = edges.iter().copied().collect();
    for gamma in lists.all_colours() {
        if uncoloured.is_empty() {
            break;
        }
        let f: BTreeSet<Edge> = uncoloured
            .iter()
            .copied()
            .filter(|&e| lists.get(e).is_some_and(|l| l.contains(&gamma)))
            .collect();
        if f.is_empty() {
            continue;
        }
        for e in kernel_for_colour(h, order, &f)? {
            colouring.set(e, gamma);
            uncoloured.remove(&e);
        }
    }
    if let Some(e) = uncoloured.first() {
        return Err(Error::internal(format!(
            "kernel colouring left edge {e} uncoloured"
        )));
    }
    Ok(colouring)
}

/// Trace of the choosable-subset recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoosableCertificate {
    pub c: BTreeSet<usize>,
    /// Each step drops a low-degree U-vertex together with its W-neighbours.
    pub removed: Vec<(usize, BTreeSet<usize>)>,
    pub terminal_u: BTreeSet<usize>,
}

impl ChoosableCertificate {
    /// Replays the removals on `h`, returning the terminal `(U, W)`.
    pub fn replay(&self, h: &BipartiteGraph) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let mut u = h.side_u().clone();
        let mut w = h.side_w().clone();
        for (v, nv) in &self.removed {
            u.remove(v);
            for x in nv {
                w.remove(x);
            }
        }
        (u, w)
    }

    /// Checks the replay and the terminal-graph condition.
    pub fn verify(&self, h: &BipartiteGraph) -> bool {
        let (u, w) = self.replay(h);
        if u != self.terminal_u || self.c.is_empty() || !self.c.is_subset(&w) {
            return false;
        }
        let terminal = h.induced(&u, &w);
        u.len() <= 1 || u.iter().all(|&v| terminal.degree(v) >= u.len())
    }
}

/// Finds a choosable `C ⊆ W` in a bipartite graph with `2|W| > |U|(|U|-1)`.
///
/// While some U-vertex has degree below `|U|`, drop it and its neighbours.
/// Either one U-vertex remains (a single W-vertex is choosable) or every
/// U-vertex dominates its neighbours in degree and the remaining W is.
pub fn find_choosable_subset(h: &BipartiteGraph) -> Result<ChoosableCertificate> {
    let slack = |u: usize, w: usize| 2 * w > u * u.saturating_sub(1);
    if h.side_w().is_empty() || !slack(h.side_u().len(), h.side_w().len()) {
        return Err(Error::pre(format!(
            "need 2|W| > |U|(|U|-1), have |U|={} |W|={}",
            h.side_u().len(),
            h.side_w().len()
        )));
    }
    let mut u = h.side_u().clone();
    let mut w = h.side_w().clone();
    let mut removed = Vec::new();
    loop {
        if !slack(u.len(), w.len()) {
            return Err(Error::internal("choosable-subset recursion lost its slack"));
        }
        if u.len() <= 1 {
            let first = *w.first().expect("slack keeps W non-empty");
            return Ok(ChoosableCertificate {
                c: BTreeSet::from([first]),
                removed,
                terminal_u: u,
            });
        }
        let sub = h.induced(&u, &w);
        match u.iter().copied().find(|&v| sub.degree(v) < u.len()) {
            Some(v) => {
                let nv = sub.neighbours(v).clone();
                u.remove(&v);
                w.retain(|x| !nv.contains(x));
                removed.push((v, nv));
            }
            None => {
                return Ok(ChoosableCertificate {
                    c: w,
                    removed,
                    terminal_u: u,
                })
            }
        }
    }
}

/// Colours `hc = H[C ∪ N(C)]` from residual lists with `|L(vw)| >= deg(v)`.
///
/// A single U-vertex is coloured greedily. Otherwise an `L*`-colouring of
/// `hc` serves as the auxiliary order for [`kernel_list_colour`]. If that
/// search runs out of budget the lists are searched directly.
pub fn colour_choosable_extension(
    hc: &BipartiteGraph,
    residual: &ListAssignment,
    budget: u64,
) -> Result<EdgeColouring> {
    let edges = hc.edges();
    for &e in &edges {
        let (u, _) = hc.orient(e);
        if residual.size(e) < hc.degree(u) {
            return Err(Error::pre(format!(
                "edge {e}: residual list of {} colours below degree {}",
                residual.size(e),
                hc.degree(u)
            )));
        }
    }
    let active_u: Vec<usize> = hc
        .side_u()
        .iter()
        .copied()
        .filter(|&u| hc.degree(u) > 0)
        .collect();
    if active_u.len() <= 1 {
        let mut colouring = EdgeColouring::new();
        let mut used = BTreeSet::new();
        for &e in &edges {
            let c = residual
                .get(e)
                .and_then(|l| l.iter().find(|c| !used.contains(*c)).copied())
                .ok_or_else(|| Error::internal(format!("no free colour for edge {e}")))?;
            used.insert(c);
            colouring.set(e, c);
        }
        return Ok(colouring);
    }
    match find_lstar_colouring(hc, budget) {
        Ok(Some(cstar)) => kernel_list_colour(hc, residual, &AuxiliaryEdgeOrder::new(cstar)),
        Ok(None) => Err(Error::internal("choosable subset has no L*-colouring")),
        Err(Error::BudgetExceeded { limit }) => {
            let lists = edges
                .iter()
                .map(|&e| {
                    residual
                        .get(e)
                        .map(|l| l.iter().copied().collect())
                        .unwrap_or_default()
                })
                .collect();
            match bipartite_search(hc, &edges, lists).solve(u64::MAX)? {
                Some(cs) => Ok(edges.iter().copied().zip(cs).collect()),
                None => Err(Error::BudgetExceeded { limit }),
            }
        }
        Err(e) => Err(e),
    }
}
