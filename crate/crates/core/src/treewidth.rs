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

//! Tree decompositions: validation, a min-degree heuristic, rooting, and the
//! extraction of the `(U, W, x)` substructure that both solvers recurse on.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<BTreeSet<usize>>,
    tree_edges: Vec<(usize, usize)>,
}

/// A single failed decomposition condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    NoNodes,
    NotATree(String),
    UnknownVertex { node: usize, vertex: usize },
    VertexNotCovered(usize),
    EdgeNotCovered(Edge),
    NonContiguous(usize),
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::NoNodes => write!(f, "decomposition has no nodes"),
            TdViolation::NotATree(why) => write!(f, "not a tree: {why}"),
            TdViolation::UnknownVertex { node, vertex } => {
                write!(f, "bag {node} holds unknown vertex {vertex}")
            }
            TdViolation::VertexNotCovered(v) => write!(f, "vertex {v} not covered"),
            TdViolation::EdgeNotCovered(e) => write!(f, "edge not covered: {e}"),
            TdViolation::NonContiguous(v) => write!(f, "vertex {v} non-contiguous"),
        }
    }
}

impl TreeDecomposition {
    pub fn new(bags: Vec<BTreeSet<usize>>, tree_edges: Vec<(usize, usize)>) -> Self {
        TreeDecomposition { bags, tree_edges }
    }

    /// One bag holding every vertex.
    pub fn trivial(n: usize) -> Self {
        TreeDecomposition::new(vec![(0..n).collect()], Vec::new())
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn bags(&self) -> &[BTreeSet<usize>] {
        &self.bags
    }

    pub fn bag(&self, t: usize) -> &BTreeSet<usize> {
        &self.bags[t]
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    /// Largest bag size minus one (0 for decompositions with only empty bags).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Erases `v` from every bag and shifts higher ids down, matching
    /// [`Graph::without_vertex`].
    pub fn without_vertex(&self, v: usize) -> TreeDecomposition {
        let bags = self
            .bags
            .iter()
            .map(|b| {
                b.iter()
                    .filter(|&&x| x != v)
                    .map(|&x| if x > v { x - 1 } else { x })
                    .collect()
            })
            .collect();
        TreeDecomposition::new(bags, self.tree_edges.clone())
    }

    /// Tree-ness and the subtree condition, which do not depend on the graph.
    pub fn structural_violations(&self) -> Vec<TdViolation> {
        let nodes = self.node_count();
        if nodes == 0 {
            return vec![TdViolation::NoNodes];
        }
        if let Some(why) = self.tree_defect() {
            return vec![TdViolation::NotATree(why)];
        }
        let top = self
            .bags
            .iter()
            .filter_map(|b| b.last())
            .max()
            .map_or(0, |m| m + 1);
        let mut occurrences = vec![0usize; top];
        let mut shared_edges = vec![0usize; top];
        for bag in &self.bags {
            for &v in bag {
                occurrences[v] += 1;
            }
        }
        for &(a, b) in &self.tree_edges {
            for &v in self.bags[a].intersection(&self.bags[b]) {
                shared_edges[v] += 1;
            }
        }
        // Nodes holding v induce a forest, connected iff it has one edge fewer than nodes.
        (0..top)
            .filter(|&v| occurrences[v] > 0 && shared_edges[v] + 1 != occurrences[v])
            .map(TdViolation::NonContiguous)
            .collect()
    }

    fn tree_defect(&self) -> Option<String> {
        let nodes = self.node_count();
        if self.tree_edges.len() + 1 != nodes {
            return Some(format!(
                "{} tree edges for {} nodes",
                self.tree_edges.len(),
                nodes
            ));
        }
        let mut parent: Vec<usize> = (0..nodes).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.tree_edges {
            if a >= nodes || b >= nodes {
                return Some(format!("tree edge {a}-{b} out of range"));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Some(format!("tree edge {a}-{b} closes a cycle"));
            }
            parent[ra] = rb;
        }
        None
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for &(a, b) in &self.tree_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

/// Checks every decomposition condition against `g`. Empty means valid.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> Vec<TdViolation> {
    if td.node_count() == 0 {
        return if g.n() == 0 {
            Vec::new()
        } else {
            vec![TdViolation::NoNodes]
        };
    }
    let mut out = Vec::new();
    for (t, bag) in td.bags().iter().enumerate() {
        for &v in bag.range(g.n()..) {
            out.push(TdViolation::UnknownVertex { node: t, vertex: v });
        }
    }
    let mut covered = vec![false; g.n()];
    for bag in td.bags() {
        for &v in bag.range(..g.n()) {
            covered[v] = true;
        }
    }
    out.extend(
        covered
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(v, _)| TdViolation::VertexNotCovered(v)),
    );
    for e in g.edges() {
        if !td
            .bags()
            .iter()
            .any(|b| b.contains(&e.u) && b.contains(&e.v))
        {
            out.push(TdViolation::EdgeNotCovered(e));
        }
    }
    out.extend(td.structural_violations());
    out
}

/// Min-degree elimination heuristic. Ties go to the smallest vertex id.
///
/// Node `i` holds the `i`-th eliminated vertex together with its neighbours
/// in the fill graph at that moment.
pub fn min_degree_decompose(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(Vec::new(), Vec::new());
    }
    let mut fill: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbours(v).clone()).collect();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut position = vec![usize::MAX; n];
    let mut bags = Vec::with_capacity(n);
    let mut later_nbrs = Vec::with_capacity(n);
    for step in 0..n {
        let v = *alive
            .iter()
            .min_by_key(|&&v| (fill[v].len(), v))
            .expect("vertices remain");
        alive.remove(&v);
        position[v] = step;
        let nbrs = std::mem::take(&mut fill[v]);
        for &a in &nbrs {
            fill[a].remove(&v);
            for &b in &nbrs {
                if a != b {
                    fill[a].insert(b);
                }
            }
        }
        let mut bag = nbrs.clone();
        bag.insert(v);
        bags.push(bag);
        later_nbrs.push(nbrs);
    }
    let mut tree_edges = Vec::with_capacity(n - 1);
    for (i, nbrs) in later_nbrs.iter().enumerate() {
        match nbrs.iter().map(|&w| position[w]).min() {
            Some(p) => tree_edges.push((i, p)),
            // Component finished; its bags share nothing with the rest.
            None if i + 1 < n => tree_edges.push((i, i + 1)),
            None => {}
        }
    }
    TreeDecomposition::new(bags, tree_edges)
}

/// A decomposition rooted at a node, with heights and per-vertex home nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedDecomposition {
    td: TreeDecomposition,
    root: usize,
    height: Vec<usize>,
    parent: Vec<Option<usize>>,
    home: Vec<Option<usize>>,
}

/// Roots `td` at node `root`.
pub fn root_decomposition(td: &TreeDecomposition, root: usize) -> Result<RootedDecomposition> {
    if root >= td.node_count() {
        return Err(Error::pre(format!(
            "root {root} is not a node ({} nodes)",
            td.node_count()
        )));
    }
    if let Some(v) = td.structural_violations().first() {
        return Err(Error::pre(format!("invalid decomposition: {v}")));
    }
    let nodes = td.node_count();
    let adj = td.adjacency();
    let mut height = vec![usize::MAX; nodes];
    let mut parent = vec![None; nodes];
    let mut order = Vec::with_capacity(nodes);
    let mut queue = VecDeque::from([root]);
    height[root] = 0;
    while let Some(t) = queue.pop_front() {
        order.push(t);
        for &s in &adj[t] {
            if height[s] == usize::MAX {
                height[s] = height[t] + 1;
                parent[s] = Some(t);
                queue.push_back(s);
            }
        }
    }
    let top = td
        .bags()
        .iter()
        .filter_map(|b| b.last())
        .max()
        .map_or(0, |m| m + 1);
    let mut home = vec![None; top];
    // BFS order visits nodes by non-decreasing height, so the first hit is minimal.
    for &t in &order {
        for &v in td.bag(t) {
            home[v].get_or_insert(t);
        }
    }
    Ok(RootedDecomposition {
        td: td.clone(),
        root,
        height,
        parent,
        home,
    })
}

impl RootedDecomposition {
    pub fn decomposition(&self) -> &TreeDecomposition {
        &self.td
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn height(&self, t: usize) -> usize {
        self.height[t]
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    /// The minimum-height node whose bag contains `v`.
    pub fn home_node(&self, v: usize) -> Option<usize> {
        self.home.get(v).copied().flatten()
    }

    pub fn width(&self) -> usize {
        self.td.width()
    }

    /// Whether `a` lies on the path from `b` to the root (inclusive).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut t = b;
        loop {
            if t == a {
                return true;
            }
            if self.height[t] <= self.height[a] {
                return false;
            }
            match self.parent[t] {
                Some(p) => t = p,
                None => return false,
            }
        }
    }
}

/// Output of [`extract_witness`]: a stable set `W` of low-degree vertices
/// whose neighbourhood lies in a small set `U`, with `x ∈ U` adjacent to all
/// of `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralWitness {
    pub u: BTreeSet<usize>,
    pub w: BTreeSet<usize>,
    pub x: usize,
    pub k: usize,
    pub delta0: usize,
}

impl StructuralWitness {
    /// Lists every failed conclusion; empty when the witness is sound for `g`.
    pub fn check(&self, g: &Graph) -> Vec<String> {
        let mut bad = Vec::new();
        if !self.u.is_disjoint(&self.w) {
            bad.push("U and W intersect".to_string());
        }
        if !self.u.contains(&self.x) {
            bad.push(format!("x={} not in U", self.x));
        }
        for &w in &self.w {
            for &y in g.neighbours(w) {
                if self.w.contains(&y) {
                    bad.push(format!("W not stable: edge {w}-{y}"));
                } else if !self.u.contains(&y) {
                    bad.push(format!("neighbour {y} of {w} outside U"));
                }
            }
            if g.degree(w) > self.k {
                bad.push(format!("deg({w})={} exceeds k={}", g.degree(w), self.k));
            }
            if !g.has_edge(self.x, w) {
                bad.push(format!("x={} not adjacent to {w}", self.x));
            }
        }
        if self.u.len() > self.k + 1 {
            bad.push(format!("|U|={} exceeds k+1", self.u.len()));
        }
        if self.w.len() + 2 * self.k < self.delta0 + 2 {
            bad.push(format!(
                "|W|={} below delta0+2-2k={}",
                self.w.len(),
                (self.delta0 + 2) as i64 - 2 * self.k as i64
            ));
        }
        bad
    }
}

/// Finds `(U, W, x)` for a graph of width at most `k` in which every edge has
/// degree sum at least `delta0 + 2`.
///
/// `x` is a vertex of degree `>= k+1` whose home node is deepest (smallest id
/// on ties), `U` is its home bag and `W = N(x) \ U`.
pub fn extract_witness(
    g: &Graph,
    rooted: &RootedDecomposition,
    k: usize,
    delta0: usize,
) -> Result<StructuralWitness> {
    if rooted.width() > k {
        return Err(Error::pre(format!(
            "decomposition width {} exceeds k={k}",
            rooted.width()
        )));
    }
    if delta0 + 1 < 2 * k {
        return Err(Error::pre(format!("delta0={delta0} below 2k-1 for k={k}")));
    }
    if g.is_edgeless() {
        return Err(Error::pre("graph has no edges"));
    }
    if let Some(e) = g.edges().find(|&e| g.degree_sum(e) < delta0 + 2) {
        return Err(Error::pre(format!(
            "edge {e} has degree sum {} < delta0+2={}",
            g.degree_sum(e),
            delta0 + 2
        )));
    }
    let mut best: Option<(usize, usize)> = None;
    for v in (0..g.n()).filter(|&v| g.degree(v) > k) {
        let home = rooted
            .home_node(v)
            .ok_or_else(|| Error::pre(format!("vertex {v} is in no bag")))?;
        let h = rooted.height(home);
        if best.is_none_or(|(bh, _)| h > bh) {
            best = Some((h, v));
        }
    }
    let (_, x) = best.ok_or_else(|| Error::internal("no vertex of degree above k"))?;
    let u = rooted
        .decomposition()
        .bag(rooted.home_node(x).expect("checked"))
        .clone();
    let w = g.neighbours(x).difference(&u).copied().collect();
    let witness = StructuralWitness { u, w, x, k, delta0 };
    let bad = witness.check(g);
    if !bad.is_empty() {
        return Err(Error::internal(format!(
            "witness check failed: {}",
            bad.join("; ")
        )));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_partial_ktree;

    fn p3() -> Graph {
        Graph::build(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn bags(sets: &[&[usize]]) -> Vec<BTreeSet<usize>> {
        sets.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn p3_two_bags_valid() {
        let td = TreeDecomposition::new(bags(&[&[0, 1], &[1, 2]]), vec![(0, 1)]);
        assert!(validate_td(&p3(), &td).is_empty());
        let mut g = p3();
        g.add_edge(0, 2).unwrap();
        let report = validate_td(&g, &td);
        assert_eq!(report, vec![TdViolation::EdgeNotCovered(Edge::new(0, 2))]);
        assert!(report[0].to_string().contains("edge not covered"));
    }

    #[test]
    fn non_contiguous_vertex_reported() {
        let g = Graph::empty(2);
        let td = TreeDecomposition::new(bags(&[&[0], &[1], &[0]]), vec![(0, 1), (1, 2)]);
        let report = validate_td(&g, &td);
        assert_eq!(report, vec![TdViolation::NonContiguous(0)]);
        assert_eq!(report[0].to_string(), "vertex 0 non-contiguous");
    }

    #[test]
    fn tree_shape_checked() {
        let g = Graph::empty(2);
        let disconnected =
            TreeDecomposition::new(bags(&[&[0], &[1], &[0, 1]]), vec![(0, 2), (0, 2)]);
        assert!(matches!(
            validate_td(&g, &disconnected)[..],
            [TdViolation::NotATree(_)]
        ));
        let none = TreeDecomposition::new(Vec::new(), Vec::new());
        assert_eq!(validate_td(&g, &none), vec![TdViolation::NoNodes]);
        assert!(validate_td(&Graph::empty(0), &none).is_empty());
    }

    #[test]
    fn heuristic_widths() {
        let tree = Graph::build(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        let td = min_degree_decompose(&tree);
        assert!(validate_td(&tree, &td).is_empty());
        assert_eq!(td.width(), 1);
        let k4 = Graph::complete(4);
        let td = min_degree_decompose(&k4);
        assert!(validate_td(&k4, &td).is_empty());
        assert_eq!(td.width(), 3);
        for seed in 0..20 {
            let (g, _) = gen_partial_ktree(2, 20, 1.0, seed).unwrap();
            let td = min_degree_decompose(&g);
            assert!(validate_td(&g, &td).is_empty());
            assert_eq!(td.width(), 2);
        }
    }

    #[test]
    fn heuristic_handles_disconnected_graphs() {
        let g = Graph::build(7, &[(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        let td = min_degree_decompose(&g);
        assert!(validate_td(&g, &td).is_empty());
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn rooting_single_node_and_path() {
        let td = TreeDecomposition::trivial(3);
        let r = root_decomposition(&td, 0).unwrap();
        assert_eq!(r.height(0), 0);
        assert!((0..3).all(|v| r.home_node(v) == Some(0)));

        let td = TreeDecomposition::new(bags(&[&[0, 1], &[1, 2], &[2, 3]]), vec![(0, 1), (1, 2)]);
        let r = root_decomposition(&td, 0).unwrap();
        assert_eq!((r.height(0), r.height(1), r.height(2)), (0, 1, 2));
        assert_eq!(r.home_node(1), Some(0));
        assert_eq!(r.home_node(3), Some(2));
        let r = root_decomposition(&td, 2).unwrap();
        assert_eq!(r.home_node(2), Some(2));
        assert_eq!(r.height(0), 2);
        assert!(root_decomposition(&td, 3).is_err());
    }

    #[test]
    fn home_nodes_of_adjacent_vertices_are_comparable() {
        for seed in 0..30 {
            let (g, td) = gen_partial_ktree(3, 25, 0.7, seed).unwrap();
            let r = root_decomposition(&td, 0).unwrap();
            for e in g.edges() {
                let (a, b) = (r.home_node(e.u).unwrap(), r.home_node(e.v).unwrap());
                assert!(r.is_ancestor(a, b) || r.is_ancestor(b, a), "edge {e}");
            }
        }
    }

    #[test]
    fn witness_on_star() {
        let g = Graph::build(9, &(1..9).map(|l| (0, l)).collect::<Vec<_>>()).unwrap();
        let td = min_degree_decompose(&g);
        let r = root_decomposition(&td, 0).unwrap();
        let w = extract_witness(&g, &r, 1, 7).unwrap();
        assert_eq!(w.x, 0);
        assert!(w.u.len() <= 2);
        assert!(w.w.len() >= 7);
        assert!(w.check(&g).is_empty());
    }

    #[test]
    fn witness_on_p3() {
        let g = p3();
        let td = TreeDecomposition::new(bags(&[&[0, 1], &[1, 2]]), vec![(0, 1)]);
        let r = root_decomposition(&td, 0).unwrap();
        let w = extract_witness(&g, &r, 1, 1).unwrap();
        assert_eq!(w.x, 1);
        assert!(!w.w.is_empty());
        assert!(w.check(&g).is_empty());
    }

    #[test]
    fn witness_preconditions() {
        let g = Graph::empty(3);
        let r = root_decomposition(&TreeDecomposition::trivial(3), 0).unwrap();
        assert!(matches!(
            extract_witness(&g, &r, 2, 3),
            Err(Error::Precondition(_))
        ));
        let g = p3();
        let r = root_decomposition(&TreeDecomposition::trivial(3), 0).unwrap();
        // Width 2 decomposition but k = 1.
        assert!(matches!(
            extract_witness(&g, &r, 1, 1),
            Err(Error::Precondition(_))
        ));
        // Degree sum 3 < delta0 + 2.
        assert!(matches!(
            extract_witness(&g, &r, 2, 3),
            Err(Error::Precondition(_))
        ));
        // delta0 < 2k - 1.
        assert!(matches!(
            extract_witness(&g, &r, 2, 2),
            Err(Error::Precondition(_))
        ));
    }
}
