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

//! Total colouring with `max{Δ(G), 3k-3, 2k} + 1` colours for graphs of
//! width at most `k`.
//!
//! Edges with degree sum at most `Δ` are peeled. Otherwise a witness
//! `(U, W, x)` is found, one edge `xw*` is set aside and the rest is
//! coloured first. On the way back the W-vertices are uncoloured, `xw*` is
//! coloured by a short cascade of recolourings around `x`, and W is
//! recoloured greedily.

use std::collections::BTreeSet;
use std::fmt;

use crate::colouring::{Colour, TotalColouring};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::oracles::{partial_total_violations, validate_total_colouring};
use crate::treewidth::{
    extract_witness, root_decomposition, validate_td, StructuralWitness, TreeDecomposition,
};

/// Smallest width the cascade argument supports.
const MIN_WIDTH: usize = 3;

/// `max(Δ(G), 3k-3, 2k) + 1` with `k` raised to at least 3.
pub fn total_palette(g: &Graph, k: usize) -> Colour {
    let k = k.max(MIN_WIDTH);
    (g.max_degree().max(3 * k - 3).max(2 * k) + 1) as Colour
}

fn smallest_free(t: &TotalColouring, forbidden: &BTreeSet<Colour>) -> Option<Colour> {
    t.first_free(forbidden)
}

/// Colours a peeled edge `uv` back in. `g` is the graph with `uv` present.
///
/// Uncoloured endpoints are coloured first. If both ends share a colour the
/// lower-degree end is recoloured; then `uv` takes the smallest free colour.
pub fn extend_peeled_total(g: &Graph, state: &mut TotalColouring, uv: Edge) -> Result<()> {
    if !g.contains_edge(uv) {
        return Err(Error::pre(format!("edge {uv} not in graph")));
    }
    if state.edge(uv).is_some() {
        return Err(Error::pre(format!("edge {uv} already coloured")));
    }
    let k = state.palette as usize;
    if g.degree_sum(uv) + 1 > k {
        return Err(Error::pre(format!(
            "edge {uv} has degree sum {} but palette is {k}",
            g.degree_sum(uv)
        )));
    }
    for x in [uv.u, uv.v] {
        if state.vertex(x).is_none() {
            let c = smallest_free(state, &state.forbidden_for_vertex(g, x))
                .ok_or_else(|| Error::internal(format!("no colour for vertex {x}")))?;
            state.vertices[x] = Some(c);
        }
    }
    if state.vertex(uv.u) == state.vertex(uv.v) {
        let v = if g.degree(uv.u) < g.degree(uv.v) {
            uv.u
        } else {
            uv.v
        };
        state.vertices[v] = None;
        let c = smallest_free(state, &state.forbidden_for_vertex(g, v))
            .ok_or_else(|| Error::internal(format!("no colour to recolour vertex {v}")))?;
        state.vertices[v] = Some(c);
    }
    let c = smallest_free(state, &state.forbidden_for_edge(g, uv))
        .ok_or_else(|| Error::internal(format!("no colour for peeled edge {uv}")))?;
    state.edges.set(uv, c);
    Ok(())
}

/// Colours missing at `v`: not on `v` and not on any coloured edge at `v`.
pub fn missing_set(g: &Graph, t: &TotalColouring, v: usize) -> BTreeSet<Colour> {
    t.missing(g, v)
}

/// Colours `W` greedily; every `w` has at most `2k` constraints.
pub fn finish_w(g: &Graph, state: &mut TotalColouring, w: &BTreeSet<usize>) -> Result<()> {
    for &v in w {
        if state.vertex(v).is_some() {
            return Err(Error::pre(format!("vertex {v} of W is already coloured")));
        }
        if let Some(e) = g.incident_edges(v).find(|&e| state.edge(e).is_none()) {
            return Err(Error::pre(format!("edge {e} at W-vertex {v} uncoloured")));
        }
    }
    for &v in w {
        let c = smallest_free(state, &state.forbidden_for_vertex(g, v))
            .ok_or_else(|| Error::internal(format!("no colour for W-vertex {v}")))?;
        state.vertices[v] = Some(c);
    }
    Ok(())
}

/// Which recolouring coloured `xw*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// A colour missing at both ends.
    Direct,
    /// Shift `α` onto `xv_β`, freeing `β`.
    ShiftAlpha,
    /// Recolour `x` with `α` and use its old colour.
    RecolourX,
    /// `xv_β ← ρ_x`, `x ← α`.
    RecolourXViaVBeta,
    /// `xv_β ← β*`.
    ShiftBetaStar,
    /// `xy ← α`, `xv_β ← β*`.
    ShiftBetaStarViaY,
    /// Swap the colours of `ux` and `uv_β`.
    Swap,
}

impl Move {
    fn label(self) -> &'static str {
        match self {
            Move::Direct => "direct",
            Move::ShiftAlpha => "shift-alpha",
            Move::RecolourX => "recolour-x",
            Move::RecolourXViaVBeta => "recolour-x-via-v-beta",
            Move::ShiftBetaStar => "shift-beta-star",
            Move::ShiftBetaStarViaY => "shift-beta-star-via-y",
            Move::Swap => "swap",
        }
    }
}

/// Machine-readable record of one augmentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentTrace {
    pub x: usize,
    pub w_star: usize,
    pub alpha: Colour,
    pub rho_x: Colour,
    pub f: BTreeSet<Colour>,
    pub missing_w_star: BTreeSet<Colour>,
    /// Moves whose preconditions held but whose result was not proper.
    pub rejected: Vec<Move>,
    pub applied: Move,
}

fn fmt_set(s: &BTreeSet<Colour>) -> String {
    let parts: Vec<String> = s.iter().map(Colour::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for AugmentTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rejected: Vec<&str> = self.rejected.iter().map(|m| m.label()).collect();
        write!(
            f,
            "augment x={} w*={} alpha={} rho_x={} F={} M(w*)={} rejected=[{}] move={}",
            self.x + 1,
            self.w_star + 1,
            self.alpha,
            self.rho_x,
            fmt_set(&self.f),
            fmt_set(&self.missing_w_star),
            rejected.join(","),
            self.applied.label()
        )
    }
}

#[derive(Debug, Clone, Copy)]
enum Change {
    Vertex(usize, Colour),
    Edge(Edge, Colour),
}

/// Colouring of `G - xw*` with W uncoloured, plus the quantities the
/// cascade works with.
#[derive(Debug, Clone)]
pub struct AugmentationState<'g> {
    pub graph: &'g Graph,
    pub colouring: TotalColouring,
    pub witness: StructuralWitness,
    pub w_star: usize,
    pub alpha: Colour,
    pub rho_x: Colour,
    pub f: BTreeSet<Colour>,
}

impl<'g> AugmentationState<'g> {
    /// Uncolours W and computes `α`, `ρ_x` and `F`. `graph` contains `xw*`;
    /// `colouring` must colour everything else.
    pub fn new(
        graph: &'g Graph,
        mut colouring: TotalColouring,
        witness: StructuralWitness,
        w_star: usize,
    ) -> Result<Self> {
        let x = witness.x;
        if !witness.w.contains(&w_star) || !graph.has_edge(x, w_star) {
            return Err(Error::pre(format!(
                "w*={w_star} is not a W-neighbour of x={x}"
            )));
        }
        if colouring.edge(Edge::new(x, w_star)).is_some() {
            return Err(Error::pre("edge xw* is already coloured"));
        }
        for &w in &witness.w {
            colouring.vertices[w] = None;
        }
        let rho_x = colouring
            .vertex(x)
            .ok_or_else(|| Error::pre(format!("x={x} is uncoloured")))?;
        let alpha = *colouring
            .missing(graph, x)
            .first()
            .ok_or_else(|| Error::internal(format!("no colour missing at x={x}")))?;
        let mut f: BTreeSet<Colour> = witness
            .u
            .iter()
            .filter(|&&u| graph.has_edge(x, u))
            .filter_map(|&u| colouring.edge(Edge::new(x, u)))
            .collect();
        f.insert(rho_x);
        let state = AugmentationState {
            graph,
            colouring,
            witness,
            w_star,
            alpha,
            rho_x,
            f,
        };
        let k = state.witness.k;
        if state.f.len() > k + 1 {
            return Err(Error::ClaimFailed(format!(
                "|F|={} exceeds k+1={}",
                state.f.len(),
                k + 1
            )));
        }
        let m_w = state.missing(w_star).len();
        let floor = state.colouring.palette as usize + 1 - graph.degree(w_star);
        if m_w < floor || m_w + 1 < 2 * k {
            return Err(Error::ClaimFailed(format!(
                "|M(w*)|={m_w} below palette-deg(w*)+1={floor} or 2k-1={}",
                2 * k - 1
            )));
        }
        Ok(state)
    }

    pub fn missing(&self, v: usize) -> BTreeSet<Colour> {
        self.colouring.missing(self.graph, v)
    }

    fn x(&self) -> usize {
        self.witness.x
    }

    /// The W-vertex `y` with `xy` coloured `c`, if any.
    fn w_edge_with(&self, c: Colour) -> Option<usize> {
        let x = self.x();
        self.graph.neighbours(x).iter().copied().find(|y| {
            self.witness.w.contains(y) && self.colouring.edge(Edge::new(x, *y)) == Some(c)
        })
    }

    fn alpha_on_u(&self) -> bool {
        self.witness
            .u
            .iter()
            .any(|&u| u != self.x() && self.colouring.vertex(u) == Some(self.alpha))
    }

    /// Applies `changes` if the result is proper around every changed element.
    fn try_commit(&mut self, changes: &[Change]) -> bool {
        let mut next = self.colouring.clone();
        for ch in changes {
            match *ch {
                Change::Vertex(v, c) => next.vertices[v] = Some(c),
                Change::Edge(e, c) => next.edges.set(e, c),
            }
        }
        let g = self.graph;
        let ok = changes.iter().all(|ch| match *ch {
            Change::Vertex(v, c) => {
                (1..=next.palette).contains(&c) && !next.forbidden_for_vertex(g, v).contains(&c)
            }
            Change::Edge(e, c) => {
                (1..=next.palette).contains(&c) && !next.forbidden_for_edge(g, e).contains(&c)
            }
        });
        if ok {
            self.colouring = next;
        }
        ok
    }
}

/// Colours `xw*`, leaving W uncoloured. First applicable move wins.
pub fn augment_at_witness(mut st: AugmentationState<'_>) -> Result<(TotalColouring, AugmentTrace)> {
    let x = st.x();
    let w_star = st.w_star;
    let xw = Edge::new(x, w_star);
    let alpha = st.alpha;
    let rho_x = st.rho_x;
    let m_w = st.missing(w_star);
    let m_x = st.missing(x);
    let mut trace = AugmentTrace {
        x,
        w_star,
        alpha,
        rho_x,
        f: st.f.clone(),
        missing_w_star: m_w.clone(),
        rejected: Vec::new(),
        applied: Move::Direct,
    };
    let done = |st: AugmentationState<'_>,
                mut trace: AugmentTrace,
                applied: Move|
     -> Result<(TotalColouring, AugmentTrace)> {
        let bad = partial_total_violations(st.graph, &st.colouring);
        if let Some(v) = bad.first() {
            return Err(Error::internal(format!(
                "move {} broke properness: {v}",
                applied.label()
            )));
        }
        trace.applied = applied;
        Ok((st.colouring, trace))
    };

    // A colour missing at both ends.
    for &beta in m_w.intersection(&m_x) {
        if st.try_commit(&[Change::Edge(xw, beta)]) {
            return done(st, trace, Move::Direct);
        }
        trace.rejected.push(Move::Direct);
    }

    let outside_f: Vec<Colour> = m_w.difference(&st.f).copied().collect();

    // Move α onto xv_β.
    for &beta in &outside_f {
        let Some(vb) = st.w_edge_with(beta) else {
            continue;
        };
        if st.missing(vb).contains(&alpha) {
            if st.try_commit(&[
                Change::Edge(Edge::new(x, vb), alpha),
                Change::Edge(xw, beta),
            ]) {
                return done(st, trace, Move::ShiftAlpha);
            }
            trace.rejected.push(Move::ShiftAlpha);
        }
    }

    // Recolour x with α.
    if m_w.contains(&rho_x) && !st.alpha_on_u() {
        if st.try_commit(&[Change::Vertex(x, alpha), Change::Edge(xw, rho_x)]) {
            return done(st, trace, Move::RecolourX);
        }
        trace.rejected.push(Move::RecolourX);
    }

    // A colour missing at v_β but not at w*.
    for &beta in &outside_f {
        let Some(vb) = st.w_edge_with(beta) else {
            continue;
        };
        let xvb = Edge::new(x, vb);
        let m_vb = st.missing(vb);
        for &beta_star in m_vb.difference(&m_w) {
            if beta_star == rho_x && !st.alpha_on_u() {
                let changes = [
                    Change::Vertex(x, alpha),
                    Change::Edge(xvb, rho_x),
                    Change::Edge(xw, beta),
                ];
                if st.try_commit(&changes) {
                    return done(st, trace, Move::RecolourXViaVBeta);
                }
                trace.rejected.push(Move::RecolourXViaVBeta);
                continue;
            }
            match st.w_edge_with(beta_star) {
                None => {
                    if st.try_commit(&[Change::Edge(xw, beta), Change::Edge(xvb, beta_star)]) {
                        return done(st, trace, Move::ShiftBetaStar);
                    }
                    trace.rejected.push(Move::ShiftBetaStar);
                }
                Some(y) if st.missing(y).contains(&alpha) => {
                    let changes = [
                        Change::Edge(Edge::new(x, y), alpha),
                        Change::Edge(xw, beta),
                        Change::Edge(xvb, beta_star),
                    ];
                    if st.try_commit(&changes) {
                        return done(st, trace, Move::ShiftBetaStarViaY);
                    }
                    trace.rejected.push(Move::ShiftBetaStarViaY);
                }
                Some(_) => {}
            }
        }
    }

    // Swap ux and uv_β. Everything the swap relies on is checked first.
    let k = st.witness.k;
    let claim = |msg: String, trace: &AugmentTrace| Error::ClaimFailed(format!("{msg} [{trace}]"));
    if st.f.len() != k + 1 || st.graph.degree(w_star) != k {
        return Err(claim(
            format!(
                "expected |F|=k+1={} and deg(w*)=k, got |F|={} deg(w*)={}",
                k + 1,
                st.f.len(),
                st.graph.degree(w_star)
            ),
            &trace,
        ));
    }
    let mut f_minus_rho = st.f.clone();
    f_minus_rho.remove(&rho_x);
    if !f_minus_rho.is_subset(&m_w) {
        return Err(claim("F - rho_x not contained in M(w*)".into(), &trace));
    }
    let beta = *outside_f
        .first()
        .ok_or_else(|| claim("M(w*) \\ F is empty".into(), &trace))?;
    let vb = st
        .w_edge_with(beta)
        .ok_or_else(|| claim(format!("no W-edge at x coloured beta={beta}"), &trace))?;
    let mut expected = m_w.clone();
    expected.remove(&beta);
    if st.missing(vb) != expected {
        return Err(claim(
            format!("M(v_beta) != M(w*) - beta for v_beta={vb}"),
            &trace,
        ));
    }
    let u = st
        .graph
        .neighbours(vb)
        .iter()
        .copied()
        .find(|&u| st.colouring.edge(Edge::new(u, vb)) == Some(alpha))
        .ok_or_else(|| claim(format!("no alpha-edge at v_beta={vb}"), &trace))?;
    if !st.graph.has_edge(u, x) {
        return Err(claim(format!("x={x} not adjacent to u={u}"), &trace));
    }
    let ux = Edge::new(u, x);
    let rho_ux = st
        .colouring
        .edge(ux)
        .ok_or_else(|| Error::internal(format!("edge {ux} uncoloured")))?;
    let changes = [
        Change::Edge(ux, alpha),
        Change::Edge(Edge::new(u, vb), rho_ux),
        Change::Edge(xw, rho_ux),
    ];
    if st.try_commit(&changes) {
        return done(st, trace, Move::Swap);
    }
    trace.rejected.push(Move::Swap);
    Err(Error::internal(format!("cascade exhausted [{trace}]")))
}

/// Result of [`solve_total`].
#[derive(Debug, Clone)]
pub struct TotalSolution {
    pub colouring: TotalColouring,
    pub traces: Vec<AugmentTrace>,
}

#[derive(Debug, Clone)]
enum TotalRecord {
    Peel(Edge),
    Witness {
        witness: StructuralWitness,
        w_star: usize,
    },
}

/// Totally colours `g` with [`total_palette`]`(g, k)` colours.
pub fn solve_total(g: &Graph, td: &TreeDecomposition, k: usize) -> Result<TotalSolution> {
    if let Some(v) = validate_td(g, td).first() {
        return Err(Error::pre(format!("invalid decomposition: {v}")));
    }
    if td.width() > k {
        return Err(Error::pre(format!(
            "decomposition width {} exceeds k={k}",
            td.width()
        )));
    }
    let kk = k.max(MIN_WIDTH);
    let palette = total_palette(g, k);
    let delta = palette as usize - 1;

    let mut work = g.clone();
    let mut records = Vec::new();
    if !g.is_edgeless() {
        let rooted = root_decomposition(td, 0)?;
        let mut peeled = Vec::new();
        loop {
            crate::edge_solver::peel_in_place(&mut work, delta + 1, &mut peeled);
            records.extend(peeled.drain(..).map(TotalRecord::Peel));
            if work.is_edgeless() {
                break;
            }
            let witness = extract_witness(&work, &rooted, kk, delta - 1)?;
            let w_star = *witness
                .w
                .first()
                .ok_or_else(|| Error::internal("witness with empty W"))?;
            work.remove_edge(Edge::new(witness.x, w_star));
            records.push(TotalRecord::Witness { witness, w_star });
        }
    }

    let mut colouring = TotalColouring::new(g.n(), palette);
    colouring.vertices.fill(Some(1));
    let mut traces = Vec::new();
    for record in records.into_iter().rev() {
        match record {
            TotalRecord::Peel(e) => {
                work.add_edge(e.u, e.v)?;
                extend_peeled_total(&work, &mut colouring, e)?;
            }
            TotalRecord::Witness { witness, w_star } => {
                work.add_edge(witness.x, w_star)?;
                let w = witness.w.clone();
                let state = AugmentationState::new(&work, colouring, witness, w_star)?;
                let (next, trace) = augment_at_witness(state)?;
                colouring = next;
                finish_w(&work, &mut colouring, &w)?;
                traces.push(trace);
            }
        }
    }
    let report = validate_total_colouring(g, &colouring, palette);
    if !report.is_empty() {
        return Err(Error::internal(format!(
            "total colouring failed validation: {report}"
        )));
    }
    Ok(TotalSolution { colouring, traces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_partial_ktree;
    use crate::oracles::oracle_total_colour;
    use crate::treewidth::min_degree_decompose;

    #[test]
    fn palettes() {
        let star =
            |d: usize| Graph::build(d + 1, &(1..=d).map(|l| (0, l)).collect::<Vec<_>>()).unwrap();
        assert_eq!(total_palette(&star(10), 3), 11);
        assert_eq!(total_palette(&star(4), 3), 7);
        assert_eq!(total_palette(&star(10), 2), 11);
        assert_eq!(total_palette(&star(2), 1), 7);
        assert_eq!(total_palette(&star(10), 5), 13);
    }

    #[test]
    fn extend_isolated_edge() {
        let g = Graph::complete(2);
        let mut t = TotalColouring::new(2, 3);
        extend_peeled_total(&g, &mut t, Edge::new(0, 1)).unwrap();
        assert_eq!(t.vertices, vec![Some(1), Some(2)]);
        assert_eq!(t.edge(Edge::new(0, 1)), Some(3));
    }

    #[test]
    fn extend_recolours_on_clash() {
        // Path 2-0-1-3; edge 0-1 is being added with both ends coloured 1.
        let g = Graph::build(4, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        let mut t = TotalColouring::new(4, 5);
        t.vertices = vec![Some(1), Some(1), Some(2), Some(3)];
        t.edges.set(Edge::new(0, 2), 3);
        t.edges.set(Edge::new(1, 3), 2);
        extend_peeled_total(&g, &mut t, Edge::new(0, 1)).unwrap();
        // Equal degrees: vertex 1 is recoloured, avoiding 1 (u), 3 (nbr), 2 (edge) -> 4.
        assert_eq!(t.vertex(1), Some(4));
        // Edge avoids 1, 4, 3, 2 -> 5.
        assert_eq!(t.edge(Edge::new(0, 1)), Some(5));
        assert!(validate_total_colouring(&g, &t, 5).is_empty());
    }

    #[test]
    fn extend_rejects_large_degree_sum() {
        let g = Graph::complete(4);
        let mut t = TotalColouring::new(4, 5);
        assert!(matches!(
            extend_peeled_total(&g, &mut t, Edge::new(0, 1)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn finish_w_cases() {
        let g = Graph::build(3, &[(0, 1), (0, 2)]).unwrap();
        let mut t = TotalColouring::new(3, 5);
        t.vertices[0] = Some(1);
        t.edges.set(Edge::new(0, 1), 2);
        t.edges.set(Edge::new(0, 2), 3);
        let before = t.clone();
        finish_w(&g, &mut t, &BTreeSet::new()).unwrap();
        assert_eq!(t, before);
        finish_w(&g, &mut t, &BTreeSet::from([1, 2])).unwrap();
        // Each leaf avoids {1 (nbr), own edge colour}.
        assert_eq!(t.vertex(1), Some(3));
        assert_eq!(t.vertex(2), Some(2));
    }

    #[test]
    fn missing_sets() {
        let g = Graph::empty(1);
        let t = TotalColouring::new(1, 4);
        assert_eq!(missing_set(&g, &t, 0), (1..=4).collect());
    }

    #[test]
    fn edgeless_graph_all_colour_one() {
        let g = Graph::empty(5);
        let td = min_degree_decompose(&g);
        let s = solve_total(&g, &td, 1).unwrap();
        assert!(s.colouring.vertices.iter().all(|&c| c == Some(1)));
    }

    #[test]
    fn k4_within_palette() {
        let g = Graph::complete(4);
        let td = min_degree_decompose(&g);
        let s = solve_total(&g, &td, 3).unwrap();
        assert_eq!(s.colouring.palette, 7);
        assert!(validate_total_colouring(&g, &s.colouring, 7).is_empty());
        assert!(oracle_total_colour(&g, 5, 20).unwrap().is_some());
    }

    #[test]
    fn direct_move_when_alpha_missing_at_w_star() {
        // Star at x=0 with leaves 1..=3 and an extra leaf 4 = w*.
        let g = Graph::build(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let witness = StructuralWitness {
            u: BTreeSet::from([0]),
            w: BTreeSet::from([1, 2, 3, 4]),
            x: 0,
            k: 3,
            delta0: 5,
        };
        let w_star = 1;
        let mut t = TotalColouring::new(5, 7);
        t.vertices = vec![Some(1), None, Some(2), Some(2), Some(2)];
        for v in 2..=4 {
            t.edges.set(Edge::new(0, v), v as Colour);
        }
        let st = AugmentationState::new(&g, t, witness, w_star).unwrap();
        assert!(st.missing(w_star).contains(&st.alpha));
        let (out, trace) = augment_at_witness(st).unwrap();
        assert_eq!(trace.applied, Move::Direct);
        assert_eq!(out.edge(Edge::new(0, w_star)), Some(trace.alpha));
    }

    fn witness(u: &[usize], w: &[usize], k: usize) -> StructuralWitness {
        StructuralWitness {
            u: u.iter().copied().collect(),
            w: w.iter().copied().collect(),
            x: 0,
            k,
            delta0: 2 * k,
        }
    }

    fn colour_edges(t: &mut TotalColouring, edges: &[(usize, usize, Colour)]) {
        for &(u, v, c) in edges {
            t.edges.set(Edge::new(u, v), c);
        }
    }

    #[test]
    fn recolour_x_move() {
        // x=0, U={0,1,6,7}, W={2,3,4}, w*=2.
        let coloured = [
            (0, 1, 4),
            (0, 6, 5),
            (0, 3, 6),
            (0, 4, 7),
            (1, 2, 1),
            (6, 2, 2),
            (3, 6, 1),
            (4, 7, 1),
        ];
        let mut pairs: Vec<(usize, usize)> = coloured.iter().map(|&(u, v, _)| (u, v)).collect();
        pairs.push((0, 2));
        let g = Graph::build(8, &pairs).unwrap();
        let mut t = TotalColouring::new(8, 7);
        t.vertices = vec![Some(3), Some(2), None, None, None, None, Some(4), Some(2)];
        colour_edges(&mut t, &coloured);
        let st = AugmentationState::new(&g, t, witness(&[0, 1, 6, 7], &[2, 3, 4], 3), 2).unwrap();
        assert_eq!((st.alpha, st.rho_x), (1, 3));
        let (out, trace) = augment_at_witness(st).unwrap();
        assert_eq!(trace.applied, Move::RecolourX);
        assert_eq!(out.vertex(0), Some(1));
        assert_eq!(out.edge(Edge::new(0, 2)), Some(3));
        assert!(partial_total_violations(&g, &out).is_empty());
    }

    fn swap_instance() -> (Graph, TotalColouring) {
        // x=0, U={0,1,2,3}, W={4,5,6}, w*=4; every earlier move is blocked.
        let coloured = [
            (0, 1, 2),
            (0, 2, 3),
            (0, 3, 4),
            (0, 5, 5),
            (0, 6, 6),
            (4, 1, 1),
            (4, 2, 7),
            (5, 2, 1),
            (5, 3, 7),
            (6, 3, 1),
            (6, 1, 7),
        ];
        let mut pairs: Vec<(usize, usize)> = coloured.iter().map(|&(u, v, _)| (u, v)).collect();
        pairs.push((0, 4));
        let g = Graph::build(7, &pairs).unwrap();
        let mut t = TotalColouring::new(7, 7);
        t.vertices = vec![Some(7), Some(3), Some(2), Some(2), None, None, None];
        colour_edges(&mut t, &coloured);
        (g, t)
    }

    #[test]
    fn swap_move() {
        let (g, t) = swap_instance();
        let st = AugmentationState::new(&g, t, witness(&[0, 1, 2, 3], &[4, 5, 6], 3), 4).unwrap();
        assert_eq!(st.f, BTreeSet::from([2, 3, 4, 7]));
        let (out, trace) = augment_at_witness(st).unwrap();
        assert_eq!(trace.applied, Move::Swap);
        assert_eq!(out.edge(Edge::new(0, 2)), Some(1));
        assert_eq!(out.edge(Edge::new(2, 5)), Some(3));
        assert_eq!(out.edge(Edge::new(0, 4)), Some(3));
        assert!(partial_total_violations(&g, &out).is_empty());
        assert!(trace.to_string().ends_with("move=swap"));
    }

    #[test]
    fn broken_claim_is_reported() {
        let (g, t) = swap_instance();
        // With k=4, |M(w*)|=5 is below 2k-1.
        let st = AugmentationState::new(&g, t, witness(&[0, 1, 2, 3], &[4, 5, 6], 4), 4);
        assert!(matches!(st, Err(Error::ClaimFailed(_))));
    }

    #[test]
    fn random_partial_3_trees_validate() {
        let mut checked = 0;
        for seed in 0..60 {
            let (g, td) = gen_partial_ktree(3, 12 + (seed as usize % 20), 0.8, seed).unwrap();
            let s = solve_total(&g, &td, 3).unwrap();
            let palette = total_palette(&g, 3);
            assert!(validate_total_colouring(&g, &s.colouring, palette).is_empty());
            if g.max_degree() >= 6 {
                assert_eq!(palette as usize, g.max_degree() + 1);
            }
            checked += 1;
        }
        assert_eq!(checked, 60);
    }
}
