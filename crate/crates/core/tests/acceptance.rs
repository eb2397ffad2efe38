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

//! Acceptance suite. Every criterion prints one PASS/FAIL line; the process
//! fails if any criterion does. Checks are exact, the only tolerances are the
//! wall-clock limits below.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twcolour::choosability::{
    delta_bounded_order, find_choosable_subset, find_lstar_colouring, is_choosable_via_lstar,
    kernel_list_colour, AuxiliaryEdgeOrder, DEFAULT_SEARCH_BUDGET,
};
use twcolour::config::RunConfig;
use twcolour::edge_solver::{
    list_size_threshold, peel_edges, reduce_for_list_edge, solve_list_edge, PeelRecord,
};
use twcolour::graph::{gen_gi, gen_partial_ktree};
use twcolour::oracles::{
    oracle_choosable, oracle_edge_list_colour, oracle_total_colour, validate_edge_colouring,
    validate_total_colouring, OracleCaps,
};
use twcolour::total_solver::solve_total;
use twcolour::treewidth::{extract_witness, root_decomposition};
use twcolour::{
    BipartiteGraph, Colour, Edge, EdgeColouring, Error, Graph, ListAssignment, TotalColouring,
    TreeDecomposition,
};

const LIMIT_WITNESS: Duration = Duration::from_secs(60);
const LIMIT_LIST_EDGE: Duration = Duration::from_secs(180);
const LIMIT_TOTAL: Duration = Duration::from_secs(180);
const LIMIT_FAMILY: Duration = Duration::from_secs(30);
const LIMIT_KERNEL: Duration = Duration::from_secs(120);
const LIMIT_CHOOSABLE: Duration = Duration::from_secs(120);
const LIMIT_COMPLETE_BIPARTITE: Duration = Duration::from_secs(60);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 witness suite", LIMIT_WITNESS, witness_suite),
        (
            "2 list edge colouring, width 2",
            LIMIT_LIST_EDGE,
            list_edge_suite,
        ),
        ("3 total colouring, width 3", LIMIT_TOTAL, total_suite),
        ("4 G_i family regression", LIMIT_FAMILY, gi_family),
        (
            "4 G_3 isomorphic to K_{3,3} - e",
            LIMIT_FAMILY,
            gi3_isomorphism,
        ),
        (
            "5 kernel engine vs oracle",
            LIMIT_KERNEL,
            kernel_equivalence,
        ),
        (
            "6 L* test vs bounded choosability oracle",
            LIMIT_CHOOSABLE,
            lstar_vs_oracle,
        ),
        (
            "7 K_{n,n} with n-colour lists",
            LIMIT_COMPLETE_BIPARTITE,
            complete_bipartite,
        ),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let out = check();
        let took = start.elapsed();
        let ok = out.ok && took <= limit;
        failed += usize::from(!ok);
        println!(
            "criterion {name}: {} ({}; {:.1}s of {}s)",
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion check(s) failed");
        ExitCode::FAILURE
    }
}

// ---- independent checkers -------------------------------------------------

fn edge_colouring_is_proper(g: &Graph, col: &EdgeColouring, lists: &ListAssignment) -> bool {
    let edges: Vec<Edge> = g.edges().collect();
    edges.len() == col.len()
        && edges.iter().all(|&e| {
            col.get(e)
                .is_some_and(|c| lists.get(e).is_some_and(|l| l.contains(&c)))
        })
        && (0..g.n()).all(|v| {
            let cs: Vec<Colour> = g
                .neighbours(v)
                .iter()
                .map(|&y| col.get(Edge::new(v, y)).unwrap())
                .collect();
            cs.iter().collect::<BTreeSet<_>>().len() == cs.len()
        })
}

fn total_colouring_is_proper(g: &Graph, t: &TotalColouring, palette: Colour) -> bool {
    let in_range = |c: Option<Colour>| c.is_some_and(|c| (1..=palette).contains(&c));
    (0..g.n()).all(|v| {
        let cv = t.vertex(v);
        let mut at_v = vec![cv];
        at_v.extend(g.neighbours(v).iter().map(|&y| t.edge(Edge::new(v, y))));
        let distinct = at_v.iter().collect::<BTreeSet<_>>().len() == at_v.len();
        distinct
            && at_v.iter().all(|&c| in_range(c))
            && g.neighbours(v).iter().all(|&y| t.vertex(y) != cv)
    }) && t.edges.len() == g.edge_count()
}

/// Relabels a bipartite graph and its lists onto `0..n`.
fn as_graph(
    h: &BipartiteGraph,
    lists: &ListAssignment,
) -> (Graph, ListAssignment, impl Fn(Edge) -> Edge) {
    let (g, ids) = h.to_graph();
    let pos: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let relabel = move |e: Edge| Edge::new(pos[&e.u], pos[&e.v]);
    let mut out = ListAssignment::new();
    for (e, l) in lists.iter() {
        out.insert(relabel(e), l.iter().copied());
    }
    (g, out, relabel)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn edge_matrix(h: &BipartiteGraph) -> (Vec<usize>, Vec<usize>, BTreeSet<(usize, usize)>) {
    let us: Vec<usize> = h.side_u().iter().copied().collect();
    let ws: Vec<usize> = h.side_w().iter().copied().collect();
    let edges = h
        .edges()
        .into_iter()
        .map(|e| {
            let (u, w) = h.orient(e);
            (
                us.iter().position(|&x| x == u).unwrap(),
                ws.iter().position(|&x| x == w).unwrap(),
            )
        })
        .collect();
    (us, ws, edges)
}

/// Brute-force isomorphism of bipartite graphs, sides allowed to swap.
fn bipartite_isomorphic(a: &BipartiteGraph, b: &BipartiteGraph) -> bool {
    let (au, aw, ae) = edge_matrix(a);
    let try_sides = |b: &BipartiteGraph| {
        let (bu, bw, be) = edge_matrix(b);
        if au.len() != bu.len() || aw.len() != bw.len() || ae.len() != be.len() {
            return false;
        }
        permutations(au.len()).iter().any(|pu| {
            permutations(aw.len())
                .iter()
                .any(|pw| ae.iter().all(|&(u, w)| be.contains(&(pu[u], pw[w]))))
        })
    };
    try_sides(b) || try_sides(&b.swapped())
}

/// One representative per side-preserving isomorphism class.
fn bipartite_classes(nu: usize, nw: usize, max_edges: usize) -> Vec<BipartiteGraph> {
    let pairs: Vec<(usize, usize)> = (0..nu).flat_map(|u| (0..nw).map(move |w| (u, w))).collect();
    let pu = permutations(nu);
    let pw = permutations(nw);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1 << pairs.len()) {
        if mask.count_ones() as usize > max_edges {
            continue;
        }
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let canon = pu
            .iter()
            .flat_map(|a| pw.iter().map(move |b| (a, b)))
            .map(|(a, b)| {
                let mut key: Vec<(usize, usize)> =
                    chosen.iter().map(|&(u, w)| (a[u], b[w])).collect();
                key.sort();
                key
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(
                BipartiteGraph::new(0..nu, nu..nu + nw, chosen.iter().map(|&(u, w)| (u, nu + w)))
                    .unwrap(),
            );
        }
    }
    out
}

fn random_lists(
    h: &BipartiteGraph,
    size: impl Fn(Edge) -> usize,
    universe: usize,
    rng: &mut ChaCha8Rng,
) -> ListAssignment {
    let mut lists = ListAssignment::new();
    for e in h.edges() {
        let picked = rand::seq::index::sample(rng, universe, size(e));
        lists.insert(e, picked.into_iter().map(|c| c as Colour + 1));
    }
    lists
}

// ---- criteria -------------------------------------------------------------

fn witness_suite() -> Outcome {
    let mut passed = 0;
    let mut total = 0;
    let mut seed = 0u64;
    while total < 200 {
        seed += 1;
        let k = 1 + (seed % 4) as usize;
        let n = k + 5 + (seed as usize * 7) % 56;
        let keep = if seed.is_multiple_of(3) { 0.8 } else { 1.0 };
        let delta0 = 2 * k - 1 + (seed / 4 % 4) as usize;
        let (g, td) = gen_partial_ktree(k, n, keep, seed).unwrap();
        let (h, _) = peel_edges(&g, delta0 + 2);
        if h.is_edgeless() {
            continue;
        }
        total += 1;
        assert!(h.edges().all(|e| h.degree_sum(e) >= delta0 + 2));
        let rooted = root_decomposition(&td, 0).unwrap();
        let Ok(w) = extract_witness(&h, &rooted, k, delta0) else {
            continue;
        };
        let stable = w.w.iter().all(|&a| w.w.iter().all(|&b| !h.has_edge(a, b)));
        let nbrs_in_u = w.w.iter().all(|&a| h.neighbours(a).is_subset(&w.u));
        let low_degree = w.w.iter().all(|&a| h.degree(a) <= k);
        let x_complete = w.u.contains(&w.x) && w.w.iter().all(|&a| h.has_edge(w.x, a));
        let sizes = w.u.len() <= k + 1 && w.w.len() + 2 * k >= delta0 + 2;
        passed += usize::from(stable && nbrs_in_u && low_degree && x_complete && sizes);
    }
    outcome(
        passed == 200,
        format!("{passed}/200 witnesses meet every conclusion"),
    )
}

fn list_edge_suite() -> Outcome {
    let k = 2;
    let threshold = list_size_threshold(k);
    let mut instances: Vec<(Graph, TreeDecomposition, ListAssignment)> = Vec::new();
    let mut seed = 0u64;
    while instances.len() < 100 {
        seed += 1;
        let n = 16 + (seed as usize * 13) % 70;
        let (g, td) =
            gen_partial_ktree(k, n, if seed.is_multiple_of(2) { 1.0 } else { 0.9 }, seed).unwrap();
        if g.max_degree() < threshold {
            continue;
        }
        let lists = ListAssignment::uniform_random(&g, threshold.max(g.max_degree()), seed);
        instances.push((g, td, lists));
    }
    let mut solved = 0;
    let mut with_subsets = 0;
    let mut results = Vec::new();
    for (g, td, lists) in &instances {
        let delta = threshold.max(g.max_degree());
        if let Ok(stack) = reduce_for_list_edge(g, td, k, delta) {
            with_subsets += usize::from(
                stack
                    .records
                    .iter()
                    .any(|r| matches!(r, PeelRecord::Subset { .. })),
            );
        }
        let col = solve_list_edge(g, td, lists, k, &RunConfig::default());
        let ok = col.as_ref().is_ok_and(|c| {
            validate_edge_colouring(g, c, Some(lists)).is_empty()
                && edge_colouring_is_proper(g, c, lists)
        });
        solved += usize::from(ok);
        results.push(ok);
    }
    let mut order: Vec<usize> = (0..instances.len()).collect();
    order.sort_by_key(|&i| (instances[i].0.edge_count(), i));
    let mut agree = 0;
    for &i in order.iter().take(10) {
        let (g, _, lists) = &instances[i];
        let oracle = oracle_edge_list_colour(g, lists, g.edge_count()).unwrap();
        let oracle_ok = oracle
            .as_ref()
            .is_some_and(|c| edge_colouring_is_proper(g, c, lists));
        agree += usize::from(oracle_ok == results[i]);
    }
    outcome(
        solved == 100 && agree == 10,
        format!("{solved}/100 solved and validated ({with_subsets} used a choosable subset), oracle agrees on {agree}/10 smallest"),
    )
}

fn total_suite() -> Outcome {
    let k = 3;
    let mut instances = Vec::new();
    let mut seed = 0u64;
    while instances.len() < 100 {
        seed += 1;
        let n = 8 + (seed as usize * 11) % 60;
        let (g, td) =
            gen_partial_ktree(k, n, if seed.is_multiple_of(2) { 1.0 } else { 0.85 }, seed).unwrap();
        if (6..=20).contains(&g.max_degree()) {
            instances.push((g, td));
        }
    }
    let mut solved = 0;
    let mut augmentations = 0;
    let mut internal = 0;
    for (g, td) in &instances {
        let palette = g.max_degree() as Colour + 1;
        match solve_total(g, td, k) {
            Ok(sol) => {
                augmentations += sol.traces.len();
                let ok = sol.colouring.palette == palette
                    && validate_total_colouring(g, &sol.colouring, palette).is_empty()
                    && total_colouring_is_proper(g, &sol.colouring, palette);
                solved += usize::from(ok);
            }
            Err(e) => internal += usize::from(e.exit_code() == 3),
        }
    }
    let mut order: Vec<usize> = (0..instances.len()).collect();
    order.sort_by_key(|&i| (instances[i].0.n() + instances[i].0.edge_count(), i));
    let mut agree = 0;
    for &i in order.iter().take(5) {
        let g = &instances[i].0;
        let palette = g.max_degree() as Colour + 1;
        let oracle = oracle_total_colour(g, palette, g.n() + g.edge_count()).unwrap();
        agree += usize::from(oracle.is_some_and(|t| total_colouring_is_proper(g, &t, palette)));
    }
    outcome(
        solved == 100 && internal == 0 && agree == 5,
        format!("{solved}/100 (Δ+1)-total-colourings validated, {augmentations} augmentations, {internal} internal errors, oracle agrees on {agree}/5 smallest"),
    )
}

fn gi_family() -> Outcome {
    let mut problems = Vec::new();
    for i in 1..=8 {
        let h = gen_gi(i).unwrap();
        let (u, w) = (h.side_u().len(), h.side_w().len());
        if u != i + 1 || 2 * w != u * (u - 1) {
            problems.push(format!("G_{i} sides {u},{w}"));
        }
        if !matches!(find_choosable_subset(&h), Err(Error::Precondition(_))) {
            problems.push(format!("G_{i} not rejected by subset search"));
        }
        if (3..=6).contains(&i) && !is_choosable_via_lstar(&h, DEFAULT_SEARCH_BUDGET).unwrap() {
            problems.push(format!("G_{i} not L*-colourable"));
        }
        if i <= 4 {
            let ws: Vec<usize> = h.side_w().iter().copied().collect();
            for mask in 1u32..(1 << ws.len()) {
                let c: BTreeSet<usize> = ws
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                let sub = h.around(&c);
                let blocked = sub.edges().into_iter().any(|e| {
                    let (v, w) = sub.orient(e);
                    sub.degree(v) < sub.degree(w)
                });
                if !blocked {
                    problems.push(format!("G_{i}: subset {c:?} has no blocking edge"));
                    break;
                }
            }
        }
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            "identities, rejection, L* and blocking edges hold for i=1..8".to_string()
        } else {
            problems.join("; ")
        },
    )
}

fn k33_minus_edge() -> BipartiteGraph {
    let edges = (0..3)
        .flat_map(|u| (3..6).map(move |w| (u, w)))
        .filter(|&e| e != (0, 3));
    BipartiteGraph::new(0..3, 3..6, edges).unwrap()
}

fn gi3_isomorphism() -> Outcome {
    let g3 = gen_gi(3).unwrap();
    let iso = bipartite_isomorphic(&g3, &k33_minus_edge());
    let detail = format!(
        "G_3 has sides {}+{} and {} edges; K_{{3,3}}-e has 3+3 and 8; G_2 isomorphic: {}",
        g3.side_u().len(),
        g3.side_w().len(),
        g3.edge_count(),
        bipartite_isomorphic(&gen_gi(2).unwrap(), &k33_minus_edge())
    );
    outcome(iso, detail)
}

fn kernel_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut classes = 0;
    let mut instances = 0;
    let mut oracle_found = 0;
    let mut kernel_ran = 0;
    let mut kernel_ok = 0;
    for nu in 1..=3 {
        for nw in 1..=3 {
            for h in bipartite_classes(nu, nw, 9) {
                classes += 1;
                let order = match find_lstar_colouring(&h, DEFAULT_SEARCH_BUDGET).unwrap() {
                    Some(c) => AuxiliaryEdgeOrder::new(c),
                    None => delta_bounded_order(&h, DEFAULT_SEARCH_BUDGET).unwrap(),
                };
                for _ in 0..200 {
                    instances += 1;
                    let need = |e: Edge| h.degree(e.u).max(h.degree(e.v));
                    let extra = rng.gen_range(0..=1);
                    let lists = random_lists(&h, |e| need(e) + extra, 6, &mut rng);
                    let (g, lists_g, relabel) = as_graph(&h, &lists);
                    let oracle = oracle_edge_list_colour(&g, &lists_g, 24).unwrap();
                    oracle_found += usize::from(
                        oracle.is_some_and(|c| edge_colouring_is_proper(&g, &c, &lists_g)),
                    );
                    match kernel_list_colour(&h, &lists, &order) {
                        Err(Error::Precondition(_)) => {}
                        Err(_) => kernel_ran += 1,
                        Ok(col) => {
                            kernel_ran += 1;
                            let col_g: EdgeColouring =
                                col.iter().map(|(e, c)| (relabel(e), c)).collect();
                            kernel_ok +=
                                usize::from(edge_colouring_is_proper(&g, &col_g, &lists_g));
                        }
                    }
                }
            }
        }
    }
    outcome(
        oracle_found == instances && kernel_ok == kernel_ran,
        format!(
            "{classes} classes, oracle coloured {oracle_found}/{instances}, kernel coloured {kernel_ok}/{kernel_ran} with its precondition met"
        ),
    )
}

fn lstar_vs_oracle() -> Outcome {
    let caps = OracleCaps::default();
    let universe: Vec<Colour> = (1..=6).collect();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for nu in 1..=4 {
        for nw in 1..=4 {
            for h in bipartite_classes(nu, nw, 4) {
                if h.side_u()
                    .iter()
                    .chain(h.side_w())
                    .any(|&x| h.degree(x) == 0)
                {
                    continue;
                }
                checked += 1;
                let lstar = is_choosable_via_lstar(&h, DEFAULT_SEARCH_BUDGET).unwrap();
                let oracle = oracle_choosable(&h, &universe, &caps).unwrap();
                if lstar != oracle {
                    mismatches.push(format!(
                        "{:?} (L*={lstar}, oracle={oracle}; bounded-universe artifact?)",
                        h.edges()
                    ));
                }
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{checked} graphs, no disagreement")
        } else {
            mismatches.join("; ")
        },
    )
}

fn complete_bipartite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut ok = 0;
    let mut total = 0;
    for n in 1..=4 {
        let edges = (0..n).flat_map(|u| (n..2 * n).map(move |w| (u, w)));
        let h = BipartiteGraph::new(0..n, n..2 * n, edges).unwrap();
        let order = AuxiliaryEdgeOrder::new(
            find_lstar_colouring(&h, DEFAULT_SEARCH_BUDGET)
                .unwrap()
                .expect("K_{n,n} has an L*-colouring"),
        );
        for _ in 0..100 {
            total += 1;
            let lists = random_lists(&h, |_| n, 2 * n, &mut rng);
            if let Ok(col) = kernel_list_colour(&h, &lists, &order) {
                let (g, lists_g, relabel) = as_graph(&h, &lists);
                let col_g: EdgeColouring = col.iter().map(|(e, c)| (relabel(e), c)).collect();
                ok += usize::from(edge_colouring_is_proper(&g, &col_g, &lists_g));
            }
        }
    }
    outcome(
        ok == total,
        format!("{ok}/{total} list assignments coloured"),
    )
}
