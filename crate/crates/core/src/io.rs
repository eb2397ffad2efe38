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

//! Text formats. Files use 1-based vertex ids; this module is the only place
//! that shifts them.
//!
//! Every format is line oriented. Lines starting with `c` are comments,
//! trailing whitespace is ignored and anything else that does not fit the
//! grammar is rejected with its line number.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::colouring::{Colour, EdgeColouring, ListAssignment, TotalColouring};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Edge, Graph};
use crate::treewidth::{TdViolation, TreeDecomposition};

struct Line<'a> {
    no: usize,
    tokens: Vec<&'a str>,
}

/// Content lines with their numbers. Comments are dropped; blank lines are
/// only allowed at the end of the text.
fn content_lines(text: &str) -> Result<(Vec<Line<'_>>, usize)> {
    let mut out = Vec::new();
    let mut blank_at = None;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        last = no;
        let line = raw.trim_end();
        if line.is_empty() {
            blank_at.get_or_insert(no);
            continue;
        }
        if let Some(b) = blank_at {
            return Err(Error::parse(b, "blank line"));
        }
        if line.starts_with(char::is_whitespace) {
            return Err(Error::parse(no, "leading whitespace"));
        }
        if line == "c" || line.starts_with("c ") {
            continue;
        }
        out.push(Line {
            no,
            tokens: line.split_ascii_whitespace().collect(),
        });
    }
    Ok((out, last + 1))
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    if tok.starts_with('+') {
        return Err(Error::parse(line, format!("bad {what} {tok:?}")));
    }
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} {tok:?}")))
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<usize> {
    let v: usize = number(line, tok, "vertex id")?;
    if v == 0 || v > n {
        return Err(Error::parse(
            line,
            format!("vertex {v} out of range 1..{n}"),
        ));
    }
    Ok(v - 1)
}

fn colour(line: usize, tok: &str) -> Result<Colour> {
    let c: Colour = number(line, tok, "colour")?;
    if c == 0 {
        return Err(Error::parse(line, "colours must be positive"));
    }
    Ok(c)
}

fn header<'a>(
    lines: &'a [Line<'_>],
    eof: usize,
    expect: &[&str],
    args: usize,
) -> Result<(&'a Line<'a>, Vec<usize>)> {
    let h = lines
        .first()
        .ok_or_else(|| Error::parse(eof, format!("missing `{}` header", expect.join(" "))))?;
    if h.tokens.len() != expect.len() + args || h.tokens[..expect.len()] != *expect {
        return Err(Error::parse(
            h.no,
            format!("expected header `{}` with {args} numbers", expect.join(" ")),
        ));
    }
    let nums = h.tokens[expect.len()..]
        .iter()
        .map(|t| number(h.no, t, "header field"))
        .collect::<Result<_>>()?;
    Ok((h, nums))
}

fn edge_line(line: &Line<'_>, n: usize) -> Result<(usize, usize)> {
    if line.tokens.len() != 2 {
        return Err(Error::parse(line.no, "expected `<u> <v>`"));
    }
    Ok((
        vertex(line.no, line.tokens[0], n)?,
        vertex(line.no, line.tokens[1], n)?,
    ))
}

/// Parses `p tw <n> <m>` followed by `m` edge lines.
pub fn parse_gr(text: &str) -> Result<Graph> {
    let (lines, eof) = content_lines(text)?;
    let (h, nums) = header(&lines, eof, &["p", "tw"], 2)?;
    let (n, m) = (nums[0], nums[1]);
    let body = &lines[1..];
    if body.len() != m {
        return Err(Error::parse(
            h.no,
            format!("header declares {m} edges, found {}", body.len()),
        ));
    }
    let mut g = Graph::empty(n);
    for line in body {
        let (u, v) = edge_line(line, n)?;
        g.add_edge(u, v)
            .map_err(|e| Error::parse(line.no, e.to_string()))?;
    }
    Ok(g)
}

pub fn write_gr(g: &Graph) -> String {
    let mut s = format!("p tw {} {}\n", g.n(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(s, "{} {}", e.u + 1, e.v + 1);
    }
    s
}

/// Parses `s td <bags> <width+1> <n>`, bag lines `b <i> <v...>` and tree
/// edges `<i> <j>`.
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let (lines, eof) = content_lines(text)?;
    let (h, nums) = header(&lines, eof, &["s", "td"], 3)?;
    let (nb, max_bag, n) = (nums[0], nums[1], nums[2]);
    let mut bags: Vec<Option<BTreeSet<usize>>> = vec![None; nb];
    let mut tree_edges = Vec::new();
    for line in &lines[1..] {
        if line.tokens[0] == "b" {
            let i: usize = line
                .tokens
                .get(1)
                .map(|t| number(line.no, t, "bag id"))
                .transpose()?
                .ok_or_else(|| Error::parse(line.no, "bag line without id"))?;
            if i == 0 || i > nb {
                return Err(Error::parse(
                    line.no,
                    format!("bag {i} out of range 1..{nb}"),
                ));
            }
            let mut bag = BTreeSet::new();
            for t in &line.tokens[2..] {
                if !bag.insert(vertex(line.no, t, n)?) {
                    return Err(Error::parse(
                        line.no,
                        format!("vertex {t} repeated in bag {i}"),
                    ));
                }
            }
            if bag.len() > max_bag {
                return Err(Error::parse(
                    line.no,
                    format!(
                        "bag {i} has {} vertices, declared at most {max_bag}",
                        bag.len()
                    ),
                ));
            }
            if bags[i - 1].replace(bag).is_some() {
                return Err(Error::parse(line.no, format!("bag {i} defined twice")));
            }
        } else {
            let (a, b) = edge_line(line, nb)
                .map_err(|_| Error::parse(line.no, "expected `b ...` or a tree edge `<i> <j>`"))?;
            tree_edges.push((a, b));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::parse(eof, format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let td = TreeDecomposition::new(bags, tree_edges);
    if let Some(v) = td
        .structural_violations()
        .into_iter()
        .find(|v| matches!(v, TdViolation::NotATree(_) | TdViolation::NoNodes))
    {
        if nb > 0 || n > 0 {
            return Err(Error::parse(h.no, format!("not a tree: {v}")));
        }
    }
    Ok(td)
}

/// `n` is the vertex count of the decomposed graph.
pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let max_bag = td.bags().iter().map(BTreeSet::len).max().unwrap_or(0);
    let mut s = format!("s td {} {max_bag} {n}\n", td.node_count());
    for (i, bag) in td.bags().iter().enumerate() {
        let _ = write!(s, "b {}", i + 1);
        for v in bag {
            let _ = write!(s, " {}", v + 1);
        }
        s.push('\n');
    }
    for &(a, b) in td.tree_edges() {
        let _ = writeln!(s, "{} {}", a + 1, b + 1);
    }
    s
}

/// Parses one `u v : c1 c2 ...` line per edge of `g`.
pub fn parse_lists(text: &str, g: &Graph) -> Result<ListAssignment> {
    let (lines, eof) = content_lines(text)?;
    let mut lists = ListAssignment::new();
    for line in &lines {
        if line.tokens.len() < 3 || line.tokens[2] != ":" {
            return Err(Error::parse(line.no, "expected `<u> <v> : <colours>`"));
        }
        let u = vertex(line.no, line.tokens[0], g.n())?;
        let v = vertex(line.no, line.tokens[1], g.n())?;
        let e = Edge::new(u, v);
        if !g.contains_edge(e) {
            return Err(Error::parse(
                line.no,
                format!("unknown edge {} {}", u + 1, v + 1),
            ));
        }
        if lists.get(e).is_some() {
            return Err(Error::parse(
                line.no,
                format!("duplicate list for edge {} {}", e.u + 1, e.v + 1),
            ));
        }
        let mut list = BTreeSet::new();
        for t in &line.tokens[3..] {
            if !list.insert(colour(line.no, t)?) {
                return Err(Error::parse(line.no, format!("colour {t} repeated")));
            }
        }
        if list.is_empty() {
            return Err(Error::parse(line.no, "empty list"));
        }
        lists.insert(e, list);
    }
    if let Some(e) = g.edges().find(|&e| lists.get(e).is_none()) {
        return Err(Error::parse(
            eof,
            format!("missing list for edge {} {}", e.u + 1, e.v + 1),
        ));
    }
    Ok(lists)
}

pub fn write_lists(lists: &ListAssignment) -> String {
    let mut s = String::new();
    for (e, list) in lists.iter() {
        let _ = write!(s, "{} {} :", e.u + 1, e.v + 1);
        for c in list {
            let _ = write!(s, " {c}");
        }
        s.push('\n');
    }
    s
}

/// Parses `p bip <nU> <nW> <m>` and `m` lines `<u> <w>` with side-local
/// ids. Internally U is `0..nU` and W follows it.
pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph> {
    let (lines, eof) = content_lines(text)?;
    let (h, nums) = header(&lines, eof, &["p", "bip"], 3)?;
    let (nu, nw, m) = (nums[0], nums[1], nums[2]);
    let body = &lines[1..];
    if body.len() != m {
        return Err(Error::parse(
            h.no,
            format!("header declares {m} edges, found {}", body.len()),
        ));
    }
    let mut b = BipartiteGraph::new(0..nu, nu..nu + nw, [])
        .map_err(|e| Error::parse(h.no, e.to_string()))?;
    for line in body {
        if line.tokens.len() != 2 {
            return Err(Error::parse(line.no, "expected `<u> <w>`"));
        }
        let u = vertex(line.no, line.tokens[0], nu)?;
        let w = vertex(line.no, line.tokens[1], nw)?;
        b.add_edge(u, nu + w)
            .map_err(|e| Error::parse(line.no, e.to_string()))?;
    }
    Ok(b)
}

/// Sides are renumbered in increasing id order.
pub fn write_bipartite(h: &BipartiteGraph) -> String {
    let pos =
        |side: &BTreeSet<usize>, x: usize| side.iter().position(|&y| y == x).expect("on side") + 1;
    let mut s = format!(
        "p bip {} {} {}\n",
        h.side_u().len(),
        h.side_w().len(),
        h.edge_count()
    );
    for e in h.edges() {
        let (u, w) = h.orient(e);
        let _ = writeln!(s, "{} {}", pos(h.side_u(), u), pos(h.side_w(), w));
    }
    s
}

pub fn write_edge_colouring(col: &EdgeColouring) -> String {
    let mut s = String::new();
    for (e, c) in col.iter() {
        let _ = writeln!(s, "e {} {} {c}", e.u + 1, e.v + 1);
    }
    s
}

pub fn write_total_colouring(t: &TotalColouring) -> String {
    let mut s = String::new();
    for (v, c) in t.vertices.iter().enumerate() {
        if let Some(c) = c {
            let _ = writeln!(s, "v {} {c}", v + 1);
        }
    }
    s + &write_edge_colouring(&t.edges)
}

enum Entry {
    V(usize, Colour),
    E(Edge, Colour),
}

fn colouring_entries(text: &str, n: usize, allow_vertices: bool) -> Result<Vec<Entry>> {
    let (lines, _) = content_lines(text)?;
    let mut seen_v = BTreeSet::new();
    let mut seen_e = BTreeSet::new();
    let mut out = Vec::new();
    for line in &lines {
        match (line.tokens[0], line.tokens.len()) {
            ("v", 3) if allow_vertices => {
                let v = vertex(line.no, line.tokens[1], n)?;
                if !seen_v.insert(v) {
                    return Err(Error::parse(
                        line.no,
                        format!("vertex {} coloured twice", v + 1),
                    ));
                }
                out.push(Entry::V(v, colour(line.no, line.tokens[2])?));
            }
            ("e", 4) => {
                let u = vertex(line.no, line.tokens[1], n)?;
                let v = vertex(line.no, line.tokens[2], n)?;
                if u == v {
                    return Err(Error::parse(line.no, "loop"));
                }
                let e = Edge::new(u, v);
                if !seen_e.insert(e) {
                    return Err(Error::parse(
                        line.no,
                        format!("edge {} {} coloured twice", e.u + 1, e.v + 1),
                    ));
                }
                out.push(Entry::E(e, colour(line.no, line.tokens[3])?));
            }
            _ if allow_vertices => {
                return Err(Error::parse(
                    line.no,
                    "expected `v <u> <c>` or `e <u> <v> <c>`",
                ))
            }
            _ => return Err(Error::parse(line.no, "expected `e <u> <v> <c>`")),
        }
    }
    Ok(out)
}

/// Edges outside `g` are kept so that validation can report them.
pub fn parse_edge_colouring(text: &str, g: &Graph) -> Result<EdgeColouring> {
    Ok(colouring_entries(text, g.n(), false)?
        .into_iter()
        .filter_map(|en| match en {
            Entry::E(e, c) => Some((e, c)),
            Entry::V(..) => None,
        })
        .collect())
}

pub fn parse_total_colouring(text: &str, g: &Graph, palette: Colour) -> Result<TotalColouring> {
    let mut t = TotalColouring::new(g.n(), palette);
    for en in colouring_entries(text, g.n(), true)? {
        match en {
            Entry::V(v, c) => t.vertices[v] = Some(c),
            Entry::E(e, c) => t.edges.set(e, c),
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_line(r: Result<impl std::fmt::Debug>) -> (usize, String) {
        match r {
            Err(Error::Parse { line, msg }) => (line, msg),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn gr_path() {
        let g = parse_gr("p tw 3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![Edge::new(0, 1), Edge::new(1, 2)]
        );
        assert_eq!(write_gr(&g), "p tw 3 2\n1 2\n2 3\n");
    }

    #[test]
    fn gr_comments_and_trailing_space() {
        let g = parse_gr("c hello\np tw 2 1  \nc mid\n2 1\t\n\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn gr_errors() {
        let (line, msg) = err_line(parse_gr("p tw 2 1\n1 1\n"));
        assert_eq!(line, 2);
        assert!(msg.contains("loop"), "{msg}");
        assert_eq!(err_line(parse_gr("p tw 2 2\n1 2\n2 1\n")).0, 3);
        assert_eq!(err_line(parse_gr("p tw 2 1\n1 3\n")).0, 2);
        assert_eq!(err_line(parse_gr("p tw 3 2\n1 2\n")).0, 1);
        assert_eq!(err_line(parse_gr("p td 3 0\n")).0, 1);
        assert_eq!(err_line(parse_gr("p tw 3 1\n1 2 3\n")).0, 2);
        assert_eq!(err_line(parse_gr("p tw 3 1\n\n1 2\n")).0, 2);
        assert_eq!(err_line(parse_gr(" p tw 3 0\n")).0, 1);
        assert_eq!(err_line(parse_gr("p tw 3 1\n+1 2\n")).0, 2);
        assert!(parse_gr("").is_err());
    }

    #[test]
    fn td_path() {
        let td = parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n").unwrap();
        assert_eq!(td.width(), 1);
        let g = parse_gr("p tw 3 2\n1 2\n2 3\n").unwrap();
        assert!(crate::treewidth::validate_td(&g, &td).is_empty());
        assert_eq!(write_td(&td, 3), "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
    }

    #[test]
    fn td_errors() {
        assert_eq!(err_line(parse_td("s td 1 2 3\nb 1 1 2 3\n")).0, 2);
        let (_, msg) = err_line(parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 3\n"));
        assert!(msg.contains("not a tree"), "{msg}");
        let (_, msg) = err_line(parse_td("s td 3 2 3\nb 1 1\nb 2 2\nb 3 3\n1 2\n2 1\n"));
        assert!(msg.contains("not a tree"), "{msg}");
        assert_eq!(err_line(parse_td("s td 2 2 3\nb 1 1 2\n")).0, 3);
        assert_eq!(err_line(parse_td("s td 1 2 3\nb 1 1\nb 1 2\n")).0, 3);
        assert_eq!(err_line(parse_td("s td 1 2 3\nx 1\n")).0, 2);
    }

    #[test]
    fn lists() {
        let g = Graph::complete(2);
        let l = parse_lists("1 2 : 3 5 7\n", &g).unwrap();
        assert_eq!(l.get(Edge::new(0, 1)), Some(&BTreeSet::from([3, 5, 7])));
        assert_eq!(write_lists(&l), "1 2 : 3 5 7\n");

        let p3 = parse_gr("p tw 3 2\n1 2\n2 3\n").unwrap();
        let (_, msg) = err_line(parse_lists("1 2 : 1\n", &p3));
        assert!(msg.contains("2 3"), "{msg}");
        assert_eq!(err_line(parse_lists("1 2 : 1\n2 1 : 2\n", &g)).0, 2);
        assert_eq!(err_line(parse_lists("1 2 :\n", &g)).0, 1);
        assert_eq!(err_line(parse_lists("1 3 : 1\n", &p3)).0, 1);
        assert_eq!(err_line(parse_lists("1 2 : 0\n", &g)).0, 1);
        assert_eq!(err_line(parse_lists("1 2 3\n", &g)).0, 1);
    }

    #[test]
    fn bipartite_round_trip() {
        let h = crate::graph::gen_gi(2).unwrap();
        let text = write_bipartite(&h);
        assert!(text.starts_with("p bip 3 3 8\n"));
        let back = parse_bipartite(&text).unwrap();
        assert_eq!(write_bipartite(&back), text);
        assert_eq!(err_line(parse_bipartite("p bip 1 1 1\n1 2\n")).0, 2);
        assert_eq!(err_line(parse_bipartite("p bip 1 1 2\n1 1\n1 1\n")).0, 3);
    }

    #[test]
    fn colouring_round_trip() {
        let g = Graph::complete(3);
        let mut t = TotalColouring::new(3, 5);
        t.vertices = vec![Some(1), Some(2), Some(3)];
        t.edges.set(Edge::new(0, 1), 3);
        t.edges.set(Edge::new(0, 2), 2);
        t.edges.set(Edge::new(1, 2), 1);
        let text = write_total_colouring(&t);
        assert_eq!(text, "v 1 1\nv 2 2\nv 3 3\ne 1 2 3\ne 1 3 2\ne 2 3 1\n");
        assert_eq!(parse_total_colouring(&text, &g, 5).unwrap(), t);
        let edges = parse_edge_colouring("e 2 1 4\n", &g).unwrap();
        assert_eq!(edges.get(Edge::new(0, 1)), Some(4));
        assert_eq!(err_line(parse_edge_colouring("v 1 1\n", &g)).0, 1);
        assert_eq!(
            err_line(parse_total_colouring("e 1 2 1\ne 2 1 2\n", &g, 5)).0,
            2
        );
        assert_eq!(
            err_line(parse_total_colouring("v 1 1\nv 1 2\n", &g, 5)).0,
            2
        );
    }
}
