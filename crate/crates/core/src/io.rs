//! Text formats: graphs as JSON or edge lists, solutions as JSON, and DOT.
//!
//! Graph JSON is `{"n": 4, "edges": [[0, 1], ...]}`. The edge list has a
//! header line `n m` followed by `m` lines `u v`; blank lines and lines
//! starting with `#` are ignored. Vertices are `0..n`; edge ids follow input
//! order.
//!
//! Solution JSON has the fields `n`, `edges` (`[u, v, multiplicity]` in
//! ascending edge id), `tour` (vertex sequence, closed), and an optional
//! `certificate`, in that order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::assemble::{Certificate, Solution};
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, VertexId};
use crate::subgraph::EvenSubgraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub n: usize,
    pub edges: Vec<[u32; 3]>,
    pub tour: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

fn build(n: usize, pairs: &[(usize, usize)], lines: &[usize]) -> Result<Multigraph> {
    for (k, &(u, v)) in pairs.iter().enumerate() {
        let line = lines[k];
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                msg: format!("vertex index out of range 0..{n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                msg: format!("self-loop at {u}"),
            });
        }
    }
    Multigraph::from_edges(n, pairs)
}

/// Parses either graph format, chosen by the first non-blank character.
pub fn parse_graph(text: &str) -> Result<Multigraph> {
    if text.trim_start().starts_with('{') {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        let pairs: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
        // JSON diagnostics point at the edge index instead of a line
        let lines: Vec<usize> = (0..pairs.len()).collect();
        return build(file.n, &pairs, &lines).map_err(|e| match e {
            Error::Parse { line, msg } => Error::Parse {
                line: 0,
                msg: format!("edge {line}: {msg}"),
            },
            other => other,
        });
    }
    parse_edge_list(text)
}

pub fn parse_edge_list(text: &str) -> Result<Multigraph> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let number = |line: usize, s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line,
            msg: format!("expected a non-negative integer, got `{s}`"),
        })
    };
    let pair = |line: usize, l: &str| -> Result<(usize, usize)> {
        let parts: Vec<&str> = l.split_whitespace().collect();
        match parts[..] {
            [a, b] => Ok((number(line, a)?, number(line, b)?)),
            _ => Err(Error::Parse {
                line,
                msg: format!("expected two integers, got `{l}`"),
            }),
        }
    };
    let (line, header) = rows.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let (n, m) = pair(line, header)?;
    let mut pairs = Vec::with_capacity(m);
    let mut lines = Vec::with_capacity(m);
    for (line, l) in rows {
        if pairs.len() == m {
            return Err(Error::Parse {
                line,
                msg: format!("more than the declared {m} edges"),
            });
        }
        pairs.push(pair(line, l)?);
        lines.push(line);
    }
    if pairs.len() < m {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("declared {m} edges, found {}", pairs.len()),
        });
    }
    build(n, &pairs, &lines)
}

/// Vertex positions `0..n` in ascending id order.
fn positions(g: &Multigraph) -> BTreeMap<VertexId, usize> {
    g.vertices().enumerate().map(|(i, v)| (v, i)).collect()
}

pub fn graph_file(g: &Multigraph) -> GraphFile {
    let pos = positions(g);
    GraphFile {
        n: pos.len(),
        edges: g.edges().map(|e| [pos[&e.u], pos[&e.v]]).collect(),
    }
}

pub fn emit_json(g: &Multigraph) -> String {
    serde_json::to_string(&graph_file(g)).expect("graph file serializes")
}

pub fn emit_edge_list(g: &Multigraph) -> String {
    let f = graph_file(g);
    let mut out = format!("{} {}\n", f.n, f.edges.len());
    for [u, v] in f.edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn solution_file(g: &Multigraph, sol: &Solution, with_certificate: bool) -> SolutionFile {
    let pos = positions(g);
    let edges = sol
        .subgraph
        .support()
        .map(|(e, m)| {
            let edge = g.edge(e).expect("solution edge is in the graph");
            [pos[&edge.u] as u32, pos[&edge.v] as u32, m as u32]
        })
        .collect();
    SolutionFile {
        n: g.vertex_count(),
        edges,
        tour: sol.tour.vertices().iter().map(|v| pos[v] as u32).collect(),
        certificate: with_certificate.then(|| sol.certificate.clone()),
    }
}

pub fn emit_solution(g: &Multigraph, sol: &Solution) -> String {
    serde_json::to_string_pretty(&solution_file(g, sol, true)).expect("solution serializes")
}

pub fn parse_solution(text: &str) -> Result<SolutionFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })
}

/// Maps `[u, v, m]` triples onto edges of `g`. Parallel edges are taken in
/// ascending id order, one per triple.
pub fn subgraph_from_file(g: &Multigraph, file: &SolutionFile) -> Result<EvenSubgraph> {
    if file.n != g.vertex_count() {
        return Err(Error::rejected(format!(
            "solution is for {} vertices, graph has {}",
            file.n,
            g.vertex_count()
        )));
    }
    let ids: Vec<VertexId> = g.vertices().collect();
    let mut taken = BTreeSet::new();
    let mut out = EvenSubgraph::new();
    for (k, &[u, v, m]) in file.edges.iter().enumerate() {
        let (Some(&a), Some(&b)) = (ids.get(u as usize), ids.get(v as usize)) else {
            return Err(Error::rejected(format!(
                "solution edge {k} has an unknown endpoint"
            )));
        };
        let m = u8::try_from(m)
            .map_err(|_| Error::rejected(format!("solution edge {k} multiplicity {m}")))?;
        let found = g.incident(a).iter().copied().filter(|e| {
            let edge = g.edge(*e).unwrap();
            edge.other(a) == b && !taken.contains(e)
        });
        let Some(e) = found.min() else {
            return Err(Error::rejected(format!(
                "solution edge {k} ({u}, {v}) is not in the graph"
            )));
        };
        taken.insert(e);
        out.set(e, m);
    }
    Ok(out)
}

/// DOT rendering. With a subgraph, used edges are bold and doubled edges
/// red; unused edges are dashed grey.
pub fn to_dot(g: &Multigraph, h: Option<&EvenSubgraph>) -> String {
    let pos = positions(g);
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for i in pos.values() {
        let _ = writeln!(out, "  {i};");
    }
    for e in g.edges() {
        let style = match h.map(|h| h.mult(e.id)) {
            None => String::new(),
            Some(0) => " [style=dashed, color=gray]".into(),
            Some(1) => " [penwidth=2]".into(),
            Some(m) => format!(" [penwidth=3, color=red, label=\"x{m}\"]"),
        };
        let _ = writeln!(out, "  {} -- {}{style};", pos[&e.u], pos[&e.v]);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assemble::solve;
    use crate::generate::named;
    use crate::multigraph::EdgeId;

    const K4: &str = "# K4\n4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

    #[test]
    fn edge_list_k4() {
        let g = parse_graph(K4).unwrap();
        assert_eq!(g, named("k4").unwrap());
        g.check_cubic_3ec().unwrap();
    }

    #[test]
    fn k4_minus_edge_fails_cubic() {
        let g = parse_graph("4 5\n0 1\n0 2\n0 3\n1 2\n1 3\n").unwrap();
        assert!(matches!(
            g.check_cubic_3ec(),
            Err(Error::NotCubic { degree: 2, .. })
        ));
    }

    #[test]
    fn json_and_edge_list_round_trip() {
        for name in ["prism", "petersen", "cube"] {
            let g = named(name).unwrap();
            assert_eq!(parse_graph(&emit_json(&g)).unwrap(), g);
            assert_eq!(parse_graph(&emit_edge_list(&g)).unwrap(), g);
        }
    }

    #[test]
    fn diagnostics_carry_lines() {
        match parse_graph("2 1\n0 5\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_graph("3 2\n0 1\n1 x\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_graph("3 1\n1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 2\n0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_graph("{\"n\": 2, \"edges\": [[0, 2]]}").is_err());
        assert!(parse_graph("{\"n\": 2,").is_err());
    }

    #[test]
    fn solution_round_trip() {
        let g = named("petersen").unwrap();
        let sol = solve(&g).unwrap();
        let text = emit_solution(&g, &sol);
        let file = parse_solution(&text).unwrap();
        assert_eq!(subgraph_from_file(&g, &file).unwrap(), sol.subgraph);
        assert_eq!(file.tour.first(), file.tour.last());
        // field order is fixed
        let n = text.find("\"n\"").unwrap();
        let e = text.find("\"edges\"").unwrap();
        let t = text.find("\"tour\"").unwrap();
        let c = text.find("\"certificate\"").unwrap();
        assert!(n < e && e < t && t < c);
    }

    #[test]
    fn dot_styles_doubled_edges() {
        let g = named("prism").unwrap();
        let mut h = EvenSubgraph::from_edges([0, 1, 2, 3, 4, 5].map(EdgeId));
        h.set(EdgeId(6), 2);
        let dot = to_dot(&g, Some(&h));
        assert!(dot.contains("0 -- 3 [penwidth=3, color=red"));
        assert!(dot.contains("1 -- 4 [style=dashed"));
    }
}
