//! Full pipeline: 2-factor, compression, expansion, joining, Euler circuit.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::compress::{compression_loop, SplitCheck};
use crate::error::{Error, Result};
use crate::expand::{expand, ComponentStats, ExpansionEvent};
use crate::multigraph::{EdgeId, Multigraph, VertexId};
use crate::oracle::{loose_bound, tight_bound, verify, Verdict};
use crate::subgraph::EvenSubgraph;
use crate::twofactor::find_girth5_two_factor;

/// One traversal of an edge copy; `copy` is 0 or 1 for doubled edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TourStep {
    pub edge: EdgeId,
    pub copy: u8,
    /// The vertex reached by this step.
    pub to: VertexId,
}

/// A closed walk starting and ending at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tour {
    pub start: VertexId,
    pub steps: Vec<TourStep>,
}

impl Tour {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The visited vertices, starting and ending at `start`.
    pub fn vertices(&self) -> Vec<VertexId> {
        std::iter::once(self.start)
            .chain(self.steps.iter().map(|s| s.to))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub tour_length: usize,
    /// `⌊4n/3⌋ − 2` when `n ≥ 6`.
    pub bound: Option<usize>,
    pub loose_bound: usize,
    pub components: Vec<ComponentStats>,
    pub join_edges: usize,
    pub compressions: usize,
    pub split_offs: usize,
    pub splits: Vec<SplitCheck>,
    pub gadgets: BTreeMap<String, usize>,
    pub events: Vec<ExpansionEvent>,
    pub verdict: Verdict,
    pub tour_closed: bool,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict.passed() && self.tour_closed && self.tour_length == self.verdict.edges
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub subgraph: EvenSubgraph,
    pub tour: Tour,
    pub certificate: Certificate,
}

/// Connects vertex-disjoint even parts into one even subgraph by doubling
/// the edges of a spanning tree over the parts (Kruskal, ascending edge id).
pub fn join_components(parts: &[EvenSubgraph], g: &Multigraph) -> Result<EvenSubgraph> {
    let mut owner: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut out = EvenSubgraph::new();
    for (i, p) in parts.iter().enumerate() {
        p.check_host(g)?;
        for comp in p.components(g) {
            for v in comp {
                if owner.insert(v, i).is_some_and(|j| j != i) {
                    return Err(Error::rejected(format!("parts overlap at {v}")));
                }
            }
        }
        out.merge(p);
    }
    if let Some(v) = g.vertices().find(|v| !owner.contains_key(v)) {
        return Err(Error::rejected(format!("parts do not cover {v}")));
    }
    let mut parent: Vec<usize> = (0..parts.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in g.edges() {
        let (a, b) = (
            find(&mut parent, owner[&e.u]),
            find(&mut parent, owner[&e.v]),
        );
        if a != b {
            parent[a] = b;
            out.set(e.id, 2);
        }
    }
    Ok(out)
}

/// Closed walk using every edge copy of `h` exactly once, from the smallest
/// vertex touched by `h`.
pub fn euler_circuit(g: &Multigraph, h: &EvenSubgraph) -> Result<Tour> {
    h.check_host(g)?;
    if !h.is_even(g) {
        return Err(Error::rejected("subgraph has odd-degree vertices"));
    }
    if h.components(g).len() > 1 {
        return Err(Error::rejected("subgraph is disconnected"));
    }
    // copies as (edge, copy index), adjacency by vertex
    let mut copies: Vec<(EdgeId, u8, VertexId, VertexId)> = Vec::new();
    let mut adj: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (e, m) in h.support() {
        let edge = g.edge(e).unwrap();
        for c in 0..m {
            let k = copies.len();
            copies.push((e, c, edge.u, edge.v));
            adj.entry(edge.u).or_default().push(k);
            if edge.u != edge.v {
                adj.entry(edge.v).or_default().push(k);
            }
        }
    }
    let Some(&start) = adj.keys().next() else {
        return Ok(Tour {
            start: g.vertices().next().unwrap_or(VertexId(0)),
            steps: Vec::new(),
        });
    };
    let mut used = vec![false; copies.len()];
    let mut cursor: BTreeMap<VertexId, usize> = BTreeMap::new();
    // stack of (vertex, copy used to arrive)
    let mut stack: Vec<(VertexId, Option<usize>)> = vec![(start, None)];
    let mut circuit: Vec<(VertexId, Option<usize>)> = Vec::new();
    while let Some(&(v, _)) = stack.last() {
        let list = &adj[&v];
        let pos = cursor.entry(v).or_insert(0);
        while *pos < list.len() && used[list[*pos]] {
            *pos += 1;
        }
        if *pos < list.len() {
            let k = list[*pos];
            used[k] = true;
            let (_, _, a, b) = copies[k];
            let w = if a == v { b } else { a };
            stack.push((w, Some(k)));
        } else {
            circuit.push(stack.pop().unwrap());
        }
    }
    circuit.reverse();
    let steps = circuit
        .iter()
        .filter_map(|&(to, k)| {
            k.map(|k| TourStep {
                edge: copies[k].0,
                copy: copies[k].1,
                to,
            })
        })
        .collect();
    Ok(Tour { start, steps })
}

/// The tour is closed, consecutive, and uses each copy of `h` once.
pub fn check_tour(g: &Multigraph, h: &EvenSubgraph, tour: &Tour) -> bool {
    let mut at = tour.start;
    let mut seen = BTreeSet::new();
    for s in &tour.steps {
        let Some(edge) = g.edge(s.edge) else {
            return false;
        };
        if (edge.u != at && edge.v != at)
            || s.copy >= h.mult(s.edge)
            || !seen.insert((s.edge, s.copy))
        {
            return false;
        }
        at = edge.other(at);
        if at != s.to {
            return false;
        }
    }
    at == tour.start && seen.len() == h.edge_count()
}

/// Runs the whole pipeline on a cubic 3-edge-connected graph.
pub fn solve(g: &Multigraph) -> Result<Solution> {
    g.check_cubic_3ec()?;
    let n = g.vertex_count();
    let (subgraph, stats, events, splits, compressions, join_edges) = if n == 4 {
        let x = find_girth5_two_factor(g, None)?;
        let stats = vec![ComponentStats {
            k1: 0,
            k2: 0,
            k3: 4,
            vertices: 4,
            edges: 4,
        }];
        (x, stats, Vec::new(), Vec::new(), 0, 0)
    } else {
        let c = compression_loop(g)?;
        let exp = expand(g, &c.two_factor, &c.ledger)?;
        let joined = join_components(&exp.parts, g)?;
        let join_edges = 2 * (exp.parts.len() - 1);
        (
            joined,
            exp.stats,
            exp.events,
            c.splits,
            c.ledger.compressions().count(),
            join_edges,
        )
    };
    let tour = euler_circuit(g, &subgraph)?;
    let mut gadgets = BTreeMap::new();
    for ev in &events {
        *gadgets.entry(ev.case.name().to_string()).or_insert(0) += 1;
    }
    let certificate = Certificate {
        n,
        tour_length: tour.len(),
        bound: tight_bound(n),
        loose_bound: loose_bound(n),
        components: stats,
        join_edges,
        compressions,
        split_offs: splits.len(),
        splits,
        gadgets,
        events,
        verdict: verify(g, &subgraph),
        tour_closed: check_tour(g, &subgraph, &tour),
    };
    Ok(Solution {
        subgraph,
        tour,
        certificate,
    })
}
