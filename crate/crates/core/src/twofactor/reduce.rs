//! 4-cycle reduction.
//!
//! A 4-cycle `a b c d` whose outside neighbours `a' b' c' d'` are distinct is
//! replaced by an edge `xy`: the edges to `a'` and `c'` are moved to `x`, the
//! edges to `b'` and `d'` to `y`. All other edge ids survive unchanged. In a
//! cubic 3-edge-connected graph on at least 8 vertices without essential
//! 3-cuts, the result is again cubic and 3-edge-connected.
//!
//! A 2-factor of the reduced graph lifts back by routing through the 4-cycle.
//! The lift only lengthens or merges cycles, and keeps exactly the same port
//! edges.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::RequiredEdges;
use crate::error::{Error, Result};
use crate::multigraph::{find_essential_3cut, EdgeId, Multigraph, VertexId};
use crate::subgraph::EvenSubgraph;

/// One reduction step. Indices 0..4 stand for `a b c d`; `cycle_edges` are
/// `ab bc cd da`, and `ports[i]` is the edge from cycle vertex `i` outwards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourCycleReduction {
    pub cycle: [VertexId; 4],
    pub cycle_edges: [EdgeId; 4],
    pub ports: [EdgeId; 4],
    pub x: VertexId,
    pub y: VertexId,
    pub xy: EdgeId,
}

/// Outcome of [`eliminate_4cycles`]: the reduced graph, the translated
/// required edges, and the steps needed to undo it.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub graph: Multigraph,
    pub req: Option<RequiredEdges>,
    pub steps: Vec<FourCycleReduction>,
}

impl Reduced {
    /// Maps a 2-factor of the reduced graph back to the original graph.
    pub fn lift(&self, x: &EvenSubgraph) -> Result<EvenSubgraph> {
        Ok(self.unwind(x)?.1)
    }

    /// Rebuilds the original graph.
    pub fn restore(&self) -> Result<Multigraph> {
        let mut g = self.graph.clone();
        for step in self.steps.iter().rev() {
            undo_graph(&mut g, step)?;
        }
        Ok(g)
    }

    fn unwind(&self, x: &EvenSubgraph) -> Result<(Multigraph, EvenSubgraph)> {
        let mut g = self.graph.clone();
        let mut x = x.clone();
        for step in self.steps.iter().rev() {
            x = lift_step(&g, &x, step)?;
            undo_graph(&mut g, step)?;
        }
        Ok((g, x))
    }
}

/// Reduces 4-cycles until none qualifies, an essential 3-cut appears, or
/// fewer than 8 vertices remain.
///
/// Cycles with no required edge go first, then cycles containing both; ties
/// break on the smallest sorted edge-id tuple. A cycle holding exactly one
/// required edge runs through the third edge at the hub and is kept.
///
/// `g` must be cubic, 3-edge-connected, and free of essential 3-cuts on
/// entry. On exit every remaining 4-cycle passes through that third edge,
/// unless the loop stopped early.
pub fn eliminate_4cycles(g: &Multigraph, req: Option<RequiredEdges>) -> Result<Reduced> {
    g.check_cubic_3ec()?;
    if let Some(r) = req {
        RequiredEdges::new(g, r.hub, r.first, r.second)?;
    }
    eliminate(g, req, true)
}

pub(super) fn eliminate(
    g: &Multigraph,
    req: Option<RequiredEdges>,
    check_first: bool,
) -> Result<Reduced> {
    let mut h = g.clone();
    let mut req = req;
    let mut steps = Vec::new();
    loop {
        if h.vertex_count() < 8 {
            break;
        }
        if (check_first || !steps.is_empty()) && find_essential_3cut(&h)?.is_some() {
            if steps.is_empty() {
                return Err(Error::rejected("graph has an essential 3-edge cut"));
            }
            break;
        }
        let Some((vs, es)) = pick_cycle(&h, req) else {
            break;
        };
        let (next, next_req, step) = reduce_one(&h, vs, es, req)?;
        h = next;
        req = next_req;
        steps.push(step);
    }
    Ok(Reduced {
        graph: h,
        req,
        steps,
    })
}

/// Every 4-cycle once, as cyclically ordered vertices and edges
/// (`edges[i]` joins `vertices[i]` and `vertices[i+1]`).
fn four_cycles(g: &Multigraph) -> Vec<([VertexId; 4], [EdgeId; 4])> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in g.vertices() {
        let inc = g.incident(a);
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                let (e1, e2) = (inc[i], inc[j]);
                let b = g.edge(e1).unwrap().other(a);
                let d = g.edge(e2).unwrap().other(a);
                if b == a || d == a || b == d {
                    continue;
                }
                for &f in g.incident(b) {
                    if f == e1 {
                        continue;
                    }
                    let c = g.edge(f).unwrap().other(b);
                    if c == a || c == b || c == d {
                        continue;
                    }
                    for &h in g.incident(d) {
                        if h == e2 || g.edge(h).unwrap().other(d) != c {
                            continue;
                        }
                        let mut key = [e1, f, h, e2];
                        key.sort();
                        if seen.insert(key) {
                            out.push(([a, b, c, d], [e1, f, h, e2]));
                        }
                    }
                }
            }
        }
    }
    out
}

type FourCycle = ([VertexId; 4], [EdgeId; 4]);

fn pick_cycle(g: &Multigraph, req: Option<RequiredEdges>) -> Option<FourCycle> {
    let mut best: Option<((u8, [EdgeId; 4]), FourCycle)> = None;
    for (vs, es) in four_cycles(g) {
        let hits = req.map_or(0, |r| es.iter().filter(|&&e| r.contains(e)).count());
        let rank = match hits {
            0 => 0,
            2 => 1,
            _ => continue,
        };
        let mut key = es;
        key.sort();
        if best.as_ref().is_none_or(|(k, _)| (rank, key) < *k) {
            best = Some(((rank, key), (vs, es)));
        }
    }
    let (_, (vs, es)) = best?;
    // label so that `a` is the hub (or the smallest vertex) and `ab` is the
    // first required edge (or the smaller cycle edge at `a`)
    let (start, first) = match req {
        Some(r) if es.contains(&r.first) && es.contains(&r.second) => (r.hub, r.first),
        _ => {
            let a = *vs.iter().min().unwrap();
            let s = vs.iter().position(|&v| v == a).unwrap();
            (a, es[s].min(es[(s + 3) % 4]))
        }
    };
    let s = vs.iter().position(|&v| v == start).unwrap();
    Some(if es[s] == first {
        (
            [0, 1, 2, 3].map(|k| vs[(s + k) % 4]),
            [0, 1, 2, 3].map(|k| es[(s + k) % 4]),
        )
    } else {
        (
            [0, 3, 2, 1].map(|k| vs[(s + k) % 4]),
            [3, 2, 1, 0].map(|k| es[(s + k) % 4]),
        )
    })
}

fn reduce_one(
    g: &Multigraph,
    cycle: [VertexId; 4],
    cycle_edges: [EdgeId; 4],
    req: Option<RequiredEdges>,
) -> Result<(Multigraph, Option<RequiredEdges>, FourCycleReduction)> {
    let mut ports = [EdgeId(0); 4];
    let mut far = [VertexId(0); 4];
    for i in 0..4 {
        let out: Vec<EdgeId> = g
            .incident(cycle[i])
            .iter()
            .copied()
            .filter(|e| !cycle_edges.contains(e))
            .collect();
        let [p] = out[..] else {
            return Err(Error::internal(format!(
                "4-cycle vertex {} has a chord",
                cycle[i]
            )));
        };
        ports[i] = p;
        far[i] = g.edge(p).unwrap().other(cycle[i]);
    }
    let distinct: BTreeSet<_> = far.iter().chain(cycle.iter()).collect();
    if distinct.len() != 8 {
        return Err(Error::internal("4-cycle ports are not distinct"));
    }

    let mut h = g.clone();
    let x = h.add_vertex();
    let y = h.add_vertex();
    for (i, target) in [x, y, x, y].into_iter().enumerate() {
        h.reattach(ports[i], cycle[i], target)?;
    }
    for e in cycle_edges {
        h.remove_edge(e)?;
    }
    for v in cycle {
        h.remove_vertex(v)?;
    }
    let xy = h.add_edge(x, y)?;

    let next_req = match req {
        Some(r) if cycle_edges.contains(&r.first) && cycle_edges.contains(&r.second) => {
            debug_assert_eq!(r.hub, cycle[0]);
            Some(RequiredEdges::new(&h, x, ports[2], xy)?)
        }
        other => other,
    };
    let step = FourCycleReduction {
        cycle,
        cycle_edges,
        ports,
        x,
        y,
        xy,
    };
    Ok((h, next_req, step))
}

fn undo_graph(h: &mut Multigraph, step: &FourCycleReduction) -> Result<()> {
    h.remove_edge(step.xy)?;
    for v in step.cycle {
        h.insert_vertex(v)?;
    }
    for (i, from) in [step.x, step.y, step.x, step.y].into_iter().enumerate() {
        h.reattach(step.ports[i], from, step.cycle[i])?;
    }
    h.remove_vertex(step.x)?;
    h.remove_vertex(step.y)?;
    for i in 0..4 {
        h.insert_edge(step.cycle_edges[i], step.cycle[i], step.cycle[(i + 1) % 4])?;
    }
    Ok(())
}

/// Lifts a 2-factor of the reduced graph `h` through one step.
fn lift_step(h: &Multigraph, x: &EvenSubgraph, step: &FourCycleReduction) -> Result<EvenSubgraph> {
    let used = step.ports.map(|p| x.contains(p));
    // path edges, as indices into `cycle_edges`
    let inner: [usize; 3];
    let pair: [usize; 2];
    let chosen: &[usize] = if x.contains(step.xy) {
        let p = if used[0] { 0 } else { 2 };
        let q = if used[1] { 1 } else { 3 };
        inner = match (p, q) {
            (0, 1) => [3, 2, 1],
            (0, 3) => [0, 1, 2],
            (2, 1) => [2, 3, 0],
            _ => [1, 0, 3],
        };
        &inner
    } else {
        if !used.iter().all(|&u| u) {
            return Err(Error::rejected(
                "subgraph is not a 2-factor at the reduced edge",
            ));
        }
        pair = if partner_of_a(h, x, step)? == 1 {
            [3, 1]
        } else {
            [0, 2]
        };
        &pair
    };
    let mut out = x.clone();
    out.set(step.xy, 0);
    for &i in chosen {
        out.set(step.cycle_edges[i], 1);
    }
    Ok(out)
}

/// Follows the 2-factor from the outer end of port `a` (away from `x`) to
/// the next port edge; returns that port's index.
fn partner_of_a(h: &Multigraph, x: &EvenSubgraph, step: &FourCycleReduction) -> Result<usize> {
    let mut at: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    for e in x.edge_ids() {
        let edge = h.edge(e).ok_or(Error::UnknownEdge(e))?;
        at.entry(edge.u).or_default().push(e);
        at.entry(edge.v).or_default().push(e);
    }
    let mut prev = step.ports[0];
    let mut v = h.edge(prev).ok_or(Error::UnknownEdge(prev))?.other(step.x);
    for _ in 0..=h.edge_count() {
        let pair = at
            .get(&v)
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::rejected(format!("subgraph is not a 2-factor at {v}")))?;
        let next = if pair[0] == prev { pair[1] } else { pair[0] };
        if let Some(i) = step.ports.iter().position(|&p| p == next) {
            return Ok(i);
        }
        prev = next;
        v = h.edge(next).unwrap().other(v);
    }
    Err(Error::internal("2-factor walk did not return to a port"))
}
