use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Dense, EdgeId, Multigraph, VertexId};
use crate::error::{Error, Result};

/// An edge cut given by one side `S`; `crossing` is exactly δ(S).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSpec {
    pub side: BTreeSet<VertexId>,
    pub crossing: BTreeSet<EdgeId>,
}

impl CutSpec {
    pub fn weight(&self) -> usize {
        self.crossing.len()
    }

    /// Both sides induce at least one edge.
    pub fn is_essential(&self, g: &Multigraph) -> bool {
        let inside = |e: super::Edge, want: bool| {
            !self.crossing.contains(&e.id) && self.side.contains(&e.u) == want
        };
        g.edges().any(|e| inside(e, true)) && g.edges().any(|e| inside(e, false))
    }

    /// The vertices not in `side`.
    pub fn complement(&self, g: &Multigraph) -> BTreeSet<VertexId> {
        g.vertices().filter(|v| !self.side.contains(v)).collect()
    }
}

/// Builds δ(side). Loops never cross.
pub fn cut_of(g: &Multigraph, side: &BTreeSet<VertexId>) -> CutSpec {
    let crossing = g
        .edges()
        .filter(|e| side.contains(&e.u) != side.contains(&e.v))
        .map(|e| e.id)
        .collect();
    CutSpec {
        side: side.clone(),
        crossing,
    }
}

/// Unit-capacity max flow on the undirected dense graph.
struct Flow<'a> {
    d: &'a Dense,
    /// Net flow along each edge, positive in the `ends.0 -> ends.1` direction.
    flow: Vec<i8>,
}

impl<'a> Flow<'a> {
    fn new(d: &'a Dense) -> Self {
        Flow {
            d,
            flow: vec![0; d.ends.len()],
        }
    }

    fn residual(&self, from: usize, e: usize) -> bool {
        if self.d.ends[e].0 == from {
            self.flow[e] < 1
        } else {
            self.flow[e] > -1
        }
    }

    fn push(&mut self, from: usize, e: usize) {
        if self.d.ends[e].0 == from {
            self.flow[e] += 1;
        } else {
            self.flow[e] -= 1;
        }
    }

    /// Augments from `sources` to `sink` until `limit` units flow or no
    /// augmenting path remains. Returns the flow value and, when the flow is
    /// maximum, the set reachable from the sources in the residual graph.
    fn run(&mut self, sources: &[usize], sink: usize, limit: usize) -> (usize, Option<Vec<bool>>) {
        let n = self.d.len();
        let mut value = 0;
        loop {
            if value >= limit {
                return (value, None);
            }
            let mut pred: Vec<Option<(usize, usize)>> = vec![None; n];
            let mut seen = vec![false; n];
            let mut queue = VecDeque::new();
            for &s in sources {
                seen[s] = true;
                queue.push_back(s);
            }
            let mut found = false;
            'bfs: while let Some(v) = queue.pop_front() {
                for &(w, e) in &self.d.adj[v] {
                    if !seen[w] && self.residual(v, e) {
                        seen[w] = true;
                        pred[w] = Some((v, e));
                        if w == sink {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if !found {
                return (value, Some(seen));
            }
            let mut w = sink;
            while let Some((v, e)) = pred[w] {
                self.push(v, e);
                w = v;
            }
            value += 1;
        }
    }
}

fn max_flow(d: &Dense, sources: &[usize], sink: usize, limit: usize) -> (usize, Option<Vec<bool>>) {
    Flow::new(d).run(sources, sink, limit)
}

fn side_from_mask(d: &Dense, mask: &[bool]) -> BTreeSet<VertexId> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| d.ids[i])
        .collect()
}

/// Global minimum cut weight, counting parallel edges. Disconnected graphs
/// and graphs with fewer than two vertices report 0.
pub fn edge_connectivity(g: &Multigraph) -> usize {
    min_cut(g).map_or(0, |c| c.weight())
}

/// A minimum-weight cut, found by max-flow from the smallest vertex to every
/// other vertex. `None` for graphs with fewer than two vertices.
pub fn min_cut(g: &Multigraph) -> Option<CutSpec> {
    let d = g.dense();
    if d.len() < 2 {
        return None;
    }
    let mut best: Option<(usize, Vec<bool>)> = None;
    for t in 1..d.len() {
        let (value, reach) = max_flow(&d, &[0], t, usize::MAX);
        if best.as_ref().is_none_or(|(w, _)| value < *w) {
            best = Some((value, reach.unwrap()));
            if value == 0 {
                break;
            }
        }
    }
    let (_, mask) = best?;
    Some(cut_of(g, &side_from_mask(&d, &mask)))
}

/// True iff every cut has weight at least `k`. Stops each flow after `k`
/// augmentations.
pub fn is_k_edge_connected(g: &Multigraph, k: usize) -> bool {
    let d = g.dense();
    if d.len() < 2 {
        return false;
    }
    (1..d.len()).all(|t| max_flow(&d, &[0], t, k).0 >= k)
}

/// Finds a 3-edge cut whose sides both contain at least two vertices.
///
/// For every edge `rr'` at the smallest vertex `r`, flows go from `{r, r'}`
/// to each other vertex `t`; the flow value is always 3 and the residual
/// reachability gives the minimum cut with the largest sink side. An
/// essential cut exists iff one of these sink sides has two or more vertices.
pub fn find_essential_3cut(g: &Multigraph) -> Result<Option<CutSpec>> {
    g.check_cubic()?;
    let d = g.dense();
    if d.len() < 2 {
        return Err(Error::TooSmall(d.len()));
    }
    let root = 0;
    for &(r2, _) in &d.adj[root] {
        let sources = [root, r2];
        for t in 0..d.len() {
            if t == root || t == r2 {
                continue;
            }
            let (value, reach) = max_flow(&d, &sources, t, usize::MAX);
            if value < 3 {
                let side = side_from_mask(&d, &reach.unwrap());
                return Err(Error::NotThreeEdgeConnected {
                    cut: cut_of(g, &side),
                });
            }
            let reach = reach.unwrap();
            let sink_side = reach.iter().filter(|&&b| !b).count();
            if sink_side >= 2 {
                let cut = cut_of(g, &side_from_mask(&d, &reach));
                debug_assert_eq!(cut.weight(), 3);
                return Ok(Some(cut));
            }
        }
    }
    Ok(None)
}
