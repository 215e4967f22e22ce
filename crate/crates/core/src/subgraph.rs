use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId};

/// Edge multiplicities over a host graph. Represents 2-factors, even
/// subgraphs, and the final Eulerian solution; absent edges have
/// multiplicity 0.
///
/// The host is passed to each query rather than stored, so one subgraph can
/// be read against the graph it was built on.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenSubgraph {
    mult: BTreeMap<EdgeId, u8>,
}

impl EvenSubgraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut s = Self::new();
        for e in edges {
            s.add(e, 1);
        }
        s
    }

    pub fn mult(&self, e: EdgeId) -> u8 {
        self.mult.get(&e).copied().unwrap_or(0)
    }

    pub fn set(&mut self, e: EdgeId, m: u8) {
        if m == 0 {
            self.mult.remove(&e);
        } else {
            self.mult.insert(e, m);
        }
    }

    pub fn add(&mut self, e: EdgeId, m: u8) {
        let cur = self.mult(e);
        self.set(e, cur + m);
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.mult(e) > 0
    }

    /// Edges with nonzero multiplicity, ascending.
    pub fn support(&self) -> impl Iterator<Item = (EdgeId, u8)> + '_ {
        self.mult.iter().map(|(&e, &m)| (e, m))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.mult.keys().copied()
    }

    /// Total number of edge copies.
    pub fn edge_count(&self) -> usize {
        self.mult.values().map(|&m| m as usize).sum()
    }

    pub fn max_mult(&self) -> u8 {
        self.mult.values().copied().max().unwrap_or(0)
    }

    /// Union by maximum multiplicity.
    pub fn merge(&mut self, other: &EvenSubgraph) {
        for (e, m) in other.support() {
            if m > self.mult(e) {
                self.set(e, m);
            }
        }
    }

    /// Fails if some edge is not present in `g`.
    pub fn check_host(&self, g: &Multigraph) -> Result<()> {
        match self.edge_ids().find(|&e| !g.contains_edge(e)) {
            Some(e) => Err(Error::UnknownEdge(e)),
            None => Ok(()),
        }
    }

    /// Degree of every host vertex, counting multiplicity; loops add 2.
    pub fn degrees(&self, g: &Multigraph) -> BTreeMap<VertexId, usize> {
        let mut deg: BTreeMap<VertexId, usize> = g.vertices().map(|v| (v, 0)).collect();
        for (e, m) in self.support() {
            if let Some(edge) = g.edge(e) {
                *deg.get_mut(&edge.u).unwrap() += m as usize;
                *deg.get_mut(&edge.v).unwrap() += m as usize;
            }
        }
        deg
    }

    pub fn is_even(&self, g: &Multigraph) -> bool {
        self.degrees(g).values().all(|d| d % 2 == 0)
    }

    /// Every host vertex has degree at least 2.
    pub fn is_spanning(&self, g: &Multigraph) -> bool {
        self.degrees(g).values().all(|&d| d >= 2)
    }

    pub fn is_two_factor(&self, g: &Multigraph) -> bool {
        self.max_mult() <= 1 && self.degrees(g).values().all(|&d| d == 2)
    }

    /// Components of the graph formed by edges of positive multiplicity,
    /// over the vertices they touch. Sorted by smallest vertex.
    pub fn components(&self, g: &Multigraph) -> Vec<BTreeSet<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for e in self.edge_ids() {
            if let Some(edge) = g.edge(e) {
                adj.entry(edge.u).or_default().push(edge.v);
                adj.entry(edge.v).or_default().push(edge.u);
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in adj.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &adj[&x] {
                    if seen.insert(y) {
                        comp.insert(y);
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Minimum component size (σ). Zero for the empty subgraph.
    pub fn sigma(&self, g: &Multigraph) -> usize {
        self.components(g)
            .iter()
            .map(BTreeSet::len)
            .min()
            .unwrap_or(0)
    }

    /// Restriction to edges with both endpoints in `vertices`.
    pub fn restrict(&self, g: &Multigraph, vertices: &BTreeSet<VertexId>) -> EvenSubgraph {
        let mut out = EvenSubgraph::new();
        for (e, m) in self.support() {
            if let Some(edge) = g.edge(e) {
                if vertices.contains(&edge.u) && vertices.contains(&edge.v) {
                    out.set(e, m);
                }
            }
        }
        out
    }

    /// Cycles of a 2-factor as edge sequences, each starting at its smallest
    /// vertex. Fails if the subgraph is not a 2-factor of `g`.
    pub fn cycles(&self, g: &Multigraph) -> Result<Vec<Cycle>> {
        if !self.is_two_factor(g) {
            return Err(Error::rejected("subgraph is not a 2-factor"));
        }
        let mut at: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for e in self.edge_ids() {
            let edge = g.edge(e).ok_or(Error::UnknownEdge(e))?;
            at.entry(edge.u).or_default().push(e);
            at.entry(edge.v).or_default().push(e);
        }
        let mut used = BTreeSet::new();
        let mut out = Vec::new();
        for &start in at.keys() {
            let first = at[&start][0];
            if used.contains(&first) {
                continue;
            }
            let mut vertices = vec![start];
            let mut edges = Vec::new();
            let mut v = start;
            let mut e = first;
            loop {
                used.insert(e);
                edges.push(e);
                v = g.edge(e).unwrap().other(v);
                if v == start {
                    break;
                }
                vertices.push(v);
                let pair = &at[&v];
                e = if pair[0] == e { pair[1] } else { pair[0] };
            }
            out.push(Cycle { vertices, edges });
        }
        Ok(out)
    }
}

/// A cycle of a 2-factor: `edges[i]` joins `vertices[i]` and `vertices[i+1]`
/// (cyclically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> Multigraph {
        Multigraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap()
    }

    #[test]
    fn cycles_of_two_triangles() {
        let g = two_triangles();
        let x = EvenSubgraph::from_edges(g.edge_ids());
        let cycles = x.cycles(&g).unwrap();
        assert_eq!(cycles.len(), 2);
        assert_eq!(
            cycles[0].vertices,
            vec![VertexId(0), VertexId(1), VertexId(2)]
        );
        assert_eq!(cycles[1].len(), 3);
        assert_eq!(x.sigma(&g), 3);
        assert!(x.is_even(&g));
        assert!(x.is_spanning(&g));
    }

    #[test]
    fn doubled_edge_is_even() {
        let g = Multigraph::from_edges(2, &[(0, 1)]).unwrap();
        let mut x = EvenSubgraph::new();
        x.set(EdgeId(0), 2);
        assert!(x.is_even(&g));
        assert!(!x.is_two_factor(&g));
        assert_eq!(x.edge_count(), 2);
        assert!(x.cycles(&g).is_err());
    }

    #[test]
    fn restrict_and_merge() {
        let g = two_triangles();
        let x = EvenSubgraph::from_edges(g.edge_ids());
        let left: BTreeSet<_> = [0, 1, 2].map(VertexId).into();
        let r = x.restrict(&g, &left);
        assert_eq!(r.edge_count(), 3);
        let mut m = r.clone();
        m.merge(&x);
        assert_eq!(m, x);
    }
}
