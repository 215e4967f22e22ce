//! Undirected multigraph with stable vertex and edge identities.
//!
//! Every transformation used by the solver (contraction, splitting off,
//! 4-cycle reduction) keeps the identity of each surviving edge, so that
//! a subgraph computed on a derived graph can be mapped back edge by edge.

mod cuts;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cuts::{
    cut_of, edge_connectivity, find_essential_3cut, is_k_edge_connected, min_cut, CutSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`. For a loop this is `x` itself.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Multigraph with self-loops and parallel edges.
///
/// A self-loop is listed twice in the incidence list of its vertex, so the
/// length of that list is the degree. Equality compares vertex ids and
/// unordered edge records only, not incidence order or id counters.
#[derive(Clone, Debug, Default)]
pub struct Multigraph {
    adj: BTreeMap<VertexId, Vec<EdgeId>>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    next_vertex: u32,
    next_edge: u32,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        let norm = |&(u, v): &(VertexId, VertexId)| (u.min(v), u.max(v));
        self.adj.keys().eq(other.adj.keys())
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(a, b)| a.0 == b.0 && norm(a.1) == norm(b.1))
    }
}

impl Eq for Multigraph {}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph on vertices `0..n` with edges numbered in input order.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Multigraph::new();
        for _ in 0..n {
            g.add_vertex();
        }
        for &(u, v) in pairs {
            g.add_edge(VertexId(u as u32), VertexId(v as u32))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.adj.insert(id, Vec::new());
        id
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let id = EdgeId(self.next_edge);
        self.insert_edge(id, u, v)?;
        Ok(id)
    }

    /// Inserts a vertex with a caller-chosen id (used when undoing transformations).
    pub fn insert_vertex(&mut self, id: VertexId) -> Result<()> {
        if self.adj.contains_key(&id) {
            return Err(Error::DuplicateId(id.to_string()));
        }
        self.adj.insert(id, Vec::new());
        self.next_vertex = self.next_vertex.max(id.0 + 1);
        Ok(())
    }

    /// Inserts an edge with a caller-chosen id (used when undoing transformations).
    pub fn insert_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        if self.edges.contains_key(&id) {
            return Err(Error::DuplicateId(id.to_string()));
        }
        for x in [u, v] {
            if !self.adj.contains_key(&x) {
                return Err(Error::UnknownVertex(x));
            }
        }
        self.edges.insert(id, (u, v));
        self.adj.get_mut(&u).unwrap().push(id);
        self.adj.get_mut(&v).unwrap().push(id);
        self.next_edge = self.next_edge.max(id.0 + 1);
        Ok(())
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Result<Edge> {
        let (u, v) = self.edges.remove(&id).ok_or(Error::UnknownEdge(id))?;
        for x in [u, v] {
            let list = self.adj.get_mut(&x).unwrap();
            let pos = list.iter().position(|&e| e == id).unwrap();
            list.remove(pos);
        }
        Ok(Edge { id, u, v })
    }

    /// Removes `v` together with every incident edge; returns the removed edges.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<Vec<Edge>> {
        let incident = self.adj.get(&v).ok_or(Error::UnknownVertex(v))?.clone();
        let mut removed = Vec::new();
        for e in incident {
            if self.edges.contains_key(&e) {
                removed.push(self.remove_edge(e)?);
            }
        }
        self.adj.remove(&v);
        Ok(removed)
    }

    /// Moves the `from` end of edge `e` to vertex `to`, keeping the edge id.
    pub fn reattach(&mut self, e: EdgeId, from: VertexId, to: VertexId) -> Result<()> {
        if !self.adj.contains_key(&to) {
            return Err(Error::UnknownVertex(to));
        }
        let ends = self.edges.get_mut(&e).ok_or(Error::UnknownEdge(e))?;
        if ends.0 == from {
            ends.0 = to;
        } else if ends.1 == from {
            ends.1 = to;
        } else {
            return Err(Error::rejected(format!("{e} is not incident to {from}")));
        }
        let list = self.adj.get_mut(&from).unwrap();
        let pos = list.iter().position(|&x| x == e).unwrap();
        list.remove(pos);
        self.adj.get_mut(&to).unwrap().push(e);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// Edges in ascending id order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|(&id, &(u, v))| Edge { id, u, v })
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn edge(&self, id: EdgeId) -> Option<Edge> {
        self.edges.get(&id).map(|&(u, v)| Edge { id, u, v })
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    /// Incident edge ids of `v`; a self-loop appears twice.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        self.adj.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v)
            .iter()
            .map(move |&e| self.edge(e).unwrap().other(v))
    }

    /// Smallest vertex id not yet handed out.
    pub fn next_vertex_id(&self) -> VertexId {
        VertexId(self.next_vertex)
    }

    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.next_edge)
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.values().all(|inc| inc.len() == 3)
    }

    /// Fails with the first vertex (by id) whose degree is not 3.
    pub fn check_cubic(&self) -> Result<()> {
        match self.adj.iter().find(|(_, inc)| inc.len() != 3) {
            Some((&vertex, inc)) => Err(Error::NotCubic {
                vertex,
                degree: inc.len(),
            }),
            None => Ok(()),
        }
    }

    /// Checks the standing precondition of the solver: at least 4 vertices,
    /// cubic, 3-edge-connected.
    pub fn check_cubic_3ec(&self) -> Result<()> {
        if self.vertex_count() < 4 {
            return Err(Error::TooSmall(self.vertex_count()));
        }
        self.check_cubic()?;
        if !is_k_edge_connected(self, 3) {
            let cut = min_cut(self).ok_or_else(|| Error::internal("no cut found"))?;
            return Err(Error::NotThreeEdgeConnected { cut });
        }
        Ok(())
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for y in self.neighbors(x) {
                    if seen.insert(y) {
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub(crate) fn dense(&self) -> Dense {
        Dense::new(self)
    }
}

/// Contracts the vertex set `s` into one new vertex, dropping the self-loops
/// that arise from edges inside `s`. Surviving edges keep their ids.
///
/// Contracting a single vertex returns the graph unchanged together with
/// that vertex.
pub fn contract(g: &Multigraph, s: &BTreeSet<VertexId>) -> Result<(Multigraph, VertexId)> {
    if s.is_empty() {
        return Err(Error::rejected("cannot contract an empty vertex set"));
    }
    if let Some(&v) = s.iter().find(|v| !g.contains_vertex(**v)) {
        return Err(Error::UnknownVertex(v));
    }
    if s.len() == 1 {
        let v = *s.iter().next().unwrap();
        return Ok((g.clone(), v));
    }
    let mut h = g.clone();
    let z = h.add_vertex();
    for &v in s {
        for e in g.incident(v).to_vec() {
            if !h.contains_edge(e) {
                continue;
            }
            let edge = h.edge(e).unwrap();
            if s.contains(&edge.u) && s.contains(&edge.v) {
                h.remove_edge(e)?;
            } else {
                h.reattach(e, v, z)?;
            }
        }
        h.remove_vertex(v)?;
    }
    Ok((h, z))
}

/// Repeatedly replaces a degree-2 vertex and its two edges by a single edge.
///
/// A vertex whose only edge is a self-loop also has degree 2 but cannot be
/// suppressed; it is left in place.
pub fn suppress_degree2(g: &Multigraph) -> Multigraph {
    let mut h = g.clone();
    loop {
        let target = h.vertices().find(|&v| {
            let inc = h.incident(v);
            inc.len() == 2 && inc[0] != inc[1]
        });
        let Some(v) = target else {
            return h;
        };
        let inc = h.incident(v).to_vec();
        let a = h.remove_edge(inc[0]).unwrap().other(v);
        let b = h.remove_edge(inc[1]).unwrap().other(v);
        h.remove_vertex(v).unwrap();
        h.add_edge(a, b).unwrap();
    }
}

/// Index-based snapshot used by the flow and matching routines.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub ids: Vec<VertexId>,
    pub edge_ids: Vec<EdgeId>,
    pub ends: Vec<(usize, usize)>,
    /// Per vertex: (neighbor, edge index), in ascending edge id order. Loops omitted.
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl Dense {
    fn new(g: &Multigraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edge_ids = Vec::with_capacity(g.edge_count());
        let mut ends = Vec::with_capacity(g.edge_count());
        let mut adj = vec![Vec::new(); ids.len()];
        for e in g.edges() {
            let (a, b) = (index[&e.u], index[&e.v]);
            let k = edge_ids.len();
            edge_ids.push(e.id);
            ends.push((a, b));
            if a != b {
                adj[a].push((b, k));
                adj[b].push((a, k));
            }
        }
        Dense {
            ids,
            edge_ids,
            ends,
            adj,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }
}
