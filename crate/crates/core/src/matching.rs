//! Maximum-cardinality matching in general multigraphs, and the 2-factor
//! that is left over when a perfect matching is removed from a cubic graph.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId};
use crate::subgraph::EvenSubgraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub edges: BTreeSet<EdgeId>,
    pub perfect: bool,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

const NONE: usize = usize::MAX;

/// Edmonds' blossom-shrinking search over an adjacency list.
struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for k in 0..self.adj[v].len() {
                let to = self.adj[v][k];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn solve(mut self) -> Vec<usize> {
        let n = self.adj.len();
        // greedy start
        for v in 0..n {
            if self.mate[v] == NONE {
                if let Some(&w) = self.adj[v].iter().find(|&&w| self.mate[w] == NONE) {
                    self.mate[v] = w;
                    self.mate[w] = v;
                }
            }
        }
        for v in 0..n {
            if self.mate[v] == NONE {
                if let Some(end) = self.find_path(v) {
                    self.augment(end);
                }
            }
        }
        self.mate
    }
}

/// Maximum matching containing every `forced` edge and no `forbidden` edge.
///
/// The endpoints of forced edges are removed, the rest is matched by
/// blossom search, and the forced edges are added back. Between two
/// vertices joined by parallel candidates the smallest edge id is used.
/// Self-loops are never matched.
pub fn max_matching(
    g: &Multigraph,
    forced: &BTreeSet<EdgeId>,
    forbidden: &BTreeSet<EdgeId>,
) -> Result<Matching> {
    let mut covered = BTreeSet::new();
    for &e in forced {
        let edge = g.edge(e).ok_or(Error::UnknownEdge(e))?;
        if forbidden.contains(&e) {
            return Err(Error::rejected(format!("{e} is both forced and forbidden")));
        }
        if edge.is_loop() || !covered.insert(edge.u) || !covered.insert(edge.v) {
            return Err(Error::rejected(format!("forced edge {e} is not matchable")));
        }
    }
    let d = g.dense();
    let n = d.len();
    let mut adj = vec![Vec::new(); n];
    for (k, &(a, b)) in d.ends.iter().enumerate() {
        let e = d.edge_ids[k];
        if a == b
            || forbidden.contains(&e)
            || covered.contains(&d.ids[a])
            || covered.contains(&d.ids[b])
        {
            continue;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let mate = Blossom::new(&adj).solve();

    let mut edges = forced.clone();
    let mut taken = vec![false; n];
    for (k, &(a, b)) in d.ends.iter().enumerate() {
        let e = d.edge_ids[k];
        // first (smallest id) candidate between a matched pair wins
        if a != b && mate[a] == b && !taken[a] && !forbidden.contains(&e) {
            taken[a] = true;
            taken[b] = true;
            edges.insert(e);
        }
    }
    let perfect = edges.len() * 2 == n;
    Ok(Matching { edges, perfect })
}

/// In a cubic graph, the edges outside a perfect matching form a 2-factor.
pub fn two_factor_from_matching(g: &Multigraph, m: &Matching) -> Result<EvenSubgraph> {
    g.check_cubic()?;
    let mut covered = BTreeSet::<VertexId>::new();
    for &e in &m.edges {
        let edge = g.edge(e).ok_or(Error::UnknownEdge(e))?;
        if !covered.insert(edge.u) || !covered.insert(edge.v) {
            return Err(Error::rejected("matching edges share an endpoint"));
        }
    }
    if !m.perfect || covered.len() != g.vertex_count() {
        return Err(Error::rejected("matching is not perfect"));
    }
    let x = EvenSubgraph::from_edges(g.edge_ids().filter(|e| !m.edges.contains(e)));
    debug_assert!(x.is_two_factor(g));
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, named};

    /// Size of a maximum matching by exhaustive recursion.
    fn brute_max_matching(g: &Multigraph) -> usize {
        fn rec(edges: &[(VertexId, VertexId)], i: usize, used: &mut BTreeSet<VertexId>) -> usize {
            if i == edges.len() {
                return 0;
            }
            let skip = rec(edges, i + 1, used);
            let (u, v) = edges[i];
            if u != v && !used.contains(&u) && !used.contains(&v) {
                used.insert(u);
                used.insert(v);
                let take = 1 + rec(edges, i + 1, used);
                used.remove(&u);
                used.remove(&v);
                skip.max(take)
            } else {
                skip
            }
        }
        let edges: Vec<_> = g.edges().map(|e| (e.u, e.v)).collect();
        rec(&edges, 0, &mut BTreeSet::new())
    }

    fn is_matching(g: &Multigraph, m: &Matching) -> bool {
        let mut seen = BTreeSet::new();
        m.edges.iter().all(|&e| {
            let e = g.edge(e).unwrap();
            !e.is_loop() && seen.insert(e.u) && seen.insert(e.v)
        })
    }

    #[test]
    fn k4_perfect() {
        let g = named("k4").unwrap();
        let m = max_matching(&g, &BTreeSet::new(), &BTreeSet::new()).unwrap();
        assert!(m.perfect);
        assert_eq!(m.len(), 2);
        let x = two_factor_from_matching(&g, &m).unwrap();
        assert_eq!(x.edge_count(), 4);
        assert_eq!(x.cycles(&g).unwrap().len(), 1);
    }

    #[test]
    fn petersen_perfect_and_two_pentagons() {
        let g = named("petersen").unwrap();
        assert_eq!(brute_max_matching(&g), 5);
        let m = max_matching(&g, &BTreeSet::new(), &BTreeSet::new()).unwrap();
        assert!(m.perfect);
        assert_eq!(m.len(), 5);
        let x = two_factor_from_matching(&g, &m).unwrap();
        let lens: Vec<_> = x.cycles(&g).unwrap().iter().map(|c| c.len()).collect();
        assert_eq!(lens, vec![5, 5]);
    }

    #[test]
    fn k4_forced_edge_fixes_complement_pair() {
        let g = named("k4").unwrap();
        // edge 0 = (0,1); the only disjoint edge is (2,3) = edge 5
        let m = max_matching(&g, &BTreeSet::from([EdgeId(0)]), &BTreeSet::new()).unwrap();
        assert_eq!(m.edges, BTreeSet::from([EdgeId(0), EdgeId(5)]));
    }

    #[test]
    fn prism_triangle_matching_leaves_two_triangles() {
        let g = named("prism").unwrap();
        let m = Matching {
            edges: BTreeSet::from([EdgeId(6), EdgeId(7), EdgeId(8)]),
            perfect: true,
        };
        let x = two_factor_from_matching(&g, &m).unwrap();
        let lens: Vec<_> = x.cycles(&g).unwrap().iter().map(|c| c.len()).collect();
        assert_eq!(lens, vec![3, 3]);
    }

    #[test]
    fn forbidden_edges_respected() {
        let g = named("prism").unwrap();
        let forbidden = BTreeSet::from([EdgeId(6), EdgeId(7)]);
        let m = max_matching(&g, &BTreeSet::new(), &forbidden).unwrap();
        assert!(m.perfect);
        assert!(m.edges.is_disjoint(&forbidden));
    }

    #[test]
    fn rejects_bad_constraints() {
        let g = named("k4").unwrap();
        let both = BTreeSet::from([EdgeId(0)]);
        assert!(max_matching(&g, &both, &both).is_err());
        // edges 0=(0,1) and 1=(0,2) share vertex 0
        let adjacent = BTreeSet::from([EdgeId(0), EdgeId(1)]);
        assert!(max_matching(&g, &adjacent, &BTreeSet::new()).is_err());
        let imperfect = Matching {
            edges: BTreeSet::from([EdgeId(0)]),
            perfect: false,
        };
        assert!(two_factor_from_matching(&g, &imperfect).is_err());
    }

    #[test]
    fn odd_cycle_blossoms() {
        // two triangles joined by a path force blossom contraction
        let g = Multigraph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 5),
                (1, 3),
            ],
        )
        .unwrap();
        let m = max_matching(&g, &BTreeSet::new(), &BTreeSet::new()).unwrap();
        assert!(is_matching(&g, &m));
        assert_eq!(m.len(), brute_max_matching(&g));
    }

    #[test]
    fn matches_brute_force_on_small_instances() {
        for recipe in [
            "cube",
            "k33",
            "prism",
            "random:n=10,seed=1",
            "random:n=12,seed=2",
        ] {
            let g = generate(recipe).unwrap();
            let m = max_matching(&g, &BTreeSet::new(), &BTreeSet::new()).unwrap();
            assert!(is_matching(&g, &m));
            assert_eq!(m.len(), brute_max_matching(&g), "{recipe}");
        }
        // non-cubic graph with a pendant path: maximum is below n/2
        let g =
            Multigraph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6)]).unwrap();
        let m = max_matching(&g, &BTreeSet::new(), &BTreeSet::new()).unwrap();
        assert_eq!(m.len(), brute_max_matching(&g));
        assert!(!m.perfect);
    }

    #[test]
    fn every_edge_of_a_bridgeless_cubic_graph_is_in_some_perfect_matching() {
        for recipe in ["petersen", "cube", "random:n=16,seed=3"] {
            let g = generate(recipe).unwrap();
            for e in g.edge_ids() {
                let m = max_matching(&g, &BTreeSet::from([e]), &BTreeSet::new()).unwrap();
                assert!(m.perfect && m.edges.contains(&e), "{recipe} {e}");
            }
        }
    }
}
