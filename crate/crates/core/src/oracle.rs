//! Exact minimum connected spanning Eulerian sub-multigraph by exhaustive
//! search, and an independent verifier for claimed solutions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId};
use crate::subgraph::EvenSubgraph;

pub const DEFAULT_CAP: usize = 12;

/// `⌊4n/3⌋ − 2`, asserted for `n ≥ 6`.
pub fn tight_bound(n: usize) -> Option<usize> {
    (n >= 6).then(|| 4 * n / 3 - 2)
}

/// `⌊4n/3⌋`, asserted for every `n`.
pub fn loose_bound(n: usize) -> usize {
    4 * n / 3
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptResult {
    pub opt: usize,
    pub witness: EvenSubgraph,
}

/// Pass/fail per property. `within_tight_bound` is `None` below 6 vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub edges: usize,
    pub known_edges: bool,
    pub spanning: bool,
    pub connected: bool,
    pub all_even: bool,
    pub multiplicity_le_2: bool,
    pub within_tight_bound: Option<bool>,
    pub within_loose_bound: bool,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.known_edges
            && self.spanning
            && self.connected
            && self.all_even
            && self.multiplicity_le_2
            && self.within_tight_bound != Some(false)
            && self.within_loose_bound
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let checks = [
            (self.known_edges, "known-edges"),
            (self.spanning, "spanning"),
            (self.connected, "connected"),
            (self.all_even, "all-even"),
            (self.multiplicity_le_2, "multiplicity"),
            (self.within_tight_bound != Some(false), "tight-bound"),
            (self.within_loose_bound, "loose-bound"),
        ];
        for (ok, name) in checks {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

/// Checks `h` as a solution on `g` without trusting any solver state.
pub fn verify(g: &Multigraph, h: &EvenSubgraph) -> Verdict {
    let n = g.vertex_count();
    let edges = h.edge_count();
    let known_edges = h.check_host(g).is_ok();
    let deg = h.degrees(g);
    let comps = h.components(g);
    let connected = comps.len() == 1 || (n == 1 && comps.is_empty());
    Verdict {
        edges,
        known_edges,
        spanning: deg.values().all(|&d| d > 0) || n == 1,
        connected,
        all_even: known_edges && deg.values().all(|d| d % 2 == 0),
        multiplicity_le_2: h.max_mult() <= 2,
        within_tight_bound: tight_bound(n).map(|b| edges <= b),
        within_loose_bound: edges <= loose_bound(n),
    }
}

struct Search<'a> {
    ends: &'a [(usize, usize)],
    ids: &'a [EdgeId],
    n: usize,
    /// Undecided edges per vertex.
    left: Vec<usize>,
    deg: Vec<usize>,
    mult: Vec<u8>,
    current: usize,
    best: usize,
    best_mult: Option<Vec<u8>>,
}

impl Search<'_> {
    /// Lower bound on copies still needed: every vertex of degree 0 needs
    /// two more endpoints, every odd vertex one.
    fn deficit_bound(&self) -> usize {
        let need: usize = self
            .deg
            .iter()
            .map(|&d| match d {
                0 => 2,
                d if d % 2 == 1 => 1,
                _ => 0,
            })
            .sum();
        need.div_ceil(2)
    }

    /// Chosen plus undecided edges (from index `k`) connect every vertex.
    fn can_connect(&self, k: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut parts = self.n;
        for (i, &(a, b)) in self.ends.iter().enumerate() {
            if i < k && self.mult[i] == 0 {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                parts -= 1;
            }
        }
        parts == 1
    }

    fn run(&mut self, k: usize) {
        if self.current + self.deficit_bound() >= self.best {
            return;
        }
        if k == self.ends.len() {
            // every vertex already closed off even and nonzero
            if self.can_connect(k) {
                self.best = self.current;
                self.best_mult = Some(self.mult.clone());
            }
            return;
        }
        if !self.can_connect(k) {
            return;
        }
        let (a, b) = self.ends[k];
        self.left[a] -= 1;
        self.left[b] -= 1;
        for m in [1u8, 2, 0] {
            self.mult[k] = m;
            self.deg[a] += m as usize;
            self.deg[b] += m as usize;
            self.current += m as usize;
            let closed_ok =
                |v: usize, s: &Self| s.left[v] > 0 || (s.deg[v].is_multiple_of(2) && s.deg[v] >= 2);
            if closed_ok(a, self) && closed_ok(b, self) {
                self.run(k + 1);
            }
            self.deg[a] -= m as usize;
            self.deg[b] -= m as usize;
            self.current -= m as usize;
        }
        self.mult[k] = 0;
        self.left[a] += 1;
        self.left[b] += 1;
    }
}

/// Exact optimum over multiplicities {0,1,2}. Refuses graphs with more than
/// `cap` vertices. Self-loops are ignored.
pub fn opt_eulerian(g: &Multigraph, cap: usize) -> Result<OptResult> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::OverCap { n, cap });
    }
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    if !g.is_connected() {
        return Err(Error::rejected("graph is disconnected"));
    }
    let index: BTreeMap<VertexId, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let mut ends = Vec::new();
    let mut ids = Vec::new();
    for e in g.edges().filter(|e| !e.is_loop()) {
        ends.push((index[&e.u], index[&e.v]));
        ids.push(e.id);
    }
    let mut left = vec![0; n];
    for &(a, b) in &ends {
        left[a] += 1;
        left[b] += 1;
    }
    let mut s = Search {
        ends: &ends,
        ids: &ids,
        n,
        left,
        deg: vec![0; n],
        mult: vec![0; ends.len()],
        current: 0,
        // a doubled spanning tree always works
        best: 2 * (n - 1) + 1,
        best_mult: None,
    };
    s.run(0);
    let mult = s
        .best_mult
        .ok_or_else(|| Error::internal("no Eulerian subgraph found"))?;
    let mut witness = EvenSubgraph::new();
    for (i, &m) in mult.iter().enumerate() {
        witness.set(s.ids[i], m);
    }
    Ok(OptResult {
        opt: s.best,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named;

    fn k3n(n: usize) -> Multigraph {
        let pairs: Vec<_> = (0..3)
            .flat_map(|a| (3..3 + n).map(move |b| (a, b)))
            .collect();
        Multigraph::from_edges(3 + n, &pairs).unwrap()
    }

    /// Plain enumeration of all 3^m assignments, for tiny graphs.
    fn brute(g: &Multigraph) -> usize {
        let ids: Vec<EdgeId> = g.edge_ids().collect();
        let mut best = usize::MAX;
        for code in 0..3usize.pow(ids.len() as u32) {
            let mut h = EvenSubgraph::new();
            let mut c = code;
            for &e in &ids {
                h.set(e, (c % 3) as u8);
                c /= 3;
            }
            let v = verify(g, &h);
            if v.spanning && v.connected && v.all_even {
                best = best.min(h.edge_count());
            }
        }
        best
    }

    #[test]
    fn k4_optimum_is_four() {
        let g = named("k4").unwrap();
        let r = opt_eulerian(&g, DEFAULT_CAP).unwrap();
        assert_eq!(r.opt, 4);
        assert_eq!(brute(&g), 4);
        assert!(verify(&g, &r.witness).passed());
    }

    #[test]
    fn small_graphs_agree_with_plain_enumeration() {
        let path = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(opt_eulerian(&path, 12).unwrap().opt, brute(&path));
        assert_eq!(brute(&path), 4);
        let theta = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(opt_eulerian(&theta, 12).unwrap().opt, brute(&theta));
        let k13 = k3n(1);
        assert_eq!(opt_eulerian(&k13, 12).unwrap().opt, brute(&k13));
    }

    #[test]
    fn complete_bipartite_three_by_n() {
        assert_eq!(opt_eulerian(&k3n(3), DEFAULT_CAP).unwrap().opt, 6);
        assert!(opt_eulerian(&k3n(4), DEFAULT_CAP).unwrap().opt >= 8);
    }

    #[test]
    fn petersen_optimum_is_eleven() {
        let g = named("petersen").unwrap();
        let r = opt_eulerian(&g, DEFAULT_CAP).unwrap();
        assert_eq!(r.opt, 11);
        assert!(verify(&g, &r.witness).passed());
    }

    #[test]
    fn cap_is_enforced() {
        let g = named("moebius-kantor").unwrap();
        assert!(matches!(
            opt_eulerian(&g, 12),
            Err(Error::OverCap { n: 16, cap: 12 })
        ));
    }

    #[test]
    fn verdicts() {
        let g = named("prism").unwrap();
        // hamiltonian 6-cycle: 0-1-2-5-4-3-0 uses edges 0,1,8,4,3,6
        let ham = EvenSubgraph::from_edges([0, 1, 8, 4, 3, 6].map(EdgeId));
        assert!(verify(&g, &ham).passed());
        let tree = EvenSubgraph::from_edges([0, 1, 6, 7, 8].map(EdgeId));
        assert!(!verify(&g, &tree).all_even);
        let triangles = EvenSubgraph::from_edges([0, 1, 2, 3, 4, 5].map(EdgeId));
        let v = verify(&g, &triangles);
        assert!(!v.connected && v.all_even && v.spanning);
        assert_eq!(v.failures(), vec!["connected"]);
    }
}
