//! Compression loop: contract short cycles of the 2-factor into single
//! vertices, split those back down to degree 3, and re-solve, until every
//! cycle is long or already touches compressed structure.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{
    contract, edge_connectivity, suppress_degree2, EdgeId, Multigraph, VertexId,
};
use crate::subgraph::{Cycle, EvenSubgraph};
use crate::twofactor::find_girth5_two_factor;

/// A 5-cycle contracted into the vertex `sv`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperVertexRecord {
    pub sv: VertexId,
    /// `cycle_edges[i]` joins `cycle[i]` and `cycle[i+1]` (cyclically).
    pub cycle: [VertexId; 5],
    pub cycle_edges: [EdgeId; 5],
    /// Other edges with both ends on the cycle, dropped by the contraction.
    pub chords: Vec<(EdgeId, VertexId, VertexId)>,
    /// Each edge at `sv` right after contraction, mapped to its cycle vertex.
    pub port_map: BTreeMap<EdgeId, VertexId>,
}

/// The edge `se` that replaced two edges at the super-vertex `owner`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperEdgeRecord {
    pub se: EdgeId,
    /// The removed edges with their far ends (the ends of `se`).
    pub replaced: [(EdgeId, VertexId); 2],
    pub owner: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Record {
    Compression(SuperVertexRecord),
    SplitOff(SuperEdgeRecord),
}

/// Every compression and split-off in the order performed. Undo runs in
/// reverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceLedger {
    records: Vec<Record>,
}

impl ProvenanceLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn compressions(&self) -> impl DoubleEndedIterator<Item = &SuperVertexRecord> {
        self.records.iter().filter_map(|r| match r {
            Record::Compression(c) => Some(c),
            Record::SplitOff(_) => None,
        })
    }

    pub fn split_offs(&self) -> impl DoubleEndedIterator<Item = &SuperEdgeRecord> {
        self.records.iter().filter_map(|r| match r {
            Record::SplitOff(s) => Some(s),
            Record::Compression(_) => None,
        })
    }

    pub fn super_vertices(&self) -> BTreeSet<VertexId> {
        self.compressions().map(|c| c.sv).collect()
    }

    pub fn super_edges(&self) -> BTreeSet<EdgeId> {
        self.split_offs().map(|s| s.se).collect()
    }

    /// Reverts the most recent record on `g` and pops it.
    pub fn undo_last(&mut self, g: &mut Multigraph) -> Result<()> {
        match self.records.pop() {
            Some(Record::SplitOff(s)) => {
                g.remove_edge(s.se)?;
                for (e, far) in s.replaced {
                    g.insert_edge(e, s.owner, far)?;
                }
            }
            Some(Record::Compression(c)) => {
                for v in c.cycle {
                    g.insert_vertex(v)?;
                }
                for (&e, &v) in &c.port_map {
                    g.reattach(e, c.sv, v)?;
                }
                g.remove_vertex(c.sv)?;
                for i in 0..5 {
                    g.insert_edge(c.cycle_edges[i], c.cycle[i], c.cycle[(i + 1) % 5])?;
                }
                for &(e, u, v) in &c.chords {
                    g.insert_edge(e, u, v)?;
                }
            }
            None => return Err(Error::rejected("ledger is empty")),
        }
        Ok(())
    }

    /// Reverts every record, returning the original graph.
    pub fn undo_all(&self, g: &Multigraph) -> Result<Multigraph> {
        let mut g = g.clone();
        let mut ledger = self.clone();
        while !ledger.is_empty() {
            ledger.undo_last(&mut g)?;
        }
        Ok(g)
    }
}

/// Contracts a 5-cycle `c` of the current 2-factor into a new vertex.
pub fn compress_5cycle(
    g: &Multigraph,
    c: &Cycle,
    ledger: &ProvenanceLedger,
) -> Result<(Multigraph, SuperVertexRecord)> {
    if c.len() != 5 || c.vertices.len() != 5 {
        return Err(Error::rejected(format!(
            "expected a 5-cycle, got length {}",
            c.len()
        )));
    }
    let svs = ledger.super_vertices();
    let ses = ledger.super_edges();
    if c.vertices.iter().any(|v| svs.contains(v)) || c.edges.iter().any(|e| ses.contains(e)) {
        return Err(Error::rejected(
            "cycle contains a super-vertex or super-edge",
        ));
    }
    let cycle: [VertexId; 5] = c.vertices.clone().try_into().unwrap();
    let cycle_edges: [EdgeId; 5] = c.edges.clone().try_into().unwrap();
    for i in 0..5 {
        let e = g
            .edge(cycle_edges[i])
            .ok_or(Error::UnknownEdge(cycle_edges[i]))?;
        let (a, b) = (cycle[i], cycle[(i + 1) % 5]);
        if !((e.u == a && e.v == b) || (e.u == b && e.v == a)) {
            return Err(Error::rejected(format!(
                "{} does not join {a} and {b}",
                e.id
            )));
        }
    }
    let set: BTreeSet<VertexId> = cycle.into_iter().collect();
    if set.len() != 5 {
        return Err(Error::rejected("cycle repeats a vertex"));
    }
    let mut chords = Vec::new();
    let mut port_map = BTreeMap::new();
    for e in g.edges() {
        let (inu, inv) = (set.contains(&e.u), set.contains(&e.v));
        if inu && inv && !cycle_edges.contains(&e.id) {
            chords.push((e.id, e.u, e.v));
        } else if inu != inv {
            port_map.insert(e.id, if inu { e.u } else { e.v });
        }
    }
    let (h, sv) = contract(g, &set)?;
    Ok((
        h,
        SuperVertexRecord {
            sv,
            cycle,
            cycle_edges,
            chords,
            port_map,
        },
    ))
}

/// What the split-off search saw at one super-vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCheck {
    pub sv: VertexId,
    pub candidates_tried: usize,
    pub cubic: bool,
    pub connectivity: usize,
}

/// Replaces two edges `x1 sv`, `x2 sv` by one edge `x1 x2` so that the
/// result (after suppressing degree-2 vertices) stays 3-edge-connected.
///
/// Pairs are tried in ascending edge-id order; pairs whose far ends
/// coincide would leave a self-loop and are skipped.
pub fn split_off_pair(
    g: &Multigraph,
    sv: VertexId,
) -> Result<(Multigraph, SuperEdgeRecord, SplitCheck)> {
    if !g.contains_vertex(sv) {
        return Err(Error::UnknownVertex(sv));
    }
    if g.degree(sv) != 5 {
        return Err(Error::rejected(format!(
            "{sv} has degree {}, expected 5",
            g.degree(sv)
        )));
    }
    let mut inc = g.incident(sv).to_vec();
    inc.sort();
    let mut tried = 0;
    for i in 0..inc.len() {
        for j in i + 1..inc.len() {
            tried += 1;
            let (e1, e2) = (inc[i], inc[j]);
            let x1 = g.edge(e1).unwrap().other(sv);
            let x2 = g.edge(e2).unwrap().other(sv);
            if x1 == x2 || x1 == sv || x2 == sv {
                continue;
            }
            let mut h = g.clone();
            h.remove_edge(e1)?;
            h.remove_edge(e2)?;
            let se = h.add_edge(x1, x2)?;
            let connectivity = edge_connectivity(&suppress_degree2(&h));
            if connectivity >= 3 {
                let check = SplitCheck {
                    sv,
                    candidates_tried: tried,
                    cubic: h.is_cubic(),
                    connectivity: edge_connectivity(&h),
                };
                let rec = SuperEdgeRecord {
                    se,
                    replaced: [(e1, x1), (e2, x2)],
                    owner: sv,
                };
                return Ok((h, rec, check));
            }
        }
    }
    Err(Error::internal(format!("no valid split-off at {sv}")))
}

/// Result of [`compression_loop`].
#[derive(Clone, Debug)]
pub struct Compressed {
    /// The final compressed cubic graph.
    pub graph: Multigraph,
    /// A 2-factor of `graph` meeting the stopping rule.
    pub two_factor: EvenSubgraph,
    pub ledger: ProvenanceLedger,
    pub splits: Vec<SplitCheck>,
}

/// Compresses 5-cycles free of super elements, smallest minimum vertex
/// first, until none is left.
pub fn compression_loop(g: &Multigraph) -> Result<Compressed> {
    let mut h = g.clone();
    let mut x = find_girth5_two_factor(&h, None)?;
    let mut ledger = ProvenanceLedger::new();
    let mut splits = Vec::new();
    loop {
        let svs = ledger.super_vertices();
        let ses = ledger.super_edges();
        let target = x
            .cycles(&h)?
            .into_iter()
            .filter(|c| {
                c.len() == 5
                    && !c.vertices.iter().any(|v| svs.contains(v))
                    && !c.edges.iter().any(|e| ses.contains(e))
            })
            .min_by_key(|c| c.vertices.iter().copied().min());
        let Some(cycle) = target else {
            break;
        };
        let (next, rec) = compress_5cycle(&h, &cycle, &ledger)?;
        let sv = rec.sv;
        ledger.push(Record::Compression(rec));
        h = match next.degree(sv) {
            5 => {
                let (split, rec, check) = split_off_pair(&next, sv)?;
                ledger.push(Record::SplitOff(rec));
                splits.push(check);
                split
            }
            3 => next,
            d => return Err(Error::internal(format!("compressed vertex has degree {d}"))),
        };
        x = find_girth5_two_factor(&h, None)?;
    }
    Ok(Compressed {
        graph: h,
        two_factor: x,
        ledger,
        splits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, named};

    fn outer_cycle(g: &Multigraph) -> Cycle {
        let x = EvenSubgraph::from_edges((0..5).map(EdgeId));
        let mut all = EvenSubgraph::from_edges((10..15).map(EdgeId));
        all.merge(&x);
        all.cycles(g).unwrap().remove(0)
    }

    #[test]
    fn petersen_outer_cycle_compresses_to_degree_five() {
        let g = named("petersen").unwrap();
        let c = outer_cycle(&g);
        let (h, rec) = compress_5cycle(&g, &c, &ProvenanceLedger::new()).unwrap();
        assert_eq!(h.vertex_count(), 6);
        assert_eq!(h.degree(rec.sv), 5);
        assert_eq!(rec.port_map.len(), 5);
        assert!(rec.chords.is_empty());
        // the inner pentagram is untouched
        for e in 10..15 {
            assert!(h.contains_edge(EdgeId(e)));
        }
    }

    #[test]
    fn petersen_split_gives_cubic_3ec_graph() {
        let g = named("petersen").unwrap();
        let c = outer_cycle(&g);
        let (h, rec) = compress_5cycle(&g, &c, &ProvenanceLedger::new()).unwrap();
        let (s, se, check) = split_off_pair(&h, rec.sv).unwrap();
        assert_eq!(s.vertex_count(), 6);
        assert!(s.is_cubic());
        assert_eq!(edge_connectivity(&s), 3);
        assert!(check.candidates_tried <= 10);
        assert_eq!(s.degree(se.owner), 3);
        // independent count of valid pairs among the 10
        let inc = h.incident(rec.sv).to_vec();
        let mut valid = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                let mut t = h.clone();
                let a = t.remove_edge(inc[i]).unwrap().other(rec.sv);
                let b = t.remove_edge(inc[j]).unwrap().other(rec.sv);
                t.add_edge(a, b).unwrap();
                if edge_connectivity(&t) == 3 {
                    valid += 1;
                }
            }
        }
        assert!(valid >= 1);
    }

    #[test]
    fn super_elements_are_rejected() {
        let g = named("petersen").unwrap();
        let c = outer_cycle(&g);
        let mut ledger = ProvenanceLedger::new();
        let (_, rec) = compress_5cycle(&g, &c, &ledger).unwrap();
        let mut fake = rec.clone();
        fake.sv = c.vertices[0];
        ledger.push(Record::Compression(fake));
        assert!(compress_5cycle(&g, &c, &ledger).is_err());
    }

    #[test]
    fn moebius_kantor_needs_no_compression() {
        let g = named("moebius-kantor").unwrap();
        let out = compression_loop(&g).unwrap();
        assert!(out.ledger.is_empty());
        assert!(out
            .two_factor
            .cycles(&g)
            .unwrap()
            .iter()
            .all(|c| c.len() >= 6));
    }

    #[test]
    fn petersen_loop_compresses_once() {
        let g = named("petersen").unwrap();
        let out = compression_loop(&g).unwrap();
        assert_eq!(out.ledger.compressions().count(), 1);
        assert_eq!(out.graph.vertex_count(), 6);
        assert_eq!(out.ledger.undo_all(&out.graph).unwrap(), g);
    }

    #[test]
    fn loop_round_trips_and_stops() {
        for seed in 0..30 {
            let n = 10 + 2 * (seed % 20) as usize;
            let g = generate(&format!("random:n={n},seed={seed}")).unwrap();
            let out = compression_loop(&g).unwrap();
            assert!(out.ledger.compressions().count() <= n / 4);
            assert_eq!(out.ledger.undo_all(&out.graph).unwrap(), g);
            let svs = out.ledger.super_vertices();
            let ses = out.ledger.super_edges();
            for c in out.two_factor.cycles(&out.graph).unwrap() {
                assert!(
                    c.len() >= 6
                        || c.vertices.iter().any(|v| svs.contains(v))
                        || c.edges.iter().any(|e| ses.contains(e))
                );
            }
            for s in &out.splits {
                assert!(s.cubic && s.connectivity == 3 && s.candidates_tried <= 10);
            }
        }
    }
}
