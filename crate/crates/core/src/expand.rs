//! Undoing compression inside the solution.
//!
//! Super-edges are first replaced by the edges they stand for, which gives
//! an even subgraph of the *host*: the original graph with every compressed
//! cycle still contracted. Each super-vertex then has degree 2 or 4 and is
//! expanded back into its 5-cycle with a small gadget of cycle edges chosen
//! to keep the component even, spanning and connected.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::compress::{ProvenanceLedger, SuperVertexRecord};
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId};
use crate::subgraph::EvenSubgraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetCase {
    /// Degree 2, the two outside edges meet adjacent cycle vertices.
    Deg2Adjacent,
    /// Degree 2, the outside edges are two steps apart on the cycle.
    Deg2Distance2,
    /// Degree 4, three cycle edges.
    Deg4Default,
    /// Degree 4, the three-edge gadget would disconnect the component.
    Deg4Alternative,
}

impl GadgetCase {
    pub fn name(self) -> &'static str {
        match self {
            GadgetCase::Deg2Adjacent => "deg2-adjacent",
            GadgetCase::Deg2Distance2 => "deg2-distance2",
            GadgetCase::Deg4Default => "deg4-default",
            GadgetCase::Deg4Alternative => "deg4-alternative",
        }
    }
}

/// One super-vertex expansion, with the checks made right after it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionEvent {
    pub sv: VertexId,
    pub degree: usize,
    pub case: GadgetCase,
    pub vertices_added: usize,
    pub edges_added: usize,
    /// Cycle-edge multiplicities in cycle order.
    pub gadget: [u8; 5],
    pub even: bool,
    pub connected: bool,
}

/// Per-component accounting. `k1`/`k2` count super-vertices of degree 2/4
/// and `k3` plain vertices, all before expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentStats {
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
    pub vertices: usize,
    pub edges: usize,
}

impl ComponentStats {
    /// `⌊4|V|/3⌋ − 2`, the per-component edge budget.
    pub fn budget(&self) -> usize {
        (4 * self.vertices / 3).saturating_sub(2)
    }
}

/// One connected piece of the solution during expansion.
#[derive(Clone, Debug)]
pub struct ComponentView {
    pub subgraph: EvenSubgraph,
    /// Super-vertices of this component still to expand, ascending.
    pub pending: Vec<SuperVertexRecord>,
}

/// Everything produced by [`expand`].
#[derive(Clone, Debug)]
pub struct Expansion {
    /// Connected even subgraphs of the original graph, vertex-disjoint and
    /// together spanning.
    pub parts: Vec<EvenSubgraph>,
    pub stats: Vec<ComponentStats>,
    pub events: Vec<ExpansionEvent>,
}

/// The original graph with every compressed cycle contracted to its
/// super-vertex. Edge ids are those of `g0`.
pub fn host_graph(g0: &Multigraph, ledger: &ProvenanceLedger) -> Result<Multigraph> {
    let mut h = g0.clone();
    for rec in ledger.compressions() {
        h.insert_vertex(rec.sv)?;
        let set: BTreeSet<VertexId> = rec.cycle.into_iter().collect();
        for &v in &rec.cycle {
            for e in h.incident(v).to_vec() {
                let Some(edge) = h.edge(e) else { continue };
                if set.contains(&edge.u) && set.contains(&edge.v) {
                    h.remove_edge(e)?;
                } else {
                    h.reattach(e, v, rec.sv)?;
                }
            }
            h.remove_vertex(v)?;
        }
    }
    Ok(h)
}

/// Replaces each super-edge in `x` by the two edges it stands for, at the
/// same multiplicity. Later super-edges may contain earlier ones, so records
/// are processed newest first.
pub fn replace_super_edges(x: &EvenSubgraph, ledger: &ProvenanceLedger) -> EvenSubgraph {
    let mut out = x.clone();
    for rec in ledger.split_offs().rev() {
        let m = out.mult(rec.se);
        if m > 0 {
            out.set(rec.se, 0);
            for (e, _) in rec.replaced {
                out.add(e, m);
            }
        }
    }
    out
}

fn degree_at(host: &Multigraph, w: &EvenSubgraph, v: VertexId) -> usize {
    host.incident(v)
        .iter()
        .map(|&e| {
            let m = w.mult(e) as usize;
            if host.edge(e).unwrap().is_loop() {
                2 * m
            } else {
                m
            }
        })
        .sum()
}

fn is_connected(host: &Multigraph, w: &EvenSubgraph) -> bool {
    w.components(host).len() <= 1
}

/// Expands a super-vertex of degree 2 in `w`.
pub fn expand_deg2(
    host: &mut Multigraph,
    g0: &Multigraph,
    w: &mut EvenSubgraph,
    rec: &SuperVertexRecord,
) -> Result<ExpansionEvent> {
    expand_checked(host, g0, w, rec, 2)
}

/// Expands a super-vertex of degree 4 in `w`.
pub fn expand_deg4(
    host: &mut Multigraph,
    g0: &Multigraph,
    w: &mut EvenSubgraph,
    rec: &SuperVertexRecord,
) -> Result<ExpansionEvent> {
    expand_checked(host, g0, w, rec, 4)
}

fn expand_checked(
    host: &mut Multigraph,
    g0: &Multigraph,
    w: &mut EvenSubgraph,
    rec: &SuperVertexRecord,
    want: usize,
) -> Result<ExpansionEvent> {
    let d = degree_at(host, w, rec.sv);
    if d != want {
        return Err(Error::rejected(format!(
            "{} has degree {d}, expected {want}",
            rec.sv
        )));
    }
    expand_super_vertex(host, g0, w, rec)
}

/// Puts the cycle of `rec` back into `host` in place of its super-vertex and
/// adds the cheapest gadget that keeps `w` even, spanning and connected.
///
/// Gadgets are all multiplicity vectors in {0,1,2} over the five cycle
/// edges, at most 5 copies for degree 2 and 4 for degree 4, tried by total
/// copies and then lexicographically.
pub fn expand_super_vertex(
    host: &mut Multigraph,
    g0: &Multigraph,
    w: &mut EvenSubgraph,
    rec: &SuperVertexRecord,
) -> Result<ExpansionEvent> {
    let sv = rec.sv;
    let degree = degree_at(host, w, sv);
    let budget = match degree {
        2 => 5,
        4 => 4,
        d => {
            return Err(Error::rejected(format!(
                "{sv} has degree {d} in the component"
            )))
        }
    };
    let was_connected = is_connected(host, w);

    for v in rec.cycle {
        host.insert_vertex(v)?;
    }
    let mut ext = [0usize; 5];
    for e in host.incident(sv).to_vec() {
        let orig = g0.edge(e).ok_or(Error::UnknownEdge(e))?;
        let i = rec
            .cycle
            .iter()
            .position(|&c| c == orig.u || c == orig.v)
            .ok_or_else(|| Error::internal(format!("{e} does not touch the cycle of {sv}")))?;
        host.reattach(e, sv, rec.cycle[i])?;
        ext[i] += w.mult(e) as usize;
    }
    host.remove_vertex(sv)?;
    for i in 0..5 {
        host.insert_edge(rec.cycle_edges[i], rec.cycle[i], rec.cycle[(i + 1) % 5])?;
    }
    for &(e, u, v) in &rec.chords {
        host.insert_edge(e, u, v)?;
    }

    let mut candidates: Vec<(usize, [u8; 5])> = Vec::new();
    for code in 0..243u32 {
        let mut m = [0u8; 5];
        let mut c = code;
        for slot in &mut m {
            *slot = (c % 3) as u8;
            c /= 3;
        }
        let total: usize = m.iter().map(|&k| k as usize).sum();
        if total > budget {
            continue;
        }
        let ok = (0..5).all(|i| {
            let deg = ext[i] + m[i] as usize + m[(i + 4) % 5] as usize;
            deg.is_multiple_of(2) && deg >= 2
        });
        if ok {
            candidates.push((total, m));
        }
    }
    candidates.sort();

    for (total, m) in candidates {
        let mut trial = w.clone();
        for (&e, &k) in rec.cycle_edges.iter().zip(&m) {
            trial.add(e, k);
        }
        let connected = is_connected(host, &trial);
        if !connected && was_connected {
            continue;
        }
        let ports: Vec<usize> = (0..5).filter(|&i| ext[i] > 0).collect();
        let case = match (degree, total) {
            (2, _) => {
                let gap = ports.last().unwrap() - ports[0];
                if ports.len() == 2 && (gap == 1 || gap == 4) {
                    GadgetCase::Deg2Adjacent
                } else {
                    GadgetCase::Deg2Distance2
                }
            }
            (_, 3) => GadgetCase::Deg4Default,
            _ => GadgetCase::Deg4Alternative,
        };
        let even = trial.is_even(host);
        *w = trial;
        return Ok(ExpansionEvent {
            sv,
            degree,
            case,
            vertices_added: 4,
            edges_added: total,
            gadget: m,
            even,
            connected,
        });
    }
    Err(Error::internal(format!(
        "no connected gadget within budget at {sv}"
    )))
}

/// Expands every pending super-vertex of one component, ascending.
pub fn expand_component(
    host: &mut Multigraph,
    g0: &Multigraph,
    view: ComponentView,
) -> Result<(EvenSubgraph, Vec<ExpansionEvent>)> {
    let mut w = view.subgraph;
    let mut events = Vec::new();
    for rec in &view.pending {
        events.push(expand_super_vertex(host, g0, &mut w, rec)?);
    }
    Ok((w, events))
}

/// Turns the final 2-factor of the compressed graph into connected even
/// subgraphs of `g0`, one per component.
pub fn expand(g0: &Multigraph, x: &EvenSubgraph, ledger: &ProvenanceLedger) -> Result<Expansion> {
    let mut host = host_graph(g0, ledger)?;
    let xh = replace_super_edges(x, ledger);
    xh.check_host(&host)?;
    if !xh.is_even(&host) || !xh.is_spanning(&host) {
        return Err(Error::internal(
            "super-edge replacement is not a spanning even subgraph",
        ));
    }
    let records: Vec<&SuperVertexRecord> = ledger.compressions().collect();
    let comps = xh.components(&host);

    let mut parts = Vec::new();
    let mut stats = Vec::new();
    let mut events = Vec::new();
    for comp in &comps {
        let subgraph = xh.restrict(&host, comp);
        let mut pending: Vec<SuperVertexRecord> = records
            .iter()
            .filter(|r| comp.contains(&r.sv))
            .map(|&r| r.clone())
            .collect();
        pending.sort_by_key(|r| r.sv);
        let (mut k1, mut k2) = (0, 0);
        for r in &pending {
            match degree_at(&host, &subgraph, r.sv) {
                2 => k1 += 1,
                _ => k2 += 1,
            }
        }
        let k3 = comp.len() - pending.len();
        let (w, ev) = expand_component(&mut host, g0, ComponentView { subgraph, pending })?;
        stats.push(ComponentStats {
            k1,
            k2,
            k3,
            vertices: w.components(g0).first().map_or(0, |c| c.len()),
            edges: w.edge_count(),
        });
        parts.push(w);
        events.extend(ev);
    }
    debug_assert_eq!(host, *g0);
    Ok(Expansion {
        parts,
        stats,
        events,
    })
}

/// Which cycle edges of `rec` the event's gadget used.
pub fn gadget_edges(rec: &SuperVertexRecord, ev: &ExpansionEvent) -> Vec<(EdgeId, u8)> {
    (0..5)
        .filter(|&i| ev.gadget[i] > 0)
        .map(|i| (rec.cycle_edges[i], ev.gadget[i]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compress::compression_loop;
    use crate::generate::{generate, named};

    fn one_cycle_host() -> (Multigraph, SuperVertexRecord) {
        // Petersen with its outer cycle contracted
        let g = named("petersen").unwrap();
        let x = EvenSubgraph::from_edges((0..5).map(EdgeId));
        let mut all = x.clone();
        all.merge(&EvenSubgraph::from_edges((10..15).map(EdgeId)));
        let c = all.cycles(&g).unwrap().remove(0);
        let (h, rec) = crate::compress::compress_5cycle(&g, &c, &ProvenanceLedger::new()).unwrap();
        (h, rec)
    }

    #[test]
    fn adjacent_ports_take_the_long_path() {
        let g0 = named("petersen").unwrap();
        let (mut host, rec) = one_cycle_host();
        // spokes from outer vertices 0 and 1 (edges 5 and 6) plus a path
        // through the inner vertices 5..9 closing the loop: 5-7-9-6
        let mut w = EvenSubgraph::from_edges([5, 6, 10, 12, 14].map(EdgeId));
        // inner edges: 10=(5,7) 11=(6,8) 12=(7,9) 13=(8,5) 14=(9,6)
        assert_eq!(degree_at(&host, &w, rec.sv), 2);
        let ev = expand_deg2(&mut host, &g0, &mut w, &rec).unwrap();
        assert_eq!(ev.case, GadgetCase::Deg2Adjacent);
        assert_eq!((ev.vertices_added, ev.edges_added), (4, 4));
        assert!(ev.even && ev.connected);
        // path 1-2-3-4-0 uses cycle edges 1,2,3,4
        assert_eq!(ev.gadget, [0, 1, 1, 1, 1]);
    }

    #[test]
    fn distance_two_ports_double_one_edge() {
        let g0 = named("petersen").unwrap();
        let (mut host, rec) = one_cycle_host();
        // spokes at outer 0 and 2 (edges 5, 7); inner path 5-8-6-9-7
        let mut w = EvenSubgraph::from_edges([5, 7, 13, 11, 14, 12].map(EdgeId));
        let ev = expand_deg2(&mut host, &g0, &mut w, &rec).unwrap();
        assert_eq!(ev.case, GadgetCase::Deg2Distance2);
        assert_eq!(ev.edges_added, 5);
        assert!(ev.even && ev.connected);
        assert_eq!(ev.gadget.iter().filter(|&&m| m == 2).count(), 1);
        assert!(w.is_spanning(&host) || w.components(&host).len() == 1);
    }

    // inner edges: 10=(5,7) 11=(6,8) 12=(7,9) 13=(8,5) 14=(9,6); spokes 5..9

    #[test]
    fn degree_four_default_gadget() {
        let g0 = named("petersen").unwrap();
        let (mut host, rec) = one_cycle_host();
        // outer 0~2 via 5-7 and 1~3 via 6-8
        let mut w = EvenSubgraph::from_edges([5, 6, 7, 8, 10, 11].map(EdgeId));
        let ev = expand_deg4(&mut host, &g0, &mut w, &rec).unwrap();
        assert_eq!(ev.case, GadgetCase::Deg4Default);
        assert_eq!((ev.vertices_added, ev.edges_added), (4, 3));
        assert!(ev.even && ev.connected);
        // drops 0-1 and 2-3
        assert_eq!(ev.gadget, [0, 1, 0, 1, 1]);
    }

    #[test]
    fn degree_four_cut_needs_alternative() {
        let g0 = named("petersen").unwrap();
        let (mut host, rec) = one_cycle_host();
        // outer 0~3 via 5-8 and 1~2 via 6-9-7; dropping 0-1 and 2-3
        // would leave two cycles
        let mut w = EvenSubgraph::from_edges([5, 6, 7, 8, 13, 14, 12].map(EdgeId));
        assert!(w.is_even(&host));
        let ev = expand_deg4(&mut host, &g0, &mut w, &rec).unwrap();
        assert_eq!(ev.case, GadgetCase::Deg4Alternative);
        assert_eq!(ev.edges_added, 4);
        assert!(ev.even && ev.connected);
        assert_eq!(w.components(&host).len(), 1);
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let g0 = named("petersen").unwrap();
        let (mut host, rec) = one_cycle_host();
        let mut w = EvenSubgraph::from_edges([5, 6, 10, 12, 14].map(EdgeId));
        assert!(expand_deg4(&mut host, &g0, &mut w, &rec).is_err());
    }

    #[test]
    fn replacement_without_super_edges_is_identity() {
        let x = EvenSubgraph::from_edges([1, 2, 3].map(EdgeId));
        assert_eq!(replace_super_edges(&x, &ProvenanceLedger::new()), x);
    }

    #[test]
    fn full_expansion_is_even_connected_and_within_budget() {
        let mut compressed = 0;
        for seed in 0..60 {
            let n = 10 + 2 * (seed % 30) as usize;
            let g = generate(&format!("random:n={n},seed={seed}")).unwrap();
            let out = compression_loop(&g).unwrap();
            compressed += out.ledger.compressions().count();
            let exp = expand(&g, &out.two_factor, &out.ledger).unwrap();
            let mut seen = BTreeSet::new();
            for (w, s) in exp.parts.iter().zip(&exp.stats) {
                assert!(w.is_even(&g));
                let comps = w.components(&g);
                assert_eq!(comps.len(), 1);
                assert!(w.max_mult() <= 2);
                assert_eq!(s.vertices, 5 * (s.k1 + s.k2) + s.k3);
                assert!(s.edges <= 6 * (s.k1 + s.k2) + s.k3);
                assert!(s.edges <= s.budget(), "{s:?}");
                for v in &comps[0] {
                    assert!(seen.insert(*v));
                }
            }
            assert_eq!(seen.len(), n);
            for ev in &exp.events {
                assert!(ev.even && ev.connected && ev.vertices_added == 4);
                assert!(ev.edges_added <= if ev.degree == 2 { 5 } else { 4 });
            }
        }
        assert!(compressed > 0);
    }

    #[test]
    fn petersen_expands_to_a_single_component() {
        let g = named("petersen").unwrap();
        let out = compression_loop(&g).unwrap();
        let exp = expand(&g, &out.two_factor, &out.ledger).unwrap();
        assert_eq!(exp.parts.len(), 1);
        assert!(exp.parts[0].edge_count() <= 11);
    }
}
