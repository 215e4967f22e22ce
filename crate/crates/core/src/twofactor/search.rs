use std::collections::BTreeSet;

use super::RequiredEdges;
use crate::error::Result;
use crate::matching::{max_matching, two_factor_from_matching};
use crate::multigraph::{EdgeId, Multigraph};
use crate::subgraph::{Cycle, EvenSubgraph};

/// Exhaustive search for a 2-factor containing `req` whose cycles all have
/// at least `min_len` edges. `g` must be cubic.
///
/// Takes the complement of a perfect matching; if it has a short cycle
/// `e1..ek`, branches on which cycle edge enters the matching: branch `i`
/// forces `ei` and forbids `e1..e(i-1)`. The branches partition all perfect
/// matchings that break the cycle, so `None` means no such 2-factor exists.
pub fn search_two_factor(
    g: &Multigraph,
    req: Option<RequiredEdges>,
    min_len: usize,
) -> Result<Option<EvenSubgraph>> {
    g.check_cubic()?;
    let mut forced = BTreeSet::new();
    let mut forbidden = BTreeSet::new();
    if let Some(r) = req {
        forced.insert(r.forced_edge(g)?);
        forbidden.extend([r.first, r.second]);
    }
    branch(g, &forced, &forbidden, min_len)
}

fn branch(
    g: &Multigraph,
    forced: &BTreeSet<EdgeId>,
    forbidden: &BTreeSet<EdgeId>,
    min_len: usize,
) -> Result<Option<EvenSubgraph>> {
    let m = max_matching(g, forced, forbidden)?;
    if !m.perfect {
        return Ok(None);
    }
    let x = two_factor_from_matching(g, &m)?;
    let short: Option<Cycle> = x.cycles(g)?.into_iter().find(|c| c.len() < min_len);
    let Some(cycle) = short else {
        return Ok(Some(x));
    };
    let mut edges = cycle.edges;
    edges.sort();
    let mut forbid = forbidden.clone();
    for &e in &edges {
        if !forbidden.contains(&e) && !touches(g, e, forced) {
            let mut force = forced.clone();
            force.insert(e);
            if let Some(found) = branch(g, &force, &forbid, min_len)? {
                return Ok(Some(found));
            }
        }
        forbid.insert(e);
    }
    Ok(None)
}

fn touches(g: &Multigraph, e: EdgeId, set: &BTreeSet<EdgeId>) -> bool {
    let a = g.edge(e).unwrap();
    a.is_loop()
        || set.iter().any(|&f| {
            let b = g.edge(f).unwrap();
            [b.u, b.v].iter().any(|&v| v == a.u || v == a.v)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named;

    #[test]
    fn petersen_has_no_hamiltonian_cycle() {
        let g = named("petersen").unwrap();
        assert!(search_two_factor(&g, None, 10).unwrap().is_none());
        let x = search_two_factor(&g, None, 5).unwrap().unwrap();
        assert_eq!(x.cycles(&g).unwrap().len(), 2);
    }

    #[test]
    fn prism_avoids_triangles() {
        let g = named("prism").unwrap();
        let x = search_two_factor(&g, None, 5).unwrap().unwrap();
        assert_eq!(x.cycles(&g).unwrap()[0].len(), 6);
    }

    #[test]
    fn required_edges_are_respected() {
        let g = named("k33").unwrap();
        let inc = g.incident(crate::VertexId(2)).to_vec();
        let req = RequiredEdges::new(&g, crate::VertexId(2), inc[1], inc[2]).unwrap();
        let x = search_two_factor(&g, Some(req), 5).unwrap().unwrap();
        assert!(x.contains(inc[1]) && x.contains(inc[2]) && !x.contains(inc[0]));
    }
}
