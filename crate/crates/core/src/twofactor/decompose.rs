use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{contract, CutSpec, EdgeId, Multigraph, VertexId};
use crate::subgraph::EvenSubgraph;

/// How the two halves of a 3-cut decomposition fit back together.
///
/// `g1` keeps `side` and shrinks its complement to `z1`; `g2` keeps the
/// complement and shrinks `side` to `z2`. Both retain the crossing edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejoinRule {
    pub side: BTreeSet<VertexId>,
    pub crossing: [EdgeId; 3],
    pub z1: VertexId,
    pub z2: VertexId,
}

#[derive(Clone, Debug)]
pub struct CutSplit {
    pub g1: Multigraph,
    pub g2: Multigraph,
    pub rule: RejoinRule,
}

pub fn decompose_at_3cut(g: &Multigraph, cut: &CutSpec) -> Result<CutSplit> {
    let crossing: [EdgeId; 3] = cut
        .crossing
        .iter()
        .copied()
        .collect::<Vec<_>>()
        .try_into()
        .map_err(|_| Error::rejected(format!("cut has weight {}, expected 3", cut.weight())))?;
    if !cut.is_essential(g) {
        return Err(Error::rejected("cut is not essential"));
    }
    let other = cut.complement(g);
    let (g1, z1) = contract(g, &other)?;
    let (g2, z2) = contract(g, &cut.side)?;
    Ok(CutSplit {
        g1,
        g2,
        rule: RejoinRule {
            side: cut.side.clone(),
            crossing,
            z1,
            z2,
        },
    })
}

/// Joins a 2-factor of `g1` with one of `g2`. Both must use the same two
/// crossing edges.
pub fn combine_solutions(
    x1: &EvenSubgraph,
    x2: &EvenSubgraph,
    rule: &RejoinRule,
) -> Result<EvenSubgraph> {
    let used = |x: &EvenSubgraph| -> Vec<EdgeId> {
        rule.crossing
            .iter()
            .copied()
            .filter(|&e| x.contains(e))
            .collect()
    };
    let (a, b) = (used(x1), used(x2));
    if a.len() != 2 || a != b {
        return Err(Error::rejected(format!(
            "halves disagree on the cut: {a:?} vs {b:?}"
        )));
    }
    let mut x = x1.clone();
    x.merge(x2);
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named;
    use crate::multigraph::find_essential_3cut;

    #[test]
    fn prism_splits_into_two_k4() {
        let g = named("prism").unwrap();
        let cut = find_essential_3cut(&g).unwrap().unwrap();
        let split = decompose_at_3cut(&g, &cut).unwrap();
        for h in [&split.g1, &split.g2] {
            assert_eq!((h.vertex_count(), h.edge_count()), (4, 6));
            assert!(h.is_cubic());
        }
        // hamiltonian cycles of each K4 through the same two crossing edges
        let [c0, c1, _] = split.rule.crossing;
        let pick = |h: &Multigraph, z: VertexId| {
            let f = h
                .incident(z)
                .iter()
                .copied()
                .find(|&e| e != c0 && e != c1)
                .unwrap();
            let e = h.edge(f).unwrap();
            let opp = h
                .edges()
                .find(|o| ![o.u, o.v].iter().any(|&x| x == e.u || x == e.v))
                .unwrap();
            EvenSubgraph::from_edges(h.edge_ids().filter(|&x| x != f && x != opp.id))
        };
        let x1 = pick(&split.g1, split.rule.z1);
        let x2 = pick(&split.g2, split.rule.z2);
        let x = combine_solutions(&x1, &x2, &split.rule).unwrap();
        let cycles = x.cycles(&g).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 6);
    }

    #[test]
    fn mismatched_halves_are_rejected() {
        let g = named("prism").unwrap();
        let cut = find_essential_3cut(&g).unwrap().unwrap();
        let split = decompose_at_3cut(&g, &cut).unwrap();
        let [c0, c1, c2] = split.rule.crossing;
        let x1 = EvenSubgraph::from_edges([c0, c1]);
        let x2 = EvenSubgraph::from_edges([c1, c2]);
        assert!(combine_solutions(&x1, &x2, &split.rule).is_err());
    }

    #[test]
    fn inessential_cut_is_rejected() {
        let g = named("k4").unwrap();
        let side = BTreeSet::from([VertexId(0)]);
        let cut = crate::multigraph::cut_of(&g, &side);
        assert!(decompose_at_3cut(&g, &cut).is_err());
    }
}
