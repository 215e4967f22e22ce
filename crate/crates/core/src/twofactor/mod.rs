//! 2-factors of cubic 3-edge-connected graphs in which every cycle has at
//! least `min(n, 5)` vertices and which contain two prescribed edges at a
//! common vertex.
//!
//! The default [`Strategy::Reduction`] is constructive:
//!
//! 1. an essential 3-edge cut splits the graph into two smaller cubic
//!    3-edge-connected graphs, solved one after the other so that the second
//!    is required to use the same two cut edges as the first;
//! 2. K4 is solved directly (all its 2-factors are Hamiltonian);
//! 3. 4-cycles are removed one at a time by replacing each with a single
//!    edge (see [`reduce`]), first those without required edges, then those
//!    containing both; a 4-cycle through the third edge at the required
//!    vertex is left alone, since that edge is never part of the 2-factor;
//! 4. what remains is matched with the third edge forced, and the
//!    reductions are undone in reverse order.
//!
//! [`Strategy::Search`] is an exhaustive branch-and-bound over perfect
//! matchings used as an independent cross-check and for K3,3.

mod decompose;
mod reduce;
mod search;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::{max_matching, two_factor_from_matching};
use crate::multigraph::{find_essential_3cut, EdgeId, Multigraph, VertexId};
use crate::subgraph::EvenSubgraph;

pub use decompose::{combine_solutions, decompose_at_3cut, CutSplit, RejoinRule};
pub use reduce::{eliminate_4cycles, FourCycleReduction, Reduced};
pub use search::search_two_factor;

/// Two distinct edges at a common vertex `hub` of degree 3 that the
/// 2-factor must contain. Equivalently, the third edge at `hub` must be in
/// the complementary perfect matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequiredEdges {
    pub hub: VertexId,
    pub first: EdgeId,
    pub second: EdgeId,
}

impl RequiredEdges {
    pub fn new(g: &Multigraph, hub: VertexId, first: EdgeId, second: EdgeId) -> Result<Self> {
        if !g.contains_vertex(hub) {
            return Err(Error::UnknownVertex(hub));
        }
        if g.degree(hub) != 3 {
            return Err(Error::rejected(format!(
                "required vertex {hub} has degree {}",
                g.degree(hub)
            )));
        }
        if first == second {
            return Err(Error::rejected("required edges must be distinct"));
        }
        for e in [first, second] {
            let edge = g.edge(e).ok_or(Error::UnknownEdge(e))?;
            if edge.is_loop() || (edge.u != hub && edge.v != hub) {
                return Err(Error::rejected(format!(
                    "{e} is not a proper edge at {hub}"
                )));
            }
        }
        Ok(RequiredEdges { hub, first, second })
    }

    /// Infers the hub as the common endpoint (the smaller one when the two
    /// edges are parallel).
    pub fn between(g: &Multigraph, first: EdgeId, second: EdgeId) -> Result<Self> {
        let a = g.edge(first).ok_or(Error::UnknownEdge(first))?;
        let b = g.edge(second).ok_or(Error::UnknownEdge(second))?;
        let hub = [a.u, a.v]
            .into_iter()
            .filter(|&x| x == b.u || x == b.v)
            .min()
            .ok_or_else(|| Error::rejected(format!("{first} and {second} share no endpoint")))?;
        Self::new(g, hub, first, second)
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        e == self.first || e == self.second
    }

    /// The third edge at the hub, which every compatible 2-factor avoids.
    pub fn forced_edge(&self, g: &Multigraph) -> Result<EdgeId> {
        g.incident(self.hub)
            .iter()
            .copied()
            .find(|&e| !self.contains(e))
            .ok_or_else(|| Error::internal("required vertex has no third edge"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Cut decomposition plus 4-cycle reduction.
    #[default]
    Reduction,
    /// Exhaustive search over perfect matchings.
    Search,
}

/// Smallest allowed cycle length for a graph on `n` vertices.
pub fn min_cycle_len(n: usize) -> usize {
    n.min(5)
}

/// A 2-factor of `g` containing `req` whose cycles all have length at
/// least `min(n, 5)`, built with the default strategy.
pub fn find_girth5_two_factor(g: &Multigraph, req: Option<RequiredEdges>) -> Result<EvenSubgraph> {
    find_girth5_two_factor_with(g, req, Strategy::default())
}

pub fn find_girth5_two_factor_with(
    g: &Multigraph,
    req: Option<RequiredEdges>,
    strategy: Strategy,
) -> Result<EvenSubgraph> {
    g.check_cubic_3ec()?;
    if let Some(r) = req {
        RequiredEdges::new(g, r.hub, r.first, r.second)?;
    }
    let x = match strategy {
        Strategy::Reduction => solve(g, req)?,
        Strategy::Search => search_two_factor(g, req, min_cycle_len(g.vertex_count()))?
            .ok_or_else(|| Error::internal("exhaustive search found no 2-factor"))?,
    };
    check_two_factor(g, &x, req)?;
    Ok(x)
}

/// Verifies the output contract of [`find_girth5_two_factor`].
pub fn check_two_factor(
    g: &Multigraph,
    x: &EvenSubgraph,
    req: Option<RequiredEdges>,
) -> Result<()> {
    x.check_host(g)?;
    let cycles = x.cycles(g)?;
    let min = min_cycle_len(g.vertex_count());
    if let Some(c) = cycles.iter().find(|c| c.len() < min) {
        return Err(Error::internal(format!(
            "2-factor has a cycle of length {} through {}",
            c.len(),
            c.vertices[0]
        )));
    }
    if let Some(r) = req {
        if !x.contains(r.first) || !x.contains(r.second) {
            return Err(Error::internal("2-factor misses a required edge"));
        }
    }
    Ok(())
}

/// Complement of a perfect matching that contains the forced edge.
fn matching_two_factor(g: &Multigraph, req: Option<RequiredEdges>) -> Result<EvenSubgraph> {
    let forced: BTreeSet<EdgeId> = match req {
        Some(r) => BTreeSet::from([r.forced_edge(g)?]),
        None => BTreeSet::new(),
    };
    let m = max_matching(g, &forced, &BTreeSet::new())?;
    if !m.perfect {
        return Err(Error::internal(
            "bridgeless cubic graph without a perfect matching",
        ));
    }
    two_factor_from_matching(g, &m)
}

fn solve(g: &Multigraph, req: Option<RequiredEdges>) -> Result<EvenSubgraph> {
    let n = g.vertex_count();
    if n == 4 {
        return matching_two_factor(g, req);
    }
    if let Some(cut) = find_essential_3cut(g)? {
        let split = decompose_at_3cut(g, &cut)?;
        return solve_split(&split, req);
    }
    if n <= 6 {
        return search_two_factor(g, req, min_cycle_len(n))?
            .ok_or_else(|| Error::internal("no 2-factor on a 6-vertex graph"));
    }
    let reduced = reduce::eliminate(g, req, false)?;
    if reduced.steps.is_empty() {
        return matching_two_factor(g, req);
    }
    let x = solve(&reduced.graph, reduced.req)?;
    reduced.lift(&x)
}

/// Solves the side holding the required vertex first, then imposes its pair
/// of cut edges on the other side.
fn solve_split(split: &CutSplit, req: Option<RequiredEdges>) -> Result<EvenSubgraph> {
    let rule = &split.rule;
    let first_is_g1 = req.is_none_or(|r| rule.side.contains(&r.hub));
    let (first, first_z, second, second_z) = if first_is_g1 {
        (&split.g1, rule.z1, &split.g2, rule.z2)
    } else {
        (&split.g2, rule.z2, &split.g1, rule.z1)
    };
    let x_first = solve(first, req)?;
    let pair: Vec<EdgeId> = first
        .incident(first_z)
        .iter()
        .copied()
        .filter(|&e| x_first.contains(e))
        .collect();
    let [a, b] = pair[..] else {
        return Err(Error::internal(
            "contracted vertex not of degree 2 in 2-factor",
        ));
    };
    let x_second = solve(second, Some(RequiredEdges::new(second, second_z, a, b)?))?;
    if first_is_g1 {
        combine_solutions(&x_first, &x_second, rule)
    } else {
        combine_solutions(&x_second, &x_first, rule)
    }
}
