//! Test-instance supply: a few named cubic graphs and a seeded random
//! family grown from K4 by edge-edge bridging.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::multigraph::{is_k_edge_connected, Multigraph, VertexId};

pub const NAMED: [&str; 6] = ["k4", "prism", "petersen", "moebius-kantor", "k33", "cube"];

/// Generalized Petersen graph GP(k, s).
fn generalized_petersen(k: usize, s: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, (i + 1) % k));
    }
    for i in 0..k {
        edges.push((i, k + i));
    }
    for i in 0..k {
        let j = (i + s) % k;
        if i < j || s * 2 != k {
            edges.push((k + i, k + j));
        }
    }
    edges
}

pub fn named(name: &str) -> Result<Multigraph> {
    let (n, edges): (usize, Vec<(usize, usize)>) = match name {
        "k4" => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        "prism" => (
            6,
            vec![
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        ),
        "petersen" => (10, generalized_petersen(5, 2)),
        "moebius-kantor" => (16, generalized_petersen(8, 3)),
        "k33" => (
            6,
            (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect(),
        ),
        "cube" => (
            8,
            (0..8usize)
                .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
                .filter(|&(u, v)| u < v)
                .collect(),
        ),
        other => return Err(Error::rejected(format!("unknown graph name `{other}`"))),
    };
    Multigraph::from_edges(n, &edges)
}

/// Parses `random:n=<even>,seed=<s>` or a name from [`NAMED`].
pub fn generate(recipe: &str) -> Result<Multigraph> {
    let Some(params) = recipe.strip_prefix("random:") else {
        return named(recipe);
    };
    let mut n = None;
    let mut seed = 0u64;
    for part in params.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::rejected(format!("malformed recipe parameter `{part}`")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<u64>()
                .map_err(|_| Error::rejected(format!("`{key}` expects an integer, got `{v}`")))
        };
        match key.trim() {
            "n" => n = Some(parse(value)? as usize),
            "seed" => seed = parse(value)?,
            other => {
                return Err(Error::rejected(format!(
                    "unknown recipe parameter `{other}`"
                )))
            }
        }
    }
    let n = n.ok_or_else(|| Error::rejected("random recipe needs n=<even>"))?;
    random_cubic_3ec(n, seed)
}

/// Grows a cubic 3-edge-connected graph on `n` vertices from K4.
///
/// Each step subdivides two distinct edges and joins the two new vertices.
/// Edge connectivity is re-checked after every step; a failing candidate is
/// discarded and the next random pair is tried.
pub fn random_cubic_3ec(n: usize, seed: u64) -> Result<Multigraph> {
    if n % 2 == 1 {
        return Err(Error::rejected(format!(
            "cubic graphs have an even number of vertices, got {n}"
        )));
    }
    if n < 4 {
        return Err(Error::TooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = named("k4")?;
    while g.vertex_count() < n {
        loop {
            let ids: Vec<_> = g.edge_ids().collect();
            let i = rng.gen_range(0..ids.len());
            let mut j = rng.gen_range(0..ids.len() - 1);
            if j >= i {
                j += 1;
            }
            let mut h = g.clone();
            let e = h.remove_edge(ids[i])?;
            let f = h.remove_edge(ids[j])?;
            let p = h.add_vertex();
            let q = h.add_vertex();
            h.add_edge(e.u, p)?;
            h.add_edge(p, e.v)?;
            h.add_edge(f.u, q)?;
            h.add_edge(q, f.v)?;
            h.add_edge(p, q)?;
            if is_k_edge_connected(&h, 3) {
                g = h;
                break;
            }
        }
    }
    Ok(compact(&g))
}

/// Renumbers vertices to `0..n` and edges to `0..m`, both in ascending
/// order of their old ids.
pub fn compact(g: &Multigraph) -> Multigraph {
    let index: BTreeMap<VertexId, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let pairs: Vec<(usize, usize)> = g.edges().map(|e| (index[&e.u], index[&e.v])).collect();
    Multigraph::from_edges(index.len(), &pairs).expect("indices are in range")
}
