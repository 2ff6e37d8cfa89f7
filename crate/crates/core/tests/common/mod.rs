//! Independent oracles and shared corpora for the integration tests.
//!
//! The oracles deliberately avoid the library's search code: they walk raw
//! edge lists by plain enumeration.

#![allow(dead_code)]

use chromatic_bracket::diagram::{chord_immersion, Diagram};
use chromatic_bracket::generators::{self, NamedGraph};
use chromatic_bracket::CubicGraph;

/// Proper 3-edge-colorings by trying all `3^|E|` assignments.
pub fn oracle_count(g: &CubicGraph) -> u64 {
    let edges = g.edges();
    let m = edges.len();
    assert!(m <= 15, "oracle is exhaustive; keep it small");
    let mut colors = vec![0u8; m];
    let mut count = 0;
    for code in 0..3u64.pow(m as u32) {
        let mut x = code;
        for c in colors.iter_mut() {
            *c = (x % 3) as u8;
            x /= 3;
        }
        let mut seen = vec![0u8; g.node_count()];
        let mut ok = true;
        for (e, &(u, v)) in edges.iter().enumerate() {
            let bit = 1 << colors[e];
            if u == v || seen[u] & bit != 0 || seen[v] & bit != 0 {
                ok = false;
                break;
            }
            seen[u] |= bit;
            seen[v] |= bit;
        }
        count += ok as u64;
    }
    count
}

/// Perfect matchings as sorted edge sets, by trying every `n/2`-subset of edges.
pub fn oracle_matchings(g: &CubicGraph) -> Vec<Vec<usize>> {
    let edges = g.edges();
    let half = g.node_count() / 2;
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn go(
        start: usize,
        half: usize,
        edges: &[(usize, usize)],
        covered: &mut Vec<bool>,
        pick: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pick.len() == half {
            out.push(pick.clone());
            return;
        }
        for e in start..edges.len() {
            let (u, v) = edges[e];
            if u == v || covered[u] || covered[v] {
                continue;
            }
            covered[u] = true;
            covered[v] = true;
            pick.push(e);
            go(e + 1, half, edges, covered, pick, out);
            pick.pop();
            covered[u] = false;
            covered[v] = false;
        }
    }
    go(
        0,
        half,
        edges,
        &mut vec![false; g.node_count()],
        &mut pick,
        &mut out,
    );
    out
}

/// Graphs with at most 12 nodes used across criteria, with a label each.
pub fn small_corpus() -> Vec<(String, CubicGraph)> {
    let mut out: Vec<(String, CubicGraph)> = NamedGraph::FIXED
        .into_iter()
        .chain([NamedGraph::IsaacsJ(3)])
        .map(|n| (n.name(), n.graph()))
        .collect();
    for seed in 0..24 {
        let n = 2 + 2 * (seed as usize % 6);
        out.push((
            format!("random_cubic({n}, {seed})"),
            generators::random_cubic(n, seed),
        ));
    }
    for seed in 0..12 {
        let n = 4 + 2 * (seed as usize % 5);
        let d = generators::random_plane_cubic(n, seed);
        out.push((
            format!("random_plane_cubic({n}, {seed})"),
            d.underlying_graph().unwrap().graph,
        ));
    }
    out
}

/// The plane crossing-free diagrams: four named ones and 50 random ones up to 14 nodes.
pub fn plane_corpus() -> Vec<(String, Diagram)> {
    let mut out: Vec<(String, Diagram)> = [
        NamedGraph::Theta,
        NamedGraph::K4,
        NamedGraph::Prism,
        NamedGraph::Dumbbell,
    ]
    .into_iter()
    .map(|n| (n.name(), n.diagram()))
    .collect();
    for seed in 0..50 {
        let n = 2 + 2 * (seed as usize % 7);
        out.push((
            format!("random_plane_cubic({n}, {seed})"),
            generators::random_plane_cubic(n, seed),
        ));
    }
    out
}

pub fn identity_immersion(g: &CubicGraph) -> Diagram {
    let order: Vec<usize> = (0..g.node_count()).collect();
    chord_immersion(g, &order).unwrap()
}
