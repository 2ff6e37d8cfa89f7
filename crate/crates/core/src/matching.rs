//! Perfect matchings, the cycles left after deleting them, and the two
//! directions linking even matchings with 3-edge-colorings.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{is_proper, Color, EdgeColoring};
use crate::graph::{CubicGraph, EdgeId, HalfEdge, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("edge set is not a perfect matching")]
    NotAMatching,
    #[error("complement cycle {cycle} has odd length {length}")]
    OddCycle { cycle: usize, length: usize },
    #[error("coloring is not proper")]
    ImproperColoring,
}

/// A set of node-disjoint non-loop edges covering every node. Sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PerfectMatching(Vec<EdgeId>);

impl PerfectMatching {
    /// Checks that `edges` is a perfect matching of `g`.
    pub fn new(g: &CubicGraph, mut edges: Vec<EdgeId>) -> Result<Self, MatchingError> {
        edges.sort_unstable();
        edges.dedup();
        let mut covered = vec![false; g.node_count()];
        for &e in &edges {
            if e >= g.edge_count() || g.is_loop(e) {
                return Err(MatchingError::NotAMatching);
            }
            let (u, v) = g.endpoints(e);
            if covered[u] || covered[v] {
                return Err(MatchingError::NotAMatching);
            }
            covered[u] = true;
            covered[v] = true;
        }
        if covered.iter().all(|&c| c) {
            Ok(PerfectMatching(edges))
        } else {
            Err(MatchingError::NotAMatching)
        }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// Matched edge covering each node.
    pub fn partner_edges(&self, g: &CubicGraph) -> Vec<EdgeId> {
        let mut at = vec![usize::MAX; g.node_count()];
        for &e in &self.0 {
            let (u, v) = g.endpoints(e);
            at[u] = e;
            at[v] = e;
        }
        at
    }
}

/// All perfect matchings, by backtracking on the lowest uncovered node.
pub fn enumerate_perfect_matchings(g: &CubicGraph) -> Vec<PerfectMatching> {
    fn go(
        g: &CubicGraph,
        covered: &mut [bool],
        chosen: &mut Vec<EdgeId>,
        out: &mut Vec<PerfectMatching>,
    ) {
        let Some(v) = covered.iter().position(|&c| !c) else {
            let mut m = chosen.clone();
            m.sort_unstable();
            out.push(PerfectMatching(m));
            return;
        };
        for h in g.incident(v) {
            if g.is_loop(h.edge) {
                continue;
            }
            let w = g.node_of(h.opposite());
            if covered[w] {
                continue;
            }
            covered[v] = true;
            covered[w] = true;
            chosen.push(h.edge);
            go(g, covered, chosen, out);
            chosen.pop();
            covered[v] = false;
            covered[w] = false;
        }
    }
    let mut out = Vec::new();
    go(
        g,
        &mut vec![false; g.node_count()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// One cycle of `G - M`, as a closed walk. `steps[i]` leaves `nodes[i]`
/// through that half-edge; a loop of `G` gives a single step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub nodes: Vec<NodeId>,
    #[serde(skip)]
    pub steps: Vec<HalfEdge>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementCycles {
    pub cycles: Vec<Cycle>,
}

impl ComplementCycles {
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Cycle::len).collect()
    }

    pub fn all_even(&self) -> bool {
        self.cycles.iter().all(|c| c.len() % 2 == 0)
    }
}

pub fn complement_cycles(
    g: &CubicGraph,
    m: &PerfectMatching,
) -> Result<ComplementCycles, MatchingError> {
    let m = PerfectMatching::new(g, m.0.clone())?;
    let mut used = vec![false; g.edge_count()];
    for &e in m.edges() {
        used[e] = true;
    }
    let mut on_cycle = vec![false; g.node_count()];
    let mut cycles = Vec::new();
    for start in 0..g.node_count() {
        if on_cycle[start] {
            continue;
        }
        let mut c = Cycle {
            nodes: Vec::new(),
            steps: Vec::new(),
            edges: Vec::new(),
        };
        let mut x = start;
        loop {
            on_cycle[x] = true;
            let Some(h) = g.incident(x).into_iter().find(|h| !used[h.edge]) else {
                break;
            };
            used[h.edge] = true;
            c.nodes.push(x);
            c.steps.push(h);
            c.edges.push(h.edge);
            x = g.node_of(h.opposite());
            if x == start {
                break;
            }
        }
        cycles.push(c);
    }
    Ok(ComplementCycles { cycles })
}

pub fn is_even_matching(g: &CubicGraph, m: &PerfectMatching) -> Result<bool, MatchingError> {
    Ok(complement_cycles(g, m)?.all_even())
}

/// The `2^(#cycles)` colorings with `m` purple and each cycle alternating red/blue.
pub fn colorings_from_even_matching(
    g: &CubicGraph,
    m: &PerfectMatching,
) -> Result<Vec<EdgeColoring>, MatchingError> {
    colorings_from_even_matching_as(g, m, Color::P)
}

/// Like [`colorings_from_even_matching`], with `m` painted `matched` and the
/// cycles alternating the other two colors.
pub fn colorings_from_even_matching_as(
    g: &CubicGraph,
    m: &PerfectMatching,
    matched: Color,
) -> Result<Vec<EdgeColoring>, MatchingError> {
    let cc = complement_cycles(g, m)?;
    if let Some((i, c)) = cc.cycles.iter().enumerate().find(|(_, c)| c.len() % 2 == 1) {
        return Err(MatchingError::OddCycle {
            cycle: i,
            length: c.len(),
        });
    }
    let [a, b] = match matched {
        Color::R => [Color::B, Color::P],
        Color::B => [Color::R, Color::P],
        Color::P => [Color::R, Color::B],
    };
    let k = cc.cycles.len();
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u64..(1u64 << k) {
        let mut colors = vec![matched; g.edge_count()];
        for (i, cyc) in cc.cycles.iter().enumerate() {
            let flip = (mask >> i) & 1 == 1;
            for (j, &e) in cyc.edges.iter().enumerate() {
                colors[e] = if (j % 2 == 0) != flip { a } else { b };
            }
        }
        out.push(EdgeColoring(colors));
    }
    Ok(out)
}

/// The color class of `color` in a proper coloring, which is an even perfect matching.
pub fn matching_from_coloring(
    g: &CubicGraph,
    c: &EdgeColoring,
    color: Color,
) -> Result<PerfectMatching, MatchingError> {
    if !is_proper(g, c).map_err(|_| MatchingError::ImproperColoring)? {
        return Err(MatchingError::ImproperColoring);
    }
    PerfectMatching::new(g, c.class(color))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::enumerate_colorings;

    fn theta() -> CubicGraph {
        CubicGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    fn k4() -> CubicGraph {
        CubicGraph::new(4, vec![(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn theta_matchings() {
        let ms = enumerate_perfect_matchings(&theta());
        assert_eq!(ms.len(), 3);
        let cc = complement_cycles(&theta(), &ms[0]).unwrap();
        assert_eq!(cc.lengths(), vec![2]);
        assert_eq!(
            colorings_from_even_matching(&theta(), &ms[0])
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn dumbbell_bridge_matching_leaves_loops() {
        let g = CubicGraph::new(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        let ms = enumerate_perfect_matchings(&g);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].edges(), &[1]);
        let cc = complement_cycles(&g, &ms[0]).unwrap();
        assert_eq!(cc.lengths(), vec![1, 1]);
        assert!(!is_even_matching(&g, &ms[0]).unwrap());
        assert_eq!(
            colorings_from_even_matching(&g, &ms[0]),
            Err(MatchingError::OddCycle {
                cycle: 0,
                length: 1
            })
        );
    }

    #[test]
    fn k4_matchings_are_even_and_reconstruct_all_colorings() {
        let g = k4();
        let ms = enumerate_perfect_matchings(&g);
        assert_eq!(ms.len(), 3);
        let mut all = Vec::new();
        for m in &ms {
            assert_eq!(complement_cycles(&g, m).unwrap().lengths(), vec![4]);
            let cs = colorings_from_even_matching(&g, m).unwrap();
            assert_eq!(cs.len(), 2);
            all.extend(cs);
        }
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 6);
        let mut brute = enumerate_colorings(&g);
        brute.sort();
        assert_eq!(all, brute);
    }

    #[test]
    fn color_classes_are_matchings() {
        use Color::*;
        let m = matching_from_coloring(&theta(), &EdgeColoring(vec![R, B, P]), P).unwrap();
        assert_eq!(m.edges(), &[2]);
        assert!(is_even_matching(&theta(), &m).unwrap());
        assert_eq!(
            matching_from_coloring(&theta(), &EdgeColoring(vec![R, R, P]), P),
            Err(MatchingError::ImproperColoring)
        );
        for c in enumerate_colorings(&k4()) {
            for k in Color::ALL {
                let m = matching_from_coloring(&k4(), &c, k).unwrap();
                assert!(enumerate_perfect_matchings(&k4()).contains(&m));
            }
        }
    }

    #[test]
    fn rejects_non_matchings() {
        assert_eq!(
            PerfectMatching::new(&k4(), vec![0, 1]),
            Err(MatchingError::NotAMatching)
        );
        assert_eq!(
            PerfectMatching::new(&k4(), vec![0]),
            Err(MatchingError::NotAMatching)
        );
        let g = CubicGraph::new(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(
            PerfectMatching::new(&g, vec![0, 2]),
            Err(MatchingError::NotAMatching)
        );
    }
}
