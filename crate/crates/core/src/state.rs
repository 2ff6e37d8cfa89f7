//! States: a perfect matching turned into sites on a system of loops.
//!
//! Every matched edge is removed together with its two endpoints and leaves
//! a site: four loose ends, two at each former endpoint, joined in pairs
//! either in parallel or crossed. The loops that result must be colored so
//! that the two strands through each site differ. Summed over all switch
//! settings this counts the proper edge colorings of the graph.
//!
//! At each endpoint the two loose ends are ordered by the node's incidence
//! order; `Parallel` joins equal indices and `Crossed` swaps them.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{bridges_per_component, CubicGraph, EdgeId, HalfEdge, NodeId};
use crate::matching::{MatchingError, PerfectMatching};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error("expected {expected} switches, got {got}")]
    SwitchCount { expected: usize, got: usize },
    #[error("matching has {0} edges; at most 63 sites can be enumerated")]
    TooManySites(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Switch {
    Parallel,
    Crossed,
}

impl Switch {
    /// Switch vector whose bit `i` set means site `i` is crossed.
    pub fn vector(mask: u64, len: usize) -> Vec<Switch> {
        (0..len)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Switch::Crossed
                } else {
                    Switch::Parallel
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Site {
    pub edge: EdgeId,
    /// The two former endpoints of `edge`.
    pub nodes: [NodeId; 2],
    /// Loose ends at each endpoint, in incidence order.
    pub ends: [[HalfEdge; 2]; 2],
    pub switch: Switch,
}

impl Site {
    /// The end joined to `h` through this site.
    fn partner(&self, h: HalfEdge) -> HalfEdge {
        let (side, k) = (0..2)
            .flat_map(|s| (0..2).map(move |k| (s, k)))
            .find(|&(s, k)| self.ends[s][k] == h)
            .expect("half-edge belongs to the site");
        let k = match self.switch {
            Switch::Parallel => k,
            Switch::Crossed => 1 - k,
        };
        self.ends[1 - side][k]
    }
}

/// A closed loop, as the complement edges it runs along.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Loop {
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Clone)]
pub struct State {
    graph: CubicGraph,
    matching: PerfectMatching,
    sites: Vec<Site>,
    loops: Vec<Loop>,
    /// Per site, the loops of its two strands.
    site_edges: Vec<(usize, usize)>,
}

pub fn make_state(
    g: &CubicGraph,
    m: &PerfectMatching,
    switches: &[Switch],
) -> Result<State, StateError> {
    let m = PerfectMatching::new(g, m.edges().to_vec())?;
    if switches.len() != m.len() {
        return Err(StateError::SwitchCount {
            expected: m.len(),
            got: switches.len(),
        });
    }
    let sites: Vec<Site> = m
        .edges()
        .iter()
        .zip(switches)
        .map(|(&e, &switch)| {
            let (u, v) = g.endpoints(e);
            let loose = |w: NodeId| {
                let hs: Vec<HalfEdge> = g.incident(w).into_iter().filter(|h| h.edge != e).collect();
                [hs[0], hs[1]]
            };
            Site {
                edge: e,
                nodes: [u, v],
                ends: [loose(u), loose(v)],
                switch,
            }
        })
        .collect();

    let mut site_at = vec![0; g.node_count()];
    for (i, s) in sites.iter().enumerate() {
        site_at[s.nodes[0]] = i;
        site_at[s.nodes[1]] = i;
    }
    let mut loop_of = vec![usize::MAX; g.edge_count()];
    let mut loops = Vec::new();
    for first in 0..g.edge_count() {
        if m.contains(first) || loop_of[first] != usize::MAX {
            continue;
        }
        let id = loops.len();
        let mut edges = Vec::new();
        let start = HalfEdge::new(first, 0);
        let mut h = start;
        loop {
            loop_of[h.edge] = id;
            edges.push(h.edge);
            let arrive = h.opposite();
            h = sites[site_at[g.node_of(arrive)]].partner(arrive);
            if h == start {
                break;
            }
        }
        loops.push(Loop { edges });
    }
    let site_edges = sites
        .iter()
        .map(|s| (loop_of[s.ends[0][0].edge], loop_of[s.ends[0][1].edge]))
        .collect();
    Ok(State {
        graph: g.clone(),
        matching: m,
        sites,
        loops,
        site_edges,
    })
}

impl State {
    pub fn graph(&self) -> &CubicGraph {
        &self.graph
    }

    pub fn matching(&self) -> &PerfectMatching {
        &self.matching
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn loops(&self) -> &[Loop] {
        &self.loops
    }

    pub fn switches(&self) -> Vec<Switch> {
        self.sites.iter().map(|s| s.switch).collect()
    }

    /// One vertex per loop, one edge per site.
    pub fn site_graph(&self) -> (usize, &[(usize, usize)]) {
        (self.loops.len(), &self.site_edges)
    }

    pub fn summary(&self) -> StateSummary {
        StateSummary {
            switches: self.switches(),
            loops: self.loops.len(),
            site_edges: self.site_edges.clone(),
            count: count_state_colorings(self),
        }
    }
}

/// Serializable digest of one state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateSummary {
    pub switches: Vec<Switch>,
    pub loops: usize,
    pub site_edges: Vec<(usize, usize)>,
    pub count: u64,
}

/// Colorings of the loops by three colors with the two strands at every
/// site colored differently.
pub fn count_state_colorings(s: &State) -> u64 {
    vertex_colorings(s.loops.len(), &s.site_edges)
}

/// Above this many vertices the count goes through the chromatic polynomial.
const BACKTRACK_LIMIT: usize = 15;

/// Proper 3-vertex-colorings of a multigraph on `n` vertices.
pub fn vertex_colorings(n: usize, edges: &[(usize, usize)]) -> u64 {
    if edges.iter().any(|&(a, b)| a == b) {
        return 0;
    }
    if n <= BACKTRACK_LIMIT {
        vertex_colorings_backtrack(n, edges)
    } else {
        chromatic_at_three(n, edges)
    }
}

pub(crate) fn vertex_colorings_backtrack(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn go(v: usize, adj: &[Vec<usize>], colors: &mut [u8]) -> u64 {
        if v == adj.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..3 {
            if adj[v].iter().all(|&w| w >= v || colors[w] != c) {
                colors[v] = c;
                total += go(v + 1, adj, colors);
            }
        }
        total
    }
    go(0, &adj, &mut vec![0; n])
}

/// `P(G, 3)` by deletion–contraction on the simple graph underlying `edges`.
pub(crate) fn chromatic_at_three(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut simple: Vec<(usize, usize)> =
        edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    simple.sort_unstable();
    simple.dedup();
    chromatic_signed(n, simple)
        .try_into()
        .expect("chromatic value is non-negative")
}

fn chromatic_signed(n: usize, edges: Vec<(usize, usize)>) -> i128 {
    if edges.iter().any(|&(a, b)| a == b) {
        return 0;
    }
    let Some(&(a, b)) = edges.last() else {
        return 3i128.pow(n as u32);
    };
    let deleted: Vec<_> = edges[..edges.len() - 1].to_vec();
    // contract b into a, then renumber the last vertex into b's place
    let last = n - 1;
    let rename = |x: usize| {
        let x = if x == b { a } else { x };
        if x == last {
            b
        } else {
            x
        }
    };
    let mut contracted: Vec<(usize, usize)> = deleted
        .iter()
        .map(|&(x, y)| {
            let (x, y) = (rename(x), rename(y));
            (x.min(y), x.max(y))
        })
        .collect();
    contracted.sort_unstable();
    contracted.dedup();
    chromatic_signed(n, deleted) - chromatic_signed(n - 1, contracted)
}

/// Sum of state counts over all `2^|M|` switch vectors.
pub fn logical_expansion_count(g: &CubicGraph, m: &PerfectMatching) -> Result<u64, StateError> {
    let m = PerfectMatching::new(g, m.edges().to_vec())?;
    if m.len() > 63 {
        return Err(StateError::TooManySites(m.len()));
    }
    (0..1u64 << m.len())
        .into_par_iter()
        .map(|mask| {
            make_state(g, &m, &Switch::vector(mask, m.len())).map(|s| count_state_colorings(&s))
        })
        .try_reduce(
            || 0,
            |a, b| Ok(a.checked_add(b).expect("state sum overflowed u64")),
        )
}

/// Every switch vector with its state, in mask order.
pub fn all_states(g: &CubicGraph, m: &PerfectMatching) -> Result<Vec<State>, StateError> {
    if m.len() > 63 {
        return Err(StateError::TooManySites(m.len()));
    }
    (0..1u64 << m.len())
        .map(|mask| make_state(g, m, &Switch::vector(mask, m.len())))
        .collect()
}

/// Replaces every site by an edge between two trivalent nodes.
pub fn squeeze(s: &State) -> CubicGraph {
    let mut edges = vec![(usize::MAX, usize::MAX); s.graph.edge_count()];
    for site in &s.sites {
        edges[site.edge] = (site.nodes[0], site.nodes[1]);
        for (side, ends) in site.ends.iter().enumerate() {
            for h in ends {
                let slot = &mut edges[h.edge];
                if h.end == 0 {
                    slot.0 = site.nodes[side];
                } else {
                    slot.1 = site.nodes[side];
                }
            }
        }
    }
    CubicGraph::new(s.graph.node_count(), edges).expect("squeezing rebuilds a cubic graph")
}

/// Whether some site becomes a bridge once the state is squeezed.
pub fn state_has_isthmus(s: &State) -> bool {
    let bridges = bridges_per_component(&squeeze(s));
    s.sites.iter().any(|site| bridges.contains(&site.edge))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::enumerate_perfect_matchings;

    fn theta() -> CubicGraph {
        CubicGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn theta_states() {
        let g = theta();
        let m = PerfectMatching::new(&g, vec![0]).unwrap();
        let par = make_state(&g, &m, &[Switch::Parallel]).unwrap();
        assert_eq!(par.loops().len(), 2);
        assert_eq!(par.site_graph().1, &[(0, 1)]);
        assert_eq!(count_state_colorings(&par), 6);
        let crossed = make_state(&g, &m, &[Switch::Crossed]).unwrap();
        assert_eq!(crossed.loops().len(), 1);
        assert_eq!(crossed.site_graph().1, &[(0, 0)]);
        assert_eq!(count_state_colorings(&crossed), 0);
        assert_eq!(logical_expansion_count(&g, &m).unwrap(), 6);
        assert_eq!(squeeze(&par), g);
        assert_eq!(squeeze(&crossed), g);
        assert!(!state_has_isthmus(&par));
    }

    #[test]
    fn dumbbell_site_is_an_isthmus() {
        let g = CubicGraph::new(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        let m = &enumerate_perfect_matchings(&g)[0];
        for s in all_states(&g, m).unwrap() {
            assert!(state_has_isthmus(&s));
            assert_eq!(count_state_colorings(&s), 0);
        }
    }

    #[test]
    fn small_site_graphs() {
        assert_eq!(vertex_colorings(2, &[(0, 1)]), 6);
        assert_eq!(vertex_colorings(1, &[(0, 0)]), 0);
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert_eq!(vertex_colorings(4, &k4), 0);
    }

    #[test]
    fn deletion_contraction_agrees_with_backtracking() {
        let cases: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (3, vec![]),
            (3, vec![(0, 1), (1, 2), (2, 0)]),
            (4, vec![(0, 1), (0, 1), (1, 2), (2, 3), (3, 0)]),
            (5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
            (6, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (4, 5)]),
            (
                7,
                vec![(0, 3), (1, 4), (2, 5), (3, 6), (6, 0), (5, 4), (1, 2)],
            ),
        ];
        for (n, edges) in cases {
            assert_eq!(
                chromatic_at_three(n, &edges),
                vertex_colorings_backtrack(n, &edges),
                "{edges:?}"
            );
        }
    }

    #[test]
    fn rejects_wrong_switch_count() {
        let g = theta();
        let m = PerfectMatching::new(&g, vec![1]).unwrap();
        assert_eq!(
            make_state(&g, &m, &[]).unwrap_err(),
            StateError::SwitchCount {
                expected: 1,
                got: 0
            }
        );
    }
}
