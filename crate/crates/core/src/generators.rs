//! Named fixtures and seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{chord_immersion, Diagram, Port};
use crate::graph::{CubicGraph, NodeId};
use crate::matching::PerfectMatching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedGraph {
    Theta,
    Dumbbell,
    DoubleDumbbell,
    K4,
    Prism,
    K33,
    Petersen,
    IsaacsJ(usize),
}

impl NamedGraph {
    pub const FIXED: [NamedGraph; 7] = [
        NamedGraph::Theta,
        NamedGraph::Dumbbell,
        NamedGraph::DoubleDumbbell,
        NamedGraph::K4,
        NamedGraph::Prism,
        NamedGraph::K33,
        NamedGraph::Petersen,
    ];

    /// Parses `theta`, `k33`, `isaacs_j` (with `n`), and so on.
    pub fn parse(name: &str, n: Option<usize>) -> Option<NamedGraph> {
        Some(match name {
            "theta" => NamedGraph::Theta,
            "dumbbell" => NamedGraph::Dumbbell,
            "double_dumbbell" => NamedGraph::DoubleDumbbell,
            "k4" => NamedGraph::K4,
            "prism" => NamedGraph::Prism,
            "k33" => NamedGraph::K33,
            "petersen" => NamedGraph::Petersen,
            "isaacs_j" => NamedGraph::IsaacsJ(n.filter(|&n| n >= 3)?),
            _ => return None,
        })
    }

    pub fn name(self) -> String {
        match self {
            NamedGraph::Theta => "theta".into(),
            NamedGraph::Dumbbell => "dumbbell".into(),
            NamedGraph::DoubleDumbbell => "double_dumbbell".into(),
            NamedGraph::K4 => "k4".into(),
            NamedGraph::Prism => "prism".into(),
            NamedGraph::K33 => "k33".into(),
            NamedGraph::Petersen => "petersen".into(),
            NamedGraph::IsaacsJ(n) => format!("isaacs_j{n}"),
        }
    }

    pub fn graph(self) -> CubicGraph {
        match self {
            NamedGraph::Theta => theta(),
            NamedGraph::Dumbbell => dumbbell(),
            NamedGraph::DoubleDumbbell => double_dumbbell(),
            NamedGraph::K4 => k4(),
            NamedGraph::Prism => prism(),
            NamedGraph::K33 => k33(),
            NamedGraph::Petersen => petersen(),
            NamedGraph::IsaacsJ(n) => isaacs_j(n),
        }
    }

    /// A diagram of the graph: the plane drawing where there is one, the
    /// one-crossing drawing for `k33`, otherwise the chord immersion in id order.
    pub fn diagram(self) -> Diagram {
        match self {
            NamedGraph::Theta => plane_theta(),
            NamedGraph::Dumbbell => plane_dumbbell(),
            NamedGraph::K4 => plane_k4(),
            NamedGraph::Prism => plane_prism(),
            NamedGraph::K33 => k33_one_crossing(),
            _ => {
                let g = self.graph();
                let order: Vec<NodeId> = (0..g.node_count()).collect();
                chord_immersion(&g, &order).expect("chord immersion of a fixture")
            }
        }
    }

    /// Whether [`NamedGraph::diagram`] is plane and crossing-free.
    pub fn has_plane_diagram(self) -> bool {
        matches!(
            self,
            NamedGraph::Theta | NamedGraph::Dumbbell | NamedGraph::K4 | NamedGraph::Prism
        )
    }
}

pub fn theta() -> CubicGraph {
    CubicGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
}

pub fn dumbbell() -> CubicGraph {
    CubicGraph::new(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap()
}

/// Bells `0`, `1` hang off node `4` and bells `2`, `3` off node `5`, with
/// `4–5` in the middle. Node `4` can be matched to only one of its bells, so
/// there is no perfect matching.
pub fn double_dumbbell() -> CubicGraph {
    CubicGraph::new(
        6,
        vec![
            (0, 0),
            (0, 4),
            (4, 1),
            (1, 1),
            (2, 2),
            (2, 5),
            (5, 3),
            (3, 3),
            (4, 5),
        ],
    )
    .unwrap()
}

pub fn k4() -> CubicGraph {
    CubicGraph::new(4, vec![(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]).unwrap()
}

/// Triangles `0,1,2` and `3,4,5` joined by `i – i+3`.
pub fn prism() -> CubicGraph {
    CubicGraph::new(
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
    )
    .unwrap()
}

/// Parts `{0,1,2}` and `{3,4,5}`.
pub fn k33() -> CubicGraph {
    let edges = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    CubicGraph::new(6, edges).unwrap()
}

/// Outer cycle `0..5`, inner pentagram `5+i – 5+(i+2)%5`, spokes `i – i+5`.
pub fn petersen() -> CubicGraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    CubicGraph::new(10, edges).unwrap()
}

/// The flower snark family: `n` claws with centers `b_i = 4i+1` and leaves
/// `a_i = 4i`, `c_i = 4i+2`, `d_i = 4i+3`. The `a`'s form an `n`-cycle and
/// the `c`'s and `d`'s a single `2n`-cycle `c_0 … c_{n-1} d_0 … d_{n-1}`.
///
/// # Panics
/// If `n < 3`.
pub fn isaacs_j(n: usize) -> CubicGraph {
    assert!(n >= 3, "isaacs_j needs n >= 3");
    let (a, b, c, d) = (|i| 4 * i, |i| 4 * i + 1, |i| 4 * i + 2, |i| 4 * i + 3);
    let mut edges = Vec::with_capacity(6 * n);
    for i in 0..n {
        edges.push((b(i), a(i)));
        edges.push((b(i), c(i)));
        edges.push((b(i), d(i)));
    }
    for i in 0..n {
        edges.push((a(i), a((i + 1) % n)));
    }
    for i in 0..n - 1 {
        edges.push((c(i), c(i + 1)));
        edges.push((d(i), d(i + 1)));
    }
    edges.push((c(n - 1), d(0)));
    edges.push((d(n - 1), c(0)));
    CubicGraph::new(4 * n, edges).unwrap()
}

/// Two nodes with three arcs, all in the plane.
pub fn plane_theta() -> Diagram {
    Diagram::new(
        vec![[0, 1, 2]; 2],
        vec![],
        vec![
            (Port::node(0, 0), Port::node(1, 0)),
            (Port::node(0, 1), Port::node(1, 2)),
            (Port::node(0, 2), Port::node(1, 1)),
        ],
        0,
    )
    .unwrap()
}

pub fn plane_dumbbell() -> Diagram {
    Diagram::new(
        vec![[0, 1, 2]; 2],
        vec![],
        vec![
            (Port::node(0, 0), Port::node(0, 1)),
            (Port::node(0, 2), Port::node(1, 2)),
            (Port::node(1, 0), Port::node(1, 1)),
        ],
        0,
    )
    .unwrap()
}

pub fn plane_k4() -> Diagram {
    let points = [(0, 0), (6, 0), (3, 6), (3, 2)];
    let segs: Vec<_> = k4().edges().to_vec();
    Diagram::from_straight_line(&points, 4, &segs).unwrap()
}

pub fn plane_prism() -> Diagram {
    let points = [(0, 0), (12, 0), (6, 12), (5, 3), (7, 3), (6, 5)];
    let segs: Vec<_> = prism().edges().to_vec();
    Diagram::from_straight_line(&points, 6, &segs).unwrap()
}

/// `K3,3` drawn with straight segments and a single circled crossing.
///
/// A hexagon `0-3-1-4-2-5` carries six edges; the chords `0–4` and `1–5`
/// cross at the origin and `2–3` runs around the outside.
pub fn k33_one_crossing() -> Diagram {
    let points = [(0, 1), (-1, 0), (10, -1), (-1, 10), (0, -1), (1, 0), (0, 0)];
    let x = 6;
    let segs = [
        (0, 3),
        (3, 1),
        (1, 4),
        (4, 2),
        (2, 5),
        (5, 0),
        (0, x),
        (x, 4),
        (1, x),
        (x, 5),
        (2, 3),
    ];
    Diagram::from_straight_line(&points, 6, &segs).unwrap()
}

/// Uniform pairing of `3n` half-edge stubs; loops and parallel edges are kept.
///
/// # Panics
/// If `n` is odd or zero.
pub fn random_cubic(n: usize, seed: u64) -> CubicGraph {
    assert!(
        n >= 2 && n.is_multiple_of(2),
        "random_cubic needs an even n >= 2"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<NodeId> = (0..n).flat_map(|v| [v, v, v]).collect();
    stubs.shuffle(&mut rng);
    let edges = stubs.chunks(2).map(|p| (p[0], p[1])).collect();
    CubicGraph::new(n, edges).unwrap()
}

/// Grows the plane theta by `n/2 - 1` random local moves, each either
/// truncating a node to a triangle or replacing an arc by a digon.
///
/// # Panics
/// If `n` is odd or zero.
pub fn random_plane_cubic(n: usize, seed: u64) -> Diagram {
    assert!(
        n >= 2 && n.is_multiple_of(2),
        "random_plane_cubic needs an even n >= 2"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = plane_theta();
    for _ in 1..n / 2 {
        d = if rng.gen_bool(0.5) {
            let v = rng.gen_range(0..d.node_count());
            d.truncate_node(v)
        } else {
            let a = rng.gen_range(0..d.arcs().len());
            d.insert_digon(a)
        };
    }
    d
}

/// Four loops touching pairwise in the plane, as a graph with the perfect
/// matching whose parallel state gives back the four loops.
///
/// Loop 0 sits in the middle with loops 1, 2, 3 around it counterclockwise;
/// all run counterclockwise. Each of the six touching points is a matched
/// edge `2s – 2s+1`. Node `2s` holds the incoming end of the lower-numbered
/// loop and the outgoing end of the other; node `2s+1` the reverse.
pub fn four_touching_loops() -> (CubicGraph, PerfectMatching) {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3)];
    let site = |x: usize, y: usize| {
        pairs
            .iter()
            .position(|&p| p == (x.min(y), x.max(y)))
            .unwrap()
    };
    // counterclockwise order of touching points along each loop
    let around: [[usize; 3]; 4] = [
        [site(0, 1), site(0, 2), site(0, 3)],
        [site(1, 2), site(1, 0), site(1, 3)],
        [site(2, 3), site(2, 0), site(2, 1)],
        [site(3, 1), site(3, 0), site(3, 2)],
    ];
    let (inn, out) = (|s: usize| 2 * s, |s: usize| 2 * s + 1);
    let mut edges = Vec::new();
    for (l, cyc) in around.iter().enumerate() {
        for k in 0..3 {
            let (s, t) = (cyc[k], cyc[(k + 1) % 3]);
            // leave s, arrive at t; the lower loop of a pair enters at 2s
            let from = if pairs[s].0 == l { out(s) } else { inn(s) };
            let to = if pairs[t].0 == l { inn(t) } else { out(t) };
            edges.push((from, to));
        }
    }
    let first_matched = edges.len();
    edges.extend((0..6).map(|s| (inn(s), out(s))));
    let g = CubicGraph::new(12, edges).unwrap();
    let m = PerfectMatching::new(&g, (first_matched..first_matched + 6).collect()).unwrap();
    (g, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::count_colorings;
    use crate::graph::bridges;
    use crate::matching::{enumerate_perfect_matchings, is_even_matching};
    use crate::state::{count_state_colorings, make_state, Switch};

    #[test]
    fn fixtures_match_their_diagrams() {
        for name in NamedGraph::FIXED
            .into_iter()
            .chain([NamedGraph::IsaacsJ(3)])
        {
            let d = name.diagram();
            assert_eq!(d.genus(), 0, "{}", name.name());
            let u = d.underlying_graph().unwrap().graph;
            assert_eq!(
                u.edge_multiset(),
                name.graph().edge_multiset(),
                "{}",
                name.name()
            );
            if name.has_plane_diagram() {
                assert_eq!(d.crossing_count(), 0, "{}", name.name());
            }
        }
        assert_eq!(NamedGraph::K33.diagram().crossing_count(), 1);
    }

    #[test]
    fn petersen_facts() {
        let g = petersen();
        assert_eq!(g.edge_count(), 15);
        assert!(bridges(&g).unwrap().is_empty());
        let ms = enumerate_perfect_matchings(&g);
        assert_eq!(ms.len(), 6);
        assert!(ms.iter().all(|m| !is_even_matching(&g, m).unwrap()));
        assert!(NamedGraph::Petersen.diagram().crossing_count() >= 1);
    }

    #[test]
    fn double_dumbbell_has_no_matching() {
        assert!(enumerate_perfect_matchings(&double_dumbbell()).is_empty());
        assert_eq!(bridges(&double_dumbbell()).unwrap(), vec![1, 2, 5, 6, 8]);
    }

    #[test]
    fn flower_snarks() {
        assert_eq!(isaacs_j(3).node_count(), 12);
        assert_eq!(count_colorings(&isaacs_j(3)), 0);
        assert!(count_colorings(&isaacs_j(4)) > 0);
    }

    #[test]
    fn random_generators_are_deterministic() {
        assert_eq!(random_cubic(10, 7), random_cubic(10, 7));
        assert_eq!(random_plane_cubic(10, 7), random_plane_cubic(10, 7));
        for s in 0..20 {
            let g = random_cubic(2, s);
            let m = g.edge_multiset();
            assert!(
                m == theta().edge_multiset() || m == dumbbell().edge_multiset(),
                "{m:?}"
            );
            let d = random_plane_cubic(12, s);
            assert_eq!(d.node_count(), 12);
            assert_eq!(d.genus(), 0);
        }
    }

    #[test]
    fn touching_loops_need_every_site_switched() {
        let (g, m) = four_touching_loops();
        let par = make_state(&g, &m, &[Switch::Parallel; 6]).unwrap();
        assert_eq!(par.loops().len(), 4);
        let colorable: Vec<u64> = (0..64u64)
            .filter(|&mask| {
                count_state_colorings(&make_state(&g, &m, &Switch::vector(mask, 6)).unwrap()) > 0
            })
            .collect();
        assert_eq!(colorable, vec![63]);
    }
}
