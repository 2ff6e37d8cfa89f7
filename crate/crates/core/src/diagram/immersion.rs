//! Chord immersions: every port sits on a convex curve and every edge is a
//! straight chord, so crossings are read off from interleaving endpoints.

use num_rational::Ratio;

use super::{Crossing, CrossingKind, Diagram, DiagramError, Port};
use crate::graph::{CubicGraph, HalfEdge, NodeId};

/// Lays out `g` with node `node_order[k]` owning positions `3k, 3k+1, 3k+2`
/// on the parabola `(t, t²)`, and draws each edge as a chord.
///
/// Chords cross iff their endpoint positions interleave; crossings are
/// ordered along each chord by the exact intersection abscissa. If three
/// chords meet in a point the node order is shifted cyclically and the
/// layout retried. A shift moves most chords by a translation of the
/// parabola, which keeps most concurrences, so once every shift has failed
/// the shifts are repeated with position `p` placed at `t = p(p+1)/2`.
pub fn chord_immersion(g: &CubicGraph, node_order: &[NodeId]) -> Result<Diagram, DiagramError> {
    let n = g.node_count();
    let mut sorted = node_order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(DiagramError::BadNodeOrder(n));
    }
    let mut order = node_order.to_vec();
    for spacing in [linear as fn(i64) -> i64, triangular] {
        for _ in 0..n.max(1) {
            if let Some(d) = layout(g, &order, spacing) {
                return Ok(d);
            }
            order.rotate_left(1);
        }
    }
    Err(DiagramError::DegenerateLayout)
}

fn linear(p: i64) -> i64 {
    p
}

fn triangular(p: i64) -> i64 {
    p * (p + 1) / 2
}

struct Chord {
    lo: i64,
    hi: i64,
}

fn layout(g: &CubicGraph, order: &[NodeId], spacing: fn(i64) -> i64) -> Option<Diagram> {
    let n = g.node_count();
    // half-edge -> position; loop ends take the first two positions of their node
    let mut pos = vec![[0i64; 2]; g.edge_count()];
    let mut port_at = vec![Port::node(0, 0); 3 * n];
    for (k, &v) in order.iter().enumerate() {
        let mut hs: Vec<HalfEdge> = g.incident(v).to_vec();
        hs.sort_by_key(|h| !g.is_loop(h.edge));
        for (j, h) in hs.into_iter().enumerate() {
            let p = (3 * k + j) as i64;
            pos[h.edge][h.end as usize] = p;
            port_at[p as usize] = Port::node(v, j as u8);
        }
    }
    let chords: Vec<Chord> = pos
        .iter()
        .map(|&[a, b]| Chord {
            lo: a.min(b),
            hi: a.max(b),
        })
        .collect();

    // Each crossing: (first chord, second chord) with first.lo < second.lo.
    let mut crossings = Vec::new();
    // per chord: (abscissa, crossing id, slot toward lo, slot toward hi)
    let mut along: Vec<Vec<(Ratio<i64>, usize, u8, u8)>> = vec![Vec::new(); chords.len()];
    for i in 0..chords.len() {
        for j in 0..chords.len() {
            let (a, b, c, d) = (chords[i].lo, chords[i].hi, chords[j].lo, chords[j].hi);
            if !(a < c && c < b && b < d) {
                continue;
            }
            // chord lines y = (a+b)x - ab and y = (c+d)x - cd
            let (a, b, c, d) = (spacing(a), spacing(b), spacing(c), spacing(d));
            let x = Ratio::new(a * b - c * d, a + b - c - d);
            let id = crossings.len();
            // clockwise: toward a, toward d, toward b, toward c
            crossings.push(Crossing {
                kind: CrossingKind::Circled,
                cw: [0, 1, 2, 3],
            });
            along[i].push((x, id, 0, 2));
            along[j].push((x, id, 3, 1));
        }
    }

    let mut arcs = Vec::with_capacity(chords.len() + 2 * crossings.len());
    for (e, list) in along.iter_mut().enumerate() {
        list.sort();
        if list.windows(2).any(|w| w[0].0 == w[1].0) {
            return None;
        }
        let mut prev = port_at[chords[e].lo as usize];
        for &(_, id, to_lo, to_hi) in list.iter() {
            arcs.push((prev, Port::crossing(id, to_lo)));
            prev = Port::crossing(id, to_hi);
        }
        arcs.push((prev, port_at[chords[e].hi as usize]));
    }
    Some(Diagram::new(vec![[0, 1, 2]; n], crossings, arcs, 0).expect("chord layout is well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_layout() {
        let g = CubicGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        let d = chord_immersion(&g, &[0, 1]).unwrap();
        // chords (0,3), (1,4), (2,5) pairwise interleave
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.genus(), 0);
        assert_eq!(
            d.underlying_graph().unwrap().graph.edge_multiset(),
            g.edge_multiset()
        );
    }

    #[test]
    fn loops_do_not_cross_themselves() {
        let g = CubicGraph::new(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        let d = chord_immersion(&g, &[0, 1]).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.genus(), 0);
        assert_eq!(
            d.underlying_graph().unwrap().graph.edge_multiset(),
            g.edge_multiset()
        );
    }

    #[test]
    fn concurrent_chords_fall_back_to_wider_spacing() {
        let edges = vec![
            (3, 9),
            (2, 0),
            (10, 7),
            (4, 3),
            (3, 10),
            (8, 1),
            (11, 1),
            (1, 10),
            (9, 0),
            (2, 8),
            (11, 5),
            (7, 0),
            (4, 6),
            (9, 5),
            (4, 7),
            (6, 2),
            (8, 6),
            (11, 5),
        ];
        let g = CubicGraph::new(12, edges).unwrap();
        let order: Vec<NodeId> = (0..12).collect();
        let mut rotated = order.clone();
        for _ in 0..12 {
            assert!(layout(&g, &rotated, linear).is_none());
            rotated.rotate_left(1);
        }
        let d = chord_immersion(&g, &order).unwrap();
        assert_eq!(d.genus(), 0);
        assert_eq!(
            d.underlying_graph().unwrap().graph.edge_multiset(),
            g.edge_multiset()
        );
    }

    #[test]
    fn rejects_bad_order() {
        let g = CubicGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        assert!(chord_immersion(&g, &[0, 0]).is_err());
    }
}
