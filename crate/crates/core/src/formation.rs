//! Formations: the red and blue curve systems of a proper coloring.
//!
//! Purple is read as red and blue at once, so the red curves are the cycles
//! of the `r ∪ p` subgraph and the blue curves those of `b ∪ p`. Each purple
//! edge is a segment shared by one red and one blue curve.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{is_proper, Color, EdgeColoring};
use crate::diagram::{Diagram, DiagramError};
use crate::graph::{CubicGraph, EdgeId, NodeId};
use crate::penrose::{node_weight, NodeWeight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormationError {
    #[error("coloring is not proper")]
    ImproperColoring,
    #[error("meetings are only classified on crossing-free plane diagrams")]
    NotPlane,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A closed curve, as the cyclic sequence of edges it runs along.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Curve {
    pub edges: Vec<EdgeId>,
    pub nodes: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Formation {
    pub red: Vec<Curve>,
    pub blue: Vec<Curve>,
    pub shared: Vec<EdgeId>,
}

/// Cycles of the 2-regular subgraph made of the edges with `keep`.
fn trace_cycles(g: &CubicGraph, keep: impl Fn(EdgeId) -> bool) -> Vec<Curve> {
    let mut used = vec![false; g.edge_count()];
    let mut out = Vec::new();
    for first in 0..g.edge_count() {
        if used[first] || !keep(first) {
            continue;
        }
        let mut curve = Curve {
            edges: Vec::new(),
            nodes: Vec::new(),
        };
        let (start, _) = g.endpoints(first);
        let (mut x, mut e) = (start, first);
        loop {
            used[e] = true;
            curve.nodes.push(x);
            curve.edges.push(e);
            let (a, b) = g.endpoints(e);
            x = if a == x { b } else { a };
            match g
                .incident(x)
                .into_iter()
                .find(|h| keep(h.edge) && !used[h.edge])
            {
                Some(h) => e = h.edge,
                None => break,
            }
        }
        out.push(curve);
    }
    out
}

pub fn formation_from_coloring(
    g: &CubicGraph,
    c: &EdgeColoring,
) -> Result<Formation, FormationError> {
    if !is_proper(g, c).map_err(|_| FormationError::ImproperColoring)? {
        return Err(FormationError::ImproperColoring);
    }
    Ok(Formation {
        red: trace_cycles(g, |e| c[e] != Color::B),
        blue: trace_cycles(g, |e| c[e] != Color::R),
        shared: c.class(Color::P),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Meeting {
    Bounce,
    Cross,
}

/// Classification of every shared segment, in increasing edge order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeetingClass {
    pub meetings: Vec<(EdgeId, Meeting)>,
}

impl MeetingClass {
    pub fn cross_count(&self) -> usize {
        self.meetings
            .iter()
            .filter(|(_, m)| *m == Meeting::Cross)
            .count()
    }
}

/// Reads each purple edge as a bounce or a cross from the product of the
/// `i·ε` weights at its ends: `+1` is a bounce, `-1` a cross.
///
/// `c` is indexed by the edges of [`Diagram::underlying_graph`].
pub fn classify_meetings(d: &Diagram, c: &EdgeColoring) -> Result<MeetingClass, FormationError> {
    if d.crossing_count() > 0 || !d.is_plane() {
        return Err(FormationError::NotPlane);
    }
    let u = d.underlying_graph()?;
    if !is_proper(&u.graph, c).map_err(|_| FormationError::ImproperColoring)? {
        return Err(FormationError::ImproperColoring);
    }
    let power = |v: NodeId| {
        let cw = d
            .node_cw(v)
            .map(|s| c[u.port_half_edge[v][s as usize].edge]);
        match node_weight(cw) {
            NodeWeight::IPower(k) => k,
            NodeWeight::Zero => unreachable!("proper coloring"),
        }
    };
    let meetings = c
        .class(Color::P)
        .into_iter()
        .map(|e| {
            let (a, b) = u.graph.endpoints(e);
            let m = if (power(a) + power(b)) % 4 == 0 {
                Meeting::Bounce
            } else {
                Meeting::Cross
            };
            (e, m)
        })
        .collect();
    Ok(MeetingClass { meetings })
}

/// Number of crosses, mod 2.
pub fn crossing_parity(d: &Diagram, c: &EdgeColoring) -> Result<u8, FormationError> {
    Ok((classify_meetings(d, c)?.cross_count() % 2) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::enumerate_colorings;
    use crate::diagram::tests::plane_theta;
    use Color::*;

    #[test]
    fn theta_formation() {
        let g = plane_theta().underlying_graph().unwrap().graph;
        let c = EdgeColoring(vec![R, B, P]);
        let f = formation_from_coloring(&g, &c).unwrap();
        assert_eq!(f.red.len(), 1);
        assert_eq!(f.blue.len(), 1);
        assert_eq!(f.red[0].edges, vec![0, 2]);
        assert_eq!(f.blue[0].edges, vec![1, 2]);
        assert_eq!(f.shared, vec![2]);
        let m = classify_meetings(&plane_theta(), &c).unwrap();
        assert_eq!(m.meetings, vec![(2, Meeting::Bounce)]);
    }

    #[test]
    fn k4_curves_share_two_segments() {
        let d = plane_theta().truncate_node(0);
        let g = d.underlying_graph().unwrap().graph;
        for c in enumerate_colorings(&g) {
            let f = formation_from_coloring(&g, &c).unwrap();
            assert_eq!((f.red.len(), f.blue.len(), f.shared.len()), (1, 1, 2));
            assert_eq!(f.red[0].edges.len(), 4);
            assert_eq!(crossing_parity(&d, &c).unwrap(), 0);
        }
    }

    #[test]
    fn crossings_are_refused() {
        let d = plane_theta().insert_twist(0, 0, crate::diagram::CrossingKind::Circled);
        assert_eq!(
            classify_meetings(&d, &EdgeColoring(vec![R, B, P])),
            Err(FormationError::NotPlane)
        );
    }
}
