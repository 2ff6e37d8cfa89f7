//! Local rewrites of diagrams. Each returns a fresh, revalidated diagram.

use super::{Crossing, CrossingKind, Diagram, Port, Vertex};
use crate::graph::NodeId;

impl Diagram {
    fn rebuilt(
        &self,
        nodes: Vec<[u8; 3]>,
        crossings: Vec<Crossing>,
        arcs: Vec<(Port, Port)>,
    ) -> Diagram {
        Diagram::new(nodes, crossings, arcs, self.free_loops)
            .expect("local rewrite keeps the diagram well formed")
    }

    /// Replaces node `v` by a triangle. Plane diagrams stay plane.
    pub fn truncate_node(&self, v: NodeId) -> Diagram {
        let n = self.nodes.len();
        let tri = [v, n, n + 1];
        let cw = self.nodes[v];
        let remap = |p: Port| -> Port {
            match p.vertex {
                Vertex::Node(w) if w == v => {
                    let j = cw.iter().position(|&s| s == p.slot).unwrap();
                    Port::node(tri[j], 0)
                }
                _ => p,
            }
        };
        let mut arcs: Vec<(Port, Port)> = self
            .arcs
            .iter()
            .map(|&(p, q)| (remap(p), remap(q)))
            .collect();
        for j in 0..3 {
            arcs.push((Port::node(tri[j], 1), Port::node(tri[(j + 1) % 3], 2)));
        }
        let mut nodes = self.nodes.clone();
        nodes[v] = [0, 1, 2];
        nodes.push([0, 1, 2]);
        nodes.push([0, 1, 2]);
        self.rebuilt(nodes, self.crossings.clone(), arcs)
    }

    /// Replaces arc `arc` by a path through a digon on two new nodes.
    pub fn insert_digon(&self, arc: usize) -> Diagram {
        let n = self.nodes.len();
        let (a, b) = (n, n + 1);
        let (p, q) = self.arcs[arc];
        let mut arcs = self.arcs.clone();
        arcs[arc] = (p, Port::node(a, 0));
        arcs.push((Port::node(a, 1), Port::node(b, 2)));
        arcs.push((Port::node(a, 2), Port::node(b, 1)));
        arcs.push((Port::node(b, 0), q));
        let mut nodes = self.nodes.clone();
        nodes.push([0, 1, 2]);
        nodes.push([0, 1, 2]);
        self.rebuilt(nodes, self.crossings.clone(), arcs)
    }

    /// Swaps the clockwise positions `i` and `i+1` at node `v` and lets the two
    /// edges cross once through a new crossing of the given kind.
    ///
    /// The two ports must not be the ends of a single loop.
    pub fn insert_twist(&self, v: NodeId, i: usize, kind: CrossingKind) -> Diagram {
        let cw = self.nodes[v];
        let s = Port::node(v, cw[i % 3]);
        let t = Port::node(v, cw[(i + 1) % 3]);
        let (arc_s, arc_t) = (self.arc_at(s), self.arc_at(t));
        assert_ne!(arc_s, arc_t, "cannot twist the two ends of a loop");
        let (far_s, far_t) = (self.mate(s), self.mate(t));
        let x = self.crossings.len();
        let mut arcs = self.arcs.clone();
        arcs[arc_s] = (s, Port::crossing(x, 0));
        arcs[arc_t] = (t, Port::crossing(x, 1));
        arcs.push((Port::crossing(x, 2), far_s));
        arcs.push((Port::crossing(x, 3), far_t));
        let mut nodes = self.nodes.clone();
        nodes[v].swap(i % 3, (i + 1) % 3);
        let mut crossings = self.crossings.clone();
        crossings.push(Crossing {
            kind,
            cw: [0, 1, 2, 3],
        });
        self.rebuilt(nodes, crossings, arcs)
    }

    /// Adds a closed strand that crosses each listed arc once, in order.
    pub fn add_crossing_loop(&self, arcs_to_cross: &[usize], kind: CrossingKind) -> Diagram {
        let base = self.crossings.len();
        let mut arcs = self.arcs.clone();
        let mut crossings = self.crossings.clone();
        for (k, &a) in arcs_to_cross.iter().enumerate() {
            let x = base + k;
            let (p, q) = arcs[a];
            arcs[a] = (p, Port::crossing(x, 0));
            arcs.push((Port::crossing(x, 2), q));
            crossings.push(Crossing {
                kind,
                cw: [0, 1, 2, 3],
            });
        }
        let m = arcs_to_cross.len();
        for k in 0..m {
            arcs.push((
                Port::crossing(base + k, 3),
                Port::crossing(base + (k + 1) % m, 1),
            ));
        }
        self.rebuilt(self.nodes.clone(), crossings, arcs)
    }

    pub fn with_crossing_kind(&self, x: usize, kind: CrossingKind) -> Diagram {
        let mut crossings = self.crossings.clone();
        crossings[x].kind = kind;
        self.rebuilt(self.nodes.clone(), crossings, self.arcs.clone())
    }

    pub fn with_free_loops(&self, extra: usize) -> Diagram {
        let mut d = self.clone();
        d.free_loops += extra;
        d
    }

    /// Side-by-side union; `other`'s vertices are renumbered after ours.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let (dn, dx) = (self.nodes.len(), self.crossings.len());
        let shift = |p: Port| match p.vertex {
            Vertex::Node(i) => Port::node(i + dn, p.slot),
            Vertex::Crossing(i) => Port::crossing(i + dx, p.slot),
        };
        let mut nodes = self.nodes.clone();
        nodes.extend_from_slice(&other.nodes);
        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&other.crossings);
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().map(|&(p, q)| (shift(p), shift(q))));
        Diagram::new(nodes, crossings, arcs, self.free_loops + other.free_loops)
            .expect("union of valid diagrams")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests::plane_theta;

    #[test]
    fn truncation_and_digons_stay_plane() {
        let k4 = plane_theta().truncate_node(0);
        assert_eq!(k4.node_count(), 4);
        assert_eq!(k4.genus(), 0);
        let g = k4.underlying_graph().unwrap().graph;
        assert_eq!(
            g.edge_multiset(),
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        );
        let d = k4.insert_digon(0).truncate_node(5);
        assert_eq!(d.node_count(), 8);
        assert_eq!(d.genus(), 0);
    }

    #[test]
    fn twist_stays_plane() {
        for i in 0..3 {
            let d = plane_theta().insert_twist(0, i, CrossingKind::Circled);
            assert_eq!(d.genus(), 0, "twist at position {i}");
            assert_eq!(
                d.underlying_graph().unwrap().graph.edge_multiset(),
                vec![(0, 1); 3]
            );
        }
    }

    #[test]
    fn crossing_loop_adds_closed_strand() {
        let d = plane_theta().add_crossing_loop(&[0, 1], CrossingKind::Circled);
        let st = d.strands();
        assert_eq!(st.open.len(), 3);
        assert_eq!(st.closed.len(), 1);
        assert_eq!(st.closed[0].len(), 2);
    }
}
