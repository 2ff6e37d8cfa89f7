//! Cubic multigraphs with half-edge incidence.
//!
//! Loops and parallel edges are first-class. Every node carries exactly three
//! half-edges; a loop contributes two of them at the same node, which is why
//! incidence is stored per half-edge rather than as an adjacency list.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("node {node} has degree {degree}, expected 3")]
    DegreeViolation { node: NodeId, degree: usize },
    #[error("edge {edge} has endpoint {endpoint} but the graph has {node_count} nodes")]
    EndpointOutOfRange {
        edge: EdgeId,
        endpoint: NodeId,
        node_count: usize,
    },
    #[error("graph is disconnected")]
    Disconnected,
}

/// One end of an edge. `end` is 0 for the first listed endpoint, 1 for the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub end: u8,
}

impl HalfEdge {
    pub fn new(edge: EdgeId, end: u8) -> Self {
        HalfEdge { edge, end }
    }

    pub fn opposite(self) -> Self {
        HalfEdge {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

/// A validated cubic multigraph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicGraph {
    node_count: usize,
    edges: Vec<(NodeId, NodeId)>,
    incidence: Vec<[HalfEdge; 3]>,
}

impl CubicGraph {
    /// Validates the edge list and derives half-edge incidence.
    ///
    /// Half-edges appear at each node in edge-list order, end 0 before end 1.
    pub fn new(node_count: usize, edges: Vec<(NodeId, NodeId)>) -> Result<Self, GraphError> {
        if node_count == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut slots: Vec<Vec<HalfEdge>> = vec![Vec::with_capacity(3); node_count];
        for (e, &(u, v)) in edges.iter().enumerate() {
            for (end, x) in [(0u8, u), (1u8, v)] {
                if x >= node_count {
                    return Err(GraphError::EndpointOutOfRange {
                        edge: e,
                        endpoint: x,
                        node_count,
                    });
                }
                slots[x].push(HalfEdge::new(e, end));
            }
        }
        let mut incidence = Vec::with_capacity(node_count);
        for (node, hs) in slots.into_iter().enumerate() {
            if hs.len() != 3 {
                return Err(GraphError::DegreeViolation {
                    node,
                    degree: hs.len(),
                });
            }
            incidence.push([hs[0], hs[1], hs[2]]);
        }
        Ok(CubicGraph {
            node_count,
            edges,
            incidence,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.edges[e]
    }

    /// The node a half-edge is attached to.
    pub fn node_of(&self, h: HalfEdge) -> NodeId {
        let (u, v) = self.edges[h.edge];
        if h.end == 0 {
            u
        } else {
            v
        }
    }

    /// The three half-edges at `v`, in incidence order.
    pub fn incident(&self, v: NodeId) -> [HalfEdge; 3] {
        self.incidence[v]
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    /// Number of connected components; isolated structure is impossible in a
    /// cubic graph so every node belongs to some edge.
    pub fn component_count(&self) -> usize {
        components_without(self, None).1
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Component label per node.
    pub fn components(&self) -> Vec<usize> {
        components_without(self, None).0
    }

    /// Component count after deleting a single edge.
    pub fn component_count_without(&self, removed: EdgeId) -> usize {
        components_without(self, Some(removed)).1
    }

    /// Edges sorted as `(min, max)` pairs; two graphs with equal multisets
    /// are the same labeled graph up to edge renumbering.
    pub fn edge_multiset(&self) -> Vec<(NodeId, NodeId)> {
        let mut m: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        m.sort_unstable();
        m
    }
}

fn components_without(g: &CubicGraph, removed: Option<EdgeId>) -> (Vec<usize>, usize) {
    let n = g.node_count;
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        stack.push(s);
        while let Some(x) = stack.pop() {
            for h in g.incidence[x] {
                if Some(h.edge) == removed {
                    continue;
                }
                let y = g.node_of(h.opposite());
                if label[y] == usize::MAX {
                    label[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Edges whose deletion disconnects `g`.
///
/// Requires a connected graph; use [`bridges_per_component`] otherwise.
pub fn bridges(g: &CubicGraph) -> Result<Vec<EdgeId>, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(bridges_per_component(g))
}

/// Bridges of every component, sorted by edge id.
///
/// Iterative lowlink search that skips the tree edge by id rather than by
/// parent node, so one member of a parallel pair is never reported.
pub fn bridges_per_component(g: &CubicGraph) -> Vec<EdgeId> {
    let n = g.node_count;
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut next = 0;
    let mut out = Vec::new();
    // (node, edge used to enter, next incidence slot)
    let mut stack: Vec<(NodeId, Option<EdgeId>, usize)> = Vec::new();
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        order[root] = next;
        low[root] = next;
        next += 1;
        stack.push((root, None, 0));
        while let Some(top) = stack.last_mut() {
            let (x, via, slot) = *top;
            if slot < 3 {
                top.2 += 1;
                let h = g.incidence[x][slot];
                if Some(h.edge) == via || g.is_loop(h.edge) {
                    continue;
                }
                let y = g.node_of(h.opposite());
                if order[y] == usize::MAX {
                    order[y] = next;
                    low[y] = next;
                    next += 1;
                    stack.push((y, Some(h.edge), 0));
                } else {
                    low[x] = low[x].min(order[y]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(parent)) = (via, stack.last()) {
                    let p = parent.0;
                    low[p] = low[p].min(low[x]);
                    if low[x] > order[p] {
                        out.push(e);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Wire format: `{"nodes": N, "edges": [[u,v], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub nodes: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&CubicGraph> for GraphJson {
    fn from(g: &CubicGraph) -> Self {
        GraphJson {
            nodes: g.node_count,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for CubicGraph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        CubicGraph::new(j.nodes, j.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }
}

#[derive(Debug, Error)]
pub enum GraphParseError {
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] GraphError),
}

impl CubicGraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self, GraphParseError> {
        let j: GraphJson = serde_json::from_str(s)?;
        Ok(CubicGraph::try_from(j)?)
    }
}
