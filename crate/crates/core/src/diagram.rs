//! Diagrams: cubic graphs drawn in the plane with transverse crossings.
//!
//! A diagram is a rotation system. Trivalent nodes have slots `0..3`,
//! crossings have slots `0..4` with strands running `0↔2` and `1↔3`. Each
//! vertex lists its slots in clockwise order, and arcs join pairs of ports.
//! Crossings are either circled (artifacts of the immersion, carrying a sign
//! tensor) or plain/dotted (introduced while rewriting the bracket).
//!
//! Closed strands that run only through crossings are legal, and so are
//! free loops that touch nothing at all; the latter are only counted.

mod immersion;
mod ops;

use std::collections::HashSet;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{CubicGraph, GraphError, HalfEdge, NodeId};

pub use immersion::chord_immersion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Node(usize),
    Crossing(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub vertex: Vertex,
    pub slot: u8,
}

impl Port {
    pub fn node(id: usize, slot: u8) -> Port {
        Port {
            vertex: Vertex::Node(id),
            slot,
        }
    }

    pub fn crossing(id: usize, slot: u8) -> Port {
        Port {
            vertex: Vertex::Crossing(id),
            slot,
        }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.vertex {
            Vertex::Node(i) => write!(f, "n{i}:{}", self.slot),
            Vertex::Crossing(i) => write!(f, "x{i}:{}", self.slot),
        }
    }
}

impl Serialize for Port {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (tag, id) = match self.vertex {
            Vertex::Node(i) => ("n", i),
            Vertex::Crossing(i) => ("x", i),
        };
        (tag, id, self.slot).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Port {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (tag, id, slot): (String, usize, u8) = Deserialize::deserialize(d)?;
        match tag.as_str() {
            "n" => Ok(Port::node(id, slot)),
            "x" => Ok(Port::crossing(id, slot)),
            other => Err(D::Error::custom(format!("unknown vertex tag {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingKind {
    /// Immersion crossing: `+1` when the two strands agree in color, `-1` otherwise.
    Circled,
    /// Strands pass each other independently.
    Plain,
    /// All four ends forced to one color.
    Dotted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub kind: CrossingKind,
    pub cw: [u8; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("port {0} is not matched by any arc")]
    UnmatchedPort(Port),
    #[error("port {0} appears in more than one arc")]
    DuplicatePort(Port),
    #[error("port {0} does not exist")]
    InvalidPort(Port),
    #[error("rotation at {0:?} is not a valid clockwise order")]
    BadRotation(Vertex),
    #[error("vertex ids must be dense and in order, found {0:?}")]
    BadId(Vertex),
    #[error("a strand through crossing {crossing} closes without reaching a node")]
    StrandClosesWithoutNode { crossing: usize },
    #[error("node order is not a permutation of 0..{0}")]
    BadNodeOrder(usize),
    #[error("three chords are concurrent for every cyclic shift of the node order")]
    DegenerateLayout,
    #[error("rotation does not list the half-edges of node {0}")]
    RotationMismatch(NodeId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An immersed cubic diagram. Immutable; rewriting operations return new diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    nodes: Vec<[u8; 3]>,
    crossings: Vec<Crossing>,
    arcs: Vec<(Port, Port)>,
    free_loops: usize,
    node_arc: Vec<[usize; 3]>,
    crossing_arc: Vec<[usize; 4]>,
}

fn is_cyclic_perm<const N: usize>(cw: &[u8; N]) -> bool {
    let mut seen = [false; N];
    for &s in cw {
        if s as usize >= N || seen[s as usize] {
            return false;
        }
        seen[s as usize] = true;
    }
    true
}

impl Diagram {
    pub fn new(
        nodes: Vec<[u8; 3]>,
        crossings: Vec<Crossing>,
        arcs: Vec<(Port, Port)>,
        free_loops: usize,
    ) -> Result<Self, DiagramError> {
        for (i, cw) in nodes.iter().enumerate() {
            if !is_cyclic_perm(cw) {
                return Err(DiagramError::BadRotation(Vertex::Node(i)));
            }
        }
        for (i, x) in crossings.iter().enumerate() {
            let opposite_ok = (0..2).all(|k| x.cw[k] % 2 == x.cw[k + 2] % 2);
            if !is_cyclic_perm(&x.cw) || !opposite_ok {
                return Err(DiagramError::BadRotation(Vertex::Crossing(i)));
            }
        }
        let mut node_arc = vec![[usize::MAX; 3]; nodes.len()];
        let mut crossing_arc = vec![[usize::MAX; 4]; crossings.len()];
        for (a, &(p, q)) in arcs.iter().enumerate() {
            for port in [p, q] {
                let cell = match port.vertex {
                    Vertex::Node(i) if i < nodes.len() && port.slot < 3 => {
                        &mut node_arc[i][port.slot as usize]
                    }
                    Vertex::Crossing(i) if i < crossings.len() && port.slot < 4 => {
                        &mut crossing_arc[i][port.slot as usize]
                    }
                    _ => return Err(DiagramError::InvalidPort(port)),
                };
                if *cell != usize::MAX {
                    return Err(DiagramError::DuplicatePort(port));
                }
                *cell = a;
            }
        }
        for (i, slots) in node_arc.iter().enumerate() {
            if let Some(s) = slots.iter().position(|&a| a == usize::MAX) {
                return Err(DiagramError::UnmatchedPort(Port::node(i, s as u8)));
            }
        }
        for (i, slots) in crossing_arc.iter().enumerate() {
            if let Some(s) = slots.iter().position(|&a| a == usize::MAX) {
                return Err(DiagramError::UnmatchedPort(Port::crossing(i, s as u8)));
            }
        }
        Ok(Diagram {
            nodes,
            crossings,
            arcs,
            free_loops,
            node_arc,
            crossing_arc,
        })
    }

    /// Plane diagram of `g` from a clockwise rotation of half-edges at each node.
    pub fn from_rotation(g: &CubicGraph, rotation: &[[HalfEdge; 3]]) -> Result<Self, DiagramError> {
        let mut slot_of = vec![[None::<Port>; 2]; g.edge_count()];
        for v in 0..g.node_count() {
            let mut got = rotation
                .get(v)
                .copied()
                .ok_or(DiagramError::RotationMismatch(v))?;
            let mut want = g.incident(v);
            got.sort();
            want.sort();
            if got != want {
                return Err(DiagramError::RotationMismatch(v));
            }
            for (s, h) in rotation[v].iter().enumerate() {
                slot_of[h.edge][h.end as usize] = Some(Port::node(v, s as u8));
            }
        }
        let arcs = slot_of
            .into_iter()
            .map(|[a, b]| (a.expect("validated"), b.expect("validated")))
            .collect();
        Diagram::new(vec![[0, 1, 2]; g.node_count()], Vec::new(), arcs, 0)
    }

    /// Diagram from a straight-line drawing on integer coordinates.
    ///
    /// The first `node_count` points are trivalent nodes, the rest circled
    /// crossings (each must sit on exactly four segments, forming two straight
    /// lines). Slots are numbered in clockwise order around each vertex.
    pub fn from_straight_line(
        points: &[(i64, i64)],
        node_count: usize,
        segments: &[(usize, usize)],
    ) -> Result<Self, DiagramError> {
        let mut around: Vec<Vec<(usize, u8, (i64, i64))>> = vec![Vec::new(); points.len()];
        for (k, &(a, b)) in segments.iter().enumerate() {
            let (pa, pb) = (points[a], points[b]);
            around[a].push((k, 0, (pb.0 - pa.0, pb.1 - pa.1)));
            around[b].push((k, 1, (pa.0 - pb.0, pa.1 - pb.1)));
        }
        let mut ends = vec![[None::<Port>; 2]; segments.len()];
        for (v, list) in around.iter_mut().enumerate() {
            // counterclockwise by angle, then reversed
            list.sort_by(|x, y| angle_cmp(x.2, y.2));
            list.reverse();
            let expected = if v < node_count { 3 } else { 4 };
            let vertex = if v < node_count {
                Vertex::Node(v)
            } else {
                Vertex::Crossing(v - node_count)
            };
            if list.len() != expected {
                return Err(DiagramError::BadRotation(vertex));
            }
            for (s, &(k, end, _)) in list.iter().enumerate() {
                ends[k][end as usize] = Some(Port {
                    vertex,
                    slot: s as u8,
                });
            }
        }
        let arcs = ends
            .into_iter()
            .map(|[a, b]| (a.unwrap(), b.unwrap()))
            .collect();
        let crossings = vec![
            Crossing {
                kind: CrossingKind::Circled,
                cw: [0, 1, 2, 3],
            };
            points.len() - node_count
        ];
        Diagram::new(vec![[0, 1, 2]; node_count], crossings, arcs, 0)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arcs(&self) -> &[(Port, Port)] {
        &self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Clockwise slot order at a node.
    pub fn node_cw(&self, v: NodeId) -> [u8; 3] {
        self.nodes[v]
    }

    pub fn count_crossings(&self, kind: CrossingKind) -> usize {
        self.crossings.iter().filter(|x| x.kind == kind).count()
    }

    pub fn arc_at(&self, p: Port) -> usize {
        match p.vertex {
            Vertex::Node(i) => self.node_arc[i][p.slot as usize],
            Vertex::Crossing(i) => self.crossing_arc[i][p.slot as usize],
        }
    }

    /// The port at the other end of the arc leaving `p`.
    pub fn mate(&self, p: Port) -> Port {
        let (a, b) = self.arcs[self.arc_at(p)];
        if a == p {
            b
        } else {
            a
        }
    }

    /// Next port clockwise around the same vertex.
    pub fn next_cw(&self, p: Port) -> Port {
        fn step<const N: usize>(cw: &[u8; N], slot: u8) -> u8 {
            let i = cw
                .iter()
                .position(|&s| s == slot)
                .expect("slot in rotation");
            cw[(i + 1) % N]
        }
        let slot = match p.vertex {
            Vertex::Node(i) => step(&self.nodes[i], p.slot),
            Vertex::Crossing(i) => step(&self.crossings[i].cw, p.slot),
        };
        Port {
            vertex: p.vertex,
            slot,
        }
    }

    fn all_ports(&self) -> impl Iterator<Item = Port> + '_ {
        let nodes = (0..self.nodes.len()).flat_map(|i| (0..3).map(move |s| Port::node(i, s)));
        let xs = (0..self.crossings.len()).flat_map(|i| (0..4).map(move |s| Port::crossing(i, s)));
        nodes.chain(xs)
    }

    /// Face boundary walks. Each face is the orbit of a port under
    /// "cross the arc, then turn to the next port clockwise".
    pub fn trace_faces(&self) -> Vec<Vec<Port>> {
        let mut seen = HashSet::new();
        let mut faces = Vec::new();
        for start in self.all_ports() {
            if seen.contains(&start) {
                continue;
            }
            let mut face = Vec::new();
            let mut p = start;
            loop {
                seen.insert(p);
                face.push(p);
                p = self.next_cw(self.mate(p));
                if p == start {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    /// Connected components among vertices (free loops excluded).
    pub fn vertex_component_count(&self) -> usize {
        let v = self.nodes.len() + self.crossings.len();
        let index = |x: Vertex| match x {
            Vertex::Node(i) => i,
            Vertex::Crossing(i) => self.nodes.len() + i,
        };
        let mut parent: Vec<usize> = (0..v).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut comps = v;
        for &(p, q) in &self.arcs {
            let (a, b) = (
                find(&mut parent, index(p.vertex)),
                find(&mut parent, index(q.vertex)),
            );
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps
    }

    /// Sum of component genera, `(2C - V + A - F) / 2`.
    pub fn genus(&self) -> usize {
        let c = self.vertex_component_count() as i64;
        let v = (self.nodes.len() + self.crossings.len()) as i64;
        let a = self.arcs.len() as i64;
        let f = self.trace_faces().len() as i64;
        let twice = 2 * c - v + a - f;
        debug_assert!(
            twice >= 0 && twice % 2 == 0,
            "Euler characteristic out of range"
        );
        (twice / 2) as usize
    }

    pub fn is_plane(&self) -> bool {
        self.genus() == 0
    }

    /// Follow a strand from `p` (an outgoing port) through crossings until it
    /// reaches a node port, or returns to `p`.
    fn walk(&self, p: Port) -> (Vec<(usize, u8)>, Port) {
        let mut through = Vec::new();
        let mut cur = p;
        loop {
            let q = self.mate(cur);
            match q.vertex {
                Vertex::Node(_) => return (through, q),
                Vertex::Crossing(x) => {
                    through.push((x, q.slot));
                    let out = Port::crossing(x, (q.slot + 2) % 4);
                    if out == p {
                        return (through, out);
                    }
                    cur = out;
                }
            }
        }
    }

    /// Decomposes the diagram into strands: open strands run node to node,
    /// closed strands run only through crossings.
    pub fn strands(&self) -> Strands {
        let mut open = Vec::new();
        let mut node_port = vec![[(usize::MAX, 0u8); 3]; self.nodes.len()];
        let mut pass = vec![[usize::MAX; 2]; self.crossings.len()];
        for v in 0..self.nodes.len() {
            for s in 0..3u8 {
                if node_port[v][s as usize].0 != usize::MAX {
                    continue;
                }
                let start = Port::node(v, s);
                let (through, end) = self.walk(start);
                let id = open.len();
                node_port[v][s as usize] = (id, 0);
                let Vertex::Node(w) = end.vertex else {
                    unreachable!()
                };
                node_port[w][end.slot as usize] = (id, 1);
                for &(x, slot) in &through {
                    pass[x][(slot % 2) as usize] = id;
                }
                open.push(OpenStrand {
                    start,
                    end,
                    through,
                });
            }
        }
        let mut closed = Vec::new();
        for x in 0..self.crossings.len() {
            for parity in 0..2u8 {
                if pass[x][parity as usize] != usize::MAX {
                    continue;
                }
                let (through, _) = self.walk(Port::crossing(x, parity));
                let id = open.len() + closed.len();
                for &(y, slot) in &through {
                    pass[y][(slot % 2) as usize] = id;
                }
                closed.push(through);
            }
        }
        Strands {
            open,
            closed,
            pass,
            node_port,
        }
    }

    /// The abstract cubic graph obtained by dissolving every crossing, plus
    /// the crossings each edge passes through.
    pub fn underlying_graph(&self) -> Result<Underlying, DiagramError> {
        let st = self.strands();
        if let Some(first) = st.closed.first() {
            return Err(DiagramError::StrandClosesWithoutNode {
                crossing: first[0].0,
            });
        }
        let node_of = |p: Port| match p.vertex {
            Vertex::Node(v) => v,
            Vertex::Crossing(_) => unreachable!("open strands end at nodes"),
        };
        let edges = st
            .open
            .iter()
            .map(|s| (node_of(s.start), node_of(s.end)))
            .collect();
        let graph = CubicGraph::new(self.nodes.len(), edges)?;
        let port_half_edge = st
            .node_port
            .iter()
            .map(|slots| slots.map(|(e, end)| HalfEdge::new(e, end)))
            .collect();
        Ok(Underlying {
            graph,
            traversals: st.open.into_iter().map(|s| s.through).collect(),
            port_half_edge,
        })
    }

    /// Crossing traversal of the edge starting at `p`, read from that end.
    pub fn traversal_from(&self, p: Port) -> Vec<(usize, u8)> {
        self.walk(p).0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DiagramJson::from(self))
            .expect("diagram serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self, DiagramParseError> {
        let j: DiagramJson = serde_json::from_str(s)?;
        Ok(Diagram::try_from(j)?)
    }
}

/// Order direction vectors by counterclockwise angle from the positive x-axis.
fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> std::cmp::Ordering {
    let half = |d: (i64, i64)| {
        if d.1 > 0 || (d.1 == 0 && d.0 > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&cross)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenStrand {
    pub start: Port,
    pub end: Port,
    /// `(crossing, slot entered)` in order from `start`.
    pub through: Vec<(usize, u8)>,
}

/// Strand decomposition of a diagram. Strand ids: open strands first, then
/// closed ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strands {
    pub open: Vec<OpenStrand>,
    pub closed: Vec<Vec<(usize, u8)>>,
    /// Strand through slots `{0,2}` and `{1,3}` of each crossing.
    pub pass: Vec<[usize; 2]>,
    /// `(open strand, end)` attached to each node slot.
    pub node_port: Vec<[(usize, u8); 3]>,
}

impl Strands {
    pub fn len(&self) -> usize {
        self.open.len() + self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Result of dissolving crossings. Edge ids follow the order in which node
/// ports are first reached, scanning nodes then slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Underlying {
    pub graph: CubicGraph,
    pub traversals: Vec<Vec<(usize, u8)>>,
    /// Half-edge of the graph attached to each node slot.
    pub port_half_edge: Vec<[HalfEdge; 3]>,
}

#[derive(Debug, Error)]
pub enum DiagramParseError {
    #[error("malformed diagram JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] DiagramError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct NodeJson {
    id: usize,
    cw: [Port; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CrossingJson {
    id: usize,
    kind: CrossingKind,
    cw: [Port; 4],
}

/// Wire format: `{"nodes":[{"id":0,"cw":[p,p,p]}],"crossings":[{"id":0,"kind":"circled","cw":[p,p,p,p]}],"arcs":[[p,p],...]}`
/// with ports written `["n"|"x", vertex_id, slot]`. A non-zero `free_loops`
/// count is appended when present.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramJson {
    nodes: Vec<NodeJson>,
    crossings: Vec<CrossingJson>,
    arcs: Vec<[Port; 2]>,
    #[serde(default, skip_serializing_if = "is_zero")]
    free_loops: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl From<&Diagram> for DiagramJson {
    fn from(d: &Diagram) -> Self {
        DiagramJson {
            nodes: d
                .nodes
                .iter()
                .enumerate()
                .map(|(id, cw)| NodeJson {
                    id,
                    cw: cw.map(|s| Port::node(id, s)),
                })
                .collect(),
            crossings: d
                .crossings
                .iter()
                .enumerate()
                .map(|(id, x)| CrossingJson {
                    id,
                    kind: x.kind,
                    cw: x.cw.map(|s| Port::crossing(id, s)),
                })
                .collect(),
            arcs: d.arcs.iter().map(|&(p, q)| [p, q]).collect(),
            free_loops: d.free_loops,
        }
    }
}

impl TryFrom<DiagramJson> for Diagram {
    type Error = DiagramError;

    fn try_from(j: DiagramJson) -> Result<Self, DiagramError> {
        let mut nodes = Vec::with_capacity(j.nodes.len());
        for (i, n) in j.nodes.iter().enumerate() {
            if n.id != i {
                return Err(DiagramError::BadId(Vertex::Node(n.id)));
            }
            if n.cw.iter().any(|p| p.vertex != Vertex::Node(i)) {
                return Err(DiagramError::BadRotation(Vertex::Node(i)));
            }
            nodes.push(n.cw.map(|p| p.slot));
        }
        let mut crossings = Vec::with_capacity(j.crossings.len());
        for (i, x) in j.crossings.iter().enumerate() {
            if x.id != i {
                return Err(DiagramError::BadId(Vertex::Crossing(x.id)));
            }
            if x.cw.iter().any(|p| p.vertex != Vertex::Crossing(i)) {
                return Err(DiagramError::BadRotation(Vertex::Crossing(i)));
            }
            crossings.push(Crossing {
                kind: x.kind,
                cw: x.cw.map(|p| p.slot),
            });
        }
        let arcs = j.arcs.into_iter().map(|[p, q]| (p, q)).collect();
        Diagram::new(nodes, crossings, arcs, j.free_loops)
    }
}
