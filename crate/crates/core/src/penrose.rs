//! The Penrose bracket and its extension to immersed diagrams.
//!
//! Every trivalent node carries `i·ε` read clockwise, so a node whose
//! clockwise colors run `(r,b,p)` (or a cyclic shift) contributes `+i` and the
//! reverse order contributes `-i`. On a crossing-free plane diagram each
//! proper coloring then contributes `+1`. Immersions of non-planar graphs
//! need the circled crossing: `+1` when its two strands agree in color and
//! `-1` when they differ. With those signs every proper coloring of any
//! immersed cubic graph contributes exactly `+1`.
//!
//! Weights are tracked as a sign and a power of `i`; the imaginary part of
//! every total is checked to vanish.

mod skein;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{for_each_coloring, is_proper, Color, EdgeColoring};
use crate::diagram::{CrossingKind, Diagram, DiagramError};
use crate::graph::CubicGraph;

pub use skein::{skein_evaluate, skein_evaluate_with_budget, DEFAULT_SKEIN_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PenroseError {
    #[error("bracket has non-zero imaginary part {imaginary}")]
    NonIntegerResult { imaginary: i64 },
    #[error("coloring is not proper on the underlying graph")]
    ImproperColoring,
    #[error("skein expansion exceeded its budget of {budget} steps")]
    RecursionBudgetExceeded { budget: u64 },
    #[error("crossing {0} is not circled")]
    NotCircled(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Value of `i·ε` at a node: zero, or `i^power` with `power ∈ {1, 3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeWeight {
    Zero,
    IPower(u8),
}

impl NodeWeight {
    pub const PLUS_I: NodeWeight = NodeWeight::IPower(1);
    pub const MINUS_I: NodeWeight = NodeWeight::IPower(3);
}

/// Colors read clockwise around a node.
pub fn node_weight(cw: [Color; 3]) -> NodeWeight {
    let [a, b, c] = cw.map(Color::index);
    if a == b || b == c || a == c {
        return NodeWeight::Zero;
    }
    // (r,b,p) and its rotations are the even permutations of (0,1,2)
    if (b + 3 - a) % 3 == 1 {
        NodeWeight::PLUS_I
    } else {
        NodeWeight::MINUS_I
    }
}

/// Sign tensor of a circled crossing whose strands carry `x` and `y`.
pub fn circled_weight(x: Color, y: Color) -> i64 {
    if x == y {
        1
    } else {
        -1
    }
}

pub fn crossing_weight(kind: CrossingKind, x: Color, y: Color) -> i64 {
    match kind {
        CrossingKind::Circled => circled_weight(x, y),
        CrossingKind::Plain => 1,
        CrossingKind::Dotted => (x == y) as i64,
    }
}

/// Which crossing tensors take part in a contraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Contraction {
    /// Circled crossings are read as plain ones.
    Plain,
    /// Circled crossings carry their sign tensor.
    Extended,
}

impl Contraction {
    fn weight(self, kind: CrossingKind, x: Color, y: Color) -> i64 {
        match (self, kind) {
            (Contraction::Plain, CrossingKind::Circled) => 1,
            _ => crossing_weight(kind, x, y),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct BracketValue(pub i64);

impl std::fmt::Display for BracketValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Gaussian integer accumulator for `Σ i^k · w`.
#[derive(Default)]
struct Gaussian {
    re: i128,
    im: i128,
}

impl Gaussian {
    fn add(&mut self, power: u8, w: i64) {
        let w = w as i128;
        match power % 4 {
            0 => self.re += w,
            1 => self.im += w,
            2 => self.re -= w,
            _ => self.im -= w,
        }
    }

    fn real(self) -> Result<i64, PenroseError> {
        if self.im != 0 {
            return Err(PenroseError::NonIntegerResult {
                imaginary: self.im as i64,
            });
        }
        Ok(i64::try_from(self.re).expect("bracket value overflowed i64"))
    }
}

/// Abstract graph formed by the open strands, if there are any nodes.
fn strand_graph(d: &Diagram) -> Result<Option<CubicGraph>, PenroseError> {
    if d.node_count() == 0 {
        return Ok(None);
    }
    let st = d.strands();
    let node = |p: crate::diagram::Port| match p.vertex {
        crate::diagram::Vertex::Node(v) => v,
        crate::diagram::Vertex::Crossing(_) => unreachable!(),
    };
    let edges = st
        .open
        .iter()
        .map(|s| (node(s.start), node(s.end)))
        .collect();
    Ok(Some(
        CubicGraph::new(d.node_count(), edges).map_err(DiagramError::from)?,
    ))
}

/// Power of `i` contributed by all nodes for the given edge colors, or `None`
/// if some node vanishes.
fn node_phase(d: &Diagram, st: &crate::diagram::Strands, colors: &[Color]) -> Option<u8> {
    let mut power = 0u8;
    for v in 0..d.node_count() {
        let cw = d.node_cw(v).map(|s| colors[st.node_port[v][s as usize].0]);
        match node_weight(cw) {
            NodeWeight::Zero => return None,
            NodeWeight::IPower(k) => power = (power + k) % 4,
        }
    }
    Some(power)
}

fn contract(d: &Diagram, mode: Contraction) -> Result<BracketValue, PenroseError> {
    let st = d.strands();
    let graph = strand_graph(d)?;
    let n_open = st.open.len();
    let n_closed = st.closed.len();
    let mut total = Gaussian::default();
    let mut colors = vec![Color::R; n_open + n_closed];

    let mut per_edge_coloring = |edge_colors: &[Color], total: &mut Gaussian| {
        colors[..n_open].copy_from_slice(edge_colors);
        let Some(power) = node_phase(d, &st, &colors) else {
            return;
        };
        let mut inner: i64 = 0;
        for code in 0..3u64.pow(n_closed as u32) {
            let mut x = code;
            for c in colors[n_open..].iter_mut() {
                *c = Color::from_index((x % 3) as usize);
                x /= 3;
            }
            let mut w = 1i64;
            for (cx, pass) in d.crossings().iter().zip(&st.pass) {
                w *= mode.weight(cx.kind, colors[pass[0]], colors[pass[1]]);
                if w == 0 {
                    break;
                }
            }
            inner += w;
        }
        total.add(power, inner);
    };

    match &graph {
        Some(g) => for_each_coloring(g, |c| per_edge_coloring(&c.0, &mut total)),
        None => per_edge_coloring(&[], &mut total),
    }
    let value = total.real()?;
    let loops = 3i64.pow(d.free_loops() as u32);
    Ok(BracketValue(
        value
            .checked_mul(loops)
            .expect("bracket value overflowed i64"),
    ))
}

/// The original bracket: node tensors only, circled crossings ignored.
pub fn contract_plain(d: &Diagram) -> Result<BracketValue, PenroseError> {
    contract(d, Contraction::Plain)
}

/// Node tensors together with the sign tensor on every circled crossing.
pub fn contract_extended(d: &Diagram) -> Result<BracketValue, PenroseError> {
    contract(d, Contraction::Extended)
}

pub fn contract_with(d: &Diagram, mode: Contraction) -> Result<BracketValue, PenroseError> {
    contract(d, mode)
}

/// Contribution of one proper coloring of the underlying graph; `c` is
/// indexed by the edge ids of [`Diagram::underlying_graph`].
pub fn per_coloring_weight(
    d: &Diagram,
    c: &EdgeColoring,
    mode: Contraction,
) -> Result<i64, PenroseError> {
    let u = d.underlying_graph()?;
    if !is_proper(&u.graph, c).map_err(|_| PenroseError::ImproperColoring)? {
        return Err(PenroseError::ImproperColoring);
    }
    let st = d.strands();
    let power = node_phase(d, &st, &c.0).expect("proper colorings never vanish at a node");
    let mut w = 1i64;
    for (cx, pass) in d.crossings().iter().zip(&st.pass) {
        w *= mode.weight(cx.kind, c[pass[0]], c[pass[1]]);
    }
    let mut g = Gaussian::default();
    g.add(power, w);
    g.real()
}

/// Every proper coloring of the underlying graph with its weight.
pub fn per_coloring_weights(
    d: &Diagram,
    mode: Contraction,
) -> Result<Vec<(EdgeColoring, i64)>, PenroseError> {
    let u = d.underlying_graph()?;
    let mut out = Vec::new();
    let mut err = None;
    for_each_coloring(&u.graph, |c| match per_coloring_weight(d, c, mode) {
        Ok(w) => out.push((c.clone(), w)),
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Splits a circled crossing as `[circled] = 2·[dotted] − [plain]`.
pub fn expand_circled(d: &Diagram, crossing: usize) -> Result<(Diagram, Diagram), PenroseError> {
    match d.crossings().get(crossing) {
        Some(x) if x.kind == CrossingKind::Circled => Ok((
            d.with_crossing_kind(crossing, CrossingKind::Dotted),
            d.with_crossing_kind(crossing, CrossingKind::Plain),
        )),
        _ => Err(PenroseError::NotCircled(crossing)),
    }
}
