//! Proper 3-edge-colorings by backtracking. This is the ground truth the
//! bracket and state-sum evaluators are checked against.

use std::fmt;
use std::ops::Index;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CubicGraph, EdgeId, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "r")]
    R,
    #[serde(rename = "b")]
    B,
    /// Purple, read as the formal product of red and blue.
    #[serde(rename = "p")]
    P,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::R, Color::B, Color::P];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Color {
        Color::ALL[i]
    }

    /// The color differing from both `a` and `b`; `None` when `a == b`.
    pub fn third(a: Color, b: Color) -> Option<Color> {
        if a == b {
            None
        } else {
            Some(Color::from_index(3 - a.index() - b.index()))
        }
    }

    fn bit(self) -> u8 {
        1 << self.index()
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::R => "r",
            Color::B => "b",
            Color::P => "p",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeColoring(pub Vec<Color>);

impl EdgeColoring {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Edges carrying `color`, ascending.
    pub fn class(&self, color: Color) -> Vec<EdgeId> {
        (0..self.0.len()).filter(|&e| self.0[e] == color).collect()
    }
}

impl Index<EdgeId> for EdgeColoring {
    type Output = Color;

    fn index(&self, e: EdgeId) -> &Color {
        &self.0[e]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring covers {got} edges but the graph has {expected}")]
    PartialColoring { expected: usize, got: usize },
}

pub fn is_proper(g: &CubicGraph, c: &EdgeColoring) -> Result<bool, ColoringError> {
    if c.len() != g.edge_count() {
        return Err(ColoringError::PartialColoring {
            expected: g.edge_count(),
            got: c.len(),
        });
    }
    Ok((0..g.node_count()).all(|v| {
        let [a, b, d] = g.incident(v).map(|h| c[h.edge]);
        a != b && b != d && a != d
    }))
}

/// Breadth-first edge order from node 0, continuing into later components.
fn bfs_edge_order(g: &CubicGraph) -> Vec<EdgeId> {
    let mut seen_node = vec![false; g.node_count()];
    let mut seen_edge = vec![false; g.edge_count()];
    let mut order = Vec::with_capacity(g.edge_count());
    let mut queue = std::collections::VecDeque::new();
    for root in 0..g.node_count() {
        if seen_node[root] {
            continue;
        }
        seen_node[root] = true;
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            for h in g.incident(x) {
                if !seen_edge[h.edge] {
                    seen_edge[h.edge] = true;
                    order.push(h.edge);
                }
                let y = g.node_of(h.opposite());
                if !seen_node[y] {
                    seen_node[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    g: &'a CubicGraph,
    order: Vec<EdgeId>,
    used: Vec<u8>,
    colors: Vec<Color>,
}

impl<'a> Search<'a> {
    fn new(g: &'a CubicGraph) -> Self {
        Search {
            g,
            order: bfs_edge_order(g),
            used: vec![0; g.node_count()],
            colors: vec![Color::R; g.edge_count()],
        }
    }

    fn try_assign(&mut self, e: EdgeId, c: Color) -> bool {
        let (u, v) = self.g.endpoints(e);
        let bit = c.bit();
        if self.used[u] & bit != 0 || self.used[v] & bit != 0 {
            return false;
        }
        self.used[u] |= bit;
        self.used[v] |= bit;
        self.colors[e] = c;
        true
    }

    fn unassign(&mut self, e: EdgeId, c: Color) {
        let (u, v) = self.g.endpoints(e);
        self.used[u] &= !c.bit();
        self.used[v] &= !c.bit();
    }

    fn run<F: FnMut(&[Color])>(&mut self, depth: usize, visit: &mut F) {
        if depth == self.order.len() {
            visit(&self.colors);
            return;
        }
        let e = self.order[depth];
        for c in Color::ALL {
            if self.try_assign(e, c) {
                self.run(depth + 1, visit);
                self.unassign(e, c);
            }
        }
    }
}

/// Calls `visit` once per proper coloring, in backtracking order.
pub fn for_each_coloring<F: FnMut(&EdgeColoring)>(g: &CubicGraph, mut visit: F) {
    if g.has_loop() {
        return;
    }
    let mut s = Search::new(g);
    let mut buf = EdgeColoring(Vec::new());
    s.run(0, &mut |cs: &[Color]| {
        buf.0.clear();
        buf.0.extend_from_slice(cs);
        visit(&buf);
    });
}

pub fn enumerate_colorings(g: &CubicGraph) -> Vec<EdgeColoring> {
    let mut out = Vec::new();
    for_each_coloring(g, |c| out.push(c.clone()));
    out
}

/// Exact number of proper 3-edge-colorings.
///
/// The search tree is split by the color of the first edge and the three
/// subtrees are counted in parallel.
pub fn count_colorings(g: &CubicGraph) -> u64 {
    if g.has_loop() {
        return 0;
    }
    let order = bfs_edge_order(g);
    let first = order[0];
    Color::ALL
        .par_iter()
        .map(|&c| {
            let mut s = Search::new(g);
            let mut n: u64 = 0;
            if s.try_assign(first, c) {
                s.run(1, &mut |_| {
                    n = n.checked_add(1).expect("coloring count overflowed u64");
                });
            }
            n
        })
        .reduce(
            || 0,
            |a, b| a.checked_add(b).expect("coloring count overflowed u64"),
        )
}

/// Colors at `v` read in incidence order.
pub fn colors_at(g: &CubicGraph, c: &EdgeColoring, v: NodeId) -> [Color; 3] {
    g.incident(v).map(|h| c[h.edge])
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: every one of the 3^|E| assignments, checked locally.
    fn exhaustive(g: &CubicGraph) -> u64 {
        let m = g.edge_count();
        let mut n = 0;
        for code in 0..3u64.pow(m as u32) {
            let mut x = code;
            let cs: Vec<Color> = (0..m)
                .map(|_| {
                    let c = Color::from_index((x % 3) as usize);
                    x /= 3;
                    c
                })
                .collect();
            if is_proper(g, &EdgeColoring(cs)).unwrap() {
                n += 1;
            }
        }
        n
    }

    fn theta() -> CubicGraph {
        CubicGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    fn k4() -> CubicGraph {
        CubicGraph::new(4, vec![(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn properness() {
        use Color::*;
        let g = theta();
        assert!(is_proper(&g, &EdgeColoring(vec![R, B, P])).unwrap());
        assert!(!is_proper(&g, &EdgeColoring(vec![R, R, P])).unwrap());
        assert_eq!(
            is_proper(&g, &EdgeColoring(vec![R, B])),
            Err(ColoringError::PartialColoring {
                expected: 3,
                got: 2
            })
        );
        let dumbbell = CubicGraph::new(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        for c in 0..27 {
            let cs = EdgeColoring(
                (0..3)
                    .map(|i| Color::from_index(c / 3usize.pow(i) % 3))
                    .collect(),
            );
            assert!(!is_proper(&dumbbell, &cs).unwrap());
        }
        assert_eq!(count_colorings(&dumbbell), 0);
    }

    #[test]
    fn small_counts_match_exhaustive() {
        // Frozen from the exhaustive oracle: theta 6, K4 6.
        assert_eq!(exhaustive(&theta()), 6);
        assert_eq!(exhaustive(&k4()), 6);
        assert_eq!(count_colorings(&theta()), 6);
        assert_eq!(count_colorings(&k4()), 6);
        assert_eq!(enumerate_colorings(&k4()).len(), 6);
    }

    #[test]
    fn third_color() {
        assert_eq!(Color::third(Color::R, Color::B), Some(Color::P));
        assert_eq!(Color::third(Color::P, Color::R), Some(Color::B));
        assert_eq!(Color::third(Color::B, Color::B), None);
    }
}
