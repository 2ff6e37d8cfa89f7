//! Evaluation by repeated edge expansion.
//!
//! An edge between distinct nodes `u` and `v` is removed together with both
//! nodes. If `x1, x2` follow the edge clockwise at `u` and `y1, y2` at `v`,
//! contracting the two epsilons gives
//!
//! ```text
//! [edge] = [x1-y2, x2-y1] - [x1-y1, x2-y2 with a plain crossing]
//! ```
//!
//! Crossings on the removed edge are handled first: a self-crossing is
//! dissolved, a circled or plain crossing with another strand `y` is copied
//! onto both new strands (the sign tensor satisfies
//! `s(y, third(a, b)) = s(y, a)·s(y, b)`), and a dotted one is split through
//! `[dotted] = ([circled] + [plain]) / 2`. Once no nodes remain the closed
//! strands are colored directly.

use crate::coloring::Color;
use crate::diagram::{CrossingKind, Diagram};

use super::{crossing_weight, BracketValue, PenroseError};

pub const DEFAULT_SKEIN_BUDGET: u64 = 1_000_000;

pub fn skein_evaluate(d: &Diagram) -> Result<BracketValue, PenroseError> {
    skein_evaluate_with_budget(d, DEFAULT_SKEIN_BUDGET)
}

/// Like [`skein_evaluate`], giving up after `budget` expansion steps.
pub fn skein_evaluate_with_budget(d: &Diagram, budget: u64) -> Result<BracketValue, PenroseError> {
    let mut steps = 0;
    let v = Net::from_diagram(d).eval(&mut steps, budget)?;
    Ok(BracketValue(v))
}

/// A strand end: (strand, side). Sides 0 and 1 are the two ends of an open strand.
type End = (usize, u8);

#[derive(Clone)]
struct Strand {
    /// Attachment (node, clockwise position) of each side; `None` once closed.
    ends: Option<[(usize, usize); 2]>,
    /// Strand this one was merged into.
    next: Option<usize>,
}

#[derive(Clone)]
struct Net {
    /// Per node, the strand end at each clockwise position; `None` once removed.
    nodes: Vec<Option<[End; 3]>>,
    strands: Vec<Strand>,
    crossings: Vec<(CrossingKind, usize, usize)>,
    free_loops: usize,
}

impl Net {
    fn from_diagram(d: &Diagram) -> Net {
        let st = d.strands();
        let mut nodes = Vec::with_capacity(d.node_count());
        let mut strands: Vec<Strand> = (0..st.len())
            .map(|_| Strand {
                ends: None,
                next: None,
            })
            .collect();
        for v in 0..d.node_count() {
            let cw = d.node_cw(v);
            let mut at = [(0, 0); 3];
            for (pos, &slot) in cw.iter().enumerate() {
                let (s, side) = st.node_port[v][slot as usize];
                at[pos] = (s, side);
                let ends = strands[s].ends.get_or_insert([(0, 0); 2]);
                ends[side as usize] = (v, pos);
            }
            nodes.push(Some(at));
        }
        let crossings = d
            .crossings()
            .iter()
            .zip(&st.pass)
            .map(|(x, p)| (x.kind, p[0], p[1]))
            .collect();
        Net {
            nodes,
            strands,
            crossings,
            free_loops: d.free_loops(),
        }
    }

    fn find(&self, mut s: usize) -> usize {
        while let Some(n) = self.strands[s].next {
            s = n;
        }
        s
    }

    fn live_nodes(&self) -> impl Iterator<Item = (usize, &[End; 3])> {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(v, n)| n.as_ref().map(|n| (v, n)))
    }

    fn eval(self, steps: &mut u64, budget: u64) -> Result<i64, PenroseError> {
        *steps += 1;
        if *steps > budget {
            return Err(PenroseError::RecursionBudgetExceeded { budget });
        }
        // an epsilon with a repeated index vanishes
        for (_, at) in self.live_nodes() {
            if at[0].0 == at[1].0 || at[1].0 == at[2].0 || at[0].0 == at[2].0 {
                return Ok(0);
            }
        }
        let Some(e) = self.expandable_edge() else {
            return Ok(self.terminal());
        };
        if let Some(k) = self.crossings.iter().position(|&(kind, a, b)| {
            kind == CrossingKind::Dotted && {
                let (a, b) = (self.find(a), self.find(b));
                a != b && (a == e || b == e)
            }
        }) {
            let mut circled = self.clone();
            circled.crossings[k].0 = CrossingKind::Circled;
            let mut plain = self;
            plain.crossings[k].0 = CrossingKind::Plain;
            let sum = circled.eval(steps, budget)? + plain.eval(steps, budget)?;
            debug_assert_eq!(sum % 2, 0);
            return Ok(sum / 2);
        }
        let parallel = self.expand(e, false).eval(steps, budget)?;
        let crossed = self.expand(e, true).eval(steps, budget)?;
        Ok(parallel - crossed)
    }

    /// Lowest live strand joining two distinct nodes.
    fn expandable_edge(&self) -> Option<usize> {
        (0..self.strands.len()).find(|&s| {
            let st = &self.strands[s];
            st.next.is_none() && matches!(st.ends, Some([(u, _), (v, _)]) if u != v)
        })
    }

    fn expand(&self, e: usize, crossed: bool) -> Net {
        let mut net = self.clone();
        let [(u, i), (v, j)] = self.strands[e].ends.expect("open strand");
        let x1 = (u, (i + 1) % 3);
        let x2 = (u, (i + 2) % 3);
        let y1 = (v, (j + 1) % 3);
        let y2 = (v, (j + 2) % 3);

        let mut carried = Vec::new();
        net.crossings.retain(|&(kind, a, b)| {
            let (a, b) = (self.find(a), self.find(b));
            match (a == e, b == e) {
                (false, false) => true,
                (true, true) => false,
                (true, false) | (false, true) => {
                    if kind != CrossingKind::Plain {
                        carried.push((kind, if a == e { b } else { a }));
                    }
                    false
                }
            }
        });
        net.strands[e].next = None;
        net.strands[e].ends = None;

        let (r1, r2) = if crossed {
            (net.join(x1, y1), net.join(x2, y2))
        } else {
            (net.join(x1, y2), net.join(x2, y1))
        };
        if crossed {
            net.crossings.push((CrossingKind::Plain, r1, r2));
        }
        for (kind, y) in carried {
            net.crossings.push((kind, r1, y));
            net.crossings.push((kind, r2, y));
        }
        net.nodes[u] = None;
        net.nodes[v] = None;
        // the removed edge now has no ends and no crossings; retire it
        net.strands[e].next = Some(r1);
        net
    }

    /// Connects the strand ends sitting at two positions of nodes being removed.
    fn join(&mut self, p: (usize, usize), q: (usize, usize)) -> usize {
        let (s, sa) = self.nodes[p.0].unwrap()[p.1];
        let (t, tb) = self.nodes[q.0].unwrap()[q.1];
        if s == t {
            self.strands[s].ends = None;
            return s;
        }
        let a = self.strands[s].ends.unwrap()[1 - sa as usize];
        let b = self.strands[t].ends.unwrap()[1 - tb as usize];
        let r = self.strands.len();
        self.strands.push(Strand {
            ends: Some([a, b]),
            next: None,
        });
        self.strands[s].next = Some(r);
        self.strands[t].next = Some(r);
        for (side, (w, pos)) in [a, b].into_iter().enumerate() {
            self.nodes[w].as_mut().unwrap()[pos] = (r, side as u8);
        }
        r
    }

    /// Value of a diagram made only of closed strands and crossings.
    fn terminal(&self) -> i64 {
        debug_assert!(self.live_nodes().next().is_none());
        let live: Vec<usize> = (0..self.strands.len())
            .filter(|&s| self.strands[s].next.is_none())
            .collect();
        let index = |s: usize| live.binary_search(&s).unwrap();
        let k = live.len();

        // per strand pair: parity of circled crossings, and whether a dotted one forces equality
        let mut odd = vec![vec![false; k]; k];
        let mut tied = vec![vec![false; k]; k];
        for &(kind, a, b) in &self.crossings {
            let (a, b) = (index(self.find(a)), index(self.find(b)));
            if a == b {
                continue;
            }
            match kind {
                CrossingKind::Circled => {
                    odd[a][b] ^= true;
                    odd[b][a] ^= true;
                }
                CrossingKind::Dotted => {
                    tied[a][b] = true;
                    tied[b][a] = true;
                }
                CrossingKind::Plain => {}
            }
        }

        let mut value: i64 = 3i64.pow(self.free_loops as u32);
        let mut seen = vec![false; k];
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                let a = comp[i];
                for b in 0..k {
                    if !seen[b] && (odd[a][b] || tied[a][b]) {
                        seen[b] = true;
                        comp.push(b);
                    }
                }
                i += 1;
            }
            value *= component_sum(&comp, &odd, &tied);
        }
        value
    }
}

fn component_sum(comp: &[usize], odd: &[Vec<bool>], tied: &[Vec<bool>]) -> i64 {
    let m = comp.len();
    let mut colors = vec![Color::R; m];
    let mut total = 0;
    for code in 0..3u64.pow(m as u32) {
        let mut x = code;
        for c in colors.iter_mut() {
            *c = Color::from_index((x % 3) as usize);
            x /= 3;
        }
        let mut w = 1;
        'pairs: for i in 0..m {
            for j in i + 1..m {
                let (a, b) = (comp[i], comp[j]);
                if tied[a][b] {
                    w *= crossing_weight(CrossingKind::Dotted, colors[i], colors[j]);
                }
                if odd[a][b] {
                    w *= crossing_weight(CrossingKind::Circled, colors[i], colors[j]);
                }
                if w == 0 {
                    break 'pairs;
                }
            }
        }
        total += w;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Port;
    use crate::penrose::contract_extended;

    fn plane_theta() -> Diagram {
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

    #[test]
    fn theta_expands_to_nine_minus_three() {
        let net = Net::from_diagram(&plane_theta());
        let e = net.expandable_edge().unwrap();
        let mut steps = 0;
        assert_eq!(net.expand(e, false).eval(&mut steps, 100).unwrap(), 9);
        assert_eq!(net.expand(e, true).eval(&mut steps, 100).unwrap(), 3);
        assert_eq!(skein_evaluate(&plane_theta()).unwrap(), BracketValue(6));
    }

    #[test]
    fn loops_vanish() {
        let dumbbell = Diagram::new(
            vec![[0, 1, 2]; 2],
            vec![],
            vec![
                (Port::node(0, 0), Port::node(0, 1)),
                (Port::node(0, 2), Port::node(1, 2)),
                (Port::node(1, 0), Port::node(1, 1)),
            ],
            0,
        )
        .unwrap();
        assert_eq!(skein_evaluate(&dumbbell).unwrap(), BracketValue(0));
    }

    #[test]
    fn terminal_matches_contraction() {
        let d = crate::penrose::tests::two_circles();
        assert_eq!(skein_evaluate(&d).unwrap(), BracketValue(-3));
        let (dotted, plain) = crate::penrose::expand_circled(&d, 0).unwrap();
        assert_eq!(
            skein_evaluate(&dotted).unwrap(),
            contract_extended(&dotted).unwrap()
        );
        assert_eq!(
            skein_evaluate(&plain).unwrap(),
            contract_extended(&plain).unwrap()
        );
    }

    #[test]
    fn dotted_on_an_edge_is_split() {
        for i in 0..3 {
            let d = plane_theta().insert_twist(0, i, CrossingKind::Dotted);
            assert_eq!(
                skein_evaluate(&d).unwrap(),
                contract_extended(&d).unwrap(),
                "twist {i}"
            );
            let d = plane_theta().add_crossing_loop(&[i, (i + 1) % 3], CrossingKind::Dotted);
            assert_eq!(
                skein_evaluate(&d).unwrap(),
                contract_extended(&d).unwrap(),
                "loop {i}"
            );
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            skein_evaluate_with_budget(&plane_theta(), 2),
            Err(PenroseError::RecursionBudgetExceeded { budget: 2 })
        );
    }
}
