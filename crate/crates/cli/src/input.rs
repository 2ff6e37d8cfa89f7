use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use chromatic_bracket::diagram::chord_immersion;
use chromatic_bracket::{CubicGraph, Diagram};
use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Graph,
    Diagram,
}

pub enum Input {
    Graph(CubicGraph),
    Diagram(Diagram),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Graph(_) => "graph",
            Input::Diagram(_) => "diagram",
        }
    }

    /// The abstract graph, dissolving crossings if needed.
    pub fn graph(&self) -> Result<CubicGraph> {
        match self {
            Input::Graph(g) => Ok(g.clone()),
            Input::Diagram(d) => Ok(d.underlying_graph()?.graph),
        }
    }

    /// The diagram itself, or a chord immersion of a bare graph when allowed.
    pub fn diagram(&self, auto_immerse: bool) -> Result<Diagram> {
        match self {
            Input::Diagram(d) => Ok(d.clone()),
            Input::Graph(g) if auto_immerse => {
                let order: Vec<usize> = (0..g.node_count()).collect();
                Ok(chord_immersion(g, &order)?)
            }
            Input::Graph(_) => {
                bail!("this method needs a diagram; pass --auto-immerse to immerse the graph")
            }
        }
    }
}

/// Reads `path` (or stdin for `-`), inferring graph or diagram from the
/// shape of `nodes` unless `forced`.
pub fn load(path: &Path, forced: Option<Kind>) -> Result<Input> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse(&text, forced)
}

pub fn parse(text: &str, forced: Option<Kind>) -> Result<Input> {
    let kind = match forced {
        Some(k) => k,
        None => {
            let v: Value = serde_json::from_str(text).context("input is not JSON")?;
            match v.get("nodes") {
                Some(Value::Number(_)) => Kind::Graph,
                Some(Value::Array(_)) => Kind::Diagram,
                _ => {
                    bail!("cannot tell a graph from a diagram: `nodes` must be a number or a list")
                }
            }
        }
    };
    Ok(match kind {
        Kind::Graph => Input::Graph(CubicGraph::from_json(text).context("parsing graph")?),
        Kind::Diagram => Input::Diagram(Diagram::from_json(text).context("parsing diagram")?),
    })
}
