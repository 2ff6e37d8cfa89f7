use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use chromatic_bracket::coloring::{count_colorings, enumerate_colorings};
use chromatic_bracket::diagram::chord_immersion;
use chromatic_bracket::formation::{classify_meetings, formation_from_coloring};
use chromatic_bracket::generators::{random_cubic, random_plane_cubic, NamedGraph};
use chromatic_bracket::graph::bridges_per_component;
use chromatic_bracket::matching::{
    complement_cycles, enumerate_perfect_matchings, is_even_matching,
};
use chromatic_bracket::penrose::{
    contract_with, per_coloring_weights, skein_evaluate, Contraction,
};
use chromatic_bracket::state::{all_states, logical_expansion_count};
use chromatic_bracket::{CubicGraph, Diagram, PerfectMatching};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::Input;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Penrose,
    PenroseSkein,
    States,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph,
    Diagram,
}

/// What every counting command prints.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub input: String,
    pub kind: &'static str,
    pub counts: BTreeMap<&'static str, i64>,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, f64>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<&'static str, Value>,
}

impl Report {
    fn new(command: &'static str, input: &str, kind: &'static str, timings: bool) -> Report {
        Report {
            command,
            input: input.to_string(),
            kind,
            counts: BTreeMap::new(),
            agree: true,
            timings_ms: timings.then(BTreeMap::new),
            details: BTreeMap::new(),
        }
    }

    fn time<T>(&mut self, method: &'static str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let t = Instant::now();
        let out = f()?;
        if let Some(ts) = self.timings_ms.as_mut() {
            ts.insert(method, t.elapsed().as_secs_f64() * 1e3);
        }
        Ok(out)
    }

    fn settle(&mut self) {
        let mut values = self.counts.values();
        let first = values.next();
        self.agree = values.all(|v| Some(v) == first);
    }

    pub fn summary(&self) -> String {
        let counts: Vec<String> = self
            .counts
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let verdict = if self.agree { "agree" } else { "DISAGREE" };
        format!(
            "{} ({}): {} [{verdict}]",
            self.input,
            self.kind,
            counts.join(" ")
        )
    }
}

pub struct CountOptions {
    pub method: Method,
    pub contraction: Option<Contraction>,
    pub skein: bool,
    pub per_coloring: bool,
    pub per_state: bool,
    pub auto_immerse: bool,
    pub matching_index: usize,
    pub timings: bool,
}

fn pick_matching(g: &CubicGraph, index: usize) -> Result<PerfectMatching> {
    let ms = enumerate_perfect_matchings(g);
    if ms.is_empty() {
        bail!("NoPerfectMatching: the graph has no perfect matching");
    }
    let n = ms.len();
    ms.into_iter().nth(index).ok_or_else(|| {
        anyhow!("IndexOutOfRange: matching index {index}, but there are {n} matchings")
    })
}

pub fn count(input: &Input, label: &str, o: &CountOptions) -> Result<Report> {
    let mut r = Report::new("count", label, input.kind(), o.timings);
    match o.method {
        Method::Brute => {
            let g = input.graph()?;
            let n = r.time("brute", || Ok(count_colorings(&g)))?;
            r.counts.insert("brute", n as i64);
        }
        Method::Penrose | Method::PenroseSkein => {
            let d = input.diagram(o.auto_immerse)?;
            if o.skein || o.method == Method::PenroseSkein {
                let v = r.time("penrose_skein", || Ok(skein_evaluate(&d)?))?;
                r.counts.insert("penrose_skein", v.0);
            } else {
                let mode = o.contraction.unwrap_or(Contraction::Extended);
                let name = match mode {
                    Contraction::Plain => "penrose_plain",
                    Contraction::Extended => "penrose_extended",
                };
                let v = r.time(name, || Ok(contract_with(&d, mode)?))?;
                r.counts.insert(name, v.0);
                if o.per_coloring {
                    let ws = per_coloring_weights(&d, mode)?;
                    let list: Vec<Value> = ws
                        .iter()
                        .map(|(c, w)| json!({"coloring": c, "weight": w}))
                        .collect();
                    r.details.insert("per_coloring", Value::Array(list));
                }
            }
        }
        Method::States => {
            let g = input.graph()?;
            let m = pick_matching(&g, o.matching_index)?;
            let n = r.time("states", || Ok(logical_expansion_count(&g, &m)?))?;
            r.counts.insert("states", n as i64);
            r.details.insert("matching", json!(m));
            if o.per_state {
                let states: Vec<_> = all_states(&g, &m)?.iter().map(|s| s.summary()).collect();
                r.details.insert("states", serde_json::to_value(states)?);
            }
        }
    }
    Ok(r)
}

/// Runs every method on the graph and on `diagram`; `states` is repeated
/// for every perfect matching.
pub fn crosscheck(
    g: &CubicGraph,
    d: &Diagram,
    label: &str,
    kind: &'static str,
    timings: bool,
) -> Result<Report> {
    let mut r = Report::new("crosscheck", label, kind, timings);
    let brute = r.time("brute", || Ok(count_colorings(g)))?;
    r.counts.insert("brute", brute as i64);
    let ext = r.time("penrose_extended", || {
        Ok(contract_with(d, Contraction::Extended)?)
    })?;
    r.counts.insert("penrose_extended", ext.0);
    let sk = r.time("penrose_skein", || Ok(skein_evaluate(d)?))?;
    r.counts.insert("penrose_skein", sk.0);
    if d.crossing_count() == 0 && d.is_plane() {
        let plain = r.time("penrose_plain", || {
            Ok(contract_with(d, Contraction::Plain)?)
        })?;
        r.counts.insert("penrose_plain", plain.0);
    }

    let ms = enumerate_perfect_matchings(g);
    let per_matching = r.time("states", || {
        ms.iter()
            .map(|m| Ok((m, logical_expansion_count(g, m)?)))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut even_total = 0u64;
    for m in &ms {
        if is_even_matching(g, m)? {
            even_total += 1 << complement_cycles(g, m)?.cycles.len();
        }
    }
    r.counts.insert("even_matchings", even_total as i64);
    if let Some(&(_, first)) = per_matching.first() {
        r.counts.insert("states", first as i64);
    }
    r.settle();
    if per_matching.iter().any(|&(_, n)| n != brute) {
        r.agree = false;
    }
    let list: Vec<Value> = per_matching
        .iter()
        .map(|(m, n)| json!({"matching": m, "count": n}))
        .collect();
    r.details.insert("states_per_matching", Value::Array(list));
    if !r.agree {
        r.details
            .insert("graph", serde_json::from_str(&g.to_json())?);
        r.details
            .insert("diagram", serde_json::from_str(&d.to_json())?);
    }
    Ok(r)
}

pub fn matchings(g: &CubicGraph, even_only: bool) -> Result<Value> {
    let ms = enumerate_perfect_matchings(g);
    let mut list = Vec::new();
    let mut even_count = 0;
    for m in &ms {
        let cc = complement_cycles(g, m)?;
        let even = cc.all_even();
        even_count += even as usize;
        if even || !even_only {
            list.push(json!({"edges": m, "cycle_lengths": cc.lengths(), "even": even}));
        }
    }
    Ok(json!({"count": ms.len(), "even": even_count, "matchings": list}))
}

pub fn formation(input: &Input, index: usize) -> Result<Value> {
    let g = input.graph()?;
    let colorings = enumerate_colorings(&g);
    let n = colorings.len();
    let c = colorings.get(index).ok_or_else(|| {
        anyhow!("IndexOutOfRange: coloring index {index}, but there are {n} colorings")
    })?;
    let f = formation_from_coloring(&g, c)?;
    let mut out = json!({
        "coloring_count": n,
        "coloring": c,
        "red": f.red.iter().map(|k| &k.edges).collect::<Vec<_>>(),
        "blue": f.blue.iter().map(|k| &k.edges).collect::<Vec<_>>(),
        "shared": f.shared,
    });
    if let Input::Diagram(d) = input {
        if d.crossing_count() == 0 && d.is_plane() {
            out["meetings"] = serde_json::to_value(classify_meetings(d, c)?.meetings)?;
        }
    }
    Ok(out)
}

/// A generated instance: the graph and a diagram of it.
pub fn generate(name: &str, n: Option<usize>, seed: u64) -> Result<(CubicGraph, Diagram, String)> {
    let need_even = |n: Option<usize>| -> Result<usize> {
        match n {
            Some(n) if n >= 2 && n % 2 == 0 => Ok(n),
            _ => bail!("{name} needs --n with an even value >= 2"),
        }
    };
    match name {
        "random_cubic" => {
            let n = need_even(n)?;
            let g = random_cubic(n, seed);
            let order: Vec<usize> = (0..n).collect();
            let d = chord_immersion(&g, &order)?;
            Ok((g, d, format!("random_cubic({n}, {seed})")))
        }
        "random_plane_cubic" => {
            let n = need_even(n)?;
            let d = random_plane_cubic(n, seed);
            Ok((
                d.underlying_graph()?.graph,
                d,
                format!("random_plane_cubic({n}, {seed})"),
            ))
        }
        _ => {
            let named = NamedGraph::parse(name, n).ok_or_else(|| {
                anyhow!(
                    "unknown generator `{name}` (theta, dumbbell, double_dumbbell, k4, prism, k33, petersen, \
                     isaacs_j --n N, random_cubic, random_plane_cubic)"
                )
            })?;
            Ok((named.graph(), named.diagram(), named.name()))
        }
    }
}

pub fn validate(input: &Input) -> Result<Value> {
    let g = input.graph()?;
    let mut out = json!({
        "valid": true,
        "kind": input.kind(),
        "nodes": g.node_count(),
        "edges": g.edge_count(),
        "connected": g.is_connected(),
        "has_loop": g.has_loop(),
        "bridges": bridges_per_component(&g),
    });
    if let Input::Diagram(d) = input {
        out["crossings"] = json!(d.crossing_count());
        out["free_loops"] = json!(d.free_loops());
        out["genus"] = json!(d.genus());
        out["plane"] = json!(d.is_plane());
    }
    Ok(out)
}
