//! File formats.
//!
//! * graph JSON: `{ "n": 3, "edges": [[0, 1], [1, 2]] }`, 0-based
//! * DIMACS `.col`: `p edge N M` then `e u v` lines, 1-based
//! * coloring JSON: `{ "chi": 3, "colors": [1, 2, 3] }`
//! * G-poset JSON: `{ "n", "leq": [[x, y], ..], "group": { "order", "mult" }, "action" }`
//!   where `leq` lists pairs `x <= y` (reflexive pairs implied) and
//!   `action[g][x] = g . x`
//! * Hom poset JSON: `{ "F", "H", "elements" }` with each element a list of
//!   cells, each cell a sorted vertex array
//! * complex JSON: `{ "vertex_count", "dim_cap", "truncated", "f_vector", "facets" }`
//! * Betti report: `{ "p", "betti", "truncated" }`

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::FiniteGroup;
use crate::hom::HomPoset;
use crate::poset::{make_gposet, GPoset};
use crate::topology::{BettiVector, SimplicialComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    DimacsCol,
    Json,
}

impl GraphFormat {
    /// Guesses from a file extension: `.json` is JSON, anything else DIMACS.
    pub fn from_path(path: &str) -> Self {
        if path.to_ascii_lowercase().ends_with(".json") {
            GraphFormat::Json
        } else {
            GraphFormat::DimacsCol
        }
    }
}

/// A parsed graph and any non-fatal oddities in the input.
#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<ParsedGraph> {
    match format {
        GraphFormat::DimacsCol => parse_dimacs(text),
        GraphFormat::Json => parse_graph_json(text),
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.vertex_count(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect() }
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Input { line: e.line(), msg: e.to_string() }
}

fn graph_from_json(raw: GraphJson) -> Result<ParsedGraph> {
    let mut warnings = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &[u, v] in &raw.edges {
        if u >= raw.n || v >= raw.n {
            return Err(Error::Format(format!("edge [{u}, {v}] out of range for n = {}", raw.n)));
        }
        if u == v {
            warnings.push(format!("self-loop at vertex {u}"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            warnings.push(format!("duplicate edge [{u}, {v}] ignored"));
        }
    }
    let graph = Graph::from_edges(raw.n, raw.edges.iter().map(|&[u, v]| (u, v)))?;
    Ok(ParsedGraph { graph, warnings })
}

pub fn parse_graph_json(text: &str) -> Result<ParsedGraph> {
    graph_from_json(serde_json::from_str(text).map_err(json_err)?)
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph serializes")
}

pub fn graph_to_json_value(g: &Graph) -> serde_json::Value {
    serde_json::to_value(GraphJson::from(g)).expect("graph serializes")
}

pub fn parse_dimacs(text: &str) -> Result<ParsedGraph> {
    let mut n: Option<usize> = None;
    let mut declared_edges = 0usize;
    let mut edges = Vec::new();
    let mut warnings = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        let err = |msg: &str| Error::Input { line: line_no, msg: format!("{msg}: '{line}'") };
        let mut parts = line.split_whitespace();
        match parts.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(err("second problem line"));
                }
                let kind = parts.next().ok_or_else(|| err("missing problem kind"))?;
                if kind != "edge" && kind != "col" {
                    return Err(err("expected 'p edge N M'"));
                }
                n = Some(parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| err("bad vertex count"))?);
                declared_edges = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| err("bad edge count"))?;
            }
            Some("e") => {
                let nv = n.ok_or_else(|| err("edge before problem line"))?;
                let mut endpoint = || -> Result<usize> {
                    let v: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| err("bad endpoint"))?;
                    if v == 0 || v > nv {
                        return Err(err("endpoint out of range 1..N"));
                    }
                    Ok(v - 1)
                };
                let u = endpoint()?;
                let v = endpoint()?;
                if u == v {
                    warnings.push(format!("line {line_no}: self-loop at vertex {}", u + 1));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    warnings.push(format!("line {line_no}: duplicate edge {} {} ignored", u + 1, v + 1));
                }
                edges.push((u, v));
            }
            Some(_) => return Err(err("unrecognized line")),
        }
    }
    let n = n.ok_or(Error::Input { line: 0, msg: "missing 'p edge N M' line".into() })?;
    if declared_edges != edges.len() {
        warnings.push(format!("problem line declares {declared_edges} edges, found {}", edges.len()));
    }
    Ok(ParsedGraph { graph: Graph::from_edges(n, edges)?, warnings })
}

pub fn graph_to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).expect("write to string");
    }
    out
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    chi: usize,
    colors: Vec<usize>,
}

pub fn coloring_to_json(c: &Coloring) -> String {
    serde_json::to_string(&ColoringJson { chi: c.color_count(), colors: c.assignment().to_vec() })
        .expect("coloring serializes")
}

/// Reads `{chi, colors}`; colors must be at least 1 and `chi` must match
/// the number of distinct colors after normalization.
pub fn parse_coloring_json(text: &str) -> Result<Coloring> {
    let raw: ColoringJson = serde_json::from_str(text).map_err(json_err)?;
    if raw.colors.contains(&0) {
        return Err(Error::Format("colors start at 1".into()));
    }
    let c = Coloring::new(raw.colors);
    if c.color_count() != raw.chi {
        return Err(Error::Format(format!("chi = {} but {} distinct colors used", raw.chi, c.color_count())));
    }
    Ok(c)
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    mult: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GPosetJson {
    n: usize,
    leq: Vec<[usize; 2]>,
    group: GroupJson,
    action: Vec<Vec<usize>>,
}

pub fn parse_gposet_json(text: &str) -> Result<GPoset> {
    let raw: GPosetJson = serde_json::from_str(text).map_err(json_err)?;
    if raw.group.order != raw.group.mult.len() {
        return Err(Error::Format(format!(
            "group order {} but multiplication table has {} rows",
            raw.group.order,
            raw.group.mult.len()
        )));
    }
    let group = FiniteGroup::from_table(raw.group.mult)?;
    let leq: Vec<(usize, usize)> = raw.leq.iter().map(|&[x, y]| (x, y)).collect();
    make_gposet(raw.n, &leq, group, raw.action)
}

pub fn gposet_to_json(p: &GPoset) -> String {
    let raw = GPosetJson {
        n: p.len(),
        leq: p.poset().strict_pairs().map(|(x, y)| [x, y]).collect(),
        group: GroupJson { order: p.group().order(), mult: p.group().table() },
        action: p.action_table(),
    };
    serde_json::to_string(&raw).expect("gposet serializes")
}

#[derive(Serialize)]
struct HomPosetJson {
    #[serde(rename = "F")]
    f: GraphJson,
    #[serde(rename = "H")]
    h: GraphJson,
    elements: Vec<Vec<Vec<usize>>>,
}

pub fn hom_poset_to_json_value(hp: &HomPoset) -> serde_json::Value {
    let raw = HomPosetJson {
        f: GraphJson::from(hp.source()),
        h: GraphJson::from(hp.target()),
        elements: hp
            .elements()
            .iter()
            .map(|e| (0..e.cells().len()).map(|i| e.cell_vertices(i)).collect())
            .collect(),
    };
    serde_json::to_value(raw).expect("hom poset serializes")
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertex_count: usize,
    #[serde(default)]
    dim_cap: Option<usize>,
    #[serde(default)]
    truncated: bool,
    #[serde(default)]
    f_vector: Vec<usize>,
    facets: Vec<Vec<usize>>,
}

pub fn complex_to_json_value(k: &SimplicialComplex) -> serde_json::Value {
    let raw = ComplexJson {
        vertex_count: k.vertex_count(),
        dim_cap: Some(k.dim_cap()),
        truncated: k.is_truncated(),
        f_vector: k.f_vector(),
        facets: k.facets().into_iter().map(|f| f.into_iter().map(|v| v as usize).collect()).collect(),
    };
    serde_json::to_value(raw).expect("complex serializes")
}

/// Rebuilds a complex from its facet list. `dim_cap` overrides the file's
/// value when given; the f-vector in the file is informational.
pub fn parse_complex_json(text: &str, dim_cap: Option<usize>, max_chains: u64) -> Result<SimplicialComplex> {
    let raw: ComplexJson = serde_json::from_str(text).map_err(json_err)?;
    let cap = dim_cap.or(raw.dim_cap).unwrap_or(crate::topology::DEFAULT_DIM_CAP);
    SimplicialComplex::from_facets(raw.vertex_count, &raw.facets, cap, max_chains)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub p: u64,
    pub betti: Vec<usize>,
    pub truncated: bool,
}

impl From<&BettiVector> for BettiReport {
    fn from(b: &BettiVector) -> Self {
        BettiReport { p: b.field_prime, betti: b.reduced_betti.clone(), truncated: b.truncated }
    }
}
