//! Browser bindings. Each export returns a JSON string; the plain-Rust
//! `*_json` functions behind them are what the native tests exercise.

use serde_json::json;
use wasm_bindgen::prelude::*;

use hombound::format::{graph_to_json_value, parse_graph_json, BettiReport};
use hombound::theorem::{acted_hom, hom_bound_certificate, PipelineOptions};
use hombound::topology::{build_eng, homological_connectivity, homology_ranks, order_complex, DEFAULT_PRIMES};
use hombound::{chromatic_number, cyclic_group, named_graph, Caps, Graph};

/// Smaller than the library defaults so a page never hangs for long.
fn browser_options() -> PipelineOptions {
    PipelineOptions {
        caps: Caps { max_elements: 20_000, max_nodes: 2_000_000, max_chains: 500_000 },
        ..PipelineOptions::default()
    }
}

fn graph_from_spec(spec: &str) -> Result<Graph, String> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        let parsed = parse_graph_json(spec).map_err(|e| e.to_string())?;
        return Ok(parsed.graph);
    }
    named_graph(spec).map_err(|e| e.to_string())
}

/// Bound certificate for `Hom(T, H)`, plus `H` with an optimal coloring for
/// drawing.
pub fn certify_json(t: &str, h: &str) -> Result<String, String> {
    let (tg, hg) = (graph_from_spec(t)?, graph_from_spec(h)?);
    let opts = browser_options();
    let acted = acted_hom(&tg, &hg, &opts.caps).map_err(|e| e.to_string())?;
    let cert = hom_bound_certificate(&acted, (t.trim(), h.trim()), &opts).map_err(|e| e.to_string())?;
    let colors = cert.h_coloring.as_ref().map(|c| c.colors.clone()).unwrap_or_default();
    let out = json!({
        "summary": cert.to_string(),
        "lower_bound": cert.lower_bound,
        "conn_h": cert.conn_h,
        "chi_cp": cert.chi_cp,
        "chi_h": cert.chi_h,
        "elements": cert.instance.elements,
        "verdict": cert.verdict,
        "graph": graph_to_json_value(&hg),
        "colors": colors,
    });
    Ok(out.to_string())
}

/// Exact chromatic number of a built-in name or graph JSON.
pub fn chromatic_json(spec: &str) -> Result<String, String> {
    let g = graph_from_spec(spec)?;
    if g.vertex_count() > 200 {
        return Err("demo is limited to 200 vertices".into());
    }
    let (chi, coloring) = chromatic_number(&g).map_err(|e| e.to_string())?;
    Ok(json!({ "chi": chi, "colors": coloring.assignment(), "graph": graph_to_json_value(&g) }).to_string())
}

/// Homology of the model space `Z_r x {1..n+1}`.
pub fn eng_homology_json(r: usize, n: usize) -> Result<String, String> {
    if r * (n + 1) > 60 {
        return Err("demo is limited to r * (n + 1) <= 60".into());
    }
    let group = cyclic_group(r).map_err(|e| e.to_string())?;
    let p = build_eng(&group, n).map_err(|e| e.to_string())?;
    let opts = browser_options();
    let k = order_complex(p.poset(), n.max(1) + 2, &opts.caps).map_err(|e| e.to_string())?;
    let betti: Vec<BettiReport> = DEFAULT_PRIMES
        .iter()
        .map(|&q| homology_ranks(&k, q).map(|b| BettiReport::from(&b)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let conn = homological_connectivity(&k).map_err(|e| e.to_string())?;
    Ok(json!({
        "elements": p.len(),
        "f_vector": k.f_vector(),
        "dimension": k.dimension(),
        "betti": betti,
        "conn": conn.conn,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn certify(t: &str, h: &str) -> Result<String, JsValue> {
    certify_json(t, h).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn chromatic(spec: &str) -> Result<String, JsValue> {
    chromatic_json(spec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn eng_homology(r: usize, n: usize) -> Result<String, JsValue> {
    eng_homology_json(r, n).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn certify_k2_petersen() {
        let v = parse(&certify_json("K2", "petersen").unwrap());
        assert_eq!(v["lower_bound"], 3);
        assert_eq!(v["chi_h"], 3);
        assert_eq!(v["colors"].as_array().unwrap().len(), 10);
        assert!(certify_json("C5", "K3").is_err());
    }

    #[test]
    fn chromatic_from_name_and_json() {
        assert_eq!(parse(&chromatic_json("C7").unwrap())["chi"], 3);
        assert_eq!(parse(&chromatic_json(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap())["chi"], 2);
        assert!(chromatic_json("nonsense").is_err());
    }

    #[test]
    fn model_space_is_a_sphere() {
        let v = parse(&eng_homology_json(2, 2).unwrap());
        assert_eq!(v["betti"][0]["betti"], serde_json::json!([0, 0, 1]));
        assert_eq!(v["conn"], 1);
        assert!(eng_homology_json(1, 2).is_err());
    }
}
