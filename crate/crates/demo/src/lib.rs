//! Browser bindings. Every entry point takes plain strings and returns a JSON
//! (or CSV) string; errors come back as a thrown JS string.

use std::sync::Arc;

use ringline_core::models::{export_figure_data, model_line_set, Example, FigureRange};
use ringline_core::projline::{DistantGraph, ProjectiveLine};
use ringline_core::radpar::parallel_classes;
use ringline_core::ring::{build_ring_with, BuildOptions};
use ringline_core::RingDescriptor;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Rings larger than this would make the page unresponsive.
const DEMO_MAX_SIZE: usize = 64;

fn err(e: impl ToString) -> String {
    e.to_string()
}

#[derive(Serialize)]
struct GraphView {
    ring: String,
    local: bool,
    radical: Vec<String>,
    points: Vec<String>,
    edges: Vec<[usize; 2]>,
    classes: Vec<Vec<usize>>,
}

pub fn distant_graph_json(ring: &str) -> Result<String, String> {
    let desc: RingDescriptor = ring.parse().map_err(err)?;
    let r = Arc::new(build_ring_with(&desc, &BuildOptions { max_size: DEMO_MAX_SIZE }).map_err(err)?);
    let line = ProjectiveLine::enumerate(Arc::clone(&r));
    let graph = DistantGraph::build(&line);
    let rep = parallel_classes(&line, &graph);
    let view = GraphView {
        ring: desc.to_string(),
        local: r.is_local(),
        radical: r.radical().members().iter().map(|&x| r.label(x).to_string()).collect(),
        points: (0..line.len()).map(|p| line.label(p)).collect(),
        edges: graph.edges(),
        classes: rep.classes,
    };
    serde_json::to_string(&view).map_err(err)
}

#[derive(Serialize)]
struct ModelView {
    field: String,
    q: usize,
    labels: Vec<String>,
    lines: Vec<ModelLine>,
}

#[derive(Serialize)]
struct ModelLine {
    tag: String,
    kind: String,
    /// `(z1, z2)` as field element indices.
    points: Vec<[usize; 2]>,
}

pub fn dual_model_json(field: &str, t: &str) -> Result<String, String> {
    let k: RingDescriptor = field.parse().map_err(err)?;
    let alg = Example::Dual.algebra(&k).map_err(err)?;
    if alg.ring().size() > DEMO_MAX_SIZE * 4 {
        return Err(format!("{k} is too large for the demo"));
    }
    let f = alg.field();
    let t = f.parse_element(t).map_err(err)?;
    let set = model_line_set(&alg, Example::Dual, t).map_err(err)?;
    let lines = set
        .lines
        .iter()
        .map(|l| ModelLine {
            tag: l.tag.to_string(),
            kind: l.kind.to_string(),
            points: l
                .points
                .iter()
                .map(|&z| {
                    let c = alg.coords(z);
                    [c[0].index(), c[1].index()]
                })
                .collect(),
        })
        .collect();
    let view = ModelView {
        field: k.to_string(),
        q: f.size(),
        labels: f.elements().map(|x| f.label(x).to_string()).collect(),
        lines,
    };
    serde_json::to_string(&view).map_err(err)
}

pub fn figure_csv(example: &str, t: f64, range: &str) -> Result<String, String> {
    let example: Example = example.parse().map_err(err)?;
    let range: FigureRange = range.parse().map_err(err)?;
    export_figure_data(example, t, &range).map_err(err)
}

#[wasm_bindgen]
pub fn distant_graph(ring: &str) -> Result<String, JsValue> {
    distant_graph_json(ring).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn dual_model(field: &str, t: &str) -> Result<String, JsValue> {
    dual_model_json(field, t).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn figure(example: &str, t: f64, range: &str) -> Result<String, JsValue> {
    figure_csv(example, t, range).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_view() {
        let v: serde_json::Value = serde_json::from_str(&distant_graph_json("dual(gf(2))").unwrap()).unwrap();
        assert_eq!(v["points"].as_array().unwrap().len(), 6);
        assert_eq!(v["edges"].as_array().unwrap().len(), 12);
        assert_eq!(v["classes"].as_array().unwrap().len(), 3);
        assert_eq!(v["local"], true);
        assert!(distant_graph_json("zmod(1000)").is_err());
        assert!(distant_graph_json("nope").is_err());
    }

    #[test]
    fn model_view() {
        let v: serde_json::Value = serde_json::from_str(&dual_model_json("gf(4)", "1").unwrap()).unwrap();
        assert_eq!(v["q"], 4);
        assert_eq!(v["lines"].as_array().unwrap().len(), 20);
        assert!(dual_model_json("gf(2)", "1").is_err());
        assert!(dual_model_json("gf(3)", "0").is_err());
    }

    #[test]
    fn figure_view() {
        let csv = figure_csv("ternion", 1.0, "0:1:0.5").unwrap();
        assert!(csv.starts_with("curve_id,param,x,y,z\n"));
        assert!(figure_csv("dual", 1.0, "bad").is_err());
    }
}
