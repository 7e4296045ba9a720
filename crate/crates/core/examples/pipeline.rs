//! End to end from a JSON config: point cloud, kNN graph, height field,
//! rounded Reeb quotient, barcode decorations and persistence images.
//! Output files go to the directory given as the first argument.

use reebdeco::pipeline::{run_pipeline, PipelineConfig};

fn main() -> reebdeco::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "pipeline_out".into());
    let cfg: PipelineConfig = serde_json::from_value(serde_json::json!({
        "input": {"kind": "generate", "shape": "torus", "n": 800, "noise": 0.02},
        "seed": 5,
        "graph": {"kind": "knn", "k": 8},
        "field": {"kind": "height", "axis": 0},
        "round": 0.5,
        "lambda": 2.0,
        "r_max": 1.5,
        "landmarks": 120,
        "image": {"resolution": [20, 20]},
        "output_dir": out,
    }))?;
    let result = run_pipeline(&cfg)?;
    let r = &result.report;
    println!(
        "{} nodes, {} edges, {} classes",
        r.nodes, r.edges, r.classes
    );
    println!("H{} bars per class: {:?}", r.degree, r.bar_counts);
    println!("wrote graph.json, drg.json, drg_images.json, report.json and SVGs to {out}/");
    Ok(())
}
