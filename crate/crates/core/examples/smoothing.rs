//! PageRank on a noisy circle, then the Reeb quotient and its smoothings:
//! larger epsilon merges more nodes.

use reebdeco::graph_build::{knn_graph, pagerank_field};
use reebdeco::quotient::{round_values, smooth_quotient, QuotientSpec};
use reebdeco::synthetic::cycle;

fn main() -> reebdeco::Result<()> {
    let cloud = cycle(300, 0.05, 3)?;
    let graph = knn_graph(&cloud, 6)?;
    let pr = pagerank_field(&graph, 0.85, 1e-12)?;
    let scaled: Vec<f64> = pr.iter().map(|p| p * cloud.len() as f64).collect();
    let graph = round_values(&graph.with_scalar_values(&scaled)?, 0.05)?;

    println!(
        "{} nodes, {} edges",
        graph.node_count(),
        graph.edges().len()
    );
    for eps in [0.0, 0.05, 0.1, 0.2, 0.5] {
        let q = smooth_quotient(&graph, &QuotientSpec::smoothing(eps))?;
        let largest = q.partition().iter().map(Vec::len).max().unwrap_or(0);
        println!(
            "epsilon {eps:<4}  classes {:4}  largest class {largest}",
            q.class_count
        );
    }
    Ok(())
}
