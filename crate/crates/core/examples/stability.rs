//! Rounding a field moves its decorated Reeb graph by a bounded amount.
//! Compares a small graph with its rounded, smoothed versions by exhaustive
//! correspondence search and prints the distance next to the bound
//! `2 max(1, 1/lambda) (delta + epsilon)`.

use rand::Rng;
use reebdeco::compare::decorated_gh_barcodes;
use reebdeco::decorate::{decorate_all, DecorationConfig};
use reebdeco::persistence::SliceSchedule;
use reebdeco::quotient::{round_values, smooth_quotient, QuotientSpec};
use reebdeco::synthetic::rng;
use reebdeco::{DecoratedReebGraph, FunctionGraph, NodeMetric, PointCloud};

fn decorated(
    g: &FunctionGraph,
    spec: &QuotientSpec,
    cfg: &DecorationConfig,
) -> reebdeco::Result<DecoratedReebGraph> {
    Ok(decorate_all(g, &smooth_quotient(g, spec)?, cfg)?.0)
}

fn main() -> reebdeco::Result<()> {
    let mut r = rng(4, 0);
    let n = 6;
    let cloud = PointCloud::new(
        (0..n)
            .map(|_| vec![r.gen_range(0.0..1.0), r.gen_range(0.0..1.0)])
            .collect(),
    )?;
    let edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)];
    let values: Vec<f64> = (0..n).map(|_| r.gen_range(0.0..1.0)).collect();
    let g = FunctionGraph::scalar(n, edges, &values)?.with_metric(NodeMetric::Euclidean(cloud))?;

    let lambda = 0.5;
    let cfg = DecorationConfig::new(SliceSchedule::new(lambda, 0.0)?, 0, 10.0);
    let base = decorated(&g, &QuotientSpec::reeb(), &cfg)?;
    println!("{} classes before rounding", base.class_count);
    for theta in [0.1, 0.2, 0.4] {
        let h = round_values(&g, theta)?;
        for eps in [0.0, 0.1] {
            let other = decorated(&h, &QuotientSpec::smoothing(eps), &cfg)?;
            let d = decorated_gh_barcodes(&base, &other, 6)?;
            let bound = 2.0 * (1.0f64).max(1.0 / lambda) * (theta / 2.0 + eps);
            println!(
                "theta {theta:.1} epsilon {eps:.1}: {} classes, distance {d:.3} <= {bound:.3}",
                other.class_count
            );
        }
    }
    Ok(())
}
