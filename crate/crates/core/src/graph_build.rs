//! Graphs from point clouds, and the scalar fields placed on them.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{FunctionGraph, NodeMetric, PointCloud, PointMetric};

/// Default iteration cap for [`pagerank_field`].
pub const PAGERANK_MAX_ITER: usize = 100_000;

/// Symmetrized k-nearest-neighbour graph: `[i, j]` is an edge when `j` is
/// among the `k` nearest points of `i` or the other way round. Distance ties
/// go to the smaller index. Values are constant zero until a field is set.
pub fn knn_graph(cloud: &PointCloud, k: usize) -> Result<FunctionGraph> {
    let n = cloud.len();
    if k == 0 || k >= n {
        return Err(Error::InvalidInput(format!("k = {k} must lie in 1..{n}")));
    }
    let neighbours: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut cand: Vec<(f64, usize)> = (0..n)
                .filter(|&j| j != i)
                .map(|j| (cloud.dist(i, j), j))
                .collect();
            let by_dist =
                |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
            if k < cand.len() {
                cand.select_nth_unstable_by(k - 1, by_dist);
                cand.truncate(k);
            }
            cand.into_iter().map(|(_, j)| j).collect()
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = neighbours
        .iter()
        .enumerate()
        .flat_map(|(i, js)| js.iter().map(move |&j| (i.min(j), i.max(j))))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    finish(cloud, edges)
}

/// Graph with an edge between every pair of points at distance `<= r`.
pub fn radius_graph(cloud: &PointCloud, r: f64) -> Result<FunctionGraph> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput(format!(
            "radius must be positive, got {r}"
        )));
    }
    let n = cloud.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            ((i + 1)..n)
                .filter(move |&j| cloud.dist(i, j) <= r)
                .map(move |j| (i, j))
        })
        .collect();
    finish(cloud, edges)
}

fn finish(cloud: &PointCloud, edges: Vec<(usize, usize)>) -> Result<FunctionGraph> {
    FunctionGraph::without_values(cloud.len(), edges)?
        .with_positions(cloud.to_rows())?
        .with_metric(NodeMetric::Euclidean(cloud.clone()))
}

/// Coordinate `axis` of every point.
pub fn height_field(cloud: &PointCloud, axis: usize) -> Result<Vec<f64>> {
    if axis >= cloud.dim() {
        return Err(Error::InvalidInput(format!(
            "axis {axis} out of range for dimension {}",
            cloud.dim()
        )));
    }
    Ok(cloud.points().map(|p| p[axis]).collect())
}

/// p-eccentricity `(sum_y d(x, y)^p)^(1/p)`.
pub fn eccentricity_field<M: PointMetric + ?Sized>(metric: &M, p: f64) -> Result<Vec<f64>> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidInput(format!("p must be positive, got {p}")));
    }
    let n = metric.len();
    Ok((0..n)
        .into_par_iter()
        .map(|x| {
            let s: f64 = (0..n).map(|y| metric.dist(x, y).powf(p)).sum();
            s.powf(1.0 / p)
        })
        .collect())
}

/// PageRank of the undirected graph (each edge is a pair of arcs) with
/// uniform teleportation, by power iteration until the L1 change drops
/// below `tol`.
pub fn pagerank_field(graph: &FunctionGraph, damping: f64, tol: f64) -> Result<Vec<f64>> {
    pagerank_with_cap(graph, damping, tol, PAGERANK_MAX_ITER)
}

pub fn pagerank_with_cap(
    graph: &FunctionGraph,
    damping: f64,
    tol: f64,
    max_iter: usize,
) -> Result<Vec<f64>> {
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::InvalidInput(format!(
            "damping must lie in (0,1), got {damping}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let n = graph.node_count();
    let uniform = 1.0 / n as f64;
    let mut pr = vec![uniform; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        // isolated node only when n == 1; its mass teleports
        let dangling: f64 = (0..n)
            .filter(|&v| graph.neighbors(v).is_empty())
            .map(|v| pr[v])
            .sum();
        let base = (1.0 - damping) * uniform + damping * dangling * uniform;
        for (v, slot) in next.iter_mut().enumerate() {
            let inflow: f64 = graph
                .neighbors(v)
                .iter()
                .map(|&u| pr[u] / graph.neighbors(u).len() as f64)
                .sum();
            *slot = base + damping * inflow;
        }
        residual = pr.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut pr, &mut next);
        if residual < tol {
            return Ok(pr);
        }
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
        residual,
    })
}
