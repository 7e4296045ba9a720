//! Directed Reeb radius on function graphs.
//!
//! `rho(x, y)` is the least `r` such that some edge path from `x` to `y`
//! keeps every value within `r` of `g(x)`.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Euclidean, FunctionGraph, ValueMetric};

/// Largest graph the path-enumeration oracles accept.
pub const ORACLE_MAX_NODES: usize = 12;

/// Reeb radii from one source node.
#[derive(Debug, Clone, PartialEq)]
pub struct ReebRadiusField {
    pub source: usize,
    pub rho: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64, usize);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

pub fn reeb_radius_from(graph: &FunctionGraph, x: usize) -> ReebRadiusField {
    reeb_radius_from_with(graph, x, &Euclidean)
}

/// Modified Dijkstra: a node's radius is fixed the first time it is reached,
/// as `max(rho(v), d(g(x), g(w)))` for the popped neighbour `v`. Keys leave
/// the heap in nondecreasing order, so the first assignment is optimal.
pub fn reeb_radius_from_with<V: ValueMetric + ?Sized>(
    graph: &FunctionGraph,
    x: usize,
    metric: &V,
) -> ReebRadiusField {
    let n = graph.node_count();
    let gx = graph.value(x);
    let mut rho = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    rho[x] = 0.0;
    heap.push(Reverse(Key(0.0, x)));
    while let Some(Reverse(Key(r, v))) = heap.pop() {
        for &w in graph.neighbors(v) {
            if rho[w] == f64::INFINITY {
                let rw = r.max(metric.distance(gx, graph.value(w)));
                rho[w] = rw;
                heap.push(Reverse(Key(rw, w)));
            }
        }
    }
    ReebRadiusField { source: x, rho }
}

/// Reusable buffers for Reeb-radius balls `{y : rho(x, y) <= eps}`.
pub struct BallSearch {
    rho: Vec<f64>,
    touched: Vec<usize>,
    heap: BinaryHeap<Reverse<Key>>,
}

impl BallSearch {
    pub fn new(n: usize) -> Self {
        BallSearch {
            rho: vec![f64::INFINITY; n],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    /// Nodes with `rho(x, y) <= eps` and their radii, in the order they were
    /// settled.
    pub fn ball(&mut self, graph: &FunctionGraph, x: usize, eps: f64) -> Vec<(usize, f64)> {
        for &t in &self.touched {
            self.rho[t] = f64::INFINITY;
        }
        self.touched.clear();
        self.heap.clear();
        let mut out = Vec::new();
        self.rho[x] = 0.0;
        self.touched.push(x);
        self.heap.push(Reverse(Key(0.0, x)));
        while let Some(Reverse(Key(r, v))) = self.heap.pop() {
            out.push((v, r));
            for &w in graph.neighbors(v) {
                if self.rho[w] == f64::INFINITY {
                    let rw = r.max(graph.value_distance(x, w));
                    self.rho[w] = rw;
                    self.touched.push(w);
                    if rw <= eps {
                        self.heap.push(Reverse(Key(rw, w)));
                    }
                }
            }
        }
        out
    }
}

/// Full `n x n` matrix of directed Reeb radii, row `x` from source `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RadiusMatrix {
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.data[x * self.n..(x + 1) * self.n]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|x| self.row(x).to_vec()).collect()
    }
}

pub fn reeb_radius_matrix(graph: &FunctionGraph) -> RadiusMatrix {
    reeb_radius_matrix_with(graph, &Euclidean)
}

pub fn reeb_radius_matrix_with<V: ValueMetric + ?Sized>(
    graph: &FunctionGraph,
    metric: &V,
) -> RadiusMatrix {
    let n = graph.node_count();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|x| reeb_radius_from_with(graph, x, metric).rho)
        .collect();
    RadiusMatrix {
        n,
        data: rows.concat(),
    }
}

/// Reeb radius by enumerating simple edge paths from `x` to `y`.
///
/// Restricting to simple paths loses nothing: cutting a cycle out of a path
/// leaves a subset of its nodes, so the maximum can only drop.
pub fn oracle_reeb_radius(graph: &FunctionGraph, x: usize, y: usize) -> Result<f64> {
    oracle_reeb_radius_with(graph, x, y, &Euclidean)
}

pub fn oracle_reeb_radius_with<V: ValueMetric + ?Sized>(
    graph: &FunctionGraph,
    x: usize,
    y: usize,
    metric: &V,
) -> Result<f64> {
    check_oracle_size(graph)?;
    let gx = graph.value(x);
    let cost: Vec<f64> = (0..graph.node_count())
        .map(|v| metric.distance(gx, graph.value(v)))
        .collect();
    let mut best = f64::INFINITY;
    let mut on_path = vec![false; graph.node_count()];
    on_path[x] = true;
    radius_paths(graph, x, y, 0.0, &cost, &mut on_path, &mut best);
    Ok(best)
}

fn radius_paths(
    graph: &FunctionGraph,
    v: usize,
    y: usize,
    cur: f64,
    cost: &[f64],
    on_path: &mut [bool],
    best: &mut f64,
) {
    if v == y {
        if cur < *best {
            *best = cur;
        }
        return;
    }
    for &w in graph.neighbors(v) {
        if on_path[w] {
            continue;
        }
        let next = cur.max(cost[w]);
        // the running maximum never decreases along a path
        if next >= *best {
            continue;
        }
        on_path[w] = true;
        radius_paths(graph, w, y, next, cost, on_path, best);
        on_path[w] = false;
    }
}

/// Least diameter of the value set along a simple edge path from `x` to `y`.
pub fn oracle_reeb_distance(graph: &FunctionGraph, x: usize, y: usize) -> Result<f64> {
    check_oracle_size(graph)?;
    let mut best = f64::INFINITY;
    let mut path = vec![x];
    let mut on_path = vec![false; graph.node_count()];
    on_path[x] = true;
    diameter_paths(graph, y, 0.0, &mut path, &mut on_path, &mut best);
    Ok(best)
}

fn diameter_paths(
    graph: &FunctionGraph,
    y: usize,
    cur: f64,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    best: &mut f64,
) {
    let v = *path.last().unwrap();
    if v == y {
        if cur < *best {
            *best = cur;
        }
        return;
    }
    for &w in graph.neighbors(v) {
        if on_path[w] {
            continue;
        }
        let next = path
            .iter()
            .map(|&u| graph.value_distance(u, w))
            .fold(cur, f64::max);
        if next >= *best {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        diameter_paths(graph, y, next, path, on_path, best);
        path.pop();
        on_path[w] = false;
    }
}

fn check_oracle_size(graph: &FunctionGraph) -> Result<()> {
    if graph.node_count() > ORACLE_MAX_NODES {
        return Err(Error::Size {
            size: graph.node_count(),
            limit: ORACLE_MAX_NODES,
        });
    }
    Ok(())
}
