use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::cloud::PointCloud;
use crate::model::metric::{euclidean, DistanceMatrix, PointMetric};

/// Metric on the nodes of a [`FunctionGraph`].
#[derive(Debug, Clone, PartialEq)]
pub enum NodeMetric {
    Explicit(DistanceMatrix),
    /// Euclidean distance between the given points, computed on demand.
    Euclidean(PointCloud),
}

impl PointMetric for NodeMetric {
    fn len(&self) -> usize {
        match self {
            NodeMetric::Explicit(m) => m.size(),
            NodeMetric::Euclidean(c) => c.len(),
        }
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> f64 {
        match self {
            NodeMetric::Explicit(m) => m.get(i, j),
            NodeMetric::Euclidean(c) => c.dist(i, j),
        }
    }
}

/// A finite simple connected graph with a function `g: V -> R^m` on its
/// nodes, an optional metric on the nodes, and optional drawing positions.
///
/// Nodes are `0..n`. Edges are stored as `(i, j)` with `i < j`, sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Compressed adjacency: neighbours of `v` are
    /// `targets[offsets[v]..offsets[v + 1]]`, sorted.
    offsets: Vec<usize>,
    targets: Vec<usize>,
    value_dim: usize,
    values: Vec<f64>,
    metric: Option<NodeMetric>,
    positions: Option<Vec<Vec<f64>>>,
}

impl FunctionGraph {
    /// Validates simplicity, connectivity and the values.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, values: Vec<Vec<f64>>) -> Result<Self> {
        let (edges, adjacency) = check_topology(n, edges)?;
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for adj in &adjacency {
            offsets.push(offsets.last().unwrap() + adj.len());
        }
        let targets = adjacency.concat();
        let (value_dim, values) = flatten_values(n, values)?;
        Ok(FunctionGraph {
            n,
            edges,
            offsets,
            targets,
            value_dim,
            values,
            metric: None,
            positions: None,
        })
    }

    /// Graph with constant zero scalar values; used when a graph is built
    /// before its function is chosen.
    pub fn without_values(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(n, edges, vec![vec![0.0]; n])
    }

    /// Convenience constructor for scalar functions.
    pub fn scalar(n: usize, edges: Vec<(usize, usize)>, values: &[f64]) -> Result<Self> {
        Self::new(n, edges, values.iter().map(|&v| vec![v]).collect())
    }

    pub fn with_values(mut self, values: Vec<Vec<f64>>) -> Result<Self> {
        let (dim, flat) = flatten_values(self.n, values)?;
        self.value_dim = dim;
        self.values = flat;
        Ok(self)
    }

    pub fn with_scalar_values(self, values: &[f64]) -> Result<Self> {
        self.with_values(values.iter().map(|&v| vec![v]).collect())
    }

    pub fn with_metric(mut self, metric: NodeMetric) -> Result<Self> {
        if metric.len() != self.n {
            return Err(Error::Schema(format!(
                "metric has {} points but graph has {} nodes",
                metric.len(),
                self.n
            )));
        }
        self.metric = Some(metric);
        Ok(self)
    }

    pub fn with_positions(mut self, positions: Vec<Vec<f64>>) -> Result<Self> {
        if positions.len() != self.n {
            return Err(Error::Schema(format!(
                "{} positions given for {} nodes",
                positions.len(),
                self.n
            )));
        }
        self.positions = Some(positions);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }

    #[inline]
    pub fn value(&self, v: usize) -> &[f64] {
        &self.values[v * self.value_dim..(v + 1) * self.value_dim]
    }

    pub fn values(&self) -> Vec<Vec<f64>> {
        self.values
            .chunks(self.value_dim)
            .map(|c| c.to_vec())
            .collect()
    }

    /// First coordinate of every value; convenient for `M = R`.
    pub fn scalar_values(&self) -> Vec<f64> {
        self.values.chunks(self.value_dim).map(|c| c[0]).collect()
    }

    /// Euclidean distance between the values at `a` and `b`.
    #[inline]
    pub fn value_distance(&self, a: usize, b: usize) -> f64 {
        euclidean(self.value(a), self.value(b))
    }

    pub fn metric(&self) -> Option<&NodeMetric> {
        self.metric.as_ref()
    }

    pub fn require_metric(&self) -> Result<&NodeMetric> {
        self.metric
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("graph has no node metric".into()))
    }

    pub fn positions(&self) -> Option<&[Vec<f64>]> {
        self.positions.as_deref()
    }
}

fn flatten_values(n: usize, values: Vec<Vec<f64>>) -> Result<(usize, Vec<f64>)> {
    if values.len() != n {
        return Err(Error::Schema(format!(
            "{} values given for {n} nodes",
            values.len()
        )));
    }
    let dim = values.first().map(|v| v.len()).unwrap_or(1);
    if dim == 0 {
        return Err(Error::Schema(
            "values must have at least one coordinate".into(),
        ));
    }
    let mut flat = Vec::with_capacity(n * dim);
    for (i, v) in values.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::Schema(format!(
                "value {i} has dimension {}",
                v.len()
            )));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Schema(format!("value {i} is not finite")));
        }
        flat.extend_from_slice(v);
    }
    Ok((dim, flat))
}

type Topology = (Vec<(usize, usize)>, Vec<Vec<usize>>);

fn check_topology(n: usize, edges: Vec<(usize, usize)>) -> Result<Topology> {
    if n == 0 {
        return Err(Error::Schema("graph has no nodes".into()));
    }
    let mut seen = BTreeSet::new();
    for &(a, b) in &edges {
        if a >= n || b >= n {
            return Err(Error::Schema(format!(
                "edge [{a},{b}] references a missing node"
            )));
        }
        if a == b {
            return Err(Error::NonSimple(format!("self-loop at node {a}")));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::NonSimple(format!("duplicate edge [{a},{b}]")));
        }
    }
    let edges: Vec<(usize, usize)> = seen.into_iter().collect();
    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in &edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
    }
    let components = count_components(&adjacency);
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    Ok((edges, adjacency))
}

/// Number of connected components of an adjacency list.
pub fn count_components(adjacency: &[Vec<usize>]) -> usize {
    let n = adjacency.len();
    let mut seen = vec![false; n];
    let mut components = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    components
}
