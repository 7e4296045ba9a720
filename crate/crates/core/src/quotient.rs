//! Reeb graphs and their epsilon-smoothings.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{CondensedMatrix, DecoratedReebGraph, DrgParams, FunctionGraph};
use crate::reeb_radius::{reeb_radius_from, BallSearch};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QuotientSpec {
    pub epsilon: f64,
    pub round_step: Option<f64>,
}

impl QuotientSpec {
    pub fn reeb() -> Self {
        QuotientSpec::default()
    }

    pub fn smoothing(epsilon: f64) -> Self {
        QuotientSpec {
            epsilon,
            round_step: None,
        }
    }
}

/// Snaps every value coordinate to the nearest multiple of `theta`.
pub fn round_values(graph: &FunctionGraph, theta: f64) -> Result<FunctionGraph> {
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "rounding step must be positive, got {theta}"
        )));
    }
    let values = graph
        .values()
        .into_iter()
        .map(|v| v.into_iter().map(|x| theta * (x / theta).round()).collect())
        .collect();
    graph.clone().with_values(values)
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[v] != root {
            let next = self.parent[v];
            self.parent[v] = root;
            v = next;
        }
        root
    }

    /// Merges two sets; the smaller root index survives.
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Quotient by `v ~ w` iff `g(v) = g(w)` and `rho(v, w) <= eps`.
///
/// On one level set `d(g(v), .) = d(g(w), .)`, so the radius is symmetric
/// there and the relation is already transitive: a ball search from the
/// smallest unmerged node finds its whole class. Representatives are the
/// smallest member, classes are numbered by representative.
pub fn smooth_quotient(graph: &FunctionGraph, spec: &QuotientSpec) -> Result<DecoratedReebGraph> {
    if !(spec.epsilon >= 0.0 && spec.epsilon.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "epsilon must be nonnegative, got {}",
            spec.epsilon
        )));
    }
    let rounded;
    let graph = match spec.round_step {
        Some(theta) => {
            rounded = round_values(graph, theta)?;
            &rounded
        }
        None => graph,
    };
    let n = graph.node_count();
    let mut uf = UnionFind::new(n);
    let mut search = BallSearch::new(n);
    for v in 0..n {
        if uf.find(v) != v {
            continue;
        }
        for (w, _) in search.ball(graph, v, spec.epsilon) {
            if w != v && graph.value(w) == graph.value(v) {
                uf.union(v, w);
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut representative = Vec::new();
    for v in 0..n {
        let root = uf.find(v);
        if root == v {
            class_of[v] = representative.len();
            representative.push(v);
        } else {
            class_of[v] = class_of[root];
        }
    }
    let k = representative.len();
    let mut edges: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .filter_map(|&(a, b)| {
            let (ca, cb) = (class_of[a], class_of[b]);
            (ca != cb).then(|| (ca.min(cb), ca.max(cb)))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();

    let radii: Vec<Vec<f64>> = representative
        .par_iter()
        .map(|&r| {
            let rho = reeb_radius_from(graph, r).rho;
            representative.iter().map(|&s| rho[s]).collect()
        })
        .collect();
    let mut metric = CondensedMatrix::zeros(k);
    for a in 0..k {
        for b in (a + 1)..k {
            metric.set(k, a, b, 2.0 * radii[a][b].max(radii[b][a]));
        }
    }
    Ok(DecoratedReebGraph {
        class_count: k,
        representative,
        class_of,
        edges,
        metric,
        decorations: vec![None; k],
        params: DrgParams {
            epsilon: spec.epsilon,
            round_step: spec.round_step,
            ..Default::default()
        },
    })
}

pub fn reeb_graph(graph: &FunctionGraph) -> Result<DecoratedReebGraph> {
    smooth_quotient(graph, &QuotientSpec::reeb())
}
