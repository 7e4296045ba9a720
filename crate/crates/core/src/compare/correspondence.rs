//! Correspondences between finite fields and exhaustive Gromov-Hausdorff
//! style searches over them.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{DecoratedReebGraph, FunctionGraph, PointMetric};
use crate::persistence::bottleneck;
use crate::reeb_radius::{reeb_radius_matrix, RadiusMatrix};

/// Default size cap for exhaustive searches.
pub const BRUTE_FORCE_MAX: usize = 6;

/// A relation between `0..left` and `0..right` with both projections onto.
#[derive(Debug, Clone, PartialEq)]
pub struct Correspondence {
    pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    pub fn new(left: usize, right: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut hit_l = vec![false; left];
        let mut hit_r = vec![false; right];
        for &(x, y) in &pairs {
            if x >= left || y >= right {
                return Err(Error::InvalidInput(format!("pair ({x},{y}) out of range")));
            }
            hit_l[x] = true;
            hit_r[y] = true;
        }
        if hit_l.contains(&false) || hit_r.contains(&false) {
            return Err(Error::InvalidInput(
                "relation is not a correspondence".into(),
            ));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Correspondence { pairs })
    }

    pub fn identity(n: usize) -> Self {
        Correspondence {
            pairs: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

/// Smallest `(r, s)` for which `corr` is an (r,s)-correspondence: half the
/// largest metric distortion and the largest value discrepancy.
pub fn check_rs_correspondence(
    f1: &FunctionGraph,
    f2: &FunctionGraph,
    corr: &Correspondence,
) -> Result<(f64, f64)> {
    let (m1, m2) = (f1.require_metric()?, f2.require_metric()?);
    if corr
        .pairs
        .iter()
        .any(|&(x, y)| x >= f1.node_count() || y >= f2.node_count())
    {
        return Err(Error::InvalidInput(
            "correspondence does not fit the fields".into(),
        ));
    }
    let mut r: f64 = 0.0;
    let mut s: f64 = 0.0;
    for &(x, y) in &corr.pairs {
        s = s.max(crate::model::metric::euclidean(f1.value(x), f2.value(y)));
        for &(x2, y2) in &corr.pairs {
            r = r.max((m1.dist(x, x2) - m2.dist(y, y2)).abs() / 2.0);
        }
    }
    Ok((r, s))
}

/// Minimizes `max(pair(p) for p in R, cross(p, q) for p, q in R)` over all
/// correspondences `R` between `0..n` and `0..m`. `cross` must be symmetric
/// and is also evaluated at `p == q`.
///
/// Both costs are monotone in `R`, so the minimum is attained on a minimal
/// correspondence, and every minimal one has the form
/// `graph(F) + {(G(y), y) : y not in F(X)}` for maps `F: X -> Y` and `G`.
/// Those are enumerated depth first with branch and bound; the first level is
/// split across threads sharing the incumbent.
pub fn min_max_correspondence<P, C>(n: usize, m: usize, pair: P, cross: C) -> f64
where
    P: Fn(usize, usize) -> f64 + Sync,
    C: Fn((usize, usize), (usize, usize)) -> f64 + Sync,
{
    if n == 0 || m == 0 {
        return if n == m { 0.0 } else { f64::INFINITY };
    }
    let best = AtomicU64::new(f64::INFINITY.to_bits());
    (0..m).into_par_iter().for_each(|y0| {
        let mut search = Search {
            n,
            m,
            pair: &pair,
            cross: &cross,
            best: &best,
            chosen: Vec::with_capacity(n + m),
            cover: vec![0; m],
        };
        if let Some(c) = search.cost_of_adding((0, y0), 0.0) {
            search.push((0, y0));
            search.extend_left(1, c);
        }
    });
    f64::from_bits(best.load(Ordering::Relaxed))
}

struct Search<'a, P, C> {
    n: usize,
    m: usize,
    pair: &'a P,
    cross: &'a C,
    best: &'a AtomicU64,
    chosen: Vec<(usize, usize)>,
    cover: Vec<usize>,
}

impl<P, C> Search<'_, P, C>
where
    P: Fn(usize, usize) -> f64 + Sync,
    C: Fn((usize, usize), (usize, usize)) -> f64 + Sync,
{
    fn incumbent(&self) -> f64 {
        // nonnegative floats order like their bit patterns
        f64::from_bits(self.best.load(Ordering::Relaxed))
    }

    fn offer(&self, cost: f64) {
        self.best.fetch_min(cost.to_bits(), Ordering::Relaxed);
    }

    fn cost_of_adding(&self, p: (usize, usize), cur: f64) -> Option<f64> {
        let bound = self.incumbent();
        let mut c = cur.max((self.pair)(p.0, p.1)).max((self.cross)(p, p));
        if c >= bound {
            return None;
        }
        for &q in &self.chosen {
            c = c.max((self.cross)(p, q));
            if c >= bound {
                return None;
            }
        }
        Some(c)
    }

    fn push(&mut self, p: (usize, usize)) {
        self.chosen.push(p);
        self.cover[p.1] += 1;
    }

    fn pop(&mut self) {
        let p = self.chosen.pop().unwrap();
        self.cover[p.1] -= 1;
    }

    fn extend_left(&mut self, x: usize, cur: f64) {
        if x == self.n {
            self.extend_right(0, cur);
            return;
        }
        for y in 0..self.m {
            if let Some(c) = self.cost_of_adding((x, y), cur) {
                self.push((x, y));
                self.extend_left(x + 1, c);
                self.pop();
            }
        }
    }

    fn extend_right(&mut self, y: usize, cur: f64) {
        if y == self.m {
            self.offer(cur);
            return;
        }
        if self.cover[y] > 0 {
            self.extend_right(y + 1, cur);
            return;
        }
        for x in 0..self.n {
            if let Some(c) = self.cost_of_adding((x, y), cur) {
                self.push((x, y));
                self.extend_right(y + 1, c);
                self.pop();
            }
        }
    }
}

fn check_size(n: usize, m: usize, max_size: usize) -> Result<()> {
    let size = n.max(m);
    if size > max_size {
        return Err(Error::Size {
            size,
            limit: max_size,
        });
    }
    Ok(())
}

/// Exact Gromov-Hausdorff distance between metric fields:
/// the least `r` admitting an (r,r)-correspondence.
pub fn brute_gh(f1: &FunctionGraph, f2: &FunctionGraph, max_size: usize) -> Result<f64> {
    let (m1, m2) = (f1.require_metric()?, f2.require_metric()?);
    check_size(f1.node_count(), f2.node_count(), max_size)?;
    Ok(min_max_correspondence(
        f1.node_count(),
        f2.node_count(),
        |x, y| crate::model::metric::euclidean(f1.value(x), f2.value(y)),
        |(x, y), (x2, y2)| (m1.dist(x, x2) - m2.dist(y, y2)).abs() / 2.0,
    ))
}

/// Decorated Gromov-Hausdorff distance between filtration-decorated Reeb
/// graphs of two fields, the least `r` with an (r,r,r)-correspondence.
///
/// Classes are handled through their members: a correspondence between the
/// node sets induces one on classes, `d_f = 2 max(rho, rho^T)` is constant on
/// classes, and the same relation compares the decorations
/// `(X, rho_f(x, .))` and `(Y, rho_g(y, .))`.
pub fn hat_gh_filtration(f1: &FunctionGraph, f2: &FunctionGraph, max_size: usize) -> Result<f64> {
    let (m1, m2) = (f1.require_metric()?, f2.require_metric()?);
    check_size(f1.node_count(), f2.node_count(), max_size)?;
    let (r1, r2) = (reeb_radius_matrix(f1), reeb_radius_matrix(f2));
    let df = |r: &RadiusMatrix, a: usize, b: usize| 2.0 * r.get(a, b).max(r.get(b, a));
    Ok(min_max_correspondence(
        f1.node_count(),
        f2.node_count(),
        |_, _| 0.0,
        |(x, y), (x2, y2)| {
            let reeb = (df(&r1, x, x2) - df(&r2, y, y2)).abs() / 2.0;
            let space = (m1.dist(x, x2) - m2.dist(y, y2)).abs() / 2.0;
            let deco = (r1.get(x, x2) - r2.get(y, y2))
                .abs()
                .max((r1.get(x2, x) - r2.get(y2, y)).abs());
            reeb.max(space).max(deco)
        },
    ))
}

/// Gromov-Hausdorff distance between barcode-decorated quotients: the least
/// `r` with a correspondence of metric distortion `<= 2r` whose matched
/// decorations are within bottleneck distance `r`. Missing decorations
/// count as empty barcodes.
pub fn decorated_gh_barcodes(
    a: &DecoratedReebGraph,
    b: &DecoratedReebGraph,
    max_size: usize,
) -> Result<f64> {
    check_size(a.class_count, b.class_count, max_size)?;
    let bars = |d: &DecoratedReebGraph, c: usize| {
        d.decorations[c]
            .as_ref()
            .and_then(|x| x.as_barcode().cloned())
            .unwrap_or_default()
    };
    let mut deco = vec![vec![0.0; b.class_count]; a.class_count];
    for (i, row) in deco.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = match bottleneck(&bars(a, i), &bars(b, j)) {
                Ok(d) => d,
                Err(Error::InfiniteDistance { .. }) => f64::INFINITY,
                Err(e) => return Err(e),
            };
        }
    }
    Ok(min_max_correspondence(
        a.class_count,
        b.class_count,
        |x, y| deco[x][y],
        |(x, y), (x2, y2)| (a.distance(x, x2) - b.distance(y, y2)).abs() / 2.0,
    ))
}

/// Constants `(L, eps)` with `rho(x, y) <= L d(x, y) + 2 eps` on all pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectivityConstants {
    pub l: f64,
    pub eps: f64,
}

/// Least `L` for the given `eps`. Pairs at distance zero with radius above
/// `2 eps` make `L` infinite.
pub fn fit_connectivity(graph: &FunctionGraph, eps: f64) -> Result<ConnectivityConstants> {
    let metric = graph.require_metric()?;
    let rho = reeb_radius_matrix(graph);
    let n = graph.node_count();
    let mut l: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let excess = rho.get(x, y) - 2.0 * eps;
            if excess <= 0.0 {
                continue;
            }
            let d = metric.dist(x, y);
            l = l.max(if d > 0.0 { excess / d } else { f64::INFINITY });
        }
    }
    Ok(ConnectivityConstants { l, eps })
}
