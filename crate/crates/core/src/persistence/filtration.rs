use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::model::PointMetric;

/// Default bound on the number of simplices in one filtration.
pub const DEFAULT_CAPACITY: usize = 5_000_000;

pub type Vertices = SmallVec<[u32; 4]>;

#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    /// Sorted vertex indices into the metric the complex was built from.
    pub vertices: Vertices,
    pub value: f64,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Simplices sorted by (value, dimension, vertices), truncated at `r_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    pub simplices: Vec<Simplex>,
    pub max_dim: usize,
    pub r_max: f64,
}

impl FilteredComplex {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn count_dim(&self, dim: usize) -> usize {
        self.simplices.iter().filter(|s| s.dim() == dim).count()
    }
}

/// Slice `t -> (t, lambda t + c)` of the two-parameter filtration: at scale
/// `t` the points with Reeb radius `<= lambda t + c` are admitted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceSchedule {
    pub lambda: f64,
    pub c: f64,
}

impl SliceSchedule {
    pub fn new(lambda: f64, c: f64) -> Result<Self> {
        if !(lambda >= 0.0 && c >= 0.0 && lambda.is_finite() && c.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "slice needs finite lambda, c >= 0 (got {lambda}, {c})"
            )));
        }
        Ok(SliceSchedule { lambda, c })
    }

    /// Scale at which a point of radius `rho` enters, or `None` if never.
    pub fn appearance(&self, rho: f64) -> Option<f64> {
        if rho <= self.c {
            Some(0.0)
        } else if self.lambda > 0.0 {
            Some((rho - self.c) / self.lambda)
        } else {
            None
        }
    }
}

pub fn vr_filtration<M: PointMetric + ?Sized>(
    metric: &M,
    r_max: f64,
    max_dim: usize,
) -> Result<FilteredComplex> {
    let appear = vec![Some(0.0); metric.len()];
    filtration_from_appearances(metric, &appear, r_max, max_dim, DEFAULT_CAPACITY)
}

pub fn constrained_vr_filtration<M: PointMetric + ?Sized>(
    metric: &M,
    rho: &[f64],
    schedule: &SliceSchedule,
    r_max: f64,
    max_dim: usize,
) -> Result<FilteredComplex> {
    constrained_vr_filtration_with_capacity(metric, rho, schedule, r_max, max_dim, DEFAULT_CAPACITY)
}

pub fn constrained_vr_filtration_with_capacity<M: PointMetric + ?Sized>(
    metric: &M,
    rho: &[f64],
    schedule: &SliceSchedule,
    r_max: f64,
    max_dim: usize,
    capacity: usize,
) -> Result<FilteredComplex> {
    if rho.len() != metric.len() {
        return Err(Error::InvalidInput(format!(
            "{} radii for {} points",
            rho.len(),
            metric.len()
        )));
    }
    let appear: Vec<Option<f64>> = rho.iter().map(|&r| schedule.appearance(r)).collect();
    filtration_from_appearances(metric, &appear, r_max, max_dim, capacity)
}

/// Rips filtration where vertex `v` enters at `appear[v]` (never if `None`)
/// and a simplex at the maximum of its vertex entries and its diameter.
/// Simplices with value above `r_max` are left out.
pub fn filtration_from_appearances<M: PointMetric + ?Sized>(
    metric: &M,
    appear: &[Option<f64>],
    r_max: f64,
    max_dim: usize,
    capacity: usize,
) -> Result<FilteredComplex> {
    if !(r_max >= 0.0 && r_max.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "r_max must be finite and nonnegative, got {r_max}"
        )));
    }
    let n = metric.len();
    if n > u32::MAX as usize {
        return Err(Error::InvalidInput("too many points".into()));
    }
    let present: Vec<usize> = (0..n)
        .filter(|&v| matches!(appear[v], Some(a) if a <= r_max))
        .collect();
    let entry = |v: usize| appear[v].unwrap_or(f64::INFINITY);

    // forward neighbourhoods among present vertices
    let forward: Vec<Vec<u32>> = present
        .iter()
        .map(|&v| {
            present
                .iter()
                .copied()
                .filter(|&w| w > v && entry(w).max(metric.dist(v, w)) <= r_max)
                .map(|w| w as u32)
                .collect()
        })
        .collect();
    let slot: std::collections::HashMap<usize, usize> =
        present.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let mut simplices = Vec::new();
    let mut stack: Vec<(Vertices, f64, Vec<u32>)> = Vec::new();
    for (i, &v) in present.iter().enumerate() {
        stack.push((
            SmallVec::from_slice(&[v as u32]),
            entry(v),
            forward[i].clone(),
        ));
        while let Some((verts, value, cand)) = stack.pop() {
            if simplices.len() >= capacity {
                return Err(Error::Capacity {
                    count: simplices.len() + 1,
                    limit: capacity,
                });
            }
            if verts.len() <= max_dim {
                for &u in &cand {
                    let u_fwd = &forward[slot[&(u as usize)]];
                    let next_cand = intersect_sorted(&cand, u_fwd);
                    let mut next_value = value.max(entry(u as usize));
                    for &w in &verts {
                        next_value = next_value.max(metric.dist(w as usize, u as usize));
                    }
                    if next_value <= r_max {
                        let mut next = verts.clone();
                        next.push(u);
                        stack.push((next, next_value, next_cand));
                    }
                }
            }
            simplices.push(Simplex {
                vertices: verts,
                value,
            });
        }
    }
    simplices.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then(a.vertices.len().cmp(&b.vertices.len()))
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    Ok(FilteredComplex {
        simplices,
        max_dim,
        r_max,
    })
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
