//! Per-class decorations of a Reeb quotient: Reeb-radius filtrations, their
//! barcodes, and persistence images of those barcodes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::metric::SubMetric;
use crate::model::{Barcode, DecoratedReebGraph, Decoration, FunctionGraph, PersistenceImage};
use crate::persistence::{
    constrained_vr_filtration_with_capacity, reduce_and_extract, SliceSchedule, DEFAULT_CAPACITY,
};
use crate::reeb_radius::reeb_radius_from;

/// The point set seen from a class, filtered by Reeb radius from its
/// representative.
#[derive(Debug, Clone, PartialEq)]
pub struct FiltrationDecoration {
    pub anchor: usize,
    pub rho_values: Vec<f64>,
}

pub fn filtration_decoration(
    graph: &FunctionGraph,
    drg: &DecoratedReebGraph,
    class: usize,
) -> Result<FiltrationDecoration> {
    let rep = *drg
        .representative
        .get(class)
        .ok_or_else(|| Error::InvalidInput(format!("no class {class}")))?;
    Ok(FiltrationDecoration {
        anchor: class,
        rho_values: reeb_radius_from(graph, rep).rho,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecorationConfig {
    pub schedule: SliceSchedule,
    /// Homology degree.
    pub k: usize,
    pub r_max: f64,
    /// Nodes whose points carry the Rips complexes; all nodes if `None`.
    /// Reeb radii are always taken in the full graph.
    pub support: Option<Vec<usize>>,
    pub capacity: usize,
}

impl DecorationConfig {
    pub fn new(schedule: SliceSchedule, k: usize, r_max: f64) -> Self {
        DecorationConfig {
            schedule,
            k,
            r_max,
            support: None,
            capacity: DEFAULT_CAPACITY,
        }
    }

    pub fn with_support(mut self, support: Vec<usize>) -> Self {
        self.support = Some(support);
        self
    }
}

/// Degree-`k` barcode of the Rips filtration sliced by Reeb radius from the
/// class representative.
pub fn barcode_decoration(
    graph: &FunctionGraph,
    drg: &DecoratedReebGraph,
    class: usize,
    cfg: &DecorationConfig,
) -> Result<Barcode> {
    let metric = graph.require_metric()?;
    let rho = filtration_decoration(graph, drg, class)?.rho_values;
    let complex = match &cfg.support {
        None => constrained_vr_filtration_with_capacity(
            metric,
            &rho,
            &cfg.schedule,
            cfg.r_max,
            cfg.k + 1,
            cfg.capacity,
        )?,
        Some(support) => {
            if let Some(&bad) = support.iter().find(|&&v| v >= graph.node_count()) {
                return Err(Error::InvalidInput(format!(
                    "support node {bad} out of range"
                )));
            }
            let sub = SubMetric {
                parent: metric,
                indices: support,
            };
            let sub_rho: Vec<f64> = support.iter().map(|&v| rho[v]).collect();
            constrained_vr_filtration_with_capacity(
                &sub,
                &sub_rho,
                &cfg.schedule,
                cfg.r_max,
                cfg.k + 1,
                cfg.capacity,
            )?
        }
    };
    Ok(reduce_and_extract(&complex, cfg.k))
}

/// A class whose decoration could not be computed.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFailure {
    pub class: usize,
    pub reason: String,
}

/// Fills every class with its barcode decoration, in parallel. Classes
/// whose complex exceeds the capacity are left undecorated and reported.
pub fn decorate_all(
    graph: &FunctionGraph,
    drg: &DecoratedReebGraph,
    cfg: &DecorationConfig,
) -> Result<(DecoratedReebGraph, Vec<ClassFailure>)> {
    graph.require_metric()?;
    if drg.class_of.len() != graph.node_count() {
        return Err(Error::InvalidInput(
            "quotient does not belong to this graph".into(),
        ));
    }
    let results: Vec<Result<Barcode>> = (0..drg.class_count)
        .into_par_iter()
        .map(|c| barcode_decoration(graph, drg, c, cfg))
        .collect();
    let mut out = drg.clone();
    let mut failures = Vec::new();
    for (class, r) in results.into_iter().enumerate() {
        match r {
            Ok(b) => out.decorations[class] = Some(Decoration::Barcode(b)),
            Err(e @ Error::Capacity { .. }) => {
                out.decorations[class] = None;
                failures.push(ClassFailure {
                    class,
                    reason: e.to_string(),
                });
            }
            Err(e) => return Err(e),
        }
    }
    out.params.lambda = Some(cfg.schedule.lambda);
    out.params.c = Some(cfg.schedule.c);
    out.params.k = Some(cfg.k);
    out.params.r_max = Some(cfg.r_max);
    Ok((out, failures))
}

/// Grid, bandwidth and weight cap of a persistence image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImageGrid {
    pub resolution: (usize, usize),
    pub birth_range: (f64, f64),
    pub pers_range: (f64, f64),
    pub sigma: f64,
    pub pers_cap: f64,
}

impl ImageGrid {
    /// Grid covering all bars of the given barcodes (open bars clipped),
    /// padded by 5% on each side, with `sigma = pers width / 20` and the
    /// weight cap at the largest persistence.
    pub fn fit<'a, I>(barcodes: I, resolution: (usize, usize)) -> ImageGrid
    where
        I: IntoIterator<Item = &'a Barcode>,
    {
        let mut bmin = f64::INFINITY;
        let mut bmax = f64::NEG_INFINITY;
        let mut pmax: f64 = 0.0;
        for b in barcodes {
            for i in b.intervals() {
                bmin = bmin.min(i.birth);
                bmax = bmax.max(i.birth);
                pmax = pmax.max(i.persistence());
            }
        }
        if !bmin.is_finite() {
            bmin = 0.0;
            bmax = 1.0;
        }
        if pmax <= 0.0 {
            pmax = 1.0;
        }
        let bw = (bmax - bmin).max(pmax);
        let birth_range = (bmin - 0.05 * bw, bmax + 0.05 * bw);
        let pers_range = (0.0, 1.05 * pmax);
        ImageGrid {
            resolution,
            birth_range,
            pers_range,
            sigma: (pers_range.1 - pers_range.0) / 20.0,
            pers_cap: pmax,
        }
    }
}

#[inline]
fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// Gaussian mass of every bar in birth/persistence coordinates, integrated
/// exactly over each pixel, weighted by `min(pers / pers_cap, 1)`. Open bars
/// are clipped at their truncation scale.
pub fn persistence_image(b: &Barcode, grid: &ImageGrid) -> Result<PersistenceImage> {
    let (rows, cols) = grid.resolution;
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidInput(
            "image resolution must be positive".into(),
        ));
    }
    if !(grid.sigma > 0.0 && grid.pers_cap > 0.0) {
        return Err(Error::InvalidInput(
            "sigma and pers_cap must be positive".into(),
        ));
    }
    let (b0, b1) = grid.birth_range;
    let (p0, p1) = grid.pers_range;
    if !(b1 > b0 && p1 > p0) {
        return Err(Error::InvalidInput("image ranges must be nonempty".into()));
    }
    let bx: Vec<f64> = (0..=cols)
        .map(|c| b0 + (b1 - b0) * c as f64 / cols as f64)
        .collect();
    let py: Vec<f64> = (0..=rows)
        .map(|r| p0 + (p1 - p0) * r as f64 / rows as f64)
        .collect();
    let mut pixels = vec![0.0; rows * cols];
    let s = grid.sigma;
    for i in b.clip_open().intervals() {
        let pers = i.persistence();
        let w = (pers / grid.pers_cap).min(1.0);
        if w <= 0.0 {
            continue;
        }
        let cx: Vec<f64> = bx.iter().map(|&x| normal_cdf((x - i.birth) / s)).collect();
        let cy: Vec<f64> = py.iter().map(|&y| normal_cdf((y - pers) / s)).collect();
        for r in 0..rows {
            let my = cy[r + 1] - cy[r];
            for c in 0..cols {
                pixels[r * cols + c] += w * my * (cx[c + 1] - cx[c]);
            }
        }
    }
    Ok(PersistenceImage {
        resolution: grid.resolution,
        birth_range: grid.birth_range,
        pers_range: grid.pers_range,
        sigma: grid.sigma,
        pixels,
    })
}

/// Replaces barcode decorations by persistence images on a shared grid.
pub fn images_from_barcodes(
    drg: &DecoratedReebGraph,
    grid: &ImageGrid,
) -> Result<DecoratedReebGraph> {
    let mut out = drg.clone();
    for d in out.decorations.iter_mut() {
        if let Some(Decoration::Barcode(b)) = d {
            *d = Some(Decoration::Image(persistence_image(b, grid)?));
        }
    }
    Ok(out)
}

/// Evenly spread subset of `count` nodes by farthest-point sampling from
/// node 0 in the node metric.
pub fn farthest_point_sample(graph: &FunctionGraph, count: usize) -> Result<Vec<usize>> {
    use crate::model::PointMetric;
    let metric = graph.require_metric()?;
    let n = graph.node_count();
    let count = count.min(n);
    if count == 0 {
        return Ok(Vec::new());
    }
    let mut chosen = vec![0usize];
    let mut nearest: Vec<f64> = (0..n).map(|v| metric.dist(0, v)).collect();
    while chosen.len() < count {
        let (next, _) = nearest
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (v, &d)| {
                if d > best.1 {
                    (v, d)
                } else {
                    best
                }
            });
        chosen.push(next);
        for (v, slot) in nearest.iter_mut().enumerate() {
            *slot = slot.min(metric.dist(next, v));
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}
