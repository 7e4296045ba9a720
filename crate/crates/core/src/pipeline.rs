//! End-to-end run: point cloud, graph, field, quotient, decorations, files.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::decorate::{
    decorate_all, farthest_point_sample, images_from_barcodes, DecorationConfig, ImageGrid,
};
use crate::error::{Error, Result, StageContext};
use crate::graph_build::{
    eccentricity_field, height_field, knn_graph, pagerank_field, radius_graph,
};
use crate::model::io::{read_point_cloud_file, save_drg, save_function_graph};
use crate::model::{
    DecoratedReebGraph, Decoration, FunctionGraph, NodeMetric, PointCloud, PointMetric,
};
use crate::persistence::SliceSchedule;
use crate::quotient::{smooth_quotient, QuotientSpec};
use crate::render::{render_drg, render_graph};
use crate::synthetic::{generate_synthetic, Shape};

/// Where the point cloud comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputSpec {
    Csv { path: PathBuf },
    Generate { shape: Shape, n: usize, noise: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSpec {
    Knn { k: usize },
    Radius { r: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Height { axis: usize },
    Eccentricity { p: f64 },
    Pagerank { damping: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImageSpec {
    pub resolution: (usize, usize),
    /// Overrides the fitted bandwidth.
    #[serde(default)]
    pub sigma: Option<f64>,
}

/// Full configuration of a pipeline run. `seed` drives the generator and
/// the drawing layout; everything else is deterministic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub input: InputSpec,
    #[serde(default)]
    pub seed: u64,
    pub graph: GraphSpec,
    pub field: FieldSpec,
    /// Rounding step applied to the field before the quotient.
    #[serde(default)]
    pub round: Option<f64>,
    #[serde(default)]
    pub epsilon: f64,
    #[serde(default = "one")]
    pub lambda: f64,
    #[serde(default)]
    pub c: f64,
    #[serde(default = "one_usize")]
    pub k: usize,
    /// Defaults to the diameter of the cloud.
    #[serde(default)]
    pub r_max: Option<f64>,
    /// Farthest-point landmarks carrying the Rips complexes; all points if
    /// absent.
    #[serde(default)]
    pub landmarks: Option<usize>,
    #[serde(default)]
    pub image: Option<ImageSpec>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default = "yes")]
    pub render: bool,
}

fn one() -> f64 {
    1.0
}

fn one_usize() -> usize {
    1
}

fn yes() -> bool {
    true
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        match self.graph {
            GraphSpec::Knn { k: 0 } => return bad("knn k must be positive".into()),
            GraphSpec::Radius { r } if !(r > 0.0 && r.is_finite()) => {
                return bad(format!("radius {r} must be positive"))
            }
            _ => {}
        }
        match self.field {
            FieldSpec::Eccentricity { p } if !(p >= 1.0) => {
                return bad(format!("eccentricity p = {p} must be >= 1"))
            }
            FieldSpec::Pagerank { damping } if !(damping > 0.0 && damping < 1.0) => {
                return bad(format!("damping {damping} must lie in (0, 1)"))
            }
            _ => {}
        }
        if let Some(t) = self.round {
            if !(t > 0.0 && t.is_finite()) {
                return bad(format!("round step {t} must be positive"));
            }
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return bad(format!("epsilon {} must be nonnegative", self.epsilon));
        }
        if let Some(r) = self.r_max {
            if !(r >= 0.0 && r.is_finite()) {
                return bad(format!("r_max {r} must be nonnegative"));
            }
        }
        if self.landmarks == Some(0) {
            return bad("landmarks must be positive".into());
        }
        if let Some(img) = self.image {
            if img.resolution.0 == 0 || img.resolution.1 == 0 {
                return bad("image resolution must be positive".into());
            }
        }
        SliceSchedule::new(self.lambda, self.c).map(|_| ())
    }
}

/// What a run reports. Timings are wall-clock seconds per stage; they are
/// kept out of `report.json` so that written outputs stay reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub nodes: usize,
    pub edges: usize,
    pub classes: usize,
    pub degree: usize,
    pub r_max: f64,
    /// Bars per class, `None` where the decoration failed.
    pub bar_counts: Vec<Option<usize>>,
    pub failures: Vec<(usize, String)>,
    #[serde(skip)]
    pub timings: Vec<(&'static str, f64)>,
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub graph: FunctionGraph,
    /// Decorated with barcodes.
    pub drg: DecoratedReebGraph,
    /// Same quotient decorated with persistence images, if requested.
    pub images: Option<DecoratedReebGraph>,
    pub report: PipelineReport,
}

fn timed<T>(
    timings: &mut Vec<(&'static str, f64)>,
    stage: &'static str,
    f: impl FnOnce() -> Result<T>,
) -> Result<T> {
    let start = Instant::now();
    let out = f().stage(stage);
    timings.push((stage, start.elapsed().as_secs_f64()));
    out
}

pub fn load_input(cfg: &PipelineConfig) -> Result<PointCloud> {
    match &cfg.input {
        InputSpec::Csv { path } => read_point_cloud_file(path),
        InputSpec::Generate { shape, n, noise } => {
            let mut clouds = generate_synthetic(*shape, *n, *noise, cfg.seed)?;
            if clouds.len() != 1 {
                return Err(Error::InvalidInput(format!(
                    "{shape:?} yields several clouds; the pipeline takes one"
                )));
            }
            Ok(clouds.remove(0))
        }
    }
}

/// Builds the function graph of `cloud` as configured.
pub fn build_graph(cloud: &PointCloud, cfg: &PipelineConfig) -> Result<FunctionGraph> {
    let graph = if cloud.len() == 1 {
        // a single point has no neighbours to choose
        FunctionGraph::without_values(1, Vec::new())?
            .with_positions(cloud.to_rows())?
            .with_metric(NodeMetric::Euclidean(cloud.clone()))?
    } else {
        match cfg.graph {
            GraphSpec::Knn { k } => knn_graph(cloud, k)?,
            GraphSpec::Radius { r } => radius_graph(cloud, r)?,
        }
    };
    Ok(graph)
}

pub fn compute_field(
    cloud: &PointCloud,
    graph: &FunctionGraph,
    field: FieldSpec,
) -> Result<Vec<f64>> {
    match field {
        FieldSpec::Height { axis } => height_field(cloud, axis),
        FieldSpec::Eccentricity { p } => eccentricity_field(cloud, p),
        FieldSpec::Pagerank { damping } => pagerank_field(graph, damping, 1e-12),
    }
}

/// Runs every stage on `cloud`. Errors carry the name of the failing stage.
pub fn run_on_cloud(cloud: &PointCloud, cfg: &PipelineConfig) -> Result<PipelineOutput> {
    cfg.validate().stage("config")?;
    let mut timings = Vec::new();
    let graph = timed(&mut timings, "graph", || build_graph(cloud, cfg))?;
    let graph = timed(&mut timings, "field", || {
        let values = compute_field(cloud, &graph, cfg.field)?;
        graph.with_scalar_values(&values)
    })?;
    let quotient = timed(&mut timings, "quotient", || {
        let spec = QuotientSpec {
            epsilon: cfg.epsilon,
            round_step: cfg.round,
        };
        smooth_quotient(&graph, &spec)
    })?;
    let r_max = match cfg.r_max {
        Some(r) => r,
        None => cloud.diameter(),
    };
    let (drg, failures) = timed(&mut timings, "decorate", || {
        let mut dc = DecorationConfig::new(SliceSchedule::new(cfg.lambda, cfg.c)?, cfg.k, r_max);
        if let Some(m) = cfg.landmarks {
            dc = dc.with_support(farthest_point_sample(&graph, m)?);
        }
        decorate_all(&graph, &quotient, &dc)
    })?;
    let images = match cfg.image {
        None => None,
        Some(spec) => Some(timed(&mut timings, "image", || {
            let mut grid = ImageGrid::fit(
                drg.decorations
                    .iter()
                    .flatten()
                    .filter_map(Decoration::as_barcode),
                spec.resolution,
            );
            if let Some(s) = spec.sigma {
                grid.sigma = s;
            }
            images_from_barcodes(&drg, &grid)
        })?),
    };
    let report = PipelineReport {
        nodes: graph.node_count(),
        edges: graph.edges().len(),
        classes: drg.class_count,
        degree: cfg.k,
        r_max,
        bar_counts: drg
            .decorations
            .iter()
            .map(|d| d.as_ref().and_then(Decoration::as_barcode).map(|b| b.len()))
            .collect(),
        failures: failures.into_iter().map(|f| (f.class, f.reason)).collect(),
        timings,
    };
    Ok(PipelineOutput {
        graph,
        drg,
        images,
        report,
    })
}

/// Loads the input, runs all stages and, if an output directory is set,
/// writes `graph.json`, `drg.json`, `report.json`, optionally
/// `drg_images.json`, and the drawings `graph.svg` and `drg.svg`.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<PipelineOutput> {
    let cloud = load_input(cfg).stage("input")?;
    let mut out = run_on_cloud(&cloud, cfg)?;
    if let Some(dir) = &cfg.output_dir {
        let start = Instant::now();
        write_outputs(dir, cfg, &out).stage("write")?;
        out.report
            .timings
            .push(("write", start.elapsed().as_secs_f64()));
    }
    Ok(out)
}

fn write_outputs(dir: &Path, cfg: &PipelineConfig, out: &PipelineOutput) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("graph.json"), save_function_graph(&out.graph)?)?;
    fs::write(dir.join("drg.json"), save_drg(&out.drg)?)?;
    if let Some(images) = &out.images {
        fs::write(dir.join("drg_images.json"), save_drg(images)?)?;
    }
    fs::write(
        dir.join("report.json"),
        serde_json::to_vec_pretty(&out.report)?,
    )?;
    if cfg.render {
        fs::write(dir.join("graph.svg"), render_graph(&out.graph, cfg.seed))?;
        fs::write(dir.join("drg.svg"), render_drg(&out.drg, Some(&out.graph)))?;
    }
    Ok(())
}
