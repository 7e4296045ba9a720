//! Seeded synthetic point clouds.
//!
//! Every generator draws from a `ChaCha8Rng` seeded with the 64-bit seed;
//! independent draws use separate streams of the same seed (see [`rng`]).

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PointCloud;

pub const TORUS_MAJOR: f64 = 2.0;
pub const TORUS_MINOR: f64 = 0.7;
pub const WEDGE_CIRCLE_RADIUS: f64 = 3.0;
/// Height span of every shape in the four-class set.
pub const CLASS_HEIGHT: f64 = 4.0;

/// Generator for stream `stream` of `seed`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    TorusWedgeCircle,
    Sphere,
    Torus,
    Cycle,
    FourClassSet,
}

impl std::str::FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "torus_wedge_circle" => Ok(Shape::TorusWedgeCircle),
            "sphere" => Ok(Shape::Sphere),
            "torus" => Ok(Shape::Torus),
            "cycle" => Ok(Shape::Cycle),
            "four_class_set" => Ok(Shape::FourClassSet),
            _ => Err(Error::InvalidInput(format!("unknown shape {s:?}"))),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 10 {
        return Err(Error::InvalidInput(format!(
            "need at least 10 points, got {n}"
        )));
    }
    Ok(())
}

fn jitter<R: Rng>(p: &mut [f64], noise: f64, rng: &mut R) {
    if noise > 0.0 {
        let normal = Normal::new(0.0, noise).expect("noise is finite");
        for c in p.iter_mut() {
            *c += normal.sample(rng);
        }
    }
}

fn finish(points: Vec<Vec<f64>>) -> PointCloud {
    PointCloud::new(points).expect("generated points are finite")
}

/// Unit circle in the xy-plane, uniform angle.
pub fn cycle(n: usize, noise: f64, seed: u64) -> Result<PointCloud> {
    check_n(n)?;
    let mut r = rng(seed, 0);
    Ok(finish(
        (0..n)
            .map(|_| {
                let t = r.gen_range(0.0..2.0 * PI);
                let mut p = vec![t.cos(), t.sin()];
                jitter(&mut p, noise, &mut r);
                p
            })
            .collect(),
    ))
}

/// Uniform on the unit sphere.
pub fn sphere(n: usize, noise: f64, seed: u64) -> Result<PointCloud> {
    check_n(n)?;
    let mut r = rng(seed, 0);
    Ok(finish(
        (0..n).map(|_| sphere_point(&mut r, noise)).collect(),
    ))
}

fn sphere_point<R: Rng>(r: &mut R, noise: f64) -> Vec<f64> {
    loop {
        let v: [f64; 3] = [
            r.sample(StandardNormal),
            r.sample(StandardNormal),
            r.sample(StandardNormal),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 1e-9 {
            let mut p: Vec<f64> = v.iter().map(|x| x / norm).collect();
            jitter(&mut p, noise, r);
            return p;
        }
    }
}

/// Angles `(theta, phi)` uniform with respect to the area of the torus with
/// radii 2 and 0.7 (rejection on the area element).
fn torus_angles<R: Rng>(r: &mut R) -> (f64, f64) {
    loop {
        let theta = r.gen_range(0.0..2.0 * PI);
        let phi = r.gen_range(0.0..2.0 * PI);
        let w = (TORUS_MAJOR + TORUS_MINOR * phi.cos()) / (TORUS_MAJOR + TORUS_MINOR);
        if r.gen::<f64>() <= w {
            return (theta, phi);
        }
    }
}

/// Torus lying in the xy-plane: core circle of radius 2, tube radius 0.7.
pub fn torus(n: usize, noise: f64, seed: u64) -> Result<PointCloud> {
    check_n(n)?;
    let mut r = rng(seed, 0);
    Ok(finish(
        (0..n)
            .map(|_| {
                let (theta, phi) = torus_angles(&mut r);
                let rad = TORUS_MAJOR + TORUS_MINOR * phi.cos();
                let mut p = vec![
                    rad * theta.cos(),
                    rad * theta.sin(),
                    TORUS_MINOR * phi.sin(),
                ];
                jitter(&mut p, noise, &mut r);
                p
            })
            .collect(),
    ))
}

/// A standing torus (core circle in the xz-plane, heights in [-2.7, 2.7])
/// wedged at its top point (0, 0, 2.7) with a circle of radius 3 in the
/// yz-plane reaching up to height 8.7. Two thirds of the points lie on the
/// torus; the circle points come last.
pub fn torus_wedge_circle(n: usize, noise: f64, seed: u64) -> Result<PointCloud> {
    check_n(n)?;
    let mut r = rng(seed, 0);
    let n_torus = 2 * n / 3;
    let top = TORUS_MAJOR + TORUS_MINOR;
    let mut points = Vec::with_capacity(n);
    for _ in 0..n_torus {
        let (theta, phi) = torus_angles(&mut r);
        let rad = TORUS_MAJOR + TORUS_MINOR * phi.cos();
        let mut p = vec![
            rad * theta.cos(),
            TORUS_MINOR * phi.sin(),
            rad * theta.sin(),
        ];
        jitter(&mut p, noise, &mut r);
        points.push(p);
    }
    for _ in n_torus..n {
        let t = r.gen_range(0.0..2.0 * PI);
        let mut p = vec![
            0.0,
            WEDGE_CIRCLE_RADIUS * t.sin(),
            top + WEDGE_CIRCLE_RADIUS - WEDGE_CIRCLE_RADIUS * t.cos(),
        ];
        jitter(&mut p, noise, &mut r);
        points.push(p);
    }
    Ok(finish(points))
}

/// Members of the four-class comparison set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeClass {
    Sphere,
    Torus,
    DoubleCycle,
    TorusWedgeCircle,
}

pub const SHAPE_CLASSES: [ShapeClass; 4] = [
    ShapeClass::Sphere,
    ShapeClass::Torus,
    ShapeClass::DoubleCycle,
    ShapeClass::TorusWedgeCircle,
];

/// One labelled sample of the four-class set.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelledCloud {
    pub class: ShapeClass,
    pub cloud: PointCloud,
}

/// `per_class` samples of each of four shapes with `n` points apiece:
/// sphere, standing torus, figure eight and torus wedge circle, each scaled
/// to the same height span so that their height functions have comparable
/// Reeb graphs. Each sample then gets its own stream, a random scale in [0.9, 1.1] and a random
/// rotation by at most 0.2 radians about a random axis.
pub fn four_class_set(
    per_class: usize,
    n: usize,
    noise: f64,
    seed: u64,
) -> Result<Vec<LabelledCloud>> {
    check_n(n)?;
    let mut out = Vec::with_capacity(4 * per_class);
    for (ci, &class) in SHAPE_CLASSES.iter().enumerate() {
        for s in 0..per_class {
            let stream = 1 + (ci * per_class + s) as u64;
            let mut r = rng(seed, stream);
            let base_seed: u64 = r.gen();
            let base = fit_height(&match class {
                ShapeClass::Sphere => sphere(n, 0.0, base_seed)?,
                ShapeClass::Torus => standing(&torus(n, 0.0, base_seed)?),
                ShapeClass::DoubleCycle => double_cycle(n, base_seed)?,
                ShapeClass::TorusWedgeCircle => torus_wedge_circle(n, 0.0, base_seed)?,
            });
            let factor = r.gen_range(0.9..1.1);
            let axis = sphere_point(&mut r, 0.0);
            let angle = r.gen_range(-0.2..0.2);
            let rows = base
                .points()
                .map(|p| {
                    let mut q = rotate(p, &axis, angle);
                    for c in q.iter_mut() {
                        *c *= factor;
                    }
                    jitter(&mut q, noise, &mut r);
                    q
                })
                .collect();
            out.push(LabelledCloud {
                class,
                cloud: finish(rows),
            });
        }
    }
    Ok(out)
}

/// Two unit circles stacked along z, joined at a shared point: a figure
/// eight standing upright in the xz-plane.
fn double_cycle(n: usize, seed: u64) -> Result<PointCloud> {
    let mut r = rng(seed, 0);
    Ok(finish(
        (0..n)
            .map(|i| {
                let t = r.gen_range(0.0..2.0 * PI);
                let (cx, cz) = if i % 2 == 0 { (0.0, 1.5) } else { (0.0, -1.5) };
                vec![cx + 1.5 * t.cos(), 0.0, cz + 1.5 * t.sin()]
            })
            .collect(),
    ))
}

/// Scaled about the origin so that heights span `CLASS_HEIGHT`.
fn fit_height(cloud: &PointCloud) -> PointCloud {
    let (lo, hi) = cloud
        .points()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p[2]), hi.max(p[2]))
        });
    let s = CLASS_HEIGHT / (hi - lo).max(1e-12);
    finish(
        cloud
            .points()
            .map(|p| p.iter().map(|c| c * s).collect())
            .collect(),
    )
}

/// Swaps y and z, standing a shape in the xy-plane upright.
fn standing(cloud: &PointCloud) -> PointCloud {
    finish(cloud.points().map(|p| vec![p[0], p[2], p[1]]).collect())
}

/// Rodrigues rotation of a 3-vector about a unit axis.
fn rotate(p: &[f64], k: &[f64], angle: f64) -> Vec<f64> {
    let (s, c) = angle.sin_cos();
    let dot = p[0] * k[0] + p[1] * k[1] + p[2] * k[2];
    let cross = [
        k[1] * p[2] - k[2] * p[1],
        k[2] * p[0] - k[0] * p[2],
        k[0] * p[1] - k[1] * p[0],
    ];
    (0..3)
        .map(|i| p[i] * c + cross[i] * s + k[i] * dot * (1.0 - c))
        .collect()
}

/// Dispatches on `shape`; `four_class_set` returns all samples, with `n`
/// points each and 10 samples per class.
pub fn generate_synthetic(
    shape: Shape,
    n: usize,
    noise: f64,
    seed: u64,
) -> Result<Vec<PointCloud>> {
    Ok(match shape {
        Shape::TorusWedgeCircle => vec![torus_wedge_circle(n, noise, seed)?],
        Shape::Sphere => vec![sphere(n, noise, seed)?],
        Shape::Torus => vec![torus(n, noise, seed)?],
        Shape::Cycle => vec![cycle(n, noise, seed)?],
        Shape::FourClassSet => four_class_set(10, n, noise, seed)?
            .into_iter()
            .map(|s| s.cloud)
            .collect(),
    })
}
